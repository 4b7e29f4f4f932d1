//! Fit a rational function of bounded degree to the head of a series by
//! exact linear algebra, then let callers verify it against later
//! coefficients. Used to exhibit closed forms that are observed rather than
//! constructed (the characteristic-2 conductor series).

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::series::TruncatedSeries;
use crate::BigRat;

/// Solve `M x = rhs` exactly by Gaussian elimination; free variables are
/// set to zero. Returns `None` when the system is inconsistent.
fn solve(mut m: Vec<Vec<BigRat>>, mut rhs: Vec<BigRat>) -> Option<Vec<BigRat>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = alloc::vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        rhs.swap(row, p);
        let inv = BigRat::one() / m[row][col].clone();
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let t = &factor * &m[row][c];
                    m[r][c] -= t;
                }
                let t = &factor * &rhs[row];
                rhs[r] -= t;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    // rows below the pivot rank must have zero rhs
    for r in row..rows {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut x = alloc::vec![BigRat::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = rhs[*r].clone();
        }
    }
    Some(x)
}

/// Find polynomials `(num, den)` with `den(0) = 1`, degrees at most
/// `max_degree`, and `series ≡ num/den` through `X^{data_order}`. The
/// smallest consistent denominator degree wins. Returns `None` when no
/// bounded-degree rational function fits.
pub fn fit_rational(
    series: &TruncatedSeries,
    data_order: usize,
    max_degree: usize,
) -> Option<(Poly, Poly)> {
    assert!(data_order <= series.order());
    for deg in 0..=max_degree {
        // unknowns v_1..v_deg of den = 1 + v_1 X + ...; equations force
        // [X^n](series * den) = 0 for deg < n ≤ data_order
        if deg + 1 > data_order + 1 {
            break;
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for n in (deg + 1)..=data_order {
            let row: Vec<BigRat> = (1..=deg).map(|j| series.coeff(n - j)).collect();
            rows.push(row);
            rhs.push(-series.coeff(n));
        }
        let Some(v) = solve(rows, rhs) else {
            continue;
        };
        let mut den_coeffs = alloc::vec![BigRat::one()];
        den_coeffs.extend(v);
        let den = Poly::from_coeffs(den_coeffs);
        // numerator = (series * den) truncated to degree `deg`
        let den_series = TruncatedSeries::from_poly(&den, series.order());
        let product = series.mul(&den_series);
        let num = Poly::from_coeffs(product.coeffs()[..=deg.min(product.order())].to_vec());
        // double-check the full data window
        let check = product;
        if (deg + 1..=data_order).all(|n| check.coeff(n).is_zero()) {
            return Some((num, den));
        }
    }
    None
}

/// Expand `num/den` to the given order (den must have constant term 1).
pub fn expand_rational(num: &Poly, den: &Poly, order: usize) -> TruncatedSeries {
    let den_series = TruncatedSeries::from_poly(den, order);
    let num_series = TruncatedSeries::from_poly(num, order);
    num_series.mul(&den_series.reciprocal().expect("den(0) = 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRat {
        BigRat::from_integer(BigInt::from(n))
    }

    #[test]
    fn recovers_a_geometric_series() {
        // 1/(1 - 3X)
        let coeffs: Vec<BigRat> = (0..20).map(|n| int(3i64.pow(n))).collect();
        let s = TruncatedSeries::from_coeffs(coeffs);
        let (num, den) = fit_rational(&s, 15, 4).unwrap();
        assert_eq!(num, Poly::one());
        assert_eq!(den, Poly::from_coeffs(alloc::vec![int(1), int(-3)]));
    }

    #[test]
    fn recovers_a_ratio_with_numerator() {
        // (1 - X^2)/(1 - 4X^2): coefficients 1, 0, 3, 0, 12, 0, 48, ...
        let num = Poly::from_coeffs(alloc::vec![int(1), int(0), int(-1)]);
        let den = Poly::from_coeffs(alloc::vec![int(1), int(0), int(-4)]);
        let s = expand_rational(&num, &den, 24);
        let (fit_num, fit_den) = fit_rational(&s, 19, 8).unwrap();
        let refit = expand_rational(&fit_num, &fit_den, 24);
        assert_eq!(refit, s);
        assert_eq!(fit_den.degree(), Some(2));
    }

    #[test]
    fn refuses_a_plainly_irrational_head() {
        // factorials grow too fast for any degree-2 rational function
        let coeffs: Vec<BigRat> = (0..12u32)
            .map(|n| int((1..=i64::from(n).max(1)).product()))
            .collect();
        let s = TruncatedSeries::from_coeffs(coeffs);
        assert!(fit_rational(&s, 11, 2).is_none());
    }
}
