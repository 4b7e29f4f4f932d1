//! Numeric half of the pole-accumulation demonstration for the order-3
//! conductor series: exact radius exponents come from the core, float
//! evaluation and the quadratic root-modulus check happen here (tolerance
//! 1e-9; root moduli are irrational).

use std::io::Write;

use serde::Serialize;

use ascgf_core::group::prime_power_split;
use ascgf_core::merom::{approximant_tower, quotient_pole_radii_within_half};
use num_bigint::BigUint;

use crate::output::{small_rat_string, FactoredGfJson};
use crate::{DemoArgs, EXIT_OK, EXIT_VERIFICATION_FAILED};

const ROOT_TOLERANCE: f64 = 1e-9;

#[derive(Serialize, Debug)]
pub struct ApproximantJson {
    pub a: u32,
    pub new_radius_exponent: String,
    pub numeric_radius: f64,
    pub inner_radius_exponents: Vec<String>,
    pub outer_radius_exponents: Vec<String>,
    pub match_order: usize,
    pub quotient_identity: bool,
    pub quotient_poles_within_half: bool,
    pub zeta_ratio: FactoredGfJson,
}

#[derive(Serialize, Debug)]
pub struct RootModulusCheckJson {
    pub residue: u64,
    pub modulus: f64,
    pub expected: f64,
    pub abs_error: f64,
    pub pass: bool,
}

#[derive(Serialize, Debug)]
pub struct DemoReport {
    pub q: u64,
    pub a_max: u32,
    pub order: usize,
    pub limit_radius: f64,
    pub radii_strictly_increase_to_limit: bool,
    pub approximants: Vec<ApproximantJson>,
    pub root_modulus_checks: Vec<RootModulusCheckJson>,
    pub passed: bool,
}

fn numeric_radius(q: u64, num: i128, den: i128) -> f64 {
    (q as f64).powf(-(num as f64) / (den as f64))
}

/// Moduli of the complex-conjugate roots of `1 + X + QX^2` (the discriminant
/// `1 - 4Q` is negative for every Q ≥ 1, so by the coefficient product the
/// moduli are both `Q^{-1/2}`).
fn quadratic_root_modulus(residue: u64) -> f64 {
    let q = residue as f64;
    let re = -1.0 / (2.0 * q);
    let im = (4.0 * q - 1.0).sqrt() / (2.0 * q);
    re.hypot(im)
}

pub fn build_report(q: u64, a_max: u32, order: usize) -> Result<DemoReport, String> {
    if prime_power_split(q).map(|(p, _)| p) != Some(3) {
        return Err(format!(
            "the pole-accumulation demo needs q to be a power of 3, got {q}"
        ));
    }
    let tower = approximant_tower(q, a_max, order).map_err(|e| e.to_string())?;
    let limit_radius = (q as f64).powf(-0.5);

    let mut approximants = Vec::new();
    let mut radii = Vec::new();
    let mut all_ok = true;
    for approx in &tower {
        let exp = approx.new_radius_exponent;
        let radius = numeric_radius(q, *exp.numer(), *exp.denom());
        radii.push(radius);
        let within_half = quotient_pole_radii_within_half(&BigUint::from(q), approx.depth)
            .map_err(|e| e.to_string())?;
        all_ok &= approx.quotient_identity_holds && within_half;
        approximants.push(ApproximantJson {
            a: approx.depth,
            new_radius_exponent: small_rat_string(&exp),
            numeric_radius: radius,
            inner_radius_exponents: approx
                .inner_radius_exponents
                .iter()
                .map(small_rat_string)
                .collect(),
            outer_radius_exponents: approx
                .outer_radius_exponents
                .iter()
                .map(small_rat_string)
                .collect(),
            match_order: approx.match_order,
            quotient_identity: approx.quotient_identity_holds,
            quotient_poles_within_half: within_half,
            zeta_ratio: FactoredGfJson::from_core(&approx.zeta_ratio),
        });
    }
    let monotone = radii.windows(2).all(|w| w[0] < w[1]) && radii.iter().all(|&r| r < limit_radius);
    all_ok &= monotone;

    let mut root_checks = Vec::new();
    for residue in [3u64, 9, 27] {
        let modulus = quadratic_root_modulus(residue);
        let expected = (residue as f64).powf(-0.5);
        let abs_error = (modulus - expected).abs();
        let pass = abs_error <= ROOT_TOLERANCE;
        all_ok &= pass;
        root_checks.push(RootModulusCheckJson {
            residue,
            modulus,
            expected,
            abs_error,
            pass,
        });
    }

    Ok(DemoReport {
        q,
        a_max,
        order,
        limit_radius,
        radii_strictly_increase_to_limit: monotone,
        approximants,
        root_modulus_checks: root_checks,
        passed: all_ok,
    })
}

pub fn run_c3_poles(
    args: &DemoArgs,
    order: usize,
    csv: bool,
    out: &mut dyn Write,
) -> Result<i32, String> {
    if args.a_max < 2 {
        return Err("--a-max must be at least 2".into());
    }
    let report = build_report(args.q, args.a_max, order)?;
    if csv {
        writeln!(out, "a,new_radius_exponent,numeric_radius,limit").map_err(|e| e.to_string())?;
        for a in &report.approximants {
            writeln!(
                out,
                "{},{},{},{}",
                a.a, a.new_radius_exponent, a.numeric_radius, report.limit_radius
            )
            .map_err(|e| e.to_string())?;
        }
    } else {
        let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
        writeln!(out, "{text}").map_err(|e| e.to_string())?;
    }
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_modulus_is_inverse_square_root() {
        for residue in [3u64, 9, 27] {
            let err = (quadratic_root_modulus(residue) - (residue as f64).powf(-0.5)).abs();
            assert!(err <= ROOT_TOLERANCE, "Q={residue} err={err}");
        }
    }

    #[test]
    fn radii_climb_toward_the_limit() {
        // q = 3: 3^{-1} ≈ 0.3333, 3^{-2/3} ≈ 0.4807, 3^{-3/5} ≈ 0.5173,
        // limit 3^{-1/2} ≈ 0.5774
        let r1 = numeric_radius(3, 1, 1);
        let r2 = numeric_radius(3, 2, 3);
        let r3 = numeric_radius(3, 3, 5);
        assert!((r1 - 0.3333).abs() < 1e-3);
        assert!((r2 - 0.4807).abs() < 1e-3);
        assert!((r3 - 0.5173).abs() < 1e-3);
        assert!(r1 < r2 && r2 < r3 && r3 < 3f64.powf(-0.5));
    }

    #[test]
    fn demo_rejects_bases_outside_characteristic_three() {
        assert!(build_report(4, 3, 8).is_err());
        assert!(build_report(6, 3, 8).is_err());
    }
}
