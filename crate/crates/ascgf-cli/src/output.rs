//! Machine-readable report shapes. Exact values are emitted as decimal
//! strings (rationals as "a/b"); only the demo's numeric radius fields are
//! floating point.

use std::io::Write;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use ascgf_core::asymptotics::{CoefficientFormula, PoleReport, SpectrumEntry};
use ascgf_core::conductor::LocalCondGf;
use ascgf_core::fields::FieldCountReport;
use ascgf_core::group::AbelianPGroup;
use ascgf_core::jump::JumpFactor;
use ascgf_core::poly::Poly;
use ascgf_core::series::TruncatedSeries;
use ascgf_core::zeta::PlaceTable;
use ascgf_core::{BigRat, FactoredGf, Rat};

use crate::Invariant;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FactorJson {
    pub alpha: u64,
    pub beta: u64,
    pub exp: i64,
}

/// `{"q": 3, "factors": [{"alpha": 0, "beta": 1, "exp": 1}, ...]}`; the base
/// is a JSON number when it fits in 64 bits, a decimal string otherwise.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FactoredGfJson {
    pub q: Value,
    pub factors: Vec<FactorJson>,
}

impl FactoredGfJson {
    pub fn from_core(f: &FactoredGf) -> Self {
        let q = match u64::try_from(f.base()) {
            Ok(small) => Value::from(small),
            Err(_) => Value::from(f.base().to_string()),
        };
        FactoredGfJson {
            q,
            factors: f
                .factors()
                .map(|(alpha, beta, exp)| FactorJson { alpha, beta, exp })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<FactoredGf, String> {
        let base: BigUint = match &self.q {
            Value::Number(n) => BigUint::from(n.as_u64().ok_or("base must be a positive integer")?),
            Value::String(s) => s.parse().map_err(|_| "invalid base".to_string())?,
            _ => return Err("base must be a number or decimal string".into()),
        };
        let mut f = FactoredGf::one(base);
        for piece in &self.factors {
            f.mul_factor(piece.alpha, piece.beta, piece.exp);
        }
        Ok(f)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SeriesJson {
    pub order: usize,
    pub coefficients: Vec<String>,
}

impl SeriesJson {
    pub fn from_series(s: &TruncatedSeries) -> Self {
        SeriesJson {
            order: s.order(),
            coefficients: s.coeffs().iter().map(rat_string).collect(),
        }
    }

    pub fn from_counts(order: usize, counts: &[BigInt]) -> Self {
        SeriesJson {
            order,
            coefficients: counts.iter().map(|c| c.to_string()).collect(),
        }
    }
}

pub fn rat_string(r: &BigRat) -> String {
    r.to_string()
}

pub fn small_rat_string(r: &Rat) -> String {
    r.to_string()
}

fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rat_string).collect()
}

#[derive(Serialize, Debug)]
pub struct LocalCondJson {
    pub factored: FactoredGfJson,
    pub residual: Vec<String>,
    pub display: String,
}

impl LocalCondJson {
    fn new(cond: &LocalCondGf) -> Self {
        let display = if cond.residual().is_one() {
            cond.factored().to_display_string()
        } else {
            format!("({})*[{}]", cond.residual(), cond.factored())
        };
        LocalCondJson {
            factored: FactoredGfJson::from_core(cond.factored()),
            residual: poly_strings(cond.residual()),
            display,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct FittedRationalJson {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub verified_to: usize,
}

impl FittedRationalJson {
    pub fn new(num: &Poly, den: &Poly, verified_to: usize) -> Self {
        FittedRationalJson {
            numerator: poly_strings(num),
            denominator: poly_strings(den),
            verified_to,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct GfReport {
    pub group: String,
    pub q: u64,
    pub invariant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factored: Option<FactoredGfJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<LocalCondJson>,
    pub series: SeriesJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted_rational: Option<FittedRationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GfReport {
    fn base(group: &AbelianPGroup, q: u64, invariant: &str, series: SeriesJson) -> Self {
        GfReport {
            group: group.to_spec_string(),
            q,
            invariant: invariant.to_string(),
            scope: None,
            factored: None,
            display: None,
            local: None,
            series,
            fitted_rational: None,
            note: None,
        }
    }

    pub fn global_factored(
        group: &AbelianPGroup,
        q: u64,
        gf: &FactoredGf,
        order: usize,
    ) -> Self {
        let mut r = Self::base(group, q, "asc", SeriesJson::from_series(&gf.expand(order)));
        r.scope = Some("global".into());
        r.factored = Some(FactoredGfJson::from_core(gf));
        r.display = Some(gf.to_display_string());
        r
    }

    pub fn local_factored(group: &AbelianPGroup, q: u64, gf: &FactoredGf, order: usize) -> Self {
        let mut r = Self::base(group, q, "asc", SeriesJson::from_series(&gf.expand(order)));
        r.scope = Some("local".into());
        r.factored = Some(FactoredGfJson::from_core(gf));
        r.display = Some(gf.to_display_string());
        r
    }

    pub fn local_cond(group: &AbelianPGroup, q: u64, cond: &LocalCondGf, order: usize) -> Self {
        let mut r = Self::base(group, q, "cond", SeriesJson::from_series(&cond.expand(order)));
        r.scope = Some("local".into());
        r.local = Some(LocalCondJson::new(cond));
        r
    }

    pub fn global_cond(
        group: &AbelianPGroup,
        q: u64,
        local: &LocalCondGf,
        series: &TruncatedSeries,
        fitted: Option<FittedRationalJson>,
    ) -> Self {
        let mut r = Self::base(group, q, "cond", SeriesJson::from_series(series));
        r.scope = Some("global".into());
        r.local = Some(LocalCondJson::new(local));
        r.fitted_rational = fitted;
        r
    }

    pub fn disc(
        group: &AbelianPGroup,
        q: u64,
        series: &TruncatedSeries,
        note: Option<String>,
    ) -> Self {
        let mut r = Self::base(group, q, "disc", SeriesJson::from_series(series));
        r.scope = Some("global".into());
        r.note = note;
        r
    }

    pub fn series_for_csv(&self) -> Vec<(usize, String)> {
        self.series
            .coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| (n, c.clone()))
            .collect()
    }
}

#[derive(Serialize, Debug)]
pub struct JumpFactorJson {
    pub var: usize,
    pub q_exp: u64,
    pub var_pow: u32,
    pub exp: i64,
}

#[derive(Serialize, Debug)]
pub struct JumpReport {
    pub group: String,
    pub q: u64,
    pub scope: String,
    /// Factors `(1 - Q^{q_exp} X_var^{var_pow})^{exp}` of the local
    /// multivariate function (variable `X_i` weighs `p^i`).
    pub local_factors: Vec<JumpFactorJson>,
    /// The specialization `X_i = X^{p^i}`, which recovers the last-jump
    /// grading.
    pub specialized_series: SeriesJson,
}

impl JumpReport {
    fn new(
        group: &AbelianPGroup,
        q: u64,
        scope: &str,
        factors: &[JumpFactor],
        series: &TruncatedSeries,
    ) -> Self {
        JumpReport {
            group: group.to_spec_string(),
            q,
            scope: scope.to_string(),
            local_factors: factors
                .iter()
                .map(|f| JumpFactorJson {
                    var: f.var,
                    q_exp: f.q_exp,
                    var_pow: f.var_pow,
                    exp: f.exp,
                })
                .collect(),
            specialized_series: SeriesJson::from_series(series),
        }
    }

    pub fn local(
        group: &AbelianPGroup,
        q: u64,
        factors: &[JumpFactor],
        series: &TruncatedSeries,
    ) -> Self {
        Self::new(group, q, "local", factors, series)
    }

    pub fn global(
        group: &AbelianPGroup,
        q: u64,
        factors: &[JumpFactor],
        series: &TruncatedSeries,
    ) -> Self {
        Self::new(group, q, "global", factors, series)
    }

    pub fn series_for_csv(&self) -> Vec<(usize, String)> {
        self.specialized_series
            .coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| (n, c.clone()))
            .collect()
    }
}

#[derive(Serialize, Debug)]
pub struct CountReport {
    pub group: String,
    pub q: u64,
    pub invariant: String,
    pub order: usize,
    pub coefficients: Vec<String>,
}

impl CountReport {
    pub fn new(
        group: &AbelianPGroup,
        q: u64,
        invariant: Invariant,
        order: usize,
        counts: &[BigInt],
    ) -> Self {
        CountReport {
            group: group.to_spec_string(),
            q,
            invariant: match invariant {
                Invariant::Asc => "asc",
                Invariant::Cond => "cond",
                Invariant::Disc => "disc",
            }
            .to_string(),
            order,
            coefficients: counts.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn rows(&self) -> Vec<(usize, String)> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| (n, c.clone()))
            .collect()
    }
}

#[derive(Serialize, Debug)]
pub struct SpectrumEntryJson {
    pub radius_exponent: String,
    pub points: u64,
    pub net_order: i64,
}

#[derive(Serialize, Debug)]
pub struct GeometricBlockJson {
    pub alpha: u64,
    pub beta: u64,
    pub multiplicity: u32,
    pub numerator: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct FormulaJson {
    pub polynomial_part: Vec<String>,
    pub blocks: Vec<GeometricBlockJson>,
}

#[derive(Serialize, Debug)]
pub struct AsymptoticsReport {
    pub group: String,
    pub q: u64,
    pub a: String,
    pub a_prime: u64,
    pub pole_location: String,
    pub multiplicity: u64,
    pub leading_constant: String,
    pub factored: FactoredGfJson,
    pub spectrum: Vec<SpectrumEntryJson>,
    pub formula: FormulaJson,
}

impl AsymptoticsReport {
    pub fn new(
        group: &AbelianPGroup,
        q: u64,
        gf: &FactoredGf,
        report: &PoleReport,
        spectrum: &[SpectrumEntry],
        formula: &CoefficientFormula,
    ) -> Self {
        let inv = group.invariant_sequence();
        AsymptoticsReport {
            group: group.to_spec_string(),
            q,
            a: small_rat_string(&inv.a()),
            a_prime: inv.a_prime(),
            pole_location: rat_string(&report.pole_location),
            multiplicity: report.multiplicity,
            leading_constant: rat_string(&report.leading_constant),
            factored: FactoredGfJson::from_core(gf),
            spectrum: spectrum
                .iter()
                .map(|e| SpectrumEntryJson {
                    radius_exponent: small_rat_string(&e.radius_exponent),
                    points: e.points,
                    net_order: e.net_order,
                })
                .collect(),
            formula: FormulaJson {
                polynomial_part: poly_strings(&formula.poly_part),
                blocks: formula
                    .blocks
                    .iter()
                    .map(|b| GeometricBlockJson {
                        alpha: b.alpha,
                        beta: b.beta,
                        multiplicity: b.multiplicity,
                        numerator: poly_strings(&b.numerator),
                    })
                    .collect(),
            },
        }
    }
}

#[derive(Serialize, Debug)]
pub struct FieldPieceJson {
    pub weight: String,
    pub factored: FactoredGfJson,
    pub display: String,
}

#[derive(Serialize, Debug)]
pub struct FieldsReport {
    pub group: String,
    pub q: u64,
    pub order: usize,
    pub coefficients: Vec<String>,
    /// The series as an integer combination of factored rational functions,
    /// one piece per subgroup shape.
    pub pieces: Vec<FieldPieceJson>,
}

impl FieldsReport {
    pub fn new(group: &AbelianPGroup, q: u64, order: usize, report: &FieldCountReport) -> Self {
        FieldsReport {
            group: group.to_spec_string(),
            q,
            order,
            coefficients: report
                .series
                .coeffs()
                .iter()
                .map(rat_string)
                .collect(),
            pieces: report
                .pieces
                .iter()
                .map(|(w, gf)| FieldPieceJson {
                    weight: w.to_string(),
                    factored: FactoredGfJson::from_core(gf),
                    display: gf.to_display_string(),
                })
                .collect(),
        }
    }

    pub fn rows(&self) -> Vec<(usize, String)> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| (n, c.clone()))
            .collect()
    }
}

#[derive(Serialize, Debug)]
pub struct PlaceRowJson {
    pub degree: usize,
    pub count: String,
}

#[derive(Serialize, Debug)]
pub struct PlacesReport {
    pub q: u64,
    pub places: Vec<PlaceRowJson>,
}

impl PlacesReport {
    pub fn new(table: &PlaceTable) -> Self {
        PlacesReport {
            q: table.q(),
            places: table
                .counts()
                .iter()
                .enumerate()
                .map(|(i, c)| PlaceRowJson {
                    degree: i + 1,
                    count: c.to_string(),
                })
                .collect(),
        }
    }
}

pub fn write_series_csv(out: &mut dyn Write, rows: Vec<(usize, String)>) -> std::io::Result<()> {
    writeln!(out, "n,coefficient")?;
    for (n, c) in rows {
        writeln!(out, "{n},{c}")?;
    }
    Ok(())
}

pub fn write_spectrum_csv(out: &mut dyn Write, report: &AsymptoticsReport) -> std::io::Result<()> {
    writeln!(out, "radius_exponent,points,net_order")?;
    for e in &report.spectrum {
        writeln!(out, "{},{},{}", e.radius_exponent, e.points, e.net_order)?;
    }
    Ok(())
}

pub fn write_places_csv(out: &mut dyn Write, report: &PlacesReport) -> std::io::Result<()> {
    writeln!(out, "degree,count")?;
    for row in &report.places {
        writeln!(out, "{},{}", row.degree, row.count)?;
    }
    Ok(())
}
