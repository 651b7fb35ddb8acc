//! Parametric models for the cumulative expenditure distribution.
//!
//! Two families are provided: a polynomial in expenditure (degree 1 is the
//! straight-line model) and the Fermi-Dirac occupation curve
//! `g / (exp((x - mu) / T) + 1)`. Probabilities are carried in percent.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("temperature must be positive and finite, got {0}")]
    NonPositiveTemperature(f64),
    #[error("degeneracy must be positive and finite, got {0}")]
    NonPositiveDegeneracy(f64),
    #[error("chemical potential must be finite, got {0}")]
    NonFiniteChemicalPotential(f64),
    #[error("a polynomial needs at least two coefficients, got {0}")]
    TooFewCoefficients(usize),
}

/// Fermi-Dirac parameters: degeneracy `g`, chemical potential `mu` and
/// temperature `t`. `mu` and `t` share the units of the expenditure axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiParams {
    g: f64,
    mu: f64,
    t: f64,
}

impl FermiParams {
    pub fn new(g: f64, mu: f64, t: f64) -> Result<Self, ModelError> {
        if !(g.is_finite() && g > 0.0) {
            return Err(ModelError::NonPositiveDegeneracy(g));
        }
        if !mu.is_finite() {
            return Err(ModelError::NonFiniteChemicalPotential(mu));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(ModelError::NonPositiveTemperature(t));
        }
        Ok(Self { g, mu, t })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `ln(g)`, the value reported in the `C` column.
    pub fn ln_g(&self) -> f64 {
        self.g.ln()
    }

    /// Parameters as `[g, mu, t]`, the ordering used by the Jacobian.
    pub fn to_array(&self) -> [f64; 3] {
        [self.g, self.mu, self.t]
    }

    pub fn from_array(v: [f64; 3]) -> Result<Self, ModelError> {
        Self::new(v[0], v[1], v[2])
    }

    /// Expenditure at which the curve takes the value `p` (`0 < p < g`).
    pub fn inverse(&self, p: f64) -> Option<f64> {
        if !(p > 0.0 && p < self.g) {
            return None;
        }
        Some(self.mu + self.t * (self.g / p - 1.0).ln())
    }
}

/// Polynomial coefficients, highest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    coeffs: Vec<f64>,
}

impl PolyCoeffs {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, ModelError> {
        if coeffs.len() < 2 {
            return Err(ModelError::TooFewCoefficients(coeffs.len()));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// Horner evaluation of `sum coeffs[k] * x^(d - k)`.
pub fn eval_polynomial(coeffs: &PolyCoeffs, x: f64) -> f64 {
    coeffs.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Logistic weight `1 / (exp(z) + 1)` and `exp(z) / (exp(z) + 1)^2`,
/// evaluated without overflow for any finite `z`.
#[inline]
fn occupation(z: f64) -> (f64, f64) {
    if z > 0.0 {
        let e = (-z).exp();
        let d = 1.0 + e;
        (e / d, e / (d * d))
    } else {
        let e = z.exp();
        let d = 1.0 + e;
        (1.0 / d, e / (d * d))
    }
}

pub fn eval_fermi_dirac(p: &FermiParams, x: f64) -> f64 {
    let z = (x - p.mu) / p.t;
    p.g * occupation(z).0
}

/// Partial derivatives `(d/dg, d/dmu, d/dT)` of the Fermi-Dirac curve at `x`.
pub fn fermi_jacobian(p: &FermiParams, x: f64) -> [f64; 3] {
    let dx = x - p.mu;
    let z = dx / p.t;
    let (s, w) = occupation(z);
    let d_mu = p.g * w / p.t;
    [s, d_mu, d_mu * dx / p.t]
}

/// Either model's parameters, as carried by a fit result.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelParams {
    FermiDirac(FermiParams),
    Polynomial(PolyCoeffs),
}

impl ModelParams {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ModelParams::FermiDirac(p) => eval_fermi_dirac(p, x),
            ModelParams::Polynomial(c) => eval_polynomial(c, x),
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::FermiDirac(_) => ModelKind::FermiDirac,
            ModelParams::Polynomial(c) => ModelKind::Polynomial(c.degree()),
        }
    }
}

/// A model family to fit. Ordering follows the model name, so Fermi-Dirac
/// sorts before any polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    FermiDirac,
    Polynomial(usize),
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::FermiDirac => "fermi_dirac",
            ModelKind::Polynomial(_) => "polynomial",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::FermiDirac => f.write_str("fermi_dirac"),
            ModelKind::Polynomial(d) => write!(f, "polynomial(degree {d})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table5_2003() -> FermiParams {
        FermiParams::new(100.0, 8.196, 0.4881).unwrap()
    }

    #[test]
    fn polynomial_examples() {
        let line = PolyCoeffs::new(vec![-0.0234, 85.85]).unwrap();
        assert_eq!(eval_polynomial(&line, 0.0), 85.85);
        assert!((eval_polynomial(&line, 1000.0) - 62.45).abs() < 1e-12);
        let flat = PolyCoeffs::new(vec![0.0, 3.5]).unwrap();
        for x in [-10.0, 0.0, 7.25, 1e6] {
            assert_eq!(eval_polynomial(&flat, x), 3.5);
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(FermiParams::new(100.0, 1.0, 0.0).is_err());
        assert!(FermiParams::new(0.0, 1.0, 1.0).is_err());
        assert!(FermiParams::new(1.0, f64::NAN, 1.0).is_err());
        assert_eq!(
            PolyCoeffs::new(vec![1.0]),
            Err(ModelError::TooFewCoefficients(1))
        );
    }

    #[test]
    fn fermi_dirac_examples() {
        let p = table5_2003();
        assert_eq!(eval_fermi_dirac(&p, p.mu()), 50.0);
        let at_zero = eval_fermi_dirac(&p, 0.0);
        let eps = 1.0 - at_zero / 100.0;
        assert!(eps > 0.0 && eps < 1e-7, "eps = {eps}");
        let tenth = eval_fermi_dirac(&p, p.mu() + p.t() * 9f64.ln());
        assert!((tenth - 10.0).abs() < 1e-12);
    }

    #[test]
    fn fermi_dirac_saturates() {
        let p = FermiParams::new(100.0, 1.0, 1e-3).unwrap();
        assert_eq!(eval_fermi_dirac(&p, 1e6), 0.0);
        assert_eq!(eval_fermi_dirac(&p, -1e6), 100.0);
        let j = fermi_jacobian(&p, 1e6);
        assert!(j.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn jacobian_examples() {
        let p = table5_2003();
        let j = fermi_jacobian(&p, p.mu());
        assert_eq!(j[0], 0.5);
        assert_eq!(j[2], 0.0);
        let far = fermi_jacobian(&p, p.mu() + 50.0 * p.t());
        assert!(far.iter().all(|v| v.is_finite() && v.abs() < 1e-15));
    }

    #[test]
    fn inverse_round_trips() {
        let p = table5_2003();
        for pct in [10.0, 25.0, 50.0, 90.0] {
            let x = p.inverse(pct).unwrap();
            assert!((eval_fermi_dirac(&p, x) - pct).abs() < 1e-10);
        }
        assert_eq!(p.inverse(0.0), None);
        assert_eq!(p.inverse(100.0), None);
    }

    fn params() -> impl Strategy<Value = FermiParams> {
        (1.0..200.0f64, -20.0..20.0f64, 0.01..10.0f64)
            .prop_map(|(g, mu, t)| FermiParams::new(g, mu, t).unwrap())
    }

    proptest! {
        #[test]
        fn strictly_decreasing(p in params(), mut zs in prop::collection::vec(-30.0..30.0f64, 2..40)) {
            zs.sort_by(f64::total_cmp);
            zs.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
            let vals: Vec<f64> = zs.iter().map(|z| eval_fermi_dirac(&p, p.mu() + z * p.t())).collect();
            for w in vals.windows(2) {
                prop_assert!(w[1] < w[0]);
            }
        }

        #[test]
        fn bounded_by_zero_and_g(p in params(), z in -30.0..30.0f64) {
            let v = eval_fermi_dirac(&p, p.mu() + z * p.t());
            prop_assert!(v > 0.0 && v < p.g());
        }

        #[test]
        fn symmetric_about_mu(p in params(), delta in 0.0..20.0f64) {
            let hi = eval_fermi_dirac(&p, p.mu() + delta);
            let lo = eval_fermi_dirac(&p, p.mu() - delta);
            prop_assert!(((hi + lo) - p.g()).abs() <= 1e-10 * p.g());
        }

        #[test]
        fn horner_matches_power_sum(
            coeffs in prop::collection::vec(-100.0..100.0f64, 2..=5),
            x in -10.0..10.0f64,
        ) {
            let d = coeffs.len() - 1;
            let naive: f64 = coeffs.iter().enumerate().map(|(k, c)| c * x.powi((d - k) as i32)).sum();
            let scale: f64 = coeffs.iter().enumerate().map(|(k, c)| (c * x.powi((d - k) as i32)).abs()).sum();
            let horner = eval_polynomial(&PolyCoeffs::new(coeffs).unwrap(), x);
            prop_assert!((horner - naive).abs() <= 1e-12 * scale.max(1e-300));
        }
    }
}
