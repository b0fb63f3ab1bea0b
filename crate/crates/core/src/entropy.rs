//! Gaussian densities, Shannon and weighted differential entropies.
//!
//! All logarithms are natural. For a weight φ and the centred normal density
//! f_C, the weighted entropy −∫ φ f ln f has the closed form
//!
//! ```text
//! σ_φ(C) = (α/2)·ln[(2π)ᵈ det C] + ½·tr(C⁻¹ Φ_C)
//! ```
//!
//! with α = ∫ φ f and Φ_C = ∫ x xᵀ φ f. For the exponential weight
//! φ(x) = exp(tᵀx) two closed forms for Φ_C are available, see
//! [`PhiVariant`]; the quadrature oracle decides which one matches the
//! defining integral.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{convex_combine, Matrix, SpdMatrix, Vector};

/// Relative tolerance applied to the two weighted-inequality conditions.
pub const CONDITION_TOL: f64 = 1e-10;

/// A two-component mixing instance `(C₁, C₂, λ₁)` with `C = λ₁C₁ + λ₂C₂`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Scenario {
    c1: SpdMatrix,
    c2: SpdMatrix,
    lambda1: f64,
    lambda2: f64,
    c: SpdMatrix,
}

impl Scenario {
    pub fn new(c1: SpdMatrix, c2: SpdMatrix, lambda1: f64) -> Result<Self> {
        let c = convex_combine(&c1, &c2, lambda1)?;
        Ok(Self {
            c1,
            c2,
            lambda1,
            lambda2: 1.0 - lambda1,
            c,
        })
    }

    /// One-dimensional scenario with variances `c1`, `c2`.
    pub fn scalar(c1: f64, c2: f64, lambda1: f64) -> Result<Self> {
        Self::new(SpdMatrix::scalar(c1)?, SpdMatrix::scalar(c2)?, lambda1)
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    pub fn c1(&self) -> &SpdMatrix {
        &self.c1
    }

    pub fn c2(&self) -> &SpdMatrix {
        &self.c2
    }

    /// The mixture `λ₁C₁ + λ₂C₂`.
    pub fn c(&self) -> &SpdMatrix {
        &self.c
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    /// `[(λ₁, C₁), (λ₂, C₂)]`, convenient for sums over components.
    pub fn components(&self) -> [(f64, &SpdMatrix); 2] {
        [(self.lambda1, &self.c1), (self.lambda2, &self.c2)]
    }

    pub(crate) fn check_vector(&self, t: &Vector) -> Result<()> {
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: t.dim(),
            });
        }
        Ok(())
    }
}

/// Closed form used for the weighted second-moment matrix Φ_C under
/// φ(x) = exp(tᵀx).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiVariant {
    /// `Φ_C = C·exp(½tᵀCt)`, the form that makes σ_t(C) = h(f_C)·exp(½tᵀCt).
    #[default]
    Paper,
    /// `Φ_C = (C + C t tᵀ C)·exp(½tᵀCt)`, the second moment of the tilted
    /// Gaussian.
    #[serde(alias = "full")]
    FullMoment,
}

impl std::str::FromStr for PhiVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper" => Ok(PhiVariant::Paper),
            "full" | "full-moment" => Ok(PhiVariant::FullMoment),
            other => Err(format!("unknown phi variant '{other}' (expected paper|full)")),
        }
    }
}

/// The pair (α(C), Φ_C) for one covariance under one weight function.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeightFunctional {
    pub alpha: f64,
    pub phi_matrix: Matrix,
}

impl WeightFunctional {
    /// φ ≡ 1: α = 1, Φ_C = C.
    pub fn unit(c: &SpdMatrix) -> Self {
        Self {
            alpha: 1.0,
            phi_matrix: *c.matrix(),
        }
    }
}

/// Outcome of the two weighted-inequality conditions.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionReport {
    /// `λ₁α(C₁) + λ₂α(C₂) − α(C)`; must be ≥ 0.
    pub alpha_excess: f64,
    /// `alpha_excess·ln[(2π)ᵈ det C] + tr(C⁻¹Ψ)`; must be ≤ 0.
    pub second_condition: f64,
    /// `Ψ = λ₁Φ_{C₁} + λ₂Φ_{C₂} − Φ_C`.
    pub psi: Matrix,
    pub satisfied: bool,
}

pub fn gaussian_log_pdf(c: &SpdMatrix, x: &Vector) -> Result<f64> {
    x.check_same_dim(c.dim())?;
    let d = c.dim() as f64;
    let y = c.solve(x);
    Ok(-0.5 * (d * (2.0 * PI).ln() + c.log_det() + x.dot(&y)))
}

/// Density of N(0, C) at `x`.
pub fn gaussian_pdf(c: &SpdMatrix, x: &Vector) -> Result<f64> {
    Ok(gaussian_log_pdf(c, x)?.exp())
}

/// `h(f_C) = ½ ln[(2πe)ᵈ det C]`.
pub fn shannon_entropy_gaussian(c: &SpdMatrix) -> f64 {
    0.5 * (c.dim() as f64 * (2.0 * PI * E).ln() + c.log_det())
}

/// `ln det C − λ₁ ln det C₁ − λ₂ ln det C₂`, nonnegative by concavity of ln det.
pub fn kfi_gap(s: &Scenario) -> f64 {
    s.c().log_det() - s.lambda1() * s.c1().log_det() - s.lambda2() * s.c2().log_det()
}

/// `α(C) = exp(½ tᵀCt)` for φ(x) = exp(tᵀx).
pub fn alpha_exp(c: &SpdMatrix, t: &Vector) -> Result<f64> {
    Ok((0.5 * c.quad_form(t)?).exp())
}

pub fn phi_matrix_exp(c: &SpdMatrix, t: &Vector, variant: PhiVariant) -> Result<WeightFunctional> {
    let alpha = alpha_exp(c, t)?;
    let base = match variant {
        PhiVariant::Paper => *c.matrix(),
        PhiVariant::FullMoment => {
            let ct = c.matrix().mul_vec(t);
            *c.matrix() + ct.outer(&ct)
        }
    };
    Ok(WeightFunctional {
        alpha,
        phi_matrix: base.scale(alpha),
    })
}

/// `σ_φ(C) = (α/2)·ln[(2π)ᵈ det C] + ½·tr(C⁻¹Φ_C)`.
pub fn sigma_weighted(c: &SpdMatrix, w: &WeightFunctional) -> Result<f64> {
    let d = c.dim() as f64;
    let tr = c.trace_inverse_product(&w.phi_matrix)?;
    Ok(0.5 * w.alpha * (d * (2.0 * PI).ln() + c.log_det()) + 0.5 * tr)
}

/// Evaluates both conditions of the general weighted inequality for functionals
/// `w1`, `w2`, `w` computed for `C₁`, `C₂`, `C` under the same weight.
pub fn wkfi_conditions(
    s: &Scenario,
    w1: &WeightFunctional,
    w2: &WeightFunctional,
    w: &WeightFunctional,
) -> Result<ConditionReport> {
    let d = s.dim() as f64;
    let (l1, l2) = (s.lambda1(), s.lambda2());
    let mixed_alpha = l1 * w1.alpha + l2 * w2.alpha;
    let alpha_excess = mixed_alpha - w.alpha;
    let mixed_phi = w1.phi_matrix.scale(l1) + w2.phi_matrix.scale(l2);
    let psi = mixed_phi - w.phi_matrix;
    let log_term = d * (2.0 * PI).ln() + s.c().log_det();
    let tr_mixed = s.c().trace_inverse_product(&mixed_phi)?;
    let tr_own = s.c().trace_inverse_product(&w.phi_matrix)?;
    let second_condition = alpha_excess * log_term + (tr_mixed - tr_own);

    let scale1 = mixed_alpha.abs().max(w.alpha.abs());
    let scale2 = (mixed_alpha * log_term).abs() + (w.alpha * log_term).abs() + tr_mixed.abs() + tr_own.abs();
    let satisfied =
        alpha_excess >= -CONDITION_TOL * scale1 && second_condition <= CONDITION_TOL * scale2;
    Ok(ConditionReport {
        alpha_excess,
        second_condition,
        psi,
        satisfied,
    })
}

/// `σ_t(C) − λ₁σ_t(C₁) − λ₂σ_t(C₂)` for φ(x) = exp(tᵀx).
pub fn wkfi_gap(s: &Scenario, t: &Vector, variant: PhiVariant) -> Result<f64> {
    s.check_vector(t)?;
    let sigma = |c: &SpdMatrix| -> Result<f64> { sigma_weighted(c, &phi_matrix_exp(c, t, variant)?) };
    Ok(sigma(s.c())? - s.lambda1() * sigma(s.c1())? - s.lambda2() * sigma(s.c2())?)
}

/// The same gap for φ ≡ 1, i.e. the Shannon entropy gap.
pub fn wkfi_gap_unit(s: &Scenario) -> Result<f64> {
    let sigma = |c: &SpdMatrix| sigma_weighted(c, &WeightFunctional::unit(c));
    Ok(sigma(s.c())? - s.lambda1() * sigma(s.c1())? - s.lambda2() * sigma(s.c2())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    fn scenario_2d() -> Scenario {
        Scenario::new(
            SpdMatrix::from_sigma_rho(1.2, 0.3).unwrap(),
            SpdMatrix::from_sigma_rho(0.8, -0.6).unwrap(),
            0.4,
        )
        .unwrap()
    }

    #[test]
    fn pdf_values() {
        let one = SpdMatrix::scalar(1.0).unwrap();
        assert!(close(gaussian_pdf(&one, &Vector::new(&[0.0])).unwrap(), 0.3989423, 1e-7));
        assert!(close(gaussian_pdf(&one, &Vector::new(&[1.0])).unwrap(), 0.2419707, 1e-7));
        let i2 = SpdMatrix::identity(2);
        assert!(close(gaussian_pdf(&i2, &Vector::zeros(2)).unwrap(), 0.1591549, 1e-7));
        assert!(gaussian_pdf(&i2, &Vector::zeros(1)).is_err());
    }

    #[test]
    fn shannon_values() {
        let unit_arg = SpdMatrix::scalar(1.0 / (2.0 * PI * E)).unwrap();
        assert!(shannon_entropy_gaussian(&unit_arg).abs() < 1e-15);
        assert!(close(shannon_entropy_gaussian(&SpdMatrix::identity(2)), 2.8378771, 1e-7));
        assert!(close(shannon_entropy_gaussian(&SpdMatrix::scalar(1.0).unwrap()), 1.4189385, 1e-7));
    }

    #[test]
    fn kfi_gap_values() {
        let c = SpdMatrix::from_sigma_rho(1.1, 0.2).unwrap();
        assert!(kfi_gap(&Scenario::new(c, c, 0.3).unwrap()).abs() < 1e-15);
        let s = scenario_2d();
        let endpoint = Scenario::new(*s.c1(), *s.c2(), 1.0).unwrap();
        assert_eq!(kfi_gap(&endpoint), 0.0);
        let scalar = Scenario::scalar(1.0, 3.0, 0.5).unwrap();
        let expected = 2.0_f64.ln() - 0.5 * 3.0_f64.ln();
        assert!(close(kfi_gap(&scalar), expected, 1e-15));
        assert!(close(kfi_gap(&scalar), 0.1438410, 1e-7));
    }

    #[test]
    fn alpha_values() {
        let i2 = SpdMatrix::identity(2);
        assert_eq!(alpha_exp(&i2, &Vector::zeros(2)).unwrap(), 1.0);
        assert!(close(alpha_exp(&i2, &Vector::new(&[1.0, 1.0])).unwrap(), E, 1e-15));
        let two = SpdMatrix::scalar(2.0).unwrap();
        assert!(close(alpha_exp(&two, &Vector::new(&[1.0])).unwrap(), E, 1e-15));
    }

    #[test]
    fn phi_variants() {
        let c = SpdMatrix::from_sigma_rho(1.3, 0.4).unwrap();
        let zero = Vector::zeros(2);
        let p = phi_matrix_exp(&c, &zero, PhiVariant::Paper).unwrap();
        let f = phi_matrix_exp(&c, &zero, PhiVariant::FullMoment).unwrap();
        assert_eq!(p.phi_matrix, *c.matrix());
        assert!((p.phi_matrix - f.phi_matrix).max_abs() == 0.0);

        // d = 1, c = 1, t = 1: α = e^{1/2}; paper Φ = e^{1/2}, full Φ = 2e^{1/2}.
        let one = SpdMatrix::scalar(1.0).unwrap();
        let t = Vector::new(&[1.0]);
        let p = phi_matrix_exp(&one, &t, PhiVariant::Paper).unwrap();
        let f = phi_matrix_exp(&one, &t, PhiVariant::FullMoment).unwrap();
        assert!(close(p.phi_matrix[(0, 0)], E.sqrt(), 1e-15));
        assert!(close(f.phi_matrix[(0, 0)], 2.0 * E.sqrt(), 1e-15));

        let p = phi_matrix_exp(&SpdMatrix::identity(2), &Vector::new(&[1.0, 0.0]), PhiVariant::Paper).unwrap();
        let want = Matrix::identity(2).scale(E.sqrt());
        assert!((p.phi_matrix - want).max_abs() < 1e-15);
    }

    #[test]
    fn sigma_reductions() {
        let c = SpdMatrix::from_sigma_rho(0.9, -0.4).unwrap();
        let h = shannon_entropy_gaussian(&c);
        assert!(close(sigma_weighted(&c, &WeightFunctional::unit(&c)).unwrap(), h, 1e-14));

        let t = Vector::new(&[0.7, -0.3]);
        let w = phi_matrix_exp(&c, &t, PhiVariant::Paper).unwrap();
        let want = h * (0.5 * c.quad_form(&t).unwrap()).exp();
        assert!(close(sigma_weighted(&c, &w).unwrap(), want, 1e-14));

        let one = SpdMatrix::scalar(1.0).unwrap();
        let w = phi_matrix_exp(&one, &Vector::new(&[0.0]), PhiVariant::Paper).unwrap();
        assert!(close(sigma_weighted(&one, &w).unwrap(), 0.5 * (2.0 * PI * E).ln(), 1e-15));
    }

    #[test]
    fn conditions_hold_with_equality_for_unit_weight() {
        let s = scenario_2d();
        let r = wkfi_conditions(
            &s,
            &WeightFunctional::unit(s.c1()),
            &WeightFunctional::unit(s.c2()),
            &WeightFunctional::unit(s.c()),
        )
        .unwrap();
        assert!(r.alpha_excess.abs() < 1e-15);
        assert!(r.second_condition.abs() < 1e-13);
        assert!(r.satisfied);
    }

    #[test]
    fn conditions_at_zero_weight_vector_and_equal_matrices() {
        for variant in [PhiVariant::Paper, PhiVariant::FullMoment] {
            let s = scenario_2d();
            let t = Vector::zeros(2);
            let w = |c: &SpdMatrix| phi_matrix_exp(c, &t, variant).unwrap();
            let r = wkfi_conditions(&s, &w(s.c1()), &w(s.c2()), &w(s.c())).unwrap();
            assert!(r.alpha_excess.abs() < 1e-15 && r.second_condition.abs() < 1e-13);
            assert!(r.satisfied);

            let c = SpdMatrix::from_sigma_rho(1.4, 0.5).unwrap();
            let same = Scenario::new(c, c, 0.35).unwrap();
            let t = Vector::new(&[0.8, 1.1]);
            let w = |c: &SpdMatrix| phi_matrix_exp(c, &t, variant).unwrap();
            let r = wkfi_conditions(&same, &w(same.c1()), &w(same.c2()), &w(same.c())).unwrap();
            assert!(r.alpha_excess.abs() < 1e-12, "{r:?}");
            assert!(r.second_condition.abs() < 1e-11, "{r:?}");
            assert!(r.satisfied);
        }
    }

    #[test]
    fn wkfi_gap_cases() {
        let s = scenario_2d();
        // At t = 0 the weighted gap is the Shannon gap, i.e. half the log-det gap.
        let g0 = wkfi_gap(&s, &Vector::zeros(2), PhiVariant::Paper).unwrap();
        assert!(close(g0, 0.5 * kfi_gap(&s), 1e-13));
        assert!(close(wkfi_gap_unit(&s).unwrap(), 0.5 * kfi_gap(&s), 1e-13));

        let c = SpdMatrix::from_sigma_rho(1.4, 0.5).unwrap();
        let same = Scenario::new(c, c, 0.35).unwrap();
        let endpoint = Scenario::new(*s.c1(), *s.c2(), 0.0).unwrap();
        for t in [[0.3, -0.2], [1.5, 0.7], [-2.0, 1.0]] {
            let t = Vector::new(&t);
            for v in [PhiVariant::Paper, PhiVariant::FullMoment] {
                assert!(wkfi_gap(&same, &t, v).unwrap().abs() < 1e-10);
                assert!(wkfi_gap(&endpoint, &t, v).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn phi_variant_parsing() {
        assert_eq!("paper".parse::<PhiVariant>().unwrap(), PhiVariant::Paper);
        assert_eq!("full".parse::<PhiVariant>().unwrap(), PhiVariant::FullMoment);
        assert!("other".parse::<PhiVariant>().is_err());
    }
}
