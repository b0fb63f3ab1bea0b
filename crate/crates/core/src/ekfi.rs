//! Exponential-weight formulas.
//!
//! With `e_A(t) = exp(½ tᵀAt)` and `K(A) = ln[(2πe)ᵈ det A]`:
//!
//! ```text
//! Σ(t) = K(C)·e_C(t) − Σₐ λₐ K(Cₐ)·e_{Cₐ}(t)
//! Λ(t) = Σ(t) − Σ(0)
//! F¹(t) = Σₐ λₐ e_{Cₐ} − e_C
//! F²(t) = F¹·ln[(2π)ᵈ det C] + Σₐ λₐ e_{Cₐ} tr(C⁻¹Cₐ) − d·e_C
//! 𝕊 = { t : F¹(t) ≥ 0, F²(t) ≤ 0 }
//! ```
//!
//! Λ, ∇Λ and ∇²Λ are all derived from the definition `Σ(t) − Σ(0)`. The
//! printed expansions of the stationarity equation, the second gradient and
//! the origin Hessian carry the opposite overall sign; they are kept as
//! `*_printed` functions so reports can show both conventions side by side.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{convex_combine, Matrix, SpdMatrix, Vector};
use crate::Scenario;

/// Relative tolerance for 𝕊 membership; conditions met with equality count
/// as inside.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// Which normalizing constant multiplies F¹ inside F².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum F2Constant {
    /// `ln[(2π)ᵈ det C]`, as the condition is stated.
    #[default]
    #[serde(rename = "2pi")]
    TwoPi,
    /// `ln[(2πe)ᵈ det C]`, matching the constant used in Σ.
    #[serde(rename = "2pie")]
    TwoPiE,
}

impl std::str::FromStr for F2Constant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "2pi" => Ok(F2Constant::TwoPi),
            "2pie" => Ok(F2Constant::TwoPiE),
            other => Err(format!("unknown F2 constant '{other}' (expected 2pi|2pie)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionVerdict {
    pub f1: f64,
    pub f2: f64,
    pub in_s: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    LocalMinimum,
    LocalMaximum,
    Saddle,
    Degenerate,
}

impl Classification {
    /// Sign pattern of sorted or unsorted eigenvalues. Relative tolerance is
    /// `1e-8·max|λ|`; all eigenvalues within `1e-12` of zero is degenerate.
    pub fn from_eigenvalues(ev: &[f64]) -> Self {
        let scale = ev.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if !scale.is_finite() || scale <= 1e-12 {
            return Classification::Degenerate;
        }
        let tol = 1e-8 * scale;
        let pos = ev.iter().filter(|&&x| x > tol).count();
        let neg = ev.iter().filter(|&&x| x < -tol).count();
        match (pos, neg) {
            (p, 0) if p == ev.len() => Classification::LocalMinimum,
            (0, n) if n == ev.len() => Classification::LocalMaximum,
            (p, n) if p > 0 && n > 0 => Classification::Saddle,
            _ => Classification::Degenerate,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::LocalMinimum => "local-minimum",
            Classification::LocalMaximum => "local-maximum",
            Classification::Saddle => "saddle",
            Classification::Degenerate => "degenerate",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Curvature of Λ at t = 0 under both sign conventions.
#[derive(Debug, Clone, Serialize)]
pub struct OriginReport {
    /// `∇²Λ(0) = ln(det C)·C − Σₐ λₐ ln(det Cₐ)·Cₐ`.
    pub hessian: Matrix,
    pub eigenvalues: Vec<f64>,
    pub classification: Classification,
    /// `Σₐ λₐ ln(det Cₐ)·Cₐ − ln(det C)·C`, as printed for the origin.
    pub paper_sign_hessian: Matrix,
    pub paper_sign_eigenvalues: Vec<f64>,
    pub paper_sign_classification: Classification,
    /// `hessian == −paper_sign_hessian` to round-off.
    pub sign_relation_holds: bool,
}

fn ln_two_pi_e() -> f64 {
    (2.0 * PI * E).ln()
}

/// `ln[(2πe)ᵈ det A]`.
pub fn log_norm_2pie(a: &SpdMatrix) -> f64 {
    a.dim() as f64 * ln_two_pi_e() + a.log_det()
}

/// `ln[(2π)ᵈ det A]`.
pub fn log_norm_2pi(a: &SpdMatrix) -> f64 {
    a.dim() as f64 * (2.0 * PI).ln() + a.log_det()
}

fn tilt(a: &SpdMatrix, t: &Vector) -> f64 {
    (0.5 * a.quad_unchecked(t)).exp()
}

/// Exponentially weighted Ky Fan gap Σ(t), summed as
/// `Σₐ λₐ [K(C)e_C − K(Cₐ)e_{Cₐ}]` so that Cₐ = C contributes exactly zero.
pub fn sigma_big(s: &Scenario, t: &Vector) -> Result<f64> {
    s.check_vector(t)?;
    let own = log_norm_2pie(s.c()) * tilt(s.c(), t);
    Ok(s
        .components()
        .iter()
        .map(|&(l, ca)| l * (own - log_norm_2pie(ca) * tilt(ca, t)))
        .sum())
}

/// `Λ(t) = Σ(t) − Σ(0)`; exactly zero at t = 0.
pub fn lambda_gap(s: &Scenario, t: &Vector) -> Result<f64> {
    Ok(sigma_big(s, t)? - sigma_big(s, &Vector::zeros(s.dim()))?)
}

/// The expanded three-term form of Λ(t), kept as an algebraic cross-check.
pub fn lambda_gap_expanded(s: &Scenario, t: &Vector) -> Result<f64> {
    s.check_vector(t)?;
    let d = s.dim() as f64;
    let ec = tilt(s.c(), t);
    let mut value = s.c().log_det() * (ec - 1.0);
    let mut mixed = 0.0;
    for (l, ca) in s.components() {
        let ea = tilt(ca, t);
        value += l * ca.log_det() * (1.0 - ea);
        mixed += l * ea;
    }
    Ok(value + d * ln_two_pi_e() * (ec - mixed))
}

pub fn region_membership(s: &Scenario, t: &Vector) -> Result<RegionVerdict> {
    region_membership_with(s, t, F2Constant::TwoPi)
}

pub fn region_membership_with(s: &Scenario, t: &Vector, constant: F2Constant) -> Result<RegionVerdict> {
    s.check_vector(t)?;
    let d = s.dim() as f64;
    let ec = tilt(s.c(), t);
    let mut mixed = 0.0;
    let mut f1 = 0.0;
    let mut trace_term = 0.0;
    for (l, ca) in s.components() {
        let ea = tilt(ca, t);
        mixed += l * ea;
        f1 += l * (ea - ec);
        trace_term += l * ea * s.c().trace_inverse_product(ca.matrix())?;
    }
    let log_term = match constant {
        F2Constant::TwoPi => log_norm_2pi(s.c()),
        F2Constant::TwoPiE => log_norm_2pie(s.c()),
    };
    let f2 = f1 * log_term + trace_term - d * ec;
    let scale1 = mixed.max(ec);
    let scale2 = (f1 * log_term).abs() + trace_term.abs() + d * ec;
    Ok(verdict(f1, f2, scale1, scale2))
}

fn verdict(f1: f64, f2: f64, scale1: f64, scale2: f64) -> RegionVerdict {
    let finite = f1.is_finite() && f2.is_finite() && scale1.is_finite() && scale2.is_finite();
    let in_s = finite && f1 >= -MEMBERSHIP_TOL * scale1 && f2 <= MEMBERSHIP_TOL * scale2;
    RegionVerdict { f1, f2, in_s }
}

/// Analytic gradient of Λ:
/// `K(C)·Ct·e_C − Σₐ λₐ K(Cₐ)·Cₐt·e_{Cₐ}`.
pub fn grad_lambda(s: &Scenario, t: &Vector) -> Result<Vector> {
    s.check_vector(t)?;
    let term = |a: &SpdMatrix| a.matrix().mul_vec(t).scale(log_norm_2pie(a) * tilt(a, t));
    let own = term(s.c());
    let mut g = Vector::zeros(s.dim());
    for (l, ca) in s.components() {
        g = g + (own - term(ca)).scale(l);
    }
    Ok(g)
}

/// Analytic Hessian of Λ using `∇²e_A = (A + A t tᵀ A)·e_A`.
pub fn hess_lambda(s: &Scenario, t: &Vector) -> Result<Matrix> {
    s.check_vector(t)?;
    let term = |a: &SpdMatrix| {
        let at = a.matrix().mul_vec(t);
        (*a.matrix() + at.outer(&at)).scale(log_norm_2pie(a) * tilt(a, t))
    };
    let own = term(s.c());
    let mut h = Matrix::zeros(s.dim());
    for (l, ca) in s.components() {
        h = h + (own - term(ca)).scale(l);
    }
    Ok(h)
}

/// Right-hand side of the printed stationarity equation. Equals `−∇Λ(t)`.
pub fn stationarity_printed(s: &Scenario, t: &Vector) -> Result<Vector> {
    s.check_vector(t)?;
    let d = s.dim() as f64;
    let ec = tilt(s.c(), t);
    let ct = s.c().matrix().mul_vec(t);
    let mut bracket = ct.scale(-ec);
    let mut rest = ct.scale(-s.c().log_det() * ec);
    for (l, ca) in s.components() {
        let ea = tilt(ca, t);
        let cat = ca.matrix().mul_vec(t);
        bracket = bracket + cat.scale(l * ea);
        rest = rest + cat.scale(l * ca.log_det() * ea);
    }
    Ok(bracket.scale(d * ln_two_pi_e()) + rest)
}

/// The second gradient as printed. Equals `−∇²Λ(t)`.
pub fn hess_lambda_printed(s: &Scenario, t: &Vector) -> Result<Matrix> {
    s.check_vector(t)?;
    let d = s.dim() as f64;
    let shaped = |a: &SpdMatrix| {
        let at = a.matrix().mul_vec(t);
        (*a.matrix() + at.outer(&at)).scale(tilt(a, t))
    };
    let own = shaped(s.c());
    let mut bracket = -own;
    let mut rest = own.scale(-s.c().log_det());
    for (l, ca) in s.components() {
        let m = shaped(ca);
        bracket = bracket + m.scale(l);
        rest = rest + m.scale(l * ca.log_det());
    }
    Ok(bracket.scale(d * ln_two_pi_e()) + rest)
}

/// `t − Σₐ λₐ C⁻¹Cₐ t·exp(½tᵀ(Cₐ − C)t)·K(Cₐ)/K(C)`, which vanishes exactly
/// where ∇Λ does (for K(C) ≠ 0).
pub fn fixed_point_residual(s: &Scenario, t: &Vector) -> Result<Vector> {
    fixed_point_with_denominator(s, t, log_norm_2pie(s.c()))
}

/// The printed fixed-point form, whose denominator is `d` instead of K(C).
/// Agrees with [`fixed_point_residual`] at t = 0 only.
pub fn fixed_point_residual_printed(s: &Scenario, t: &Vector) -> Result<Vector> {
    fixed_point_with_denominator(s, t, s.dim() as f64)
}

fn fixed_point_with_denominator(s: &Scenario, t: &Vector, denom: f64) -> Result<Vector> {
    s.check_vector(t)?;
    let qc = s.c().quad_unchecked(t);
    let mut rhs = Vector::zeros(s.dim());
    for (l, ca) in s.components() {
        let x = s.c().solve(&ca.matrix().mul_vec(t));
        let w = (0.5 * (ca.quad_unchecked(t) - qc)).exp() * log_norm_2pie(ca) / denom;
        rhs = rhs + x.scale(l * w);
    }
    Ok(*t - rhs)
}

/// Both conventions for the Hessian at the origin, with classification.
pub fn origin_report(s: &Scenario) -> OriginReport {
    let zero = Vector::zeros(s.dim());
    let hessian = hess_lambda(s, &zero).expect("dimension matches scenario");
    let mut paper = s.c().matrix().scale(-s.c().log_det());
    for (l, ca) in s.components() {
        paper = paper + ca.matrix().scale(l * ca.log_det());
    }
    let eigenvalues = hessian.symmetric_eigenvalues();
    let paper_sign_eigenvalues = paper.symmetric_eigenvalues();
    let scale = hessian.max_abs().max(paper.max_abs());
    let sign_relation_holds = (hessian + paper).max_abs() <= 1e-12 * scale.max(1.0);
    OriginReport {
        classification: Classification::from_eigenvalues(&eigenvalues),
        paper_sign_classification: Classification::from_eigenvalues(&paper_sign_eigenvalues),
        hessian,
        eigenvalues,
        paper_sign_hessian: paper,
        paper_sign_eigenvalues,
        sign_relation_holds,
    }
}

fn check_scalar_inputs(c1: f64, c2: f64, lambda1: f64) -> Result<()> {
    if !(c1 > 0.0 && c2 > 0.0) || !c1.is_finite() || !c2.is_finite() {
        return Err(Error::Domain(format!("c1 and c2 must be positive, got {c1}, {c2}")));
    }
    if !(0.0..=1.0).contains(&lambda1) {
        return Err(Error::Domain(format!("lambda1 must lie in [0, 1], got {lambda1}")));
    }
    Ok(())
}

/// 𝕊 membership for d = 1 in the form divided through by `exp(½ct²)`:
///
/// ```text
/// F¹/e_c = λ₁ exp[½λ₂(c₁−c₂)t²] + λ₂ exp[½λ₁(c₂−c₁)t²] − 1
/// F²/e_c = (F¹/e_c)·ln(2πc) + (λ₁c₁/c)·exp[…] + (λ₂c₂/c)·exp[…] − 1
/// ```
pub fn scalar_region_1d(c1: f64, c2: f64, lambda1: f64, t: f64) -> Result<RegionVerdict> {
    check_scalar_inputs(c1, c2, lambda1)?;
    let lambda2 = 1.0 - lambda1;
    let c = lambda1 * c1 + lambda2 * c2;
    let u1 = (0.5 * lambda2 * (c1 - c2) * t * t).exp();
    let u2 = (0.5 * lambda1 * (c2 - c1) * t * t).exp();
    let mixed = lambda1 * u1 + lambda2 * u2;
    let f1 = mixed - 1.0;
    let log_term = (2.0 * PI * c).ln();
    let trace_term = lambda1 * c1 / c * u1 + lambda2 * c2 / c * u2;
    let f2 = f1 * log_term + trace_term - 1.0;
    Ok(verdict(f1, f2, mixed.max(1.0), (f1 * log_term).abs() + trace_term.abs() + 1.0))
}

/// `Σₐ λₐ cₐ ln cₐ − c ln c`, nonnegative by convexity of x ln x. This is the
/// printed sign; the second derivative of Λ at 0 is its negative.
pub fn scalar_second_derivative_origin(c1: f64, c2: f64, lambda1: f64) -> Result<f64> {
    check_scalar_inputs(c1, c2, lambda1)?;
    let lambda2 = 1.0 - lambda1;
    let c = lambda1 * c1 + lambda2 * c2;
    Ok(lambda1 * c1 * c1.ln() + lambda2 * c2 * c2.ln() - c * c.ln())
}

/// The one-dimensional Λ(t) as displayed for d = 1. It is the negative of
/// `Σ(t) − Σ(0)`, so its curvature at 0 is the printed nonnegative value.
pub fn scalar_lambda_printed(c1: f64, c2: f64, lambda1: f64, t: f64) -> Result<f64> {
    check_scalar_inputs(c1, c2, lambda1)?;
    let lambda2 = 1.0 - lambda1;
    let c = lambda1 * c1 + lambda2 * c2;
    let e = |x: f64| (0.5 * x * t * t).exp();
    let bracket = lambda1 * e(c1) + lambda2 * e(c2) - e(c);
    let logs = lambda1 * c1.ln() * (e(c1) - 1.0) + lambda2 * c2.ln() * (e(c2) - 1.0) - c.ln() * (e(c) - 1.0);
    Ok(ln_two_pi_e() * bracket + logs)
}

/// Result of sampling `λ ↦ G(λ) = C(λ)·ln det C(λ)` along the segment.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexityProbe {
    pub convex: bool,
    /// λ at the interior grid point with the most negative second difference.
    pub worst_lambda: f64,
    /// Smallest eigenvalue of `G(λ−h) − 2G(λ) + G(λ+h)` over the grid.
    pub worst_min_eigenvalue: f64,
    /// Magnitude used for the PSD tolerance.
    pub scale: f64,
}

pub fn reduced_convexity_probe(c1: &SpdMatrix, c2: &SpdMatrix, n_lambda: usize) -> Result<bool> {
    Ok(reduced_convexity_report(c1, c2, n_lambda)?.convex)
}

/// Samples λ on a uniform grid of `n_lambda` points in [0, 1] and tests each
/// matrix second difference for positive semidefiniteness with tolerance
/// `1e-9·scale`, where scale is the largest |entry| of G on the grid.
pub fn reduced_convexity_report(c1: &SpdMatrix, c2: &SpdMatrix, n_lambda: usize) -> Result<ConvexityProbe> {
    if n_lambda < 3 {
        return Err(Error::Domain(format!("n_lambda must be ≥ 3, got {n_lambda}")));
    }
    let g: Vec<Matrix> = (0..n_lambda)
        .map(|i| {
            let l = i as f64 / (n_lambda - 1) as f64;
            convex_combine(c1, c2, l).map(|c| c.matrix().scale(c.log_det()))
        })
        .collect::<Result<_>>()?;
    let scale = g.iter().fold(0.0_f64, |m, x| m.max(x.max_abs())).max(f64::MIN_POSITIVE);
    let mut worst = (0.0, f64::INFINITY);
    for i in 1..n_lambda - 1 {
        let second = g[i - 1] - g[i].scale(2.0) + g[i + 1];
        let min_ev = second.symmetric_eigenvalues()[0];
        if min_ev < worst.1 {
            worst = (i as f64 / (n_lambda - 1) as f64, min_ev);
        }
    }
    Ok(ConvexityProbe {
        convex: worst.1 >= -1e-9 * scale,
        worst_lambda: worst.0,
        worst_min_eigenvalue: worst.1,
        scale,
    })
}
