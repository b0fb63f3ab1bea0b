//! Gauss–Hermite oracle for Gaussian integrals.
//!
//! Rules follow the probabilists' convention: the weights integrate against
//! the standard normal density, so `Σ wᵢ g(zᵢ) ≈ E[g(Z)]` with Z ~ N(0, 1).
//! A d-dimensional expectation under N(0, C) is evaluated by whitening
//! `x = L z` with the Cholesky factor and summing over the tensor grid.
//!
//! Nothing in this module uses the closed forms of [`crate::entropy`]; it is
//! the independent side of every closed-form check.

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::gaussian_log_pdf;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpdMatrix, Vector};

pub const DEFAULT_ORDER: usize = 40;
pub const DEFAULT_CHECK_ORDER: usize = 48;
/// Relative change between the two orders above which a result is flagged.
pub const CONVERGENCE_TOL: f64 = 1e-9;

const MIN_ORDER: usize = 2;
const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// One-dimensional `E[g(Z)]`, Z ~ N(0, 1).
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * g(x)).sum()
    }
}

/// Probabilists' Gauss–Hermite rule of the given order.
///
/// Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix with
/// zero diagonal and off-diagonals √k (Golub–Welsch). Each node then gets a
/// Newton polish on the orthonormal Hermite recurrence, and the weights come
/// from the Christoffel function `1 / Σₖ p̂ₖ(x)²`, which is what the squared
/// first eigenvector components approximate.
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::QuadratureOrder(order));
    }
    let n = order;
    let off: Vec<f64> = (1..n).map(|k| (k as f64).sqrt()).collect();
    let (mut nodes, _) = tridiagonal_eigen(&vec![0.0; n], &off);
    nodes.sort_by(|a, b| a.total_cmp(b));

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p_n, p_nm1, _) = hermite_orthonormal(n, *x);
            let step = p_n / ((n as f64).sqrt() * p_nm1);
            if !step.is_finite() {
                break;
            }
            *x -= step;
        }
    }
    // exact symmetry about the origin
    for i in 0..n / 2 {
        let m = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -m;
        nodes[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let weights: Vec<f64> = nodes.iter().map(|&x| 1.0 / hermite_orthonormal(n, x).2).collect();
    Ok(QuadratureRule {
        order,
        nodes,
        weights,
    })
}

/// Returns `(p̂ₙ(x), p̂ₙ₋₁(x), Σ_{k<n} p̂ₖ(x)²)` for the orthonormal
/// probabilists' Hermite polynomials.
fn hermite_orthonormal(n: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sumsq = 0.0;
    for k in 0..n {
        sumsq += cur * cur;
        let next = (x * cur - (k as f64).sqrt() * prev) / ((k + 1) as f64).sqrt();
        prev = cur;
        cur = next;
    }
    (cur, prev, sumsq)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. Returns the
/// eigenvalues and the first component of each normalized eigenvector.
fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 100, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    (d, z)
}

/// Pairwise summation; the result depends only on the order of `xs`.
fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Tensor-product sum of a vector-valued integrand `g(x, out)` with
/// `x = factor · z`. The outer axis is split across threads; partial sums are
/// combined in index order so the result is independent of scheduling.
fn tensor_expectation<G>(factor: &Matrix, rule: &QuadratureRule, n_out: usize, g: G) -> Result<Vec<f64>>
where
    G: Fn(&Vector, &mut [f64]) + Sync,
{
    let d = factor.dim();
    let n = rule.order();
    let nodes = rule.nodes();
    let weights = rule.weights();

    let partials: Vec<Result<Vec<f64>>> = (0..n)
        .into_par_iter()
        .map(|i0| {
            let inner = n.pow((d - 1) as u32);
            let mut acc = vec![0.0; n_out];
            let mut out = vec![0.0; n_out];
            let mut z = Vector::zeros(d);
            for flat in 0..inner {
                let mut w = weights[i0];
                z[0] = nodes[i0];
                let mut rest = flat;
                for axis in 1..d {
                    let k = rest % n;
                    rest /= n;
                    z[axis] = nodes[k];
                    w *= weights[k];
                }
                let x = factor.mul_vec(&z);
                g(&x, &mut out);
                for (a, &v) in acc.iter_mut().zip(&out) {
                    if !v.is_finite() {
                        return Err(Error::NonFiniteIntegrand {
                            node: x.as_slice().to_vec(),
                            value: v,
                        });
                    }
                    *a += w * v;
                }
            }
            Ok(acc)
        })
        .collect();

    let partials: Vec<Vec<f64>> = partials.into_iter().collect::<Result<_>>()?;
    Ok((0..n_out)
        .map(|k| pairwise_sum(&partials.iter().map(|p| p[k]).collect::<Vec<_>>()))
        .collect())
}

/// `E[g(X)]` for X ~ N(0, F Fᵀ), any square `factor` F.
pub fn expectation_with_factor<G>(factor: &Matrix, g: G, order: usize) -> Result<f64>
where
    G: Fn(&Vector) -> f64 + Sync,
{
    let rule = gauss_hermite(order)?;
    Ok(tensor_expectation(factor, &rule, 1, |x, out| out[0] = g(x))?[0])
}

/// `E[g(X)]` for X ~ N(0, C).
pub fn gaussian_expectation<G>(c: &SpdMatrix, g: G, order: usize) -> Result<f64>
where
    G: Fn(&Vector) -> f64 + Sync,
{
    expectation_with_factor(c.cholesky(), g, order)
}

/// `∫ exp(tᵀx) f_C(x) dx`.
pub fn alpha_numeric(c: &SpdMatrix, t: &Vector, order: usize) -> Result<f64> {
    t.check_same_dim(c.dim())?;
    let t = *t;
    gaussian_expectation(c, move |x| t.dot(x).exp(), order)
}

/// `∫ x xᵀ exp(tᵀx) f_C(x) dx`, entry by entry.
pub fn phi_numeric(c: &SpdMatrix, t: &Vector, order: usize) -> Result<Matrix> {
    t.check_same_dim(c.dim())?;
    let d = c.dim();
    let t = *t;
    let rule = gauss_hermite(order)?;
    let flat = tensor_expectation(c.cholesky(), &rule, d * d, move |x, out| {
        let w = t.dot(x).exp();
        for j in 0..d {
            for k in 0..d {
                out[j * d + k] = x[j] * x[k] * w;
            }
        }
    })?;
    let mut m = Matrix::zeros(d);
    for j in 0..d {
        for k in 0..d {
            m[(j, k)] = flat[j * d + k];
        }
    }
    Ok(m.symmetrized())
}

/// Weighted differential entropy `−∫ exp(tᵀx) f_C ln f_C dx`.
pub fn wde_numeric(c: &SpdMatrix, t: &Vector, order: usize) -> Result<f64> {
    t.check_same_dim(c.dim())?;
    let t = *t;
    let c = *c;
    gaussian_expectation(
        &c,
        move |x| -t.dot(x).exp() * gaussian_log_pdf(&c, x).unwrap_or(f64::NAN),
        order,
    )
}

/// Two-order convergence certificate for a scalar or matrix integral.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Certificate {
    pub order: usize,
    pub check_order: usize,
    pub value: f64,
    pub check_value: f64,
    pub rel_change: f64,
    pub converged: bool,
}

impl Certificate {
    fn new(order: usize, check_order: usize, value: f64, check_value: f64, rel_change: f64) -> Self {
        Self {
            order,
            check_order,
            value,
            check_value,
            rel_change,
            converged: rel_change <= CONVERGENCE_TOL,
        }
    }

    /// Turns an unconverged certificate into an error.
    pub fn require(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                order: self.order,
                check_order: self.check_order,
                value: self.value,
                check_value: self.check_value,
                rel_change: self.rel_change,
            })
        }
    }
}

fn rel_change(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

/// Evaluates a scalar integral at two orders.
pub fn certify<F>(order: usize, check_order: usize, f: F) -> Result<Certificate>
where
    F: Fn(usize) -> Result<f64>,
{
    let value = f(order)?;
    let check_value = f(check_order)?;
    Ok(Certificate::new(order, check_order, value, check_value, rel_change(value, check_value)))
}

/// Matrix version of [`certify`]; the change is measured as
/// `max|A − B| / max|B|` and `value`/`check_value` report the largest entry.
pub fn certify_matrix<F>(order: usize, check_order: usize, f: F) -> Result<(Matrix, Certificate)>
where
    F: Fn(usize) -> Result<Matrix>,
{
    let a = f(order)?;
    let b = f(check_order)?;
    let diff = (a - b).max_abs();
    let scale = b.max_abs();
    let rel = if diff == 0.0 { 0.0 } else { diff / scale.max(f64::MIN_POSITIVE) };
    Ok((a, Certificate::new(order, check_order, a.max_abs(), scale, rel)))
}

pub fn alpha_certified(c: &SpdMatrix, t: &Vector) -> Result<Certificate> {
    certify(DEFAULT_ORDER, DEFAULT_CHECK_ORDER, |n| alpha_numeric(c, t, n))
}

pub fn wde_certified(c: &SpdMatrix, t: &Vector) -> Result<Certificate> {
    certify(DEFAULT_ORDER, DEFAULT_CHECK_ORDER, |n| wde_numeric(c, t, n))
}

pub fn phi_certified(c: &SpdMatrix, t: &Vector) -> Result<(Matrix, Certificate)> {
    certify_matrix(DEFAULT_ORDER, DEFAULT_CHECK_ORDER, |n| phi_numeric(c, t, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn two_point_rule() {
        let r = gauss_hermite(2).unwrap();
        assert!((r.nodes()[0] + 1.0).abs() < 1e-15 && (r.nodes()[1] - 1.0).abs() < 1e-15);
        assert!(r.weights().iter().all(|w| (w - 0.5).abs() < 1e-15));
    }

    #[test]
    fn three_point_rule_matches_hand_eigenproblem() {
        // J = [[0,1,0],[1,0,√2],[0,√2,0]]: eigenvalues 0, ±√3 with first
        // eigenvector components² 2/3 and 1/6.
        let r = gauss_hermite(3).unwrap();
        let s3 = 3.0_f64.sqrt();
        for (got, want) in r.nodes().iter().zip([-s3, 0.0, s3]) {
            assert!((got - want).abs() < 1e-14, "{:?}", r.nodes());
        }
        for (got, want) in r.weights().iter().zip([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]) {
            assert!((got - want).abs() < 1e-14, "{:?}", r.weights());
        }
    }

    #[test]
    fn moments_for_every_order() {
        for n in 2..=64 {
            let r = gauss_hermite(n).unwrap();
            assert!((r.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12, "order {n}");
            assert!(r.integrate(|x| x).abs() < 1e-12, "order {n}");
            assert!((r.integrate(|x| x * x) - 1.0).abs() < 1e-10, "order {n}");
            assert!(r.weights().iter().all(|&w| w > 0.0));
            for i in 0..n {
                assert_eq!(r.nodes()[i], -r.nodes()[n - 1 - i]);
            }
        }
    }

    #[test]
    fn exactness_degree() {
        // E[Z^{2k}] = (2k − 1)!!, exact for 2k ≤ 2n − 1.
        let r = gauss_hermite(6).unwrap();
        let mut dfact = 1.0;
        for k in 1..=5 {
            dfact *= (2 * k - 1) as f64;
            let got = r.integrate(|x| x.powi(2 * k));
            assert!((got - dfact).abs() <= 1e-11 * dfact, "k={k}");
        }
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(gauss_hermite(1), Err(Error::QuadratureOrder(1))));
        assert!(matches!(gauss_hermite(65), Err(Error::QuadratureOrder(65))));
    }

    #[test]
    fn expectation_examples() {
        let i2 = SpdMatrix::identity(2);
        assert!((gaussian_expectation(&i2, |_| 1.0, 5).unwrap() - 1.0).abs() < 1e-14);
        assert!((gaussian_expectation(&i2, |x| x.dot(x), 2).unwrap() - 2.0).abs() < 1e-14);
        let one = SpdMatrix::scalar(1.0).unwrap();
        let v = gaussian_expectation(&one, |x| x[0].exp(), 40).unwrap();
        assert!((v - E.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn non_finite_integrand_reports_node() {
        let one = SpdMatrix::scalar(1.0).unwrap();
        let err = gaussian_expectation(&one, |x| if x[0] > 0.0 { f64::NAN } else { 0.0 }, 4).unwrap_err();
        match err {
            Error::NonFiniteIntegrand { node, .. } => assert!(node[0] > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn alpha_phi_wde_at_zero() {
        let c = SpdMatrix::from_sigma_rho(1.3, 0.4).unwrap();
        let z = Vector::zeros(2);
        assert!((alpha_numeric(&c, &z, 40).unwrap() - 1.0).abs() < 1e-12);
        assert!((phi_numeric(&c, &z, 40).unwrap() - *c.matrix()).max_abs() < 1e-8);
        let h = crate::entropy::shannon_entropy_gaussian(&c);
        assert!((wde_numeric(&c, &z, 40).unwrap() - h).abs() < 1e-8);
        let i2 = SpdMatrix::identity(2);
        let want = (2.0 * std::f64::consts::PI * E).ln();
        assert!((wde_numeric(&i2, &z, 40).unwrap() - want).abs() < 1e-8);
    }

    #[test]
    fn alpha_identity_2d() {
        let a = alpha_numeric(&SpdMatrix::identity(2), &Vector::new(&[1.0, 1.0]), 40).unwrap();
        assert!((a - E).abs() < 1e-8 * E);
    }

    #[test]
    fn phi_scalar_moment() {
        // E[x² e^{x}] for x ~ N(0,1) equals (1 + 1²)·e^{1/2}.
        let p = phi_numeric(&SpdMatrix::scalar(1.0).unwrap(), &Vector::new(&[1.0]), 40).unwrap();
        assert!((p[(0, 0)] - 2.0 * E.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn certificates() {
        let c = SpdMatrix::from_sigma_rho(1.1, -0.3).unwrap();
        let t = Vector::new(&[0.9, 0.4]);
        assert!(alpha_certified(&c, &t).unwrap().require().is_ok());
        assert!(wde_certified(&c, &t).unwrap().converged);
        assert!(phi_certified(&c, &t).unwrap().1.converged);
        // A wildly tilted weight is flagged rather than silently accepted.
        let big = Vector::new(&[12.0, 12.0]);
        let cert = certify(8, 10, |n| alpha_numeric(&c, &big, n)).unwrap();
        assert!(!cert.converged);
        assert!(matches!(cert.require(), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn deterministic_across_thread_pools() {
        let c = SpdMatrix::from_rows(&[
            vec![1.2, 0.3, 0.1],
            vec![0.3, 0.9, -0.2],
            vec![0.1, -0.2, 1.5],
        ])
        .unwrap();
        let t = Vector::new(&[0.4, -0.7, 0.2]);
        let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let a = serial.install(|| wde_numeric(&c, &t, 20).unwrap());
        let wide = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let b = wide.install(|| wde_numeric(&c, &t, 20).unwrap());
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
