//! Grid scans of Λ and 𝕊, stationary points, and per-scenario summaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ekfi::{
    fixed_point_residual, fixed_point_residual_printed, grad_lambda, hess_lambda, lambda_gap, log_norm_2pie,
    origin_report, region_membership_with, sigma_big, Classification, F2Constant, OriginReport,
};
use crate::error::{Error, Result};
use crate::linalg::{Vector, MAX_DIM};
use crate::Scenario;

/// Largest number of grid points a single scan may visit.
pub const MAX_GRID_POINTS: u64 = 10_000_000;

/// Λ values within this distance of zero are treated as neither gain nor loss.
pub const VERDICT_TOL: f64 = 1e-10;

/// Locations closer than this are reported as one stationary point.
pub const DEDUP_DISTANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    /// Coordinate `i` of `count`; endpoints are exact, and a symmetric axis
    /// with odd count has an exact zero in the middle.
    pub fn value(&self, i: usize) -> f64 {
        let n = self.count;
        if i == 0 {
            return self.min;
        }
        if i + 1 == n {
            return self.max;
        }
        if self.min == -self.max && 2 * i + 1 == n {
            return 0.0;
        }
        let x = self.min + (self.max - self.min) * i as f64 / (n - 1) as f64;
        match self.zero_index() {
            Some(z) if z == i => 0.0,
            _ => x,
        }
    }

    /// Index snapped to exactly zero when the range straddles the origin.
    fn zero_index(&self) -> Option<usize> {
        if self.min > 0.0 || self.max < 0.0 {
            return None;
        }
        let pos = -self.min / (self.max - self.min) * (self.count - 1) as f64;
        Some(pos.round() as usize)
    }
}

/// Rectangular sampling window with per-axis resolution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    axes: Vec<Axis>,
}

impl GridSpec {
    /// Validates ranges and the point-count guard. An even count on a
    /// symmetric axis is bumped by one so that t = 0 is a grid point.
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_DIM {
            return Err(Error::Domain(format!("grid needs 1..={MAX_DIM} axes, got {}", axes.len())));
        }
        let mut fixed = Vec::with_capacity(axes.len());
        for (k, mut a) in axes.into_iter().enumerate() {
            if !(a.min.is_finite() && a.max.is_finite() && a.min < a.max) {
                return Err(Error::Domain(format!("axis {k}: need finite min < max, got [{}, {}]", a.min, a.max)));
            }
            if a.count < 3 {
                return Err(Error::Domain(format!("axis {k}: count must be ≥ 3, got {}", a.count)));
            }
            if a.min == -a.max && a.count % 2 == 0 {
                a.count += 1;
            }
            fixed.push(a);
        }
        let required = fixed
            .iter()
            .fold(1u64, |acc, a| acc.saturating_mul(a.count as u64));
        if required > MAX_GRID_POINTS {
            return Err(Error::GridGuard {
                required,
                allowed: MAX_GRID_POINTS,
            });
        }
        Ok(Self { axes: fixed })
    }

    /// Symmetric square window `[−w, w]ᵈ` with `count` points per axis.
    pub fn symmetric(dim: usize, half_width: f64, count: usize) -> Result<Self> {
        Self::new(vec![
            Axis {
                min: -half_width,
                max: half_width,
                count,
            };
            dim
        ])
    }

    /// Window scaled by `k` about the origin with the spacing kept fixed.
    pub fn scaled(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("window scale must be ≥ 1".into()));
        }
        let kf = k as f64;
        Self::new(
            self.axes
                .iter()
                .map(|a| Axis {
                    min: a.min * kf,
                    max: a.max * kf,
                    count: (a.count - 1) * k + 1,
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid point at row-major `index` (last axis varies fastest).
    pub fn point(&self, index: usize) -> Vector {
        let mut raw = [0.0; MAX_DIM];
        let mut rest = index;
        for (k, a) in self.axes.iter().enumerate().rev() {
            raw[k] = a.value(rest % a.count);
            rest /= a.count;
        }
        Vector::new(&raw[..self.dim()])
    }

    /// The 2ᵈ corners of the window.
    pub fn corners(&self) -> Vec<Vector> {
        let d = self.dim();
        (0..1usize << d)
            .map(|mask| {
                let raw: Vec<f64> = (0..d)
                    .map(|k| if mask >> k & 1 == 1 { self.axes[k].max } else { self.axes[k].min })
                    .collect();
                Vector::new(&raw)
            })
            .collect()
    }

    fn contains(&self, t: &Vector) -> bool {
        self.axes.iter().enumerate().all(|(k, a)| a.min <= t[k] && t[k] <= a.max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandscapeSample {
    pub t: Vector,
    pub sigma: f64,
    pub lambda: f64,
    pub f1: f64,
    pub f2: f64,
    pub in_s: bool,
}

fn check_grid(s: &Scenario, grid: &GridSpec) -> Result<()> {
    if grid.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: grid.dim(),
        });
    }
    Ok(())
}

fn sample_at(s: &Scenario, t: Vector, sigma0: f64, constant: F2Constant) -> LandscapeSample {
    let sigma = sigma_big(s, &t).expect("dimension checked");
    let r = region_membership_with(s, &t, constant).expect("dimension checked");
    LandscapeSample {
        t,
        sigma,
        lambda: sigma - sigma0,
        f1: r.f1,
        f2: r.f2,
        in_s: r.in_s,
    }
}

/// Every grid point in row-major order. Parallel, with output order and
/// values independent of the thread count.
pub fn scan(s: &Scenario, grid: &GridSpec, constant: F2Constant) -> Result<Vec<LandscapeSample>> {
    check_grid(s, grid)?;
    let sigma0 = sigma_big(s, &Vector::zeros(s.dim()))?;
    Ok((0..grid.len())
        .into_par_iter()
        .map(|i| sample_at(s, grid.point(i), sigma0, constant))
        .collect())
}

/// Number of 𝕊-members on the grid, without keeping samples.
pub fn count_members(s: &Scenario, grid: &GridSpec, constant: F2Constant) -> Result<u64> {
    check_grid(s, grid)?;
    Ok((0..grid.len())
        .into_par_iter()
        .filter(|&i| {
            region_membership_with(s, &grid.point(i), constant)
                .expect("dimension checked")
                .in_s
        })
        .count() as u64)
}

/// Membership counts as the window grows ×1, ×2, ×4 at fixed spacing.
#[derive(Debug, Clone, Serialize)]
pub struct BoundednessReport {
    pub counts: [u64; 3],
    /// The ×2 window adds no members. A statement about the windows scanned,
    /// not about 𝕊 itself.
    pub bounded_in_window: bool,
}

pub fn boundedness(s: &Scenario, grid: &GridSpec, constant: F2Constant) -> Result<BoundednessReport> {
    let counts = [
        count_members(s, grid, constant)?,
        count_members(s, &grid.scaled(2)?, constant)?,
        count_members(s, &grid.scaled(4)?, constant)?,
    ];
    Ok(BoundednessReport {
        bounded_in_window: counts[1] == counts[0],
        counts,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPointReport {
    pub seed: Vector,
    pub location: Vector,
    pub lambda: f64,
    pub grad_norm: f64,
    pub eigenvalues: Vec<f64>,
    pub classification: Classification,
    pub converged: bool,
    pub iterations: usize,
    /// Norm of the K(C)-normalized fixed-point residual at `location`.
    pub fixed_point_residual: f64,
    /// Same with the printed denominator d.
    pub fixed_point_residual_printed: f64,
}

/// Sum of the magnitudes of the terms making up Σ(t); the convergence test
/// is relative to it.
fn sigma_scale(s: &Scenario, t: &Vector) -> f64 {
    let tilt = |a: &crate::SpdMatrix| (0.5 * a.quad_form(t).unwrap_or(f64::INFINITY)).exp();
    let mut total = log_norm_2pie(s.c()).abs() * tilt(s.c());
    for (l, ca) in s.components() {
        total += l * log_norm_2pie(ca).abs() * tilt(ca);
    }
    total
}

fn grad_tolerance(s: &Scenario, t: &Vector) -> f64 {
    1e-10 * (1.0 + sigma_scale(s, t))
}

fn newton(s: &Scenario, seed: Vector, max_iter: usize) -> CriticalPointReport {
    let mut x = seed;
    let mut g = grad_lambda(s, &x).expect("dimension checked");
    let mut iterations = 0;
    let mut converged = g.norm() <= grad_tolerance(s, &x);
    while !converged && iterations < max_iter {
        iterations += 1;
        let h = hess_lambda(s, &x).expect("dimension checked");
        let Some(step) = h.solve(&-g) else { break };
        let g_norm = g.norm();
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..=30 {
            let candidate = x + step.scale(alpha);
            let gc = grad_lambda(s, &candidate).expect("dimension checked");
            if candidate.is_finite() && gc.is_finite() && gc.norm() < g_norm {
                accepted = Some((candidate, gc));
                break;
            }
            alpha *= 0.5;
        }
        let Some((xn, gn)) = accepted else { break };
        x = xn;
        g = gn;
        converged = g.norm() <= grad_tolerance(s, &x);
    }
    let h = hess_lambda(s, &x).expect("dimension checked");
    let eigenvalues = h.symmetric_eigenvalues();
    CriticalPointReport {
        seed,
        location: x,
        lambda: lambda_gap(s, &x).expect("dimension checked"),
        grad_norm: g.norm(),
        classification: Classification::from_eigenvalues(&eigenvalues),
        eigenvalues,
        converged,
        iterations,
        fixed_point_residual: fixed_point_residual(s, &x).expect("dimension checked").norm(),
        fixed_point_residual_printed: fixed_point_residual_printed(s, &x).expect("dimension checked").norm(),
    }
}

/// Damped Newton on ∇Λ = 0 from each seed, origin first. Converged points
/// within [`DEDUP_DISTANCE`] of an earlier converged point are dropped.
pub fn find_stationary_points(s: &Scenario, seeds: &[Vector], max_iter: usize) -> Result<Vec<CriticalPointReport>> {
    if max_iter == 0 {
        return Err(Error::Domain("max_iter must be ≥ 1".into()));
    }
    let origin = Vector::zeros(s.dim());
    let mut all = vec![origin];
    for seed in seeds {
        s.check_vector(seed)?;
        if !seed.is_finite() {
            return Err(Error::Domain(format!("seed {:?} is not finite", seed.as_slice())));
        }
        if !seed.is_zero() {
            all.push(*seed);
        }
    }
    let reports: Vec<CriticalPointReport> = all.par_iter().map(|&seed| newton(s, seed, max_iter)).collect();
    let mut kept: Vec<CriticalPointReport> = Vec::new();
    for r in reports {
        let duplicate = r.converged
            && kept
                .iter()
                .any(|k| k.converged && (k.location - r.location).norm() < DEDUP_DISTANCE);
        if !duplicate {
            kept.push(r);
        }
    }
    Ok(kept)
}

/// Origin, window corners and `n_random` uniform interior points.
pub fn default_seeds(grid: &GridSpec, rng_seed: u64, n_random: usize) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut seeds = vec![Vector::zeros(grid.dim())];
    seeds.extend(grid.corners());
    for _ in 0..n_random {
        let raw: Vec<f64> = grid.axes().iter().map(|a| rng.random_range(a.min..a.max)).collect();
        seeds.push(Vector::new(&raw));
    }
    seeds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Improvement,
    Deterioration,
    Mixed,
    Vacuous,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Improvement => "improvement",
            Verdict::Deterioration => "deterioration",
            Verdict::Mixed => "mixed",
            Verdict::Vacuous => "vacuous",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioSummary {
    pub sample_count: usize,
    /// No member other than the origin.
    pub s_empty_in_window: bool,
    pub s_sample_count: usize,
    pub min_lambda_on_s: Option<f64>,
    pub max_lambda_on_s: Option<f64>,
    pub min_sigma_on_s: Option<f64>,
    /// Members with Σ(t) < −1e-10, which the sufficient condition forbids.
    pub theorem_violations: usize,
    pub improvement_verdict: Verdict,
    pub origin: OriginReport,
    pub min_lambda: f64,
    pub max_lambda: f64,
}

pub fn summarize(s: &Scenario, samples: &[LandscapeSample]) -> Result<ScenarioSummary> {
    if samples.is_empty() {
        return Err(Error::Domain("cannot summarize an empty sample set".into()));
    }
    let members: Vec<&LandscapeSample> = samples.iter().filter(|x| x.in_s).collect();
    let off_origin: Vec<&&LandscapeSample> = members.iter().filter(|x| !x.t.is_zero()).collect();
    let fold = |it: &mut dyn Iterator<Item = f64>, f: fn(f64, f64) -> f64| it.reduce(f);
    let min_l = fold(&mut members.iter().map(|x| x.lambda), f64::min);
    let max_l = fold(&mut members.iter().map(|x| x.lambda), f64::max);
    let min_sigma = fold(&mut members.iter().map(|x| x.sigma), f64::min);
    let max_off = fold(&mut off_origin.iter().map(|x| x.lambda), f64::max);
    let verdict = if off_origin.is_empty() {
        Verdict::Vacuous
    } else if min_l.unwrap() >= -VERDICT_TOL && max_l.unwrap() > VERDICT_TOL {
        Verdict::Improvement
    } else if max_off.unwrap() <= -VERDICT_TOL {
        Verdict::Deterioration
    } else {
        Verdict::Mixed
    };
    Ok(ScenarioSummary {
        sample_count: samples.len(),
        s_empty_in_window: off_origin.is_empty(),
        s_sample_count: members.len(),
        min_lambda_on_s: min_l,
        max_lambda_on_s: max_l,
        min_sigma_on_s: min_sigma,
        theorem_violations: members.iter().filter(|x| x.sigma < -VERDICT_TOL).count(),
        improvement_verdict: verdict,
        origin: origin_report(s),
        min_lambda: samples.iter().map(|x| x.lambda).fold(f64::INFINITY, f64::min),
        max_lambda: samples.iter().map(|x| x.lambda).fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Stationary points restricted to those whose location lies in the window.
pub fn in_window<'a>(grid: &GridSpec, reports: &'a [CriticalPointReport]) -> Vec<&'a CriticalPointReport> {
    reports.iter().filter(|r| grid.contains(&r.location)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SpdMatrix;

    fn sr(sigma: f64, rho: f64) -> SpdMatrix {
        SpdMatrix::from_sigma_rho(sigma, rho).unwrap()
    }

    #[test]
    fn grid_validation() {
        let axis = |min, max, count| Axis { min, max, count };
        assert!(GridSpec::new(vec![axis(1.0, 1.0, 5)]).is_err());
        assert!(GridSpec::new(vec![axis(0.0, 1.0, 2)]).is_err());
        assert!(GridSpec::new(vec![]).is_err());
        let g = GridSpec::new(vec![axis(-1.0, 1.0, 4)]).unwrap();
        assert_eq!(g.axes()[0].count, 5);
        match GridSpec::new(vec![axis(-1.0, 1.0, 10_001); 2]) {
            Err(Error::GridGuard { required, allowed }) => {
                assert_eq!(required, 10_001 * 10_001);
                assert_eq!(allowed, MAX_GRID_POINTS);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grid_contains_exact_zero() {
        for (min, max, count) in [(-2.0, 2.0, 101), (-0.3, 0.7, 11), (-1.1, 3.7, 37)] {
            let a = Axis { min, max, count };
            assert!((0..count).any(|i| a.value(i) == 0.0), "{a:?}");
        }
        assert!((0..7).all(|i| Axis { min: 0.5, max: 1.5, count: 7 }.value(i) != 0.0));
    }

    #[test]
    fn scaled_keeps_spacing() {
        let g = GridSpec::symmetric(2, 1.0, 11).unwrap();
        let g2 = g.scaled(2).unwrap();
        assert_eq!(g2.axes()[0].count, 21);
        assert_eq!(g2.axes()[0].max, 2.0);
    }

    #[test]
    fn row_major_ordering() {
        let g = GridSpec::new(vec![
            Axis { min: 0.0, max: 1.0, count: 3 },
            Axis { min: 0.0, max: 2.0, count: 3 },
        ])
        .unwrap();
        assert_eq!(g.point(0).as_slice(), &[0.0, 0.0]);
        assert_eq!(g.point(1).as_slice(), &[0.0, 1.0]);
        assert_eq!(g.point(3).as_slice(), &[0.5, 0.0]);
    }

    #[test]
    fn equal_matrices_scan_flat() {
        let s = Scenario::new(sr(0.8, 0.3), sr(0.8, 0.3), 0.4).unwrap();
        let grid = GridSpec::symmetric(2, 1.5, 9).unwrap();
        let samples = scan(&s, &grid, F2Constant::TwoPi).unwrap();
        assert!(samples.iter().all(|x| x.lambda.abs() < 1e-12 && x.in_s));
        let summary = summarize(&s, &samples).unwrap();
        assert_eq!(summary.improvement_verdict, Verdict::Mixed);
    }

    #[test]
    fn origin_sample_anchored() {
        let s = Scenario::new(sr(1.0, 0.0), sr(1.5, 0.9), 0.99).unwrap();
        let grid = GridSpec::symmetric(2, 2.0, 21).unwrap();
        let samples = scan(&s, &grid, F2Constant::TwoPi).unwrap();
        let o = samples.iter().find(|x| x.t.is_zero()).unwrap();
        assert_eq!(o.lambda, 0.0);
        assert!(o.in_s);
        let sigma0 = sigma_big(&s, &Vector::zeros(2)).unwrap();
        for x in &samples {
            assert!((x.lambda - (x.sigma - sigma0)).abs() <= 1e-12 * (1.0 + x.sigma.abs()));
        }
    }

    #[test]
    fn scan_rejects_wrong_dimension() {
        let s = Scenario::scalar(1.0, 2.0, 0.5).unwrap();
        let grid = GridSpec::symmetric(2, 1.0, 5).unwrap();
        assert!(matches!(scan(&s, &grid, F2Constant::TwoPi), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn newton_from_origin() {
        let s = Scenario::new(sr(0.5, -0.9), sr(0.8, 0.5), 0.5).unwrap();
        let r = find_stationary_points(&s, &[], 50).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].converged);
        assert_eq!(r[0].iterations, 0);
        assert_eq!(r[0].grad_norm, 0.0);
        assert_eq!(r[0].classification, Classification::Saddle);
    }

    #[test]
    fn equal_matrices_degenerate_everywhere() {
        let s = Scenario::new(sr(1.2, 0.4), sr(1.2, 0.4), 0.3).unwrap();
        let seeds = [Vector::new(&[0.5, 0.5]), Vector::new(&[-1.0, 0.2])];
        let r = find_stationary_points(&s, &seeds, 20).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|x| x.classification == Classification::Degenerate));
    }

    #[test]
    fn converged_points_satisfy_fixed_point_form() {
        let s = Scenario::new(sr(0.5, -0.9), sr(0.8, 0.5), 0.5).unwrap();
        let grid = GridSpec::symmetric(2, 2.0, 11).unwrap();
        let r = find_stationary_points(&s, &default_seeds(&grid, 7, 8), 100).unwrap();
        for x in r.iter().filter(|x| x.converged) {
            assert!(x.fixed_point_residual <= 1e-8, "{x:?}");
        }
    }

    #[test]
    fn summarize_rejects_empty() {
        let s = Scenario::scalar(1.0, 2.0, 0.5).unwrap();
        assert!(summarize(&s, &[]).is_err());
    }

    #[test]
    fn default_seed_layout() {
        let grid = GridSpec::symmetric(2, 1.0, 5).unwrap();
        let seeds = default_seeds(&grid, 3, 8);
        assert_eq!(seeds.len(), 1 + 4 + 8);
        assert!(seeds[0].is_zero());
        assert_eq!(seeds, default_seeds(&grid, 3, 8));
    }
}
