//! Random scenario generators for property checks and search seeds.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{Matrix, SpdMatrix, Vector};
use crate::Scenario;

/// Eigenvalue range used by the property suites.
pub const EIGEN_RANGE: (f64, f64) = (0.2, 3.0);

/// Haar-ish random orthogonal matrix: Gram–Schmidt on a Gaussian matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Matrix {
    loop {
        let mut cols: Vec<Vector> = Vec::with_capacity(dim);
        let mut ok = true;
        for _ in 0..dim {
            let mut raw = [0.0; 3];
            for x in raw.iter_mut().take(dim) {
                *x = rng.sample(StandardNormal);
            }
            let mut v = Vector::new(&raw[..dim]);
            for q in &cols {
                v = v - q.scale(q.dot(&v));
            }
            let n = v.norm();
            if n < 1e-8 {
                ok = false;
                break;
            }
            cols.push(v.scale(1.0 / n));
        }
        if ok {
            let rows: Vec<Vec<f64>> = (0..dim).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
            return Matrix::from_rows(&rows).expect("dimension checked by caller");
        }
    }
}

/// `Q·diag(μ)·Qᵀ` with eigenvalues μ drawn uniformly from `range`.
pub fn random_spd<R: Rng + ?Sized>(rng: &mut R, dim: usize, range: (f64, f64)) -> SpdMatrix {
    let q = random_orthogonal(rng, dim);
    let mu: Vec<f64> = (0..dim).map(|_| rng.random_range(range.0..=range.1)).collect();
    let diag = Matrix::diagonal(&mu).expect("dimension checked by caller");
    let m = q.matmul(&diag).matmul(&q.transpose()).symmetrized();
    SpdMatrix::new(m).expect("eigenvalues are bounded away from zero")
}

/// Two independent SPD matrices and λ₁ uniform on [0, 1].
pub fn random_scenario<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Scenario {
    let c1 = random_spd(rng, dim, EIGEN_RANGE);
    let c2 = random_spd(rng, dim, EIGEN_RANGE);
    Scenario::new(c1, c2, rng.random_range(0.0..=1.0)).expect("valid by construction")
}

/// Uniform direction with radius uniform on [0, r].
pub fn random_vector_in_ball<R: Rng + ?Sized>(rng: &mut R, dim: usize, r: f64) -> Vector {
    loop {
        let mut raw = [0.0; 3];
        for x in raw.iter_mut().take(dim) {
            *x = rng.sample(StandardNormal);
        }
        let v = Vector::new(&raw[..dim]);
        let n = v.norm();
        if n > 1e-12 {
            return v.scale(rng.random_range(0.0..=r) / n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orthogonal_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 1..=3 {
            let q = random_orthogonal(&mut rng, d);
            let qtq = q.transpose().matmul(&q);
            assert!((qtq - Matrix::identity(d)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn spd_eigenvalues_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            for d in 1..=3 {
                let c = random_spd(&mut rng, d, EIGEN_RANGE);
                for ev in c.eigenvalues() {
                    assert!((0.2 - 1e-9..=3.0 + 1e-9).contains(&ev), "{ev}");
                }
            }
        }
    }

    #[test]
    fn ball_radius_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            assert!(random_vector_in_ball(&mut rng, 3, 2.0).norm() <= 2.0 + 1e-12);
        }
    }
}
