//! Is λ ↦ C(λ)·ln det C(λ) matrix-convex on a segment?

use wkfi::ekfi::reduced_convexity_report;
use wkfi::SpdMatrix;

fn main() -> wkfi::Result<()> {
    let pairs = [
        ("scalar multiples", SpdMatrix::identity(2), SpdMatrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 3.0]])?),
        ("identity vs correlated", SpdMatrix::identity(2), SpdMatrix::from_sigma_rho(1.0, 0.9)?),
        ("two correlated", SpdMatrix::from_sigma_rho(0.7, -0.5)?, SpdMatrix::from_sigma_rho(1.4, 0.6)?),
    ];
    for (name, a, b) in pairs {
        let r = reduced_convexity_report(&a, &b, 41)?;
        println!(
            "{name:<24} convex {:<5} worst lambda {:.3}, smallest eigenvalue of second difference {:.3e}",
            r.convex, r.worst_lambda, r.worst_min_eigenvalue
        );
    }
    Ok(())
}
