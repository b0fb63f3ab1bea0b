//! 𝕊 membership along a ray, with Σ and Λ at each point.

use wkfi::ekfi::{lambda_gap, region_membership, region_membership_with, sigma_big, F2Constant};
use wkfi::{Scenario, SpdMatrix, Vector};

fn main() -> wkfi::Result<()> {
    let s = Scenario::new(SpdMatrix::from_sigma_rho(1.0, 0.0)?, SpdMatrix::from_sigma_rho(1.5, 0.9)?, 0.99)?;
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>5} {:>5}", "r", "sigma", "lambda", "F1", "F2", "in S", "2pie");
    for k in 0..=10 {
        let r = 0.2 * k as f64;
        let t = Vector::new(&[r, r]);
        let m = region_membership(&s, &t)?;
        let e = region_membership_with(&s, &t, F2Constant::TwoPiE)?;
        println!(
            "{r:>6.2} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e} {:>5} {:>5}",
            sigma_big(&s, &t)?,
            lambda_gap(&s, &t)?,
            m.f1,
            m.f2,
            m.in_s,
            e.in_s
        );
    }
    Ok(())
}
