//! Curvature of Λ at t = 0 under both sign conventions.

use wkfi::commands::classify;
use wkfi::{Scenario, SpdMatrix};

fn main() -> wkfi::Result<()> {
    let cases = [
        ("d=1, c=(1,3)", Scenario::scalar(1.0, 3.0, 0.5)?),
        (
            "mixed correlations",
            Scenario::new(SpdMatrix::from_sigma_rho(0.5, -0.9)?, SpdMatrix::from_sigma_rho(0.8, 0.5)?, 0.5)?,
        ),
        (
            "equal matrices",
            Scenario::new(SpdMatrix::from_sigma_rho(0.8, 0.5)?, SpdMatrix::from_sigma_rho(0.8, 0.5)?, 0.3)?,
        ),
    ];
    for (name, s) in cases {
        let r = classify(&s, name)?;
        println!("{name}");
        println!("  eigenvalues {:?} -> {}", r.origin.eigenvalues, r.origin.classification);
        println!(
            "  printed sign {:?} -> {}",
            r.origin.paper_sign_eigenvalues, r.origin.paper_sign_classification
        );
        println!(
            "  finite differences: rel. error {:.2e} vs definition, printed formula {}",
            r.fd_rel_error, r.printed_origin_formula
        );
    }
    Ok(())
}
