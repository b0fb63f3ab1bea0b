//! Which closed form for Φ reproduces `E[exp(tx) x²]` at d = 1, c = 1, t = 1.

use wkfi::commands::oracle_verify;
use wkfi::landscape::GridSpec;
use wkfi::Scenario;

fn main() -> wkfi::Result<()> {
    let s = Scenario::scalar(1.0, 1.0, 0.5)?;
    let grid = GridSpec::symmetric(1, 1.0, 3)?;
    let report = oracle_verify(&s, &grid, 40, "d1")?;
    for p in report.probes.iter().filter(|p| p.matrix == "c") {
        println!(
            "t = {:>4}: quadrature {:.7}  paper {:.7}  full-moment {:.7}",
            p.t[0],
            p.phi_numeric[(0, 0)],
            p.phi_paper[(0, 0)],
            p.phi_full_moment[(0, 0)]
        );
    }
    println!("matches: {}", report.phi_matches);
    println!("{}", report.phi_resolution);
    Ok(())
}
