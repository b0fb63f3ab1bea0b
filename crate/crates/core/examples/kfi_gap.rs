//! Gaussian entropies and the Ky Fan gap `ln det C − Σ λₐ ln det Cₐ`.

use wkfi::entropy::{kfi_gap, shannon_entropy_gaussian, wkfi_gap_unit};
use wkfi::{Scenario, SpdMatrix};

fn main() -> wkfi::Result<()> {
    let c1 = SpdMatrix::from_sigma_rho(1.0, 0.0)?;
    let c2 = SpdMatrix::from_sigma_rho(1.5, 0.9)?;
    for lambda in [0.0, 0.25, 0.5, 0.75, 0.99, 1.0] {
        let s = Scenario::new(c1, c2, lambda)?;
        println!(
            "lambda {lambda:<5} h(C) = {:.6}  gap = {:.6e}  entropy gap = {:.6e}",
            shannon_entropy_gaussian(s.c()),
            kfi_gap(&s),
            wkfi_gap_unit(&s)?
        );
    }
    let scalar = Scenario::scalar(1.0, 3.0, 0.5)?;
    println!("d = 1, c = (1, 3), lambda = 1/2: gap = {:.7}", kfi_gap(&scalar));
    Ok(())
}
