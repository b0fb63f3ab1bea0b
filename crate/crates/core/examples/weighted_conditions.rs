//! The general weighted conditions, with α and Φ taken from quadrature.

use wkfi::ekfi::{region_membership, sigma_big};
use wkfi::entropy::{wkfi_conditions, wkfi_gap, PhiVariant, WeightFunctional};
use wkfi::quadrature::{alpha_numeric, phi_numeric};
use wkfi::{Scenario, SpdMatrix, Vector};

fn main() -> wkfi::Result<()> {
    let s = Scenario::new(SpdMatrix::from_sigma_rho(1.0, 0.0)?, SpdMatrix::from_sigma_rho(1.5, 0.9)?, 0.99)?;
    for t in [[0.0, 0.0], [0.5, 0.5], [1.0, -1.0]] {
        let t = Vector::new(&t);
        let numeric = |c: &SpdMatrix| -> wkfi::Result<WeightFunctional> {
            Ok(WeightFunctional {
                alpha: alpha_numeric(c, &t, 40)?,
                phi_matrix: phi_numeric(c, &t, 40)?,
            })
        };
        let r = wkfi_conditions(&s, &numeric(s.c1())?, &numeric(s.c2())?, &numeric(s.c())?)?;
        println!(
            "t={:?}: quadrature conditions ({:.4e}, {:.4e}) satisfied {}; closed-form 𝕊 {}; 2·gap {:.6e} vs Σ {:.6e}",
            t.as_slice(),
            r.alpha_excess,
            r.second_condition,
            r.satisfied,
            region_membership(&s, &t)?.in_s,
            2.0 * wkfi_gap(&s, &t, PhiVariant::Paper)?,
            sigma_big(&s, &t)?
        );
    }
    Ok(())
}
