//! Gauss–Hermite rules and certified Gaussian expectations.

use wkfi::entropy::{alpha_exp, phi_matrix_exp, sigma_weighted, PhiVariant};
use wkfi::quadrature::{alpha_certified, gauss_hermite, phi_certified, wde_certified};
use wkfi::{SpdMatrix, Vector};

fn main() -> wkfi::Result<()> {
    let rule = gauss_hermite(5)?;
    println!("order 5 nodes   {:?}", rule.nodes());
    println!("order 5 weights {:?}", rule.weights());
    println!("E[x^4] under N(0,1) = {}", rule.integrate(|x| x.powi(4)));

    let c = SpdMatrix::from_sigma_rho(1.2, 0.4)?;
    let t = Vector::new(&[0.7, -0.3]);
    let a = alpha_certified(&c, &t)?.require()?;
    println!("alpha: closed {:.15}  quadrature {:.15}  (rel. change {:.1e})", alpha_exp(&c, &t)?, a.value, a.rel_change);

    let (phi, cert) = phi_certified(&c, &t)?;
    for variant in [PhiVariant::Paper, PhiVariant::FullMoment] {
        let w = phi_matrix_exp(&c, &t, variant)?;
        println!("{variant:?}: max |closed − quadrature| = {:.3e}", (w.phi_matrix - phi).max_abs());
    }
    println!("phi certificate converged: {}", cert.converged);

    let wde = wde_certified(&c, &t)?;
    let full = sigma_weighted(&c, &phi_matrix_exp(&c, &t, PhiVariant::FullMoment)?)?;
    println!("weighted entropy: quadrature {:.12}  full-moment closed form {:.12}", wde.value, full);
    Ok(())
}
