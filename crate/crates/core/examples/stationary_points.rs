//! Damped Newton search for ∇Λ = 0 from the default seeds.

use wkfi::commands::bundled;
use wkfi::landscape::{default_seeds, find_stationary_points};

fn main() -> wkfi::Result<()> {
    let r = bundled("fig31a")?;
    let seeds = default_seeds(&r.grid, r.config.seed, 8);
    for p in find_stationary_points(&r.scenario, &seeds, 100)? {
        println!(
            "{:>22} -> {:?}  {:<13} converged {} in {:>2} steps, |grad| {:.1e}, residual {:.1e} (printed form {:.1e})",
            format!("{:.3?}", p.seed.as_slice()),
            p.location.as_slice().iter().map(|x| (x * 1e4).round() / 1e4).collect::<Vec<_>>(),
            p.classification.as_str(),
            p.converged,
            p.iterations,
            p.grad_norm,
            p.fixed_point_residual,
            p.fixed_point_residual_printed
        );
    }
    Ok(())
}
