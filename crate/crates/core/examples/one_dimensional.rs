//! The scalar case: profile, membership and curvature at the origin.

use wkfi::commands::cmd_check_1d;

fn main() -> wkfi::Result<()> {
    for (c1, c2, lambda) in [(1.0, 3.0, 0.5), (0.05, 0.15, 0.5), (0.02, 0.04, 0.5)] {
        let r = cmd_check_1d(c1, c2, lambda, 20.0, 401)?;
        println!(
            "c1={c1} c2={c2} lambda={lambda}: c={:.3}, members {}/{}, widest member |t|={:.2}, \
             member at ±20: {}, c<1/(2π): {}, Λ''(0) printed {:.6} / definition {:.6}",
            r.c,
            r.member_count,
            r.profile.len(),
            r.max_member_abs_t,
            r.member_at_t_max,
            r.unbounded_heuristic_fires,
            r.second_derivative_printed,
            r.second_derivative_definition
        );
    }
    Ok(())
}
