//! Scan a bundled scenario and write grid.csv, summary.json and lambda.svg.
//!
//! `cargo run --example scan_figure -- fig32 out/fig32`

use std::path::PathBuf;

use wkfi::commands::{bundled, run_scenario, write_scan_outputs};

fn main() -> wkfi::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "fig32".into());
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join(format!("wkfi-{name}")));
    let run = run_scenario(bundled(&name)?)?;
    let files = write_scan_outputs(&run, &out, None)?;
    let s = &run.summary;
    println!("{name}: {} of {} grid points in S", s.s_sample_count, s.sample_count);
    println!("verdict {}, origin {}", s.improvement_verdict, s.origin.classification);
    println!("Lambda range on window [{:.4e}, {:.4e}]", s.min_lambda, s.max_lambda);
    println!("members under x1/x2/x4 windows {:?}", run.boundedness.counts);
    println!("wrote {}", files.grid_csv.parent().unwrap().display());
    Ok(())
}
