use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use wkfi::commands::{self, Overrides};
use wkfi::{Error, F2Constant, PhiVariant};

/// Exponentially weighted Ky Fan inequality: scans, origin classification,
/// quadrature verification and figure reproduction.
#[derive(Parser)]
#[command(name = "wkfi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Quadrature order (2..=56); the certificate uses order + 8.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_name = "paper|full")]
    phi_variant: Option<PhiVariant>,
    #[arg(long, value_name = "2pi|2pie")]
    f2_constant: Option<F2Constant>,
    /// Enlarge the window K times about the origin at fixed spacing.
    #[arg(long, value_name = "K")]
    window_scale: Option<usize>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            order: self.order,
            phi_variant: self.phi_variant,
            f2_constant: self.f2_constant,
            window_scale: self.window_scale,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write grid.csv, summary.json and lambda.svg for one scenario.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify t = 0 and cross-check the curvature by finite differences.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Compare the closed forms for α, Φ and σ against quadrature.
    OracleVerify {
        #[command(flatten)]
        common: Common,
    },
    /// Run the bundled figure scenarios and write a manifest.
    Figures {
        #[arg(long)]
        out: PathBuf,
    },
    /// One-dimensional profile, membership and origin curvature.
    #[command(name = "check-1d")]
    Check1d {
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        c2: f64,
        #[arg(long)]
        lambda1: f64,
        #[arg(long, default_value_t = 20.0)]
        t_max: f64,
        #[arg(long, default_value_t = 401)]
        n: usize,
    },
}

/// Writes a line to stdout; a closed pipe (`wkfi ... | head`) is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn print_json<T: Serialize>(value: &T) {
    out!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Scan { common, out } => {
            let (run, files) = commands::cmd_scan(&common.config, &out, &common.overrides())?;
            let s = &run.summary;
            out!("verdict: {}", s.improvement_verdict);
            out!("origin: {}", s.origin.classification);
            out!("members: {} of {}", s.s_sample_count, s.sample_count);
            out!(
                "bounded in window: {} (counts x1/x2/x4: {:?})",
                run.boundedness.bounded_in_window, run.boundedness.counts
            );
            out!("wrote {}", files.summary_json.display());
            Ok(0)
        }
        Command::Classify { common } => {
            let r = commands::cmd_classify(&common.config, &common.overrides())?;
            eprintln!(
                "origin: {} (printed sign: {}); finite differences {} with the definition, {} with the printed formula",
                r.origin.classification,
                r.origin.paper_sign_classification,
                if r.fd_agrees_with_definition { "agree" } else { "disagree" },
                r.printed_origin_formula,
            );
            print_json(&r);
            Ok(if r.fd_agrees_with_definition { 0 } else { 5 })
        }
        Command::OracleVerify { common } => {
            let r = commands::cmd_oracle_verify(&common.config, &common.overrides())?;
            eprintln!("max alpha rel. error: {:.3e}", r.max_alpha_rel_error);
            eprintln!("phi matches: {}", r.phi_matches);
            eprintln!("{}", r.phi_resolution);
            print_json(&r);
            Ok(if r.alpha_ok { 0 } else { 5 })
        }
        Command::Figures { out } => {
            let m = commands::cmd_figures(&out)?;
            for f in &m.figures {
                for (what, ok) in &f.check.checks {
                    out!("{:<8} {:<40} {}", f.name, what, if *ok { "met" } else { "NOT MET" });
                }
            }
            out!("wrote {}", out.join("manifest.json").display());
            Ok(if m.all_met { 0 } else { 5 })
        }
        Command::Check1d {
            c1,
            c2,
            lambda1,
            t_max,
            n,
        } => {
            let r = commands::cmd_check_1d(c1, c2, lambda1, t_max, n)?;
            eprintln!(
                "c = {:.7}; members {}/{}; member at ±t_max: {}; c < 1/(2π): {}",
                r.c,
                r.member_count,
                r.profile.len(),
                r.member_at_t_max,
                r.unbounded_heuristic_fires
            );
            eprintln!(
                "second derivative at 0: printed {:.7}, definition {:.7}",
                r.second_derivative_printed, r.second_derivative_definition
            );
            print_json(&r);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
