use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use unexp_cli::analyze::{analyze_text, exit, AnalyzeOptions, AppError};
use unexp_cli::report::{error_json, to_json, to_text};
use unexp_cli::verify::{run_all, Fixtures};

#[derive(Parser)]
#[command(name = "unexp", version, about = "Splitting types and unexpected hypersurfaces for point configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a points file.
    Analyze {
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = unexp_core::config::DEFAULT_COEFF_BOUND)]
        coeff_bound: u32,
        /// Highest degree measured before giving up on stabilization.
        #[arg(long)]
        degree_cap: Option<usize>,
        /// Build and certify the hypersurface from a restricted syzygy.
        #[arg(long)]
        construct: bool,
        /// Degree of the syzygy used by --construct (default: first unexpected row).
        #[arg(long)]
        syzygy_degree: Option<usize>,
        /// Write the JSON report to PATH (`-` for stdout, replacing the text report).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Recompute the splitting type on a second line (seed + 1) and compare.
        #[arg(long)]
        verify_line: bool,
        /// Pick the family member with the highest multiplicity at this point (1-based).
        #[arg(long, value_name = "INDEX")]
        fat_point: Option<usize>,
    },
    /// Run the fixture acceptance checks.
    VerifyFixtures {
        /// Directory holding p4_crystallographic.pts and p3_fermat.pts (default: built-in copies).
        #[arg(long, value_name = "DIR")]
        fixtures: Option<PathBuf>,
    },
}

fn write_output(path: &PathBuf, body: &str) -> Result<(), AppError> {
    if path.as_os_str() == "-" {
        print!("{}", body);
        Ok(())
    } else {
        std::fs::write(path, body).map_err(|e| AppError::new(exit::IO, "io", format!("{}: {}", path.display(), e)))
    }
}

fn run_analyze(points: &PathBuf, opts: &AnalyzeOptions, json: Option<&PathBuf>) -> Result<i32, AppError> {
    let text = std::fs::read_to_string(points).map_err(|e| AppError::new(exit::IO, "io", format!("{}: {}", points.display(), e)))?;
    let report = analyze_text(&text, opts)?;
    match json {
        Some(p) if p.as_os_str() == "-" => print!("{}", to_json(&report)),
        Some(p) => {
            write_output(p, &to_json(&report))?;
            print!("{}", to_text(&report));
        }
        None => print!("{}", to_text(&report)),
    }
    let agrees = report.line_verification.as_ref().map(|v| v.agrees).unwrap_or(true);
    Ok(if agrees { exit::OK } else { exit::MISMATCH })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Analyze { points, k, seed, coeff_bound, degree_cap, construct, syzygy_degree, json, verify_line, fat_point } => {
            let opts = AnalyzeOptions { k, seed, coeff_bound, degree_cap, construct, syzygy_degree, verify_line, fat_point };
            match run_analyze(&points, &opts, json.as_ref()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {}", e);
                    if let Some(p) = &json {
                        let _ = write_output(p, &error_json(&e.report()));
                    }
                    e.code
                }
            }
        }
        Command::VerifyFixtures { fixtures } => {
            let fx = match fixtures {
                Some(dir) => match Fixtures::from_dir(&dir) {
                    Ok(f) => f,
                    Err(e) => {
                        eprintln!("error: {}", e);
                        return ExitCode::from(exit::IO as u8);
                    }
                },
                None => Fixtures::embedded(),
            };
            let outcomes = run_all(&fx);
            for o in &outcomes {
                println!("{}", o.line());
            }
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
            if failed == 0 {
                exit::OK
            } else {
                exit::MISMATCH
            }
        }
    };
    ExitCode::from(code as u8)
}
