//! `incidence`: build incidence bialgebras of small categories and verify
//! their axioms exactly.
//!
//! Exit codes: 0 when every selected check passes, 1 when a check fails,
//! 2 for usage, config and literal errors.

mod config;
mod demo;
mod driver;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::config::{load, Loaded};
use crate::demo::Demo;
use crate::driver::Suite;

const PRESETS: &[(&str, &str)] = &[
    ("monex", include_str!("../configs/monex.toml")),
    ("skew", include_str!("../configs/skew.toml")),
    ("forest", include_str!("../configs/forest.toml")),
    ("bigraph", include_str!("../configs/bigraph.toml")),
    ("quiver", include_str!("../configs/quiver.toml")),
    ("quiver-discrete", include_str!("../configs/quiver-discrete.toml")),
    ("xmod-s3", include_str!("../configs/xmod-s3.toml")),
    ("normal-s3", include_str!("../configs/normal-s3.toml")),
    ("aut-s3", include_str!("../configs/aut-s3.toml")),
];

#[derive(Parser)]
#[command(name = "incidence", version, about = "Exact incidence bialgebra construction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites on an instance
    Verify {
        /// Config file, or the name of a built-in preset
        config: String,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Fragment bound (word length, vertices, steps); overrides the config
        #[arg(long)]
        max_size: Option<usize>,
        /// Recorded in the report; every suite is exhaustive on its fragment
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write a JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the coproduct of a morphism
    Coproduct {
        config: String,
        #[arg(long)]
        morphism: String,
    },
    /// Print the antipode of a morphism
    Antipode {
        config: String,
        #[arg(long)]
        morphism: String,
    },
    /// Replay a worked example
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
    /// List the built-in presets
    Presets,
}

enum Failure {
    Checks,
    Usage(String),
}

fn load_instance(arg: &str) -> Result<Loaded, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))?
    } else if let Some((_, text)) = PRESETS.iter().find(|(name, _)| *name == arg) {
        text.to_string()
    } else {
        return Err(Failure::Usage(format!(
            "{arg} is neither a config file nor a preset (see `incidence presets`)"
        )));
    };
    load(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { config, suite, max_size, seed, out } => {
            if max_size == Some(0) {
                return Err(Failure::Usage("--max-size must be positive".into()));
            }
            let loaded = load_instance(&config)?;
            let start = Instant::now();
            let v = driver::verify(&loaded, suite, max_size).map_err(|e| Failure::Usage(e.0))?;
            let elapsed = start.elapsed();
            let passed = v.reports.iter().all(|r| r.passed());
            println!("instance: {} ({})", loaded.kind, config);
            println!("fragment: {} ({} morphisms)", v.description, v.fragment_morphisms);
            println!("scale: {}", v.scale);
            println!("seed: {seed} (all checks are exhaustive on the fragment)");
            for r in &v.reports {
                println!();
                println!("{r}");
            }
            println!();
            println!("overall: {}", if passed { "PASS" } else { "FAIL" });
            if let Some(path) = out {
                let doc = json!({
                    "instance": loaded.kind,
                    "config": config,
                    "suite": suite.name(),
                    "max_size": v.size,
                    "seed": seed,
                    "scale": v.scale.to_string(),
                    "fragment": v.description,
                    "fragment_morphisms": v.fragment_morphisms,
                    "passed": passed,
                    "elapsed_ms": elapsed.as_millis() as u64,
                    "reports": v.reports,
                });
                let text = serde_json::to_string_pretty(&doc).expect("reports serialize");
                std::fs::write(&path, text + "\n")
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            if passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Coproduct { config, morphism } => {
            let loaded = load_instance(&config)?;
            let text = driver::coproduct(&loaded, &morphism).map_err(|e| Failure::Usage(e.0))?;
            println!("{text}");
            Ok(())
        }
        Command::Antipode { config, morphism } => {
            let loaded = load_instance(&config)?;
            let text = driver::antipode_of(&loaded, &morphism).map_err(|e| Failure::Usage(e.0))?;
            println!("{text}");
            Ok(())
        }
        Command::Demo { name } => {
            let text = demo::run(name).map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{text}");
            Ok(())
        }
        Command::Presets => {
            for (name, text) in PRESETS {
                let summary = text.lines().next().unwrap_or("").trim_start_matches("# ");
                println!("{name:16} {summary}");
            }
            Ok(())
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
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
