use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use galconf::configuration::Configuration;
use galconf::cover::cover_report;
use galconf::decode::{decode, separation_certificate};
use galconf::io::{configuration_from_json, configuration_to_json, to_json};
use galconf::pipeline::{build_configuration, PipelineConfig, DEFAULT_PRECISION};
use galconf::render::render;
use galconf::Error;

#[derive(Parser)]
#[command(name = "galconf", version, about = "Encode algebraic numbers as point-line configurations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct PolyArgs {
    /// Integer polynomial in x, e.g. "x^3 - 2".
    #[arg(short, long)]
    poly: String,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    seed: i64,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: f64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the configuration for a polynomial and write it as JSON.
    Build {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decode a configuration file back to a field element.
    Decode { file: PathBuf },
    /// Write the separation certificate for a polynomial.
    Certify {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the branched-cover report for a configuration file.
    Cover {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Draw a configuration file as SVG under one embedding.
    Render {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        embedding: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Pipeline(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Pipeline(e)
    }
}

fn pipeline_config(a: &PolyArgs) -> Result<PipelineConfig, Failure> {
    Ok(PipelineConfig::parse(&a.poly)?.with_seed(a.seed).with_precision(a.precision))
}

fn load(path: &Path) -> Result<Configuration, Failure> {
    let s = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(configuration_from_json(&s)?)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, content).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Build { poly, out } => {
            let c = build_configuration(&pipeline_config(&poly)?)?;
            emit(&out, &configuration_to_json(&c))?;
            if out.is_some() {
                eprintln!("{} lines, {} points", c.line_count(), c.points().len());
            }
        }
        Cmd::Decode { file } => {
            let c = load(&file)?;
            let w = decode(&c)?;
            let coeffs: Vec<String> = w.coeffs().iter().map(|q| q.to_string()).collect();
            println!("[{}]", coeffs.join(", "));
            if w == c.field().gen() {
                println!("gen of {}", c.field().modulus());
            } else {
                println!("{w} in Q[x]/({}), not the generator", c.field().modulus());
            }
        }
        Cmd::Certify { poly, out } => {
            let cert = separation_certificate(&pipeline_config(&poly)?)?;
            emit(&out, &to_json(&cert))?;
            if out.is_some() {
                println!("{cert}");
            }
        }
        Cmd::Cover { file, out } => {
            let c = load(&file)?;
            emit(&out, &to_json(&cover_report(&c, None)?))?;
        }
        Cmd::Render { file, embedding, precision, out } => {
            let c = load(&file)?;
            let r = render(&c, embedding, precision)?;
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            emit(&out, &r.svg)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Pipeline(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
