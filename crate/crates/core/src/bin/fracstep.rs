use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fracstep::harness::{run_figure, run_ml, run_solve, run_table, solve_csv, RunConfig};
use fracstep::{CaputoForm, EquationClass, Error, Method};

const EXIT_USAGE: u8 = 2;
const EXIT_DIVERGENCE: u8 = 3;
const EXIT_TOLERANCE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "fracstep",
    version,
    about = "Solvers for ODEs with Caputo and Riemann-Liouville derivatives"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one configured problem and write the trajectory as CSV.
    Solve(SolveArgs),
    /// Reproduce a reference error table (1-6).
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
        /// CSV destination (default: table<ID>.csv).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 4 if any cell is outside tolerance.
        #[arg(long)]
        strict: bool,
    },
    /// Write the curves of a reference figure (2-6), one CSV per alpha.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(2..=6))]
        id: u8,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Evaluate the Mittag-Leffler function E_{alpha,beta}(z).
    Ml {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, default_value = "p2-caputo")]
    class: EquationClass,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    x0: f64,
    #[arg(long)]
    x_end: f64,
    #[arg(long, default_value_t = 0.01)]
    h: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    y0: f64,
    #[arg(long, allow_hyphen_values = true)]
    yp0: Option<f64>,
    #[arg(long, default_value = "euler")]
    method: Method,
    /// case1..case4; defaults to the method's own form.
    #[arg(long)]
    caputo_form: Option<CaputoForm>,
    /// Report point (repeatable); defaults to x-end.
    #[arg(long = "sample")]
    samples: Vec<f64>,
    #[arg(long, default_value = "solution.csv")]
    out: PathBuf,
    /// Run method/form pairs outside the documented set.
    #[arg(long)]
    allow_any_form: bool,
}

impl SolveArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            class: self.class,
            alpha: self.alpha,
            lambda: self.lambda,
            x0: self.x0,
            x_end: self.x_end,
            h: self.h,
            y0: self.y0,
            yp0: self.yp0,
            method: self.method,
            form: self.caputo_form,
            samples: self.samples.clone(),
            allow_any_form: self.allow_any_form,
        }
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::InvalidConfig(_) => ExitCode::from(EXIT_USAGE),
        Error::Divergence { .. } => ExitCode::from(EXIT_DIVERGENCE),
        _ => ExitCode::FAILURE,
    }
}

fn write(path: &Path, body: &str) -> Result<(), ExitCode> {
    fs::write(path, body).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::FAILURE
    })
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.cmd {
        Cmd::Solve(args) => {
            let out = run_solve(&args.config()).map_err(|e| fail(&e))?;
            write(&args.out, &solve_csv(&out.rows))?;
            print!("{}", out.report.render());
        }
        Cmd::Table { id, out, strict } => {
            let report = run_table(id).map_err(|e| fail(&e))?;
            let path = out.unwrap_or_else(|| PathBuf::from(format!("table{id}.csv")));
            write(&path, &report.to_csv())?;
            print!("{}", report.render());
            if strict && report.has_failures() {
                return Ok(ExitCode::from(EXIT_TOLERANCE));
            }
        }
        Cmd::Figure { id, out } => {
            let curves = run_figure(id).map_err(|e| fail(&e))?;
            fs::create_dir_all(&out).map_err(|e| {
                eprintln!("error: cannot create {}: {e}", out.display());
                ExitCode::FAILURE
            })?;
            for c in &curves {
                let path = out.join(c.file_name());
                write(&path, &c.to_csv())?;
                println!("{}", path.display());
            }
        }
        Cmd::Ml { alpha, beta, z } => {
            println!("{}", run_ml(alpha, beta, z).map_err(|e| fail(&e))?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) | Err(code) => code,
    }
}
