//! `hecke`: batch certificates and reports.
//!
//! Exit status is 0 when every item is certified or out of scope, 1 when
//! some item failed, 2 on a configuration or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hecke_core::shell::{run, Command, RunConfig, CACHE_ENV};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Hecke algebra certificates, polygons, discriminants and heights")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify that T_p is semi-simple on weight-2 cusp forms of level N.
    Semisimple(Common),
    /// Hodge/Newton polygons and weak admissibility for ingested eigenform data.
    Polygon(Common),
    /// Hecke algebra discriminants.
    Discr(Common),
    /// Heights of X_0(p) and the discriminant bound chain.
    Height(Common),
}

#[derive(Args)]
struct Common {
    /// Levels: `1..100`, `11,23` or a mix.
    #[arg(long, default_value = "")]
    levels: String,
    /// Primes: ranges keep only primes.
    #[arg(long, alias = "prime", default_value = "")]
    primes: String,
    #[arg(long, default_value_t = 2)]
    weight: u64,
    /// Tab-separated eigenform data (polygon).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Relative accuracy of numeric quantities.
    #[arg(long, default_value_t = 1e-10)]
    precision: f64,
    /// Number of q-expansion coefficients (default: from --precision).
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 32)]
    gauss_order: usize,
    #[arg(long, default_value_t = 8)]
    midpoint_base: usize,
    #[arg(long, default_value_t = 6)]
    richardson_levels: usize,
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV instead of JSON (discr, height).
    #[arg(long)]
    csv: bool,
}

fn config(command: Command, c: Common) -> RunConfig {
    RunConfig {
        command,
        levels: c.levels,
        primes: c.primes,
        weight: c.weight,
        file: c.file,
        precision: c.precision,
        coeff_budget: c.budget,
        gauss_order: c.gauss_order,
        midpoint_base: c.midpoint_base,
        richardson_levels: c.richardson_levels,
        cache_dir: c.cache_dir,
        out: c.out,
        csv: c.csv,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Cmd::Semisimple(c) => config(Command::Semisimple, c),
        Cmd::Polygon(c) => config(Command::Polygon, c),
        Cmd::Discr(c) => config(Command::Discr, c),
        Cmd::Height(c) => config(Command::Height, c),
    };
    match run(&cfg) {
        Ok(out) => {
            if cfg.out.is_none() {
                print!("{}", out.text);
            }
            let s = &out.report.summary;
            eprintln!(
                "{} items: {} certified, {} failed, {} out of scope, {} errors",
                s.total, s.certified, s.failed, s.out_of_scope, s.errors
            );
            if out.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("hecke: {e}");
            ExitCode::from(2)
        }
    }
}
