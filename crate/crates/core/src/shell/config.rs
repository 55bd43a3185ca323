use std::path::PathBuf;

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::heights::HeightOptions;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "HECKE_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Semisimple,
    Polygon,
    Discr,
    Height,
}

/// Everything a run depends on. Copied verbatim into every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// Level list as given, e.g. `1..100` or `11,23,37`.
    pub levels: String,
    /// Prime list as given; ranges keep only primes.
    pub primes: String,
    pub weight: u64,
    pub file: Option<PathBuf>,
    /// Relative accuracy of numeric quantities.
    pub precision: f64,
    pub coeff_budget: Option<usize>,
    pub gauss_order: usize,
    pub midpoint_base: usize,
    pub richardson_levels: usize,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub csv: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let h = HeightOptions::default();
        RunConfig {
            command,
            levels: String::new(),
            primes: String::new(),
            weight: 2,
            file: None,
            precision: h.tolerance,
            coeff_budget: None,
            gauss_order: h.gauss_order,
            midpoint_base: h.midpoint_base,
            richardson_levels: h.richardson_levels,
            cache_dir: None,
            out: None,
            csv: false,
        }
    }

    pub fn height_options(&self) -> HeightOptions {
        HeightOptions {
            tolerance: self.precision,
            coeff_budget: self.coeff_budget,
            gauss_order: self.gauss_order,
            midpoint_base: self.midpoint_base,
            richardson_levels: self.richardson_levels,
            ..HeightOptions::default()
        }
    }

    /// Check the configuration before any computation.
    pub fn validate(&self) -> Result<()> {
        parse_levels(&self.levels)?;
        parse_primes(&self.primes)?;
        if self.weight == 0 {
            return Err(Error::InvalidInput("weight must be positive".into()));
        }
        if !(self.precision > 0.0 && self.precision < 1.0) {
            return Err(Error::InvalidInput(format!("precision {} must lie in (0, 1)", self.precision)));
        }
        if self.gauss_order == 0 || self.midpoint_base == 0 || self.richardson_levels < 2 {
            return Err(Error::InvalidInput("quadrature settings must be positive (at least two Richardson levels)".into()));
        }
        if self.coeff_budget == Some(0) {
            return Err(Error::InvalidInput("coefficient budget must be positive".into()));
        }
        if self.command == Command::Polygon && self.file.is_none() {
            return Err(Error::InvalidInput("polygon needs --file".into()));
        }
        if self.csv && matches!(self.command, Command::Semisimple | Command::Polygon) {
            return Err(Error::InvalidInput("CSV output exists for discr and height only".into()));
        }
        Ok(())
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|e| Error::InvalidInput(format!("`{s}`: {e}")))
}

/// Expand `a..b` (inclusive), single values and comma lists. The result is
/// sorted and deduplicated.
fn expand(spec: &str) -> Result<(Vec<u64>, Vec<u64>)> {
    let (mut ranged, mut single) = (Vec::new(), Vec::new());
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            ranged.extend(parse_u64(a)?..=parse_u64(b)?);
        } else {
            single.push(parse_u64(part)?);
        }
    }
    Ok((ranged, single))
}

pub fn parse_levels(spec: &str) -> Result<Vec<u64>> {
    let (mut r, s) = expand(spec)?;
    r.extend(s);
    if r.contains(&0) {
        return Err(Error::InvalidLevel(0));
    }
    r.sort_unstable();
    r.dedup();
    Ok(r)
}

/// Ranges keep their primes; an explicitly listed non-prime is an error.
pub fn parse_primes(spec: &str) -> Result<Vec<u64>> {
    let (r, s) = expand(spec)?;
    if let Some(&bad) = s.iter().find(|&&x| !is_prime(x)) {
        return Err(Error::NotPrime(bad));
    }
    let mut out: Vec<u64> = r.into_iter().filter(|&x| is_prime(x)).chain(s).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
