use std::fs;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::config::{parse_levels, parse_primes, Command, RunConfig};
use super::ingest::{parse_ingest, IngestRecord};
use crate::error::{Error, Result};
use crate::heckealg::discriminant_report;
use crate::heights::{height_bound_chain, height_x0p};
use crate::phimod::polygon_report;
use crate::semisimple::{certify_datum, certify_level, Verdict};
use crate::modsym::SpaceStore;

pub const REPORT_FORMAT: &str = "hecke-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemVerdict {
    Certified,
    Failed,
    OutOfScope,
    Error,
}

/// One `(N, p)` work item.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    #[serde(rename = "N")]
    pub level: u64,
    pub p: Option<u64>,
    pub verdict: ItemVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub certified: usize,
    pub failed: usize,
    pub out_of_scope: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub config: RunConfig,
    pub items: Vec<Item>,
    pub summary: Summary,
}

pub struct RunOutput {
    pub report: Report,
    /// JSON, or CSV when requested.
    pub text: String,
}

impl RunOutput {
    /// A sweep fails when an item fails or hits a non-scope error.
    pub fn failed(&self) -> bool {
        self.report.summary.failed + self.report.summary.errors > 0
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn item(level: u64, p: Option<u64>, outcome: Result<(ItemVerdict, Value)>) -> Item {
    match outcome {
        Ok((verdict, v)) => Item { level, p, verdict, error: None, result: Some(v) },
        Err(Error::OutOfScope(m)) => Item { level, p, verdict: ItemVerdict::OutOfScope, error: Some(m), result: None },
        Err(e) => Item { level, p, verdict: ItemVerdict::Error, error: Some(e.to_string()), result: None },
    }
}

fn from_verdict(v: Verdict) -> ItemVerdict {
    match v {
        Verdict::Certified => ItemVerdict::Certified,
        Verdict::Failed => ItemVerdict::Failed,
        Verdict::OutOfScope => ItemVerdict::OutOfScope,
    }
}

fn cube_free(n: u64) -> bool {
    crate::arith::factor(n).iter().all(|&(_, e)| e < 3)
}

fn semisimple_items(cfg: &RunConfig, store: &SpaceStore) -> Result<Vec<Item>> {
    let primes = parse_primes(&cfg.primes)?;
    let pairs: Vec<(u64, u64)> =
        parse_levels(&cfg.levels)?.into_iter().flat_map(|n| primes.iter().map(move |&p| (n, p))).collect();
    Ok(pairs
        .into_par_iter()
        .map(|(n, p)| {
            item(n, Some(p), certify_level(store, n, cfg.weight, p).map(|c| (from_verdict(c.verdict), to_value(&c))))
        })
        .collect())
}

fn polygon_items(records: Vec<IngestRecord>) -> Vec<Item> {
    records
        .into_par_iter()
        .map(|r| {
            let d = &r.datum;
            let outcome = (|| {
                let poly = polygon_report(d, r.hints.clone())?;
                let cert = certify_datum(d)?;
                let ok = poly.admissibility.admissible && poly.chain.consistent && cert.verdict == Verdict::Certified;
                let verdict = if ok { ItemVerdict::Certified } else { ItemVerdict::Failed };
                Ok((verdict, serde_json::json!({ "line": r.line, "polygon": poly, "eichler": cert })))
            })();
            item(d.level, Some(d.prime), outcome)
        })
        .collect()
}

fn discr_items(cfg: &RunConfig, store: &SpaceStore) -> Result<Vec<Item>> {
    Ok(parse_levels(&cfg.levels)?
        .into_par_iter()
        .map(|n| {
            let outcome = store.get(n).and_then(|s| discriminant_report(&s)).map(|r| {
                let ok = r.discr_t != 0.into();
                let verdict = match (ok, cube_free(n)) {
                    (true, _) => ItemVerdict::Certified,
                    (false, true) => ItemVerdict::Failed,
                    (false, false) => ItemVerdict::OutOfScope,
                };
                (verdict, to_value(&r))
            });
            item(n, None, outcome)
        })
        .collect())
}

fn height_items(cfg: &RunConfig, store: &SpaceStore) -> Result<Vec<Item>> {
    let opts = cfg.height_options();
    Ok(parse_primes(&cfg.primes)?
        .into_par_iter()
        .map(|p| {
            let outcome = height_x0p(store, p, &opts).and_then(|mut r| {
                r.bound = height_bound_chain(store, p, true)?;
                let agree = r.forms.iter().all(|f| f.norm.relative_difference <= 1e-6);
                let chain = r.bound.log_chain_holds && r.bound.numeric_matches != Some(false);
                let verdict = if agree && chain { ItemVerdict::Certified } else { ItemVerdict::Failed };
                Ok((verdict, to_value(&r)))
            });
            item(p, Some(p), outcome)
        })
        .collect())
}

fn csv_text(cfg: &RunConfig, items: &[Item]) -> String {
    let mut out = format!("# {REPORT_FORMAT}\n# config: {}\n", serde_json::to_string(cfg).expect("config serializes"));
    let field = |v: &Value, k: &str| match v.get(k) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Null) | None => String::new(),
        Some(x) => x.to_string(),
    };
    match cfg.command {
        Command::Height => {
            out += "p,g,discr_T,h,h_error,log_bound,verdict\n";
            for it in items {
                let r = it.result.clone().unwrap_or(Value::Null);
                let bound = r.get("bound").cloned().unwrap_or(Value::Null);
                out += &format!(
                    "{},{},{},{},{},{},{}\n",
                    it.level,
                    field(&r, "g"),
                    field(&r, "discr_t"),
                    field(&r, "h"),
                    field(&r, "h_error"),
                    field(&bound, "log_bound"),
                    to_value(&it.verdict).as_str().unwrap_or_default()
                );
            }
        }
        _ => {
            out += "N,g,b,rank,discr_T,discr_Tprime,index,reduced,verdict\n";
            for it in items {
                let r = it.result.clone().unwrap_or(Value::Null);
                out += &format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    it.level,
                    field(&r, "g"),
                    field(&r, "b"),
                    field(&r, "rank"),
                    field(&r, "discr_t"),
                    field(&r, "discr_tprime"),
                    field(&r, "index"),
                    field(&r, "reduced"),
                    to_value(&it.verdict).as_str().unwrap_or_default()
                );
            }
        }
    }
    out
}

/// Run with a caller-provided store (so tests can share spaces).
pub fn run_with_store(cfg: &RunConfig, store: &SpaceStore) -> Result<RunOutput> {
    cfg.validate()?;
    let mut items = match cfg.command {
        Command::Semisimple => semisimple_items(cfg, store)?,
        Command::Discr => discr_items(cfg, store)?,
        Command::Height => height_items(cfg, store)?,
        Command::Polygon => {
            let path = cfg.file.as_ref().expect("validated");
            polygon_items(parse_ingest(&fs::read_to_string(path)?)?)
        }
    };
    items.sort_by_key(|it| (it.level, it.p));
    let mut summary = Summary { total: items.len(), ..Summary::default() };
    for it in &items {
        match it.verdict {
            ItemVerdict::Certified => summary.certified += 1,
            ItemVerdict::Failed => summary.failed += 1,
            ItemVerdict::OutOfScope => summary.out_of_scope += 1,
            ItemVerdict::Error => summary.errors += 1,
        }
    }
    store.persist()?;
    let text = if cfg.csv {
        csv_text(cfg, &items)
    } else {
        let report = Report { format: REPORT_FORMAT, config: cfg.clone(), items: items.clone(), summary: summary.clone() };
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    };
    if let Some(out) = &cfg.out {
        fs::write(out, &text)?;
    }
    Ok(RunOutput { report: Report { format: REPORT_FORMAT, config: cfg.clone(), items, summary }, text })
}

pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    run_with_store(cfg, &SpaceStore::new(cfg.cache_dir.clone()))
}
