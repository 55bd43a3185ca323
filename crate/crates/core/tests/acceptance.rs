//! One PASS/FAIL line per acceptance criterion. Criterion 7's squared
//! comparison is reported as it is stated; it is false for several primes
//! (see README) and does not fail this target. Everything else does.

use std::process::ExitCode;
use std::time::Instant;

use hecke_core::arith::{factor, primes_up_to, valuation};
use hecke_core::exactlin::{int, is_squarefree, minpoly, RatMatrix, RatPoly, Rational};
use hecke_core::heckealg::discriminant_report;
use hecke_core::heights::{height_bound_chain, height_x0p, HeightOptions};
use hecke_core::modsym::SpaceStore;
use hecke_core::phimod::{polygon_report, scalar_contradiction};
use hecke_core::semisimple::{certify_level, pold_block_check, NewformDatum, SemisimplicityCertificate, Verdict};
use hecke_core::shell::{run_with_store, Command, RunConfig};
use hecke_core::Error;

const LEVELS: std::ops::RangeInclusive<u64> = 1..=100;
const SWEEP_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn line(id: &'static str, pass: bool, detail: impl Into<String>) -> Line {
    Line { id, pass, detail: detail.into() }
}

fn cube_free(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e < 3)
}

/// Sweep certificates for every (N, p) with p^3 not dividing N.
fn sweep(store: &SpaceStore) -> (Vec<SemisimplicityCertificate>, Vec<String>) {
    let (mut certs, mut problems) = (Vec::new(), Vec::new());
    for n in LEVELS {
        for p in SWEEP_PRIMES {
            match certify_level(store, n, 2, p) {
                Ok(c) => certs.push(c),
                Err(Error::OutOfScope(_)) if valuation(n, p) >= 3 => {}
                Err(e) => problems.push(format!("({n}, {p}): {e}")),
            }
        }
    }
    (certs, problems)
}

fn criterion_1(certs: &[SemisimplicityCertificate], problems: &[String]) -> Line {
    let bad: Vec<String> = certs
        .iter()
        .filter(|c| c.verdict != Verdict::Certified || !is_squarefree(&c.minpoly).map(|w| w.squarefree).unwrap_or(false))
        .map(|c| format!("({}, {})", c.scope.level, c.scope.p))
        .chain(problems.iter().cloned())
        .collect();
    let skipped = LEVELS.flat_map(|n| SWEEP_PRIMES.map(|p| (n, p))).filter(|&(n, p)| valuation(n, p) >= 3).count();
    line(
        "1 semi-simplicity sweep",
        bad.is_empty(),
        format!("{} pairs squarefree, {} outside p^3 scope, failures {:?}", certs.len() - bad.len(), skipped, bad),
    )
}

fn criterion_2(certs: &[SemisimplicityCertificate]) -> Line {
    let prime_to: Vec<_> = certs.iter().filter(|c| c.scope.level % c.scope.p != 0).collect();
    let systems: usize = prime_to.iter().map(|c| c.eichler.len()).sum();
    let bad: Vec<String> = prime_to
        .iter()
        .filter(|c| c.eichler.iter().any(|e| !e.simple_roots || e.delta_norm == int(0)))
        .map(|c| format!("({}, {})", c.scope.level, c.scope.p))
        .collect();
    // every level with cusp forms contributes its T_p algebra
    let missing = prime_to.iter().filter(|c| c.charpoly.degree().unwrap_or(0) > 0 && c.eichler.is_empty()).count();
    line(
        "2 Eichler discriminant norms",
        bad.is_empty() && missing == 0,
        format!("{systems} eigensystem algebras, nonzero norms everywhere: {}", bad.is_empty() && missing == 0),
    )
}

fn criterion_3(certs: &[SemisimplicityCertificate]) -> Line {
    let prime_to: Vec<_> = certs.iter().filter(|c| c.scope.level % c.scope.p != 0).collect();
    let bad: Vec<String> = prime_to
        .iter()
        .filter(|c| c.ramanujan != Some(true) || c.real_rooted != Some(true))
        .map(|c| format!("({}, {})", c.scope.level, c.scope.p))
        .collect();
    line("3 strict Ramanujan (exact Sturm)", bad.is_empty(), format!("{} charpolys, failures {:?}", prime_to.len(), bad))
}

fn criterion_4(store: &SpaceStore) -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in [11u64, 14, 15, 17, 19, 21, 23] {
        for p in [2u64, 3, 5, 7] {
            if n % p == 0 {
                continue;
            }
            let ok = store
                .get(n)
                .and_then(|low| store.get(p * n).and_then(|high| pold_block_check(&low, &high, p)))
                .map(|b| b.agrees)
                .unwrap_or(false);
            checked += 1;
            if !ok {
                bad.push((n, p));
            }
        }
    }
    let t2 = store.get(22).and_then(|s| s.hecke_matrix(2)).map(|t| hecke_core::exactlin::charpoly(&t.matrix));
    let spot = matches!(t2, Ok(Ok(ref f)) if *f == RatPoly::from_i64(&[2, 2, 1]));
    line(
        "4 p-old block consistency",
        bad.is_empty() && spot,
        format!("{checked} (N, p) pairs agree exactly, level 22 T_2 = x^2+2x+2: {spot}, failures {bad:?}"),
    )
}

fn criterion_5(store: &SpaceStore) -> Line {
    let mut identity_ok = true;
    for k in 2..=30u64 {
        for d in 1..=8usize {
            let half = Rational::new((d as i64 * (k as i64 - 1)).into(), 2.into());
            identity_ok &= scalar_contradiction(k, d)
                .map(|s| s.violated && &s.t_h - &s.t_n == half && s.t_h == int(d as i64 * (k as i64 - 1)))
                .unwrap_or(false);
        }
    }
    let mut genuine = 0;
    let mut bad = Vec::new();
    for n in LEVELS {
        let Ok(s) = store.get(n) else { bad.push((n, 0)); continue };
        if s.plus_dim() == 0 {
            continue;
        }
        for p in SWEEP_PRIMES.into_iter().filter(|p| n % p != 0) {
            let ok = s
                .hecke_matrix(p)
                .and_then(|t| minpoly(&t.matrix))
                .and_then(|f| NewformDatum::new(n, 2, p, f, RatPoly::x(), RatPoly::one()))
                .and_then(|d| polygon_report(&d, None))
                .map(|r| r.admissibility.admissible && r.chain.consistent)
                .unwrap_or(false);
            genuine += 1;
            if !ok {
                bad.push((n, p));
            }
        }
    }
    let fixture = NewformDatum::rational(1, 12, 2, -24, 1)
        .and_then(|d| polygon_report(&d, None))
        .map(|r| r.admissibility.admissible && r.newton_slopes == vec![int(3), int(8)])
        .unwrap_or(false);
    line(
        "5 polygons and scalar contradiction",
        identity_ok && bad.is_empty() && fixture,
        format!(
            "t_H - t_N = d(k-1)/2 for k<=30, d<=8: {identity_ok}; {genuine} modular data admissible, failures {bad:?}; k=12 fixture slopes {{3,8}}: {fixture}"
        ),
    )
}

/// Trace-form determinant of `Z[x]/(f)` for monic `f`, from power sums.
fn order_discriminant(f: &RatPoly) -> Rational {
    let d = f.degree().unwrap_or(0);
    let c = |i: usize| f.coeff(i);
    // Newton identities for s_m = sum of m-th powers of the roots
    let mut s: Vec<Rational> = vec![int(d as i64)];
    for m in 1..=2 * d {
        let mut acc = int(0);
        for i in 1..=m.min(d) {
            let e = c(d - i);
            if i < m {
                acc -= &e * &s[m - i];
            } else {
                acc -= &e * int(m as i64);
            }
        }
        s.push(acc);
    }
    let gram = RatMatrix::from_rows((0..d).map(|i| (0..d).map(|j| s[i + j].clone()).collect()).collect()).unwrap();
    gram.det().unwrap()
}

fn criterion_6(store: &SpaceStore) -> Line {
    let mut nonzero = 0;
    let mut identity = 0;
    let mut bad = Vec::new();
    for n in LEVELS.filter(|&n| cube_free(n)) {
        match store.get(n).and_then(|s| discriminant_report(&s)) {
            Ok(r) if r.g == 0 => {}
            Ok(r) => {
                if r.discr_t == 0.into() {
                    bad.push(n);
                } else {
                    nonzero += 1;
                }
                if let (Some(dp), Some(ix)) = (&r.discr_tprime, &r.index) {
                    if &r.discr_t * ix * ix == *dp {
                        identity += 1;
                    } else {
                        bad.push(n);
                    }
                }
            }
            Err(_) => bad.push(n),
        }
    }
    let oracle = order_discriminant(&RatPoly::from_i64(&[-1, 1, 1]));
    let t2 = store.get(23).and_then(|s| s.hecke_matrix(2)).and_then(|t| minpoly(&t.matrix)).ok();
    let from_t2 = t2.as_ref().map(order_discriminant);
    let d23 = store.get(23).and_then(|s| discriminant_report(&s)).map(|r| r.discr_t).ok();
    let spot = oracle == int(5) && from_t2 == Some(int(5)) && d23 == Some(5.into());
    line(
        "6 Hecke discriminants",
        bad.is_empty() && spot,
        format!("{nonzero} cube-free levels with g>=1 nonzero, identity exact at {identity}, discr(23) = 5: {spot}, failures {bad:?}"),
    )
}

fn criterion_7(store: &SpaceStore) -> (Line, bool) {
    let mut squared_fail = Vec::new();
    let mut numeric_bad = Vec::new();
    let mut worst: f64 = 0.0;
    let primes = primes_up_to(100);
    for &p in &primes {
        match height_bound_chain(store, p, true) {
            Ok(c) => {
                if !c.squared_form_holds {
                    squared_fail.push(p);
                }
                if c.g > 0 {
                    worst = worst.max(c.numeric_relative_error.unwrap_or(f64::INFINITY));
                    if c.numeric_matches != Some(true) {
                        numeric_bad.push(p);
                    }
                }
            }
            Err(_) => numeric_bad.push(p),
        }
    }
    let numeric_ok = numeric_bad.is_empty();
    let l = line(
        "7 bound chain",
        squared_fail.is_empty() && numeric_ok,
        format!(
            "squared comparison |discr T'|^2 <= (g!)^2 prod sigma(i)^2 i fails at {squared_fail:?} (known red: the bound is a square already); numeric det route matches exact |discr T'| at all {} primes: {numeric_ok} (worst rel {worst:.1e})",
            primes.len()
        ),
    );
    (l, numeric_ok)
}

fn criterion_8(store: &SpaceStore) -> Line {
    let opts = HeightOptions::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [11u64, 23, 29, 31, 37] {
        let t = Instant::now();
        let r = height_x0p(store, p, &opts);
        let d = r.as_ref().ok().and_then(|r| {
            height_x0p(store, p, &HeightOptions { coeff_budget: Some(2 * r.budget), ..opts.clone() }).ok()
        });
        match (r, d) {
            (Ok(r), Some(d)) => {
                let agree = r.forms.iter().all(|f| f.norm.relative_difference <= 1e-6);
                let stable = (r.h - d.h).abs() <= r.h_error.max(d.h_error);
                ok &= agree && stable;
                parts.push(format!("p={p} h={:.10} err={:.1e} stable={stable} ({:.1}s)", r.h, r.h_error, t.elapsed().as_secs_f64()));
            }
            _ => {
                ok = false;
                parts.push(format!("p={p} error"));
            }
        }
    }
    line("8 heights converge", ok, parts.join("; "))
}

fn reports_1_to_6(dir: &std::path::Path) -> Vec<u8> {
    let fixture = dir.join("fixture.tsv");
    std::fs::write(&fixture, "1\t12\t2\t0,1\t-24\t1\n1\t4\t5\t-5,0,1\t0,1\t1\t2:inf\n").expect("fixture");
    let mut out = Vec::new();
    for (command, levels, primes) in
        [(Command::Semisimple, "1..100", "2..19"), (Command::Discr, "1..100", ""), (Command::Polygon, "", "")]
    {
        let mut c = RunConfig::new(command);
        c.levels = levels.into();
        c.primes = primes.into();
        if command == Command::Polygon {
            c.file = Some(fixture.clone());
        }
        // a fresh store each time: no in-memory or on-disk reuse
        out.extend(run_with_store(&c, &SpaceStore::new(None)).map(|r| r.text).unwrap_or_default().into_bytes());
    }
    out
}

fn criterion_9() -> Line {
    let dir = std::env::temp_dir().join(format!("hecke-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let a = reports_1_to_6(&dir);
    let b = reports_1_to_6(&dir);
    let _ = std::fs::remove_dir_all(&dir);
    line("9 deterministic reports", !a.is_empty() && a == b, format!("two cold runs, {} bytes, identical: {}", a.len(), a == b))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let store = SpaceStore::new(None);
    let (certs, problems) = sweep(&store);
    let mut lines =
        vec![criterion_1(&certs, &problems), criterion_2(&certs), criterion_3(&certs), criterion_4(&store), criterion_5(&store), criterion_6(&store)];
    let (seven, seven_numeric) = criterion_7(&store);
    lines.push(seven);
    lines.push(criterion_8(&store));
    lines.push(criterion_9());

    let mut blocking = false;
    for l in &lines {
        println!("{} criterion {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.detail);
        blocking |= !l.pass && !l.id.starts_with('7');
    }
    blocking |= !seven_numeric;
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if blocking {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
