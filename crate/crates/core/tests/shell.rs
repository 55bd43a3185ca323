use hecke_core::exactlin::{RatPoly, Rational};
use hecke_core::phimod::FactorValuation;
use hecke_core::semisimple::NewformDatum;
use hecke_core::shell::*;
use hecke_core::modsym::SpaceStore;
use hecke_core::Error;
use proptest::prelude::*;

fn cfg(command: Command, levels: &str, primes: &str) -> RunConfig {
    let mut c = RunConfig::new(command);
    c.levels = levels.into();
    c.primes = primes.into();
    c
}

#[test]
fn semisimple_examples() {
    let store = SpaceStore::new(None);
    let out = run_with_store(&cfg(Command::Semisimple, "40", "2"), &store).unwrap();
    assert_eq!(out.report.summary.out_of_scope, 1);
    assert!(!out.failed());
    assert!(out.report.items[0].error.as_deref().unwrap().contains("p^3"));

    let out = run_with_store(&cfg(Command::Semisimple, "5..4", "2"), &store).unwrap();
    assert_eq!(out.report.summary.total, 0);
    assert!(!out.failed());

    let out = run_with_store(&cfg(Command::Semisimple, "11,22", "2,3"), &store).unwrap();
    assert_eq!(out.report.summary.certified, 4);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["format"], REPORT_FORMAT);
    assert_eq!(v["config"]["levels"], "11,22");
    assert_eq!(v["items"][0]["N"], 11);
}

#[test]
fn config_errors_come_before_work() {
    let store = SpaceStore::new(None);
    assert!(matches!(run_with_store(&cfg(Command::Semisimple, "1..3", "9"), &store), Err(Error::NotPrime(9))));
    assert!(run_with_store(&cfg(Command::Polygon, "", ""), &store).is_err());
    let mut c = cfg(Command::Semisimple, "11", "2");
    c.csv = true;
    assert!(run_with_store(&c, &store).is_err());
}

#[test]
fn polygon_file_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.tsv");
    std::fs::write(&path, "# fixtures\n1\t12\t2\t0,1\t-24\t1\t1:3\n1\t1\t2\t0,1\t0\t1\n").unwrap();
    let mut c = cfg(Command::Polygon, "", "");
    c.file = Some(path.clone());
    let out = run_with_store(&c, &SpaceStore::new(None)).unwrap();
    let items = &out.report.items;
    assert_eq!(items.len(), 2);
    let k12 = items.iter().find(|it| it.verdict == ItemVerdict::Certified).unwrap();
    let r = k12.result.as_ref().unwrap();
    assert_eq!(r["polygon"]["newton_slopes"], serde_json::json!(["3", "8"]));
    assert_eq!(r["eichler"]["eichler"]["delta_norm"], "-7616");
    assert_eq!(out.report.summary.out_of_scope, 1);

    std::fs::write(&path, "1\t12\t2\t0,1\t-24\t1\n1\t12\t2\t0,1\n").unwrap();
    assert!(matches!(run_with_store(&c, &SpaceStore::new(None)), Err(Error::Parse { line: 2, .. })));
}

#[test]
fn discr_csv() {
    let mut c = cfg(Command::Discr, "23,40", "");
    c.csv = true;
    let out = run_with_store(&c, &SpaceStore::new(None)).unwrap();
    let lines: Vec<&str> = out.text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines[0], "N,g,b,rank,discr_T,discr_Tprime,index,reduced,verdict");
    assert_eq!(lines[1], "23,2,4,2,5,5,1,true,certified");
    assert!(lines[2].starts_with("40,3,") && lines[2].ends_with("out_of_scope"));
    assert!(out.text.starts_with(&format!("# {REPORT_FORMAT}\n# config: ")));
}

#[test]
fn cold_and_warm_cache_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let both = |cache: Option<std::path::PathBuf>| {
        let mut c = cfg(Command::Discr, "11..30", "");
        c.cache_dir = cache;
        let s = run(&c).unwrap().text;
        let mut c = cfg(Command::Semisimple, "11..30", "2,3");
        c.cache_dir = None;
        s + &run_with_store(&c, &SpaceStore::new(None)).unwrap().text
    };
    let cold = both(Some(dir.path().to_path_buf()));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 20);
    let warm = both(Some(dir.path().to_path_buf()));
    assert_eq!(cold.replace(&dir.path().display().to_string(), ""), warm.replace(&dir.path().display().to_string(), ""));
    let uncached = both(None);
    let strip = |s: &str| s.lines().filter(|l| !l.contains("cache_dir")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&cold), strip(&uncached));
}

#[test]
fn corrupt_cache_files_are_misses() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = cfg(Command::Discr, "11", "");
    c.cache_dir = Some(dir.path().to_path_buf());
    let first = run(&c).unwrap().text;
    for e in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(e.unwrap().path(), "garbage\n").unwrap();
    }
    assert_eq!(run(&c).unwrap().text, first);
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ingest_round_trip(
        n in 1u64..=200,
        k in 2u64..=20,
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        a in prop::collection::vec(small_rat(), 1..3),
        disc in 2i64..=30,
        hint in prop::option::of(prop::option::of(0i64..=9)),
    ) {
        prop_assume!(n % p != 0);
        // x^2 - disc is squarefree for every nonzero disc
        let f = RatPoly::from_i64(&[-disc, 0, 1]);
        let datum = NewformDatum::new(n, k, p, f, RatPoly::new(a), RatPoly::one());
        prop_assume!(datum.is_ok());
        let hints = hint.map(|v| vec![FactorValuation { degree: 2, v_ap: v.map(|x| Rational::from_integer(x.into())) }]);
        let rec = IngestRecord { line: 0, datum: datum.unwrap(), hints };
        let text = serialize_ingest(std::slice::from_ref(&rec));
        let back = parse_ingest(&text).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(&back[0].datum, &rec.datum);
        prop_assert_eq!(&back[0].hints, &rec.hints);
        prop_assert_eq!(back[0].line, 2);
    }

    #[test]
    fn level_ranges_are_sorted_and_unique(a in 1u64..=50, len in 0u64..=20, extra in prop::collection::vec(1u64..=80, 0..5)) {
        let spec = std::iter::once(format!("{a}..{}", a + len)).chain(extra.iter().map(u64::to_string)).collect::<Vec<_>>().join(",");
        let v = parse_levels(&spec).unwrap();
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        prop_assert!((a..=a + len).all(|x| v.contains(&x)));
        prop_assert!(extra.iter().all(|x| v.contains(x)));
    }
}
