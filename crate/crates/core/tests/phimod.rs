use hecke_core::exactlin::{int, minpoly, RatPoly, Rational};
use hecke_core::modsym::SpaceStore;
use hecke_core::phimod::*;
use hecke_core::semisimple::NewformDatum;
use hecke_core::Error;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn pts(v: &[(usize, i64, i64)]) -> Vec<(usize, Rational)> {
    v.iter().map(|&(x, n, d)| (x, q(n, d))).collect()
}

fn ratv(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(n, d)| q(n, d)).collect()
}

fn vmod(k: u64, p: u64, d: usize, v: Option<Rational>) -> FilteredPhiModule {
    FilteredPhiModule::from_valuations(k, p, vec![FactorValuation { degree: d, v_ap: v }]).unwrap()
}

/// Slopes of `x^2 - a x + p^(k-1)` by the two-point rule.
fn slopes_by_hand(a: i64, p: i64, k: u64) -> Vec<Rational> {
    let half = q(k as i64 - 1, 2);
    let mut v = 0;
    let mut x = a;
    while x != 0 && x % p == 0 {
        x /= p;
        v += 1;
    }
    if a != 0 && int(v) < half {
        vec![int(v), int(k as i64 - 1 - v)]
    } else {
        vec![half.clone(), half]
    }
}

#[test]
fn hodge_polygon_examples() {
    assert_eq!(vmod(2, 5, 1, Some(int(0))).hodge_polygon().vertices(), pts(&[(0, 0, 1), (1, 0, 1), (2, 1, 1)]).as_slice());
    assert_eq!(vmod(12, 5, 1, Some(int(0))).hodge_polygon().vertices(), pts(&[(0, 0, 1), (1, 0, 1), (2, 11, 1)]).as_slice());
    assert_eq!(vmod(2, 5, 2, Some(int(0))).hodge_polygon().vertices(), pts(&[(0, 0, 1), (2, 0, 1), (4, 2, 1)]).as_slice());
}

#[test]
fn newton_polygon_examples() {
    assert_eq!(vmod(2, 3, 1, Some(int(0))).newton_polygon().unwrap().slopes(), ratv(&[(0, 1), (1, 1)]));
    assert_eq!(vmod(2, 3, 1, Some(int(1))).newton_polygon().unwrap().slopes(), ratv(&[(1, 2), (1, 2)]));
    assert_eq!(vmod(2, 3, 1, None).newton_polygon().unwrap().slopes(), ratv(&[(1, 2), (1, 2)]));
    let d = NewformDatum::rational(1, 12, 2, -24, 1).unwrap();
    let m = FilteredPhiModule::from_datum(&d).unwrap();
    assert_eq!(m.newton_polygon().unwrap().slopes(), ratv(&[(3, 1), (8, 1)]));
    // the hull of (0, 11), (1, 3), (2, 0) read from the constant term up
    assert_eq!(slopes_by_hand(-24, 2, 12), ratv(&[(3, 1), (8, 1)]));
}

#[test]
fn t_value_examples() {
    let m = vmod(2, 7, 1, Some(int(0)));
    assert_eq!((m.t_n().unwrap(), m.t_h()), (int(1), int(1)));
    let sc = scalar_contradiction(2, 1).unwrap();
    assert_eq!((sc.t_h.clone(), sc.t_n.clone()), (int(1), q(1, 2)));
    let sc = scalar_contradiction(12, 1).unwrap();
    assert_eq!((sc.t_h.clone(), sc.t_n.clone()), (int(11), q(11, 2)));
    assert!(sc.violated);
    assert!(matches!(scalar_contradiction(1, 1), Err(Error::OutOfScope(_))));
}

#[test]
fn polygon_above_examples() {
    let ord = Polygon::from_slopes(&ratv(&[(0, 1), (1, 1)]));
    let ss = Polygon::from_slopes(&ratv(&[(1, 2), (1, 2)]));
    let dip = Polygon::from_slopes(&ratv(&[(-1, 1), (2, 1)]));
    assert!(polygon_above(&ord, &ord).unwrap());
    assert!(polygon_above(&ss, &ord).unwrap());
    assert!(!polygon_above(&dip, &ord).unwrap());
    let long = Polygon::from_slopes(&ratv(&[(0, 1), (0, 1), (1, 1)]));
    assert!(matches!(polygon_above(&long, &ord), Err(Error::DimensionMismatch(_))));
}

#[test]
fn weak_admissibility_examples() {
    let k = 4;
    let m = vmod(k, 5, 1, Some(int(0)));
    let unit = SubobjectDescriptor { label: "unit root".into(), dim: 1, slope: int(0), fil_level: 0 };
    let r = weak_admissibility_check(&m, std::slice::from_ref(&unit)).unwrap();
    assert!(r.admissible);
    assert_eq!(unit.t_h(), unit.t_n());
    let steep = SubobjectDescriptor { label: "slope k-1".into(), dim: 1, slope: int(3), fil_level: 3 };
    let r = weak_admissibility_check(&m, &[unit, steep]).unwrap();
    assert!(r.admissible);
    assert_eq!(r.worst_excess, int(0));

    let r = scalar_fixture_check(k, 1).unwrap();
    assert!(!r.admissible);
    assert_eq!(r.offender.as_deref(), Some("Fil^3"));
    assert_eq!(r.worst_excess, q(3, 2));
}

#[test]
fn report_strings_are_exact() {
    let d = NewformDatum::rational(1, 12, 2, -24, 1).unwrap();
    let r = polygon_report(&d, None).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["scalar"]["t_n"], "11/2");
    assert_eq!(v["newton_slopes"], serde_json::json!(["3", "8"]));
    assert!(r.admissibility.admissible);
    assert!(r.chain.consistent);
}

#[test]
fn chain_rejects_double_roots() {
    // a_p = 2 * 5 with k = 3, p = 5: Eichler polynomial (x - 5)^2
    let d = NewformDatum::rational(1, 3, 5, 10, 1).unwrap();
    let c = scalar_chain(&d).unwrap();
    assert!(!c.consistent);
    assert_eq!(c.degenerate_degree, 1);
    assert!(c.contradiction.unwrap().violated);
    // K = Q(sqrt 2) x Q with a_p = x: only the first factor degenerates
    let f = &RatPoly::from_i64(&[-8, 0, 1]) * &RatPoly::from_i64(&[-1, 1]);
    let d = NewformDatum::new(1, 2, 2, f, RatPoly::from_i64(&[0, 1]), RatPoly::one()).unwrap();
    let c = scalar_chain(&d).unwrap();
    assert_eq!(c.degenerate_degree, 2);
}

// genuine weight-2 data: K cut out by the minimal polynomial of T_p, a_p = x
#[test]
fn modular_data_is_weakly_admissible() {
    let store = SpaceStore::new(None);
    for n in 11..=60u64 {
        let s = store.get(n).unwrap();
        if s.plus_dim() == 0 {
            continue;
        }
        for p in [2u64, 3, 5, 7] {
            if n % p == 0 {
                continue;
            }
            let f = minpoly(&s.hecke_matrix(p).unwrap().matrix).unwrap();
            let d = NewformDatum::new(n, 2, p, f, RatPoly::x(), RatPoly::one()).unwrap();
            let r = polygon_report(&d, None).unwrap();
            assert!(r.admissibility.admissible, "N = {n}, p = {p}");
            assert!(r.chain.consistent, "N = {n}, p = {p}");
            assert_eq!(r.newton.endpoint(), r.hodge.endpoint());
        }
    }
}

#[test]
fn hints_are_cross_checked() {
    let d = NewformDatum::rational(1, 12, 2, -24, 1).unwrap();
    let good = vec![FactorValuation { degree: 1, v_ap: Some(int(3)) }];
    assert!(polygon_report(&d, Some(good)).is_ok());
    let bad = vec![FactorValuation { degree: 1, v_ap: Some(int(2)) }];
    assert!(polygon_report(&d, Some(bad)).is_err());
}

proptest! {
    #[test]
    fn scalar_contradiction_identity(k in 2u64..=30, d in 1usize..=8) {
        let sc = scalar_contradiction(k, d).unwrap();
        prop_assert_eq!(sc.t_h.clone(), int((d as i64) * (k as i64 - 1)));
        prop_assert_eq!(sc.t_n.clone(), q(d as i64 * (k as i64 - 1), 2));
        prop_assert_eq!(&sc.t_h - &sc.t_n, q(d as i64 * (k as i64 - 1), 2));
        prop_assert!(sc.violated);
        prop_assert!(!scalar_fixture_check(k, d).unwrap().admissible);
    }

    #[test]
    fn rational_data_match_hand_slopes(
        a in -200i64..=200,
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        k in 2u64..=12,
        eps in prop::sample::select(vec![1i64, -1]),
    ) {
        let d = NewformDatum::rational(1, k, p, a, eps).unwrap();
        let m = FilteredPhiModule::from_datum(&d).unwrap();
        let newton = m.newton_polygon().unwrap();
        prop_assert_eq!(newton.slopes(), slopes_by_hand(a, p as i64, k));
        prop_assert_eq!(m.t_n().unwrap(), m.t_h());
        prop_assert_eq!(newton.endpoint(), m.hodge_polygon().endpoint());
        prop_assert!(polygon_above(&newton, &m.hodge_polygon()).unwrap());
    }

    #[test]
    fn valuation_modules_are_convex_and_admissible(
        vals in prop::collection::vec((1usize..=3, prop::option::of(0i64..=12), 1i64..=2), 1..4),
        k in 2u64..=12,
    ) {
        let factors: Vec<FactorValuation> =
            vals.iter().map(|&(deg, v, den)| FactorValuation { degree: deg, v_ap: v.map(|n| q(n, den)) }).collect();
        let m = FilteredPhiModule::from_valuations(k, 3, factors).unwrap();
        let newton = m.newton_polygon().unwrap();
        let slopes = newton.slopes();
        prop_assert!(slopes.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(newton.length(), 2 * m.degree());
        prop_assert_eq!(newton.endpoint(), m.hodge_polygon().endpoint());
        prop_assert!(polygon_above(&newton, &m.hodge_polygon()).unwrap());
    }

    #[test]
    fn lower_hull_lies_below_its_points(ys in prop::collection::vec(0i64..=20, 2..8)) {
        let mut points: Vec<(usize, Option<Rational>)> = ys.iter().enumerate().map(|(i, &y)| (i, Some(int(y)))).collect();
        points[0].1 = Some(int(0));
        let hull = Polygon::lower_hull(&points).unwrap();
        for (x, y) in &points {
            prop_assert!(hull.at(&int(*x as i64)).unwrap() <= *y.as_ref().unwrap());
        }
        let s = hull.slopes();
        prop_assert!(s.windows(2).all(|w| w[0] <= w[1]));
    }
}
