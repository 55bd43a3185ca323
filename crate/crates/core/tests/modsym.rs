use hecke_core::arith::{gcd, is_prime};
use hecke_core::exactlin::{charpoly, sturm_count, QuadRingElem, RatMatrix, RatPoly, SturmSequence};
use hecke_core::modsym::*;

#[test]
fn plus_dimension_equals_genus_up_to_200() {
    for n in 1..=200 {
        let s = build_space(n).unwrap();
        assert_eq!(s.plus_dim() as u64, genus_x0(n), "N={n}");
        // full cuspidal space carries two copies
        assert_eq!(s.cuspidal_basis().cols() as u64, 2 * genus_x0(n), "N={n}");
        // the boundary of the full space is the degree-zero divisors on the cusps
        assert_eq!(s.boundary().rank() as u64, cusp_count(n) - 1, "N={n}");
        assert_eq!(s.dim() as u64, 2 * genus_x0(n) + cusp_count(n) - 1, "N={n}");
    }
}

#[test]
fn hecke_operators_commute_and_multiply() {
    for n in [11u64, 22, 23, 30, 37, 44, 45, 50] {
        let s = build_space(n).unwrap();
        let t: Vec<RatMatrix> = (1..=12).map(|i| (*s.hecke_matrix(i).unwrap().matrix).clone()).collect();
        for i in 0..t.len() {
            for j in 0..t.len() {
                assert_eq!(&t[i] * &t[j], &t[j] * &t[i], "N={n} T{} T{}", i + 1, j + 1);
            }
        }
        for a in 1..=12u64 {
            for b in 1..=12u64 {
                if a * b <= 12 && gcd(a as i64, b as i64) == 1 {
                    assert_eq!(&t[a as usize - 1] * &t[b as usize - 1], t[(a * b) as usize - 1], "N={n} T{a}T{b}");
                }
            }
        }
        // T_{p^2} = T_p^2 - p [p not dividing N], U_{p^2} = U_p^2 otherwise
        for p in [2u64, 3] {
            let tp = &t[p as usize - 1];
            let sq = tp * tp;
            let expected = if n % p == 0 { sq } else { &sq - &RatMatrix::identity(tp.rows()).scale(&hecke_core::exactlin::int(p as i64)) };
            assert_eq!(t[(p * p) as usize - 1], expected, "N={n} p={p}");
        }
    }
}

#[test]
fn cuspidal_plus_space_is_hecke_stable_in_full_space() {
    let s = build_space(42).unwrap();
    for n in [2u64, 3, 5, 7] {
        let full = s.hecke_full(n).unwrap();
        let img = &full * s.plus_basis();
        assert!(s.plus_coordinates(&img).is_ok());
    }
}

#[test]
fn known_charpolys() {
    let s = build_space(11).unwrap();
    assert_eq!(*s.hecke_matrix(2).unwrap().matrix, RatMatrix::from_i64(&[&[-2]]));
    // a_3 = -1, a_5 = 1 for the curve of conductor 11
    assert_eq!(*s.hecke_matrix(3).unwrap().matrix, RatMatrix::from_i64(&[&[-1]]));
    assert_eq!(*s.hecke_matrix(5).unwrap().matrix, RatMatrix::from_i64(&[&[1]]));
    let s = build_space(23).unwrap();
    assert_eq!(charpoly(&s.hecke_matrix(2).unwrap().matrix).unwrap(), RatPoly::from_i64(&[-1, 1, 1]));
    // 37 splits into a_2 = -2 (37a) and a_2 = 0 (37b)
    let s = build_space(37).unwrap();
    assert_eq!(charpoly(&s.hecke_matrix(2).unwrap().matrix).unwrap(), RatPoly::from_i64(&[0, 2, 1]));
}

#[test]
fn prime_hecke_charpolys_are_real_rooted_and_weil_bounded() {
    for n in 1..=60u64 {
        let s = build_space(n).unwrap();
        if s.plus_dim() == 0 {
            continue;
        }
        for p in [2u64, 3, 5, 7] {
            if n % p == 0 {
                continue;
            }
            let f = charpoly(&s.hecke_matrix(p).unwrap().matrix).unwrap().squarefree_part().unwrap();
            let seq = SturmSequence::new(&f).unwrap();
            assert_eq!(seq.real_root_count(), f.degree().unwrap(), "N={n} p={p}");
            let lo = QuadRingElem::new(0, -2, p as i64).unwrap();
            let hi = QuadRingElem::new(0, 2, p as i64).unwrap();
            assert_eq!(sturm_count(&f, &lo, &hi).unwrap(), f.degree().unwrap(), "N={n} p={p}");
        }
    }
}

#[test]
fn old_and_new_parts_fill_the_space() {
    for (n, p) in [(11u64, 2u64), (11, 3), (14, 3), (23, 2), (15, 2), (13, 3)] {
        let low = build_space(n).unwrap();
        let high = build_space(n * p).unwrap();
        let old = old_subspace(&low, &high).unwrap();
        let new = p_new_subspace(&high, &low).unwrap();
        assert_eq!(old.cols(), 2 * low.plus_dim(), "N={n} p={p}");
        assert_eq!(old.cols() + new.cols(), high.plus_dim());
        assert_eq!(old.hstack(&new).unwrap().rank(), high.plus_dim(), "sum is direct");
    }
}

#[test]
fn degeneracy_images_span_level_22() {
    let s11 = build_space(11).unwrap();
    let s22 = build_space(22).unwrap();
    let e1 = degeneracy_old_embedding(&s11, &s22, 1).unwrap();
    let e2 = degeneracy_old_embedding(&s11, &s22, 2).unwrap();
    assert_eq!(e1.hstack(&e2).unwrap().rank(), 2);
    let s13 = build_space(13).unwrap();
    let s26 = build_space(26).unwrap();
    assert_eq!(old_subspace(&s13, &s26).unwrap().cols(), 0);
}

#[test]
fn degeneracy_maps_intertwine_hecke_away_from_level() {
    let low = build_space(11).unwrap();
    let high = build_space(33).unwrap();
    for d in [1u64, 3] {
        let e = degeneracy_old_embedding(&low, &high, d).unwrap();
        for l in [2u64, 5, 7] {
            let lhs = &*high.hecke_matrix(l).unwrap().matrix * &e;
            let rhs = &e * &*low.hecke_matrix(l).unwrap().matrix;
            assert_eq!(lhs, rhs, "d={d} l={l}");
        }
    }
}

#[test]
fn p1_sizes_match_index_formula() {
    for n in 1..=150u64 {
        assert_eq!(p1_list(n).unwrap().len() as u64, gamma0_index(n));
    }
    assert!(is_prime(11));
}
