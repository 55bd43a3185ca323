//! Cusps of Γ0(N) and their equivalence.

use crate::arith::{divisors, euler_phi, gcd, inv_mod};

/// A cusp `u/v` in lowest terms with `v >= 0`; infinity is `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cusp {
    pub u: i64,
    pub v: i64,
}

impl Cusp {
    pub fn new(u: i64, v: i64) -> Self {
        assert!(u != 0 || v != 0, "0/0 is not a cusp");
        if v == 0 {
            return Cusp { u: 1, v: 0 };
        }
        let g = gcd(u, v);
        let (mut u, mut v) = (u / g, v / g);
        if v < 0 {
            u = -u;
            v = -v;
        }
        Cusp { u, v }
    }

    pub fn infinity() -> Self {
        Cusp { u: 1, v: 0 }
    }

    fn s(&self) -> i64 {
        if self.v == 0 {
            1
        } else {
            inv_mod(self.u, self.v).expect("numerator is a unit mod denominator")
        }
    }
}

/// Equivalence under Γ0(N): with `u_i s_i = 1 mod v_i`, the cusps agree iff
/// `s_1 v_2 = s_2 v_1 mod gcd(v_1 v_2, N)`.
pub fn cusps_equivalent(n: u64, a: Cusp, b: Cusp) -> bool {
    let m = gcd((a.v as i128 * b.v as i128 % n as i128) as i64, n as i64) as i128;
    let lhs = a.s() as i128 * b.v as i128 - b.s() as i128 * a.v as i128;
    lhs.rem_euclid(m) == 0
}

/// Number of cusps of X0(N): `sum_{d | N} phi(gcd(d, N/d))`.
pub fn cusp_count(n: u64) -> u64 {
    divisors(n).iter().map(|&d| euler_phi(gcd(d as i64, (n / d) as i64) as u64)).sum()
}

/// Growing list of inequivalent cusps.
#[derive(Clone, Debug)]
pub struct CuspList {
    level: u64,
    reps: Vec<Cusp>,
}

impl CuspList {
    pub fn new(level: u64) -> Self {
        CuspList { level, reps: Vec::new() }
    }

    /// Index of the class of `c`, adding a new class if needed.
    pub fn index_of(&mut self, c: Cusp) -> usize {
        if let Some(i) = self.reps.iter().position(|&r| cusps_equivalent(self.level, r, c)) {
            return i;
        }
        self.reps.push(c);
        self.reps.len() - 1
    }

    pub fn reps(&self) -> &[Cusp] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}
