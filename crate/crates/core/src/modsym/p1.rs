//! The projective line over Z/NZ, which indexes weight-2 Manin symbols.

use crate::arith::{factor, gcd};
use crate::error::{Error, Result};

/// A point `(c : d)` of P¹(Z/NZ) in canonical form: the lexicographically
/// smallest pair in its orbit under scaling by units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct P1Element {
    pub c: u64,
    pub d: u64,
}

const NONE: u32 = u32::MAX;

/// All of P¹(Z/NZ) with an O(1) lookup from any pair to its class.
#[derive(Clone, Debug)]
pub struct P1List {
    level: u64,
    elems: Vec<P1Element>,
    table: Vec<u32>,
}

impl P1List {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLevel(0));
        }
        if n > 1 << 15 {
            return Err(Error::InvalidInput(format!("level {n} is too large for a dense P1 table")));
        }
        let ni = n as i64;
        let units: Vec<u64> = (0..n).filter(|&u| gcd(u as i64, ni) == 1).collect();
        let mut table = vec![NONE; (n * n) as usize];
        let mut elems = Vec::new();
        for c in 0..n {
            for d in 0..n {
                let slot = (c * n + d) as usize;
                if table[slot] != NONE || gcd(gcd(c as i64, d as i64), ni) != 1 {
                    continue;
                }
                // lexicographic scan order makes the first unseen pair the orbit minimum
                let idx = elems.len() as u32;
                elems.push(P1Element { c, d });
                for &u in &units {
                    let (uc, ud) = (u * c % n, u * d % n);
                    table[(uc * n + ud) as usize] = idx;
                }
            }
        }
        Ok(P1List { level: n, elems, table })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[P1Element] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> P1Element {
        self.elems[i]
    }

    /// Class of `(c : d)` for arbitrary integers, or `None` when
    /// `gcd(c, d, N) != 1`.
    pub fn index(&self, c: i64, d: i64) -> Option<usize> {
        let n = self.level as i64;
        let (c, d) = (c.rem_euclid(n) as u64, d.rem_euclid(n) as u64);
        let v = self.table[(c * self.level + d) as usize];
        (v != NONE).then_some(v as usize)
    }

    /// `(c : d) -> (d : -c)`.
    pub fn s_image(&self, i: usize) -> usize {
        let e = self.elems[i];
        self.index(e.d as i64, -(e.c as i64)).expect("S preserves P1")
    }

    /// `(c : d) -> (d : -c - d)`.
    pub fn tau_image(&self, i: usize) -> usize {
        let e = self.elems[i];
        self.index(e.d as i64, -(e.c as i64) - e.d as i64).expect("tau preserves P1")
    }

    /// `(c : d) -> (-c : d)`.
    pub fn star_image(&self, i: usize) -> usize {
        let e = self.elems[i];
        self.index(-(e.c as i64), e.d as i64).expect("star preserves P1")
    }
}

/// The canonical representatives of P¹(Z/NZ).
pub fn p1_list(n: u64) -> Result<Vec<P1Element>> {
    Ok(P1List::new(n)?.elems)
}

/// `N * prod_{l | N} (1 + 1/l)`, the size of P¹(Z/NZ) and the index of Γ0(N).
pub fn p1_count(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(l, _)| acc / l * (l + 1))
}
