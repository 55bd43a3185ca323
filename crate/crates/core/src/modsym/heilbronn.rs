//! Heilbronn matrices: the set of integer matrices `[[a, b], [c, d]]` with
//! `ad - bc = n`, `a > b >= 0`, `d > c >= 0`. Summing the right action of
//! this set on Manin symbols gives T_n for every n, including n sharing
//! factors with the level.

/// `(a, b, c, d)` for each matrix, in a fixed enumeration order.
pub fn heilbronn(n: u64) -> Vec<[i64; 4]> {
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        let q = n / a;
        if q * a == n {
            let d = q;
            for b in 0..a {
                out.push([a, b, 0, d]);
            }
            for c in 1..d {
                out.push([a, 0, c, d]);
            }
        }
        for d in q + 1..=n {
            let bc = a * d - n;
            for c in bc / a + 1..d {
                if bc % c == 0 {
                    out.push([a, bc / c, c, d]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_agrees() {
        for n in 1..25i64 {
            let mut brute = Vec::new();
            for a in 1..=n {
                for b in 0..a {
                    for d in 1..=n {
                        for c in 0..d {
                            if a * d - b * c == n {
                                brute.push([a, b, c, d]);
                            }
                        }
                    }
                }
            }
            let mut fast = heilbronn(n as u64);
            brute.sort();
            fast.sort();
            assert_eq!(fast, brute, "n={n}");
        }
    }

    #[test]
    fn n_one_is_identity() {
        assert_eq!(heilbronn(1), vec![[1, 0, 0, 1]]);
    }
}
