//! Genus of X0(N) from the index, elliptic points and cusps.

use super::cusps::cusp_count;
use super::p1::p1_count;
use crate::arith::factor;

/// Index of Γ0(N) in SL2(Z).
pub fn gamma0_index(n: u64) -> u64 {
    p1_count(n)
}

fn elliptic_count(n: u64, legendre: impl Fn(u64) -> i64, square: u64) -> i64 {
    if n % square == 0 {
        return 0;
    }
    factor(n).iter().map(|&(l, _)| 1 + legendre(l)).product()
}

/// Elliptic points of order 2.
pub fn nu2(n: u64) -> i64 {
    elliptic_count(n, |l| match l {
        2 => 0,
        _ if l % 4 == 1 => 1,
        _ => -1,
    }, 4)
}

/// Elliptic points of order 3.
pub fn nu3(n: u64) -> i64 {
    elliptic_count(n, |l| match l {
        3 => 0,
        _ if l % 3 == 1 => 1,
        _ => -1,
    }, 9)
}

/// `g = 1 + mu/12 - nu2/4 - nu3/3 - cusps/2`.
pub fn genus_x0(n: u64) -> u64 {
    let twelve_g = 12 + gamma0_index(n) as i64 - 3 * nu2(n) - 4 * nu3(n) - 6 * cusp_count(n) as i64;
    debug_assert!(twelve_g >= 0 && twelve_g % 12 == 0);
    (twelve_g / 12) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_genera() {
        assert_eq!(genus_x0(1), 0);
        assert_eq!(genus_x0(11), 1);
        assert_eq!(genus_x0(13), 0);
        assert_eq!(genus_x0(22), 2);
        assert_eq!(genus_x0(23), 2);
        assert_eq!(genus_x0(37), 2);
        assert_eq!(genus_x0(100), 7);
        // genus-zero levels
        for n in [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25] {
            assert_eq!(genus_x0(n), 0, "N={n}");
        }
    }

    #[test]
    fn level_eleven_parts() {
        assert_eq!(gamma0_index(11), 12);
        assert_eq!((nu2(11), nu3(11)), (0, 0));
        assert_eq!(cusp_count(11), 2);
    }
}
