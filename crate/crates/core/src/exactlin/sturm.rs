//! Exact real-root counting with Sturm sequences.
//!
//! Endpoints may be irrational numbers of the form `a + b*sqrt(D)`; signs
//! there are decided in `Z[sqrt(D)]` without any floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{Integer, IntPoly, RatPoly, Rational};
use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with `d` a positive non-square integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadRingElem {
    a: Integer,
    b: Integer,
    d: Integer,
}

impl QuadRingElem {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>, d: impl Into<Integer>) -> Result<Self> {
        let d = d.into();
        if !d.is_positive() {
            return Err(Error::InvalidInput(format!("radicand {d} must be positive")));
        }
        let r = d.sqrt();
        if &r * &r == d {
            return Err(Error::InvalidInput(format!("radicand {d} is a perfect square")));
        }
        Ok(QuadRingElem { a: a.into(), b: b.into(), d })
    }

    pub fn from_int(a: impl Into<Integer>, d: impl Into<Integer>) -> Result<Self> {
        Self::new(a, 0, d)
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    pub fn radicand(&self) -> &Integer {
        &self.d
    }

    /// Sign in the real embedding with `sqrt(d) > 0`.
    pub fn sign(&self) -> Ordering {
        signum_quad(&self.a, &self.b, &self.d)
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::InvalidInput(format!("radicands {} and {} differ", self.d, other.d)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(QuadRingElem { a: &self.a + &other.a, b: &self.b + &other.b, d: self.d.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(QuadRingElem { a: &self.a - &other.a, b: &self.b - &other.b, d: self.d.clone() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(QuadRingElem {
            a: &self.a * &other.a + &self.b * &other.b * &self.d,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d.clone(),
        })
    }

    pub fn neg(&self) -> Self {
        QuadRingElem { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        Ok(self.sub(other)?.sign())
    }

    /// Horner evaluation of an integer polynomial.
    pub fn eval(&self, f: &IntPoly) -> Self {
        let mut acc = QuadRingElem { a: BigInt::zero(), b: BigInt::zero(), d: self.d.clone() };
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same ring");
            acc.a += c;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * d.sqrt()
    }
}

fn signum_quad(a: &Integer, b: &Integer, d: &Integer) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    let to_ord = |s: Sign| match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    };
    if sb == Sign::NoSign {
        return to_ord(sa);
    }
    if sa == Sign::NoSign || sa == sb {
        return to_ord(sb);
    }
    // opposite signs: the term with the larger square wins
    let a2 = a * a;
    let b2d = b * b * d;
    if a2 > b2d {
        to_ord(sa)
    } else {
        to_ord(sb)
    }
}

impl fmt::Display for QuadRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

impl fmt::Debug for QuadRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadRingElem({self})")
    }
}

/// A point of the extended real line at which Sturm signs are evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    PosInf,
    Rational(Rational),
    Quad(QuadRingElem),
}

impl Endpoint {
    fn rank(&self) -> i8 {
        match self {
            Endpoint::NegInf => -1,
            Endpoint::PosInf => 1,
            _ => 0,
        }
    }

    pub fn compare(&self, other: &Endpoint) -> Result<Ordering> {
        use Endpoint::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Ok(x.cmp(y)),
            (Quad(x), Quad(y)) => x.compare(y),
            (Rational(r), Quad(q)) => Ok(cmp_rat_quad(r, q)),
            (Quad(q), Rational(r)) => Ok(cmp_rat_quad(r, q).reverse()),
            _ => Ok(self.rank().cmp(&other.rank())),
        }
    }
}

fn cmp_rat_quad(r: &Rational, q: &QuadRingElem) -> Ordering {
    // sign(u/v - a - b sqrt d) with v > 0
    let (u, v) = (r.numer(), r.denom());
    signum_quad(&(u - v * &q.a), &(-(v * &q.b)), &q.d)
}

/// Sturm sequence of a squarefree polynomial, each member scaled by a
/// positive constant to an integer polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(f: &RatPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if RatPoly::gcd(f, &f.derivative()).degree() != Some(0) {
            return Err(Error::NotSquarefree);
        }
        let mut seq = vec![positive_integral(f), positive_integral(&f.derivative())];
        let (mut prev, mut cur) = (f.clone(), f.derivative());
        while !cur.is_zero() && cur.degree() != Some(0) {
            let r = prev.rem(&cur)?;
            if r.is_zero() {
                break;
            }
            let next = -&r;
            seq.push(positive_integral(&next));
            prev = cur;
            cur = next;
        }
        seq.retain(|p| !p.is_zero());
        Ok(SturmSequence { seq })
    }

    pub fn degree(&self) -> usize {
        self.seq[0].degree().unwrap_or(0)
    }

    fn signs_at(&self, x: &Endpoint) -> Vec<Ordering> {
        self.seq
            .iter()
            .map(|p| match x {
                Endpoint::PosInf => p.lead().sign().into_ordering(),
                Endpoint::NegInf => {
                    let s = p.lead().sign().into_ordering();
                    if p.degree().unwrap_or(0) % 2 == 1 {
                        s.reverse()
                    } else {
                        s
                    }
                }
                Endpoint::Rational(r) => p.to_rat().eval(r).cmp(&Rational::zero()),
                Endpoint::Quad(q) => q.eval(p).sign(),
            })
            .collect()
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &Endpoint) -> usize {
        let signs: Vec<Ordering> = self.signs_at(x).into_iter().filter(|s| *s != Ordering::Equal).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Endpoint, b: &Endpoint) -> Result<usize> {
        if a.compare(b)? != Ordering::Less {
            return Err(Error::InvalidInput("Sturm interval needs a < b".into()));
        }
        let va = self.variations(a);
        let vb = self.variations(b);
        va.checked_sub(vb).ok_or_else(|| Error::Internal("Sturm variations increased".into()))
    }

    pub fn real_root_count(&self) -> usize {
        self.count(&Endpoint::NegInf, &Endpoint::PosInf).expect("-inf < +inf")
    }

    /// Whether `x` is a root of the underlying polynomial.
    pub fn vanishes_at(&self, x: &Endpoint) -> bool {
        self.signs_at(x)[0] == Ordering::Equal
    }
}

trait SignExt {
    fn into_ordering(self) -> Ordering;
}

impl SignExt for Sign {
    fn into_ordering(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// Multiply by a positive constant to reach a primitive integer polynomial.
fn positive_integral(f: &RatPoly) -> IntPoly {
    if f.is_zero() {
        return IntPoly::zero();
    }
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    IntPoly::new(ints.into_iter().map(|c| c / &content).collect())
}

/// Number of distinct real roots of the squarefree `f` in `(a, b]`.
pub fn sturm_count(f: &RatPoly, a: &QuadRingElem, b: &QuadRingElem) -> Result<usize> {
    SturmSequence::new(f)?.count(&Endpoint::Quad(a.clone()), &Endpoint::Quad(b.clone()))
}

/// Isolate every real root of the squarefree `f` to an interval of width
/// at most `width`, returning the interval midpoints in increasing order.
pub fn isolate_real_roots(f: &RatPoly, width: &Rational) -> Result<Vec<Rational>> {
    let sturm = SturmSequence::new(f)?;
    // Cauchy bound: every root has |x| < 1 + max|c_i / c_n|
    let lead = f.lead();
    let bound = Rational::one()
        + f.coeffs()
            .iter()
            .map(|c| (c / &lead).abs())
            .max()
            .unwrap_or_else(Rational::zero);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&Endpoint::Rational(lo.clone()), &Endpoint::Rational(hi.clone()))?;
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo <= *width {
            out.push((&lo + &hi) / Rational::from_integer(2.into()));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort();
    Ok(out)
}
