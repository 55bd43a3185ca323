//! Semi-simplicity of T_p: Eichler polynomial simple-root tests, the
//! old-part block matrices, strict Ramanujan bounds and per-level
//! certificates.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::arith::is_prime;
use crate::exactlin::{
    charpoly, is_squarefree, minpoly, Endpoint, QuadRingElem, RatMatrix, RatPoly, Rational, SturmSequence,
};
use crate::error::{Error, Result};
use crate::modsym::{degeneracy_old_embedding, old_subspace, p_new_subspace, restrict, ModSymSpace, SpaceStore};

/// Local data at p of one eigenform: `a_p` and `eps(p)` are residues
/// modulo `field_minpoly`, which defines the coefficient algebra K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewformDatum {
    #[serde(rename = "N")]
    pub level: u64,
    #[serde(rename = "k")]
    pub weight: u64,
    #[serde(rename = "p")]
    pub prime: u64,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub field_minpoly: RatPoly,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub a_p: RatPoly,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub eps_p: RatPoly,
}

impl NewformDatum {
    /// Validates the datum and reduces `a_p`, `eps_p` modulo the (monic)
    /// field polynomial. Weight 1 is accepted here; certification rejects it.
    pub fn new(level: u64, weight: u64, prime: u64, field_minpoly: RatPoly, a_p: RatPoly, eps_p: RatPoly) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidLevel(0));
        }
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if level % prime == 0 {
            return Err(Error::InvalidInput(format!("p = {prime} divides N = {level}")));
        }
        if weight == 0 {
            return Err(Error::InvalidInput("weight must be positive".into()));
        }
        if field_minpoly.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput("field polynomial must be nonconstant".into()));
        }
        if !is_squarefree(&field_minpoly)?.squarefree {
            return Err(Error::InvalidInput("field polynomial must be squarefree".into()));
        }
        let f = field_minpoly.monic();
        let a_p = a_p.rem(&f)?;
        let eps_p = eps_p.rem(&f)?;
        if RatPoly::resultant(&f, &eps_p).is_zero() {
            return Err(Error::InvalidInput("eps(p) is not a unit".into()));
        }
        Ok(NewformDatum { level, weight, prime, field_minpoly: f, a_p, eps_p })
    }

    /// Datum with `K = Q`.
    pub fn rational(level: u64, weight: u64, prime: u64, a_p: i64, eps_p: i64) -> Result<Self> {
        Self::new(level, weight, prime, RatPoly::x(), RatPoly::from_i64(&[a_p]), RatPoly::from_i64(&[eps_p]))
    }

    /// Degree of K over Q.
    pub fn field_degree(&self) -> usize {
        self.field_minpoly.degree().unwrap_or(0)
    }

    /// `p^(k-1)`.
    pub fn det_power(&self) -> BigInt {
        BigInt::from(self.prime).pow(self.weight as u32 - 1)
    }
}

/// `x^2 + c1 x + c0` with coefficients in K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EichlerPoly {
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub c0: RatPoly,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub c1: RatPoly,
}

impl EichlerPoly {
    /// The rational polynomial, when K = Q (coefficients are constants).
    pub fn over_q(&self) -> Option<RatPoly> {
        if !self.c0.is_constant() || !self.c1.is_constant() {
            return None;
        }
        Some(RatPoly::new(vec![self.c0.coeff(0), self.c1.coeff(0), Rational::one()]))
    }
}

fn mul_mod(a: &RatPoly, b: &RatPoly, f: &RatPoly) -> RatPoly {
    (a * b).rem(f).expect("field polynomial is nonzero")
}

/// `x^2 - a_p x + eps(p) p^(k-1)`, coefficients reduced in K.
pub fn eichler_poly(d: &NewformDatum) -> Result<EichlerPoly> {
    if d.weight < 2 {
        return Err(Error::OutOfScope("weight 1 has no Eichler polynomial check".into()));
    }
    let f = &d.field_minpoly;
    let c0 = d.eps_p.scale(&Rational::from_integer(d.det_power())).rem(f)?;
    Ok(EichlerPoly { c0, c1: (-&d.a_p).rem(f)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EichlerCheck {
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub a_p: RatPoly,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub eps_p: RatPoly,
    /// `a_p^2 - 4 eps(p) p^(k-1)` in K.
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub delta: RatPoly,
    /// Norm of `delta` from K to Q (a resultant with the field polynomial).
    #[serde(serialize_with = "crate::exactlin::serde_rat")]
    pub delta_norm: Rational,
    pub simple_roots: bool,
}

/// Simple roots of the Eichler polynomial in every factor of K, decided by
/// the norm of its discriminant.
pub fn eichler_simple_roots(d: &NewformDatum) -> Result<EichlerCheck> {
    if d.weight < 2 {
        return Err(Error::OutOfScope("weight 1".into()));
    }
    let f = &d.field_minpoly;
    let four_eps_q = d.eps_p.scale(&Rational::from_integer(d.det_power() * 4));
    let delta = (&mul_mod(&d.a_p, &d.a_p, f) - &four_eps_q).rem(f)?;
    let delta_norm = RatPoly::resultant(f, &delta);
    Ok(EichlerCheck { a_p: d.a_p.clone(), eps_p: d.eps_p.clone(), delta, simple_roots: !delta_norm.is_zero(), delta_norm })
}

fn check_commuting_square(a: &RatMatrix, b: &RatMatrix) -> Result<usize> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch("block inputs differ in size".into()));
    }
    if a.checked_mul(b)? != b.checked_mul(a)? {
        return Err(Error::InvalidInput("T_p and the diamond operator must commute".into()));
    }
    Ok(n)
}

fn power_of(p: u64, k: u64) -> Rational {
    Rational::from_integer(BigInt::from(p).pow(k as u32 - 1))
}

/// `[[T_p, I], [-p^(k-1) <p>, 0]]`: T_p on the two copies of a level-N
/// space inside the p-old part of level pN.
pub fn build_pold_block(tp: &RatMatrix, diamond_p: &RatMatrix, k: u64, p: u64) -> Result<RatMatrix> {
    let n = check_commuting_square(tp, diamond_p)?;
    let lower = diamond_p.scale(&-power_of(p, k));
    RatMatrix::from_blocks(&[
        vec![tp.clone(), RatMatrix::identity(n)],
        vec![lower, RatMatrix::zeros(n, n)],
    ])
}

/// The two blocks for p^2 dividing the level: `[[T_p, I, 0], [-p^(k-1)<p>, 0, I], [0, 0, 0]]`
/// on three copies of the level-N space and `[[U_p, I], [0, 0]]` on two
/// copies of the p-new part of level pN.
pub fn build_p2old_blocks(
    tp_n: &RatMatrix,
    diamond_p: &RatMatrix,
    tp_pnew: &RatMatrix,
    k: u64,
    p: u64,
) -> Result<(RatMatrix, RatMatrix)> {
    let n = check_commuting_square(tp_n, diamond_p)?;
    let m = tp_pnew.require_square()?;
    let (z, id) = (RatMatrix::zeros(n, n), RatMatrix::identity(n));
    let three = RatMatrix::from_blocks(&[
        vec![tp_n.clone(), id.clone(), z.clone()],
        vec![diamond_p.scale(&-power_of(p, k)), z.clone(), id],
        vec![z.clone(), z.clone(), z],
    ])?;
    let two = RatMatrix::from_blocks(&[
        vec![tp_pnew.clone(), RatMatrix::identity(m)],
        vec![RatMatrix::zeros(m, m), RatMatrix::zeros(m, m)],
    ])?;
    Ok((three, two))
}

/// Every real root of `f` lies strictly inside `(-2 p^((k-1)/2), 2 p^((k-1)/2))`.
/// `f` must be squarefree; endpoints are handled exactly in Z[sqrt p].
pub fn ramanujan_strict(f: &RatPoly, p: u64, k: u64) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(true);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k < 1 {
        return Err(Error::InvalidInput("weight must be positive".into()));
    }
    let e = k - 1;
    let (a, b) = if e % 2 == 0 {
        (BigInt::from(2) * BigInt::from(p).pow(e as u32 / 2), BigInt::zero())
    } else {
        (BigInt::zero(), BigInt::from(2) * BigInt::from(p).pow((e as u32 - 1) / 2))
    };
    let hi = Endpoint::Quad(QuadRingElem::new(a.clone(), b.clone(), p)?);
    let lo = Endpoint::Quad(QuadRingElem::new(-a, -b, p)?);
    let seq = SturmSequence::new(f)?;
    // (lo, hi] misses a root at lo; a root at hi is excluded explicitly
    Ok(!seq.vanishes_at(&hi) && seq.count(&lo, &hi)? == seq.real_root_count())
}

/// All roots of a squarefree `f` are real.
pub fn real_rooted(f: &RatPoly) -> Result<bool> {
    let seq = SturmSequence::new(f)?;
    Ok(seq.real_root_count() == seq.degree())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Failed,
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scope {
    #[serde(rename = "N")]
    pub level: u64,
    pub k: u64,
    pub p: u64,
}

/// One structural comparison: two polynomials that must agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCheck {
    pub name: String,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub expected: RatPoly,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub actual: RatPoly,
    pub agrees: bool,
}

impl BlockCheck {
    fn new(name: &str, expected: RatPoly, actual: RatPoly) -> Self {
        BlockCheck { name: name.into(), agrees: expected == actual, expected, actual }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimplicityCertificate {
    pub scope: Scope,
    pub verdict: Verdict,
    /// Which divisibility case of p in N was used.
    pub case: String,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub charpoly: RatPoly,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub minpoly: RatPoly,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub gcd_witness: RatPoly,
    pub block_checks: Vec<BlockCheck>,
    pub eichler: Vec<EichlerCheck>,
    pub ramanujan: Option<bool>,
    pub real_rooted: Option<bool>,
    /// Nonvanishing of det(U_p) on the p-new part, when p exactly divides N.
    pub pnew_det_nonzero: Option<bool>,
    pub note: Option<String>,
}

fn tp_on(space: &ModSymSpace, p: u64) -> Result<RatMatrix> {
    Ok((*space.hecke_matrix(p)?.matrix).clone())
}

/// Eichler checks for the eigensystems of T_p at a level prime to p,
/// with K the algebra cut out by the minimal polynomial of T_p.
pub fn eichler_from_space(space: &ModSymSpace, p: u64) -> Result<Vec<EichlerCheck>> {
    if space.plus_dim() == 0 {
        return Ok(Vec::new());
    }
    let f = minpoly(&tp_on(space, p)?)?;
    if !is_squarefree(&f)?.squarefree {
        return Ok(vec![]);
    }
    let d = NewformDatum::new(space.level(), 2, p, f, RatPoly::x(), RatPoly::one())?;
    Ok(vec![eichler_simple_roots(&d)?])
}

/// Charpoly of U_p on the p-old part of level pN compared with the block
/// built from T_p at level N (p not dividing N).
pub fn pold_block_check(low: &ModSymSpace, high: &ModSymSpace, p: u64) -> Result<BlockCheck> {
    let tp = tp_on(low, p)?;
    let block = build_pold_block(&tp, &RatMatrix::identity(tp.rows()), 2, p)?;
    let old = old_subspace(low, high)?;
    let up = restrict(&high.hecke_matrix(p)?.matrix, &old)?;
    Ok(BlockCheck::new("p-old block", charpoly(&block)?, charpoly(&up)?))
}

fn x_pow(m: usize) -> RatPoly {
    RatPoly::x().pow(m as u32)
}

/// Certify that T_p is semi-simple on the weight-2 cusp forms of level N.
pub fn certify_level(store: &SpaceStore, n: u64, k: u64, p: u64) -> Result<SemisimplicityCertificate> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k != 2 {
        return Err(Error::OutOfScope(format!("internal computation is weight 2 only (got k = {k})")));
    }
    let vp = crate::arith::valuation(n, p);
    if vp >= 3 {
        return Err(Error::OutOfScope(format!("p^3 divides N ({p}^3 | {n})")));
    }
    let space = store.get(n)?;
    let tp = tp_on(&space, p)?;
    let cp = charpoly(&tp)?;
    let mp = minpoly(&tp)?;
    let sf = is_squarefree(&mp)?;
    let mut cert = SemisimplicityCertificate {
        scope: Scope { level: n, k, p },
        verdict: Verdict::Failed,
        case: String::new(),
        charpoly: cp.clone(),
        minpoly: mp.clone(),
        gcd_witness: sf.gcd.clone(),
        block_checks: Vec::new(),
        eichler: Vec::new(),
        ramanujan: None,
        real_rooted: None,
        pnew_det_nonzero: None,
        note: None,
    };
    let g = space.plus_dim();
    match vp {
        0 => {
            cert.case = "p does not divide N".into();
            let f = cp.squarefree_part()?;
            cert.ramanujan = Some(ramanujan_strict(&f, p, 2)?);
            cert.real_rooted = Some(real_rooted(&f)?);
            cert.eichler = eichler_from_space(&space, p)?;
        }
        1 => {
            cert.case = "p exactly divides N".into();
            let low = store.get(n / p)?;
            cert.block_checks.push(pold_block_check(&low, &space, p)?);
            let new = p_new_subspace(&space, &low)?;
            let up_new = restrict(&tp, &new)?;
            cert.pnew_det_nonzero = Some(!up_new.det()?.is_zero());
            let dims = 2 * low.plus_dim() + new.cols();
            cert.block_checks.push(BlockCheck::new("dimension", x_pow(g), x_pow(dims)));
            cert.eichler = eichler_from_space(&low, p)?;
        }
        _ => {
            cert.case = "p^2 exactly divides N".into();
            let n0 = n / (p * p);
            let (s0, s1) = (store.get(n0)?, store.get(n0 * p)?);
            let tp0 = tp_on(&s0, p)?;
            // U_p on the p-new part of level N/p
            let new1 = p_new_subspace(&s1, &s0)?;
            let up1 = restrict(&tp_on(&s1, p)?, &new1)?;
            let (three, two) = build_p2old_blocks(&tp0, &RatMatrix::identity(tp0.rows()), &up1, 2, p)?;
            let from_n0 = old_subspace(&s0, &space)?;
            cert.block_checks.push(BlockCheck::new("p^2-old block", charpoly(&three)?, charpoly(&restrict(&tp, &from_n0)?)?));
            let e1 = degeneracy_old_embedding(&s1, &space, 1)?.checked_mul(&new1)?;
            let ep = degeneracy_old_embedding(&s1, &space, p)?.checked_mul(&new1)?;
            let from_new1 = e1.hstack(&ep)?;
            cert.block_checks.push(BlockCheck::new("p-new-old block", charpoly(&two)?, charpoly(&restrict(&tp, &from_new1)?)?));
            let new2 = p_new_subspace(&space, &s1)?;
            cert.block_checks.push(BlockCheck::new("new part annihilated", x_pow(new2.cols()), charpoly(&restrict(&tp, &new2)?)?));
            let dims = from_n0.cols() + from_new1.cols() + new2.cols();
            cert.block_checks.push(BlockCheck::new("dimension", x_pow(g), x_pow(dims)));
            let all = from_n0.hstack(&from_new1)?.hstack(&new2)?;
            cert.block_checks.push(BlockCheck::new("direct sum", x_pow(g), x_pow(all.rank())));
            cert.eichler = eichler_from_space(&s0, p)?;
        }
    }
    let ok = sf.squarefree
        && cert.block_checks.iter().all(|b| b.agrees)
        && cert.eichler.iter().all(|e| e.simple_roots)
        && cert.ramanujan.unwrap_or(true)
        && cert.real_rooted.unwrap_or(true)
        && cert.pnew_det_nonzero.unwrap_or(true);
    cert.verdict = if ok { Verdict::Certified } else { Verdict::Failed };
    Ok(cert)
}

/// Verdict for an externally supplied datum (any weight, any character).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumCertificate {
    pub scope: Scope,
    pub verdict: Verdict,
    pub eichler: Option<EichlerCheck>,
    pub note: String,
}

const CONDITIONAL_NOTE: &str = "Delta != 0 verified unconditionally; reading it as semi-simplicity of T_p \
for k >= 3 is conditional on semi-simplicity of crystalline Frobenius";

pub fn certify_datum(d: &NewformDatum) -> Result<DatumCertificate> {
    let scope = Scope { level: d.level, k: d.weight, p: d.prime };
    if d.weight < 2 {
        return Ok(DatumCertificate { scope, verdict: Verdict::OutOfScope, eichler: None, note: "weight 1 is out of scope".into() });
    }
    let e = eichler_simple_roots(d)?;
    let note = if d.weight == 2 { "weight 2: unconditional".to_string() } else { CONDITIONAL_NOTE.to_string() };
    Ok(DatumCertificate { scope, verdict: if e.simple_roots { Verdict::Certified } else { Verdict::Failed }, eichler: Some(e), note })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eichler_examples() {
        let d = NewformDatum::rational(11, 2, 2, -2, 1).unwrap();
        assert_eq!(eichler_poly(&d).unwrap().over_q().unwrap(), RatPoly::from_i64(&[2, 2, 1]));
        let e = eichler_simple_roots(&d).unwrap();
        assert_eq!(e.delta_norm, Rational::from_integer((-4).into()));
        assert!(e.simple_roots);
        let d = NewformDatum::rational(1, 2, 7, 0, 1).unwrap();
        assert_eq!(eichler_poly(&d).unwrap().over_q().unwrap(), RatPoly::from_i64(&[7, 0, 1]));
        let d = NewformDatum::rational(1, 12, 2, 0, 1).unwrap();
        assert_eq!(eichler_poly(&d).unwrap().over_q().unwrap(), RatPoly::from_i64(&[2048, 0, 1]));
        assert_eq!(NewformDatum::rational(1, 2, 1, 2, 1), Err(Error::NotPrime(1)));
        // a_p = 2 p^((k-1)/2) with k = 3: forced double root
        let d = NewformDatum::rational(1, 3, 3, 6, 1).unwrap();
        assert!(!eichler_simple_roots(&d).unwrap().simple_roots);
    }

    #[test]
    fn eichler_over_quadratic_field() {
        // K = Q(sqrt 2), a_2 of the level-29 form is -1 + sqrt 2 at p = 3? use a_p = x, p = 3
        let f = RatPoly::from_i64(&[-2, 0, 1]);
        let d = NewformDatum::new(29, 2, 3, f, RatPoly::x(), RatPoly::one()).unwrap();
        let e = eichler_simple_roots(&d).unwrap();
        // N(x^2 - 12) = N(2 - 12) = (-10)^2
        assert_eq!(e.delta_norm, Rational::from_integer(100.into()));
    }

    #[test]
    fn blocks() {
        let b = build_pold_block(&RatMatrix::from_i64(&[&[-2]]), &RatMatrix::identity(1), 2, 2).unwrap();
        assert_eq!(charpoly(&b).unwrap(), RatPoly::from_i64(&[2, 2, 1]));
        let empty = build_pold_block(&RatMatrix::zeros(0, 0), &RatMatrix::zeros(0, 0), 2, 2).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
        let (three, two) =
            build_p2old_blocks(&RatMatrix::from_i64(&[&[3]]), &RatMatrix::identity(1), &RatMatrix::from_i64(&[&[5]]), 4, 2).unwrap();
        // x (x^2 - 3x + 8)
        assert_eq!(charpoly(&three).unwrap(), RatPoly::from_i64(&[0, 8, -3, 1]));
        assert_eq!(minpoly(&two).unwrap(), RatPoly::from_i64(&[0, -5, 1]));
        assert!(build_pold_block(&RatMatrix::from_i64(&[&[1, 1], &[0, 1]]), &RatMatrix::from_i64(&[&[1, 0], &[1, 1]]), 2, 2).is_err());
    }

    #[test]
    fn ramanujan_examples() {
        assert!(ramanujan_strict(&RatPoly::from_i64(&[2, 1]), 2, 2).unwrap());
        // x^2 - 4p^(k-1): roots exactly on the boundary
        assert!(!ramanujan_strict(&RatPoly::from_i64(&[-8, 0, 1]), 2, 2).unwrap());
        assert!(!ramanujan_strict(&RatPoly::from_i64(&[-4 * 27, 0, 1]), 3, 4).unwrap());
        assert!(ramanujan_strict(&RatPoly::one(), 2, 2).unwrap());
        // k = 3: bound 2p is an integer
        assert!(!ramanujan_strict(&RatPoly::from_i64(&[-6, 1]), 3, 3).unwrap());
        assert!(ramanujan_strict(&RatPoly::from_i64(&[-5, 1]), 3, 3).unwrap());
    }

    #[test]
    fn certify_examples() {
        let store = SpaceStore::new(None);
        let c = certify_level(&store, 22, 2, 2).unwrap();
        assert_eq!(c.verdict, Verdict::Certified, "{c:?}");
        assert_eq!(c.block_checks[0].actual, RatPoly::from_i64(&[2, 2, 1]));
        let c = certify_level(&store, 11, 2, 3).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.ramanujan, Some(true));
        assert!(matches!(certify_level(&store, 40, 2, 2), Err(Error::OutOfScope(_))));
        let c = certify_level(&store, 44, 2, 2).unwrap();
        assert_eq!(c.verdict, Verdict::Certified, "{c:?}");
    }
}
