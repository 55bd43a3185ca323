//! Rank-2 filtered phi-modules over `Q_p (x) K` attached to eigenform data:
//! Hodge and Newton polygons, `t_N`/`t_H`, weak admissibility and the
//! contradiction that rules out a scalar Frobenius.
//!
//! All arithmetic is exact. Half-integer slopes are ordinary rationals.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::exactlin::{charpoly, RatMatrix, RatPoly, Rational};
use crate::error::{Error, Result};
use crate::semisimple::{eichler_simple_roots, EichlerCheck, NewformDatum};

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ser_rats<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_vertices<S: Serializer>(v: &[(usize, Rational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(x, y)| (x, y.to_string())))
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn valuation_q(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut v = 0i64;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    };
    Some(count(x.numer().abs()) - count(x.denom().abs()))
}

/// A lower-convex polygon starting at `(0, 0)` with integer abscissae.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polygon {
    #[serde(serialize_with = "ser_vertices")]
    vertices: Vec<(usize, Rational)>,
}

impl Polygon {
    /// Polygon with the given slopes (any order), each spanning length 1.
    pub fn from_slopes(slopes: &[Rational]) -> Self {
        let mut s = slopes.to_vec();
        s.sort();
        let mut vertices = vec![(0usize, Rational::zero())];
        let mut y = Rational::zero();
        for (i, m) in s.iter().enumerate() {
            y += m;
            let last_slope_same = i + 1 < s.len() && s[i + 1] == *m;
            if !last_slope_same {
                vertices.push((i + 1, y.clone()));
            }
        }
        Polygon { vertices }
    }

    /// Lower convex hull of the finite points, which must include `x = 0`
    /// and the largest abscissa.
    pub fn lower_hull(points: &[(usize, Option<Rational>)]) -> Result<Self> {
        let pts: Vec<(usize, Rational)> = points.iter().filter_map(|(x, y)| y.clone().map(|y| (*x, y))).collect();
        let max_x = points.iter().map(|p| p.0).max().unwrap_or(0);
        if pts.first().map(|p| p.0) != Some(0) || pts.last().map(|p| p.0) != Some(max_x) {
            return Err(Error::InvalidInput("polygon endpoints must be finite".into()));
        }
        let mut hull: Vec<(usize, Rational)> = Vec::new();
        for pt in pts {
            while hull.len() >= 2 {
                let (x1, y1) = &hull[hull.len() - 2];
                let (x2, y2) = &hull[hull.len() - 1];
                // drop the middle point when it is on or above the chord
                let lhs = (y2 - y1) * rat((pt.0 - x1) as i64);
                let rhs = (&pt.1 - y1) * rat((x2 - x1) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let y0 = hull[0].1.clone();
        if !y0.is_zero() {
            return Err(Error::InvalidInput("polygon must start at height 0".into()));
        }
        Ok(Polygon { vertices: hull })
    }

    pub fn vertices(&self) -> &[(usize, Rational)] {
        &self.vertices
    }

    pub fn length(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.0)
    }

    pub fn endpoint(&self) -> Rational {
        self.vertices.last().map_or_else(Rational::zero, |v| v.1.clone())
    }

    /// Slopes with multiplicity, nondecreasing.
    pub fn slopes(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for w in self.vertices.windows(2) {
            let len = w[1].0 - w[0].0;
            let m = (&w[1].1 - &w[0].1) / rat(len as i64);
            out.extend(std::iter::repeat(m).take(len));
        }
        out
    }

    /// Height at abscissa `x` (piecewise linear).
    pub fn at(&self, x: &Rational) -> Result<Rational> {
        for w in self.vertices.windows(2) {
            let (x0, x1) = (rat(w[0].0 as i64), rat(w[1].0 as i64));
            if *x >= x0 && *x <= x1 {
                return Ok(&w[0].1 + (&w[1].1 - &w[0].1) * (x - &x0) / (x1 - x0));
            }
        }
        if self.vertices.len() == 1 && x.is_zero() {
            return Ok(Rational::zero());
        }
        Err(Error::InvalidInput(format!("abscissa {x} outside the polygon")))
    }
}

/// Newton polygon on or above the Hodge polygon at every vertex of either.
pub fn polygon_above(newton: &Polygon, hodge: &Polygon) -> Result<bool> {
    if newton.length() != hodge.length() {
        return Err(Error::DimensionMismatch(format!("polygon lengths {} and {}", newton.length(), hodge.length())));
    }
    let mut xs: Vec<usize> = newton.vertices.iter().chain(&hodge.vertices).map(|v| v.0).collect();
    xs.sort_unstable();
    xs.dedup();
    for x in xs {
        let x = rat(x as i64);
        if newton.at(&x)? < hodge.at(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Valuation of `a_p` in one factor of `Q_p (x) K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorValuation {
    /// Local degree of the factor.
    pub degree: usize,
    /// `None` when `a_p` vanishes in this factor.
    pub v_ap: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PhiData {
    Exact { field_minpoly: RatPoly, a_p: RatPoly, c0: RatPoly },
    Valuations(Vec<FactorValuation>),
}

/// Frobenius `x^2 - a_p x + eps(p) p^(k-1)` over `Q_p (x) K` with Hodge
/// jumps `{0, k-1}`, each of multiplicity `[K:Q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredPhiModule {
    weight: u64,
    degree: usize,
    prime: u64,
    data: PhiData,
    hints: Option<Vec<FactorValuation>>,
}

fn mult_matrix(a: &RatPoly, f: &RatPoly) -> Result<RatMatrix> {
    let d = f.degree().unwrap_or(0);
    let mut cols = Vec::with_capacity(d);
    let mut xi = RatPoly::one();
    for _ in 0..d {
        let c = (a * &xi).rem(f)?;
        cols.push((0..d).map(|i| c.coeff(i)).collect());
        xi = (&xi * &RatPoly::x()).rem(f)?;
    }
    RatMatrix::from_columns(d, &cols)
}

fn factor_slopes(k: u64, fv: &FactorValuation) -> Vec<Rational> {
    let half = Rational::new((k - 1).into(), 2.into());
    let (lo, hi) = match &fv.v_ap {
        Some(v) if *v < half => (v.clone(), rat(k as i64 - 1) - v),
        _ => (half.clone(), half),
    };
    let mut out = vec![lo; fv.degree];
    out.extend(vec![hi; fv.degree]);
    out
}

impl FilteredPhiModule {
    /// Module of an eigenform datum, from its exact coefficients in K.
    pub fn from_datum(d: &NewformDatum) -> Result<Self> {
        if d.weight < 2 {
            return Err(Error::OutOfScope("weight 1: no Hodge-Tate weights to separate".into()));
        }
        let f = d.field_minpoly.clone();
        let c0 = d.eps_p.scale(&Rational::from_integer(d.det_power())).rem(&f)?;
        let m = FilteredPhiModule {
            weight: d.weight,
            degree: d.field_degree(),
            prime: d.prime,
            data: PhiData::Exact { field_minpoly: f, a_p: d.a_p.clone(), c0 },
            hints: None,
        };
        let tn = m.t_n()?;
        if tn != m.t_h() {
            return Err(Error::InvalidInput(format!("det phi has valuation {tn}, expected {}", m.t_h())));
        }
        Ok(m)
    }

    /// Module described only by the valuation of `a_p` in each factor.
    pub fn from_valuations(weight: u64, prime: u64, factors: Vec<FactorValuation>) -> Result<Self> {
        if weight < 2 {
            return Err(Error::OutOfScope("weight 1: no Hodge-Tate weights to separate".into()));
        }
        if factors.is_empty() || factors.iter().any(|f| f.degree == 0) {
            return Err(Error::InvalidInput("factor degrees must be positive".into()));
        }
        if factors.iter().any(|f| f.v_ap.as_ref().is_some_and(|v| v.is_negative())) {
            return Err(Error::InvalidInput("a_p must be integral".into()));
        }
        let degree = factors.iter().map(|f| f.degree).sum();
        Ok(FilteredPhiModule { weight, degree, prime, data: PhiData::Valuations(factors), hints: None })
    }

    /// Attach per-factor valuation hints; they must reproduce the slopes
    /// computed from the exact data.
    pub fn with_hints(mut self, hints: Vec<FactorValuation>) -> Result<Self> {
        let from_hints = FilteredPhiModule::from_valuations(self.weight, self.prime, hints.clone())?;
        if from_hints.degree != self.degree || from_hints.newton_polygon()? != self.newton_polygon()? {
            return Err(Error::InvalidInput("valuation hints disagree with the exact Frobenius data".into()));
        }
        self.hints = Some(hints);
        Ok(self)
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn hints(&self) -> Option<&[FactorValuation]> {
        self.hints.as_deref()
    }

    /// Characteristic polynomial over `Q_p` of Frobenius viewed as a
    /// `Q`-linear map of `K^2` (exact data only).
    pub fn phi_charpoly(&self) -> Result<Option<RatPoly>> {
        let PhiData::Exact { field_minpoly, a_p, c0 } = &self.data else { return Ok(None) };
        let d = self.degree;
        let (z, id) = (RatMatrix::zeros(d, d), RatMatrix::identity(d));
        let phi = RatMatrix::from_blocks(&[
            vec![z, -&mult_matrix(c0, field_minpoly)?],
            vec![id, mult_matrix(a_p, field_minpoly)?],
        ])?;
        Ok(Some(charpoly(&phi)?))
    }

    /// Slopes 0 and k-1, each with multiplicity `[K:Q]`.
    pub fn hodge_polygon(&self) -> Polygon {
        let mut s = vec![Rational::zero(); self.degree];
        s.extend(vec![rat(self.weight as i64 - 1); self.degree]);
        Polygon::from_slopes(&s)
    }

    /// Lower hull of `(i, v_p(c_{2d-i}))` for the Frobenius charpoly
    /// `sum c_j x^j`, or the per-factor slopes for valuation data.
    pub fn newton_polygon(&self) -> Result<Polygon> {
        match &self.data {
            PhiData::Valuations(fs) => {
                let slopes: Vec<Rational> = fs.iter().flat_map(|f| factor_slopes(self.weight, f)).collect();
                Ok(Polygon::from_slopes(&slopes))
            }
            PhiData::Exact { .. } => {
                let cp = self.phi_charpoly()?.expect("exact data");
                let n = 2 * self.degree;
                let pts: Vec<(usize, Option<Rational>)> =
                    (0..=n).map(|i| (i, valuation_q(&cp.coeff(n - i), self.prime).map(rat))).collect();
                Polygon::lower_hull(&pts)
            }
        }
    }

    /// Valuation of det phi.
    pub fn t_n(&self) -> Result<Rational> {
        match &self.data {
            PhiData::Valuations(_) => Ok(rat(self.degree as i64 * (self.weight as i64 - 1))),
            PhiData::Exact { .. } => {
                let cp = self.phi_charpoly()?.expect("exact data");
                let v = valuation_q(&cp.coeff(0), self.prime)
                    .ok_or_else(|| Error::InvalidInput("Frobenius is not invertible".into()))?;
                Ok(rat(v))
            }
        }
    }

    /// Sum of the Hodge jumps.
    pub fn t_h(&self) -> Rational {
        rat(self.degree as i64 * (self.weight as i64 - 1))
    }
}

/// A phi-stable sub-`Q_p`-space of dimension `dim`, on which Frobenius has
/// slope `slope`, meeting the filtration in degree `fil_level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubobjectDescriptor {
    pub label: String,
    pub dim: usize,
    #[serde(serialize_with = "crate::exactlin::serde_rat")]
    pub slope: Rational,
    pub fil_level: u64,
}

impl SubobjectDescriptor {
    pub fn t_n(&self) -> Rational {
        rat(self.dim as i64) * &self.slope
    }

    pub fn t_h(&self) -> Rational {
        rat(self.dim as i64 * self.fil_level as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    #[serde(serialize_with = "crate::exactlin::serde_rat")]
    pub t_n: Rational,
    #[serde(serialize_with = "crate::exactlin::serde_rat")]
    pub t_h: Rational,
    pub endpoint_equal: bool,
    pub newton_above_hodge: bool,
    /// Largest `t_H - t_N` over the listed subobjects.
    #[serde(serialize_with = "crate::exactlin::serde_rat")]
    pub worst_excess: Rational,
    pub offender: Option<String>,
    pub admissible: bool,
}

/// Weak admissibility: `t_N = t_H` on the module, `t_H <= t_N` on every
/// listed subobject, and the Newton polygon on or above the Hodge polygon.
pub fn weak_admissibility_check(m: &FilteredPhiModule, subobjects: &[SubobjectDescriptor]) -> Result<AdmissibilityReport> {
    let (t_n, t_h) = (m.t_n()?, m.t_h());
    let newton_above_hodge = polygon_above(&m.newton_polygon()?, &m.hodge_polygon())?;
    let mut worst_excess = Rational::zero();
    let mut offender = None;
    for s in subobjects {
        if s.dim == 0 || s.dim > 2 * m.degree() {
            return Err(Error::InvalidInput(format!("subobject `{}` has dimension {}", s.label, s.dim)));
        }
        let excess = s.t_h() - s.t_n();
        if excess > worst_excess || (offender.is_none() && excess == worst_excess && excess.is_positive()) {
            worst_excess = excess;
            offender = Some(s.label.clone());
        }
    }
    let endpoint_equal = t_n == t_h;
    Ok(AdmissibilityReport {
        admissible: endpoint_equal && newton_above_hodge && !worst_excess.is_positive(),
        t_n,
        t_h,
        endpoint_equal,
        newton_above_hodge,
        worst_excess,
        offender,
    })
}

/// The outcome of assuming Frobenius is a scalar `lambda` with
/// `lambda^2 = eps(p) p^(k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarContradiction {
    pub k: u64,
    pub d: usize,
    /// The subobject `Fil^(k-1)`, stable because every line is.
    pub subobject: SubobjectDescriptor,
    #[serde(serialize_with = "crate::exactlin::serde_rat")]
    pub t_h: Rational,
    #[serde(serialize_with = "crate::exactlin::serde_rat")]
    pub t_n: Rational,
    pub violated: bool,
}

pub fn scalar_contradiction(k: u64, d: usize) -> Result<ScalarContradiction> {
    if k < 2 {
        return Err(Error::OutOfScope(format!("weight {k}: a scalar Frobenius is not contradictory")));
    }
    if d == 0 {
        return Err(Error::InvalidInput("coefficient degree must be positive".into()));
    }
    let subobject = SubobjectDescriptor {
        label: format!("Fil^{}", k - 1),
        dim: d,
        slope: Rational::new((k - 1).into(), 2.into()),
        fil_level: k - 1,
    };
    let (t_h, t_n) = (subobject.t_h(), subobject.t_n());
    Ok(ScalarContradiction { k, d, violated: t_h > t_n, subobject, t_h, t_n })
}

/// Every line is stable under a scalar Frobenius, so `Fil^(k-1)` is a
/// subobject; this is the module-level check of that fixture.
pub fn scalar_fixture_check(k: u64, d: usize) -> Result<AdmissibilityReport> {
    let sc = scalar_contradiction(k, d)?;
    let half = Some(Rational::new((k - 1).into(), 2.into()));
    // a scalar Frobenius has a double root of valuation (k-1)/2 in every factor
    let m = FilteredPhiModule::from_valuations(k, 2, vec![FactorValuation { degree: d, v_ap: half }])?;
    weak_admissibility_check(&m, &[sc.subobject])
}

/// A repeated Eichler root forces a scalar Frobenius on the factors where
/// the discriminant vanishes (given semi-simplicity), which the scalar
/// contradiction excludes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarChain {
    pub eichler: EichlerCheck,
    /// Degree of the part of K where the discriminant vanishes.
    pub degenerate_degree: usize,
    pub contradiction: Option<ScalarContradiction>,
    /// `true` when the datum is consistent with coming from a newform.
    pub consistent: bool,
}

pub fn scalar_chain(d: &NewformDatum) -> Result<ScalarChain> {
    let eichler = eichler_simple_roots(d)?;
    let g = RatPoly::gcd(&d.field_minpoly, &eichler.delta);
    let degenerate_degree = if eichler.delta.is_zero() { d.field_degree() } else { g.degree().unwrap_or(0) };
    let contradiction = if degenerate_degree > 0 { Some(scalar_contradiction(d.weight, degenerate_degree)?) } else { None };
    Ok(ScalarChain { consistent: contradiction.is_none(), eichler, degenerate_degree, contradiction })
}

/// Everything the polygon command reports for one datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonReport {
    pub datum: NewformDatum,
    pub hodge: Polygon,
    pub newton: Polygon,
    #[serde(serialize_with = "ser_rats")]
    pub hodge_slopes: Vec<Rational>,
    #[serde(serialize_with = "ser_rats")]
    pub newton_slopes: Vec<Rational>,
    pub admissibility: AdmissibilityReport,
    pub scalar: ScalarContradiction,
    pub chain: ScalarChain,
}

pub fn polygon_report(d: &NewformDatum, hints: Option<Vec<FactorValuation>>) -> Result<PolygonReport> {
    let mut m = FilteredPhiModule::from_datum(d)?;
    if let Some(h) = hints {
        m = m.with_hints(h)?;
    }
    let (hodge, newton) = (m.hodge_polygon(), m.newton_polygon()?);
    Ok(PolygonReport {
        datum: d.clone(),
        hodge_slopes: hodge.slopes(),
        newton_slopes: newton.slopes(),
        admissibility: weak_admissibility_check(&m, &[])?,
        scalar: scalar_contradiction(d.weight, m.degree())?,
        chain: scalar_chain(d)?,
        hodge,
        newton,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn vx(v: &[(usize, i64)]) -> Vec<(usize, Rational)> {
        v.iter().map(|&(x, y)| (x, rat(y))).collect()
    }

    #[test]
    fn hodge_polygons() {
        let m = FilteredPhiModule::from_valuations(2, 2, vec![FactorValuation { degree: 1, v_ap: Some(rat(0)) }]).unwrap();
        assert_eq!(m.hodge_polygon().vertices(), vx(&[(0, 0), (1, 0), (2, 1)]));
        let m = FilteredPhiModule::from_valuations(12, 2, vec![FactorValuation { degree: 1, v_ap: None }]).unwrap();
        assert_eq!(m.hodge_polygon().vertices(), vx(&[(0, 0), (1, 0), (2, 11)]));
        let m = FilteredPhiModule::from_valuations(2, 3, vec![FactorValuation { degree: 2, v_ap: None }]).unwrap();
        assert_eq!(m.hodge_polygon().vertices(), vx(&[(0, 0), (2, 0), (4, 2)]));
    }

    #[test]
    fn newton_polygons() {
        let ord = FilteredPhiModule::from_datum(&NewformDatum::rational(11, 2, 3, -1, 1).unwrap()).unwrap();
        assert_eq!(ord.newton_polygon().unwrap().slopes(), vec![rat(0), rat(1)]);
        let ss = FilteredPhiModule::from_datum(&NewformDatum::rational(11, 2, 2, -2, 1).unwrap()).unwrap();
        assert_eq!(ss.newton_polygon().unwrap().slopes(), vec![r(1, 2), r(1, 2)]);
        let delta = FilteredPhiModule::from_datum(&NewformDatum::rational(1, 12, 2, -24, 1).unwrap()).unwrap();
        assert_eq!(delta.newton_polygon().unwrap().slopes(), vec![rat(3), rat(8)]);
        // valuation-only description gives the same polygon
        let v = FilteredPhiModule::from_valuations(12, 2, vec![FactorValuation { degree: 1, v_ap: Some(rat(3)) }]).unwrap();
        assert_eq!(v.newton_polygon().unwrap(), delta.newton_polygon().unwrap());
    }

    #[test]
    fn quadratic_field_polygon_uses_norms() {
        // K = Q(sqrt 5), a_p = sqrt 5 at p = 5: v(a_p) = 1/2 in the ramified factor
        let d = NewformDatum::new(1, 4, 5, RatPoly::from_i64(&[-5, 0, 1]), RatPoly::x(), RatPoly::one()).unwrap();
        let m = FilteredPhiModule::from_datum(&d).unwrap();
        assert_eq!(m.newton_polygon().unwrap().slopes(), vec![r(1, 2), r(1, 2), r(5, 2), r(5, 2)]);
        assert_eq!(m.t_n().unwrap(), rat(6));
        let hinted = m.clone().with_hints(vec![FactorValuation { degree: 2, v_ap: Some(r(1, 2)) }]);
        assert!(hinted.is_ok());
        assert!(m.with_hints(vec![FactorValuation { degree: 2, v_ap: Some(rat(0)) }]).is_err());
    }

    #[test]
    fn t_values() {
        let m = FilteredPhiModule::from_datum(&NewformDatum::rational(11, 2, 3, -1, 1).unwrap()).unwrap();
        assert_eq!((m.t_n().unwrap(), m.t_h()), (rat(1), rat(1)));
        let sc = scalar_contradiction(2, 1).unwrap();
        assert_eq!((sc.t_h.clone(), sc.t_n.clone()), (rat(1), r(1, 2)));
        assert!(sc.violated);
        let sc = scalar_contradiction(12, 1).unwrap();
        assert_eq!((sc.t_h, sc.t_n), (rat(11), r(11, 2)));
        assert!(matches!(scalar_contradiction(1, 1), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn polygon_comparison() {
        let h = Polygon::from_slopes(&[rat(0), rat(1)]);
        assert!(polygon_above(&h, &h).unwrap());
        assert!(polygon_above(&Polygon::from_slopes(&[r(1, 2), r(1, 2)]), &h).unwrap());
        assert!(!polygon_above(&Polygon::from_slopes(&[rat(-1), rat(2)]), &h).unwrap());
        assert!(polygon_above(&Polygon::from_slopes(&[rat(0)]), &h).is_err());
    }

    #[test]
    fn admissibility() {
        let m = FilteredPhiModule::from_datum(&NewformDatum::rational(11, 2, 3, -1, 1).unwrap()).unwrap();
        let unit = SubobjectDescriptor { label: "unit root".into(), dim: 1, slope: rat(0), fil_level: 0 };
        let other = SubobjectDescriptor { label: "slope 1".into(), dim: 1, slope: rat(1), fil_level: 1 };
        let rep = weak_admissibility_check(&m, &[unit, other]).unwrap();
        assert!(rep.admissible);
        assert_eq!(rep.worst_excess, rat(0));
        let bad = scalar_fixture_check(2, 1).unwrap();
        assert!(!bad.admissible);
        assert_eq!(bad.offender.as_deref(), Some("Fil^1"));
        assert_eq!(bad.worst_excess, r(1, 2));
    }

    #[test]
    fn chain_flags_double_roots() {
        let genuine = NewformDatum::rational(11, 2, 2, -2, 1).unwrap();
        assert!(scalar_chain(&genuine).unwrap().consistent);
        let fixture = NewformDatum::rational(1, 3, 3, 6, 1).unwrap();
        let c = scalar_chain(&fixture).unwrap();
        assert!(!c.consistent);
        assert_eq!(c.degenerate_degree, 1);
        assert!(c.contradiction.unwrap().violated);
    }

    #[test]
    fn report_serializes_exact_strings() {
        let rep = polygon_report(&NewformDatum::rational(1, 12, 2, 0, 1).unwrap(), None).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"11/2\""), "{json}");
    }
}
