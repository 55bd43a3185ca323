//! Heights of `X_0(p)`: numeric eigenforms, Petersson norms by two
//! quadrature schemes, and the discriminant bound chain.
//!
//! `h = 1/2 log|discr T| - sum_j log ||omega_j||` with
//! `||omega||^2 = (i/2) int omega ^ conj(omega) = 4 pi^2 int |f|^2 dx dy`
//! over a fundamental domain of `Gamma_0(p)`.
//!
//! The domain is `F` together with `S T^j F` for `0 <= j < p`. Since
//! `f|S (z) = +-f(z/p)/p`, the integrand pulled back to `F` is
//! `|f(z)|^2 + p^-2 sum_j |f((z+j)/p)|^2`, where every `q`-expansion is
//! evaluated at imaginary part at least `sqrt(3)/(2p)`. Above `y = Y` the
//! `x`-integral is a full period and the integral is a series in `|a_n|^2`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{Complex, DMatrix, DVector};
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisor_count, factorial, is_prime, primes_up_to};
use crate::exactlin::{charpoly, is_squarefree, isolate_real_roots, Integer, RatMatrix, RatPoly, Rational};
use crate::error::{Error, Result};
use crate::heckealg::{discriminant_report, weil_bound_squared};
use crate::modsym::{atkin_lehner, ModSymSpace, SpaceStore};

const SEED: u64 = 0x4865_6967_6874;
const MAX_TRIES: usize = 16;

/// Quadrature and truncation settings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightOptions {
    /// Target relative accuracy of each norm.
    pub tolerance: f64,
    /// Number of `q`-expansion coefficients; chosen from `tolerance` if unset.
    pub coeff_budget: Option<usize>,
    /// Gauss-Legendre order per direction (the rule is also run at twice this).
    pub gauss_order: usize,
    /// Midpoint grid size of the first Richardson level.
    pub midpoint_base: usize,
    /// Maximal number of Richardson levels (grid doubles each level).
    pub richardson_levels: usize,
    /// Traces of `T_i` are checked exactly for `i` up to this bound (capped at the budget).
    pub trace_check: usize,
}

impl Default for HeightOptions {
    fn default() -> Self {
        HeightOptions {
            tolerance: 1e-10,
            coeff_budget: None,
            gauss_order: 32,
            midpoint_base: 8,
            richardson_levels: 6,
            trace_check: 60,
        }
    }
}

/// One normalized eigenform, numerically.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenformNumeric {
    pub level: u64,
    pub index: usize,
    /// `coeffs[n]` is `a_n` for `1 <= n <= budget`; `coeffs[0]` is unused.
    #[serde(skip)]
    pub coeffs: Vec<f64>,
    /// Eigenvalue of the Atkin-Lehner involution.
    pub al_sign: i8,
    pub budget: usize,
}

impl EigenformNumeric {
    pub fn a(&self, n: usize) -> f64 {
        self.coeffs[n]
    }
}

/// The eigenforms of a prime level together with the diagnostics of their computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eigenbasis {
    pub forms: Vec<EigenformNumeric>,
    /// Coefficients of the combination of `T_l` over `primes` that was diagonalized.
    pub combination: Vec<i64>,
    pub primes: Vec<u64>,
    #[serde(serialize_with = "crate::exactlin::serde_poly")]
    pub combination_charpoly: RatPoly,
    pub min_gap: f64,
    /// Largest `|sum_j a_i(omega_j) - trace T_i|` over the checked `i`.
    pub trace_deviation: f64,
    pub traces_checked: usize,
    /// Largest `|a_i| - sigma(i) sqrt(i)` (must be nonpositive up to 1e-8).
    pub weil_excess: f64,
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn matrix_f64(m: &RatMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| to_f64(m.get(i, j)))
}

fn rayleigh(t: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    v.dot(&(t * v)) / v.dot(v)
}

/// Eigenvector of `a` for the simple eigenvalue `lambda` by inverse iteration.
fn eigenvector(a: &DMatrix<f64>, lambda: f64, shift: f64) -> Result<DVector<f64>> {
    let n = a.nrows();
    let m = a - DMatrix::identity(n, n) * (lambda + shift);
    let lu = m.lu();
    let mut v = DVector::from_fn(n, |i, _| 1.0 + (i as f64 + 1.0) / (n as f64 + 2.0));
    for _ in 0..4 {
        v = lu.solve(&v).ok_or_else(|| Error::Numeric("singular shifted matrix".into()))?;
        v /= v.norm();
    }
    let residual = (a * &v - &v * lambda).norm();
    if !(residual <= 1e-8 * (1.0 + a.norm())) {
        return Err(Error::Numeric(format!("eigenvector residual {residual:e}")));
    }
    Ok(v)
}

/// `a_n` for `n <= budget` from `a_l` at primes, with `a_p^k` at the level.
fn fill_coefficients(level: u64, at_primes: &BTreeMap<u64, f64>, budget: usize) -> Vec<f64> {
    let mut spf = vec![0usize; budget + 1];
    for i in 2..=budget {
        if spf[i] == 0 {
            for j in (i..=budget).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    let mut a = vec![0.0; budget + 1];
    if budget >= 1 {
        a[1] = 1.0;
    }
    for n in 2..=budget {
        let l = spf[n];
        let mut pk = l;
        while n % (pk * l) == 0 {
            pk *= l;
        }
        if pk != n {
            a[n] = a[pk] * a[n / pk];
        } else if pk == l {
            a[n] = at_primes[&(l as u64)];
        } else if l as u64 == level {
            a[n] = a[l] * a[n / l];
        } else {
            a[n] = a[l] * a[n / l] - l as f64 * a[n / (l * l)];
        }
    }
    a
}

/// Normalized eigenforms of the cuspidal +-space of prime level, with
/// `a_n` for `n <= budget`.
///
/// A combination of Hecke operators with squarefree characteristic
/// polynomial is diagonalized (roots isolated exactly, eigenvectors by
/// inverse iteration); `a_l` is the eigenvalue of the exact `T_l`.
pub fn eigenbasis_numeric(space: &ModSymSpace, budget: usize, trace_check: usize) -> Result<Eigenbasis> {
    let p = space.level();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = space.plus_dim();
    if g == 0 {
        return Err(Error::OutOfScope(format!("genus zero at level {p}")));
    }
    let primes: Vec<u64> = primes_up_to(20).into_iter().filter(|&l| l != p).take(4).collect();
    let ts: Vec<RatMatrix> = primes.iter().map(|&l| Ok((*space.hecke_matrix(l)?.matrix).clone())).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut chosen = None;
    for attempt in 0..MAX_TRIES {
        let coeffs: Vec<i64> = if attempt == 0 {
            (0..primes.len()).map(|i| i64::from(i == 0)).collect()
        } else {
            (0..primes.len()).map(|_| rng.gen_range(-3..=3)).collect()
        };
        let mut a = RatMatrix::zeros(g, g);
        for (c, t) in coeffs.iter().zip(&ts) {
            a = a.checked_add(&t.scale(&Rational::from_integer((*c).into())))?;
        }
        let f = charpoly(&a)?;
        if !is_squarefree(&f)?.squarefree {
            continue;
        }
        let roots: Vec<f64> = isolate_real_roots(&f, &Rational::new(1.into(), Integer::from(10u64).pow(18)))?
            .iter()
            .map(to_f64)
            .collect();
        if roots.len() != g {
            return Err(Error::Internal(format!("non-real Hecke eigenvalues at prime level {p}")));
        }
        let af = matrix_f64(&a);
        let norm = af.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
        let gap = roots.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        // eigenvalues must be separated well above rounding
        if gap.is_finite() && gap <= 10.0 * f64::EPSILON * norm.max(1.0) {
            continue;
        }
        chosen = Some((coeffs, f, roots, af, gap));
        break;
    }
    let Some((combination, cp, roots, af, gap)) = chosen else {
        return Err(Error::Numeric(format!("no separating Hecke combination at level {p}")));
    };
    let shift = if gap.is_finite() { gap * 1e-6 } else { 1e-9 };
    let vecs: Vec<DVector<f64>> = roots.iter().map(|&r| eigenvector(&af, r, shift)).collect::<Result<_>>()?;

    let w = matrix_f64(&atkin_lehner(space)?);
    let signs: Vec<i8> = vecs
        .iter()
        .map(|v| {
            let s = rayleigh(&w, v);
            if (s.abs() - 1.0).abs() > 1e-8 {
                return Err(Error::Numeric(format!("Atkin-Lehner eigenvalue {s}")));
            }
            Ok(if s > 0.0 { 1 } else { -1 })
        })
        .collect::<Result<_>>()?;

    let mut at_primes: Vec<BTreeMap<u64, f64>> = vec![BTreeMap::new(); g];
    for l in primes_up_to(budget as u64) {
        let t = matrix_f64(&space.hecke_matrix(l)?.matrix);
        for (j, v) in vecs.iter().enumerate() {
            let mut a = rayleigh(&t, v);
            if l == p {
                if (a + f64::from(signs[j])).abs() > 1e-8 {
                    return Err(Error::Internal(format!("a_p != -w at level {p}")));
                }
                a = -f64::from(signs[j]);
            }
            at_primes[j].insert(l, a);
        }
    }
    let forms: Vec<EigenformNumeric> = (0..g)
        .map(|j| EigenformNumeric {
            level: p,
            index: j,
            coeffs: fill_coefficients(p, &at_primes[j], budget),
            al_sign: signs[j],
            budget,
        })
        .collect();

    let checked = trace_check.min(budget);
    let mut trace_deviation = 0.0f64;
    for i in 1..=checked {
        let tr = space.hecke_matrix(i as u64)?.matrix.trace()?;
        if !tr.is_integer() {
            return Err(Error::Internal(format!("trace of T_{i} is not integral")));
        }
        let s: f64 = forms.iter().map(|f| f.a(i)).sum();
        let dev = (s - to_f64(&tr)).abs();
        if dev > 1e-8 || s.round() != to_f64(&tr) {
            return Err(Error::Numeric(format!("trace of T_{i}: numeric {s}, exact {tr}")));
        }
        trace_deviation = trace_deviation.max(dev);
    }
    let mut weil_excess = f64::NEG_INFINITY;
    for f in &forms {
        for i in 1..=budget {
            let excess = f.a(i).abs() - divisor_count(i as u64) as f64 * (i as f64).sqrt();
            weil_excess = weil_excess.max(excess);
        }
    }
    if weil_excess > 1e-8 {
        return Err(Error::Numeric(format!("coefficient exceeds the Weil bound by {weil_excess:e}")));
    }
    Ok(Eigenbasis {
        forms,
        combination,
        primes,
        combination_charpoly: cp,
        min_gap: gap,
        trace_deviation,
        traces_checked: checked,
        weil_excess,
    })
}

fn q_series(a: &[f64], z: Complex<f64>) -> Complex<f64> {
    let q = (Complex::new(0.0, 2.0 * PI) * z).exp();
    let mut acc = Complex::new(0.0, 0.0);
    for n in (1..a.len()).rev() {
        acc = acc * q + a[n];
    }
    acc * q
}

/// `|f(z)|^2 + p^-2 sum_j |f((z+j)/p)|^2`.
fn folded_integrand(a: &[f64], p: u64, x: f64, y: f64) -> f64 {
    let pf = p as f64;
    let mut s0 = 0.0;
    for j in 0..p {
        s0 += q_series(a, Complex::new((x + j as f64) / pf, y / pf)).norm_sqr();
    }
    q_series(a, Complex::new(x, y)).norm_sqr() + s0 / (pf * pf)
}

/// Integral of the folded integrand over `y >= top`, `|x| <= 1/2`.
fn upper_series(a: &[f64], p: u64, top: f64) -> f64 {
    let pf = p as f64;
    (1..a.len())
        .map(|n| {
            let nf = n as f64;
            a[n] * a[n] * ((-4.0 * PI * nf * top).exp() + (-4.0 * PI * nf * top / pf).exp()) / (4.0 * PI * nf)
        })
        .sum()
}

fn lower_edge(x: f64) -> f64 {
    (1.0 - x * x).sqrt()
}

/// Tensor Gauss-Legendre over `|x| <= 1/2`, `sqrt(1-x^2) <= y <= top`.
fn gauss_region(a: &[f64], p: u64, order: usize, top: f64) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(order.max(1)).expect("positive"));
    let nodes = rule.as_node_weight_pairs();
    let rows: Vec<f64> = nodes
        .par_iter()
        .map(|&(u, wu)| {
            let x = 0.5 * u;
            let (lo, len) = (lower_edge(x), top - lower_edge(x));
            let inner: f64 = nodes.iter().map(|&(v, wv)| wv * folded_integrand(a, p, x, lo + len * 0.5 * (v + 1.0))).sum();
            wu * inner * len * 0.5
        })
        .collect();
    rows.iter().sum::<f64>() * 0.5
}

/// Composite midpoint rule on an `m x m` grid over the same region.
fn midpoint_region(a: &[f64], p: u64, m: usize, top: f64) -> f64 {
    let h = 1.0 / m as f64;
    let rows: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|i| {
            let x = -0.5 + (i as f64 + 0.5) * h;
            let (lo, len) = (lower_edge(x), top - lower_edge(x));
            let inner: f64 = (0..m).map(|k| folded_integrand(a, p, x, lo + len * (k as f64 + 0.5) * h)).sum();
            inner * len * h
        })
        .collect();
    rows.iter().sum::<f64>() * h
}

/// Richardson-extrapolated midpoint rule, doubling the grid until two
/// diagonal entries agree to `tol` (relative). Returns value and the last difference.
fn richardson_region(a: &[f64], p: u64, base: usize, levels: usize, tol: f64, top: f64) -> (f64, f64) {
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut err = f64::INFINITY;
    for k in 0..levels.max(2) {
        let mut row = vec![midpoint_region(a, p, base << k, top)];
        for l in 1..=k {
            let f = 4f64.powi(l as i32);
            let prev = &table[k - 1][l - 1];
            row.push(row[l - 1] + (row[l - 1] - prev) / (f - 1.0));
        }
        table.push(row);
        if k >= 1 {
            err = (table[k][k] - table[k - 1][k - 1]).abs();
            if k >= 2 && err <= tol * table[k][k].abs() {
                break;
            }
        }
    }
    let last = table.last().expect("at least two levels");
    (last[last.len() - 1], err)
}

/// `sum_{n > budget} 2 n r^n`, which bounds the tail of `sum |a_n| r^n`.
fn tail_sum(r: f64, budget: usize) -> f64 {
    let b = budget as f64;
    2.0 * r.powf(b + 1.0) * ((b + 1.0) - b * r) / ((1.0 - r) * (1.0 - r))
}

/// Smallest budget whose truncation tail near the cusp 0 is below `target`.
pub fn budget_for(p: u64, target: f64) -> usize {
    let r = (-PI * 3f64.sqrt() / p as f64).exp();
    let mut b = 8;
    while tail_sum(r, b) > target {
        b += 8;
    }
    b
}

/// A Petersson norm `||omega||^2` by both schemes, with error terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormEstimate {
    pub norm_sq: f64,
    /// Tensor Gauss-Legendre with the series above `y = 1`.
    pub scheme_gauss: f64,
    /// Richardson midpoint up to `y = 2` with the series above.
    pub scheme_midpoint: f64,
    pub relative_difference: f64,
    pub quadrature_error: f64,
    pub truncation_bound: f64,
    /// Sum of every error term (absolute, on `||omega||^2`).
    pub error: f64,
}

/// `||omega||^2 = 4 pi^2 int |f|^2 dx dy` over `Gamma_0(p) \ H`.
pub fn petersson_norm(f: &EigenformNumeric, opts: &HeightOptions) -> Result<NormEstimate> {
    let p = f.level;
    let a = &f.coeffs;
    let scale = 4.0 * PI * PI;
    let g1 = gauss_region(a, p, opts.gauss_order, 1.0) + upper_series(a, p, 1.0);
    let g2 = gauss_region(a, p, 2 * opts.gauss_order, 1.0) + upper_series(a, p, 1.0);
    let (mid, mid_err) =
        richardson_region(a, p, opts.midpoint_base, opts.richardson_levels, opts.tolerance, 2.0);
    let mid = mid + upper_series(a, p, 2.0);
    let (r_inf, r_zero) = ((-PI * 3f64.sqrt()).exp(), (-PI * 3f64.sqrt() / p as f64).exp());
    let sup = |r: f64| (1..a.len()).map(|n| a[n].abs() * r.powi(n as i32)).sum::<f64>();
    let (t_inf, t_zero) = (tail_sum(r_inf, f.budget), tail_sum(r_zero, f.budget));
    let area = PI / 3.0;
    let trunc = area * (2.0 * sup(r_inf) * t_inf + t_inf * t_inf)
        + area / p as f64 * (2.0 * sup(r_zero) * t_zero + t_zero * t_zero);
    let quad = (g2 - g1).abs().max(mid_err);
    // floating-point floor on the summation
    let rounding = 1e-13 * g2.abs();
    let norm_sq = scale * g2;
    if !(norm_sq > 0.0) {
        return Err(Error::Numeric(format!("nonpositive Petersson norm {norm_sq}")));
    }
    let error = scale * (quad + trunc + rounding + (g2 - mid).abs());
    Ok(NormEstimate {
        norm_sq,
        scheme_gauss: norm_sq,
        scheme_midpoint: scale * mid,
        relative_difference: (g2 - mid).abs() / g2.abs(),
        quadrature_error: scale * quad,
        truncation_bound: scale * trunc,
        error,
    })
}

/// `g! prod sigma(i) sqrt(i)` and friends, all for prime level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundChain {
    pub p: u64,
    pub g: usize,
    #[serde(serialize_with = "crate::exactlin::serde_int")]
    pub discr_t: Integer,
    #[serde(serialize_with = "crate::exactlin::serde_int")]
    pub discr_tprime: Integer,
    #[serde(serialize_with = "crate::exactlin::serde_int")]
    pub index: Integer,
    /// `(g!)^2 prod sigma(i)^2 i`.
    #[serde(serialize_with = "crate::exactlin::serde_int")]
    pub bound_squared: Integer,
    /// `|discr T'|^2 <= (g!)^2 prod sigma(i)^2 i`.
    pub squared_form_holds: bool,
    /// `|discr T'| = det(a_i(omega_j))^2 <= (g!)^2 prod sigma(i)^2 i`.
    pub determinant_form_holds: bool,
    pub half_log_discr_t: f64,
    pub half_log_discr_tprime: f64,
    /// `log(g! prod sigma(i) sqrt(i))`.
    pub log_bound: f64,
    /// `1/2 log|discr T| <= 1/2 log|discr T'| <= log bound`.
    pub log_chain_holds: bool,
    /// `det(a_i(omega_j))^2` from the numeric eigenforms.
    pub numeric_det_sq: Option<f64>,
    pub numeric_relative_error: Option<f64>,
    pub numeric_matches: Option<bool>,
}

/// The bound chain at prime level, with the numeric determinant route
/// when `numeric` is set. Genus zero gives a vacuous chain.
pub fn height_bound_chain(store: &SpaceStore, p: u64, numeric: bool) -> Result<BoundChain> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let space = store.get(p)?;
    let g = space.plus_dim();
    let bound_squared = weil_bound_squared(g);
    let log_bound = (1..=g as u64)
        .map(|i| (divisor_count(i) as f64).ln() + 0.5 * (i as f64).ln())
        .sum::<f64>()
        + (factorial(g as u64) as f64).ln();
    if g == 0 {
        let one = Integer::from(1);
        return Ok(BoundChain {
            p,
            g,
            discr_t: one.clone(),
            discr_tprime: one.clone(),
            index: one,
            bound_squared,
            squared_form_holds: true,
            determinant_form_holds: true,
            half_log_discr_t: 0.0,
            half_log_discr_tprime: 0.0,
            log_bound,
            log_chain_holds: true,
            numeric_det_sq: None,
            numeric_relative_error: None,
            numeric_matches: None,
        });
    }
    let rep = discriminant_report(&space)?;
    let (Some(dp), Some(index)) = (rep.discr_tprime.clone(), rep.index.clone()) else {
        return Err(Error::Internal(format!("T_1..T_g do not span a rank-g lattice at prime level {p}")));
    };
    let bc = rep.bound_check.clone().expect("present with discr T'");
    let half_log = |d: &Integer| 0.5 * d.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    let (half_log_discr_t, half_log_discr_tprime) = (half_log(&rep.discr_t), half_log(&dp));
    let eps = 1e-12;
    let log_chain_holds = half_log_discr_t <= half_log_discr_tprime + eps && half_log_discr_tprime <= log_bound + eps;
    let (mut numeric_det_sq, mut numeric_relative_error, mut numeric_matches) = (None, None, None);
    if numeric {
        let basis = eigenbasis_numeric(&space, g.max(2), g)?;
        let m = DMatrix::from_fn(g, g, |i, j| basis.forms[j].a(i + 1));
        let det_sq = m.determinant().powi(2);
        let exact = dp.to_f64().unwrap_or(f64::NAN);
        let rel = (det_sq - exact).abs() / exact.abs();
        numeric_det_sq = Some(det_sq);
        numeric_relative_error = Some(rel);
        numeric_matches = Some(rel <= 1e-6 && det_sq.round() == exact);
    }
    Ok(BoundChain {
        p,
        g,
        discr_t: rep.discr_t,
        discr_tprime: dp,
        index,
        bound_squared,
        squared_form_holds: bc.linear_form_holds,
        determinant_form_holds: bc.determinant_form_holds,
        half_log_discr_t,
        half_log_discr_tprime,
        log_bound,
        log_chain_holds,
        numeric_det_sq,
        numeric_relative_error,
        numeric_matches,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormReport {
    pub index: usize,
    pub al_sign: i8,
    pub a2: f64,
    pub norm: NormEstimate,
    pub log_norm: f64,
    pub log_norm_error: f64,
}

/// The height of `X_0(p)` with its exact and numeric ingredients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightReport {
    pub p: u64,
    pub g: usize,
    #[serde(serialize_with = "crate::exactlin::serde_int")]
    pub discr_t: Integer,
    pub half_log_discr_t: f64,
    pub budget: usize,
    pub forms: Vec<FormReport>,
    pub h: f64,
    pub h_error: f64,
    pub eigenbasis_trace_deviation: f64,
    pub bound: BoundChain,
}

pub fn height_x0p(store: &SpaceStore, p: u64, opts: &HeightOptions) -> Result<HeightReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(opts.tolerance > 0.0 && opts.tolerance < 1.0) {
        return Err(Error::InvalidInput(format!("tolerance {} must lie in (0, 1)", opts.tolerance)));
    }
    let space = store.get(p)?;
    if space.plus_dim() == 0 {
        return Err(Error::OutOfScope(format!("genus zero at p = {p}: the height formula has no eigenforms")));
    }
    let budget = opts.coeff_budget.unwrap_or_else(|| budget_for(p, opts.tolerance * 1e-4));
    let basis = eigenbasis_numeric(&space, budget, opts.trace_check)?;
    let bound = height_bound_chain(store, p, false)?;
    let mut forms = Vec::new();
    let (mut sum_log, mut sum_err) = (0.0, 0.0);
    for f in &basis.forms {
        let norm = petersson_norm(f, opts)?;
        let log_norm = 0.5 * norm.norm_sq.ln();
        let log_norm_error = 0.5 * norm.error / norm.norm_sq;
        sum_log += log_norm;
        sum_err += log_norm_error;
        forms.push(FormReport { index: f.index, al_sign: f.al_sign, a2: f.a(2), norm, log_norm, log_norm_error });
    }
    Ok(HeightReport {
        p,
        g: space.plus_dim(),
        half_log_discr_t: bound.half_log_discr_t,
        discr_t: bound.discr_t.clone(),
        budget,
        h: bound.half_log_discr_t - sum_log,
        h_error: sum_err,
        forms,
        eigenbasis_trace_deviation: basis.trace_deviation,
        bound,
    })
}
