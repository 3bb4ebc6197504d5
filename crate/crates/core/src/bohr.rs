//! Coefficient inequalities, the upper-bound series solver, lower-bound
//! certificates and the large-level asymptotic experiment.
//!
//! Upper brackets come from the root of the strictly decreasing series
//! condition `g(R) = sum_n 2 M_n / (R^n - 1) = 1` (annulus variant with
//! denominator `R^n - r^{-n}`). Lower brackets come from the extremal family
//!
//! ```text
//! f_{r1}(z) = -r1 + (1/r1 - r1) * sum_{n>=1} (r1^n / R^n) F_n(z)
//! ```
//!
//! whose Bohr sum exceeding its boundary sup at level `R` certifies that the
//! Bohr property fails there, hence `B >= R`. Both directions carry their
//! truncation budgets in the returned reports.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::faber::{en_tail_bound, faber_poly_full_tail, scale_to_level};
use crate::gallery::{positive_class_check, Condenser};
use crate::laurent::ExteriorMap;
use crate::norms::{norm_positive_class_at, NormModel};

/// Caratheodory-type coefficient bound `2 re(a0) / (R^n - 1)` for functions
/// with nonnegative real part on the level-`R` set.
pub fn caratheodory_bound(re_a0: f64, level: f64, n: usize) -> Result<f64> {
    if !(level > 1.0) {
        return Err(Error::Domain(format!("level must exceed 1, got {level}")));
    }
    if !(re_a0 >= 0.0) {
        return Err(Error::Domain(format!(
            "re(a0) must be nonnegative, got {re_a0}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("bound is stated for n >= 1".into()));
    }
    Ok(2.0 * re_a0 / (level.powi(n as i32) - 1.0))
}

/// Annulus variant `2 re(a0) / (R^n - r^{-n})` (inner level `r > 1`).
///
/// Limits: `r -> 1` recovers [`caratheodory_bound`]; `r -> infinity` gives
/// the denominator `R^n`.
pub fn caratheodory_bound_annulus(re_a0: f64, level: f64, inner: f64, n: usize) -> Result<f64> {
    if !(level > 1.0) {
        return Err(Error::Domain(format!("level must exceed 1, got {level}")));
    }
    if !(inner > 1.0) {
        return Err(Error::Domain(format!(
            "inner level must exceed 1, got {inner}"
        )));
    }
    if !(re_a0 >= 0.0) {
        return Err(Error::Domain(format!(
            "re(a0) must be nonnegative, got {re_a0}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("bound is stated for n >= 1".into()));
    }
    let denom = level.powi(n as i32) - inner.powi(-(n as i32));
    if !(denom > 0.0) {
        return Err(Error::Domain("degenerate annulus denominator".into()));
    }
    Ok(2.0 * re_a0 / denom)
}

/// One row of a coefficient-bound check.
#[derive(Clone, Debug, Serialize)]
pub struct CaratheodorySlack {
    pub n: usize,
    pub magnitude: f64,
    pub bound: f64,
    pub slack: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaratheodoryReport {
    pub all_hold: bool,
    pub worst_slack: f64,
    pub rows: Vec<CaratheodorySlack>,
}

/// Verify `|a_n| <= 2 re(a0) / (R^n - 1)` for every supplied coefficient.
///
/// The constant coefficient must have nonnegative real part; rotate the
/// function so that `a0` lies on the positive real axis before calling.
pub fn check_caratheodory(coeffs: &[Complex64], level: f64) -> Result<CaratheodoryReport> {
    let a0 = coeffs
        .first()
        .ok_or_else(|| Error::InvalidInput("no coefficients supplied".into()))?;
    if a0.re < 0.0 {
        return Err(Error::Domain(
            "re(a0) is negative; pre-rotate the function so a0 lies in the right half plane".into(),
        ));
    }
    let mut rows = Vec::with_capacity(coeffs.len().saturating_sub(1));
    let mut worst = f64::INFINITY;
    let mut all_hold = true;
    for (n, a) in coeffs.iter().enumerate().skip(1) {
        let bound = caratheodory_bound(a0.re, level, n)?;
        let magnitude = a.norm();
        let slack = bound - magnitude;
        if slack < worst {
            worst = slack;
        }
        if slack < 0.0 {
            all_hold = false;
        }
        rows.push(CaratheodorySlack {
            n,
            magnitude,
            bound,
            slack,
        });
    }
    if rows.is_empty() {
        worst = 0.0;
    }
    Ok(CaratheodoryReport {
        all_hold,
        worst_slack: worst,
        rows,
    })
}

/// Numeric mode for the series solvers (`BOHRLAB_PRECISION=double|dd`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    #[default]
    Double,
    DoubleDouble,
}

impl std::str::FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Precision> {
        match s {
            "double" => Ok(Precision::Double),
            "dd" => Ok(Precision::DoubleDouble),
            other => Err(Error::InvalidInput(format!(
                "unknown precision `{other}` (expected `double` or `dd`)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Target residual `|g(R*) - 1|`.
    pub tol: f64,
    pub precision: Precision,
    /// Sampled norm models are lower-biased estimates and are rejected by
    /// the solver unless an explicit inflation factor is supplied here
    /// (`1 + 1e-4` is the conventional choice).
    pub sampled_inflation: Option<f64>,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-9,
            precision: Precision::Double,
            sampled_inflation: None,
            max_terms: 1 << 20,
        }
    }
}

/// An upper or lower Bohr-radius bracket with its provenance.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    /// "upper" or "lower".
    pub direction: String,
    pub level: f64,
    pub method: String,
    /// `g(R*) - 1` for upper reports, best `S/T - 1` for lower reports.
    pub residual: f64,
    pub truncation_n: usize,
    pub tail_estimate: f64,
    pub params: BTreeMap<String, f64>,
}

/// A sequence `n -> M_n` the series solver can consume. Implementations
/// without a uniform cap must satisfy `M_n <= linear_majorant() * n`.
pub trait NormSequence {
    fn value(&self, n: usize) -> Result<f64>;
    fn cap(&self) -> Option<f64>;
    fn method_id(&self) -> String;
    fn linear_majorant(&self) -> f64 {
        2.0 * 3f64.sqrt()
    }
    /// Double-double value; defaults to promoting the f64 value.
    fn value_dd(&self, n: usize) -> Result<Dd> {
        Ok(Dd::from_f64(self.value(n)?))
    }
}

impl NormSequence for NormModel {
    fn value(&self, n: usize) -> Result<f64> {
        NormModel::value(self, n)
    }

    fn cap(&self) -> Option<f64> {
        NormModel::cap(self)
    }

    fn method_id(&self) -> String {
        self.kind_id()
    }

    fn value_dd(&self, n: usize) -> Result<Dd> {
        match self {
            // exact in double-double: powers of 1/2 are representable
            NormModel::ExactH3 => {
                let two = Dd::from_f64(2.0);
                let half = Dd::from_f64(-0.5).powi(n as u32);
                Ok(two + half)
            }
            _ => Ok(Dd::from_f64(self.value(n)?)),
        }
    }
}

/// Sampled values inflated by a safety factor, extended past the stored
/// list by the inflated maximum (a conservative stand-in).
struct InflatedSampled<'a> {
    values: &'a [f64],
    factor: f64,
}

impl NormSequence for InflatedSampled<'_> {
    fn value(&self, n: usize) -> Result<f64> {
        let cap = self.cap().unwrap_or(0.0);
        Ok(self
            .values
            .get(n - 1)
            .map(|v| v * self.factor)
            .unwrap_or(cap))
    }

    fn cap(&self) -> Option<f64> {
        self.values
            .iter()
            .cloned()
            .reduce(f64::max)
            .map(|m| m * self.factor)
            .or(Some(0.0))
    }

    fn method_id(&self) -> String {
        format!("sampled-inflated-{:e}", self.factor)
    }
}

/// The level-norm envelope `M_n = 1 + coefficient * ratio^n` used by the
/// asymptotic experiment (`ratio = r0 / r < 1`).
#[derive(Clone, Copy, Debug)]
pub struct DecayingNorms {
    pub coefficient: f64,
    pub ratio: f64,
}

impl NormSequence for DecayingNorms {
    fn value(&self, n: usize) -> Result<f64> {
        Ok(1.0 + self.coefficient * self.ratio.powi(n as i32))
    }

    fn cap(&self) -> Option<f64> {
        Some(1.0 + self.coefficient * self.ratio)
    }

    fn method_id(&self) -> String {
        "level-envelope".into()
    }
}

/// Tail majorant for `sum_{n>N} 2 M_n / (R^n - r^{-n})`, using
/// `R^n - r^{-n} >= R^n - 1 >= R^n (1 - 1/R)`.
fn series_tail_bound(seq: &dyn NormSequence, n_kept: usize, level: f64) -> f64 {
    let x = 1.0 / level;
    let xn = x.powi(n_kept as i32 + 1);
    match seq.cap() {
        Some(c) => 2.0 * c * xn / ((1.0 - x) * (1.0 - x)),
        None => {
            let a = seq.linear_majorant();
            2.0 * a * xn * ((n_kept as f64 + 1.0) * (1.0 - x) + x)
                / ((1.0 - x) * (1.0 - x) * (1.0 - x))
        }
    }
}

/// Truncated `g` plus a rigorous tail bound, with `N` grown until the tail
/// fits the budget.
fn g_with_tail(
    seq: &dyn NormSequence,
    level: f64,
    inner: Option<f64>,
    budget: f64,
    precision: Precision,
    max_terms: usize,
) -> Result<(f64, f64, usize)> {
    let mut n_terms = 32usize;
    let mut tail = series_tail_bound(seq, n_terms, level);
    while tail >= budget && n_terms < max_terms {
        n_terms *= 2;
        tail = series_tail_bound(seq, n_terms, level);
    }
    if tail >= budget {
        return Err(Error::Domain(format!(
            "series truncation cannot reach budget {budget:.3e} at R = {level}"
        )));
    }
    let g = match precision {
        Precision::Double => {
            let mut acc = 0.0f64;
            for n in 1..=n_terms {
                let rn = level.powi(n as i32);
                if rn.is_infinite() {
                    break;
                }
                let denom = match inner {
                    Some(r) => rn - r.powi(-(n as i32)),
                    None => rn - 1.0,
                };
                acc += 2.0 * seq.value(n)? / denom;
            }
            acc
        }
        Precision::DoubleDouble => {
            let mut acc = Dd::ZERO;
            let level_dd = Dd::from_f64(level);
            for n in 1..=n_terms {
                let rn = level_dd.powi(n as u32);
                if rn.hi.is_infinite() {
                    break;
                }
                let denom = match inner {
                    Some(r) => rn - Dd::ONE / Dd::from_f64(r).powi(n as u32),
                    None => rn - Dd::ONE,
                };
                acc = acc + Dd::from_f64(2.0) * seq.value_dd(n)? / denom;
            }
            acc.to_f64()
        }
    };
    Ok((g, tail, n_terms))
}

fn solve_engine(
    seq: &dyn NormSequence,
    inner: Option<f64>,
    options: &SolveOptions,
) -> Result<BoundReport> {
    let tol = options.tol;
    if seq.cap() == Some(0.0) {
        let mut params = BTreeMap::new();
        params.insert("tol".into(), tol);
        return Ok(BoundReport {
            direction: "upper".into(),
            level: 1.0,
            method: format!("{}-degenerate", seq.method_id()),
            residual: 0.0,
            truncation_n: 0,
            tail_estimate: 0.0,
            params,
        });
    }
    let budget = tol / 10.0;
    let eval = |level: f64| {
        g_with_tail(
            seq,
            level,
            inner,
            budget,
            options.precision,
            options.max_terms,
        )
    };

    // bracket: g -> infinity as R -> 1+ (every kept kind has infinitely many
    // M_n bounded away from 0), so only the upper end needs searching
    let mut hi = 4.0;
    loop {
        let (g, tail, _) = eval(hi)?;
        if g + tail < 1.0 {
            break;
        }
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::NoUpperRoot { guard: 1e9 });
        }
    }
    let mut lo = 1.0;
    let mut best = (f64::NAN, f64::INFINITY, 0usize, 0.0f64);
    for _ in 0..240 {
        let mid = 0.5 * (lo + hi);
        let (g, tail, n_terms) = eval(mid)?;
        let estimate = g + 0.5 * tail;
        let residual = estimate - 1.0;
        if residual.abs() < best.1.abs() {
            best = (mid, residual, n_terms, tail);
        }
        if residual.abs() <= 0.9 * tol {
            break;
        }
        if estimate > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < f64::EPSILON * mid {
            break;
        }
    }
    let (level, residual, truncation_n, tail_estimate) = best;
    if !(residual.abs() <= tol) {
        return Err(Error::Domain(format!(
            "bisection stalled at residual {residual:.3e} > tol {tol:.3e}"
        )));
    }
    let mut params = BTreeMap::new();
    params.insert("tol".into(), tol);
    if let Some(r) = inner {
        params.insert("inner_level".into(), r);
    }
    Ok(BoundReport {
        direction: "upper".into(),
        level,
        method: seq.method_id(),
        residual,
        truncation_n,
        tail_estimate,
        params,
    })
}

fn resolve_model<'a>(
    model: &'a NormModel,
    options: &SolveOptions,
) -> Result<Box<dyn NormSequence + 'a>> {
    match model {
        NormModel::Sampled { values } => match options.sampled_inflation {
            Some(factor) => {
                if values.iter().any(|v| !(*v >= 0.0)) {
                    return Err(Error::InvalidInput(
                        "sampled norm values must be nonnegative".into(),
                    ));
                }
                Ok(Box::new(InflatedSampled { values, factor }))
            }
            None => Err(Error::InvalidInput(
                "sampled norms are lower-biased estimates; pass an explicit inflation factor \
                 to use them in the upper-bound solver"
                    .into(),
            )),
        },
        other => Ok(Box::new(other.clone())),
    }
}

/// Smallest `R` with `sum_n 2 M_n / (R^n - 1) = 1`, located by bisection.
///
/// The returned report satisfies `|g(R*) - 1| <= tol`; the truncation count
/// and tail estimate are included.
pub fn solve_upper(model: &NormModel, options: &SolveOptions) -> Result<BoundReport> {
    let seq = resolve_model(model, options)?;
    solve_engine(seq.as_ref(), None, options)
}

/// Annulus variant with denominator `R^n - r^{-n}` (inner level `r > 1`).
pub fn solve_upper_annulus(
    model: &NormModel,
    inner: f64,
    options: &SolveOptions,
) -> Result<BoundReport> {
    if !(inner > 1.0) {
        return Err(Error::Domain(format!(
            "inner level must exceed 1, got {inner}"
        )));
    }
    let seq = resolve_model(model, options)?;
    solve_engine(seq.as_ref(), Some(inner), options)
}

/// Annulus solve over an arbitrary norm sequence (used by the asymptotic
/// experiment's level envelope).
pub fn solve_upper_annulus_seq(
    seq: &dyn NormSequence,
    inner: f64,
    options: &SolveOptions,
) -> Result<BoundReport> {
    if !(inner > 1.0) {
        return Err(Error::Domain(format!(
            "inner level must exceed 1, got {inner}"
        )));
    }
    solve_engine(seq, Some(inner), options)
}

/// Bohr sum `sum_{n=0..N} |a_n| M_n` with `M_0 = 1` for the constant term.
pub fn bohr_sum(coeffs: &[Complex64], model: &NormModel, n_max: usize) -> Result<f64> {
    if n_max >= coeffs.len() {
        return Err(Error::InvalidInput(format!(
            "asked for {n_max} terms but only {} coefficients are available",
            coeffs.len()
        )));
    }
    let mut acc = coeffs[0].norm();
    for (n, a) in coeffs.iter().enumerate().take(n_max + 1).skip(1) {
        acc += a.norm() * model.value(n)?;
    }
    Ok(acc)
}

/// Which norm values the lower-bound certificate uses for the Bohr sum.
#[derive(Clone, Debug)]
pub enum NormSource {
    /// A closed-form exact model (rejected if not an `Exact*` kind).
    Exact(NormModel),
    /// Positive-class evaluation `1 + sum_j alpha_j r0^{-j}` at the
    /// certificate's `r0`; a rigorous norm lower bound for truncated tails.
    PositiveClass,
}

/// Evaluation of one extremal-family member: Bohr sum against boundary sup.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub level: f64,
    pub r1: f64,
    /// Norm-side tail evaluation radius (the `r0` of the comparison chain).
    pub r0: f64,
    pub bohr_sum: f64,
    pub boundary_sup: f64,
    pub ratio: f64,
    pub certified: bool,
    /// Effective margin the excess had to beat: base margin plus the
    /// truncation tail allowance.
    pub margin: f64,
    /// Number of series terms kept.
    pub series_terms: usize,
}

#[derive(Clone, Debug)]
pub struct CertificateParams {
    /// Base certification margin on `S - T`.
    pub margin: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Norm-side tail radius; must be > 1 so truncated positive tails stay
    /// rigorous lower bounds.
    pub r0: f64,
    /// Grid for the reported boundary sup diagnostic.
    pub theta_grid: usize,
}

impl Default for CertificateParams {
    fn default() -> Self {
        CertificateParams {
            margin: 1e-6,
            max_terms: 400,
            r0: 1.0 + 1e-6,
            theta_grid: 1024,
        }
    }
}

/// Evaluate the extremal family member `f_{r1}` at level `R` and certify
/// `B >= R` when its Bohr sum `S` exceeds its boundary sup `T` by more than
/// the margin plus the truncation allowance.
///
/// `S` drops only nonnegative terms (under-counted) and `T` adds the tail
/// allowance on top of the exact triangle bound `1 + sum_j |d_j|`, so a
/// `certified` verdict survives the truncation error budget.
pub fn lower_certificate(
    map: &ExteriorMap,
    norms: &NormSource,
    level: f64,
    r1: f64,
    params: &CertificateParams,
) -> Result<Certificate> {
    if !(level > 1.0) {
        return Err(Error::Domain(format!("level must exceed 1, got {level}")));
    }
    if !(0.0 < r1 && r1 < 1.0) {
        return Err(Error::Domain(format!("r1 must lie in (0, 1), got {r1}")));
    }
    if !(params.r0 > 1.0) {
        return Err(Error::Domain(format!(
            "norm-side radius r0 must exceed 1, got {}",
            params.r0
        )));
    }
    if let NormSource::Exact(model) = norms {
        if !model.is_exact() {
            return Err(Error::InvalidInput(format!(
                "lower certificates need exact norms; `{}` is a bound/estimate",
                model.kind_id()
            )));
        }
    }

    let q = 1.0 / r1 - r1;
    let x = r1 / level;

    // truncation: choose N so the dropped S-terms and T-tail fit margin/10
    let growth_tail = |n: usize| {
        let a = 2.0 * 3f64.sqrt();
        let xn = x.powi(n as i32 + 1);
        q * a * xn * ((n as f64 + 1.0) * (1.0 - x) + x) / ((1.0 - x) * (1.0 - x))
    };
    let cap_tail = |n: usize, c: f64| q * c * x.powi(n as i32 + 1) / (1.0 - x);
    let tail_at = |n: usize| match norms {
        NormSource::Exact(model) => match model.cap() {
            Some(c) => cap_tail(n, c),
            None => growth_tail(n),
        },
        NormSource::PositiveClass => growth_tail(n),
    };
    let mut n_terms = 32usize;
    while tail_at(n_terms) * (1.0 + 1.0 / level) >= params.margin / 10.0 {
        n_terms *= 2;
        if n_terms > params.max_terms {
            let tail = tail_at(params.max_terms) * (1.0 + 1.0 / level);
            return Err(Error::RefuseCertify {
                tail,
                budget: params.margin / 10.0,
            });
        }
    }
    let tail_total = tail_at(n_terms) * (1.0 + 1.0 / level);

    // Bohr sum S = r1 + q * sum x^n M_n (dropped terms are >= 0)
    let mut s = r1;
    let mut polys = Vec::with_capacity(n_terms);
    for n in 1..=n_terms {
        let m_n = match norms {
            NormSource::Exact(model) => model.value(n)?,
            NormSource::PositiveClass => norm_positive_class_at(map, n, params.r0)?,
        };
        s += q * x.powi(n as i32) * m_n;
        polys.push(faber_poly_full_tail(map, n)?);
    }

    // boundary sup: |A| = 1 exactly, so T <= 1 + sum_j |d_j| with
    // d_j = q * sum_n x^n alpha_j^{(n)} R^{-j}
    let j_max = polys
        .iter()
        .map(|p| p.alpha_tail().len())
        .max()
        .unwrap_or(0);
    let mut d = vec![Complex64::new(0.0, 0.0); j_max];
    for (idx, poly) in polys.iter().enumerate() {
        let n = idx + 1;
        let cn = q * x.powi(n as i32);
        for (j, a) in poly.alpha_tail().iter().enumerate() {
            d[j] += cn * a * level.powi(-(j as i32 + 1));
        }
    }
    let d_abs: f64 = d.iter().map(|c| c.norm()).sum();
    let t_bound = 1.0 + d_abs + tail_at(n_terms) / level;

    // grid diagnostic of the same sup (never exceeds the bound above)
    let mut t_grid = 0.0f64;
    for i in 0..params.theta_grid {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / params.theta_grid as f64;
        let u = Complex64::from_polar(1.0, -theta);
        let mut b = Complex64::new(0.0, 0.0);
        for dj in d.iter().rev() {
            b = (b + dj) * u;
        }
        let e = Complex64::from_polar(1.0, theta);
        let a = (e - r1) / (Complex64::new(1.0, 0.0) - r1 * e);
        t_grid = t_grid.max((a + b).norm());
    }
    let t = t_bound.max(t_grid);

    let margin_eff = params.margin + tail_total;
    let certified = s - t > margin_eff;
    Ok(Certificate {
        level,
        r1,
        r0: params.r0,
        bohr_sum: s,
        boundary_sup: t,
        ratio: s / t,
        certified,
        margin: margin_eff,
        series_terms: n_terms,
    })
}

/// Largest certified level over the product grid, as a lower bracket.
/// Reports level 1 when nothing certifies.
pub fn lower_scan(
    map: &ExteriorMap,
    norms: &NormSource,
    level_grid: &[f64],
    r1_grid: &[f64],
    params: &CertificateParams,
) -> Result<BoundReport> {
    let mut best: Option<Certificate> = None;
    for &level in level_grid {
        for &r1 in r1_grid {
            let cert = lower_certificate(map, norms, level, r1, params)?;
            if cert.certified {
                let better = match &best {
                    Some(b) => cert.level > b.level,
                    None => true,
                };
                if better {
                    best = Some(cert);
                }
            }
        }
    }
    let mut params_map = BTreeMap::new();
    params_map.insert("margin".into(), params.margin);
    params_map.insert("r0".into(), params.r0);
    if let (Some(first), Some(last)) = (level_grid.first(), level_grid.last()) {
        params_map.insert("level_grid_min".into(), *first);
        params_map.insert("level_grid_max".into(), *last);
    }
    params_map.insert("level_grid_points".into(), level_grid.len() as f64);
    params_map.insert("r1_grid_points".into(), r1_grid.len() as f64);
    // the map itself is a truncation; record how much tail it carries
    params_map.insert("map_tail_len".into(), map.tail_len() as f64);
    let method = match norms {
        NormSource::Exact(m) => format!("certificate-{}", m.kind_id()),
        NormSource::PositiveClass => "certificate-positive-class".into(),
    };
    Ok(match best {
        Some(cert) => {
            params_map.insert("r1_best".into(), cert.r1);
            BoundReport {
                direction: "lower".into(),
                level: cert.level,
                method,
                residual: cert.ratio - 1.0,
                truncation_n: cert.series_terms,
                tail_estimate: cert.margin,
                params: params_map,
            }
        }
        None => BoundReport {
            direction: "lower".into(),
            level: 1.0,
            method,
            residual: 0.0,
            truncation_n: 0,
            tail_estimate: 0.0,
            params: params_map,
        },
    })
}

/// One row of the level-asymptotic table.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticRow {
    pub r: f64,
    pub lower_b: f64,
    pub upper_b: f64,
    pub m_prime: f64,
    pub epsilon_up: f64,
    pub epsilon_down: f64,
}

#[derive(Clone, Debug)]
pub struct AsymptoticParams {
    pub r0: f64,
    pub r0_prime: f64,
    /// Level grid for the certificate scan on the scaled condenser.
    pub level_grid: Vec<f64>,
    pub r1_grid: Vec<f64>,
    pub solve: SolveOptions,
    pub certificate: CertificateParams,
}

impl Default for AsymptoticParams {
    fn default() -> Self {
        AsymptoticParams {
            r0: 1.5,
            r0_prime: 2.0,
            level_grid: vec![2.900, 2.925, 2.950, 2.975, 3.000],
            r1_grid: vec![0.9, 0.99, 0.999],
            solve: SolveOptions::default(),
            certificate: CertificateParams::default(),
        }
    }
}

/// Brackets for the Bohr radius of the closed level-`r` sets, one row per
/// requested `r`.
///
/// The upper branch solves the annulus criterion with the norm envelope
/// `M_n = 1 + (r0/r)^n M'(r)`; the lower branch runs the certificate scan
/// on the scaled condenser when it is positive class and otherwise falls
/// back to the analytic `3 - eps'(r)` chain assembled from the same tail
/// constants.
pub fn asymptotic_experiment(
    cond: &Condenser,
    r_list: &[f64],
    params: &AsymptoticParams,
) -> Result<Vec<AsymptoticRow>> {
    if r_list.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidInput("r list must be increasing".into()));
    }
    if r_list.iter().any(|&r| r <= params.r0_prime) {
        return Err(Error::InvalidInput(format!(
            "every r must exceed r0' = {}",
            params.r0_prime
        )));
    }
    // Lemma constant M from the (r0, r0') pair, uniform in r
    let lemma = en_tail_bound(&cond.map, params.r0, params.r0_prime, params.r0_prime)?;
    let m_const = params.r0 * params.r0_prime / (params.r0_prime - params.r0) * lemma.m_prime();

    let mut rows = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let tail = en_tail_bound(&cond.map, params.r0, params.r0_prime, r)?;
        let m_prime = tail.m_prime();

        let envelope = DecayingNorms {
            coefficient: m_prime,
            ratio: params.r0 / r,
        };
        let upper = solve_upper_annulus_seq(&envelope, r, &params.solve)?;

        let scaled = scale_to_level(&cond.map, r)?;
        let lower_b = if positive_class_check(&scaled, 4, 16).positive {
            let report = lower_scan(
                &scaled,
                &NormSource::PositiveClass,
                &params.level_grid,
                &params.r1_grid,
                &params.certificate,
            )?;
            report.level
        } else {
            // analytic chain: eps(r) = M/r + M'(r) r0/(r - r0), uniform in R
            let eps = m_const / r + m_prime * params.r0 / (r - params.r0);
            3.0 - 4.0 * eps / (1.0 + 2.0 * eps)
        };

        rows.push(AsymptoticRow {
            r,
            lower_b,
            upper_b: upper.level,
            m_prime,
            epsilon_up: upper.level - 3.0,
            epsilon_down: 3.0 - lower_b,
        });
    }
    Ok(rows)
}

/// Closed form of the disk Bohr sum of the extremal family,
/// `S = r1 + (1 - r1^2) / (R - r1)`.
pub fn disk_family_bohr_sum(level: f64, r1: f64) -> f64 {
    r1 + (1.0 - r1 * r1) / (level - r1)
}
