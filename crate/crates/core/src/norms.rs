//! Sup-norm models `n -> M_n >= ||F_n||` for Faber polynomials.
//!
//! A [`NormModel`] is either an exact closed form (disk, 3- and 4-cusped
//! hypocycloids), an analytic bound (convex, general, hypocycloid remark,
//! angular-variation) or a list of sampled values. Sampled estimates are
//! lower-biased and must never feed the upper-bound solver without an
//! explicit inflation factor; see [`crate::bohr::solve_upper`].

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::faber::{faber_poly_full_tail, FaberPoly};
use crate::laurent::ExteriorMap;

/// The constant in the 4-cusped hypocycloid closed form,
/// `lambda = (-1 + sqrt(2) i) / sqrt(3)` (unimodular).
pub fn h4_lambda() -> Complex64 {
    Complex64::new(-1.0 / 3f64.sqrt(), 2f64.sqrt() / 3f64.sqrt())
}

/// A rule producing `M_n >= ||F_n||` (with equality for the `Exact*` kinds).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum NormModel {
    /// Disks of any radius: `M_n = 1`.
    ExactDisk,
    /// 3-cusped hypocycloid: `M_n = 2 + (-1/2)^n`.
    ExactH3,
    /// 4-cusped hypocycloid: `M_n = 2 + (lambda^n + conj(lambda)^n) / 3^(n/2)`.
    ExactH4,
    /// Convex continua: `M_n = 2`.
    BoundConvex,
    /// Any continuum: `M_n = 2 sqrt(n ln n + 2n)`.
    BoundGeneral,
    /// m-cusped hypocycloids, m > 4: `M_n = (m/(m-1))^(m-1)` (not optimal).
    BoundHypocycloid { cusps: u32 },
    /// Rectifiable Jordan curve with tangent-angle variation `V`: `M_n = V / pi`.
    BoundAngular { variation: f64 },
    /// Sampled values, 1-indexed: `values[n-1]` estimates `||F_n||`.
    Sampled { values: Vec<f64> },
}

impl NormModel {
    /// True only for the closed-form kinds.
    pub fn is_exact(&self) -> bool {
        matches!(
            self,
            NormModel::ExactDisk | NormModel::ExactH3 | NormModel::ExactH4
        )
    }

    /// Short stable identifier used in CSV output.
    pub fn kind_id(&self) -> String {
        match self {
            NormModel::ExactDisk => "exact-disk".into(),
            NormModel::ExactH3 => "exact-h3".into(),
            NormModel::ExactH4 => "exact-h4".into(),
            NormModel::BoundConvex => "bound-convex".into(),
            NormModel::BoundGeneral => "bound-general".into(),
            NormModel::BoundHypocycloid { cusps } => format!("bound-hypocycloid-{cusps}"),
            NormModel::BoundAngular { .. } => "bound-angular".into(),
            NormModel::Sampled { .. } => "sampled".into(),
        }
    }

    /// `M_n` for `n >= 1`.
    pub fn value(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidInput("norm models start at n = 1".into()));
        }
        let nf = n as f64;
        Ok(match self {
            NormModel::ExactDisk => 1.0,
            NormModel::ExactH3 => 2.0 + (-0.5f64).powi(n as i32),
            NormModel::ExactH4 => {
                let l = h4_lambda().powi(n as i32);
                2.0 + 2.0 * l.re / 3f64.powf(nf / 2.0)
            }
            NormModel::BoundConvex => 2.0,
            NormModel::BoundGeneral => 2.0 * (nf * nf.ln() + 2.0 * nf).sqrt(),
            NormModel::BoundHypocycloid { cusps } => {
                let m = *cusps as f64;
                (m / (m - 1.0)).powf(m - 1.0)
            }
            NormModel::BoundAngular { variation } => variation / std::f64::consts::PI,
            NormModel::Sampled { values } => *values.get(n - 1).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "sampled norm model has {} values, asked for n = {n}",
                    values.len()
                ))
            })?,
        })
    }

    /// A constant `C` with `M_n <= C` for all `n` (None when the model grows
    /// without bound).
    pub fn cap(&self) -> Option<f64> {
        match self {
            NormModel::ExactDisk => Some(1.0),
            NormModel::ExactH3 => Some(2.5),
            NormModel::ExactH4 => Some(2.0 + 2.0 / 3f64.sqrt()),
            NormModel::BoundConvex => Some(2.0),
            NormModel::BoundGeneral => None,
            NormModel::BoundHypocycloid { cusps } => {
                let m = *cusps as f64;
                Some((m / (m - 1.0)).powf(m - 1.0))
            }
            NormModel::BoundAngular { variation } => Some(variation / std::f64::consts::PI),
            NormModel::Sampled { values } => values.iter().cloned().reduce(f64::max).or(Some(0.0)),
        }
    }
}

/// Shorthand for [`NormModel::value`].
pub fn norm_model(model: &NormModel, n: usize) -> Result<f64> {
    model.value(n)
}

/// Tangent-angle variation bound on a single polynomial norm
/// (`||F_n|| <= V / pi`). The series criterion used by the upper-bound
/// solver carries an extra factor 2; both constants are exposed, this one
/// labelled as the single-norm version.
pub fn single_norm_angular_bound(variation: f64) -> f64 {
    variation / std::f64::consts::PI
}

/// Parameters of the sampled sup-norm estimator.
#[derive(Clone, Debug)]
pub struct SampleParams {
    pub theta_grid: usize,
    pub refinements: u32,
    pub epsilon_ladder: Vec<f64>,
    /// Relative agreement tolerance between successive ladder rungs.
    pub agree_tol: f64,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams {
            theta_grid: 4096,
            refinements: 2,
            // the radial bias of the estimate scales like eps^2 near cusps;
            // the 1e-5 rung keeps it below 1e-7 through degree ~12
            epsilon_ladder: vec![1e-2, 1e-3, 1e-4, 1e-5],
            agree_tol: 5e-3,
        }
    }
}

/// A sampled sup-norm estimate with its extrapolation gap.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SampledNorm {
    /// Grid max at the smallest converged ladder rung. Lower-biased in the
    /// theta direction, so treat as an estimate, not a bound.
    pub value: f64,
    /// Difference between the two agreeing ladder rungs.
    pub gap: f64,
    /// The rung at which the ladder settled.
    pub epsilon: f64,
}

fn grid_max(poly: &FaberPoly, map: &ExteriorMap, r: f64, params: &SampleParams) -> Result<f64> {
    let n = params.theta_grid;
    let mut best = 0.0f64;
    let mut best_theta = 0.0f64;
    for i in 0..n {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        let z = map.eval(Complex64::from_polar(r, theta))?;
        let v = poly.eval(z).norm();
        if v > best {
            best = v;
            best_theta = theta;
        }
    }
    // local refinement around the argmax
    let mut half = 2.0 * std::f64::consts::PI / n as f64;
    for _ in 0..params.refinements {
        let fine = 32;
        let mut local_best = best;
        let mut local_theta = best_theta;
        for i in 0..=fine {
            let theta = best_theta - half + 2.0 * half * i as f64 / fine as f64;
            let z = map.eval(Complex64::from_polar(r, theta))?;
            let v = poly.eval(z).norm();
            if v > local_best {
                local_best = v;
                local_theta = theta;
            }
        }
        best = local_best;
        best_theta = local_theta;
        half = 2.0 * half / fine as f64;
    }
    Ok(best)
}

/// Sampled sup-norm of `F_n` on the level curves `|w| = 1 + eps`.
///
/// Walks the epsilon ladder coarse-to-fine and reports the value at the
/// smallest rung whose predecessor agrees within `agree_tol` (relative).
/// The true sup over the curves is monotone in eps; a rise beyond the
/// tolerance as eps shrinks signals a map that is not continuous up to the
/// unit circle at this truncation and is reported as an error.
pub fn norm_sampled(map: &ExteriorMap, n: usize, params: &SampleParams) -> Result<SampledNorm> {
    if params.epsilon_ladder.len() < 2 {
        return Err(Error::InvalidInput(
            "epsilon ladder needs at least two rungs".into(),
        ));
    }
    let poly = faber_poly_full_tail(map, n)?;
    let mut values = Vec::with_capacity(params.epsilon_ladder.len());
    for &eps in &params.epsilon_ladder {
        values.push(grid_max(&poly, map, 1.0 + eps, params)?);
    }
    for (step, pair) in values.windows(2).enumerate() {
        let scale = pair[0].abs().max(1.0);
        if pair[1] > pair[0] + params.agree_tol * scale {
            return Err(Error::LadderNonMonotone {
                step,
                previous: pair[0],
                current: pair[1],
            });
        }
    }
    for step in (1..values.len()).rev() {
        let gap = (values[step] - values[step - 1]).abs();
        let scale = values[step].abs().max(1.0);
        if gap <= params.agree_tol * scale {
            return Ok(SampledNorm {
                value: values[step],
                gap,
                epsilon: params.epsilon_ladder[step],
            });
        }
    }
    // ladder never settled: report the finest rung with its (large) gap
    let last = values.len() - 1;
    Ok(SampledNorm {
        value: values[last],
        gap: (values[last] - values[last - 1]).abs(),
        epsilon: params.epsilon_ladder[last],
    })
}

/// Exact sup-norm for positive-class maps: `F_n(psi(1)) = 1 + sum_j alpha_j`
/// with nonnegative real tail coefficients. Any tail coefficient below
/// `-1e-12` disqualifies the map and is refused.
pub fn norm_positive_class(map: &ExteriorMap, n: usize) -> Result<f64> {
    norm_positive_class_at(map, n, 1.0)
}

/// The positive-class norm machinery evaluated with tail weights `r0^-j`
/// (`r0 >= 1`). For `r0 > 1` this is a rigorous lower bound on the norm even
/// when the stored tail is truncated, because only nonnegative terms are
/// dropped. `r0 = 1` gives the norm itself for finitely supported tails.
pub fn norm_positive_class_at(map: &ExteriorMap, n: usize, r0: f64) -> Result<f64> {
    if !(r0 >= 1.0) {
        return Err(Error::Domain(format!(
            "tail evaluation radius must be >= 1, got {r0}"
        )));
    }
    let poly = faber_poly_full_tail(map, n)?;
    let mut acc = 1.0;
    for (idx, a) in poly.alpha_tail().iter().enumerate() {
        if a.re < -1e-12 || a.im.abs() > 1e-9 {
            return Err(Error::NotPositiveClass {
                witness: format!("alpha_{}^({}) = {}", idx + 1, n, a),
            });
        }
        acc += a.re.max(0.0) * r0.powi(-(idx as i32 + 1));
    }
    Ok(acc)
}

/// A closed simple polygon given by its ordered vertices.
#[derive(Clone, Debug)]
pub struct PolygonCurve {
    vertices: Vec<Complex64>,
}

fn segments_properly_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let cross = |o: Complex64, p: Complex64, q: Complex64| {
        (p.re - o.re) * (q.im - o.im) - (p.im - o.im) * (q.re - o.re)
    };
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

impl PolygonCurve {
    pub fn new(vertices: Vec<Complex64>) -> Result<PolygonCurve> {
        if vertices.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let n = vertices.len();
        let scale = vertices
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        for i in 0..n {
            let d = (vertices[(i + 1) % n] - vertices[i]).norm();
            if d < 1e-14 * scale {
                return Err(Error::InvalidInput(format!(
                    "repeated consecutive vertices at index {i}"
                )));
            }
        }
        // pairwise edge check, skipping adjacent edges
        for i in 0..n {
            for j in (i + 1)..n {
                if (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segments_properly_intersect(a, b, c, d) {
                    return Err(Error::SelfIntersecting(i, j));
                }
            }
        }
        Ok(PolygonCurve { vertices })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Total tangent-angle variation: the sum of absolute exterior turning
    /// angles. Exactly `2 pi` for convex polygons regardless of orientation.
    pub fn angular_variation(&self) -> f64 {
        let n = self.vertices.len();
        let mut total = 0.0;
        for i in 0..n {
            let prev = self.vertices[(i + n - 1) % n];
            let here = self.vertices[i];
            let next = self.vertices[(i + 1) % n];
            let d1 = here - prev;
            let d2 = next - here;
            let cross = d1.re * d2.im - d1.im * d2.re;
            let dot = d1.re * d2.re + d1.im * d2.im;
            total += cross.atan2(dot).abs();
        }
        total
    }
}

/// Turning-angle sum of a simple closed polygon (see [`PolygonCurve`]).
pub fn angular_variation(poly: &PolygonCurve) -> f64 {
    poly.angular_variation()
}
