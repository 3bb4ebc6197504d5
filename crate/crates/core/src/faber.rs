//! Faber polynomial construction and tail machinery.
//!
//! The degree-`n` Faber polynomial of a continuum is the polynomial part of
//! the Laurent expansion of the `n`-th power of the direct exterior map.
//! Equivalently — and this is how [`faber_poly`] computes it — it is the
//! unique degree-`n` polynomial whose composition with the inverse map
//! `psi` has `w`-expansion `w^n + sum_{j>=1} alpha_j^{(n)} w^{-j}`: unit
//! coefficient at `w^n` and vanishing coefficients at `w^0..w^{n-1}`.
//! A triangular solve against the precomputed powers `psi^0..psi^n` makes
//! that characterization executable; the contour-integral [`faber_oracle`]
//! provides an independent cross-check of the bookkeeping.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{full_mul, ExteriorMap, LaurentSeries};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A Faber polynomial together with its `w`-tail coefficients.
#[derive(Clone, Debug)]
pub struct FaberPoly {
    n: usize,
    z_coeffs: Vec<Complex64>,
    alpha_tail: Vec<Complex64>,
    residual: f64,
    map: ExteriorMap,
}

impl FaberPoly {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coefficients in ascending powers of `z`; length `n + 1`.
    pub fn z_coeffs(&self) -> &[Complex64] {
        &self.z_coeffs
    }

    /// Tail coefficients `alpha_1 .. alpha_J` of the composition with `psi`.
    pub fn alpha_tail(&self) -> &[Complex64] {
        &self.alpha_tail
    }

    /// Max-norm residual of the composition identity sampled on `|w| = 1.5`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn map(&self) -> &ExteriorMap {
        &self.map
    }

    /// Evaluate in the `z`-plane by Horner.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for c in self.z_coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Evaluate the `w`-side form `w^n + sum_j alpha_j w^{-j}`.
    pub fn eval_w_side(&self, w: Complex64) -> Complex64 {
        let mut tail = ZERO;
        let u = Complex64::new(1.0, 0.0) / w;
        for a in self.alpha_tail.iter().rev() {
            tail = (tail + a) * u;
        }
        w.powi(self.n as i32) + tail
    }

    /// Serializable form (degree, coefficients, tail, residual diagnostics).
    pub fn document(&self) -> FaberPolyDocument {
        FaberPolyDocument {
            degree: self.n,
            z_coeffs: self.z_coeffs.iter().map(|c| [c.re, c.im]).collect(),
            alpha_tail: self.alpha_tail.iter().map(|c| [c.re, c.im]).collect(),
            composition_residual: self.residual,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaberPolyDocument {
    pub degree: usize,
    pub z_coeffs: Vec<[f64; 2]>,
    pub alpha_tail: Vec<[f64; 2]>,
    pub composition_residual: f64,
}

/// Powers `psi^0 .. psi^n` over their full degree ranges.
fn psi_powers(map: &ExteriorMap, n: usize) -> Vec<LaurentSeries> {
    let psi = map.as_series();
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(LaurentSeries::one());
    for k in 1..=n {
        let next = full_mul(&powers[k - 1], &psi);
        powers.push(next);
    }
    powers
}

/// Construct the degree-`n` Faber polynomial of `map`.
///
/// `tail_len` selects how many tail coefficients `alpha_1..alpha_tail_len`
/// are retained; the maps handled here have finitely many `beta_j`, so the
/// full tail has at most `n * J` terms and is stored exactly when
/// `tail_len >= n * J`.
pub fn faber_poly(map: &ExteriorMap, n: usize, tail_len: usize) -> Result<FaberPoly> {
    if !(map.gamma() > 0.0) {
        return Err(Error::InvalidMap("gamma must be positive".into()));
    }
    let powers = psi_powers(map, n);
    let gamma = map.gamma();

    // Triangular solve: c_n is fixed by [w^n] = 1, then each [w^m] = 0
    // (m = n-1 .. 0) determines c_m because [w^m] psi^m = gamma^-m and
    // only higher psi-powers contribute otherwise.
    let mut c = vec![ZERO; n + 1];
    c[n] = Complex64::new(gamma.powi(n as i32), 0.0);
    for m in (0..n).rev() {
        let mut acc = ZERO;
        for k in (m + 1)..=n {
            acc += c[k] * powers[k].coeff(m as i32);
        }
        c[m] = -acc * gamma.powi(m as i32);
    }

    // Full composition series; its negative powers are the alpha tail.
    let lo = powers[n].lo_degree().min(0);
    let mut comp = vec![ZERO; (n as i32 - lo + 1) as usize];
    for k in 0..=n {
        let p = &powers[k];
        for d in p.lo_degree()..=p.hi_degree() {
            comp[(d - lo) as usize] += c[k] * p.coeff(d);
        }
    }
    let full_tail = (-lo) as usize;
    let mut alpha = vec![ZERO; tail_len.min(full_tail)];
    for (j, slot) in alpha.iter_mut().enumerate() {
        *slot = comp[(-(j as i32 + 1) - lo) as usize];
    }

    let mut poly = FaberPoly {
        n,
        z_coeffs: c,
        alpha_tail: alpha,
        residual: 0.0,
        map: map.clone(),
    };
    poly.residual = composition_residual(&poly, 256)?;
    Ok(poly)
}

/// Convenience constructor keeping the full (exact) tail.
pub fn faber_poly_full_tail(map: &ExteriorMap, n: usize) -> Result<FaberPoly> {
    faber_poly(map, n, n * map.tail_len())
}

/// Max over a theta grid on `|w| = 1.5` of the composition defect
/// `|F_n(psi(w)) - w^n - sum_j alpha_j w^{-j}|`.
fn composition_residual(poly: &FaberPoly, grid: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..grid {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / grid as f64;
        let w = Complex64::from_polar(1.5, theta);
        let z = poly.map.eval(w)?;
        let d = (poly.eval(z) - poly.eval_w_side(w)).norm();
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Independent contour-integral route to `F_n(z)`:
/// `(1/2 pi i) * integral over |w| = rho of w^n psi'(w) / (psi(w) - z) dw`,
/// by the periodic trapezoid rule with node doubling from 256 until two
/// successive levels differ by less than `1e-10`.
pub fn faber_oracle(map: &ExteriorMap, n: usize, z: Complex64, rho: f64) -> Result<Complex64> {
    if !(rho > 1.0) {
        return Err(Error::Domain(format!(
            "quadrature radius must exceed 1, got {rho}"
        )));
    }
    let eval_level = |nodes: usize| -> Result<Complex64> {
        let mut acc = ZERO;
        for k in 0..nodes {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
            let w = Complex64::from_polar(rho, theta);
            let denom = map.eval(w)? - z;
            if denom.norm() < 1e-14 {
                return Err(Error::Domain(
                    "evaluation point lies on the quadrature image curve".into(),
                ));
            }
            acc += w.powi(n as i32 + 1) * map.eval_derivative(w)? / denom;
        }
        Ok(acc / nodes as f64)
    };

    let mut nodes = 256usize;
    let mut prev = eval_level(nodes)?;
    let max_doublings = 10;
    let mut last_delta = f64::INFINITY;
    for _ in 0..max_doublings {
        nodes *= 2;
        let cur = eval_level(nodes)?;
        last_delta = (cur - prev).norm();
        if last_delta < 1e-10 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureFailure {
        doublings: max_doublings,
        last_delta,
    })
}

/// Faber coefficients `a_0..a_n_max` of `f` from boundary values on the
/// image of `|w| = rho`:
/// `a_n = (1/2 pi i) * integral f(psi(w)) w^{-n-1} dw`.
pub fn faber_coefficients<F>(
    map: &ExteriorMap,
    f: F,
    rho: f64,
    n_max: usize,
    nodes: usize,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(rho > 1.0) {
        return Err(Error::Domain(format!(
            "extraction radius must exceed 1, got {rho}"
        )));
    }
    let mut samples = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
        let w = Complex64::from_polar(rho, theta);
        samples.push(f(map.eval(w)?));
    }
    Ok(coefficients_from_samples(&samples, rho, n_max))
}

/// Same extraction from precomputed samples of `f(psi(w))` at the uniform
/// theta grid on `|w| = rho` (ascending theta, starting at 0).
pub fn coefficients_from_samples(samples: &[Complex64], rho: f64, n_max: usize) -> Vec<Complex64> {
    let nodes = samples.len();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = ZERO;
        for (k, &s) in samples.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
            // w^{-n} at w = rho e^{i theta}
            acc += s * Complex64::from_polar(rho.powi(-(n as i32)), -(n as f64) * theta);
        }
        out.push(acc / nodes as f64);
    }
    out
}

/// Uniform remainder bound for the polynomial-part defect: for every point
/// on or outside the level-`r` curve,
/// `|E_n| <= r0^n * length(curve at r0) / (2 pi * dist(r0-curve, r-curve))`.
#[derive(Clone, Debug, Serialize)]
pub struct TailBound {
    pub r0: f64,
    pub r0_prime: f64,
    pub r: f64,
    pub boundary_length: f64,
    pub separation: f64,
}

impl TailBound {
    /// The bound value at degree `n`; increasing in `n` since `r0 > 1`.
    pub fn value(&self, n: usize) -> f64 {
        self.r0.powi(n as i32) * self.m_prime()
    }

    /// The degree-free factor `length / (2 pi separation)`.
    pub fn m_prime(&self) -> f64 {
        self.boundary_length / (2.0 * std::f64::consts::PI * self.separation)
    }
}

fn level_curve(map: &ExteriorMap, r: f64, nodes: usize) -> Result<Vec<Complex64>> {
    let mut pts = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
        pts.push(map.eval(Complex64::from_polar(r, theta))?);
    }
    Ok(pts)
}

/// Arclength of the level-`r` curve by the composite trapezoid rule on
/// `|d psi(r e^{i theta}) / d theta|`.
fn boundary_length(map: &ExteriorMap, r: f64, nodes: usize) -> Result<f64> {
    let mut acc = 0.0;
    for k in 0..nodes {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
        let w = Complex64::from_polar(r, theta);
        // |psi'(w) * i w| = |psi'(w)| * r
        acc += map.eval_derivative(w)?.norm() * r;
    }
    Ok(acc * 2.0 * std::f64::consts::PI / nodes as f64)
}

fn golden_argmin<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..iters {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = g(d);
        }
    }
    0.5 * (a + b)
}

/// Build the `E_n` tail bound for levels `1 < r0 < r0' <= r`.
///
/// The boundary length comes from quadrature at `r0`; the separation is a
/// dense two-grid minimum distance between the `r0` and `r` curves with a
/// golden-section refinement pass, reported minus a one-grid-cell safety
/// margin.
pub fn en_tail_bound(map: &ExteriorMap, r0: f64, r0_prime: f64, r: f64) -> Result<TailBound> {
    if !(1.0 < r0 && r0 < r0_prime && r0_prime <= r) {
        return Err(Error::Domain(format!(
            "levels must satisfy 1 < r0 < r0' <= r, got ({r0}, {r0_prime}, {r})"
        )));
    }
    let nodes = 4096;
    let length = boundary_length(map, r0, nodes)?;

    let inner = level_curve(map, r0, nodes)?;
    let outer = level_curve(map, r, nodes)?;
    let mut best = f64::INFINITY;
    let mut best_pair = (0usize, 0usize);
    for (i, &p) in inner.iter().enumerate() {
        for (j, &q) in outer.iter().enumerate() {
            let d2 = (p - q).norm_sqr();
            if d2 < best {
                best = d2;
                best_pair = (i, j);
            }
        }
    }
    let step = 2.0 * std::f64::consts::PI / nodes as f64;
    let point = |rr: f64, t: f64| map.eval(Complex64::from_polar(rr, t)).unwrap();
    // alternate 1-d golden refinements of the best pair
    let mut ti = best_pair.0 as f64 * step;
    let mut tj = best_pair.1 as f64 * step;
    for _ in 0..3 {
        let q = point(r, tj);
        ti = golden_argmin(|t| (point(r0, t) - q).norm(), ti - step, ti + step, 40);
        let p = point(r0, ti);
        tj = golden_argmin(|t| (point(r, t) - p).norm(), tj - step, tj + step, 40);
    }
    let refined = (point(r0, ti) - point(r, tj)).norm();

    // one-grid-cell margin: local chord length on each curve near the argmin
    let cell = |rr: f64, t: f64| (point(rr, t + step) - point(rr, t)).norm();
    let margin = cell(r0, ti).max(cell(r, tj));
    let separation = refined - margin;
    if !(separation > 0.0) {
        return Err(Error::GridTooCoarse { refined, margin });
    }
    Ok(TailBound {
        r0,
        r0_prime,
        r,
        boundary_length: length,
        separation,
    })
}

/// The map of the level-`R` set: `psi_R(w) = psi(R w)`, i.e.
/// `gamma' = gamma / R`, `beta0' = beta0`, `beta_j' = beta_j / R^j`.
pub fn scale_to_level(map: &ExteriorMap, level: f64) -> Result<ExteriorMap> {
    if !(level > 1.0) {
        return Err(Error::Domain(format!("level must exceed 1, got {level}")));
    }
    let betas = map
        .betas()
        .iter()
        .enumerate()
        .map(|(idx, b)| b / level.powi(idx as i32 + 1))
        .collect();
    ExteriorMap::new(map.gamma() / level, map.beta0(), betas)
}

/// Estimate of the largest holomorphy level from coefficient decay:
/// least-squares slope of `log |a_n|` against `n` over the trailing half,
/// returned as `exp(-slope)` together with the regression R^2 quality score.
///
/// An all-zero trailing half returns `(f64::INFINITY, 1.0)`.
pub fn holomorphy_radius(coeffs: &[Complex64]) -> Result<(f64, f64)> {
    let start = coeffs.len() / 2;
    let pts: Vec<(f64, f64)> = coeffs
        .iter()
        .enumerate()
        .skip(start)
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(n, c)| (n as f64, c.norm().ln()))
        .collect();
    if pts.is_empty() {
        return Ok((f64::INFINITY, 1.0));
    }
    if pts.len() < 8 {
        return Err(Error::InvalidInput(format!(
            "need at least 8 nonzero trailing coefficients, found {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    let quality = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    Ok(((-slope).exp(), quality))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disk() -> ExteriorMap {
        ExteriorMap::new(1.0, ZERO, vec![]).unwrap()
    }

    fn segment() -> ExteriorMap {
        ExteriorMap::new(2.0, ZERO, vec![c(0.5, 0.0)]).unwrap()
    }

    fn h3() -> ExteriorMap {
        ExteriorMap::new(1.0, ZERO, vec![ZERO, c(0.5, 0.0)]).unwrap()
    }

    #[test]
    fn disk_faber_is_monomial() {
        let f = faber_poly_full_tail(&disk(), 5).unwrap();
        assert!((f.z_coeffs()[5] - c(1.0, 0.0)).norm() < 1e-15);
        for k in 0..5 {
            assert!(f.z_coeffs()[k].norm() < 1e-15);
        }
        assert!(f.alpha_tail().is_empty());
    }

    #[test]
    fn segment_faber_two_is_doubled_chebyshev() {
        let f = faber_poly_full_tail(&segment(), 2).unwrap();
        // 4 z^2 - 2, twice the degree-2 Chebyshev polynomial
        assert!((f.z_coeffs()[2] - c(4.0, 0.0)).norm() < 1e-12);
        assert!(f.z_coeffs()[1].norm() < 1e-12);
        assert!((f.z_coeffs()[0] - c(-2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn h3_faber_two_tail() {
        let f = faber_poly_full_tail(&h3(), 2).unwrap();
        assert!((f.z_coeffs()[2] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(f.z_coeffs()[1].norm() < 1e-12);
        assert!(f.z_coeffs()[0].norm() < 1e-12);
        assert!((f.alpha_tail()[0] - c(1.0, 0.0)).norm() < 1e-12); // alpha_1
        assert!((f.alpha_tail()[3] - c(0.25, 0.0)).norm() < 1e-12); // alpha_4
    }

    #[test]
    fn leading_coefficient_is_gamma_power() {
        for n in 1..=8 {
            let f = faber_poly_full_tail(&segment(), n).unwrap();
            let lead = f.z_coeffs()[n].re;
            let expect = 2f64.powi(n as i32);
            assert!((lead - expect).abs() / expect < 1e-9);
        }
    }

    #[test]
    fn degree_zero_is_one() {
        let f = faber_poly_full_tail(&h3(), 0).unwrap();
        assert_eq!(f.z_coeffs().len(), 1);
        assert!((f.z_coeffs()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(f.alpha_tail().is_empty());
    }

    #[test]
    fn composition_residual_small() {
        for n in 0..=10 {
            let f = faber_poly_full_tail(&h3(), n).unwrap();
            assert!(
                f.residual() <= 1e-9 * 1.5f64.powi(n as i32),
                "residual {} at degree {n}",
                f.residual()
            );
        }
    }

    #[test]
    fn oracle_disk_cube() {
        let v = faber_oracle(&disk(), 3, c(0.2, 0.0), 1.5).unwrap();
        assert!((v - c(0.008, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn oracle_segment_two() {
        let v = faber_oracle(&segment(), 2, c(0.5, 0.0), 1.5).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn oracle_h3_linear() {
        let z = c(0.3, 0.1);
        let v = faber_oracle(&h3(), 1, z, 1.5).unwrap();
        assert!((v - z).norm() < 1e-9);
    }

    #[test]
    fn oracle_rejects_bad_radius() {
        assert!(faber_oracle(&disk(), 1, ZERO, 0.9).is_err());
    }

    #[test]
    fn coefficients_pick_out_basis_element() {
        let map = segment();
        let f3 = faber_poly_full_tail(&map, 3).unwrap();
        let coeffs = faber_coefficients(&map, |z| f3.eval(z), 2.0, 8, 512).unwrap();
        for (n, a) in coeffs.iter().enumerate() {
            let expect = if n == 3 { 1.0 } else { 0.0 };
            assert!((a - c(expect, 0.0)).norm() < 1e-10, "coefficient {n} = {a}");
        }
    }

    #[test]
    fn coefficients_of_constant() {
        let coeffs = faber_coefficients(&h3(), |_| c(1.0, 0.0), 1.5, 6, 512).unwrap();
        assert!((coeffs[0] - c(1.0, 0.0)).norm() < 1e-12);
        for a in &coeffs[1..] {
            assert!(a.norm() < 1e-12);
        }
    }

    #[test]
    fn coefficients_reject_unit_radius() {
        assert!(faber_coefficients(&h3(), |_| ZERO, 1.0, 3, 64).is_err());
    }

    #[test]
    fn coefficients_recover_geometric_random_phase_sum() {
        // f = sum 2^-n e^{i phi_n} F_n is holomorphic up to level 2, so the
        // extraction circle has to stay below that
        let map = h3();
        let polys: Vec<FaberPoly> = (0..=12)
            .map(|n| faber_poly_full_tail(&map, n).unwrap())
            .collect();
        let coeffs: Vec<Complex64> = (0..=12)
            .map(|n| Complex64::from_polar(0.5f64.powi(n), 1.7 * n as f64))
            .collect();
        let f = |z: Complex64| -> Complex64 {
            coeffs.iter().zip(&polys).map(|(a, p)| a * p.eval(z)).sum()
        };
        let recovered = faber_coefficients(&map, f, 1.5, 12, 1024).unwrap();
        for n in 0..=12 {
            assert!(
                (recovered[n] - coeffs[n]).norm() < 1e-8,
                "coefficient {n} off by {}",
                (recovered[n] - coeffs[n]).norm()
            );
        }
    }

    #[test]
    fn scale_disk_level() {
        let m = scale_to_level(&disk(), 2.0).unwrap();
        // psi_2(w) = 2 w
        assert!((m.gamma() - 0.5).abs() < 1e-15);
        let f = faber_poly_full_tail(&m, 3).unwrap();
        assert!((f.z_coeffs()[3] - c(0.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn scaling_identity_segment_and_h3() {
        for (map, level) in [(segment(), 2.0), (h3(), 3.0)] {
            let scaled = scale_to_level(&map, level).unwrap();
            for n in 0..=8 {
                let f = faber_poly_full_tail(&map, n).unwrap();
                let g = faber_poly_full_tail(&scaled, n).unwrap();
                let factor = level.powi(n as i32);
                for k in 0..=n {
                    let diff = (f.z_coeffs()[k] - factor * g.z_coeffs()[k]).norm();
                    assert!(diff < 1e-10, "n={n} k={k} diff={diff}");
                }
            }
        }
    }

    #[test]
    fn scale_rejects_level_at_most_one() {
        assert!(scale_to_level(&disk(), 1.0).is_err());
    }

    #[test]
    fn tail_bound_disk_positive() {
        let t = en_tail_bound(&disk(), 1.5, 2.0, 4.0).unwrap();
        assert!(t.value(3) > 0.0);
        // circle geometry: length 2 pi r0, separation near r - r0
        assert!((t.boundary_length - 2.0 * std::f64::consts::PI * 1.5).abs() < 1e-3);
        assert!((t.separation - 2.5).abs() < 0.01);
    }

    #[test]
    fn tail_bound_dominates_sampled_remainder() {
        // |F_n(psi(w)) - w^n| on |w| = r must sit below the bound
        for (map, r0, r) in [(h3(), 1.5, 4.0), (segment(), 2.0, 8.0)] {
            let t = en_tail_bound(&map, r0, (r0 + r) / 2.0, r).unwrap();
            for n in 1..=8 {
                let f = faber_poly_full_tail(&map, n).unwrap();
                let mut worst: f64 = 0.0;
                for i in 0..512 {
                    let theta = 2.0 * std::f64::consts::PI * i as f64 / 512.0;
                    let w = Complex64::from_polar(r, theta);
                    let z = map.eval(w).unwrap();
                    worst = worst.max((f.eval(z) - w.powi(n as i32)).norm());
                }
                assert!(
                    t.value(n) >= worst,
                    "bound {} below sampled remainder {worst} at n={n}",
                    t.value(n)
                );
            }
        }
    }

    #[test]
    fn tail_bound_value_increasing() {
        let t = en_tail_bound(&h3(), 1.5, 2.0, 4.0).unwrap();
        for n in 1..8 {
            assert!(t.value(n + 1) > t.value(n));
        }
    }

    #[test]
    fn holomorphy_radius_geometric() {
        let coeffs: Vec<Complex64> = (0..24).map(|n| c(0.5f64.powi(n), 0.0)).collect();
        let (r, q) = holomorphy_radius(&coeffs).unwrap();
        assert!((r - 2.0).abs() < 1e-9);
        assert!(q > 0.999_999);
    }

    #[test]
    fn holomorphy_radius_with_polynomial_factor() {
        let coeffs: Vec<Complex64> = (0..=80)
            .map(|n| c(3f64.powi(-n) * (n * n) as f64, 0.0))
            .collect();
        let (r, _) = holomorphy_radius(&coeffs).unwrap();
        assert!((r - 3.0).abs() / 3.0 < 0.05, "estimated {r}");
    }

    #[test]
    fn holomorphy_radius_zero_tail() {
        let mut coeffs = vec![ZERO; 24];
        coeffs[0] = c(1.0, 0.0);
        let (r, _) = holomorphy_radius(&coeffs).unwrap();
        assert!(r.is_infinite());
    }

    #[test]
    fn holomorphy_radius_needs_enough_points() {
        let coeffs: Vec<Complex64> = (0..10).map(|n| c(0.5f64.powi(n), 0.0)).collect();
        // trailing half has 5 nonzero points: too few
        assert!(holomorphy_radius(&coeffs).is_err());
    }

    #[test]
    fn polynomial_part_property() {
        // the composition has no surviving coefficients at w^0..w^{n-1}
        for map in [segment(), h3()] {
            for n in 1..=10 {
                let powers = psi_powers(&map, n);
                let f = faber_poly_full_tail(&map, n).unwrap();
                for m in 0..n {
                    let acc: Complex64 = f
                        .z_coeffs()
                        .iter()
                        .zip(&powers)
                        .map(|(c, p)| c * p.coeff(m as i32))
                        .sum();
                    assert!(acc.norm() < 1e-9, "n={n} m={m} leak={}", acc.norm());
                }
            }
        }
    }
}
