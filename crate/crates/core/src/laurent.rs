//! Truncated Laurent-series arithmetic and the exterior-map data type.
//!
//! A [`LaurentSeries`] stores finitely many coefficients for consecutive
//! powers of `w`, together with a `truncation_floor`: a magnitude below
//! which every dropped tail coefficient is asserted to lie. Products
//! propagate the floor with the documented rule in [`laurent_mul`].
//!
//! An [`ExteriorMap`] is the inverse exterior Riemann map in truncated form,
//!
//! ```text
//! psi(w) = w/gamma + beta0 + sum_{j=1..J} beta_j / w^j
//! ```
//!
//! with `gamma > 0` the derivative of the direct map at infinity. Everything
//! downstream (Faber construction, norms, Bohr brackets) consumes this type.
//! All values are immutable after construction and every operation is a pure
//! function, so they are safe to share across threads.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive degree range `lo..=hi` used to restrict series products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Result<Window> {
        if lo > hi {
            return Err(Error::EmptyWindow);
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, k: i32) -> bool {
        self.lo <= k && k <= self.hi
    }
}

/// Finitely many complex coefficients for powers `lo..=hi` of `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    lo: i32,
    coeffs: Vec<Complex64>,
    truncation_floor: f64,
}

impl LaurentSeries {
    /// Build from the lowest stored power and the ascending coefficient list.
    pub fn new(lo: i32, coeffs: Vec<Complex64>, truncation_floor: f64) -> Result<LaurentSeries> {
        if coeffs.is_empty() {
            return Err(Error::EmptyWindow);
        }
        if !(truncation_floor >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "truncation floor must be >= 0, got {truncation_floor}"
            )));
        }
        Ok(LaurentSeries {
            lo,
            coeffs,
            truncation_floor,
        })
    }

    /// The constant series `c`.
    pub fn constant(c: Complex64) -> LaurentSeries {
        LaurentSeries {
            lo: 0,
            coeffs: vec![c],
            truncation_floor: 0.0,
        }
    }

    /// The series `1`.
    pub fn one() -> LaurentSeries {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// Single term `c * w^k`.
    pub fn monomial(c: Complex64, k: i32) -> LaurentSeries {
        LaurentSeries {
            lo: k,
            coeffs: vec![c],
            truncation_floor: 0.0,
        }
    }

    pub fn lo_degree(&self) -> i32 {
        self.lo
    }

    pub fn hi_degree(&self) -> i32 {
        self.lo + self.coeffs.len() as i32 - 1
    }

    pub fn truncation_floor(&self) -> f64 {
        self.truncation_floor
    }

    /// Coefficient of `w^k`; zero outside the stored range.
    pub fn coeff(&self, k: i32) -> Complex64 {
        let idx = k - self.lo;
        if idx >= 0 && (idx as usize) < self.coeffs.len() {
            self.coeffs[idx as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Sum of stored coefficient magnitudes (used by the floor propagation).
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Restrict to `window`, folding the largest dropped coefficient into the floor.
    pub fn restricted(&self, window: Window) -> LaurentSeries {
        let lo = window.lo.max(self.lo);
        let hi = window.hi.min(self.hi_degree());
        let mut dropped: f64 = 0.0;
        for k in self.lo..=self.hi_degree() {
            if !window.contains(k) {
                dropped = dropped.max(self.coeff(k).norm());
            }
        }
        if lo > hi {
            let mut s = LaurentSeries::constant(Complex64::new(0.0, 0.0));
            s.truncation_floor = self.truncation_floor.max(dropped);
            return s;
        }
        let coeffs = (lo..=hi).map(|k| self.coeff(k)).collect();
        LaurentSeries {
            lo,
            coeffs,
            truncation_floor: self.truncation_floor.max(dropped),
        }
    }

    /// Evaluate at `w` by split Horner (nonnegative powers in `w`,
    /// negative powers in `1/w`).
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        if w == Complex64::new(0.0, 0.0) && self.lo < 0 {
            return Err(Error::Domain(
                "evaluation at w = 0 with negative powers present".into(),
            ));
        }
        let hi = self.hi_degree();
        let mut pos = Complex64::new(0.0, 0.0);
        for k in (0..=hi.max(0)).rev() {
            pos = pos * w + self.coeff(k);
        }
        if hi < 0 {
            pos = Complex64::new(0.0, 0.0);
        }
        let mut neg = Complex64::new(0.0, 0.0);
        if self.lo < 0 {
            let u = Complex64::new(1.0, 0.0) / w;
            for j in (1..=-self.lo).rev() {
                neg = (neg + self.coeff(-j)) * u;
            }
        }
        Ok(pos + neg)
    }
}

/// Exact convolution of `a` and `b` restricted to `window`.
///
/// Floor propagation: the result floor is
/// `floor_a * ||b||_1 + floor_b * ||a||_1 + floor_a * floor_b + D`,
/// where `||.||_1` sums stored coefficient magnitudes and `D` is the largest
/// exactly-computed coefficient discarded by the window restriction.
pub fn laurent_mul(a: &LaurentSeries, b: &LaurentSeries, window: Window) -> Result<LaurentSeries> {
    let full = full_mul(a, b);
    let mut out = full.restricted(window);
    out.truncation_floor = out.truncation_floor.max(
        a.truncation_floor * b.abs_sum()
            + b.truncation_floor * a.abs_sum()
            + a.truncation_floor * b.truncation_floor,
    );
    Ok(out)
}

/// Exact convolution over the full representable degree range.
pub(crate) fn full_mul(a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
    let lo = a.lo + b.lo;
    let len = a.coeffs.len() + b.coeffs.len() - 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
    for (i, &ca) in a.coeffs.iter().enumerate() {
        if ca == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &cb) in b.coeffs.iter().enumerate() {
            coeffs[i + j] += ca * cb;
        }
    }
    LaurentSeries {
        lo,
        coeffs,
        truncation_floor: a.truncation_floor * b.abs_sum()
            + b.truncation_floor * a.abs_sum()
            + a.truncation_floor * b.truncation_floor,
    }
}

/// `a^k` by repeated squaring over full ranges, restricted to `window` at the end.
///
/// `k = 0` gives the constant series `1`.
pub fn laurent_pow(a: &LaurentSeries, k: u32, window: Window) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::one();
    let mut base = a.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = full_mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = full_mul(&base, &base);
        }
    }
    Ok(acc.restricted(window))
}

/// Truncated inverse exterior map `psi(w) = w/gamma + beta0 + sum beta_j w^-j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorMap {
    gamma: f64,
    beta0: Complex64,
    betas: Vec<Complex64>,
}

impl ExteriorMap {
    pub fn new(gamma: f64, beta0: Complex64, betas: Vec<Complex64>) -> Result<ExteriorMap> {
        if !(gamma > 0.0) {
            return Err(Error::InvalidMap(format!("gamma must be > 0, got {gamma}")));
        }
        Ok(ExteriorMap {
            gamma,
            beta0,
            betas,
        })
    }

    /// Leading coefficient of the direct map at infinity.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Conventional logarithmic capacity, `1/gamma`.
    ///
    /// `gamma` itself is the derivative of the direct map at infinity; for
    /// the segment `[-1, 1]` that is `2` while the capacity is `1/2`, so the
    /// two accessors are kept separate on purpose.
    pub fn capacity(&self) -> f64 {
        1.0 / self.gamma
    }

    pub fn beta0(&self) -> Complex64 {
        self.beta0
    }

    pub fn betas(&self) -> &[Complex64] {
        &self.betas
    }

    /// Number of stored tail coefficients.
    pub fn tail_len(&self) -> usize {
        self.betas.len()
    }

    /// `psi(w)`. Total for every `w != 0`; the continuous extension to the
    /// unit circle is evaluated deliberately.
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        if w == Complex64::new(0.0, 0.0) && !self.betas.is_empty() {
            return Err(Error::Domain(
                "evaluation at w = 0 with negative powers present".into(),
            ));
        }
        let mut neg = Complex64::new(0.0, 0.0);
        if !self.betas.is_empty() {
            let u = Complex64::new(1.0, 0.0) / w;
            for j in (0..self.betas.len()).rev() {
                neg = (neg + self.betas[j]) * u;
            }
        }
        Ok(w / self.gamma + self.beta0 + neg)
    }

    /// `psi'(w) = 1/gamma - sum j beta_j w^{-j-1}`.
    pub fn eval_derivative(&self, w: Complex64) -> Result<Complex64> {
        if w == Complex64::new(0.0, 0.0) && !self.betas.is_empty() {
            return Err(Error::Domain(
                "derivative at w = 0 with negative powers present".into(),
            ));
        }
        let mut neg = Complex64::new(0.0, 0.0);
        if !self.betas.is_empty() {
            let u = Complex64::new(1.0, 0.0) / w;
            for j in (0..self.betas.len()).rev() {
                let jj = (j + 1) as f64;
                neg = (neg + jj * self.betas[j]) * u;
            }
            neg *= u;
        }
        Ok(Complex64::new(1.0 / self.gamma, 0.0) - neg)
    }

    /// The map as a Laurent series over powers `-J..=1`.
    pub fn as_series(&self) -> LaurentSeries {
        let j = self.betas.len() as i32;
        let mut coeffs = Vec::with_capacity(self.betas.len() + 2);
        for b in self.betas.iter().rev() {
            coeffs.push(*b);
        }
        coeffs.push(self.beta0);
        coeffs.push(Complex64::new(1.0 / self.gamma, 0.0));
        LaurentSeries {
            lo: -j,
            coeffs,
            truncation_floor: 0.0,
        }
    }

    /// Sampled univalence diagnostic: looks for a zero of `psi'` on the grid
    /// `|w| = 1 + 2^-k` (k = 0..depth), `theta` uniform. Returns the first
    /// grid point where `|psi'|` drops below `tol`, or `None` if the check
    /// passes. Diagnostic only, not a constructor precondition.
    pub fn univalence_diagnostic(&self, depth: u32, n_theta: usize, tol: f64) -> Option<Complex64> {
        for k in 0..=depth {
            let r = 1.0 + 0.5f64.powi(k as i32);
            for i in 0..n_theta {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n_theta as f64;
                let w = Complex64::from_polar(r, theta);
                if let Ok(d) = self.eval_derivative(w) {
                    if d.norm() < tol {
                        return Some(w);
                    }
                }
            }
        }
        None
    }
}

/// On-disk condenser/map description document.
///
/// Numbers survive a load/save round trip bit-exactly; a document produced
/// by [`MapDocument::to_json`] re-serializes to identical bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapDocument {
    pub name: String,
    pub gamma: f64,
    pub beta0: [f64; 2],
    pub betas: Vec<[f64; 2]>,
    pub flags: MapFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_model: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapFlags {
    pub convex: bool,
    pub positive_class: Option<bool>,
}

impl MapDocument {
    pub fn to_map(&self) -> Result<ExteriorMap> {
        ExteriorMap::new(
            self.gamma,
            Complex64::new(self.beta0[0], self.beta0[1]),
            self.betas
                .iter()
                .map(|b| Complex64::new(b[0], b[1]))
                .collect(),
        )
    }

    pub fn from_map(name: &str, map: &ExteriorMap, flags: MapFlags) -> MapDocument {
        MapDocument {
            name: name.to_string(),
            gamma: map.gamma(),
            beta0: [map.beta0().re, map.beta0().im],
            betas: map.betas().iter().map(|b| [b.re, b.im]).collect(),
            flags,
            norm_model: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<MapDocument> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn h3_map() -> ExteriorMap {
        ExteriorMap::new(1.0, c(0.0, 0.0), vec![c(0.0, 0.0), c(0.5, 0.0)]).unwrap()
    }

    fn segment_map() -> ExteriorMap {
        ExteriorMap::new(2.0, c(0.0, 0.0), vec![c(0.5, 0.0)]).unwrap()
    }

    #[test]
    fn mul_inverse_powers() {
        let a = LaurentSeries::monomial(c(1.0, 0.0), 1);
        let b = LaurentSeries::monomial(c(1.0, 0.0), -1);
        let p = laurent_mul(&a, &b, Window::new(-2, 2).unwrap()).unwrap();
        assert_eq!(p.coeff(0), c(1.0, 0.0));
        assert_eq!(p.coeff(1), c(0.0, 0.0));
        assert_eq!(p.coeff(-1), c(0.0, 0.0));
    }

    #[test]
    fn mul_h3_square_by_hand() {
        // (w + w^-2/2)^2 = w^2 + w^-1 + w^-4/4
        let s = h3_map().as_series();
        let p = laurent_mul(&s, &s, Window::new(-8, 4).unwrap()).unwrap();
        assert!((p.coeff(2) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.coeff(-1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.coeff(-4) - c(0.25, 0.0)).norm() < 1e-15);
        for k in [-3, -2, 0, 1, 3] {
            assert!(p.coeff(k).norm() < 1e-15, "unexpected power {k}");
        }
    }

    #[test]
    fn mul_identity() {
        let s = h3_map().as_series();
        let p = laurent_mul(&s, &LaurentSeries::one(), Window::new(-2, 1).unwrap()).unwrap();
        assert_eq!(p.coeff(1), s.coeff(1));
        assert_eq!(p.coeff(-2), s.coeff(-2));
    }

    #[test]
    fn mul_empty_window_rejected() {
        assert!(matches!(Window::new(3, 2), Err(Error::EmptyWindow)));
    }

    #[test]
    fn pow_disk_cube() {
        let w = LaurentSeries::monomial(c(1.0, 0.0), 1);
        let p = laurent_pow(&w, 3, Window::new(-1, 4).unwrap()).unwrap();
        assert_eq!(p.coeff(3), c(1.0, 0.0));
        assert_eq!(p.coeff(2), c(0.0, 0.0));
    }

    #[test]
    fn pow_h3_square_matches_mul() {
        let s = h3_map().as_series();
        let w = Window::new(-8, 4).unwrap();
        let p = laurent_pow(&s, 2, w).unwrap();
        let q = laurent_mul(&s, &s, w).unwrap();
        for k in -8..=4 {
            assert!((p.coeff(k) - q.coeff(k)).norm() < 1e-15);
        }
    }

    #[test]
    fn pow_zero_is_one() {
        let s = segment_map().as_series();
        let p = laurent_pow(&s, 0, Window::new(-4, 4).unwrap()).unwrap();
        assert_eq!(p.coeff(0), c(1.0, 0.0));
        assert_eq!(p.coeff(1), c(0.0, 0.0));
    }

    #[test]
    fn eval_disk_identity() {
        let disk = ExteriorMap::new(1.0, c(0.0, 0.0), vec![]).unwrap();
        let v = disk.eval(c(0.0, 3.0)).unwrap();
        assert!((v - c(0.0, 3.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_h3_at_one() {
        let v = h3_map().eval(c(1.0, 0.0)).unwrap();
        assert!((v - c(1.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_segment_at_one() {
        let v = segment_map().eval(c(1.0, 0.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_at_zero_with_tail_is_domain_error() {
        let err = h3_map().eval(c(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn series_eval_matches_map_eval() {
        let m = h3_map();
        let s = m.as_series();
        for &t in &[0.3, 1.4, 2.9] {
            let w = Complex64::from_polar(1.3, t);
            let a = m.eval(w).unwrap();
            let b = s.eval(w).unwrap();
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let m = segment_map();
        let w = Complex64::from_polar(1.7, 0.9);
        let h = 1e-6;
        let fd =
            (m.eval(w + c(h, 0.0)).unwrap() - m.eval(w - c(h, 0.0)).unwrap()) / c(2.0 * h, 0.0);
        let d = m.eval_derivative(w).unwrap();
        assert!((fd - d).norm() < 1e-8);
    }

    #[test]
    fn univalence_diagnostic_flags_cusp_neighbourhood() {
        // psi'(w) = 1 - w^-3 vanishes on |w| = 1; just inside the ladder it
        // stays bounded away from zero.
        assert!(h3_map().univalence_diagnostic(6, 64, 1e-6).is_none());
    }

    #[test]
    fn capacity_of_segment_is_half() {
        assert!((segment_map().capacity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn floor_propagation_is_recorded() {
        let mut a = h3_map().as_series();
        a.truncation_floor = 1e-12;
        let b = a.clone();
        let p = laurent_mul(&a, &b, Window::new(-3, 2).unwrap()).unwrap();
        // dropped w^-4 term (1/4) plus floor * ||.||_1 cross terms
        assert!(p.truncation_floor() >= 0.25);
    }

    #[test]
    fn map_document_roundtrip_is_canonical() {
        let doc = MapDocument::from_map(
            "h3",
            &h3_map(),
            MapFlags {
                convex: false,
                positive_class: Some(true),
            },
        );
        let j1 = doc.to_json().unwrap();
        let back = MapDocument::from_json(&j1).unwrap();
        let j2 = back.to_json().unwrap();
        assert_eq!(j1, j2);
        assert_eq!(doc, back);
    }
}
