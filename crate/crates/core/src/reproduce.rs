//! The reproduction suite: one named check per headline estimate, each
//! comparing a measured value against its expectation at a pinned tolerance.
//!
//! Root-finding checks are confirmed by an independent oracle: a fixed
//! 200-term series evaluated in double-double arithmetic and bisected with
//! no adaptive truncation, sharing nothing with the production solver but
//! the norm formulas themselves.

use num_complex::Complex64;
use serde::Serialize;

use crate::bohr::{
    asymptotic_experiment, check_caratheodory, disk_family_bohr_sum, lower_certificate,
    lower_scan, solve_upper, AsymptoticParams, CertificateParams, NormSource, SolveOptions,
};
use crate::dd::Dd;
use crate::error::Result;
use crate::faber::{
    faber_coefficients, faber_oracle, faber_poly_full_tail, holomorphy_radius, scale_to_level,
};
use crate::gallery::{
    make_disk, make_hypocycloid, make_level_set, make_segment, positive_class_check, ClassWitness,
};
use crate::laurent::ExteriorMap;
use crate::norms::{norm_positive_class, norm_sampled, NormModel, PolygonCurve, SampleParams};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Outcome of one reproduction check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub criterion: u8,
    pub pass: bool,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub note: String,
}

impl CheckResult {
    fn within(
        id: &str,
        criterion: u8,
        measured: f64,
        expected: f64,
        tolerance: f64,
        note: impl Into<String>,
    ) -> CheckResult {
        CheckResult {
            id: id.into(),
            criterion,
            pass: (measured - expected).abs() <= tolerance,
            measured,
            expected,
            tolerance,
            note: note.into(),
        }
    }

    fn at_most(
        id: &str,
        criterion: u8,
        measured: f64,
        limit: f64,
        note: impl Into<String>,
    ) -> CheckResult {
        CheckResult {
            id: id.into(),
            criterion,
            pass: measured <= limit,
            measured,
            expected: limit,
            tolerance: 0.0,
            note: note.into(),
        }
    }
}

// ---------------------------------------------------------------- oracles

/// Fixed-term double-double bisection for the root of
/// `sum_{n=1..terms} 2 M_n / (R^n - 1) = 1`.
fn dd_series_root(m: &dyn Fn(usize) -> Dd, terms: usize, lo: f64, hi: f64) -> f64 {
    let one = Dd::ONE;
    let two = Dd::from_f64(2.0);
    let g = |level: Dd| {
        let mut acc = Dd::ZERO;
        for n in 1..=terms {
            let rn = level.powi(n as u32);
            if rn.hi.is_infinite() {
                break;
            }
            acc = acc + two * m(n) / (rn - one);
        }
        acc
    };
    let mut lo = Dd::from_f64(lo);
    let mut hi = Dd::from_f64(hi);
    for _ in 0..220 {
        let mid = (lo + hi) * Dd::from_f64(0.5);
        if g(mid) > one {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ((lo + hi) * Dd::from_f64(0.5)).to_f64()
}

fn m_h3_dd(n: usize) -> Dd {
    Dd::from_f64(2.0) + Dd::from_f64(-0.5).powi(n as u32)
}

fn m_convex_dd(_n: usize) -> Dd {
    Dd::from_f64(2.0)
}

fn m_general_dd(n: usize) -> Dd {
    let nf = n as f64;
    Dd::from_f64(2.0) * Dd::from_f64(nf * nf.ln() + 2.0 * nf).sqrt()
}

/// Chebyshev coefficients of the first kind by the three-term recurrence
/// (ascending powers; integer-exact in f64 for the degrees used here).
fn chebyshev_coeffs(n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![1.0];
    }
    let mut prev = vec![1.0];
    let mut cur = vec![0.0, 1.0];
    for _ in 1..n {
        let mut next = vec![0.0; cur.len() + 1];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += 2.0 * c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Small deterministic generator for the randomized checks.
struct SplitMix(u64);

impl SplitMix {
    fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    }
}

// ------------------------------------------------------------- criteria

const SOLVE_TIGHT: SolveOptions = SolveOptions {
    tol: 1e-12,
    precision: crate::bohr::Precision::Double,
    sampled_inflation: None,
    max_terms: 1 << 20,
};

/// Upper bracket for the 3-cusped hypocycloid against the quoted root and
/// the double-double oracle.
pub fn criterion_1() -> Result<Vec<CheckResult>> {
    let report = solve_upper(&NormModel::ExactH3, &SOLVE_TIGHT)?;
    let oracle = dd_series_root(&m_h3_dd, 200, 4.0, 6.0);
    Ok(vec![
        CheckResult::within(
            "h3-upper",
            1,
            report.level,
            4.919167,
            1e-4,
            format!("residual {:.3e}", report.residual),
        ),
        CheckResult::within(
            "h3-upper-oracle",
            1,
            report.level,
            oracle,
            1e-9,
            format!("200-term double-double bisection root {oracle:.12}"),
        ),
    ])
}

/// Hypocycloid norms: sampled and positive-class values against the closed
/// forms through degree 12.
pub fn criterion_2() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (id, cond, model) in [
        ("h3-norms", make_hypocycloid(3)?, NormModel::ExactH3),
        ("h4-norms", make_hypocycloid(4)?, NormModel::ExactH4),
    ] {
        let mut worst = 0.0f64;
        for n in 1..=12 {
            let exact = model.value(n)?;
            let sampled = norm_sampled(&cond.map, n, &SampleParams::default())?;
            let pc = norm_positive_class(&cond.map, n)?;
            worst = worst.max((sampled.value - exact).abs());
            worst = worst.max((pc - exact).abs());
        }
        out.push(CheckResult::within(
            id,
            2,
            worst,
            0.0,
            1e-6,
            "worst deviation over sampled and positive-class routes, n <= 12",
        ));
    }
    Ok(out)
}

/// Faber engine exactness: disk monomials, segment doubled-Chebyshev
/// coefficients, and the contour-integral oracle at random interior points.
pub fn criterion_3() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    let disk = make_disk(1.0)?;
    let mut worst = 0.0f64;
    for n in 0..=10 {
        let f = faber_poly_full_tail(&disk.map, n)?;
        for (k, c) in f.z_coeffs().iter().enumerate() {
            let expect = if k == n { 1.0 } else { 0.0 };
            worst = worst.max((c - Complex64::new(expect, 0.0)).norm());
        }
    }
    out.push(CheckResult::within(
        "disk-faber",
        3,
        worst,
        0.0,
        1e-12,
        "F_n = z^n coefficientwise, n <= 10",
    ));

    let segment = make_segment();
    let mut worst = 0.0f64;
    for n in 1..=10 {
        let f = faber_poly_full_tail(&segment.map, n)?;
        let cheb = chebyshev_coeffs(n);
        for (k, c) in f.z_coeffs().iter().enumerate() {
            worst = worst.max((c - Complex64::new(2.0 * cheb[k], 0.0)).norm());
        }
    }
    out.push(CheckResult::within(
        "segment-chebyshev",
        3,
        worst,
        0.0,
        1e-10,
        "F_n = 2 T_n against the recurrence oracle, 1 <= n <= 10",
    ));

    let mut rng = SplitMix(0x5eed_cafe);
    let mut worst = 0.0f64;
    for cond in [
        make_disk(1.0)?,
        make_segment(),
        make_hypocycloid(3)?,
        make_hypocycloid(4)?,
    ] {
        let mut points = Vec::with_capacity(20);
        for _ in 0..20 {
            let radius = 0.05 + 0.3 * rng.next_f64();
            let theta = 2.0 * std::f64::consts::PI * rng.next_f64();
            points.push(Complex64::from_polar(radius, theta));
        }
        for n in 0..=10 {
            let f = faber_poly_full_tail(&cond.map, n)?;
            for &z in &points {
                let o = faber_oracle(&cond.map, n, z, 1.5)?;
                worst = worst.max((f.eval(z) - o).norm());
            }
        }
    }
    out.push(CheckResult::within(
        "faber-oracle",
        3,
        worst,
        0.0,
        1e-8,
        "triangular solve vs contour integral at 20 interior points per map, n <= 10",
    ));

    Ok(out)
}

/// Coefficient bounds on the disk Moebius family: nonnegative slack and the
/// exact bound-to-magnitude ratio.
pub fn criterion_4() -> Result<Vec<CheckResult>> {
    let mut worst_ratio_dev = 0.0f64;
    let mut worst_slack = f64::INFINITY;
    for level in [2.0f64, 3.0, 5.0] {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for n in 1..=20 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            coeffs.push(Complex64::new(2.0 * sign / level.powi(n), 0.0));
        }
        let report = check_caratheodory(&coeffs, level)?;
        for row in &report.rows {
            worst_slack = worst_slack.min(row.slack);
            let rn = level.powi(row.n as i32);
            worst_ratio_dev =
                worst_ratio_dev.max((row.bound / row.magnitude - rn / (rn - 1.0)).abs());
        }
    }
    Ok(vec![
        CheckResult::at_most(
            "caratheodory-slack",
            4,
            -worst_slack,
            0.0,
            "every Moebius-family coefficient obeys the bound (slack >= 0)",
        ),
        CheckResult::within(
            "caratheodory-ratio",
            4,
            worst_ratio_dev,
            0.0,
            1e-10,
            "bound / |a_n| equals R^n/(R^n - 1)",
        ),
    ])
}

/// Lower-bound soundness: the disk never certifies at or above 3 but does
/// certify 2.9; the 3-cusped hypocycloid certifies at 3.
pub fn criterion_5() -> Result<Vec<CheckResult>> {
    let disk = make_disk(1.0)?;
    let params = CertificateParams::default();
    let mut false_certs = 0u32;
    for level in [3.0, 3.05, 3.1, 3.5] {
        for r1 in [0.5, 0.9, 0.99, 0.999, 0.9999] {
            let cert = lower_certificate(
                &disk.map,
                &NormSource::Exact(NormModel::ExactDisk),
                level,
                r1,
                &params,
            )?;
            if cert.certified {
                false_certs += 1;
            }
        }
    }
    let scan = lower_scan(
        &disk.map,
        &NormSource::Exact(NormModel::ExactDisk),
        &[2.9, 2.95, 3.0, 3.05, 3.1, 3.5],
        &[0.9, 0.99, 0.999, 0.9999],
        &params,
    )?;
    let good = lower_certificate(
        &disk.map,
        &NormSource::Exact(NormModel::ExactDisk),
        2.9,
        0.999,
        &params,
    )?;
    let closed = disk_family_bohr_sum(2.9, 0.999);
    let h3 = make_hypocycloid(3)?;
    let h3_cert = lower_certificate(
        &h3.map,
        &NormSource::Exact(NormModel::ExactH3),
        3.0,
        0.99,
        &params,
    )?;
    Ok(vec![
        CheckResult::at_most(
            "disk-lower-soundness",
            5,
            false_certs as f64,
            0.0,
            "certificates issued at R >= 3 on the disk (must be none)",
        ),
        CheckResult::within(
            "disk-lower-scan",
            5,
            scan.level,
            2.95,
            1e-12,
            "best certified level over a grid straddling 3 stays below 3",
        ),
        CheckResult::within(
            "disk-lower-closed-form",
            5,
            good.bohr_sum,
            closed,
            1e-9,
            format!(
                "R = 2.9, r1 = 0.999 certified = {} (S = {:.9} > 1)",
                good.certified, good.bohr_sum
            ),
        ),
        CheckResult::within(
            "h3-lower",
            5,
            if h3_cert.certified { 1.0 } else { 0.0 },
            1.0,
            0.0,
            format!(
                "S/T = {:.9} at R = 3, r1 = 0.99 (claim: strictly above 3)",
                h3_cert.ratio
            ),
        ),
    ])
}

/// Positive-class detection over the gallery plus a perturbed failure case.
pub fn criterion_6() -> Result<Vec<CheckResult>> {
    let mut all_pass = true;
    let mut note = String::new();
    let segment = make_segment();
    let cases = [
        ("h3", make_hypocycloid(3)?),
        ("h4", make_hypocycloid(4)?),
        ("segment", segment.clone()),
        ("level:segment:2", make_level_set(&segment, 2.0)?),
        ("level:segment:3", make_level_set(&segment, 3.0)?),
    ];
    for (name, cond) in &cases {
        let report = positive_class_check(&cond.map, 10, 50);
        if !report.positive {
            all_pass = false;
            note = format!("{name} unexpectedly failed: {:?}", report.witness);
        }
    }
    let bad = ExteriorMap::new(1.0, ZERO, vec![Complex64::new(-0.1, 0.0)])?;
    let bad_report = positive_class_check(&bad, 10, 50);
    let witness_ok = bad_report.witness == Some(ClassWitness::Beta { j: 1 });
    if note.is_empty() {
        note = "gallery passes n <= 10, j <= 50; beta_1 = -0.1 fails with witness j = 1".into();
    }
    Ok(vec![CheckResult::within(
        "positive-class",
        6,
        if all_pass && !bad_report.positive && witness_ok {
            1.0
        } else {
            0.0
        },
        1.0,
        0.0,
        note,
    )])
}

/// Level-set scaling identity, coefficientwise.
pub fn criterion_7() -> Result<Vec<CheckResult>> {
    let mut worst = 0.0f64;
    for cond in [make_segment(), make_hypocycloid(3)?] {
        for level in [2.0f64, 3.0] {
            let scaled = scale_to_level(&cond.map, level)?;
            for n in 0..=8 {
                let f = faber_poly_full_tail(&cond.map, n)?;
                let g = faber_poly_full_tail(&scaled, n)?;
                let factor = level.powi(n as i32);
                for k in 0..=n {
                    worst = worst.max((f.z_coeffs()[k] - factor * g.z_coeffs()[k]).norm());
                }
            }
        }
    }
    Ok(vec![CheckResult::within(
        "scaling-identity",
        7,
        worst,
        0.0,
        1e-10,
        "F_n = R^n F_n(level R) for segment and h3, R in {2, 3}, n <= 8",
    )])
}

/// Level-asymptotic trend on the segment: shrinking upper gap, lower gap
/// within the scan grid's resolution.
pub fn criterion_8() -> Result<Vec<CheckResult>> {
    let params = AsymptoticParams {
        // the r-list starts at 2, so the inner levels move below it
        r0: 1.2,
        r0_prime: 1.5,
        ..Default::default()
    };
    let grid_slack = 0.05;
    let rows = asymptotic_experiment(&make_segment(), &[2.0, 4.0, 8.0, 16.0, 32.0], &params)?;
    let strictly_decreasing = rows.windows(2).all(|p| p[1].epsilon_up < p[0].epsilon_up);
    let lower_within_slack = rows
        .iter()
        .all(|row| row.epsilon_down <= grid_slack + 1e-12);
    let last_gap = rows.last().map(|r| r.epsilon_up).unwrap_or(f64::NAN);
    let detail = rows
        .iter()
        .map(|r| format!("r={}: [{:.4}, {:.4}]", r.r, r.lower_b, r.upper_b))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(vec![
        CheckResult::within(
            "asymptotic-trend",
            8,
            if strictly_decreasing && lower_within_slack {
                1.0
            } else {
                0.0
            },
            1.0,
            0.0,
            detail,
        ),
        CheckResult::at_most(
            "asymptotic-gap-at-32",
            8,
            last_gap,
            0.5,
            "upper bracket gap at r = 32",
        ),
    ])
}

/// Uniform upper-bound roots with the documented quoted-value discrepancy.
pub fn criterion_9() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (id, model, oracle_m, quoted) in [
        (
            "uniform-convex-root",
            NormModel::BoundConvex,
            &m_convex_dd as &dyn Fn(usize) -> Dd,
            5.26,
        ),
        (
            "uniform-general-root",
            NormModel::BoundGeneral,
            &m_general_dd as &dyn Fn(usize) -> Dd,
            13.8,
        ),
    ] {
        let report = solve_upper(&model, &SOLVE_TIGHT)?;
        let oracle = dd_series_root(oracle_m, 200, 1.5, 64.0);
        let discrepancy = (report.level - quoted).abs() > 1e-2;
        out.push(CheckResult::at_most(
            &format!("{id}-residual"),
            9,
            report.residual.abs(),
            1e-9,
            "series residual at the returned root",
        ));
        out.push(CheckResult::within(
            id,
            9,
            report.level,
            oracle,
            1e-9,
            format!(
                "measured {:.9}; quoted value {quoted}; discrepancy flag = {discrepancy}",
                report.level
            ),
        ));
        out.push(CheckResult::at_most(
            &format!("{id}-headline"),
            9,
            report.level,
            13.8,
            "stays within the headline 13.8",
        ));
    }
    Ok(out)
}

/// Polygon turning-angle values and the angular-bound root coincidence.
pub fn criterion_10() -> Result<Vec<CheckResult>> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let square = PolygonCurve::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)])?;
    let triangle = PolygonCurve::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.9)])?;
    let hexagon = PolygonCurve::new(vec![
        c(0.0, 0.0),
        c(2.0, 0.0),
        c(2.0, 1.0),
        c(1.0, 1.0),
        c(1.0, 2.0),
        c(0.0, 2.0),
    ])?;
    let pi = std::f64::consts::PI;
    let worst_convex = (square.angular_variation() - 2.0 * pi)
        .abs()
        .max((triangle.angular_variation() - 2.0 * pi).abs());
    let hex_dev = (hexagon.angular_variation() - 3.0 * pi).abs();

    let angular = solve_upper(
        &NormModel::BoundAngular {
            variation: 2.0 * pi,
        },
        &SOLVE_TIGHT,
    )?;
    let convex = solve_upper(&NormModel::BoundConvex, &SOLVE_TIGHT)?;
    Ok(vec![
        CheckResult::within(
            "angular-convex-polygons",
            10,
            worst_convex,
            0.0,
            1e-12,
            "square and triangle give 2 pi",
        ),
        CheckResult::within(
            "angular-l-hexagon",
            10,
            hex_dev,
            0.0,
            1e-12,
            "L-shaped hexagon gives 3 pi",
        ),
        CheckResult::within(
            "angular-convex-root",
            10,
            angular.level,
            convex.level,
            1e-9,
            "V = 2 pi series root coincides with the convex-bound root",
        ),
    ])
}

/// Coefficient round-trip on the segment plus the recovered decay rate.
pub fn criterion_11() -> Result<Vec<CheckResult>> {
    let segment = make_segment();
    let n_top = 20usize;
    let mut rng = SplitMix(0x0bea_c0de);
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for n in 1..=n_top {
        let magnitude = 3f64.powi(-(n as i32)) * (0.7 + 0.3 * rng.next_f64());
        let phase = 2.0 * std::f64::consts::PI * rng.next_f64();
        coeffs.push(Complex64::from_polar(magnitude, phase));
    }
    let polys: Vec<_> = (0..=n_top)
        .map(|n| faber_poly_full_tail(&segment.map, n))
        .collect::<Result<_>>()?;
    let f =
        |z: Complex64| -> Complex64 { coeffs.iter().zip(&polys).map(|(a, p)| a * p.eval(z)).sum() };
    let recovered = faber_coefficients(&segment.map, f, 2.0, n_top, 1024)?;
    let mut worst = 0.0f64;
    for n in 0..=12 {
        worst = worst.max((recovered[n] - coeffs[n]).norm());
    }
    let (radius, quality) = holomorphy_radius(&recovered)?;
    Ok(vec![
        CheckResult::within(
            "coefficient-roundtrip",
            11,
            worst,
            0.0,
            1e-8,
            "synthesize-extract round trip at rho = 2, n <= 12",
        ),
        CheckResult::within(
            "holomorphy-radius",
            11,
            radius,
            3.0,
            0.15,
            format!("decay-rate fit R = {radius:.4} (quality {quality:.4})"),
        ),
    ])
}

/// Every check in criterion order.
pub fn run_all() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    out.extend(criterion_1()?);
    out.extend(criterion_2()?);
    out.extend(criterion_3()?);
    out.extend(criterion_4()?);
    out.extend(criterion_5()?);
    out.extend(criterion_6()?);
    out.extend(criterion_7()?);
    out.extend(criterion_8()?);
    out.extend(criterion_9()?);
    out.extend(criterion_10()?);
    out.extend(criterion_11()?);
    Ok(out)
}

/// Run only the check with exactly this id.
pub fn run_filtered(id: &str) -> Result<Vec<CheckResult>> {
    Ok(run_all()?
        .into_iter()
        .filter(|check| check.id == id)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_recurrence_spot_values() {
        assert_eq!(chebyshev_coeffs(0), vec![1.0]);
        assert_eq!(chebyshev_coeffs(1), vec![0.0, 1.0]);
        assert_eq!(chebyshev_coeffs(2), vec![-1.0, 0.0, 2.0]);
        assert_eq!(chebyshev_coeffs(3), vec![0.0, -3.0, 0.0, 4.0]);
        assert_eq!(chebyshev_coeffs(4), vec![1.0, 0.0, -8.0, 0.0, 8.0]);
    }

    #[test]
    fn dd_root_reproduces_h3_value() {
        let root = dd_series_root(&m_h3_dd, 200, 4.0, 6.0);
        assert!((root - 4.919167).abs() < 1e-4, "oracle root {root}");
    }

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix(42);
        let mut b = SplitMix(42);
        for _ in 0..10 {
            assert_eq!(a.next_f64(), b.next_f64());
        }
    }
}
