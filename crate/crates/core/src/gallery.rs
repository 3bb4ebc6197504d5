//! Built-in condensers with known maps, flags and exact norm models.
//!
//! String ids understood by [`lookup`]: `disk`, `segment`, `h3`, `h4`,
//! `h<m>`, `level:<base>:<r>` and `file:<path>` (a JSON map document).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::faber::{faber_poly_full_tail, scale_to_level};
use crate::laurent::{ExteriorMap, MapDocument};
use crate::norms::NormModel;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Optional affine output transform `z -> a z + b` attached to a condenser.
///
/// The Bohr radius is invariant under plane automorphisms, so all norm and
/// bracket computations run on the underlying map; the transform only
/// relocates geometry output. This carries the orbit of the positive class
/// under automorphisms (the pseudo-positive class).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineTransform {
    pub scale: Complex64,
    pub shift: Complex64,
}

impl AffineTransform {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.scale * z + self.shift
    }
}

/// A named condenser: its exterior map plus what is known about it.
#[derive(Clone, Debug)]
pub struct Condenser {
    pub name: String,
    pub map: ExteriorMap,
    pub convex: bool,
    /// `Some(true/false)` when known or checked, `None` when undetermined.
    pub positive_class: Option<bool>,
    pub exact_norms: Option<NormModel>,
    pub affine: Option<AffineTransform>,
}

impl Condenser {
    /// Boundary point `psi(e^{i theta})` with the affine transform applied.
    pub fn boundary_point(&self, theta: f64) -> Result<Complex64> {
        let z = self.map.eval(Complex64::from_polar(1.0, theta))?;
        Ok(match &self.affine {
            Some(a) => a.apply(z),
            None => z,
        })
    }
}

/// Closed disk of the given radius: `psi(w) = radius * w`.
pub fn make_disk(radius: f64) -> Result<Condenser> {
    if !(radius > 0.0) {
        return Err(Error::Domain(format!(
            "disk radius must be positive, got {radius}"
        )));
    }
    Ok(Condenser {
        name: if (radius - 1.0).abs() < 1e-15 {
            "disk".into()
        } else {
            format!("disk:{radius}")
        },
        map: ExteriorMap::new(1.0 / radius, ZERO, vec![])?,
        convex: true,
        positive_class: Some(true),
        exact_norms: Some(NormModel::ExactDisk),
        affine: None,
    })
}

/// The segment `[-1, 1]`: `psi(w) = (w + 1/w) / 2`, `gamma = 2`.
pub fn make_segment() -> Condenser {
    Condenser {
        name: "segment".into(),
        map: ExteriorMap::new(2.0, ZERO, vec![Complex64::new(0.5, 0.0)])
            .expect("segment map is valid"),
        convex: true,
        positive_class: Some(true),
        exact_norms: None,
        affine: None,
    }
}

/// The m-cusped hypocycloid: `psi(w) = w + w^{-(m-1)} / (m-1)`, `gamma = 1`.
///
/// `m = 2` degenerates to the segment `[-2, 2]` (the same map).
pub fn make_hypocycloid(m: u32) -> Result<Condenser> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "hypocycloid needs m >= 2 cusps, got {m}"
        )));
    }
    let mf = m as f64;
    let mut betas = vec![ZERO; (m - 1) as usize];
    betas[(m - 2) as usize] = Complex64::new(1.0 / (mf - 1.0), 0.0);
    let exact_norms = match m {
        3 => Some(NormModel::ExactH3),
        4 => Some(NormModel::ExactH4),
        _ => None,
    };
    Ok(Condenser {
        name: format!("h{m}"),
        map: ExteriorMap::new(1.0, ZERO, betas)?,
        // hypocycloids are starlike but not convex; m = 2 is the segment
        convex: m == 2,
        positive_class: Some(true),
        exact_norms,
        affine: None,
    })
}

/// The closed level-`r` set of `base` as a condenser in its own right.
///
/// Positive-class status is re-checked on the scaled map rather than assumed.
pub fn make_level_set(base: &Condenser, r: f64) -> Result<Condenser> {
    let map = scale_to_level(&base.map, r)?;
    let positive = positive_class_check(&map, 6, 12).positive;
    let exact_norms = match base.exact_norms {
        // a scaled disk is a disk
        Some(NormModel::ExactDisk) => Some(NormModel::ExactDisk),
        _ => None,
    };
    Ok(Condenser {
        name: format!("level:{}:{}", base.name, r),
        map,
        convex: base.convex,
        positive_class: Some(positive),
        exact_norms,
        affine: base.affine,
    })
}

/// Where a positive-class check failed.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassWitness {
    /// Stored map coefficient `beta_j` is negative (or not real).
    Beta { j: usize },
    /// Faber tail coefficient `alpha_j^{(n)}` is negative (or not real).
    Alpha { n: usize, j: usize },
}

#[derive(Clone, Debug)]
pub struct PositiveClassReport {
    pub positive: bool,
    pub witness: Option<ClassWitness>,
}

/// Positive-class membership: all stored `beta_j >= -1e-12` (real), plus a
/// diagnostic sweep verifying `alpha_j^{(n)} >= -1e-12` for `n <= n_check`,
/// `j <= j_check`, as the tail-positivity theorem predicts. Returns the
/// first violating index as witness.
pub fn positive_class_check(
    map: &ExteriorMap,
    n_check: usize,
    j_check: usize,
) -> PositiveClassReport {
    for (idx, b) in map.betas().iter().enumerate() {
        if b.re < -1e-12 || b.im.abs() > 1e-12 {
            return PositiveClassReport {
                positive: false,
                witness: Some(ClassWitness::Beta { j: idx + 1 }),
            };
        }
    }
    for n in 1..=n_check {
        let poly = match faber_poly_full_tail(map, n) {
            Ok(p) => p,
            Err(_) => {
                return PositiveClassReport {
                    positive: false,
                    witness: None,
                }
            }
        };
        for (idx, a) in poly.alpha_tail().iter().take(j_check).enumerate() {
            if a.re < -1e-12 || a.im.abs() > 1e-9 {
                return PositiveClassReport {
                    positive: false,
                    witness: Some(ClassWitness::Alpha { n, j: idx + 1 }),
                };
            }
        }
    }
    PositiveClassReport {
        positive: true,
        witness: None,
    }
}

/// Resolve a CLI condenser id.
pub fn lookup(id: &str) -> Result<Condenser> {
    match id {
        "disk" => return make_disk(1.0),
        "segment" => return Ok(make_segment()),
        _ => {}
    }
    if let Some(m) = id.strip_prefix('h') {
        if let Ok(m) = m.parse::<u32>() {
            return make_hypocycloid(m);
        }
    }
    if let Some(rest) = id.strip_prefix("level:") {
        // split at the last ':' so nested level ids keep working
        if let Some(pos) = rest.rfind(':') {
            let (base_id, r_text) = rest.split_at(pos);
            let r: f64 = r_text[1..]
                .parse()
                .map_err(|_| Error::UnknownCondenser(id.into()))?;
            let base = lookup(base_id)?;
            return make_level_set(&base, r);
        }
        return Err(Error::UnknownCondenser(id.into()));
    }
    if let Some(path) = id.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)?;
        let doc = MapDocument::from_json(&text)?;
        let map = doc.to_map()?;
        let positive = doc
            .flags
            .positive_class
            .unwrap_or_else(|| positive_class_check(&map, 6, 12).positive);
        let exact_norms = doc.norm_model.as_deref().and_then(norm_model_by_id);
        return Ok(Condenser {
            name: doc.name,
            map,
            convex: doc.flags.convex,
            positive_class: Some(positive),
            exact_norms,
            affine: None,
        });
    }
    Err(Error::UnknownCondenser(id.into()))
}

fn norm_model_by_id(id: &str) -> Option<NormModel> {
    match id {
        "exact-disk" => Some(NormModel::ExactDisk),
        "exact-h3" => Some(NormModel::ExactH3),
        "exact-h4" => Some(NormModel::ExactH4),
        "bound-convex" => Some(NormModel::BoundConvex),
        "bound-general" => Some(NormModel::BoundGeneral),
        _ => None,
    }
}
