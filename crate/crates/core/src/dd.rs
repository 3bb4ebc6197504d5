//! Software double-double arithmetic (~31 significant decimal digits).
//!
//! Used by the reproduction oracles and, when `Precision::DoubleDouble` is
//! selected, by the upper-bound series solver. Algorithms are the classic
//! error-free transformations (two-sum, two-product via FMA).

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An unevaluated sum `hi + lo` of two doubles with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, mut k: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Square root: f64 seed plus one Newton step carried in double-double.
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let y = self.hi.sqrt();
        let yd = Dd::from_f64(y);
        let r = (self - yd * yd) / Dd::from_f64(2.0 * y);
        yd + r
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2b) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2b + t2);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - Dd::from_f64(q1) * rhs;
        let q2 = r.hi / rhs.hi;
        let r = r - Dd::from_f64(q2) * rhs;
        let q3 = r.hi / rhs.hi;
        let (s, e) = two_sum(q1, q2);
        Dd::new(s, e + q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_tracks_residual() {
        let a = Dd::from_f64(1.0);
        let tiny = Dd::from_f64(1e-25);
        let s = a + tiny - a;
        assert!((s.to_f64() - 1e-25).abs() < 1e-40);
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = Dd::from_f64(std::f64::consts::PI);
        let b = Dd::from_f64(std::f64::consts::E);
        let r = a * b / b - a;
        assert!(r.to_f64().abs() < 1e-30);
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let x = Dd::from_f64(1.5);
        let mut acc = Dd::ONE;
        for _ in 0..9 {
            acc = acc * x;
        }
        let d = x.powi(9) - acc;
        assert!(d.to_f64().abs() < 1e-28);
    }

    #[test]
    fn sqrt_squares_back() {
        let x = Dd::from_f64(2.0);
        let s = x.sqrt();
        let r = s * s - x;
        assert!(r.to_f64().abs() < 1e-30);
    }
}
