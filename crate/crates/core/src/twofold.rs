//! Double-double arithmetic, just enough to expand small polynomials whose
//! value is many orders of magnitude below their individual terms.

use std::ops::{Add, Mul, Neg, Sub};

/// An unevaluated sum `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoFold {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl TwoFold {
    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn scale(self, k: f64) -> Self {
        self * Self::from_f64(k)
    }

    pub fn square(self) -> Self {
        self * self
    }
}

impl From<f64> for TwoFold {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Add for TwoFold {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for TwoFold {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for TwoFold {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for TwoFold {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_digits() {
        // (1 + 2^-40)² − 1 − 2^-39 = 2^-80, invisible in plain f64.
        let x = TwoFold::from(1.0 + 2f64.powi(-40));
        let got = x.square() - TwoFold::from(1.0) - TwoFold::from(2f64.powi(-39));
        assert_eq!(got.to_f64(), 2f64.powi(-80));
    }

    #[test]
    fn product_is_exact_for_doubles() {
        let a = TwoFold::from(0.1);
        let b = TwoFold::from(0.3);
        let p = a * b;
        assert_eq!(p.hi, 0.1 * 0.3);
        assert_eq!(p.lo, 0.1f64.mul_add(0.3, -(0.1 * 0.3)));
    }
}
