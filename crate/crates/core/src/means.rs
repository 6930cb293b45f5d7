//! Bivariate means on positive pairs: arithmetic, centroidal, quadratic,
//! geometric, power and Toader.
//!
//! Every mean is symmetric and homogeneous of degree one. Symmetry is made
//! exact in floating point by always evaluating on the ordered pair
//! (max, min).
//!
//! Besides the means themselves this module exposes "excess" functions on the
//! normalised pair (1 + r, 1 − r), whose arithmetic mean is 1:
//!
//! ```text
//! toader_excess(r)        = T(1 + r, 1 − r) − 1
//! power_mean_excess(q, r) = M_q(1 + r, 1 − r) − 1
//! ```
//!
//! By homogeneity, M(a, b) = A(a, b)·(1 + excess(r)) with r = |a − b|/(a + b).
//! Near the diagonal all of these are O(r²) and agree with each other to
//! leading order, so inequalities between them can only be decided in f64 by
//! comparing the excesses, which are computed from power series for small r.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::elliptic::{ellip_e, elliptic_values, series_coeffs, EllipticValues, Modulus};
use crate::error::{Error, Result};

/// Two positive reals (a, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair {
    a: f64,
    b: f64,
}

impl PositivePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
            return Err(Error::Domain(format!(
                "means need finite positive arguments, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(lambda * self.a, lambda * self.b)
    }

    /// (max, min).
    pub fn ordered(&self) -> (f64, f64) {
        if self.a >= self.b {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.a == self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeanKind {
    Arithmetic,
    Centroidal,
    Quadratic,
    Geometric,
}

/// Closed-form classical means.
///
/// ```text
/// A = (a + b)/2          C̄ = 2(a² + ab + b²) / (3(a + b))
/// S = √((a² + b²)/2)     G = √(ab)
/// ```
pub fn classical_mean(kind: MeanKind, p: PositivePair) -> f64 {
    let (hi, lo) = p.ordered();
    match kind {
        MeanKind::Arithmetic => 0.5 * (hi + lo),
        MeanKind::Centroidal => {
            2.0 * (hi * hi + hi * lo + lo * lo) / (3.0 * (hi + lo))
        }
        MeanKind::Quadratic => {
            let t = lo / hi;
            hi * ((1.0 + t * t) / 2.0).sqrt()
        }
        MeanKind::Geometric => hi.sqrt() * lo.sqrt(),
    }
}

/// Power mean M_q(a, b) = ((a^q + b^q)/2)^{1/q}, with M_0 = √(ab).
pub fn power_mean(exponent: f64, p: PositivePair) -> f64 {
    if exponent == 0.0 {
        return classical_mean(MeanKind::Geometric, p);
    }
    if p.is_diagonal() {
        return p.a;
    }
    let (hi, lo) = p.ordered();
    let t = lo / hi;
    hi * ((1.0 + t.powf(exponent)) / 2.0).powf(1.0 / exponent)
}

/// Toader mean T(a, b) = (2/π) ∫₀^{π/2} √(a² cos²θ + b² sin²θ) dθ.
///
/// Evaluated as (2·max/π)·E(√(1 − (min/max)²)); the diagonal returns `a`
/// exactly.
pub fn toader(p: PositivePair) -> f64 {
    if p.is_diagonal() {
        return p.a;
    }
    let (hi, lo) = p.ordered();
    // The complement of the eccentricity is min/max, which is exact.
    let m = Modulus::from_complement(lo / hi).expect("min/max lies in (0, 1)");
    FRAC_2_PI * hi * ellip_e(m)
}

/// Below this r the excess functions switch to their power series.
pub const TOADER_SERIES_CUTOFF: f64 = 0.25;
pub const POWER_SERIES_CUTOFF: f64 = 0.01;

const SERIES_MAX_TERMS: usize = 80;

/// Coefficients `e_0 .. e_n` of T(1 + r, 1 − r) = Σ e_k x^k, x = r².
///
/// From the Landen identity T(1 + r, 1 − r) = (2/π)(2E(r) − r′²K(r)) and
/// the series of [`series_coeffs`]: e_k = 2 d_k − c_k + c_{k−1}.
///
/// e_0 = 1, e_1 = 1/4, e_2 = 1/64.
pub fn toader_series_coeffs(n: usize) -> Vec<f64> {
    let (c, d) = series_coeffs(n);
    (0..=n)
        .map(|k| {
            let prev = if k == 0 { 0.0 } else { c[k - 1] };
            2.0 * d[k] - c[k] + prev
        })
        .collect()
}

/// Σ_{k ≥ start} e_k x^k, summed until the terms stop mattering.
fn toader_series_tail(x: f64, start: usize) -> f64 {
    let coeffs = toader_series_coeffs(SERIES_MAX_TERMS);
    let mut sum = 0.0;
    let mut power = x.powi(start as i32);
    for &e in &coeffs[start..] {
        let term = e * power;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        power *= x;
    }
    sum
}

/// T(1 + r, 1 − r) − 1 for r ∈ [0, 1].
pub fn toader_excess(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("toader_excess needs r in [0, 1], got {r}")));
    }
    if r < TOADER_SERIES_CUTOFF {
        return Ok(toader_series_tail(r * r, 1));
    }
    if r == 1.0 {
        return Ok(4.0 / PI - 1.0);
    }
    let m = Modulus::new(r)?;
    let EllipticValues { k, e } = elliptic_values(m)?;
    let rp2 = m.r_prime() * m.r_prime();
    Ok(FRAC_2_PI * (2.0 * e - rp2 * k) - 1.0)
}

/// (T(1 + r, 1 − r) − 1 − r²/4) / r², the part of the Toader excess beyond
/// its leading term. Positive on (0, 1]; tends to 0 like r²/64.
pub fn toader_excess_beyond_leading(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("r must lie in [0, 1], got {r}")));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    if r < TOADER_SERIES_CUTOFF {
        let x = r * r;
        return Ok(toader_series_tail(x, 2) / x);
    }
    Ok(toader_excess(r)? / (r * r) - 0.25)
}

/// Generalised binomial coefficient C(q, j).
fn binomial(q: f64, j: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..j {
        c *= (q - i as f64) / (i as f64 + 1.0);
    }
    c
}

/// Truncated product of two polynomials in x (coefficient vectors of equal length).
fn poly_mul_trunc(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = vec![0.0; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Coefficients `m_0 .. m_n` of M_q(1 + r, 1 − r) − 1 = Σ m_k x^k, x = r².
///
/// m_0 = 0 and m_1 = (q − 1)/2 exactly.
pub fn power_mean_series_coeffs(q: f64, n: usize) -> Vec<f64> {
    let len = n + 1;
    if q == 0.0 {
        // √(1 − x) − 1
        let mut out: Vec<f64> = (0..len)
            .map(|k| binomial(0.5, k) * if k % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        out[0] = 0.0;
        return out;
    }
    // h(x) = ((1 + r)^q + (1 − r)^q)/2 − 1 = Σ_{k≥1} C(q, 2k) x^k
    let mut h = vec![0.0; len];
    for (k, hk) in h.iter_mut().enumerate().skip(1) {
        *hk = binomial(q, 2 * k);
    }
    // (1 + h)^{1/q} − 1 = Σ_{j≥1} C(1/q, j) h^j
    let inv = 1.0 / q;
    let mut out = vec![0.0; len];
    let mut h_pow = h.clone();
    for j in 1..len {
        let c = binomial(inv, j);
        for (o, hp) in out.iter_mut().zip(&h_pow) {
            *o += c * hp;
        }
        h_pow = poly_mul_trunc(&h_pow, &h);
    }
    if len > 1 {
        out[1] = 0.5 * (q - 1.0);
    }
    out
}

/// Number of series terms used below [`POWER_SERIES_CUTOFF`]; x ≤ 1e-4 there.
pub const POWER_SERIES_TERMS: usize = 8;

/// M_q(1 + r, 1 − r) − 1 for r ∈ [0, 1).
pub fn power_mean_excess(q: f64, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("power_mean_excess needs r in [0, 1), got {r}")));
    }
    let x = r * r;
    if q == 0.0 {
        return Ok(-x / (1.0 + (1.0 - x).sqrt()));
    }
    if r < POWER_SERIES_CUTOFF {
        let coeffs = power_mean_series_coeffs(q, POWER_SERIES_TERMS);
        return Ok(horner(&coeffs, x));
    }
    let t = (1.0 - r) / (1.0 + r);
    Ok((1.0 + r) * ((1.0 + t.powf(q)) / 2.0).powf(1.0 / q) - 1.0)
}

/// T(1 + r, 1 − r) − M_q(1 + r, 1 − r) for r ∈ [0, 1).
///
/// Below [`POWER_SERIES_CUTOFF`] the two series are subtracted coefficient by
/// coefficient, so the sign is right even when the leading terms cancel
/// (q = 3/2 agrees with T through x¹).
pub fn toader_minus_power_excess(q: f64, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("r must lie in [0, 1), got {r}")));
    }
    if r < POWER_SERIES_CUTOFF && q != 0.0 {
        let t = toader_series_coeffs(POWER_SERIES_TERMS);
        let m = power_mean_series_coeffs(q, POWER_SERIES_TERMS);
        let mut diff: Vec<f64> = t.iter().zip(&m).map(|(a, b)| a - b).collect();
        diff[0] = 0.0;
        return Ok(horner(&diff, r * r));
    }
    Ok(toader_excess(r)? - power_mean_excess(q, r)?)
}

pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}
