//! Sharp two-sided bounds for the Toader mean in terms of the centroidal and
//! arithmetic means, the elementary bounds for E(r) derived from them, and
//! the competing bounds they are compared against.
//!
//! With t = min/max and r = (1 − t)/(1 + t) every quantity here reduces to a
//! function of r alone:
//!
//! ```text
//! T/A − 1 = toader_excess(r)        C̄/A − 1 = r²/3
//! (T − A)/(C̄ − A)             = f₃₁(r) ∈ (3/4, 12/π − 3), increasing
//! (1/T − 1/C̄)/(1/A − 1/C̄)     = f₃₂(r) ∈ (π − 3, 1/4),   decreasing
//! ```
//!
//! The `*_margins` functions evaluate the slack of each inequality from these
//! reduced forms, which stay accurate down to r ≈ 1e-8 where the direct
//! differences T − lower have long since drowned in rounding.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::elliptic::{ellip_e, elliptic_values, series_coeffs, EllipticValues, Modulus};
use crate::error::{Error, Result};
use crate::means::{
    classical_mean, toader_excess, toader_excess_beyond_leading, MeanKind, PositivePair,
    TOADER_SERIES_CUTOFF,
};
use crate::twofold::TwoFold;

/// The best-possible constants of the two envelope theorems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpConstants {
    /// Lower weight on C̄ in α₁C̄ + (1 − α₁)A < T.
    pub alpha1: f64,
    /// Upper weight on C̄ in T < β₁C̄ + (1 − β₁)A.
    pub beta1: f64,
    /// Weight on 1/A in the lower bound of 1/T.
    pub alpha2: f64,
    /// Weight on 1/A in the upper bound of 1/T.
    pub beta2: f64,
}

pub const SHARP: SharpConstants = SharpConstants {
    alpha1: 0.75,
    beta1: 12.0 / PI - 3.0,
    alpha2: PI - 3.0,
    beta2: 0.25,
};

impl Default for SharpConstants {
    fn default() -> Self {
        SHARP
    }
}

/// The eight elementary bounds on E(r) that are compared in the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundFamily {
    Lower41,
    Upper41J,
    Lower42,
    Upper42D,
    Lower43,
    Upper43Q,
    LowerL,
    UpperLY,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 8] = [
        BoundFamily::Lower41,
        BoundFamily::Upper41J,
        BoundFamily::Lower42,
        BoundFamily::Upper42D,
        BoundFamily::Lower43,
        BoundFamily::Upper43Q,
        BoundFamily::LowerL,
        BoundFamily::UpperLY,
    ];

    /// Column order of the published table: J, D, Q, Y, then the lower bounds.
    pub const TABLE_ORDER: [BoundFamily; 8] = [
        BoundFamily::Upper41J,
        BoundFamily::Upper42D,
        BoundFamily::Upper43Q,
        BoundFamily::UpperLY,
        BoundFamily::Lower41,
        BoundFamily::Lower42,
        BoundFamily::Lower43,
        BoundFamily::LowerL,
    ];

    pub fn is_lower(self) -> bool {
        matches!(
            self,
            BoundFamily::Lower41 | BoundFamily::Lower42 | BoundFamily::Lower43 | BoundFamily::LowerL
        )
    }

    /// Identifier accepted on the command line.
    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::Lower41 => "LOWER_41",
            BoundFamily::Upper41J => "UPPER_41_J",
            BoundFamily::Lower42 => "LOWER_42",
            BoundFamily::Upper42D => "UPPER_42_D",
            BoundFamily::Lower43 => "LOWER_43",
            BoundFamily::Upper43Q => "UPPER_43_Q",
            BoundFamily::LowerL => "LOWER_L",
            BoundFamily::UpperLY => "UPPER_L_Y",
        }
    }

    /// CSV column header.
    pub fn column(self) -> &'static str {
        match self {
            BoundFamily::Lower41 => "lower41",
            BoundFamily::Upper41J => "J",
            BoundFamily::Lower42 => "lower42",
            BoundFamily::Upper42D => "D",
            BoundFamily::Lower43 => "lower43",
            BoundFamily::Upper43Q => "Q",
            BoundFamily::LowerL => "lowerL",
            BoundFamily::UpperLY => "Y",
        }
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        BoundFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(wanted) || f.column() == wanted)
            .ok_or_else(|| Error::Config(format!("unknown bound family '{s}'")))
    }
}

/// Maps a pair with a ≠ b to r = (1 − t)/(1 + t), t = min/max.
pub fn to_modulus(p: PositivePair) -> Result<Modulus> {
    if p.is_diagonal() {
        return Err(Error::DegenerateInput(format!(
            "a = b = {} maps to r = 0",
            p.a()
        )));
    }
    let (hi, lo) = p.ordered();
    // (1 − t)/(1 + t) = (hi − lo)/(hi + lo)
    Modulus::new((hi - lo) / (hi + lo))
}

/// Convex-combination envelope α·C̄ + (1 − α)·A, β·C̄ + (1 − β)·A for arbitrary weights.
pub fn envelope_31_with(p: PositivePair, alpha: f64, beta: f64) -> Result<(f64, f64)> {
    to_modulus(p)?;
    let a = classical_mean(MeanKind::Arithmetic, p);
    let c = classical_mean(MeanKind::Centroidal, p);
    Ok((alpha * c + (1.0 - alpha) * a, beta * c + (1.0 - beta) * a))
}

/// (3/4)C̄ + (1/4)A < T < (12/π − 3)C̄ + (4 − 12/π)A.
pub fn toader_envelope_31(p: PositivePair) -> Result<(f64, f64)> {
    envelope_31_with(p, SHARP.alpha1, SHARP.beta1)
}

/// Harmonic-combination envelope: the reciprocals of
/// β/A + (1 − β)/C̄ (lower) and α/A + (1 − α)/C̄ (upper).
pub fn envelope_32_with(p: PositivePair, alpha: f64, beta: f64) -> Result<(f64, f64)> {
    to_modulus(p)?;
    let a = classical_mean(MeanKind::Arithmetic, p);
    let c = classical_mean(MeanKind::Centroidal, p);
    let lower = 1.0 / (beta / a + (1.0 - beta) / c);
    let upper = 1.0 / (alpha / a + (1.0 - alpha) / c);
    Ok((lower, upper))
}

/// (π − 3)/A + (4 − π)/C̄ < 1/T < (1/4)/A + (3/4)/C̄, returned in T-space.
pub fn toader_envelope_32(p: PositivePair) -> Result<(f64, f64)> {
    envelope_32_with(p, SHARP.alpha2, SHARP.beta2)
}

/// f₃₁(r) − 3/4, computed without cancellation for small r.
pub fn quotient_f31_beyond_limit(m: Modulus) -> Result<f64> {
    m.require_interior("quotient_f31")?;
    Ok(3.0 * toader_excess_beyond_leading(m.r())?)
}

/// f₃₁(r) = 3·((2/π)(2E − r′²K) − 1)/r², the ratio (T − A)/(C̄ − A).
pub fn quotient_f31(m: Modulus) -> Result<f64> {
    Ok(0.75 + quotient_f31_beyond_limit(m)?)
}

/// f₃₂(r) = (3 + r² − (6/π)(2E − r′²K)) / ((2/π) r² (2E − r′²K)), the ratio
/// (1/T − 1/C̄)/(1/A − 1/C̄). Evaluated as (1 − f₃₁)/(1 + T/A − 1).
pub fn quotient_f32(m: Modulus) -> Result<f64> {
    let beyond = quotient_f31_beyond_limit(m)?;
    let excess = toader_excess(m.r())?;
    Ok((0.25 - beyond) / (1.0 + excess))
}

/// Slack of the convex-combination envelope for weights (α, β), normalised by A:
/// ((T − lower)/A, (upper − T)/A).
pub fn envelope_31_margins(m: Modulus, alpha: f64, beta: f64) -> Result<(f64, f64)> {
    let beyond = quotient_f31_beyond_limit(m)?;
    let third_x = m.r() * m.r() / 3.0;
    Ok((
        third_x * ((0.75 - alpha) + beyond),
        third_x * ((beta - 0.75) - beyond),
    ))
}

/// Slack of the harmonic envelope for weights (α, β) in reciprocal space,
/// normalised by A: (A/T − A·lower⁻¹, A·upper⁻¹ − A/T) where lower⁻¹ and
/// upper⁻¹ are the bounds on 1/T.
pub fn envelope_32_margins(m: Modulus, alpha: f64, beta: f64) -> Result<(f64, f64)> {
    let beyond = quotient_f31_beyond_limit(m)?;
    let excess = toader_excess(m.r())?;
    let third_x = m.r() * m.r() / 3.0;
    // 1 − A/C̄
    let gap = third_x / (1.0 + third_x);
    let over_alpha = ((0.25 - alpha) - alpha * excess - beyond) / (1.0 + excess);
    let under_beta = ((beta - 0.25) + beta * excess + beyond) / (1.0 + excess);
    Ok((gap * over_alpha, gap * under_beta))
}

/// (E − r′²K)/r², increasing from π/4 to 1 on (0, 1).
pub fn lemma21_ratio(m: Modulus) -> Result<f64> {
    m.require_interior("lemma21_ratio")?;
    let r = m.r();
    if r < TOADER_SERIES_CUTOFF {
        // (2/π)(E − (1 − x)K) = Σ_{k≥1} (d_k − c_k + c_{k−1}) x^k
        let x = r * r;
        let (c, d) = series_coeffs(60);
        let mut sum = 0.0;
        let mut power = 1.0;
        for k in 1..c.len() {
            let term = (d[k] - c[k] + c[k - 1]) * power;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
            power *= x;
        }
        return Ok(FRAC_PI_2 * sum);
    }
    let EllipticValues { k, e } = elliptic_values(m)?;
    let rp2 = m.r_prime() * m.r_prime();
    Ok((e - rp2 * k) / (r * r))
}

/// 5E(r) − 3r′²K(r) on [0, 1]; π at r = 0 and 5 at r = 1.
pub fn lemma23_value(m: Modulus) -> f64 {
    if m.r() == 1.0 {
        return 5.0;
    }
    if m.r() == 0.0 {
        return PI;
    }
    let EllipticValues { k, e } = elliptic_values(m).expect("r < 1");
    let rp2 = m.r_prime() * m.r_prime();
    5.0 * e - 3.0 * rp2 * k
}

/// Evaluates one of the eight closed-form bounds on E(r), r ∈ (0, 1).
pub fn e_bound(family: BoundFamily, m: Modulus) -> Result<f64> {
    m.require_interior("e_bound")?;
    let r = m.r();
    let rp = m.r_prime();
    let value = match family {
        BoundFamily::Lower41 => {
            FRAC_PI_2 * ((1.0 + rp + rp * rp) / (2.0 * (1.0 + rp)) + (1.0 + rp) / 8.0)
        }
        BoundFamily::Upper41J => {
            FRAC_PI_2
                * ((8.0 / PI - 2.0) * (1.0 + rp + rp * rp) / (1.0 + rp)
                    + (2.0 - 6.0 / PI) * (1.0 + rp))
        }
        BoundFamily::Lower42 => {
            FRAC_PI_2 * (0.5 * ((1.0 + rp * rp) / 2.0).sqrt() + (1.0 + rp) / 4.0)
        }
        BoundFamily::Upper42D => {
            let denom = (SQRT_2 - 1.0) * PI;
            FRAC_PI_2
                * ((4.0 - PI) / denom * ((1.0 + rp * rp) / 2.0).sqrt()
                    + (SQRT_2 * PI - 4.0) * (1.0 + rp) / (2.0 * denom))
        }
        BoundFamily::Lower43 => {
            // ln((1+r)^{1−r} / (1−r)^{1+r}) = (1 − r)ln(1 + r) − (1 + r)ln(1 − r)
            let log_ratio = (1.0 - r) * r.ln_1p() - (1.0 + r) * (-r).ln_1p();
            FRAC_PI_2 - 0.5 * log_ratio
        }
        BoundFamily::Upper43Q => {
            // ln((1+r)/(1−r)) = 2 artanh r
            (PI - 1.0) / 2.0 + (1.0 - r * r) / (2.0 * r) * r.atanh()
        }
        BoundFamily::LowerL => {
            FRAC_PI_2 * (6.0 + 2.0 * rp - 3.0 * r * r).sqrt() / (2.0 * SQRT_2)
        }
        BoundFamily::UpperLY => {
            FRAC_PI_2 * (10.0 - 2.0 * rp - 5.0 * r * r).sqrt() / (2.0 * SQRT_2)
        }
    };
    Ok(value)
}

/// Slack of the elementary envelope for E(r) built from the sharp
/// constants: (E − LOWER_41, UPPER_41_J − E).
///
/// Substituting r′ = b/a into the convex-combination envelope gives these
/// bounds, so the slack is π/2·A(1, r′) times the envelope slack at the
/// Landen modulus ρ = (1 − r′)/(1 + r′) = r²/(1 + r′)².
pub fn eq41_margins(m: Modulus) -> Result<(f64, f64)> {
    m.require_interior("eq41_margins")?;
    let rp = m.r_prime();
    let rho = Modulus::new(m.r() * m.r() / ((1.0 + rp) * (1.0 + rp)))?;
    if !rho.is_interior() {
        return Err(Error::Domain(format!(
            "r = {} is too small to separate the bounds",
            m.r()
        )));
    }
    let (lo, hi) = envelope_31_margins(rho, SHARP.alpha1, SHARP.beta1)?;
    let scale = FRAC_PI_2 * 0.5 * (1.0 + rp);
    Ok((scale * lo, scale * hi))
}

/// One bound evaluated at a modulus, with whether it is on the correct side of E.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    pub family: BoundFamily,
    pub value: f64,
    pub holds: bool,
}

/// E(r) and a set of bounds at a single modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessRow {
    pub r: f64,
    pub e_true: f64,
    pub values: Vec<BoundValue>,
}

impl TightnessRow {
    pub fn value(&self, family: BoundFamily) -> Option<f64> {
        self.values
            .iter()
            .find(|v| v.family == family)
            .map(|v| v.value)
    }

    pub fn lower_ok(&self) -> bool {
        self.values
            .iter()
            .filter(|v| v.family.is_lower())
            .all(|v| v.holds)
    }

    pub fn upper_ok(&self) -> bool {
        self.values
            .iter()
            .filter(|v| !v.family.is_lower())
            .all(|v| v.holds)
    }
}

/// Evaluates E(r) and the requested families at one modulus.
pub fn tightness_row(m: Modulus, families: &[BoundFamily]) -> Result<TightnessRow> {
    m.require_interior("comparison_row")?;
    let e_true = ellip_e(m);
    let values = families
        .iter()
        .map(|&family| {
            let value = e_bound(family, m)?;
            let holds = if family.is_lower() {
                value <= e_true
            } else {
                value >= e_true
            };
            Ok(BoundValue {
                family,
                value,
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TightnessRow {
        r: m.r(),
        e_true,
        values,
    })
}

/// All eight families at one modulus.
pub fn comparison_row(m: Modulus) -> Result<TightnessRow> {
    tightness_row(m, &BoundFamily::ALL)
}

/// LOWER_41 − LOWER_42 divided by π/2, as a function of x = r′:
///
/// ```text
/// g(x) = (3x² + 2x + 3 − 2(1 + x)√(2(1 + x²))) / (8(1 + x))
/// ```
///
/// Evaluated in the rationalised form (1 − x)⁴ / (8(1 + x)(3x² + 2x + 3 +
/// 2(1 + x)√(2(1 + x²)))), which is positive for x ≠ 1 without cancellation.
pub fn gap_lower41_vs_lower42(x: f64) -> f64 {
    let p = 3.0 * x * x + 2.0 * x + 3.0;
    let q = 2.0 * (1.0 + x) * (2.0 * (1.0 + x * x)).sqrt();
    (1.0 - x).powi(4) / (8.0 * (1.0 + x) * (p + q))
}

/// g(x) straight from its definition; loses all digits near x = 1.
pub fn gap_lower41_vs_lower42_direct(x: f64) -> f64 {
    (1.0 + x + x * x) / (2.0 * (1.0 + x)) + (1.0 + x) / 8.0
        - (0.5 * ((1.0 + x * x) / 2.0).sqrt() + (1.0 + x) / 4.0)
}

/// (3x² + 2x + 3)² − 8(1 + x)²(1 + x²), expanded in double-double. Equals (1 − x)⁴.
pub fn lower42_polynomial(x: f64) -> f64 {
    let x = TwoFold::from(x);
    let one = TwoFold::from(1.0);
    let p = x.square().scale(3.0) + x.scale(2.0) + TwoFold::from(3.0);
    let q = (one + x).square() * (one + x.square());
    (p.square() - q.scale(8.0)).to_f64()
}

/// (5x² + 6x + 5)² − 8(x + 1)²(3x² + 2x + 3), expanded in double-double.
/// Equals (x − 1)⁴; positivity means LOWER_41 dominates LOWER_L.
pub fn gap_lower41_vs_lowerl(x: f64) -> f64 {
    let x = TwoFold::from(x);
    let one = TwoFold::from(1.0);
    let p = x.square().scale(5.0) + x.scale(6.0) + TwoFold::from(5.0);
    let q = (x + one).square() * (x.square().scale(3.0) + x.scale(2.0) + TwoFold::from(3.0));
    (p.square() - q.scale(8.0)).to_f64()
}

/// LOWER_41 − LOWER_L divided by π/2 at x = r′, without cancellation.
pub fn lower41_minus_lowerl(x: f64) -> f64 {
    let u = (5.0 * x * x + 6.0 * x + 5.0) / (8.0 * (1.0 + x));
    let v = (3.0 * x * x + 2.0 * x + 3.0).sqrt() / (2.0 * SQRT_2);
    // u² − v² = (1 − x)⁴ / (64(1 + x)²)
    (1.0 - x).powi(4) / (64.0 * (1.0 + x) * (1.0 + x) * (u + v))
}

/// Limit of the Lemma 2.1 ratio at r → 0⁺.
pub const LEMMA21_LOWER: f64 = FRAC_PI_4;

#[cfg(test)]
mod tests {
    use super::*;

    fn md(r: f64) -> Modulus {
        Modulus::new(r).unwrap()
    }

    fn pair(a: f64, b: f64) -> PositivePair {
        PositivePair::new(a, b).unwrap()
    }

    #[test]
    fn constants_ordering() {
        let c = SHARP;
        assert!(0.0 < c.alpha1 && c.alpha1 < c.beta1 && c.beta1 < 1.0);
        assert!(0.0 < c.alpha2 && c.alpha2 < c.beta2 && c.beta2 < 1.0);
        assert!((c.beta1 - 0.819_718_634_205_488).abs() < 1e-14);
    }

    #[test]
    fn family_names_round_trip() {
        for f in BoundFamily::ALL {
            assert_eq!(f.name().parse::<BoundFamily>().unwrap(), f);
            assert_eq!(f.column().parse::<BoundFamily>().unwrap(), f);
        }
        assert!("UPPER_99".parse::<BoundFamily>().is_err());
        assert_eq!(BoundFamily::ALL.iter().filter(|f| f.is_lower()).count(), 4);
    }

    #[test]
    fn to_modulus_examples() {
        assert!((to_modulus(pair(3.0, 1.0)).unwrap().r() - 0.5).abs() < 1e-16);
        assert_eq!(
            to_modulus(pair(1.0, 3.0)).unwrap(),
            to_modulus(pair(3.0, 1.0)).unwrap()
        );
        assert!(matches!(
            to_modulus(pair(1.0, 1.0)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn envelopes_reject_diagonal() {
        assert!(matches!(
            toader_envelope_31(pair(2.0, 2.0)),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            toader_envelope_32(pair(2.0, 2.0)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn envelope_32_scales_by_two() {
        let (l1, u1) = toader_envelope_32(pair(2.0, 1.0)).unwrap();
        let (l2, u2) = toader_envelope_32(pair(4.0, 2.0)).unwrap();
        assert_eq!(l2, 2.0 * l1);
        assert_eq!(u2, 2.0 * u1);
    }

    #[test]
    fn near_diagonal_envelopes_collapse() {
        // The true slack here is ~r⁴ ≈ 1e-39: direct values agree to rounding,
        // strictness is only visible in the reduced margins.
        let p = pair(1.0, 1.0 + 1e-9);
        let t = crate::means::toader(p);
        let ulps = 4.0 * f64::EPSILON;
        for (lo, hi) in [toader_envelope_31(p).unwrap(), toader_envelope_32(p).unwrap()] {
            assert!((lo - 1.0).abs() < 1e-8 && (hi - 1.0).abs() < 1e-8);
            assert!(lo - t <= ulps && t - hi <= ulps);
        }
        let m = to_modulus(p).unwrap();
        let (a, b) = envelope_31_margins(m, SHARP.alpha1, SHARP.beta1).unwrap();
        assert!(a > 0.0 && b > 0.0);
        let (a, b) = envelope_32_margins(m, SHARP.alpha2, SHARP.beta2).unwrap();
        assert!(a > 0.0 && b > 0.0);
    }

    #[test]
    fn quotients_reject_endpoints() {
        for r in [0.0, 1.0] {
            assert!(quotient_f31(md(r)).is_err());
            assert!(quotient_f32(md(r)).is_err());
            assert!(lemma21_ratio(md(r)).is_err());
            assert!(e_bound(BoundFamily::Lower41, md(r)).is_err());
        }
    }

    #[test]
    fn quotient_f32_matches_printed_formula() {
        for r in [0.3, 0.5, 0.8, 0.95] {
            let m = md(r);
            let EllipticValues { k, e } = elliptic_values(m).unwrap();
            let s = 2.0 * e - m.r_prime() * m.r_prime() * k;
            let want = (3.0 + r * r - 6.0 / PI * s) / (2.0 / PI * r * r * s);
            let got = quotient_f32(m).unwrap();
            assert!((got - want).abs() < 1e-13, "r={r} {got} vs {want}");
            let want31 = 3.0 * (2.0 / PI * s - 1.0) / (r * r);
            assert!((quotient_f31(m).unwrap() - want31).abs() < 1e-13);
        }
    }

    #[test]
    fn lemma21_series_meets_closed_form() {
        let m = md(TOADER_SERIES_CUTOFF);
        let EllipticValues { k, e } = elliptic_values(m).unwrap();
        let closed = (e - m.r_prime() * m.r_prime() * k) / (m.r() * m.r());
        assert!((lemma21_ratio(m).unwrap() - closed).abs() < 1e-14);
    }

    #[test]
    fn lemma23_endpoints() {
        assert_eq!(lemma23_value(md(0.0)), PI);
        assert_eq!(lemma23_value(md(1.0)), 5.0);
    }

    #[test]
    fn lower41_collapses_at_small_r() {
        let v = e_bound(BoundFamily::Lower41, md(1e-8)).unwrap();
        assert!((v - FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn polynomial_gap_values() {
        assert_eq!(gap_lower41_vs_lowerl(1.0), 0.0);
        assert_eq!(gap_lower41_vs_lowerl(0.0), 1.0);
        assert!((gap_lower41_vs_lowerl(0.5) - 0.0625).abs() < 1e-12);
        assert_eq!(gap_lower41_vs_lower42(1.0), 0.0);
        let g0 = gap_lower41_vs_lower42(0.0);
        assert!((g0 - (3.0 - 2.0 * SQRT_2) / 8.0).abs() < 1e-16);
    }

    #[test]
    fn rationalised_gaps_match_direct_forms() {
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let g = gap_lower41_vs_lower42(x);
            let direct = gap_lower41_vs_lower42_direct(x);
            assert!((g - direct).abs() < 1e-15, "x={x}");
            let u = (5.0 * x * x + 6.0 * x + 5.0) / (8.0 * (1.0 + x));
            let v = (3.0 * x * x + 2.0 * x + 3.0).sqrt() / (2.0 * SQRT_2);
            assert!((lower41_minus_lowerl(x) - (u - v)).abs() < 1e-15, "x={x}");
        }
    }

    #[test]
    fn perturbed_alpha_breaks_lower_bound_near_diagonal() {
        let (lo, _) = envelope_31_margins(md(1e-3), SHARP.alpha1 + 1e-3, SHARP.beta1).unwrap();
        assert!(lo < 0.0);
        let (_, hi) =
            envelope_31_margins(md(1.0 - 1e-6), SHARP.alpha1, SHARP.beta1 - 1e-3).unwrap();
        assert!(hi < 0.0);
    }

    #[test]
    fn margins_agree_with_direct_differences() {
        for &(a, b) in &[(1.0, 0.5), (3.0, 1.0), (1.0, 0.01)] {
            let p = pair(a, b);
            let m = to_modulus(p).unwrap();
            let big_a = classical_mean(MeanKind::Arithmetic, p);
            let t = crate::means::toader(p);
            let (lo, hi) = toader_envelope_31(p).unwrap();
            let (ml, mh) = envelope_31_margins(m, SHARP.alpha1, SHARP.beta1).unwrap();
            assert!(((t - lo) / big_a - ml).abs() < 1e-14);
            assert!(((hi - t) / big_a - mh).abs() < 1e-14);
            let (lo, hi) = toader_envelope_32(p).unwrap();
            let (ml, mh) = envelope_32_margins(m, SHARP.alpha2, SHARP.beta2).unwrap();
            assert!((big_a / t - big_a / hi - ml).abs() < 1e-14);
            assert!((big_a / lo - big_a / t - mh).abs() < 1e-14);
        }
    }

    #[test]
    fn eq41_margins_agree_with_direct() {
        for r in [0.3, 0.6, 0.9] {
            let m = md(r);
            let e = ellip_e(m);
            let (ml, mh) = eq41_margins(m).unwrap();
            let lo = e_bound(BoundFamily::Lower41, m).unwrap();
            let hi = e_bound(BoundFamily::Upper41J, m).unwrap();
            assert!((e - lo - ml).abs() < 1e-14, "r={r}");
            assert!((hi - e - mh).abs() < 1e-14, "r={r}");
        }
    }
}
