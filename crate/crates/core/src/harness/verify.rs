//! Seeded verification suites.
//!
//! Pair suites fix a = 1 and draw b = t log-uniformly from [1e-6, 1); grid
//! suites walk a uniform interior grid. Every suite decides each inequality
//! from its reduced, cancellation-free margin and additionally guards the
//! direct evaluation (bound vs. value as computed by the public functions):
//! a direct difference on the wrong side by more than a few ulps is also a
//! violation.
//!
//! Sample `i` draws from ChaCha stream `i` of the seed, so a report does not
//! depend on how rayon schedules the work.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    e_bound, envelope_31_margins, envelope_32_margins, eq41_margins, gap_lower41_vs_lower42,
    gap_lower41_vs_lowerl, lower41_minus_lowerl, lower42_polynomial, to_modulus,
    toader_envelope_31, toader_envelope_32, BoundFamily, SHARP,
};
use crate::elliptic::{ellip_e, landen_check, Modulus};
use crate::error::{Error, Result};
use crate::means::{
    classical_mean, power_mean, toader, toader_minus_power_excess, MeanKind, PositivePair,
};

/// Smallest ratio b/a drawn by the pair suites.
pub const MIN_RATIO: f64 = 1e-6;

/// Tolerance on the Landen residual.
pub const LANDEN_TOLERANCE: f64 = 1e-12;
/// Relative tolerance on the polynomial identities.
pub const POLYNOMIAL_TOLERANCE: f64 = 1e-10;
/// Modulus range scanned for the Landen identity.
pub const LANDEN_RANGE: (f64, f64) = (0.001, 0.99);

/// Direct differences may be on the wrong side by this many ulps of the
/// compared value before they count as a violation.
const DIRECT_GUARD_ULPS: f64 = 8.0;

/// Exponent of the best power-mean upper bound, ln 2 / ln(π/2).
pub fn alzer_qiu_exponent() -> f64 {
    std::f64::consts::LN_2 / FRAC_PI_2.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    /// Convex-combination envelope with the sharp constants.
    Thm31,
    /// Harmonic-combination envelope with the sharp constants.
    Thm32,
    /// M_{3/2} < T < M_{ln2/ln(π/2)}.
    Eq14_15,
    /// A < T < S.
    Eq16,
    /// LOWER_41 < E < UPPER_41_J.
    Eq41,
    /// LOWER_41 ≥ LOWER_42 and LOWER_41 ≥ LOWER_L, plus both polynomial identities.
    Dominance,
    /// Landen identity and polynomial identities.
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Thm31,
        Suite::Thm32,
        Suite::Eq14_15,
        Suite::Eq16,
        Suite::Eq41,
        Suite::Dominance,
        Suite::Identities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm31 => "THM31",
            Suite::Thm32 => "THM32",
            Suite::Eq14_15 => "EQ14_15",
            Suite::Eq16 => "EQ16",
            Suite::Eq41 => "EQ41",
            Suite::Dominance => "DOMINANCE",
            Suite::Identities => "IDENTITIES",
        }
    }

    /// Whether the suite samples random pairs (vs. a deterministic grid).
    pub fn uses_pairs(self) -> bool {
        matches!(self, Suite::Thm31 | Suite::Thm32 | Suite::Eq14_15 | Suite::Eq16)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite_name: String,
    pub samples: u64,
    pub violations: u64,
    /// Smallest slack observed over all checked inequalities (negative when violated).
    pub worst_margin: f64,
    pub worst_case_input: String,
    pub seed: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report is always serialisable")
    }
}

/// Checks on a single sample: the tightest slack and whether anything failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOutcome {
    pub margin: f64,
    pub violated: bool,
}

impl SampleOutcome {
    fn from_margins(margins: &[f64], direct_ok: bool) -> Self {
        let margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
        Self {
            margin,
            violated: margin.is_nan() || margin <= 0.0 || !direct_ok,
        }
    }
}

/// `lhs <= rhs` up to a few ulps of their magnitude.
fn direct_le(lhs: f64, rhs: f64) -> bool {
    lhs - rhs <= DIRECT_GUARD_ULPS * f64::EPSILON * lhs.abs().max(rhs.abs())
}

/// Draws the pair for sample `index`: a = 1, b log-uniform on [1e-6, 1).
///
/// Draws landing on b = 1 are rejected and redrawn from the same stream.
pub fn sample_pair(seed: u64, index: u64) -> PositivePair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let u: f64 = rng.random();
        let t = (MIN_RATIO.ln() * (1.0 - u)).exp();
        if t < 1.0 {
            if let Ok(p) = PositivePair::new(1.0, t) {
                return p;
            }
        }
    }
}

/// Evaluates a pair suite on one pair. `Ok(None)` means the pair was rejected
/// (a = b); such pairs never count toward samples or violations.
pub fn evaluate_pair(suite: Suite, p: PositivePair) -> Result<Option<SampleOutcome>> {
    if !suite.uses_pairs() {
        return Err(Error::Config(format!("{suite} is a grid suite")));
    }
    if p.is_diagonal() {
        return Ok(None);
    }
    let m = to_modulus(p)?;
    let r = m.r();
    let t = toader(p);
    let outcome = match suite {
        Suite::Thm31 => {
            let (lo, hi) = envelope_31_margins(m, SHARP.alpha1, SHARP.beta1)?;
            let (dlo, dhi) = toader_envelope_31(p)?;
            SampleOutcome::from_margins(&[lo, hi], direct_le(dlo, t) && direct_le(t, dhi))
        }
        Suite::Thm32 => {
            let (lo, hi) = envelope_32_margins(m, SHARP.alpha2, SHARP.beta2)?;
            let (dlo, dhi) = toader_envelope_32(p)?;
            SampleOutcome::from_margins(&[lo, hi], direct_le(dlo, t) && direct_le(t, dhi))
        }
        Suite::Eq14_15 => {
            let q_hi = alzer_qiu_exponent();
            let lo = toader_minus_power_excess(1.5, r)?;
            let hi = -toader_minus_power_excess(q_hi, r)?;
            let direct = direct_le(power_mean(1.5, p), t) && direct_le(t, power_mean(q_hi, p));
            SampleOutcome::from_margins(&[lo, hi], direct)
        }
        Suite::Eq16 => {
            let lo = toader_minus_power_excess(1.0, r)?;
            let hi = -toader_minus_power_excess(2.0, r)?;
            let direct = direct_le(classical_mean(MeanKind::Arithmetic, p), t)
                && direct_le(t, classical_mean(MeanKind::Quadratic, p));
            SampleOutcome::from_margins(&[lo, hi], direct)
        }
        _ => unreachable!("grid suites are rejected above"),
    };
    Ok(Some(outcome))
}

/// Interior uniform grid i/(n + 1), i = 1..=n.
fn interior_point(index: u64, samples: u64) -> f64 {
    (index + 1) as f64 / (samples + 1) as f64
}

/// Point `index` of an n-point uniform grid over `[lo, hi]`.
fn closed_point(index: u64, samples: u64, (lo, hi): (f64, f64)) -> f64 {
    if samples <= 1 {
        return lo;
    }
    lo + (hi - lo) * index as f64 / (samples - 1) as f64
}

fn polynomial_residuals(x: f64) -> (f64, f64) {
    let rhs = (1.0 - x).powi(4);
    let rel = |lhs: f64| {
        if rhs == 0.0 {
            lhs.abs()
        } else {
            ((lhs - rhs) / rhs).abs()
        }
    };
    (rel(lower42_polynomial(x)), rel(gap_lower41_vs_lowerl(x)))
}

/// Evaluates a grid suite at grid index `index` of `samples`.
///
/// Returns the outcome and a description of the input.
pub fn evaluate_grid_point(
    suite: Suite,
    index: u64,
    samples: u64,
) -> Result<(SampleOutcome, String)> {
    match suite {
        Suite::Eq41 => {
            let r = interior_point(index, samples);
            let m = Modulus::new(r)?;
            let (lo, hi) = eq41_margins(m)?;
            let e = ellip_e(m);
            let direct = direct_le(e_bound(BoundFamily::Lower41, m)?, e)
                && direct_le(e, e_bound(BoundFamily::Upper41J, m)?);
            Ok((SampleOutcome::from_margins(&[lo, hi], direct), format!("r={r}")))
        }
        Suite::Dominance => {
            let x = interior_point(index, samples);
            let lo42 = FRAC_PI_2 * gap_lower41_vs_lower42(x);
            let lo_l = FRAC_PI_2 * lower41_minus_lowerl(x);
            let (res42, res_l) = polynomial_residuals(x);
            let m = Modulus::from_complement(x)?;
            let l41 = e_bound(BoundFamily::Lower41, m)?;
            let direct = direct_le(e_bound(BoundFamily::Lower42, m)?, l41)
                && direct_le(e_bound(BoundFamily::LowerL, m)?, l41)
                && res42 <= POLYNOMIAL_TOLERANCE
                && res_l <= POLYNOMIAL_TOLERANCE;
            Ok((SampleOutcome::from_margins(&[lo42, lo_l], direct), format!("x={x}")))
        }
        Suite::Identities => {
            let r = closed_point(index, samples, LANDEN_RANGE);
            let (lhs, rhs) = landen_check(Modulus::new(r)?)?;
            let x = interior_point(index, samples);
            let (res42, res_l) = polynomial_residuals(x);
            // Slack as the unused fraction of each tolerance.
            let margins = [
                1.0 - (lhs - rhs).abs() / LANDEN_TOLERANCE,
                1.0 - res42 / POLYNOMIAL_TOLERANCE,
                1.0 - res_l / POLYNOMIAL_TOLERANCE,
            ];
            Ok((SampleOutcome::from_margins(&margins, true), format!("r={r},x={x}")))
        }
        _ => Err(Error::Config(format!("{suite} is a pair suite"))),
    }
}

#[derive(Debug, Clone)]
struct Partial {
    violations: u64,
    worst: Option<(f64, u64, String)>,
}

impl Partial {
    fn merge(self, other: Self) -> Self {
        let worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => {
                // Ties broken by index so the result is schedule-independent.
                if (b.0, b.1) < (a.0, a.1) || a.0.is_nan() {
                    Some(b)
                } else {
                    Some(a)
                }
            }
            (a, b) => a.or(b),
        };
        Self {
            violations: self.violations + other.violations,
            worst,
        }
    }
}

/// Runs one suite with `samples` pairs or grid points.
pub fn run_verification(suite: Suite, samples: u64, seed: u64) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::Config("samples must be at least 1".into()));
    }
    let partial = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Partial> {
            let (outcome, input) = if suite.uses_pairs() {
                let p = sample_pair(seed, i);
                let outcome = evaluate_pair(suite, p)?.expect("sampled pairs are off-diagonal");
                (outcome, format!("a={},b={}", p.a(), p.b()))
            } else {
                evaluate_grid_point(suite, i, samples)?
            };
            Ok(Partial {
                violations: u64::from(outcome.violated),
                worst: Some((outcome.margin, i, input)),
            })
        })
        .try_reduce(
            || Partial {
                violations: 0,
                worst: None,
            },
            |a, b| Ok(a.merge(b)),
        )?;
    let (worst_margin, _, worst_case_input) = partial.worst.expect("samples >= 1");
    Ok(VerificationReport {
        suite_name: suite.name().to_string(),
        samples,
        violations: partial.violations,
        worst_margin,
        worst_case_input,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("thm31".parse::<Suite>().unwrap(), Suite::Thm31);
        assert!(matches!("THM99".parse::<Suite>(), Err(Error::Config(_))));
    }

    #[test]
    fn sampling_is_reproducible_and_in_range() {
        for i in 0..1000 {
            let p = sample_pair(7, i);
            assert_eq!(p, sample_pair(7, i));
            assert_eq!(p.a(), 1.0);
            assert!(p.b() >= MIN_RATIO * (1.0 - 1e-12) && p.b() < 1.0);
        }
        assert_ne!(sample_pair(7, 0), sample_pair(8, 0));
        assert_ne!(sample_pair(7, 0), sample_pair(7, 1));
    }

    #[test]
    fn diagonal_pair_is_rejected_not_violated() {
        let p = PositivePair::new(1.0, 1.0).unwrap();
        for s in [Suite::Thm31, Suite::Thm32, Suite::Eq14_15, Suite::Eq16] {
            assert_eq!(evaluate_pair(s, p).unwrap(), None);
        }
        let report = run_verification(Suite::Eq16, 1, 3).unwrap();
        assert_eq!(report.samples, 1);
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn grid_and_pair_suites_are_not_interchangeable() {
        let p = PositivePair::new(1.0, 0.5).unwrap();
        assert!(evaluate_pair(Suite::Eq41, p).is_err());
        assert!(evaluate_grid_point(Suite::Thm31, 0, 10).is_err());
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(matches!(
            run_verification(Suite::Thm31, 0, 1),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn report_serialises_to_one_line() {
        let r = run_verification(Suite::Thm31, 100, 42).unwrap();
        let line = r.to_json_line();
        assert!(!line.contains('\n'));
        let back: VerificationReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
        for key in [
            "suite_name",
            "samples",
            "violations",
            "worst_margin",
            "worst_case_input",
            "seed",
        ] {
            assert!(line.contains(key), "{key} missing from {line}");
        }
    }

    #[test]
    fn perturbed_constants_are_caught() {
        // The near-diagonal pair a = 1, b = 0.998 has r ≈ 1e-3.
        let p = PositivePair::new(1.0, 0.998).unwrap();
        let m = to_modulus(p).unwrap();
        let (lo, _) = envelope_31_margins(m, SHARP.alpha1 + 1e-3, SHARP.beta1).unwrap();
        assert!(lo < 0.0);
    }
}
