//! Legendre's complete elliptic integrals of the first and second kind.
//!
//! Everything here is parameterised by the modulus `r` (not the parameter
//! `m = r²` used by some libraries):
//!
//! ```text
//! K(r) = ∫₀^{π/2} dθ / √(1 − r² sin²θ)
//! E(r) = ∫₀^{π/2} √(1 − r² sin²θ) dθ
//! ```
//!
//! The fast path is the arithmetic–geometric mean iteration; a composite
//! Gauss–Legendre quadrature of the defining integrals is kept alongside as
//! an independent oracle.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Relative gap between the AGM sequences at which iteration stops.
pub const AGM_TOLERANCE: f64 = 1e-16;

const AGM_MAX_ITER: usize = 64;

/// Moduli above `1 − NEAR_SINGULAR_GAP` get a warning flag from [`ellip_k_flagged`].
pub const NEAR_SINGULAR_GAP: f64 = 1e-12;

/// Minimum number of panels accepted by [`elliptic_oracle`].
pub const ORACLE_MIN_PANELS: usize = 8;

/// Nodes per panel in the oracle's composite rule.
pub const ORACLE_ORDER: usize = 8;

/// A validated elliptic modulus `r ∈ [0, 1]` together with `r′ = √(1 − r²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    r: f64,
    r_prime: f64,
}

impl Modulus {
    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!("modulus r = {r} is outside [0, 1]")));
        }
        // (1 − r)(1 + r) keeps r′ accurate when r is close to 1.
        let r_prime = ((1.0 - r) * (1.0 + r)).sqrt();
        Ok(Self { r, r_prime })
    }

    /// Builds the modulus whose complement is `r_prime`.
    pub fn from_complement(r_prime: f64) -> Result<Self> {
        let m = Self::new(r_prime)?;
        Ok(Self {
            r: m.r_prime,
            r_prime,
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn r_prime(&self) -> f64 {
        self.r_prime
    }

    /// The complementary modulus `r′`, used for K′(r) = K(r′) and E′(r) = E(r′).
    pub fn complement(&self) -> Self {
        Self {
            r: self.r_prime,
            r_prime: self.r,
        }
    }

    /// True for `r ∈ (0, 1)`.
    pub fn is_interior(&self) -> bool {
        self.r > 0.0 && self.r < 1.0
    }

    pub(crate) fn require_interior(&self, what: &str) -> Result<()> {
        if self.is_interior() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} requires r in (0, 1), got r = {}",
                self.r
            )))
        }
    }
}

/// Values of K(r) and E(r) at one modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticValues {
    pub k: f64,
    pub e: f64,
}

/// K(r) together with a flag raised when `r > 1 − 1e-12`.
///
/// No asymptotic branch is used near the singularity; the flag only tells the
/// caller that the logarithmic blow-up is being resolved by plain AGM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KValue {
    pub value: f64,
    pub near_singular: bool,
}

/// Which integral the oracle evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EllipticKind {
    First,
    Second,
}

/// Runs the AGM on (1, r′) and returns (K, E).
///
/// E uses the classical correction E = K·(1 − Σ 2^{n−1} c_n²) with
/// c₀ = r and c_{n+1} = c_n² / (4 a_{n+1}), which avoids forming a_n − b_n.
fn agm_pair(m: Modulus) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = m.r_prime;
    let mut c = m.r;
    let mut weight = 0.5;
    let mut sum = weight * c * c;
    for _ in 0..AGM_MAX_ITER {
        if c <= AGM_TOLERANCE * a {
            break;
        }
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        c = c * c / (4.0 * a_next);
        a = a_next;
        b = b_next;
        weight *= 2.0;
        sum += weight * c * c;
    }
    let k = PI / (2.0 * a);
    (k, k * (1.0 - sum))
}

/// Complete elliptic integral of the first kind.
///
/// K(0) = π/2 is returned exactly; K(1) = ∞ is reported as
/// [`Error::DivergentIntegral`].
pub fn ellip_k(m: Modulus) -> Result<f64> {
    ellip_k_flagged(m).map(|k| k.value)
}

/// Like [`ellip_k`], with the near-singular warning flag attached.
pub fn ellip_k_flagged(m: Modulus) -> Result<KValue> {
    if m.r == 1.0 {
        return Err(Error::DivergentIntegral("K(1) is infinite".into()));
    }
    let value = if m.r == 0.0 { FRAC_PI_2 } else { agm_pair(m).0 };
    Ok(KValue {
        value,
        near_singular: m.r > 1.0 - NEAR_SINGULAR_GAP,
    })
}

/// Complete elliptic integral of the second kind. E(0) = π/2 and E(1) = 1
/// are exact.
pub fn ellip_e(m: Modulus) -> f64 {
    if m.r == 0.0 {
        FRAC_PI_2
    } else if m.r == 1.0 {
        1.0
    } else {
        agm_pair(m).1
    }
}

/// K and E from a single AGM run. Requires `r < 1`.
pub fn elliptic_values(m: Modulus) -> Result<EllipticValues> {
    if m.r == 1.0 {
        return Err(Error::DivergentIntegral("K(1) is infinite".into()));
    }
    if m.r == 0.0 {
        return Ok(EllipticValues {
            k: FRAC_PI_2,
            e: FRAC_PI_2,
        });
    }
    let (k, e) = agm_pair(m);
    Ok(EllipticValues { k, e })
}

/// Maclaurin coefficients in x = r² of (2/π)K and (2/π)E, up to x^n.
///
/// (2/π)K = Σ c_k x^k with c_k = ((1/2)_k / k!)², and (2/π)E = Σ d_k x^k
/// with d_k = −c_k / (2k − 1).
pub fn series_coeffs(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut c = Vec::with_capacity(n + 1);
    let mut d = Vec::with_capacity(n + 1);
    c.push(1.0);
    d.push(1.0);
    for k in 1..=n {
        let kf = k as f64;
        let ratio = (kf - 0.5) / kf;
        let ck = c[k - 1] * ratio * ratio;
        c.push(ck);
        d.push(-ck / (2.0 * kf - 1.0));
    }
    (c, d)
}

/// Composite Gauss–Legendre quadrature of the defining integrals over
/// [0, π/2], with [`ORACLE_ORDER`] nodes per panel.
///
/// The integrands depend on θ only through sin²θ, so the nodes are expanded
/// once and reused for every modulus. Cross-check only; far slower than AGM.
#[derive(Debug, Clone)]
pub struct EllipticOracle {
    sin2: Vec<f64>,
    weights: Vec<f64>,
}

impl EllipticOracle {
    pub fn new(panels: usize) -> Result<Self> {
        if panels < ORACLE_MIN_PANELS {
            return Err(Error::Domain(format!(
                "oracle needs at least {ORACLE_MIN_PANELS} panels, got {panels}"
            )));
        }
        let rule = GaussLegendre::new(ORACLE_ORDER);
        let half = 0.5 * FRAC_PI_2 / panels as f64;
        let mut sin2 = Vec::with_capacity(panels * ORACLE_ORDER);
        let mut weights = Vec::with_capacity(panels * ORACLE_ORDER);
        for k in 0..panels {
            let mid = (2 * k + 1) as f64 * half;
            for (x, w) in rule.nodes().iter().zip(rule.weights()) {
                let s = (mid + half * x).sin();
                sin2.push(s * s);
                weights.push(w * half);
            }
        }
        Ok(Self { sin2, weights })
    }

    pub fn eval(&self, kind: EllipticKind, m: Modulus) -> Result<f64> {
        if kind == EllipticKind::First && m.r == 1.0 {
            return Err(Error::DivergentIntegral("K(1) is infinite".into()));
        }
        let r2 = m.r * m.r;
        let nodes = self.sin2.iter().zip(&self.weights);
        let value = match kind {
            EllipticKind::First => nodes.map(|(s2, w)| w / (1.0 - r2 * s2).sqrt()).sum(),
            EllipticKind::Second => nodes.map(|(s2, w)| w * (1.0 - r2 * s2).max(0.0).sqrt()).sum(),
        };
        Ok(value)
    }
}

/// One-shot [`EllipticOracle`] evaluation.
pub fn elliptic_oracle(kind: EllipticKind, m: Modulus, panels: usize) -> Result<f64> {
    if kind == EllipticKind::First && m.r == 1.0 {
        return Err(Error::DivergentIntegral("K(1) is infinite".into()));
    }
    EllipticOracle::new(panels)?.eval(kind, m)
}

/// Closed-form derivatives (dK/dr, dE/dr) on (0, 1):
///
/// ```text
/// dK/dr = (E − r′²K) / (r r′²)
/// dE/dr = (E − K) / r
/// ```
pub fn elliptic_derivatives(m: Modulus) -> Result<(f64, f64)> {
    m.require_interior("elliptic_derivatives")?;
    let EllipticValues { k, e } = elliptic_values(m)?;
    let rp2 = m.r_prime * m.r_prime;
    let dk_dr = (e - rp2 * k) / (m.r * rp2);
    let de_dr = (e - k) / m.r;
    Ok((dk_dr, de_dr))
}

/// Both sides of the Landen-type identity
/// E(2√r/(1+r)) = (2E(r) − r′²K(r)) / (1+r).
///
/// Accepts `r ∈ [0, 1)`; at r = 0 both sides are E(0).
pub fn landen_check(m: Modulus) -> Result<(f64, f64)> {
    if m.r == 1.0 {
        return Err(Error::Domain("landen_check requires r < 1".into()));
    }
    let r = m.r;
    // 1 − (2√r/(1+r))² = ((1−r)/(1+r))², so build the image from its complement.
    let image = Modulus::from_complement((1.0 - r) / (1.0 + r))?;
    let lhs = ellip_e(image);
    let EllipticValues { k, e } = elliptic_values(m)?;
    let rhs = (2.0 * e - m.r_prime * m.r_prime * k) / (1.0 + r);
    Ok((lhs, rhs))
}
