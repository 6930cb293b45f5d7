use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;

use toader::elliptic::{
    ellip_e, ellip_k, elliptic_derivatives, elliptic_oracle, landen_check, EllipticKind, Modulus,
};

fn md(r: f64) -> Modulus {
    Modulus::new(r).unwrap()
}

proptest! {
    #[test]
    fn ordering_and_monotonicity(r in 0.0f64..0.999, dr in 1e-6f64..1e-3) {
        let (m, n) = (md(r), md(r + dr));
        prop_assert!(ellip_e(n) < ellip_e(m));
        prop_assert!(ellip_k(n).unwrap() > ellip_k(m).unwrap());
        prop_assert!(1.0 <= ellip_e(m) && ellip_e(m) <= FRAC_PI_2);
        prop_assert!(ellip_k(m).unwrap() >= FRAC_PI_2);
    }

    #[test]
    fn landen_holds(r in 0.0f64..0.99) {
        let (lhs, rhs) = landen_check(md(r)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn derivative_signs(r in 0.001f64..0.999) {
        let (dk, de) = elliptic_derivatives(md(r)).unwrap();
        prop_assert!(dk > 0.0 && de < 0.0);
    }

    #[test]
    fn legendre_relation(r in 0.01f64..0.99) {
        let m = md(r);
        let c = m.complement();
        let (k, e) = (ellip_k(m).unwrap(), ellip_e(m));
        let (kc, ec) = (ellip_k(c).unwrap(), ellip_e(c));
        prop_assert!((e * kc + ec * k - k * kc - FRAC_PI_2).abs() < 1e-13);
    }
}

#[test]
fn agm_matches_quadrature_spot_checks() {
    for r in [0.0, 0.3, 0.7, 0.95] {
        let m = md(r);
        let e = elliptic_oracle(EllipticKind::Second, m, 20_000).unwrap();
        let k = elliptic_oracle(EllipticKind::First, m, 20_000).unwrap();
        assert!((e - ellip_e(m)).abs() < 1e-12, "E at {r}");
        assert!((k - ellip_k(m).unwrap()).abs() < 1e-12, "K at {r}");
    }
}

#[test]
fn singular_endpoint() {
    assert!(ellip_k(md(1.0)).is_err());
    assert_eq!(ellip_e(md(1.0)), 1.0);
    assert!(elliptic_derivatives(md(1.0)).is_err());
    assert!(Modulus::new(1.5).is_err());
    assert!(Modulus::new(-0.1).is_err());
}
