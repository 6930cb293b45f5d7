use std::f64::consts::PI;

use toader::bounds::{
    comparison_row, e_bound, toader_envelope_31, toader_envelope_32, BoundFamily,
};
use toader::elliptic::{elliptic_oracle, EllipticKind, Modulus};
use toader::means::{toader, PositivePair};

fn md(r: f64) -> Modulus {
    Modulus::new(r).unwrap()
}

fn uppers(r: f64) -> [f64; 4] {
    [
        BoundFamily::Upper41J,
        BoundFamily::Upper42D,
        BoundFamily::Upper43Q,
        BoundFamily::UpperLY,
    ]
    .map(|f| e_bound(f, md(r)).unwrap())
}

#[test]
fn comparison_row_flags_hold() {
    for r in [0.1, 0.3, 0.5, 0.9] {
        let row = comparison_row(md(r)).unwrap();
        assert_eq!(row.values.len(), 8);
        assert!(row.values.iter().all(|v| v.holds), "r = {r}");
        assert!(row.lower_ok() && row.upper_ok());
    }
}

#[test]
fn upper_bound_ordering_changes_with_r() {
    let [j, d, q, y] = uppers(0.5);
    assert!(j < d && d < y && y < q);
    let [j, d, q, y] = uppers(0.9);
    assert!(j < d && d < q && q < y);
}

#[test]
fn envelopes_sandwich_toader() {
    for (a, b) in [(1.0, 0.5), (1e6, 1.0), (2.0, 7.0)] {
        let p = PositivePair::new(a, b).unwrap();
        let t = toader(p);
        let (lo, hi) = toader_envelope_31(p).unwrap();
        assert!(lo < t && t < hi, "31 at ({a}, {b})");
        let (lo, hi) = toader_envelope_32(p).unwrap();
        assert!(lo < t && t < hi, "32 at ({a}, {b})");
    }
}

#[test]
fn toader_matches_direct_integral() {
    let p = PositivePair::new(1.0, 0.5).unwrap();
    let e = elliptic_oracle(EllipticKind::Second, Modulus::from_complement(0.5).unwrap(), 20_000)
        .unwrap();
    assert!((toader(p) - 2.0 / PI * e).abs() < 1e-9);
}

#[test]
fn diagonal_pair_is_degenerate() {
    let p = PositivePair::new(2.0, 2.0).unwrap();
    assert!(toader_envelope_31(p).is_err());
}

#[test]
fn family_names_round_trip() {
    for f in BoundFamily::ALL {
        assert_eq!(f.name().parse::<BoundFamily>().unwrap(), f);
        assert_eq!(f.column().parse::<BoundFamily>().unwrap(), f);
    }
}
