use std::str::FromStr;

use crate::bounds::{
    e_bound, lemma21_ratio, lemma23_value, quotient_f31, quotient_f32, BoundFamily,
};
use crate::elliptic::{ellip_e, ellip_k, Modulus};
use crate::error::{Error, Result};
use crate::means::{classical_mean, power_mean, toader, MeanKind, PositivePair};

/// Anything `eval` can compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Mean(MeanKind),
    Toader,
    /// Arguments: exponent, a, b.
    Power,
    Bound(BoundFamily),
    EllipK,
    EllipE,
    QuotientF31,
    QuotientF32,
    Lemma21,
    Lemma23,
}

impl Target {
    pub fn arity(self) -> usize {
        match self {
            Target::Mean(_) | Target::Toader => 2,
            Target::Power => 3,
            _ => 1,
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let target = match key.as_str() {
            "arithmetic" | "a" => Target::Mean(MeanKind::Arithmetic),
            "centroidal" | "c" => Target::Mean(MeanKind::Centroidal),
            "quadratic" | "s" => Target::Mean(MeanKind::Quadratic),
            "geometric" | "g" => Target::Mean(MeanKind::Geometric),
            "toader" | "t" => Target::Toader,
            "power" => Target::Power,
            "ellip_k" | "k" => Target::EllipK,
            "ellip_e" | "e" => Target::EllipE,
            "f31" | "quotient_f31" => Target::QuotientF31,
            "f32" | "quotient_f32" => Target::QuotientF32,
            "lemma21" | "lemma21_ratio" => Target::Lemma21,
            "lemma23" | "lemma23_value" => Target::Lemma23,
            _ => Target::Bound(s.parse().map_err(|_| {
                Error::Config(format!("unknown eval target '{s}'"))
            })?),
        };
        Ok(target)
    }
}

/// Parses a comma-separated argument list.
pub fn parse_args(raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("'{s}' is not a number")))
        })
        .collect()
}

/// Dispatches a single evaluation.
pub fn eval_single(target: Target, args: &[f64]) -> Result<f64> {
    if args.len() != target.arity() {
        return Err(Error::Config(format!(
            "{target:?} takes {} argument(s), got {}",
            target.arity(),
            args.len()
        )));
    }
    let modulus = || Modulus::new(args[0]);
    match target {
        Target::Mean(kind) => Ok(classical_mean(kind, PositivePair::new(args[0], args[1])?)),
        Target::Toader => Ok(toader(PositivePair::new(args[0], args[1])?)),
        Target::Power => Ok(power_mean(args[0], PositivePair::new(args[1], args[2])?)),
        Target::Bound(f) => e_bound(f, modulus()?),
        Target::EllipK => ellip_k(modulus()?),
        Target::EllipE => Ok(ellip_e(modulus()?)),
        Target::QuotientF31 => quotient_f31(modulus()?),
        Target::QuotientF32 => quotient_f32(modulus()?),
        Target::Lemma21 => lemma21_ratio(modulus()?),
        Target::Lemma23 => Ok(lemma23_value(modulus()?)),
    }
}
