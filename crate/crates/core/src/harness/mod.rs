//! Table reproduction, verification suites and single evaluations; the CLI
//! in `main.rs` is a thin layer over these.

pub mod eval;
pub mod table;
pub mod verify;

pub use eval::{eval_single, parse_args, Target};
pub use table::{build_table, format_number, parse_grid, write_csv, TableSpec};
pub use verify::{run_verification, Suite, VerificationReport};

/// Formats `v` with `digits` significant digits in positional notation.
pub fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exponent = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Process exit codes of the CLI.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const USAGE: i32 = 2;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(significant(0.75, 17), "0.75000000000000000");
        assert_eq!(significant(0.25, 3), "0.250");
        assert_eq!(significant(123.456, 4), "123.5");
    }
}
