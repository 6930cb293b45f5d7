use std::io::Write;

use crate::bounds::{tightness_row, BoundFamily, TightnessRow};
use crate::elliptic::Modulus;
use crate::error::{Error, Result};

/// Grid, columns and print precision for a table of bounds on E(r).
#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub grid: Vec<f64>,
    pub families: Vec<BoundFamily>,
    /// Fixed decimal digits; `None` prints the shortest round-trip form.
    pub precision: Option<usize>,
}

impl Default for TableSpec {
    /// r = 0.1, 0.2, …, 0.9 with J, D, Q, Y followed by the four lower bounds.
    fn default() -> Self {
        Self {
            grid: (1..=9).map(|i| i as f64 / 10.0).collect(),
            families: BoundFamily::TABLE_ORDER.to_vec(),
            precision: Some(9),
        }
    }
}

impl TableSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::Config("table grid is empty".into()));
        }
        if let Some(bad) = self.grid.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::Config(format!(
                "grid value {bad} is not strictly inside (0, 1)"
            )));
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("grid must be strictly increasing".into()));
        }
        if self.families.is_empty() {
            return Err(Error::Config("table needs at least one bound family".into()));
        }
        Ok(())
    }
}

/// Parses `start:stop:step` into an inclusive decimal grid.
///
/// Points are generated as integers over a common power of ten, so
/// `0.1:0.9:0.1` yields exactly the literals 0.1, 0.2, …, 0.9.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!(
            "grid must look like start:stop:step, got '{spec}'"
        )));
    }
    let decimals = parts
        .iter()
        .map(|p| p.split_once('.').map_or(0, |(_, frac)| frac.len()))
        .max()
        .unwrap_or(0);
    if decimals > 15 {
        return Err(Error::Config(format!("too many decimals in grid '{spec}'")));
    }
    let scale = 10f64.powi(decimals as i32);
    let to_units = |s: &str| -> Result<i64> {
        let v: f64 = s
            .parse()
            .map_err(|_| Error::Config(format!("'{s}' is not a number")))?;
        Ok((v * scale).round() as i64)
    };
    let (start, stop, step) = (to_units(parts[0])?, to_units(parts[1])?, to_units(parts[2])?);
    if step <= 0 {
        return Err(Error::Config("grid step must be positive".into()));
    }
    if stop < start {
        return Err(Error::Config("grid stop is below start".into()));
    }
    let count = (stop - start) / step + 1;
    if count > 10_000_000 {
        return Err(Error::Config(format!("grid has {count} points")));
    }
    Ok((0..count)
        .map(|i| (start + i * step) as f64 / scale)
        .collect())
}

/// One row per grid point with E(r) and the selected families.
pub fn build_table(spec: &TableSpec) -> Result<Vec<TightnessRow>> {
    spec.validate()?;
    spec.grid
        .iter()
        .map(|&r| tightness_row(Modulus::new(r)?, &spec.families))
        .collect()
}

pub fn format_number(v: f64, precision: Option<usize>) -> String {
    match precision {
        Some(d) => format!("{v:.d$}"),
        None => format!("{v}"),
    }
}

/// Writes `r,E,<family columns…>` with a header row and LF line endings.
pub fn write_csv<W: Write>(
    out: W,
    spec: &TableSpec,
    rows: &[TightnessRow],
) -> Result<()> {
    let io_err = |e: csv::Error| Error::Config(format!("csv write failed: {e}"));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header = vec!["r".to_string(), "E".to_string()];
    header.extend(spec.families.iter().map(|f| f.column().to_string()));
    w.write_record(&header).map_err(io_err)?;
    for row in rows {
        let mut rec = vec![
            format_number(row.r, None),
            format_number(row.e_true, spec.precision),
        ];
        for &f in &spec.families {
            let v = row.value(f).expect("row built from the same spec");
            rec.push(format_number(v, spec.precision));
        }
        w.write_record(&rec).map_err(io_err)?;
    }
    w.flush()
        .map_err(|e| Error::Config(format!("csv flush failed: {e}")))?;
    Ok(())
}
