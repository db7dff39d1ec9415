//! Output records: versioned JSON reports and CSV grids.

use ringtangle::sweep::GridResult;
use serde::Serialize;

/// Version stamp carried by every emitted record.
pub const SCHEMA_VERSION: u32 = 1;

/// Wraps a serializable report with the schema version and a report tag.
#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub schema_version: u32,
    pub report: &'static str,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(report: &'static str, body: T) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            report,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// 17 significant digits: round-trip exact for f64.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Render a grid as CSV: `#`-prefixed metadata lines, a header row naming
/// the axes, then one `axis1,axis2,tangle` line per grid point (axis 1 is
/// the outer loop).
pub fn grid_to_csv(grid: &GridResult) -> String {
    let (name1, name2) = grid.spec.kind.axis_names();
    let mut out = String::new();
    out.push_str(&format!("# ringtangle grid schema {SCHEMA_VERSION}\n"));
    out.push_str(&format!(
        "# n={} j={} pair_separation={} temperature={} version={}\n",
        grid.meta.n_qubits,
        grid.meta.coupling,
        grid.meta.pair_separation,
        grid.meta
            .temperature
            .map_or_else(|| "axis2".to_string(), |t| t.to_string()),
        grid.meta.library_version,
    ));
    out.push_str(&format!("{name1},{name2},tangle\n"));
    for i1 in 0..grid.spec.axis1.steps {
        let x1 = grid.spec.axis1.value(i1);
        for i2 in 0..grid.spec.axis2.steps {
            let x2 = grid.spec.axis2.value(i2);
            out.push_str(&format_f64(x1));
            out.push(',');
            out.push_str(&format_f64(x2));
            out.push(',');
            out.push_str(&format_f64(grid.value(i1, i2)));
            out.push('\n');
        }
    }
    out
}

/// Render a grid as JSON with full metadata.
pub fn grid_to_json(grid: &GridResult) -> String {
    Report::new("grid", grid).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits_roundtrip() {
        for v in [0.1, 1.0 / 3.0, std::f64::consts::PI, 2.0f64.sqrt() * 1e-7] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }
}
