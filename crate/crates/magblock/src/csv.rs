//! CSV rendering of sweep results.

use std::io::{self, Write};

use magblock_core::sweep::RECORDED_POPULATIONS;
use magblock_core::SweepResult;

const AXIS_COLUMNS: [&str; 2] = ["axis1", "axis2"];
const VALUE_COLUMNS: [&str; 10] = [
    "g2",
    "log10_g2",
    "p0",
    "p1",
    "p2",
    "p3",
    "p4",
    "mean_magnon",
    "qubit_excitation",
    "residual",
];

/// Shortest decimal that parses back to the same `f64`; scientific notation
/// outside `[1e-5, 1e16)`.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn header(axes: usize) -> String {
    let mut cols: Vec<&str> = AXIS_COLUMNS[..axes].to_vec();
    cols.extend(VALUE_COLUMNS);
    cols.join(",")
}

/// Writes a header and one LF-terminated line per record. Undefined `g²(0)`
/// leaves its two fields empty.
pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    debug_assert_eq!(VALUE_COLUMNS.len(), 5 + RECORDED_POPULATIONS);
    let mut line = header(result.axes.len());
    line.push('\n');
    out.write_all(line.as_bytes())?;
    for r in &result.records {
        line.clear();
        let mut fields: Vec<String> = r.coordinates.iter().map(|&c| format_real(c)).collect();
        fields.push(r.g2_zero.map(format_real).unwrap_or_default());
        fields.push(r.log10_g2.map(format_real).unwrap_or_default());
        fields.extend(r.p_n.iter().map(|&p| format_real(p)));
        fields.push(format_real(r.mean_magnon));
        fields.push(format_real(r.qubit_excitation));
        fields.push(format_real(r.residual_norm));
        line.push_str(&fields.join(","));
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

pub fn to_csv_string(result: &SweepResult) -> String {
    let mut buf = Vec::new();
    write_csv(result, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}
