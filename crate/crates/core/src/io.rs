//! Flat-file formats shared by the library types and the CLI.

use std::fmt::Write;

/// Full-precision decimal rendering (17 significant digits).
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Builds a CSV document from a header and rows of pre-rendered cells.
pub fn csv<I, R>(header: &str, rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let mut first = true;
        for cell in row {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&cell);
        }
        out.push('\n');
    }
    out
}

/// Renders `(x, f)` samples of a curve as the `x,f` CSV.
pub fn curve_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("x,f\n");
    for &(x, f) in points {
        writeln!(out, "{},{}", num(x), num(f)).unwrap();
    }
    out
}

/// `count` uniform points over `[lo, hi]` (both ends included).
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count)
                .map(|i| if i + 1 == count { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}
