use std::fmt::Write as _;
use std::path::Path;

use fracdiff::{ErrorReport, SolutionField};
use serde::Serialize;

use crate::args::Format;

/// `v` with 17 significant digits: positional notation for moderate
/// magnitudes, scientific otherwise.
pub fn sig17(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.16e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..16).contains(&exp) {
        format!("{v:.*}", (16 - exp) as usize)
    } else {
        sci
    }
}

pub fn field_csv(field: &SolutionField) -> String {
    let mut s = String::from("x,t,value,error_estimate,provenance\n");
    let prov = field.provenance.as_str();
    for k in 0..field.grid.len() {
        let (x, t) = field.grid.point(k);
        let _ = writeln!(
            s,
            "{},{},{},{},{prov}",
            sig17(x),
            sig17(t),
            sig17(field.values[k]),
            sig17(field.error_estimates[k])
        );
    }
    s
}

pub fn report_csv(report: &ErrorReport) -> String {
    let mut s = String::from("x,t,difference\n");
    for (k, d) in report.pointwise.iter().enumerate() {
        let (x, t) = report.grid.point(k);
        let _ = writeln!(s, "{},{},{}", sig17(x), sig17(t), sig17(*d));
    }
    s
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

pub fn render_field(field: &SolutionField, format: Format) -> String {
    match format {
        Format::Csv => field_csv(field),
        Format::Json => json(field),
    }
}

pub fn render_report(report: &ErrorReport, format: Format) -> String {
    match format {
        Format::Csv => report_csv(report),
        Format::Json => json(report),
    }
}

/// Write to `path`, or to standard output when absent.
pub fn emit(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, content),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()
        }
    }
}
