//! CSV output for sweep rows.

use std::fmt::Write as _;

use crate::SweepRow;

/// Column header shared by every sweep and figure file.
pub const HEADER: &str = "mer_db,scheme,p_analytic,p_mc,ci_low,ci_high,p_lower_bound,p_upper_bound";

/// Formats `v` with 12 significant digits, like C's `%.12g`.
pub fn fmt_g12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    // the exponent is taken after rounding, which can carry into the next decade
    let sci = format!("{:.11e}", v);
    let (mantissa, e) = sci.split_once('e').expect("exponent");
    let e: i32 = e.parse().expect("exponent");
    if (-4..12).contains(&e) {
        let decimals = (11 - e).max(0) as usize;
        trim(&format!("{:.*}", decimals, v))
    } else {
        let mantissa = trim(mantissa);
        let sign = if e < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", e.abs())
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_g12).unwrap_or_default()
}

/// One data line for `row`, without the trailing newline.
pub fn format_row(row: &SweepRow) -> String {
    let mc = row.p_mc.as_ref();
    format!(
        "{},{},{},{},{},{},{},{}",
        fmt_g12(row.mer_db),
        row.scheme.name(),
        opt(row.p_analytic),
        opt(mc.map(|e| e.p_hat)),
        opt(mc.map(|e| e.ci_low)),
        opt(mc.map(|e| e.ci_high)),
        opt(row.p_lower_bound),
        opt(row.p_upper_bound),
    )
}

/// Header plus one line per row.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", format_row(row));
    }
    out
}
