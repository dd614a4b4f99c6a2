//! The CSV dialect shared by every output file: comma separated, UTF-8, LF
//! line endings, floats with 10 significant digits.

use std::io::Write;

use crate::error::Result;

pub const RUN_HEADER: &str = "generation,cum_exact_evals,hv,igd,approx_count,reject_count";

/// Formats like C's `%.10g`, with Rust-style exponents (`1.5e-5`).
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..10).contains(&exp) {
        format!("{}e{exp}", trim_fraction(mantissa))
    } else {
        let decimals = (9 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub(crate) fn write_rows<W: Write>(mut out: W, header: &str, rows: &[Vec<String>]) -> Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
