//! Number formatting for machine-readable output.
//!
//! CSV and JSON share one convention: 9 significant digits, `.` decimal
//! separator, `\n` row terminators. JSON carries the same values after a
//! round-trip through the formatted string, so both formats print identical
//! numbers for one invocation.

/// Formats with exactly 9 significant digits; fixed notation for moderate
/// exponents, scientific otherwise.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exponent) = sci
        .split_once('e')
        .expect("{:.8e} always contains an exponent");
    let exponent: i32 = exponent.parse().expect("exponent is an integer");
    if (-4..9).contains(&exponent) {
        let decimals = (8 - exponent).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        format!("{mantissa}e{exponent}")
    }
}

/// The f64 that `sig9` prints: used so JSON emits numerically identical
/// values to the CSV text.
pub fn round_sig9(x: f64) -> f64 {
    sig9(x).parse().expect("sig9 output is a valid float")
}

/// Compact human-facing float: up to 6 decimals, trailing zeros trimmed.
pub fn compact(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0');
    s.trim_end_matches('.').to_string()
}
