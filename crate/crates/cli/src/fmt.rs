//! Float formatting with a fixed number of significant digits.

/// Format with `sig` significant digits: fixed-point for moderate exponents,
/// scientific otherwise (like printf %g, but keeping trailing zeros so column
/// widths stay stable).
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp_str) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp_str.parse().expect("numeric exponent");
    if exp < -4 || exp >= sig as i32 {
        return sci;
    }

    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), sig);
    let sign = if negative { "-" } else { "" };
    if exp >= 0 {
        let split = exp as usize + 1;
        if split >= digits.len() {
            format!("{sign}{digits}")
        } else {
            format!("{sign}{}.{}", &digits[..split], &digits[split..])
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}
