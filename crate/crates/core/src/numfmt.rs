//! `%.Ng`-style formatting for CSV output.

/// Formats `x` with `digits` significant digits the way C's `%.{digits}g`
/// does: fixed notation for moderate exponents, scientific otherwise, with
/// trailing zeros removed. Negative zero prints as `0`.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // Rounding to `digits` may bump the exponent (9.9999999996 -> 1e1), so
    // take the exponent from the rounded scientific form.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::format_significant as f;

    #[test]
    fn matches_c_printf_g9() {
        // reference strings from printf("%.9g")
        assert_eq!(f(0.0, 9), "0");
        assert_eq!(f(-0.0, 9), "0");
        assert_eq!(f(1.0, 9), "1");
        assert_eq!(f(2.5, 9), "2.5");
        assert_eq!(f(-std::f64::consts::FRAC_PI_2, 9), "-1.57079633");
        assert_eq!(f(688.88, 9), "688.88");
        assert_eq!(f(123456789.0, 9), "123456789");
        assert_eq!(f(1234567890.0, 9), "1.23456789e+09");
        assert_eq!(f(0.0001, 9), "0.0001");
        assert_eq!(f(0.00001234, 9), "1.234e-05");
        assert_eq!(f(9.9999999996, 9), "10");
        assert_eq!(f(1e-300, 9), "1e-300");
        assert_eq!(f(0.1 + 0.2, 9), "0.3");
    }
}
