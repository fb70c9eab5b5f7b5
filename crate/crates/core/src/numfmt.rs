//! `%g`-style number formatting with a fixed count of significant digits.

/// Formats `x` with `digits` significant digits, choosing fixed or
/// scientific notation like C's `%g` and trimming trailing zeros.
pub fn sig(x: f64, digits: usize) -> String {
    assert!(digits > 0);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{}", trim(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim(&format!("{:.*}", decimals, x)).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig(0.0, 9), "0");
        assert_eq!(sig(0.5, 12), "0.5");
        assert_eq!(sig(1.0, 9), "1");
        assert_eq!(sig(-0.123456789123, 9), "-0.123456789");
        assert_eq!(sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(sig(123456.0, 3), "1.23e5");
        assert_eq!(sig(1.5e-7, 9), "1.5e-7");
        assert_eq!(sig(0.0001, 9), "0.0001");
        assert_eq!(sig(99.99999999999, 9), "100");
        assert_eq!(sig(-1e-300, 4), "-1e-300");
    }
}
