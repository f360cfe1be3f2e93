//! Significant-digit formatting with a fixed '.' decimal separator.

/// Formats with `sig` significant digits, positional where reasonable and
/// scientific for extreme magnitudes (like C's %g, without zero trimming).
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return format!("{:.*}", sig - 1, 0.0f64);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mut mag = x.abs().log10().floor() as i32;
    // Rounding at this precision may push the value to the next magnitude
    // (0.9999995 at 6 digits is 1.00000, not 1.000000).
    let scaled = x.abs() / 10f64.powi(mag);
    if (scaled * 10f64.powi(sig as i32 - 1)).round() >= 10f64.powi(sig as i32) {
        mag += 1;
    }
    if mag < -4 || mag >= sig as i32 {
        format!("{:.*e}", sig - 1, x)
    } else {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

#[cfg(test)]
mod tests {
    use super::fmt_sig;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0, 9), "0.00000000");
        assert_eq!(fmt_sig(3.0, 6), "3.00000");
        assert_eq!(fmt_sig(0.8535533905932737, 6), "0.853553");
        assert_eq!(fmt_sig(1914.213562, 6), "1914.21");
        assert_eq!(fmt_sig(0.00012345678, 6), "0.000123457");
        assert_eq!(fmt_sig(1.2344e-7, 4), "1.234e-7");
        assert_eq!(fmt_sig(-2.5, 3), "-2.50");
        assert_eq!(fmt_sig(0.9999999999999998, 6), "1.00000");
        assert_eq!(fmt_sig(9.9999999e5, 6), "1.00000e6");
    }
}
