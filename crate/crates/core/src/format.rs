//! Number formatting shared by the CSV, plot-data and CLI output.

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style rendering: 12 significant digits, trailing zeros dropped.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        format!("{}e{exp}", strip_zeros(mantissa))
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(x)
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(2.0), "2");
        assert_eq!(fmt_sig(2.4787507857339603), "2.47875078573");
        assert_eq!(fmt_sig(-0.5), "-0.5");
        assert_eq!(fmt_sig(100000.0), "100000");
        assert_eq!(fmt_sig(1.5e-7), "1.5e-7");
        assert_eq!(fmt_sig(1.0e15), "1e15");
        assert_eq!(fmt_sig(0.000123456789012345), "0.000123456789012");
        assert_eq!(fmt_sig(999999999999.9), "1e12");
        assert_eq!(round_sig(2.4787507857339603), 2.47875078573);
    }
}
