//! Number rendering shared by every text output.

/// Renders `x` like C's `%.17g`: 17 significant digits, trailing zeros trimmed.
///
/// Seventeen digits are enough for any `f64` to parse back to the same bits.
pub fn g17(x: f64) -> String {
    const PRECISION: i32 = 17;
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
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
    use super::*;

    #[test]
    fn matches_printf() {
        assert_eq!(g17(0.0), "0");
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(0.25), "0.25");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(0.3413447460685429), "0.34134474606854293");
        assert_eq!(g17(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(g17(123456.0), "123456");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(-2.5), "-2.5");
    }

    #[test]
    fn round_trips() {
        for x in [
            0.1,
            1.0 / 3.0,
            2f64.sqrt(),
            1e-300,
            1.0f64.next_down(),
            5e-324,
        ] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }
}
