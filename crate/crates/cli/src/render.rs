//! Deterministic number and CSV rendering.
//!
//! Numbers print with 12 significant digits, switching to scientific
//! notation outside `[1e-4, 1e6]`; infinities render as `inf`. The same
//! value always renders to the same bytes, which is what makes CSV outputs
//! hash-comparable.

use std::f64::consts::LN_2;

/// Output unit for information-valued columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    /// Applies the unit conversion to a nats value (rendering-time only).
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / LN_2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }
}

/// 12 significant digits; scientific notation beyond `[1e-4, 1e6]`;
/// `inf` for infinities.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs();
    if (1e-4..=1e6).contains(&magnitude) {
        let exponent = magnitude.log10().floor() as i32;
        let decimals = (11 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

/// Renders a boolean bound verdict.
pub fn format_bool(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(0.8), "0.800000000000");
        assert_eq!(format_number(1.36), "1.36000000000");
        assert_eq!(format_number(1234.5), "1234.50000000");
        assert_eq!(format_number(0.000100000000001), "0.000100000000001");
    }

    #[test]
    fn scientific_beyond_the_window() {
        assert_eq!(format_number(1.34185276121e-7), "1.34185276121e-7");
        assert_eq!(format_number(2e7), "2.00000000000e7");
        assert_eq!(format_number(1e6), "1000000.00000");
    }

    #[test]
    fn special_values() {
        assert_eq!(format_number(f64::INFINITY), "inf");
        assert_eq!(format_number(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.25), "-0.250000000000");
    }

    #[test]
    fn units_convert_at_render_time() {
        assert_eq!(Units::Nats.convert(LN_2), LN_2);
        assert!((Units::Bits.convert(LN_2) - 1.0).abs() < 1e-15);
    }
}
