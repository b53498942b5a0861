//! Sweep machinery behind the `gicor` command-line tool: configuration
//! parsing, CSV writers for each sweep, and the randomized bound-sandwich
//! verifier. The binary in `main.rs` is a thin clap front end over this.
//!
//! dB-to-linear conversion happens here and only here; the core library is
//! linear-scale throughout.

pub mod config;
pub mod sandwich;
pub mod sweeps;

/// `10^(db/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// CSV cell for a float: 12 significant digits, `.` decimal separator,
/// lowercase `nan` for undefined cells.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.11e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_num_is_fixed_width_scientific() {
        assert_eq!(fmt_num(50.0), "5.00000000000e1");
        assert_eq!(fmt_num(0.0), "0.00000000000e0");
        assert_eq!(fmt_num(-1.5), "-1.50000000000e0");
        assert_eq!(fmt_num(f64::NAN), "nan");
    }

    #[test]
    fn db_conversion_reference_points() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert_eq!(db_to_linear(10.0), 10.0);
        assert!((db_to_linear(50.0) - 1e5).abs() < 1e-6);
        assert!((db_to_linear(-10.0) - 0.1).abs() < 1e-15);
    }
}
