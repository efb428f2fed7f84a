//! Deterministic numeric formatting for emitted tables: every float is
//! rendered with 12 significant digits so identical configurations
//! produce byte-identical output files.

/// Scientific notation with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        // Avoid the "-0" artifact.
        return "0.00000000000e0".to_string();
    }
    format!("{x:.11e}")
}

/// Round to the 12 significant digits that `sig12` would print, so JSON
/// numbers match the CSV rendering.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    sig12(x).parse().expect("round-trip of formatted float")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_stable() {
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(sig12(-1.0 / 3.0), "-3.33333333333e-1");
        assert_eq!(sig12(0.0), "0.00000000000e0");
        assert_eq!(sig12(-0.0), "0.00000000000e0");
        assert_eq!(round12(1.0e-7), 1.0e-7);
        assert_eq!(sig12(round12(123456.789012345)), sig12(123456.789012345));
    }
}
