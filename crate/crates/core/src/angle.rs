//! Angle helpers.

use core::f64::consts::PI;

/// Wraps an angle into `(-π, π]`.
pub fn wrap(x: f64) -> f64 {
    let w = libm::atan2(libm::sin(x), libm::cos(x));
    if w <= -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

pub fn deg(rad: f64) -> f64 {
    rad * 180.0 / PI
}

pub fn rad(deg: f64) -> f64 {
    deg * PI / 180.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_range() {
        assert_eq!(wrap(PI), PI);
        assert!((wrap(-PI) - PI).abs() < 1e-15);
        assert!((wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap(-7.0) - (-7.0 + 2.0 * PI)).abs() < 1e-14);
        for i in -100..100 {
            let w = wrap(i as f64 * 0.37);
            assert!(w > -PI && w <= PI);
        }
    }
}
