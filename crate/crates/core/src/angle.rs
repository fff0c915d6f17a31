//! Small angle helpers shared by the closed-form and matrix routes.

use std::f64::consts::{PI, TAU};

/// Wraps an angle into (-π, π].
pub fn wrap_pi(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    a
}

/// `sin θ`, except that the two axis directions `θ = 0` and `θ = π` (the
/// exact `f64` constants) return an exact zero.
///
/// States lying on the ẑ axis stay there under the flow; `PI.sin()` is
/// about 1.2e-16 and would otherwise leak them off the axis.
pub fn axis_sin(theta: f64) -> f64 {
    if theta == 0.0 || theta == PI {
        0.0
    } else {
        theta.sin()
    }
}

pub fn in_half_turn(theta: f64) -> bool {
    (0.0..=PI).contains(&theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_range() {
        assert_eq!(wrap_pi(PI), PI);
        assert_eq!(wrap_pi(-PI), PI);
        assert!((wrap_pi(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_pi(0.25) - 0.25).abs() < 1e-16);
        assert!((wrap_pi(-0.25 - TAU) + 0.25).abs() < 1e-14);
    }

    #[test]
    fn axis_sin_is_exact_on_axis() {
        assert_eq!(axis_sin(0.0), 0.0);
        assert_eq!(axis_sin(PI), 0.0);
        assert_eq!(axis_sin(PI / 2.0), 1.0);
    }
}
