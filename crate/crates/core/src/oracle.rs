//! Reference implementation in the vector representation.
//!
//! Lorentz matrices act on `(ct, x, z)`; the `y` row and column are trivial
//! for everything in the x–z plane and are dropped. Nothing here touches the
//! 2×2 code: the point is to check it through an unrelated route.
//!
//! `boost(β, n̂)` is the passive boost into a frame moving with velocity
//! `β n̂`: `[[γ, -γβ nᵀ], [-γβ n, I + (γ-1) n nᵀ]]`. A rotation by `τ`
//! maps `(x, z) ↦ (x cos τ - z sin τ, x sin τ + z cos τ)`.

use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMatrix(pub [[f64; 3]; 3]);

const METRIC: [f64; 3] = [1.0, -1.0, -1.0];

impl FourMatrix {
    pub const IDENTITY: FourMatrix =
        FourMatrix([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    /// Max-abs entry of `Mᵀ g M - g`, divided by `max(1, M₀₀²)` since the
    /// roundoff in the products grows like `γ²`.
    pub fn minkowski_residual(&self) -> f64 {
        let m = &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| m[k][i] * METRIC[k] * m[k][j]).sum();
                let target = if i == j { METRIC[i] } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst / m[0][0].powi(2).max(1.0)
    }

    pub fn max_abs_diff(&self, other: &FourMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

impl Mul for FourMatrix {
    type Output = FourMatrix;

    fn mul(self, rhs: FourMatrix) -> FourMatrix {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        FourMatrix(out)
    }
}

/// Boost with speed `beta ∈ (-1, 1)` along `(sin θ, cos θ)`.
pub fn oracle_boost(beta: f64, theta: f64) -> Result<FourMatrix> {
    if beta.is_nan() || beta.abs() >= 1.0 {
        return Err(Error::SpeedOutOfRange { beta });
    }
    let gamma = 1.0 / (1.0 - beta * beta).sqrt();
    Ok(boost_from(gamma, gamma * beta, theta))
}

/// Same boost parametrised by rapidity (`γ = cosh κ`, `γβ = sinh κ`), which
/// keeps full precision at large rapidity.
pub fn oracle_boost_rapidity(kappa: f64, theta: f64) -> FourMatrix {
    boost_from(kappa.cosh(), kappa.sinh(), theta)
}

fn boost_from(gamma: f64, gamma_beta: f64, theta: f64) -> FourMatrix {
    let n = [theta.sin(), theta.cos()];
    let mut m = [[0.0; 3]; 3];
    m[0][0] = gamma;
    for i in 0..2 {
        m[0][i + 1] = -gamma_beta * n[i];
        m[i + 1][0] = -gamma_beta * n[i];
        for j in 0..2 {
            let delta = if i == j { 1.0 } else { 0.0 };
            m[i + 1][j + 1] = delta + (gamma - 1.0) * n[i] * n[j];
        }
    }
    FourMatrix(m)
}

pub fn oracle_rotation(tau: f64) -> FourMatrix {
    let (s, c) = tau.sin_cos();
    FourMatrix([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleDecomposition {
    pub lambda: f64,
    pub theta: f64,
    pub tau: f64,
    /// The rotation left after removing the boost, for inspection.
    pub rotation: FourMatrix,
}

/// Splits `M = boost(λ, θ) · rotation(τ)`.
///
/// The transformed origin `M e₀ = (cosh λ, -sinh λ n̂)` gives the boost;
/// the spatial block of the remaining rotation is
/// `M_ss - ((γ-1)/γ) n̂ (n̂ᵀ M_ss)`. A boost pointing into `x < 0` is
/// reported as `θ + π` with negative `λ`.
pub fn oracle_decompose(m: &FourMatrix) -> Result<OracleDecomposition> {
    let g = m.0;
    if g[0][0].is_nan() || g[0][0] < 1.0 - 1e-12 {
        return Err(Error::NotOrthochronous { m00: g[0][0] });
    }
    let (mut ux, mut uz) = (-g[1][0], -g[2][0]);
    let mut sign = 1.0;
    if ux < 0.0 {
        ux = -ux;
        uz = -uz;
        sign = -1.0;
    }
    let sinh_lambda = ux.hypot(uz);
    let (lambda, theta) = if sinh_lambda == 0.0 {
        (0.0, 0.0)
    } else {
        (sign * sinh_lambda.asinh(), ux.atan2(uz))
    };

    let gamma = g[0][0];
    let spatial = [[g[1][1], g[1][2]], [g[2][1], g[2][2]]];
    let rot = if sinh_lambda == 0.0 {
        spatial
    } else {
        let n = [sign * ux / sinh_lambda, sign * uz / sinh_lambda];
        let k = (gamma - 1.0) / gamma;
        let proj = [
            n[0] * spatial[0][0] + n[1] * spatial[1][0],
            n[0] * spatial[0][1] + n[1] * spatial[1][1],
        ];
        let mut r = spatial;
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] -= k * n[i] * proj[j];
            }
        }
        r
    };
    let tau = (rot[1][0] - rot[0][1]).atan2(rot[0][0] + rot[1][1]);
    let rotation = FourMatrix([
        [1.0, 0.0, 0.0],
        [0.0, rot[0][0], rot[0][1]],
        [0.0, rot[1][0], rot[1][1]],
    ]);
    Ok(OracleDecomposition {
        lambda,
        theta,
        tau,
        rotation,
    })
}

/// `(λ, θ, τ)` of a ẑ-boost `xi` applied after a boost `eta` along `theta0`.
pub fn oracle_compose(xi: f64, eta: f64, theta0: f64) -> Result<OracleDecomposition> {
    let m = oracle_boost_rapidity(xi, 0.0) * oracle_boost_rapidity(eta, theta0);
    oracle_decompose(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_speed_is_identity() {
        assert_eq!(oracle_boost(0.0, 1.3).unwrap(), FourMatrix::IDENTITY);
    }

    #[test]
    fn textbook_z_boost() {
        let m = oracle_boost(0.6, 0.0).unwrap();
        assert!((m.0[0][0] - 1.25).abs() < 1e-15);
        assert!((m.0[0][2] + 0.75).abs() < 1e-15);
        assert!((m.0[2][2] - 1.25).abs() < 1e-15);
        assert_eq!(m.0[1][1], 1.0);
        assert!(m.minkowski_residual() < 1e-15);
    }

    #[test]
    fn inverse_boost() {
        let m = oracle_boost(0.8, 0.4).unwrap() * oracle_boost(-0.8, 0.4).unwrap();
        assert!(m.max_abs_diff(&FourMatrix::IDENTITY) < 1e-12);
    }

    #[test]
    fn speed_out_of_range() {
        assert!(matches!(
            oracle_boost(1.0, 0.0),
            Err(Error::SpeedOutOfRange { .. })
        ));
    }

    #[test]
    fn decompose_pure_boost() {
        let d = oracle_decompose(&oracle_boost_rapidity(1.7, 2.2)).unwrap();
        assert!((d.lambda - 1.7).abs() < 1e-14);
        assert!((d.theta - 2.2).abs() < 1e-14);
        assert!(d.tau.abs() < 1e-14);
    }

    #[test]
    fn colinear_rapidities_add() {
        let d = oracle_compose(0.8, 1.1, 0.0).unwrap();
        assert!((d.lambda - 1.9).abs() < 1e-14);
        assert!((d.lambda.tanh() - 1.9f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn perpendicular_unit_boosts() {
        let d = oracle_compose(1.0, 1.0, FRAC_PI_2).unwrap();
        assert!((d.lambda - 1.513374006596504).abs() < 1e-13);
        assert!((d.theta - 0.5750061825784119).abs() < 1e-13);
        assert!((d.tau - 0.4207839616380729).abs() < 1e-13);
        assert!(d.rotation.minkowski_residual() < 1e-13);
    }

    #[test]
    fn boost_times_rotation_round_trip() {
        let m = oracle_boost_rapidity(2.0, 0.9) * oracle_rotation(-0.6);
        let d = oracle_decompose(&m).unwrap();
        assert!((d.lambda - 2.0).abs() < 1e-13);
        assert!((d.theta - 0.9).abs() < 1e-13);
        assert!((d.tau + 0.6).abs() < 1e-13);
    }

    #[test]
    fn rejects_time_reversal() {
        let mut m = FourMatrix::IDENTITY;
        m.0[0][0] = -1.0;
        assert!(matches!(
            oracle_decompose(&m),
            Err(Error::NotOrthochronous { .. })
        ));
    }
}
