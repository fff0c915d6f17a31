//! Real unimodular 2×2 matrices for boosts in the x–z plane and rotations
//! about ŷ.
//!
//! Every generator in play is real: `σ₃ = diag(1, -1)`, `σ₁ = [[0, 1], [1, 0]]`
//! and `iσ₂ = [[0, 1], [-1, 0]]`. A boost of rapidity `κ` along
//! `n̂ = (sin θ, cos θ)` is `exp(-κ σ_θ / 2) = cosh(κ/2) I - sinh(κ/2) σ_θ`
//! with `σ_θ = σ₃ cos θ + σ₁ sin θ`, and a rotation by `τ` about ŷ is
//! `exp(i τ σ₂ / 2) = cos(τ/2) I + sin(τ/2) iσ₂`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::angle::{in_half_turn, wrap_pi};
use crate::error::{Error, Result};

/// Relative tolerance on `det = 1`, scaled by the squared largest entry
/// (the roundoff in `ad - bc` grows with the entries).
pub const DET_TOLERANCE: f64 = 1e-9;

/// A real 2×2 matrix `[[a, b], [c, d]]` with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl SpinMatrix {
    pub const IDENTITY: SpinMatrix = SpinMatrix {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds a matrix from raw entries, rejecting anything that is not
    /// unimodular within [`DET_TOLERANCE`].
    pub fn from_entries(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = SpinMatrix { a, b, c, d };
        if !m.entries().iter().all(|x| x.is_finite()) || !m.is_unimodular() {
            return Err(Error::NotUnimodular { det: m.det() });
        }
        Ok(m)
    }

    /// Pure boost `exp(-κ σ_θ / 2)` for any real `κ` and `θ`.
    ///
    /// A negative rapidity is a boost along `-n̂`. [`boost_matrix`] is the
    /// validated entry point for a [`BoostSpec`].
    pub fn boost(kappa: f64, theta: f64) -> Self {
        let (ch, sh) = ((kappa / 2.0).cosh(), (kappa / 2.0).sinh());
        let (st, ct) = theta.sin_cos();
        SpinMatrix {
            a: ch - sh * ct,
            b: -sh * st,
            c: -sh * st,
            d: ch + sh * ct,
        }
    }

    /// Rotation `exp(i τ σ₂ / 2)` about ŷ.
    pub fn rotation(tau: f64) -> Self {
        let (s, c) = (tau / 2.0).sin_cos();
        SpinMatrix {
            a: c,
            b: s,
            c: -s,
            d: c,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn transpose(&self) -> Self {
        SpinMatrix {
            a: self.a,
            b: self.c,
            c: self.b,
            d: self.d,
        }
    }

    /// Inverse of a unimodular matrix (its adjugate).
    pub fn inverse(&self) -> Self {
        SpinMatrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn negate(&self) -> Self {
        SpinMatrix {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    /// Matrix–vector product on a two-component real spinor.
    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn max_abs_diff(&self, other: &SpinMatrix) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    fn scale(&self) -> f64 {
        self.entries().iter().map(|x| x.abs()).fold(1.0, f64::max)
    }

    pub fn is_unimodular(&self) -> bool {
        let s = self.scale();
        (self.det() - 1.0).abs() <= DET_TOLERANCE * s * s
    }
}

impl Mul for SpinMatrix {
    type Output = SpinMatrix;

    fn mul(self, rhs: SpinMatrix) -> SpinMatrix {
        SpinMatrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl fmt::Display for SpinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// One pure boost: rapidity `kappa ≥ 0` along direction `theta ∈ [0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostSpec {
    kappa: f64,
    theta: f64,
}

impl BoostSpec {
    pub fn new(kappa: f64, theta: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "rapidity must be finite and non-negative, got {kappa}"
            )));
        }
        if !in_half_turn(theta) {
            return Err(Error::InvalidInput(format!(
                "boost direction must lie in [0, pi], got {theta}"
            )));
        }
        Ok(BoostSpec { kappa, theta })
    }

    /// Boost with speed `beta ∈ [0, 1)`.
    pub fn from_speed(beta: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::SpeedOutOfRange { beta });
        }
        Self::new(beta.atanh(), theta)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn speed(&self) -> f64 {
        self.kappa.tanh()
    }
}

pub fn boost_matrix(spec: &BoostSpec) -> SpinMatrix {
    SpinMatrix::boost(spec.kappa, spec.theta)
}

pub fn rotation_matrix(tau: f64) -> SpinMatrix {
    SpinMatrix::rotation(tau)
}

/// `second · first`: apply `first`, then `second`.
pub fn compose(second: &SpinMatrix, first: &SpinMatrix) -> Result<SpinMatrix> {
    for m in [second, first] {
        if !m.is_unimodular() {
            return Err(Error::DetViolation { det: m.det() });
        }
    }
    Ok(*second * *first)
}

/// A transformation written as `boost(lambda, theta) · rotation(tau)`.
///
/// For a composition of in-range boosts `lambda ≥ 0`, `theta ∈ [0, π]` and
/// `tau ∈ (-π, π)`. A pure rotation has no boost direction; `theta` is then
/// reported as 0.
///
/// General unimodular matrices can leave that domain in two ways. A boost
/// pointing into the `x < 0` half-plane is reported with `theta + π` and a
/// negative `lambda`. A rotation part beyond ±π (only visible in the spinor
/// double cover, `trace < 0`) is wrapped into `(-π, π]` and `negated` is set:
/// the matrix is then `-boost · rotation`, the same Lorentz transformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub lambda: f64,
    pub theta: f64,
    pub tau: f64,
    pub negated: bool,
}

impl Decomposition {
    pub fn reconstruct(&self) -> SpinMatrix {
        let m = SpinMatrix::boost(self.lambda, self.theta) * SpinMatrix::rotation(self.tau);
        if self.negated {
            m.negate()
        } else {
            m
        }
    }

    pub fn speed(&self) -> f64 {
        self.lambda.tanh()
    }
}

/// Splits `L` into a boost followed by a rotation about ŷ.
///
/// The rotation comes from `L + adj(L)ᵀ`, which for a unimodular 2×2 matrix
/// is a positive multiple of the orthogonal polar factor, so
/// `τ/2 = atan2(b - c, a + d)`. The boost comes from the Gram matrix
/// `L Lᵀ = B² = cosh λ I - sinh λ σ_θ`, read off entrywise.
pub fn decompose(l: &SpinMatrix) -> Result<Decomposition> {
    if !l.entries().iter().all(|x| x.is_finite()) || !l.is_unimodular() {
        return Err(Error::NotUnimodular { det: l.det() });
    }
    let [a, b, c, d] = l.entries();

    let full = 2.0 * (b - c).atan2(a + d);
    let (tau, negated) = if full > PI || full <= -PI {
        (wrap_pi(full), true)
    } else {
        (full, false)
    };

    let g00 = a * a + b * b;
    let g11 = c * c + d * d;
    let g01 = a * c + b * d;
    let mut along_z = 0.5 * (g11 - g00);
    let mut along_x = -g01;
    let mut sign = 1.0;
    if along_x < 0.0 {
        along_x = -along_x;
        along_z = -along_z;
        sign = -1.0;
    }
    let sinh_lambda = along_x.hypot(along_z);
    let (lambda, theta) = if sinh_lambda == 0.0 {
        (0.0, 0.0)
    } else {
        (sign * sinh_lambda.asinh(), along_x.atan2(along_z))
    };

    Ok(Decomposition {
        lambda,
        theta,
        tau,
        negated,
    })
}

/// Max-abs entry of `R(τ) (B_η B_ξ) R(τ) - B_ξ B_η`, where `τ` is the Thomas
/// angle of `B_ξ B_η`: the reverse-order product is the forward one
/// sandwiched between two identical rotations.
pub fn reverse_order_identity_residual(xi: f64, eta: f64, theta0: f64) -> Result<f64> {
    let b_xi = SpinMatrix::boost(xi, 0.0);
    let b_eta = SpinMatrix::boost(eta, theta0);
    let forward = b_xi * b_eta;
    let reverse = b_eta * b_xi;
    let r = SpinMatrix::rotation(decompose(&forward)?.tau);
    Ok((r * reverse * r).max_abs_diff(&forward))
}
