//! Closed-form parameters of a two-boost composition.
//!
//! The composition is a boost of rapidity `eta` along `θ₀` followed by a
//! boost of rapidity `xi` along ẑ. Every tangent-form relation is evaluated
//! with `atan2` on its (numerator, denominator) pair.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::angle::{in_half_turn, wrap_pi};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositionInput {
    /// Rapidity of the second boost, along ẑ.
    pub xi: f64,
    /// Rapidity of the first boost, along `theta0`.
    pub eta: f64,
    /// Angle between the two boosts.
    pub theta0: f64,
}

impl CompositionInput {
    pub fn new(xi: f64, eta: f64, theta0: f64) -> Result<Self> {
        for (name, v) in [("xi", xi), ("eta", eta)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be a finite non-negative rapidity, got {v}"
                )));
            }
        }
        if !in_half_turn(theta0) {
            return Err(Error::InvalidInput(format!(
                "theta0 must lie in [0, pi], got {theta0}"
            )));
        }
        Ok(CompositionInput { xi, eta, theta0 })
    }

    /// The same two boosts applied in the opposite order, described in the
    /// frame where the `eta` boost lies along ẑ.
    pub fn swapped(&self) -> Self {
        CompositionInput {
            xi: self.eta,
            eta: self.xi,
            theta0: self.theta0,
        }
    }

    fn is_degenerate(&self) -> bool {
        self.xi == 0.0 && self.eta == 0.0
    }
}

const BOTH_ZERO: &str = "both rapidities zero";

/// Direction of the resultant boost, in `[0, π]`.
pub fn resultant_theta(input: &CompositionInput) -> Result<f64> {
    if input.is_degenerate() {
        return Err(Error::DegenerateInput(BOTH_ZERO));
    }
    let CompositionInput { xi, eta, theta0 } = *input;
    let (st, ct) = theta0.sin_cos();
    let num = st * eta.sinh();
    let den = xi.sinh() * eta.cosh() + ct * xi.cosh() * eta.sinh();
    Ok(num.atan2(den))
}

/// Rapidity of the resultant boost.
///
/// `cosh λ = cosh ξ cosh η + cos θ₀ sinh ξ sinh η`, evaluated through the
/// equivalent half-angle form
/// `sinh²(λ/2) = cos²(θ₀/2) sinh²((ξ+η)/2) + sin²(θ₀/2) sinh²((ξ-η)/2)`,
/// which has no cancellation near `λ = 0`.
pub fn resultant_rapidity(input: &CompositionInput) -> f64 {
    let CompositionInput { xi, eta, theta0 } = *input;
    let (sh, ch) = (theta0 / 2.0).sin_cos();
    let along = ch * ((xi + eta) / 2.0).sinh();
    let across = sh * ((xi - eta) / 2.0).sinh();
    2.0 * along.hypot(across).asinh()
}

/// Direction of the resultant when the two boosts are applied in reverse
/// order, measured from the `eta` boost. Never positive for `θ₀ ∈ [0, π]`.
pub fn reverse_order_phi(input: &CompositionInput) -> Result<f64> {
    if input.is_degenerate() {
        return Err(Error::DegenerateInput(BOTH_ZERO));
    }
    let CompositionInput { xi, eta, theta0 } = *input;
    let (st, ct) = theta0.sin_cos();
    let num = -st * xi.sinh();
    let den = xi.cosh() * eta.sinh() + ct * xi.sinh() * eta.cosh();
    Ok(num.atan2(den))
}

/// Finite Thomas rotation angle, `τ = φ + θ₀ - θ` wrapped to `(-π, π]`.
///
/// Zero when both rapidities vanish.
pub fn thomas_angle(input: &CompositionInput) -> f64 {
    if input.is_degenerate() {
        return 0.0;
    }
    let theta = resultant_theta(input).expect("non-degenerate");
    let phi = reverse_order_phi(input).expect("non-degenerate");
    wrap_pi(phi + (input.theta0 - theta))
}

/// Thomas angle to first order in a small second boost `dxi`:
/// `Δτ ≈ sin θ₀ (cosh η - 1) / sinh η · Δξ`.
///
/// The coefficient is computed as `sin θ₀ tanh(η/2)`, so `η = 0` gives 0
/// (the limit) rather than 0/0.
pub fn infinitesimal_thomas(eta: f64, theta0: f64, dxi: f64) -> f64 {
    theta0.sin() * (eta / 2.0).tanh() * dxi
}

/// `τ` as a function of `θ` at frozen boost magnitude `λ`:
/// `τ = τ₀ + ((1 - cosh λ) / cosh λ)(θ - θ₀)`.
///
/// This integrates `dτ/dθ = -(1 - √(1-β²))` with β held fixed; it is not a
/// trajectory of the flow.
pub fn tau_theta_curve(theta: f64, theta0: f64, tau0: f64, lambda: f64) -> f64 {
    let slope = 1.0 / lambda.cosh() - 1.0;
    tau0 + slope * (theta - theta0)
}

/// `τ` as a function of `λ` at frozen direction `θ`:
/// `τ = τ₀ + tan θ · [ln(cosh λ + 1) - ln(cosh λ₀ + 1)]`.
///
/// This integrates `dτ/dβ = tan θ (1 - √(1-β²)) / (β (1-β²))` with θ held
/// fixed (`dτ/dλ = tan θ · tanh(λ/2)`). Rejects `θ` at π/2, where `tan θ`
/// diverges.
pub fn tau_lambda_curve(lambda: f64, lambda0: f64, tau0: f64, theta: f64) -> Result<f64> {
    if (theta - FRAC_PI_2).abs() < 1e-12 {
        return Err(Error::Domain(format!(
            "theta = {theta} is at pi/2, where tan(theta) diverges"
        )));
    }
    if !(lambda.is_finite() && lambda0.is_finite()) {
        return Err(Error::Domain("rapidities must be finite".into()));
    }
    Ok(tau0 + theta.tan() * (log_cosh_plus_one(lambda) - log_cosh_plus_one(lambda0)))
}

// ln(cosh λ + 1) = ln 2 + 2 ln cosh(λ/2)
fn log_cosh_plus_one(lambda: f64) -> f64 {
    std::f64::consts::LN_2 + 2.0 * (lambda / 2.0).cosh().ln()
}

/// `sin θ · sinh λ`, conserved along the flow.
pub fn flow_invariant(theta: f64, lambda: f64) -> f64 {
    theta.sin() * lambda.sinh()
}
