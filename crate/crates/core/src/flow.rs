//! The parameter flow generated by a continuously growing ẑ-boost.
//!
//! Composing `L(θ, β, τ)` with an extra ẑ-boost of rapidity `dξ` moves the
//! parameters along
//!
//! ```text
//! dθ/dξ = -sin θ / β
//! dβ/dξ = cos θ (1 - β²)
//! dτ/dξ = (sin θ / β)(1 - √(1 - β²))
//! ```
//!
//! [`flow_rhs`] evaluates this field as written. [`integrate`] advances the
//! same field with classical RK4, but off the light cone it works in the
//! rapidity `λ = artanh β` (`dλ/dξ = cos θ`, `dτ/dξ = sin θ tanh(λ/2)`):
//! near `|β| = 1` the gap `1 - |β|` is far below `f64` resolution while `λ`
//! is not. States with `|β| = 1` exactly stay on that manifold and only
//! `θ` and `τ` evolve.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::angle::axis_sin;
use crate::error::{Error, Result};

/// Default floor on `|β|` below which an off-axis state is singular.
pub const DEFAULT_BETA_MIN: f64 = 1e-6;
/// Default bound on the step-doubling local error estimate.
pub const DEFAULT_TRUNCATION_TOLERANCE: f64 = 1e-6;
pub const MAX_STEP: f64 = 0.1;

/// A point `(θ, β, τ)` of the phase space.
///
/// `β` is signed: a negative speed is a boost opposite to `θ`. The rapidity
/// `artanh β` is carried alongside so that states close to `|β| = 1` keep
/// full precision; it is infinite on the light cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    theta: f64,
    beta: f64,
    rapidity: f64,
    tau: f64,
}

impl FlowState {
    pub fn from_beta(theta: f64, beta: f64, tau: f64) -> Result<Self> {
        check_theta(theta)?;
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::InvalidInput(format!(
                "beta must lie in [-1, 1], got {beta}"
            )));
        }
        check_tau(tau)?;
        Ok(FlowState {
            theta,
            beta,
            rapidity: beta.atanh(),
            tau,
        })
    }

    pub fn from_rapidity(theta: f64, rapidity: f64, tau: f64) -> Result<Self> {
        check_theta(theta)?;
        if !rapidity.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rapidity must be finite, got {rapidity}"
            )));
        }
        check_tau(tau)?;
        Ok(FlowState {
            theta,
            beta: rapidity.tanh(),
            rapidity,
            tau,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `artanh β`; `±∞` on the light cone.
    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    /// Unwrapped Thomas angle.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn on_light_cone(&self) -> bool {
        self.beta.abs() == 1.0
    }

    /// `sin θ · sinh λ`; undefined on the light cone.
    pub fn invariant(&self) -> Option<f64> {
        (!self.on_light_cone()).then(|| self.theta.sin() * self.rapidity.sinh())
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::InvalidInput(format!(
            "theta must lie in [0, pi], got {theta}"
        )));
    }
    Ok(())
}

fn check_tau(tau: f64) -> Result<()> {
    if !tau.is_finite() {
        return Err(Error::InvalidInput(format!(
            "tau must be finite, got {tau}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowDerivative {
    pub dtheta: f64,
    pub dbeta: f64,
    pub dtau: f64,
}

/// The vector field at `state`.
///
/// On-axis states (`θ` exactly 0 or π) have `dθ/dξ = dτ/dξ = 0` for any `β`.
/// Off-axis states with `|β| < beta_min` fail with
/// [`Error::NearSingularBeta`].
pub fn flow_rhs(state: &FlowState, beta_min: f64) -> Result<FlowDerivative> {
    let FlowState { theta, beta, .. } = *state;
    let s = axis_sin(theta);
    let dbeta = theta.cos() * (1.0 - beta * beta);
    if s == 0.0 {
        return Ok(FlowDerivative {
            dtheta: 0.0,
            dbeta,
            dtau: 0.0,
        });
    }
    if beta.abs() < beta_min {
        return Err(Error::NearSingularBeta { beta, theta });
    }
    let gap = (1.0 - beta * beta).max(0.0).sqrt();
    Ok(FlowDerivative {
        dtheta: -s / beta,
        dbeta,
        dtau: s / beta * (1.0 - gap),
    })
}

/// `(dθ/dξ, dβ/dξ)` without any singularity guard.
pub fn planar_field(theta: f64, beta: f64) -> (f64, f64) {
    (-theta.sin() / beta, theta.cos() * (1.0 - beta * beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub xi: f64,
    pub state: FlowState,
}

/// Samples of one integrated trajectory, at `ξ = 0, step, 2·step, …, ξ_end`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub step: f64,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory always holds the initial sample")
    }

    /// Largest deviation of `sin θ sinh λ` from its initial value.
    /// `None` on the light cone.
    pub fn invariant_drift(&self) -> Option<f64> {
        let start = self.samples[0].state.invariant()?;
        self.samples
            .iter()
            .map(|s| s.state.invariant().map(|v| (v - start).abs()))
            .try_fold(0.0, |acc, d| d.map(|d| f64::max(acc, d)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorOptions {
    pub xi_end: f64,
    pub step: f64,
    pub beta_min: f64,
    pub truncation_tolerance: f64,
}

impl IntegratorOptions {
    pub fn new(xi_end: f64, step: f64) -> Self {
        IntegratorOptions {
            xi_end,
            step,
            beta_min: DEFAULT_BETA_MIN,
            truncation_tolerance: DEFAULT_TRUNCATION_TOLERANCE,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step <= MAX_STEP) {
            return Err(Error::InvalidInput(format!(
                "step must lie in (0, {MAX_STEP}], got {}",
                self.step
            )));
        }
        if !(self.xi_end > 0.0 && self.xi_end.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "xi_end must be positive and finite, got {}",
                self.xi_end
            )));
        }
        if !(self.beta_min > 0.0 && self.truncation_tolerance > 0.0) {
            return Err(Error::InvalidInput(
                "beta_min and truncation tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Integrates with default `beta_min` and truncation tolerance.
pub fn integrate(initial: &FlowState, xi_end: f64, step: f64) -> Result<Trajectory> {
    integrate_with(initial, &IntegratorOptions::new(xi_end, step))
}

pub fn integrate_with(initial: &FlowState, opts: &IntegratorOptions) -> Result<Trajectory> {
    opts.validate()?;
    flow_rhs(initial, opts.beta_min)?;

    let n_steps = ((opts.xi_end / opts.step) - 1e-9).ceil().max(1.0) as usize;
    let mut samples = Vec::with_capacity(n_steps + 1);
    samples.push(Sample {
        xi: 0.0,
        state: *initial,
    });

    let field = if initial.on_light_cone() {
        Field::LightCone {
            sign: initial.beta.signum(),
        }
    } else {
        Field::Massive
    };
    let mut y = field.coordinates(initial);

    for i in 0..n_steps {
        let xi = i as f64 * opts.step;
        let xi_next = if i + 1 == n_steps {
            opts.xi_end
        } else {
            (i + 1) as f64 * opts.step
        };
        let h = xi_next - xi;

        let full = field.rk4_step(&y, h, opts.beta_min)?;
        let half = field.rk4_step(&y, h / 2.0, opts.beta_min)?;
        let twice = field.rk4_step(&half, h / 2.0, opts.beta_min)?;
        let estimate = max_abs_diff(&full, &twice) / 15.0;
        if estimate > opts.truncation_tolerance {
            return Err(Error::StepTooLarge {
                xi,
                estimate,
                tolerance: opts.truncation_tolerance,
            });
        }

        y = full;
        y[0] = y[0].clamp(0.0, PI);
        let state = field.state(&y);
        if !state.on_light_cone()
            && axis_sin(state.theta) != 0.0
            && state.beta.abs() < opts.beta_min
        {
            return Err(Error::NearSingularBeta {
                beta: state.beta,
                theta: state.theta,
            });
        }
        samples.push(Sample { xi: xi_next, state });
    }

    Ok(Trajectory {
        samples,
        step: opts.step,
    })
}

/// Integration coordinates: `[θ, λ, τ]` off the light cone, `[θ, τ, _]` on it.
#[derive(Debug, Clone, Copy)]
enum Field {
    Massive,
    LightCone { sign: f64 },
}

impl Field {
    fn coordinates(&self, s: &FlowState) -> [f64; 3] {
        match self {
            Field::Massive => [s.theta, s.rapidity, s.tau],
            Field::LightCone { .. } => [s.theta, s.tau, 0.0],
        }
    }

    fn state(&self, y: &[f64; 3]) -> FlowState {
        match *self {
            Field::Massive => FlowState {
                theta: y[0],
                beta: y[1].tanh(),
                rapidity: y[1],
                tau: y[2],
            },
            Field::LightCone { sign } => FlowState {
                theta: y[0],
                beta: sign,
                rapidity: sign * f64::INFINITY,
                tau: y[1],
            },
        }
    }

    fn derivative(&self, y: &[f64; 3], beta_min: f64) -> Result<[f64; 3]> {
        let s = axis_sin(y[0]);
        match *self {
            Field::Massive => {
                let lambda = y[1];
                let dlambda = y[0].cos();
                if s == 0.0 {
                    return Ok([0.0, dlambda, 0.0]);
                }
                let beta = lambda.tanh();
                if beta.abs() < beta_min {
                    return Err(Error::NearSingularBeta { beta, theta: y[0] });
                }
                Ok([-s / beta, dlambda, s * (lambda / 2.0).tanh()])
            }
            Field::LightCone { sign } => Ok([-s * sign, s * sign, 0.0]),
        }
    }

    fn rk4_step(&self, y: &[f64; 3], h: f64, beta_min: f64) -> Result<[f64; 3]> {
        let at = |base: &[f64; 3], k: &[f64; 3], scale: f64| -> [f64; 3] {
            std::array::from_fn(|i| base[i] + scale * k[i])
        };
        let k1 = self.derivative(y, beta_min)?;
        let k2 = self.derivative(&at(y, &k1, h / 2.0), beta_min)?;
        let k3 = self.derivative(&at(y, &k2, h / 2.0), beta_min)?;
        let k4 = self.derivative(&at(y, &k3, h), beta_min)?;
        Ok(std::array::from_fn(|i| {
            y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        }))
    }
}

fn max_abs_diff(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Attractive,
    Repulsive,
    Saddle,
}

impl Stability {
    /// Classification from the real parts of the two eigenvalues.
    pub fn classify(eigenvalues: [f64; 2]) -> Self {
        if eigenvalues.iter().all(|&e| e < 0.0) {
            Stability::Attractive
        } else if eigenvalues.iter().all(|&e| e > 0.0) {
            Stability::Repulsive
        } else {
            Stability::Saddle
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub beta: f64,
    pub theta: f64,
    pub stability: Stability,
    /// Sorted ascending.
    pub eigenvalues: [f64; 2],
    /// `∂(dθ/dξ, dβ/dξ) / ∂(θ, β)`, rows (θ̇, β̇), columns (θ, β).
    pub jacobian: [[f64; 2]; 2],
}

/// Analytic Jacobian of the planar field `(dθ/dξ, dβ/dξ)` in `(θ, β)`.
pub fn jacobian(theta: f64, beta: f64) -> [[f64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    [
        [-c / beta, s / (beta * beta)],
        [-s * (1.0 - beta * beta), -2.0 * beta * c],
    ]
}

/// Central-difference Jacobian of [`planar_field`].
pub fn numerical_jacobian(theta: f64, beta: f64, h: f64) -> [[f64; 2]; 2] {
    let (ft_p, fb_p) = planar_field(theta + h, beta);
    let (ft_m, fb_m) = planar_field(theta - h, beta);
    let (gt_p, gb_p) = planar_field(theta, beta + h);
    let (gt_m, gb_m) = planar_field(theta, beta - h);
    [
        [(ft_p - ft_m) / (2.0 * h), (gt_p - gt_m) / (2.0 * h)],
        [(fb_p - fb_m) / (2.0 * h), (gb_p - gb_m) / (2.0 * h)],
    ]
}

/// Real parts of the eigenvalues of a 2×2 matrix, ascending.
pub fn eigenvalues_2x2(m: &[[f64; 2]; 2]) -> [f64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let half = tr / 2.0;
    let disc = half * half - det;
    if disc < 0.0 {
        return [half, half];
    }
    let root = disc.sqrt();
    // avoid cancellation in the smaller-magnitude root
    let big = if half >= 0.0 {
        half + root
    } else {
        half - root
    };
    let small = if big != 0.0 { det / big } else { 0.0 };
    if big < small {
        [big, small]
    } else {
        [small, big]
    }
}

/// The four fixed points `(β, θ) ∈ {±1} × {0, π}` with their stability.
pub fn fixed_points() -> Vec<FixedPoint> {
    [(1.0, 0.0), (-1.0, PI), (1.0, PI), (-1.0, 0.0)]
        .into_iter()
        .map(|(beta, theta)| {
            let j = jacobian(theta, beta);
            let eigenvalues = eigenvalues_2x2(&j);
            FixedPoint {
                beta,
                theta,
                stability: Stability::classify(eigenvalues),
                eigenvalues,
                jacobian: j,
            }
        })
        .collect()
}

/// One node of a direction field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldArrow {
    pub theta: f64,
    pub beta: f64,
    pub dtheta: f64,
    pub dbeta: f64,
    /// Unit vector along `(dθ, dβ)`; zero at a zero of the field.
    pub direction: (f64, f64),
    pub magnitude: f64,
    pub singular: bool,
}

pub fn linspace(range: (f64, f64), n: usize) -> impl Iterator<Item = f64> {
    let (lo, hi) = range;
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

/// Direction field on an `n_theta × n_beta` grid, θ-major.
///
/// Nodes with `|β| < beta_min` off the axis are kept and flagged `singular`,
/// with infinite magnitude and `dθ` pointing the way the field blows up.
pub fn direction_field(
    theta_range: (f64, f64),
    beta_range: (f64, f64),
    n_theta: usize,
    n_beta: usize,
    beta_min: f64,
) -> Result<Vec<FieldArrow>> {
    if n_theta < 2 || n_beta < 2 {
        return Err(Error::InvalidInput(
            "grid needs at least 2 nodes per axis".into(),
        ));
    }
    let valid = |(lo, hi): (f64, f64), min: f64, max: f64| lo < hi && lo >= min && hi <= max;
    if !valid(theta_range, 0.0, PI) || !valid(beta_range, -1.0, 1.0) {
        return Err(Error::InvalidInput(format!(
            "ranges must be increasing within [0, pi] x [-1, 1], got {theta_range:?} x {beta_range:?}"
        )));
    }

    let mut arrows = Vec::with_capacity(n_theta * n_beta);
    for theta in linspace(theta_range, n_theta) {
        for beta in linspace(beta_range, n_beta) {
            let s = axis_sin(theta);
            let dbeta = theta.cos() * (1.0 - beta * beta);
            let arrow = if s != 0.0 && beta.abs() < beta_min {
                let toward = -(s.signum() * beta.signum());
                FieldArrow {
                    theta,
                    beta,
                    dtheta: toward * f64::INFINITY,
                    dbeta,
                    direction: (toward, 0.0),
                    magnitude: f64::INFINITY,
                    singular: true,
                }
            } else {
                let dtheta = if s == 0.0 { 0.0 } else { -s / beta };
                let magnitude = dtheta.hypot(dbeta);
                let direction = if magnitude > 0.0 {
                    (dtheta / magnitude, dbeta / magnitude)
                } else {
                    (0.0, 0.0)
                };
                FieldArrow {
                    theta,
                    beta,
                    dtheta,
                    dbeta,
                    direction,
                    magnitude,
                    singular: false,
                }
            };
            arrows.push(arrow);
        }
    }
    Ok(arrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn state(theta: f64, beta: f64, tau: f64) -> FlowState {
        FlowState::from_beta(theta, beta, tau).unwrap()
    }

    #[test]
    fn rhs_on_axis() {
        let d = flow_rhs(&state(0.0, 0.5, 0.0), DEFAULT_BETA_MIN).unwrap();
        assert_eq!((d.dtheta, d.dbeta, d.dtau), (0.0, 0.75, 0.0));
    }

    #[test]
    fn rhs_on_light_cone() {
        let d = flow_rhs(&state(FRAC_PI_2, 1.0, 0.0), DEFAULT_BETA_MIN).unwrap();
        assert_eq!(d.dtheta, -1.0);
        assert!(d.dbeta.abs() < 1e-16);
        assert_eq!(d.dtau, 1.0);
    }

    #[test]
    fn rhs_perpendicular() {
        let d = flow_rhs(&state(FRAC_PI_2, 0.6, 0.0), DEFAULT_BETA_MIN).unwrap();
        assert!((d.dtheta + 5.0 / 3.0).abs() < 1e-15);
        assert!(d.dbeta.abs() < 1e-16);
        assert!((d.dtau - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rhs_singular_guard() {
        let err = flow_rhs(&state(1.0, 1e-9, 0.0), DEFAULT_BETA_MIN).unwrap_err();
        assert!(matches!(err, Error::NearSingularBeta { .. }));
        assert!(flow_rhs(&state(0.0, 0.0, 0.0), DEFAULT_BETA_MIN).is_ok());
        assert!(flow_rhs(&state(PI, 0.0, 0.0), DEFAULT_BETA_MIN).is_ok());
    }

    #[test]
    fn on_axis_is_colinear_addition() {
        let t = integrate(&state(0.0, 0.5, 0.0), 1.0, 1e-3).unwrap();
        let end = t.last();
        assert_eq!(end.xi, 1.0);
        assert_eq!(end.state.theta(), 0.0);
        assert_eq!(end.state.tau(), 0.0);
        // tanh(artanh 0.5 + 1)
        assert!((end.state.beta() - 0.9136709340400075).abs() < 1e-13);
        assert_eq!(t.samples.len(), 1001);
    }

    #[test]
    fn backward_axis_crosses_zero_speed() {
        let t = integrate(&state(PI, 0.5, 0.0), 3.0, 1e-3).unwrap();
        let end = t.last().state;
        assert_eq!(end.theta(), PI);
        assert!((end.rapidity() - (0.5f64.atanh() - 3.0)).abs() < 1e-12);
    }

    #[test]
    fn light_cone_aberration() {
        let theta0: f64 = 2.0;
        let t = integrate(&state(theta0, 1.0, 0.0), 4.0, 1e-3).unwrap();
        for s in t.samples.iter().step_by(500) {
            let expected = 2.0 * ((-s.xi).exp() * (theta0 / 2.0).tan()).atan();
            assert!((s.state.theta() - expected).abs() < 1e-8);
            assert_eq!(s.state.beta(), 1.0);
        }
    }

    #[test]
    fn rejects_bad_options_and_singular_start() {
        let s = state(1.0, 0.5, 0.0);
        assert!(integrate(&s, 1.0, 0.2).is_err());
        assert!(integrate(&s, 0.0, 0.01).is_err());
        assert!(matches!(
            integrate(&state(1.0, 1e-9, 0.0), 1.0, 1e-3),
            Err(Error::NearSingularBeta { .. })
        ));
    }

    #[test]
    fn step_monitor_trips_on_coarse_steps_near_zero_speed() {
        let s = state(2.9, 0.02, 0.0);
        assert!(matches!(
            integrate(&s, 4.0, 0.1),
            Err(Error::StepTooLarge { .. }) | Err(Error::NearSingularBeta { .. })
        ));
    }

    #[test]
    fn uneven_final_step_lands_on_xi_end() {
        let t = integrate(&state(1.0, 0.5, 0.0), 0.25, 0.1).unwrap();
        let xis: Vec<f64> = t.samples.iter().map(|s| s.xi).collect();
        assert_eq!(xis, vec![0.0, 0.1, 0.2, 0.25]);
    }

    #[test]
    fn fixed_point_classification() {
        let fps = fixed_points();
        assert_eq!(fps.len(), 4);
        let find = |b: f64, t: f64| fps.iter().find(|f| f.beta == b && f.theta == t).unwrap();
        let p = find(1.0, 0.0);
        assert_eq!(p.stability, Stability::Attractive);
        assert_eq!(p.eigenvalues, [-2.0, -1.0]);
        assert_eq!(find(-1.0, PI).stability, Stability::Attractive);
        assert_eq!(find(1.0, PI).stability, Stability::Repulsive);
        assert_eq!(find(-1.0, 0.0).stability, Stability::Repulsive);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        for (theta, beta) in [(0.0, 1.0), (PI, -1.0), (0.7, 0.4), (2.2, -0.8)] {
            let a = jacobian(theta, beta);
            let n = numerical_jacobian(theta, beta, 1e-6);
            for r in 0..2 {
                for c in 0..2 {
                    assert!((a[r][c] - n[r][c]).abs() < 1e-6, "{theta},{beta}");
                }
            }
        }
    }

    #[test]
    fn eigenvalues_of_general_matrices() {
        assert_eq!(eigenvalues_2x2(&[[2.0, 0.0], [0.0, -3.0]]), [-3.0, 2.0]);
        let e = eigenvalues_2x2(&[[1.0, 2.0], [3.0, 4.0]]);
        assert!((e[0] - (5.0 - 33f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!((e[1] - (5.0 + 33f64.sqrt()) / 2.0).abs() < 1e-14);
        assert_eq!(eigenvalues_2x2(&[[0.0, -1.0], [1.0, 0.0]]), [0.0, 0.0]);
    }

    #[test]
    fn direction_field_nodes() {
        let arrows = direction_field((0.0, PI / 2.0), (0.0, 0.6), 2, 2, DEFAULT_BETA_MIN).unwrap();
        assert_eq!(arrows.len(), 4);
        // θ = 0: purely along +β
        assert_eq!(arrows[1].direction, (0.0, 1.0));
        assert!(!arrows[0].singular);
        // θ = π/2, β = 0: singular
        assert!(arrows[2].singular && arrows[2].magnitude.is_infinite());
        // θ = π/2, β = 0.6: (-5/3, 0) normalized
        assert!((arrows[3].direction.0 + 1.0).abs() < 1e-15);
        assert!(arrows[3].direction.1.abs() < 1e-15);
    }

    #[test]
    fn direction_field_rejects_bad_grid() {
        assert!(direction_field((0.0, PI), (-1.0, 1.0), 1, 4, 1e-6).is_err());
        assert!(direction_field((0.0, 4.0), (-1.0, 1.0), 3, 4, 1e-6).is_err());
    }
}
