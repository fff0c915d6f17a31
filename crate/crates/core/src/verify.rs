//! Self-check suite behind `lorentz-flow verify`.
//!
//! Random compositions are pushed through the closed forms, the 2×2 matrix
//! route and the vector oracle; the flow is checked for invariant
//! conservation, fixed-point stability and RK4 order.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::flow::{self, integrate, integrate_with, FlowState, IntegratorOptions, Stability};
use crate::kinematics::{self, CompositionInput};
use crate::oracle;
use crate::spin_algebra::{decompose, reverse_order_identity_residual, SpinMatrix};
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Worst observed value of the checked quantity.
    pub observed: f64,
    pub limit: String,
    pub passed: bool,
}

fn below(name: &'static str, observed: f64, tol: f64) -> Check {
    Check {
        name,
        observed,
        limit: format!("< {tol:e}"),
        passed: observed < tol,
    }
}

/// `n` random compositions with `ξ, η ∈ [0, 5]`, `θ₀ ∈ [0, π]`.
pub fn random_inputs(n: usize, seed: u64) -> Vec<CompositionInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let xi = rng.gen_range(0.0..=5.0);
            let eta = rng.gen_range(0.0..=5.0);
            let theta0 = rng.gen_range(0.0..=PI);
            CompositionInput::new(xi, eta, theta0).expect("in range")
        })
        .collect()
}

#[derive(Debug, Default, Clone, Copy)]
pub struct RouteErrors {
    pub lambda: f64,
    pub theta: f64,
    pub tau: f64,
}

/// Worst disagreement between the closed forms and decompose(compose(..)).
pub fn closed_form_vs_matrix(inputs: &[CompositionInput]) -> Result<RouteErrors> {
    let mut worst = RouteErrors::default();
    for i in inputs {
        let m = SpinMatrix::boost(i.xi, 0.0) * SpinMatrix::boost(i.eta, i.theta0);
        let d = decompose(&m)?;
        worst.lambda = worst
            .lambda
            .max((kinematics::resultant_rapidity(i) - d.lambda).abs());
        worst.theta = worst
            .theta
            .max((kinematics::resultant_theta(i)? - d.theta).abs());
        worst.tau = worst.tau.max((kinematics::thomas_angle(i) - d.tau).abs());
    }
    Ok(worst)
}

/// Worst disagreement between the vector oracle and both other routes.
pub fn oracle_vs_routes(inputs: &[CompositionInput]) -> Result<RouteErrors> {
    let mut worst = RouteErrors::default();
    for i in inputs {
        let o = oracle::oracle_compose(i.xi, i.eta, i.theta0)?;
        let d = decompose(&(SpinMatrix::boost(i.xi, 0.0) * SpinMatrix::boost(i.eta, i.theta0)))?;
        let closed = (
            kinematics::resultant_rapidity(i),
            kinematics::resultant_theta(i)?,
            kinematics::thomas_angle(i),
        );
        for (l, t, a) in [(d.lambda, d.theta, d.tau), closed] {
            worst.lambda = worst.lambda.max((o.lambda - l).abs());
            worst.theta = worst.theta.max((o.theta - t).abs());
            worst.tau = worst.tau.max((o.tau - a).abs());
        }
    }
    Ok(worst)
}

/// Endpoint error of RK4 against the closed-form composition, max over
/// `(θ, λ, τ)`. The step-doubling guard is switched off: measuring the
/// order needs steps coarse enough for the error to be visible.
pub fn rk4_endpoint_error(theta0: f64, beta0: f64, xi_end: f64, step: f64) -> Result<f64> {
    let eta = beta0.atanh();
    let opts = IntegratorOptions {
        truncation_tolerance: f64::INFINITY,
        ..IntegratorOptions::new(xi_end, step)
    };
    let t = integrate_with(&FlowState::from_beta(theta0, beta0, 0.0)?, &opts)?;
    let end = t.last().state;
    let input = CompositionInput::new(xi_end, eta, theta0)?;
    Ok([
        (end.theta() - kinematics::resultant_theta(&input)?).abs(),
        (end.rapidity() - kinematics::resultant_rapidity(&input)).abs(),
        (end.tau() - kinematics::thomas_angle(&input)).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max))
}

pub fn run(n: usize, seed: u64) -> Result<Vec<Check>> {
    let inputs = random_inputs(n, seed);
    let mut checks = Vec::new();

    let cm = closed_form_vs_matrix(&inputs)?;
    checks.push(below("closed form vs matrix: lambda", cm.lambda, 1e-10));
    checks.push(below("closed form vs matrix: theta", cm.theta, 1e-10));
    checks.push(below("closed form vs matrix: tau", cm.tau, 1e-9));

    let or = oracle_vs_routes(&inputs)?;
    checks.push(below("vector oracle: lambda", or.lambda, 1e-9));
    checks.push(below("vector oracle: theta", or.theta, 1e-9));
    checks.push(below("vector oracle: tau", or.tau, 1e-8));

    let mut residual: f64 = 0.0;
    for i in &inputs {
        residual = residual.max(reverse_order_identity_residual(i.xi, i.eta, i.theta0)?);
    }
    checks.push(below("reverse-order identity residual", residual, 1e-10));

    let mut drift: f64 = 0.0;
    for (theta0, beta0) in [(FRAC_PI_2, 0.6), (0.4, 0.3), (2.6, 0.8), (1.2, -0.5)] {
        let t = integrate(&FlowState::from_beta(theta0, beta0, 0.0)?, 10.0, 1e-3)?;
        drift = drift.max(t.invariant_drift().unwrap_or(f64::INFINITY));
    }
    checks.push(below("invariant drift along RK4 trajectories", drift, 1e-8));

    let mut eig: f64 = 0.0;
    let mut classes_ok = true;
    for fp in flow::fixed_points() {
        let numeric = flow::eigenvalues_2x2(&flow::numerical_jacobian(fp.theta, fp.beta, 1e-6));
        eig = eig.max((numeric[0] - fp.eigenvalues[0]).abs());
        eig = eig.max((numeric[1] - fp.eigenvalues[1]).abs());
        let expected = if (fp.beta > 0.0) == (fp.theta == 0.0) {
            Stability::Attractive
        } else {
            Stability::Repulsive
        };
        classes_ok &= fp.stability == expected;
    }
    checks.push(below(
        "fixed-point eigenvalues: analytic vs finite difference",
        eig,
        1e-5,
    ));
    checks.push(Check {
        name: "fixed-point classification",
        observed: if classes_ok { 1.0 } else { 0.0 },
        limit: "== 1".into(),
        passed: classes_ok,
    });

    let coarse = rk4_endpoint_error(FRAC_PI_2, 0.6, 2.0, 0.1)?;
    let fine = rk4_endpoint_error(FRAC_PI_2, 0.6, 2.0, 0.05)?;
    let ratio = coarse / fine;
    checks.push(Check {
        name: "RK4 error ratio on step halving",
        observed: ratio,
        limit: "in [12, 20]".into(),
        passed: (12.0..=20.0).contains(&ratio),
    });

    Ok(checks)
}

pub fn format_table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{:<width$}  {:>12.3e}  {:<14}  {}\n",
            c.name,
            c.observed,
            c.limit,
            if c.passed { "PASS" } else { "FAIL" },
        ));
    }
    out
}
