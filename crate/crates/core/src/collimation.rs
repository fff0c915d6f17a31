//! Forward collimation of decay products from a fast parent.
//!
//! A parent moving along ẑ with rapidity `ξ` emits daughters with rest-frame
//! direction `θ₀` and speed `β₀`. The lab direction is where the flow
//! carries `(θ₀, β₀)` after a ẑ-boost of `ξ`. Photons (`β₀ = 1`) stay on
//! the light cone, where `tan(θ/2) = e^{-ξ} tan(θ₀/2)`; massive daughters
//! obey `sin θ sinh λ = sin θ₀ sinh λ₀`.
//!
//! Each sample is computed twice: by closed form, and through the 2×2
//! matrices (the null spinor `(cos θ₀/2, sin θ₀/2)` for photons, a full
//! compose/decompose for massive daughters).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{self, CompositionInput};
use crate::spin_algebra::{compose, decompose, SpinMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMode {
    /// Isotropic emission.
    UniformCos,
    UniformTheta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecaySpec {
    /// Parent rapidity.
    pub xi: f64,
    pub samples: usize,
    pub mode: SamplingMode,
    pub bins: usize,
    /// Daughter speed in the parent frame; 1 for photons.
    pub daughter_beta: f64,
    pub seed: u64,
}

impl DecaySpec {
    pub fn photons(xi: f64, samples: usize, seed: u64) -> Self {
        DecaySpec {
            xi,
            samples,
            mode: SamplingMode::UniformCos,
            bins: 36,
            daughter_beta: 1.0,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.xi.is_finite() && self.xi >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "parent rapidity must be finite and non-negative, got {}",
                self.xi
            )));
        }
        if self.samples == 0 || self.bins == 0 {
            return Err(Error::InvalidInput(
                "need at least one sample and one bin".into(),
            ));
        }
        if !(self.daughter_beta > 0.0 && self.daughter_beta <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "daughter speed must lie in (0, 1], got {}",
                self.daughter_beta
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecaySample {
    pub rest_theta: f64,
    pub lab_theta: f64,
    /// Same angle through the matrix route.
    pub lab_theta_matrix: f64,
    /// Lab rapidity of a massive daughter.
    pub lab_rapidity: Option<f64>,
    /// `|sin θ sinh λ - sin θ₀ sinh λ₀|` relative to `max(1, |sin θ₀ sinh λ₀|)`.
    pub invariant_residual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub bin_lo: f64,
    pub bin_hi: f64,
    pub count: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFraction {
    pub threshold: f64,
    pub fraction: f64,
}

pub const TAIL_THRESHOLDS: [f64; 3] = [0.01, 0.1, 0.5];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollimationSummary {
    pub xi: f64,
    pub daughter_beta: f64,
    pub samples: usize,
    pub mode: SamplingMode,
    pub seed: u64,
    pub median: f64,
    pub mean: f64,
    /// Fraction with lab angle below `1 / cosh ξ`.
    pub fraction_within_inverse_gamma: f64,
    /// Fractions with lab angle below each threshold.
    pub tail_fractions: Vec<TailFraction>,
    pub max_route_discrepancy: f64,
    pub max_invariant_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Collimation {
    pub samples: Vec<DecaySample>,
    pub histogram: Vec<HistogramBin>,
    pub summary: CollimationSummary,
}

/// Lab angle of a photon emitted at `theta0` by a parent of rapidity `xi`.
pub fn aberration_angle(xi: f64, theta0: f64) -> f64 {
    2.0 * ((-xi).exp() * (theta0 / 2.0).tan()).atan()
}

fn photon_matrix_route(to_lab: &SpinMatrix, theta0: f64) -> f64 {
    let (s, c) = (theta0 / 2.0).sin_cos();
    let v = to_lab.apply([c, s]);
    2.0 * v[1].atan2(v[0])
}

/// Rest-frame emission angles drawn from a seeded ChaCha8 stream.
pub fn sample_rest_angles(spec: &DecaySpec) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.samples)
        .map(|_| {
            let u: f64 = rng.gen();
            match spec.mode {
                SamplingMode::UniformCos => (1.0 - 2.0 * u).acos(),
                SamplingMode::UniformTheta => std::f64::consts::PI * u,
            }
        })
        .collect()
}

pub fn collimate(spec: &DecaySpec) -> Result<Collimation> {
    spec.validate()?;
    let rest = sample_rest_angles(spec);
    let photon = spec.daughter_beta == 1.0;
    // Momenta transform with the inverse of the frame boost.
    let to_lab = SpinMatrix::boost(spec.xi, 0.0).inverse();
    let parent = SpinMatrix::boost(spec.xi, 0.0);
    let eta = if photon {
        f64::INFINITY
    } else {
        spec.daughter_beta.atanh()
    };

    let mut samples = Vec::with_capacity(rest.len());
    for theta0 in rest {
        let sample = if photon {
            DecaySample {
                rest_theta: theta0,
                lab_theta: aberration_angle(spec.xi, theta0),
                lab_theta_matrix: photon_matrix_route(&to_lab, theta0),
                lab_rapidity: None,
                invariant_residual: None,
            }
        } else {
            let input = CompositionInput::new(spec.xi, eta, theta0)?;
            let lab_theta = kinematics::resultant_theta(&input)?;
            let dec = decompose(&compose(&parent, &SpinMatrix::boost(eta, theta0))?)?;
            let before = kinematics::flow_invariant(theta0, eta);
            let after = kinematics::flow_invariant(dec.theta, dec.lambda);
            DecaySample {
                rest_theta: theta0,
                lab_theta,
                lab_theta_matrix: dec.theta,
                lab_rapidity: Some(dec.lambda),
                invariant_residual: Some((after - before).abs() / before.abs().max(1.0)),
            }
        };
        samples.push(sample);
    }

    let histogram = histogram(&samples, spec.bins);
    let summary = summarize(spec, &samples);
    Ok(Collimation {
        samples,
        histogram,
        summary,
    })
}

fn histogram(samples: &[DecaySample], bins: usize) -> Vec<HistogramBin> {
    let width = std::f64::consts::PI / bins as f64;
    let mut counts = vec![0usize; bins];
    for s in samples {
        let idx = ((s.lab_theta / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let n = samples.len() as f64;
    counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            bin_lo: i as f64 * width,
            bin_hi: if i + 1 == bins {
                std::f64::consts::PI
            } else {
                (i + 1) as f64 * width
            },
            count,
            fraction: count as f64 / n,
        })
        .collect()
}

fn summarize(spec: &DecaySpec, samples: &[DecaySample]) -> CollimationSummary {
    let mut lab: Vec<f64> = samples.iter().map(|s| s.lab_theta).collect();
    lab.sort_by(f64::total_cmp);
    let n = lab.len();
    let median = if n % 2 == 1 {
        lab[n / 2]
    } else {
        0.5 * (lab[n / 2 - 1] + lab[n / 2])
    };
    let mean = lab.iter().sum::<f64>() / n as f64;
    let fraction_below = |t: f64| lab.partition_point(|&x| x < t) as f64 / n as f64;
    let max_invariant_residual = samples
        .iter()
        .filter_map(|s| s.invariant_residual)
        .reduce(f64::max);
    CollimationSummary {
        xi: spec.xi,
        daughter_beta: spec.daughter_beta,
        samples: n,
        mode: spec.mode,
        seed: spec.seed,
        median,
        mean,
        fraction_within_inverse_gamma: fraction_below(1.0 / spec.xi.cosh()),
        tail_fractions: TAIL_THRESHOLDS
            .iter()
            .map(|&threshold| TailFraction {
                threshold,
                fraction: fraction_below(threshold),
            })
            .collect(),
        max_route_discrepancy: samples
            .iter()
            .map(|s| (s.lab_theta - s.lab_theta_matrix).abs())
            .fold(0.0, f64::max),
        max_invariant_residual,
    }
}

pub fn histogram_csv(bins: &[HistogramBin]) -> String {
    let mut out = String::from("bin_lo,bin_hi,count,fraction\n");
    for b in bins {
        out.push_str(&format!(
            "{},{},{},{}\n",
            b.bin_lo, b.bin_hi, b.count, b.fraction
        ));
    }
    out
}

pub fn summary_json(summary: &CollimationSummary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary serializes");
    s.push('\n');
    s
}
