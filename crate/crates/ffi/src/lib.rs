//! C ABI for `lorentz-flow`.
//!
//! Every fallible function returns an [`LfStatus`] and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and
//! a description of the last error on the calling thread is available from
//! [`lf_last_error_message`]. Panics never cross the boundary; they surface
//! as `LF_STATUS_PANIC`.
//!
//! Heap objects handed to C are owned by the caller and must be released
//! with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lorentz_flow::collimation::{self, DecaySpec, SamplingMode};
use lorentz_flow::flow::{self, FlowState, IntegratorOptions, Stability, Trajectory};
use lorentz_flow::kinematics::{self, CompositionInput};
use lorentz_flow::portrait::{self, OutputFormat, PortraitSpec};
use lorentz_flow::spin_algebra::{self, SpinMatrix};
use lorentz_flow::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Degenerate = 3,
    Domain = 4,
    NearSingularBeta = 5,
    StepTooLarge = 6,
    NotUnimodular = 7,
    NotOrthochronous = 8,
    IndexOutOfRange = 9,
    Panic = 99,
}

impl From<&Error> for LfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DetViolation { .. } | Error::NotUnimodular { .. } => LfStatus::NotUnimodular,
            Error::DegenerateInput(_) => LfStatus::Degenerate,
            Error::Domain(_) => LfStatus::Domain,
            Error::InvalidInput(_) | Error::SpeedOutOfRange { .. } => LfStatus::InvalidInput,
            Error::NearSingularBeta { .. } => LfStatus::NearSingularBeta,
            Error::StepTooLarge { .. } => LfStatus::StepTooLarge,
            Error::NotOrthochronous { .. } => LfStatus::NotOrthochronous,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LfFormat {
    Csv = 0,
    Svg = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LfStability {
    Attractive = 0,
    Repulsive = 1,
    Saddle = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LfSampling {
    UniformCos = 0,
    UniformTheta = 1,
}

/// Row-major `[[a, b], [c, d]]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LfMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Result of composing a ẑ-boost `xi` after a boost `eta` along `theta0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LfComposition {
    pub lambda: f64,
    pub theta: f64,
    pub tau: f64,
    /// Resultant direction for the reverse order.
    pub phi: f64,
    pub beta: f64,
    pub invariant: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LfDecomposition {
    pub lambda: f64,
    pub theta: f64,
    pub tau: f64,
    /// True when the input had to be negated to reach `tau` in (-pi, pi].
    pub negated: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LfDerivative {
    pub dtheta: f64,
    pub dbeta: f64,
    pub dtau: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LfSample {
    pub xi: f64,
    pub theta: f64,
    pub beta: f64,
    pub tau: f64,
    pub rapidity: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LfFixedPoint {
    pub theta: f64,
    pub beta: f64,
    pub eigenvalues: [f64; 2],
    pub stability: LfStability,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LfCollimationSummary {
    pub median: f64,
    pub mean: f64,
    pub fraction_within_inverse_gamma: f64,
    /// Fractions of lab angles below 0.01, 0.1 and 0.5 rad.
    pub tail_fractions: [f64; 3],
    pub max_route_discrepancy: f64,
}

/// Opaque handle to an integrated trajectory.
pub struct LfTrajectory {
    inner: Trajectory,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, records any error or panic, and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), LfStatusError>) -> LfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LfStatus::Ok,
        Ok(Err(LfStatusError(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {message}"));
            LfStatus::Panic
        }
    }
}

struct LfStatusError(LfStatus, String);

impl From<Error> for LfStatusError {
    fn from(e: Error) -> Self {
        LfStatusError(LfStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> LfStatusError {
    LfStatusError(LfStatus::NullPointer, format!("{what} is null"))
}

/// Writes `value` through `out`, rejecting null.
///
/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), LfStatusError> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn lf_status_message(status: LfStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        LfStatus::Ok => b"ok\0",
        LfStatus::NullPointer => b"null pointer argument\0",
        LfStatus::InvalidInput => b"invalid input\0",
        LfStatus::Degenerate => b"degenerate input\0",
        LfStatus::Domain => b"argument outside the function's domain\0",
        LfStatus::NearSingularBeta => b"near-singular speed off the axis\0",
        LfStatus::StepTooLarge => b"integration step too large\0",
        LfStatus::NotUnimodular => b"matrix is not unimodular\0",
        LfStatus::NotOrthochronous => b"transformation is not orthochronous\0",
        LfStatus::IndexOutOfRange => b"index out of range\0",
        LfStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failure on this thread, or null if none. The pointer
/// stays valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn lf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `exp(-kappa σ_θ / 2)` for a boost of rapidity `kappa` along `theta`.
///
/// # Safety
/// `out` must be null or valid for writing an `LfMatrix`.
#[no_mangle]
pub unsafe extern "C" fn lf_boost_matrix(kappa: f64, theta: f64, out: *mut LfMatrix) -> LfStatus {
    guard(|| {
        let spec = spin_algebra::BoostSpec::new(kappa, theta)?;
        write_out(out, to_lf(&spin_algebra::boost_matrix(&spec)), "out")
    })
}

/// Splits a unimodular matrix into boost × rotation.
///
/// # Safety
/// `m` must be null or point to a valid `LfMatrix`; `out` must be null or
/// valid for writing an `LfDecomposition`.
#[no_mangle]
pub unsafe extern "C" fn lf_decompose(m: *const LfMatrix, out: *mut LfDecomposition) -> LfStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("m"))?;
        let spin = SpinMatrix::from_entries(m.a, m.b, m.c, m.d)?;
        let d = spin_algebra::decompose(&spin)?;
        write_out(
            out,
            LfDecomposition {
                lambda: d.lambda,
                theta: d.theta,
                tau: d.tau,
                negated: d.negated,
            },
            "out",
        )
    })
}

fn to_lf(m: &SpinMatrix) -> LfMatrix {
    let [a, b, c, d] = m.entries();
    LfMatrix { a, b, c, d }
}

/// Closed-form composition of a ẑ-boost `xi` after a boost `eta` along
/// `theta0` (rapidities non-negative, `theta0` in [0, pi]).
///
/// # Safety
/// `out` must be null or valid for writing an `LfComposition`.
#[no_mangle]
pub unsafe extern "C" fn lf_compose(
    xi: f64,
    eta: f64,
    theta0: f64,
    out: *mut LfComposition,
) -> LfStatus {
    guard(|| {
        let input = CompositionInput::new(xi, eta, theta0)?;
        let theta = kinematics::resultant_theta(&input)?;
        let lambda = kinematics::resultant_rapidity(&input);
        let result = LfComposition {
            lambda,
            theta,
            tau: kinematics::thomas_angle(&input),
            phi: kinematics::reverse_order_phi(&input)?,
            beta: lambda.tanh(),
            invariant: kinematics::flow_invariant(theta, lambda),
        };
        write_out(out, result, "out")
    })
}

/// Exact Thomas angle; 0 when both rapidities vanish.
///
/// # Safety
/// `out` must be null or valid for writing an `f64`.
#[no_mangle]
pub unsafe extern "C" fn lf_thomas_angle(
    xi: f64,
    eta: f64,
    theta0: f64,
    out: *mut f64,
) -> LfStatus {
    guard(|| {
        let input = CompositionInput::new(xi, eta, theta0)?;
        write_out(out, kinematics::thomas_angle(&input), "out")
    })
}

/// First-order Thomas angle for a small ẑ-boost `dxi`.
#[no_mangle]
pub extern "C" fn lf_infinitesimal_thomas(eta: f64, theta0: f64, dxi: f64) -> f64 {
    kinematics::infinitesimal_thomas(eta, theta0, dxi)
}

/// Flow derivatives `d(θ, β, τ)/dξ` at a state. `beta_min <= 0` selects the
/// library default.
///
/// # Safety
/// `out` must be null or valid for writing an `LfDerivative`.
#[no_mangle]
pub unsafe extern "C" fn lf_flow_rhs(
    theta: f64,
    beta: f64,
    tau: f64,
    beta_min: f64,
    out: *mut LfDerivative,
) -> LfStatus {
    guard(|| {
        let state = FlowState::from_beta(theta, beta, tau)?;
        let beta_min = if beta_min > 0.0 {
            beta_min
        } else {
            flow::DEFAULT_BETA_MIN
        };
        let d = flow::flow_rhs(&state, beta_min)?;
        write_out(
            out,
            LfDerivative {
                dtheta: d.dtheta,
                dbeta: d.dbeta,
                dtau: d.dtau,
            },
            "out",
        )
    })
}

/// Integrates the flow with RK4 from `(theta0, beta0, tau0)` to `xi_end`.
/// On success `*out` owns a new trajectory; free it with
/// [`lf_trajectory_free`].
///
/// # Safety
/// `out` must be null or valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_integrate(
    theta0: f64,
    beta0: f64,
    tau0: f64,
    xi_end: f64,
    step: f64,
    out: *mut *mut LfTrajectory,
) -> LfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let state = FlowState::from_beta(theta0, beta0, tau0)?;
        let inner = flow::integrate_with(&state, &IntegratorOptions::new(xi_end, step))?;
        out.write(Box::into_raw(Box::new(LfTrajectory { inner })));
        Ok(())
    })
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle from [`lf_integrate`].
#[no_mangle]
pub unsafe extern "C" fn lf_trajectory_len(t: *const LfTrajectory) -> usize {
    t.as_ref().map_or(0, |t| t.inner.samples.len())
}

/// # Safety
/// `t` must be null or a live handle from [`lf_integrate`]; `out` must be
/// null or valid for writing an `LfSample`.
#[no_mangle]
pub unsafe extern "C" fn lf_trajectory_sample(
    t: *const LfTrajectory,
    index: usize,
    out: *mut LfSample,
) -> LfStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trajectory"))?;
        let s = t.inner.samples.get(index).ok_or_else(|| {
            LfStatusError(
                LfStatus::IndexOutOfRange,
                format!("index {index} >= length {}", t.inner.samples.len()),
            )
        })?;
        let sample = LfSample {
            xi: s.xi,
            theta: s.state.theta(),
            beta: s.state.beta(),
            tau: s.state.tau(),
            rapidity: s.state.rapidity(),
        };
        write_out(out, sample, "out")
    })
}

/// Releases a trajectory. Null is ignored.
///
/// # Safety
/// `t` must be null or a handle from [`lf_integrate`] not already freed.
#[no_mangle]
pub unsafe extern "C" fn lf_trajectory_free(t: *mut LfTrajectory) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Writes the four fixed points of the planar flow into `out[0..4]`.
///
/// # Safety
/// `out` must be null or valid for writing four `LfFixedPoint`s.
#[no_mangle]
pub unsafe extern "C" fn lf_fixed_points(out: *mut LfFixedPoint) -> LfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        for (i, fp) in flow::fixed_points().iter().enumerate() {
            out.add(i).write(LfFixedPoint {
                theta: fp.theta,
                beta: fp.beta,
                eigenvalues: fp.eigenvalues,
                stability: match fp.stability {
                    Stability::Attractive => LfStability::Attractive,
                    Stability::Repulsive => LfStability::Repulsive,
                    Stability::Saddle => LfStability::Saddle,
                },
            });
        }
        Ok(())
    })
}

/// Renders the default phase portrait. On success `*out` owns a
/// NUL-terminated string; free it with [`lf_string_free`].
///
/// # Safety
/// `out` must be null or valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_render_portrait_default(
    format: LfFormat,
    out: *mut *mut c_char,
) -> LfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let format = match format {
            LfFormat::Csv => OutputFormat::Csv,
            LfFormat::Svg => OutputFormat::Svg,
        };
        let text = portrait::render_phase_portrait(&PortraitSpec::default(), format)?;
        let c = CString::new(text)
            .map_err(|_| LfStatusError(LfStatus::Panic, "output contained NUL".into()))?;
        out.write(c.into_raw());
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not already freed.
#[no_mangle]
pub unsafe extern "C" fn lf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Monte Carlo collimation of daughters with rest-frame speed
/// `daughter_beta` (1 for photons) from a parent of rapidity `xi`.
///
/// # Safety
/// `out` must be null or valid for writing an `LfCollimationSummary`.
#[no_mangle]
pub unsafe extern "C" fn lf_collimate(
    xi: f64,
    samples: usize,
    mode: LfSampling,
    daughter_beta: f64,
    seed: u64,
    out: *mut LfCollimationSummary,
) -> LfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = DecaySpec {
            mode: match mode {
                LfSampling::UniformCos => SamplingMode::UniformCos,
                LfSampling::UniformTheta => SamplingMode::UniformTheta,
            },
            daughter_beta,
            ..DecaySpec::photons(xi, samples, seed)
        };
        let s = collimation::collimate(&spec)?.summary;
        let mut tail_fractions = [0.0; 3];
        for (slot, t) in tail_fractions.iter_mut().zip(&s.tail_fractions) {
            *slot = t.fraction;
        }
        write_out(
            out,
            LfCollimationSummary {
                median: s.median,
                mean: s.mean,
                fraction_within_inverse_gamma: s.fraction_within_inverse_gamma,
                tail_fractions,
                max_route_discrepancy: s.max_route_discrepancy,
            },
            "out",
        )
    })
}
