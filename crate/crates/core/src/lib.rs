//! Finite Lorentz velocity composition in the x–z boost plane.
//!
//! Boosts and rotations about ŷ are represented by real unimodular 2×2
//! matrices ([`spin_algebra::SpinMatrix`]). Composing two boosts yields a
//! third boost followed by a Thomas rotation; [`spin_algebra::decompose`]
//! extracts both, and [`kinematics`] gives the same parameters in closed
//! form. Repeatedly applying an infinitesimal ẑ-boost turns the parameters
//! (θ, β, τ) into a flow, integrated and analysed in [`flow`], serialized in
//! [`portrait`], and applied to decay collimation in [`collimation`].
//! [`oracle`] is an independent vector-representation reference used to
//! validate all of the above.
//!
//! Conventions: rapidities are dimensionless, speeds are `tanh(rapidity)`,
//! angles are radians. A boost with rapidity `κ` along direction `θ`
//! (measured from ẑ toward x̂) is `exp(-κ σ_θ / 2)` and acts on four-vectors
//! as a boost of rapidity `κ`.

pub mod angle;
pub mod collimation;
pub mod error;
pub mod flow;
pub mod kinematics;
pub mod oracle;
pub mod portrait;
pub mod spin_algebra;
pub mod verify;

pub use error::{Error, Result};
pub use flow::{FlowState, Trajectory};
pub use kinematics::CompositionInput;
pub use spin_algebra::{BoostSpec, Decomposition, SpinMatrix};
