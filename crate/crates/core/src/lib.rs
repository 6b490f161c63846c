//! Quantum correlations in photon-added Glauber coherent states.
//!
//! Two-mode quasi-Bell states and three-mode quasi-GHZ states built from the
//! coherent states `|α⟩`, `|−α⟩` with `m` photons added to the first mode are
//! mapped onto qubits through the even/odd cat encoding. For these states the
//! crate evaluates, in closed form:
//!
//! - Wootters concurrence and entanglement of formation of the quasi-Bell state,
//! - the von Neumann entropies of every reduced state of the quasi-GHZ state,
//! - pairwise quantum discord through the Koashi–Winter relation,
//! - the discord `D_{1|23}` and the monogamy deficit `Δ_123 = D_{1|23} − D_12 − D_13`,
//! - the analytic `|α| → 0` (W-type) limits.
//!
//! Every closed form is checked against [`fock_oracle`], which rebuilds the
//! states as truncated Fock vectors, takes partial traces, diagonalizes with
//! a cyclic Jacobi solver and minimizes the conditional entropy over projective
//! measurements. The oracle never touches the Laguerre closed forms.
//!
//! ```
//! use pacs_correlations::{report, ModelParams, Parity};
//!
//! let params = ModelParams::new(0.5, 1, Parity::Even).unwrap();
//! let r = report(&params);
//! assert!((r.delta123 - (r.d1_23 - 2.0 * r.d12)).abs() < 1e-12);
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod correlations;
mod error;
pub mod fock_oracle;
pub mod linalg;
pub mod special;
pub mod states;

pub use correlations::{
    report, violation_threshold, w_limit_report, CorrelationReport, Quantity, Threshold,
};
pub use error::{Error, Result};
pub use special::{LaguerreOrder, StrengthParam};
pub use states::{ModelParams, Parity};
