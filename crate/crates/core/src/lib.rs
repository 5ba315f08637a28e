//! Sub-Lorentzian geometry of the Engel group.
//!
//! * [`group`]: group law, left-invariant frame, metric and causal classes.
//! * [`special`]: elliptic integrals and Jacobi elliptic functions.
//! * [`hamiltonian`]: normal Hamiltonian flow, integrators, abnormal extremals.
//! * [`geodesics`]: closed-form geodesics from the origin and curve length.
//! * [`reachability`]: explicit horizontal curve families and the reachable ratio.
//! * [`io`], [`verify`]: tables for the command-line tool and the self-check battery.

pub mod error;
pub mod geodesics;
pub mod group;
pub mod hamiltonian;
pub mod io;
pub mod quad;
pub mod reachability;
pub mod special;
pub mod verify;

pub use error::{EngelError, Result};
pub use geodesics::{classify, classify_case, EllipticMethod, Geodesic, GeodesicCase};
pub use group::{CausalClass, CausalKind, EngelPoint, HorizontalVector, Orientation};
pub use hamiltonian::{integrate_normal, Covector, PhaseState, Trajectory};
