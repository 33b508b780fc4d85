//! Finite-dimensional quantum information toolkit.
//!
//! Dense operators on small tensor-product spaces, qubit state families,
//! channels and cloning machines, teleportation, state discrimination,
//! entropies, and the CHSH polytope of two-input two-output behaviors.

pub mod bell;
pub mod channels;
pub mod discrimination;
pub mod entropy;
pub mod error;
pub mod qubit;
pub mod random;
pub mod teleport;
pub mod tensor;

pub use bell::{Behavior, BellFunctional, DeterministicStrategy, MembershipResult, NsTable};
pub use channels::KrausChannel;
pub use discrimination::{Ensemble, Povm};
pub use error::{Error, Result};
pub use qubit::{BellKind, BlochVector, MeasurementDirection};
pub use tensor::{
    eig_hermitian, kron, partial_trace, purify, trace_norm, validate_state, DenseOperator,
    EigenDecomposition, PureState, ValidationReport, C64,
};
