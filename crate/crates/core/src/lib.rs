//! Qudit circuits with ququint-based multi-controlled gate decompositions.
//!
//! Two logical qubits are stored in levels 0..=3 of a five-level qudit
//! (a ququint), leaving level 4 free as a built-in ancilla. Multi-controlled
//! phase gates then compile to short ladders of two-ququint controlled
//! phases. Qutrit and qubit-with-ancilla decompositions are provided for
//! comparison, together with a dense mixed-radix simulator, Grover search
//! on top of each backend and gate-count reports.

pub mod analysis;
pub mod bits;
pub mod circuit;
pub mod decompose;
pub mod document;
pub mod embedding;
pub mod error;
pub mod gate;
pub mod grover;
pub mod lowering;
pub mod register;
pub mod state;
pub mod verify;

pub use bits::Bitstring;
pub use circuit::{circuit_unitary, QuditCircuit};
pub use decompose::{DecompositionRequest, DecompositionResult, Method, OddVariant, Target};
pub use embedding::{EmbeddingMap, QubitSlot};
pub use error::{QuditError, Result};
pub use gate::{gate_matrix, LevelPairGate, QuditGate, TwoLevelUnitary, TwoQuditCz};
pub use register::QuditRegister;
pub use state::StateVector;

/// Comparison tolerance for constructed matrices.
pub const MATRIX_TOL: f64 = 1e-12;

/// Comparison tolerance for propagated states.
pub const STATE_TOL: f64 = 1e-10;
