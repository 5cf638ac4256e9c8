//! Qubit-level circuits and their lowering onto a qudit backend.

use crate::circuit::QuditCircuit;
use crate::decompose::DecompositionResult;
use crate::error::{QuditError, Result};
use crate::gate::{QuditGate, TwoLevelUnitary};
use crate::register::QuditRegister;
use crate::state::StateVector;
use num_complex::Complex64 as C64;

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum QubitGate {
    Single { qubit: usize, u: TwoLevelUnitary },
    /// Symmetric `C^{n-1}Z` over all qubits of the circuit.
    MultiControlledZ,
}

impl QubitGate {
    pub fn h(qubit: usize) -> Self {
        Self::Single { qubit, u: TwoLevelUnitary::hadamard() }
    }

    pub fn x(qubit: usize) -> Self {
        Self::Single { qubit, u: TwoLevelUnitary::pauli_x() }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct QubitCircuit {
    pub qubit_count: usize,
    pub gates: Vec<QubitGate>,
}

impl QubitCircuit {
    pub fn new(qubit_count: usize) -> Self {
        Self { qubit_count, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: QubitGate) -> Result<()> {
        if let QubitGate::Single { qubit, .. } = gate {
            if qubit >= self.qubit_count {
                return Err(QuditError::IndexOutOfRange { index: qubit, count: self.qubit_count });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn append(&mut self, other: &QubitCircuit) -> Result<()> {
        for &g in &other.gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn multi_controlled_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, QubitGate::MultiControlledZ))
            .count()
    }

    /// Exact simulation on a plain qubit register, with `C^{n-1}Z` applied
    /// as a single phase flip.
    pub fn simulate_reference(&self, state: &mut StateVector) -> Result<()> {
        let reg = QuditRegister::uniform(self.qubit_count, 2)?;
        if state.register() != &reg {
            return Err(QuditError::RegisterMismatch {
                expected: reg.dims().to_vec(),
                found: state.register().dims().to_vec(),
            });
        }
        let all_ones: Vec<(usize, usize)> = (0..self.qubit_count).map(|q| (q, 1)).collect();
        for g in &self.gates {
            match *g {
                QubitGate::Single { qubit, u } => {
                    state.apply(&QuditGate::level_pair(qubit, 0, 1, u))?;
                }
                QubitGate::MultiControlledZ => {
                    state.apply_controlled_phase(&all_ones, C64::new(-1.0, 0.0))?;
                }
            }
        }
        Ok(())
    }
}

/// Rewrites every qubit gate onto the qudits of `cnz`'s embedding: single
/// gates are lifted slot by slot, `C^{n-1}Z` is replaced by the compiled
/// decomposition.
pub fn lower(circuit: &QubitCircuit, cnz: &DecompositionResult) -> Result<QuditCircuit> {
    if circuit.qubit_count != cnz.embedding.qubit_count() {
        return Err(QuditError::LengthMismatch {
            expected: cnz.embedding.qubit_count(),
            found: circuit.qubit_count,
        });
    }
    let mut out = QuditCircuit::new(cnz.circuit.register().clone());
    for g in &circuit.gates {
        match *g {
            QubitGate::Single { qubit, u } => {
                let lifted = cnz.embedding.lift_single_qubit_gate(&u, qubit)?;
                out.extend(lifted.into_iter().map(QuditGate::from))?;
            }
            QubitGate::MultiControlledZ => out.extend(cnz.circuit.gates().iter().copied())?,
        }
    }
    Ok(out)
}
