use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{QuditError, Result};
use crate::gate::{check_matrix_dim, gate_matrix, QuditGate};
use crate::register::QuditRegister;
use crate::state::StateVector;

/// An ordered gate sequence over a fixed register. Every gate is validated
/// against the register on insertion.
#[derive(Clone, Debug, PartialEq)]
pub struct QuditCircuit {
    register: QuditRegister,
    gates: Vec<QuditGate>,
}

impl QuditCircuit {
    pub fn new(register: QuditRegister) -> Self {
        Self { register, gates: Vec::new() }
    }

    pub fn from_gates(register: QuditRegister, gates: Vec<QuditGate>) -> Result<Self> {
        let mut c = Self::new(register);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn push(&mut self, gate: impl Into<QuditGate>) -> Result<()> {
        let gate = gate.into();
        gate.validate(&self.register)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = QuditGate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn gates(&self) -> &[QuditGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn two_particle_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_particle()).count()
    }

    /// The inverse circuit: adjoint gates in reverse order.
    pub fn inverse(&self) -> Self {
        Self {
            register: self.register.clone(),
            gates: self.gates.iter().rev().map(QuditGate::adjoint).collect(),
        }
    }

    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.register() != &self.register {
            return Err(QuditError::RegisterMismatch {
                expected: self.register.dims().to_vec(),
                found: state.register().dims().to_vec(),
            });
        }
        state.apply_all(&self.gates)
    }

    pub fn run(&self, input: &StateVector) -> Result<StateVector> {
        let mut s = input.clone();
        self.apply(&mut s)?;
        Ok(s)
    }
}

/// Ordered product of the gate matrices; later gates multiply on the left.
pub fn circuit_unitary(circuit: &QuditCircuit) -> Result<DMatrix<C64>> {
    let dim = check_matrix_dim(circuit.register())?;
    let mut acc = DMatrix::<C64>::identity(dim, dim);
    for g in circuit.gates() {
        acc = gate_matrix(g, circuit.register())? * acc;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::TwoLevelUnitary;
    use crate::MATRIX_TOL;

    #[test]
    fn empty_circuit_is_identity() {
        let c = QuditCircuit::new(QuditRegister::uniform(2, 3).unwrap());
        let u = circuit_unitary(&c).unwrap();
        assert!((u - DMatrix::identity(9, 9)).norm() < MATRIX_TOL);
    }

    #[test]
    fn single_gate_circuit() {
        let reg = QuditRegister::uniform(2, 5).unwrap();
        let g = QuditGate::level_pair(1, 1, 3, TwoLevelUnitary::hadamard());
        let c = QuditCircuit::from_gates(reg.clone(), vec![g]).unwrap();
        let u = circuit_unitary(&c).unwrap();
        assert!((u - gate_matrix(&g, &reg).unwrap()).norm() < MATRIX_TOL);
    }

    #[test]
    fn push_validates() {
        let mut c = QuditCircuit::new(QuditRegister::uniform(2, 3).unwrap());
        assert!(c.push(QuditGate::cz(0, 1, 3, 0)).is_err());
        assert!(c.is_empty());
    }

    #[test]
    fn register_mismatch_detected() {
        let c = QuditCircuit::new(QuditRegister::uniform(2, 3).unwrap());
        let mut s = StateVector::zero(QuditRegister::uniform(2, 5).unwrap()).unwrap();
        assert!(matches!(c.apply(&mut s), Err(QuditError::RegisterMismatch { .. })));
    }
}
