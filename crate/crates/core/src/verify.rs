//! Exhaustive basis-state equivalence checks for compiled multi-controlled
//! gates.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::bits::Bitstring;
use crate::circuit::QuditCircuit;
use crate::decompose::{DecompositionResult, Target};
use crate::embedding::EmbeddingMap;
use crate::error::{QuditError, Result};
use crate::gate::QuditGate;
use crate::register::QuditRegister;
use crate::STATE_TOL;

/// Leakage bound for a compiled gate acting on embedded basis inputs.
pub const LEAKAGE_TOL: f64 = 1e-12;

/// Largest qubit count accepted by the exhaustive sweep.
pub const MAX_VERIFY_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub input: Bitstring,
    pub bystander: bool,
    pub amplitude_error: f64,
    pub leakage: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub inputs_checked: usize,
    pub max_amplitude_error: f64,
    pub max_leakage: f64,
    /// The first input that breached a tolerance, if any.
    pub first_failure: Option<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Ideal action of the target gate on a computational basis input:
/// the output bitstring and its phase.
pub fn ideal_action(bits: &Bitstring, target: Target) -> Result<(Bitstring, f64)> {
    match target {
        Target::Z => Ok((bits.clone(), if bits.all_ones() { -1.0 } else { 1.0 })),
        Target::X(t) => {
            if t >= bits.len() {
                return Err(QuditError::IndexOutOfRange { index: t, count: bits.len() });
            }
            let controls_on = bits.bits().iter().enumerate().all(|(k, &b)| k == t || b);
            let mut out = bits.bits().to_vec();
            if controls_on {
                out[t] = !out[t];
            }
            Ok((Bitstring::new(out), 1.0))
        }
    }
}

/// Amplitudes below this magnitude are dropped by [`SparseState`]; the
/// dropped magnitude is tracked and added to reported errors.
const PRUNE: f64 = 1e-15;

/// Map from basis index to amplitude. Embedded basis inputs stay sparse
/// through compiled circuits, so this is far cheaper than a dense vector
/// on wide registers.
#[derive(Clone, Debug)]
pub struct SparseState {
    amplitudes: BTreeMap<usize, C64>,
    dropped: f64,
}

impl SparseState {
    pub fn basis(index: usize) -> Self {
        Self { amplitudes: BTreeMap::from([(index, C64::new(1.0, 0.0))]), dropped: 0.0 }
    }

    pub fn amplitudes(&self) -> &BTreeMap<usize, C64> {
        &self.amplitudes
    }

    /// Upper bound on the amplitude error introduced by pruning.
    pub fn dropped(&self) -> f64 {
        self.dropped
    }

    pub fn apply(&mut self, gate: &QuditGate, register: &QuditRegister) {
        match gate {
            QuditGate::LevelPair(g) => {
                let stride = register.stride(g.site);
                let shift = (g.j - g.i) * stride;
                let [[a, b], [c, d]] = g.u.rows();
                let mut next = BTreeMap::new();
                for (&idx, &amp) in &self.amplitudes {
                    let level = register.digit(idx, g.site);
                    let terms = if level == g.i {
                        [(idx, a * amp), (idx + shift, c * amp)]
                    } else if level == g.j {
                        [(idx - shift, b * amp), (idx, d * amp)]
                    } else {
                        [(idx, amp), (idx, C64::new(0.0, 0.0))]
                    };
                    for (k, v) in terms {
                        *next.entry(k).or_insert(C64::new(0.0, 0.0)) += v;
                    }
                }
                self.amplitudes = next;
                self.prune();
            }
            QuditGate::Cz(g) => {
                for (&idx, amp) in self.amplitudes.iter_mut() {
                    if register.digit(idx, g.site_a) == g.i && register.digit(idx, g.site_b) == g.j {
                        *amp *= g.phase;
                    }
                }
            }
        }
    }

    fn prune(&mut self) {
        let mut dropped = 0.0;
        self.amplitudes.retain(|_, a| {
            let keep = a.norm() >= PRUNE;
            if !keep {
                dropped += a.norm();
            }
            keep
        });
        self.dropped += dropped;
    }
}

pub fn verify_decomposition(result: &DecompositionResult, target: Target) -> Result<VerifyReport> {
    verify_circuit(&result.circuit, &result.embedding, target)
}

/// Runs `circuit` on every embedded basis input (both bystander values
/// when the embedding has one) and compares against [`ideal_action`].
pub fn verify_circuit(
    circuit: &QuditCircuit,
    embedding: &EmbeddingMap,
    target: Target,
) -> Result<VerifyReport> {
    let n = embedding.qubit_count();
    if n > MAX_VERIFY_QUBITS {
        return Err(QuditError::InvalidSize(format!(
            "exhaustive verification supports at most {MAX_VERIFY_QUBITS} qubits, got {n}"
        )));
    }
    if circuit.register() != embedding.register() {
        return Err(QuditError::RegisterMismatch {
            expected: embedding.register().dims().to_vec(),
            found: circuit.register().dims().to_vec(),
        });
    }
    let bystander_values: &[bool] =
        if embedding.bystander().is_some() { &[false, true] } else { &[false] };
    let mut report = VerifyReport {
        inputs_checked: 0,
        max_amplitude_error: 0.0,
        max_leakage: 0.0,
        first_failure: None,
    };
    let register = circuit.register();
    for value in 0..1usize << n {
        let bits = Bitstring::from_index(value, n);
        let (out_bits, sign) = ideal_action(&bits, target)?;
        for &by in bystander_values {
            let input = register.index(&embedding.embed_basis_state_with_bystander(&bits, by)?)?;
            let expected = register.index(&embedding.embed_basis_state_with_bystander(&out_bits, by)?)?;
            let mut state = SparseState::basis(input);
            for g in circuit.gates() {
                state.apply(g, register);
            }
            let mut err = state.amplitudes.get(&expected).map_or(1.0, |a| (a - sign).norm());
            let mut leakage = 0.0;
            for (&idx, amp) in &state.amplitudes {
                if idx != expected {
                    err = err.max(amp.norm());
                }
                if embedding.decode_index(idx).is_none() {
                    leakage += amp.norm_sqr();
                }
            }
            err += state.dropped;
            leakage = (leakage.sqrt() + state.dropped).powi(2);
            report.inputs_checked += 1;
            report.max_amplitude_error = report.max_amplitude_error.max(err);
            report.max_leakage = report.max_leakage.max(leakage);
            if report.first_failure.is_none() && (err >= STATE_TOL || leakage >= LEAKAGE_TOL) {
                report.first_failure = Some(Mismatch {
                    input: bits.clone(),
                    bystander: by,
                    amplitude_error: err,
                    leakage,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{decompose, DecompositionRequest, Method, OddVariant};

    #[test]
    fn ideal_actions() {
        let ones = Bitstring::ones(3);
        assert_eq!(ideal_action(&ones, Target::Z).unwrap(), (ones.clone(), -1.0));
        let (b, s) = ideal_action(&"110".parse().unwrap(), Target::X(2)).unwrap();
        assert_eq!((b.to_string(), s), ("111".to_string(), 1.0));
        let (b, _) = ideal_action(&"100".parse().unwrap(), Target::X(2)).unwrap();
        assert_eq!(b.to_string(), "100");
        assert!(ideal_action(&ones, Target::X(3)).is_err());
    }

    #[test]
    fn small_decompositions_pass() {
        for m in Method::ALL {
            for n in 2..=5 {
                let r = decompose(&DecompositionRequest::new(n, m)).unwrap();
                let rep = verify_decomposition(&r, Target::Z).unwrap();
                assert!(rep.passed(), "{m} n={n}: {rep:?}");
            }
        }
    }

    #[test]
    fn sparse_matches_dense() {
        let r = decompose(&DecompositionRequest::new(5, Method::Qubit)).unwrap();
        let reg = r.circuit.register();
        for idx in [0, 37, reg.total_dim() - 1] {
            let mut sparse = SparseState::basis(idx);
            for g in r.circuit.gates() {
                sparse.apply(g, reg);
            }
            let dense = r.circuit.run(&crate::StateVector::basis(reg.clone(), idx).unwrap()).unwrap();
            for (k, a) in dense.amplitudes().iter().enumerate() {
                let s = sparse.amplitudes().get(&k).copied().unwrap_or_default();
                assert!((s - a).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn corrupted_circuit_fails_with_bitstring() {
        let r = decompose(&DecompositionRequest::new(4, Method::Ququint).odd_variant(OddVariant::Single)).unwrap();
        let mut bad = QuditCircuit::new(r.circuit.register().clone());
        bad.push(QuditGate::cz(0, 1, 3, 2)).unwrap();
        let rep = verify_circuit(&bad, &r.embedding, Target::Z).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.first_failure.unwrap().input.to_string(), "1110");
    }
}
