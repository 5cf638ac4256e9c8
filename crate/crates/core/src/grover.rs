//! Grover search for a single marked bitstring, simulated on any backend.
//!
//! Each iteration applies a phase oracle and the diffusion operator; both
//! contain exactly one `C^{n-1}Z`, which non-reference backends replace by
//! their compiled decomposition.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::Bitstring;
use crate::decompose::{decompose, DecompositionRequest, Method, OddVariant};
use crate::error::{QuditError, Result};
use crate::lowering::{lower, QubitCircuit, QubitGate};
use crate::register::QuditRegister;
use crate::state::StateVector;
use crate::STATE_TOL;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Plain qubits with an exact multi-controlled phase.
    Reference,
    Ququint,
    Qutrit,
    Qubit,
}

impl Backend {
    pub const ALL: [Backend; 4] = [Backend::Reference, Backend::Ququint, Backend::Qutrit, Backend::Qubit];

    pub fn method(self) -> Option<Method> {
        match self {
            Self::Reference => None,
            Self::Ququint => Some(Method::Ququint),
            Self::Qutrit => Some(Method::Qutrit),
            Self::Qubit => Some(Method::Qubit),
        }
    }

    /// Largest supported qubit count for this backend.
    pub fn max_qubits(self) -> usize {
        match self {
            Self::Reference | Self::Qubit => 12,
            Self::Ququint | Self::Qutrit => 10,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.method() {
            None => f.write_str("reference"),
            Some(m) => m.fmt(f),
        }
    }
}

impl FromStr for Backend {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reference" => Ok(Self::Reference),
            "ququint" => Ok(Self::Ququint),
            "qutrit" => Ok(Self::Qutrit),
            "qubit" => Ok(Self::Qubit),
            other => Err(QuditError::InvalidSize(format!("unknown backend {other:?}"))),
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Iterations {
    #[default]
    Auto,
    Fixed(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroverSpec {
    pub n: usize,
    pub omega: Bitstring,
    pub backend: Backend,
    pub odd_variant: OddVariant,
    pub iterations: Iterations,
}

impl GroverSpec {
    pub fn new(omega: Bitstring, backend: Backend) -> Self {
        Self {
            n: omega.len(),
            omega,
            backend,
            odd_variant: OddVariant::Single,
            iterations: Iterations::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroverReport {
    pub n: usize,
    pub omega: Bitstring,
    pub backend: Backend,
    pub iterations: usize,
    pub success_probability: f64,
    pub top_outcome: Bitstring,
    pub two_particle_gates: usize,
    pub leakage: f64,
    /// Outcome probabilities indexed by the big-endian bitstring value.
    pub distribution: Vec<f64>,
}

/// `floor(pi / (4 asin(2^{-n/2})))`, at least 1.
pub fn auto_iterations(n: usize) -> usize {
    let theta = (0.5f64).powf(n as f64 / 2.0).asin();
    ((PI / (4.0 * theta)).floor() as usize).max(1)
}

/// `sin^2((2k + 1) asin(2^{-n/2}))`.
pub fn analytic_success_probability(n: usize, iterations: usize) -> f64 {
    let theta = (0.5f64).powf(n as f64 / 2.0).asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

/// Phase oracle `|x> -> (-1)^{[x = omega]} |x>`.
pub fn build_oracle(omega: &Bitstring) -> Result<QubitCircuit> {
    let n = omega.len();
    let mut c = QubitCircuit::new(n);
    let zeros: Vec<usize> = (0..n).filter(|&q| !omega.get(q)).collect();
    for &q in &zeros {
        c.push(QubitGate::x(q))?;
    }
    c.push(QubitGate::MultiControlledZ)?;
    for &q in &zeros {
        c.push(QubitGate::x(q))?;
    }
    Ok(c)
}

/// `H X C^{n-1}Z X H` on all qubits, which equals `1 - 2|sym><sym|`.
pub fn build_diffusion(n: usize) -> Result<QubitCircuit> {
    if n < 2 {
        return Err(QuditError::InvalidSize(format!("need at least 2 qubits, got {n}")));
    }
    let mut c = QubitCircuit::new(n);
    for q in 0..n {
        c.push(QubitGate::h(q))?;
    }
    for q in 0..n {
        c.push(QubitGate::x(q))?;
    }
    c.push(QubitGate::MultiControlledZ)?;
    for q in 0..n {
        c.push(QubitGate::x(q))?;
    }
    for q in 0..n {
        c.push(QubitGate::h(q))?;
    }
    Ok(c)
}

/// Full qubit-level search circuit starting from `|0...0>`.
pub fn build_grover_circuit(omega: &Bitstring, iterations: usize) -> Result<QubitCircuit> {
    let n = omega.len();
    let mut c = QubitCircuit::new(n);
    for q in 0..n {
        c.push(QubitGate::h(q))?;
    }
    let oracle = build_oracle(omega)?;
    let diffusion = build_diffusion(n)?;
    for _ in 0..iterations {
        c.append(&oracle)?;
        c.append(&diffusion)?;
    }
    Ok(c)
}

pub fn run_grover(spec: &GroverSpec) -> Result<GroverReport> {
    let n = spec.n;
    if spec.omega.len() != n {
        return Err(QuditError::LengthMismatch { expected: n, found: spec.omega.len() });
    }
    if n < 2 {
        return Err(QuditError::InvalidSize(format!("need at least 2 qubits, got {n}")));
    }
    let max = spec.backend.max_qubits();
    if n > max {
        return Err(QuditError::StateTooLarge { dim: n, limit: max });
    }
    let iterations = match spec.iterations {
        Iterations::Auto => auto_iterations(n),
        Iterations::Fixed(0) => {
            return Err(QuditError::InvalidSize("iterations must be at least 1".into()))
        }
        Iterations::Fixed(k) => k,
    };
    let circuit = build_grover_circuit(&spec.omega, iterations)?;

    let (distribution, leakage, two_particle_gates) = match spec.backend.method() {
        None => {
            let mut state = StateVector::zero(QuditRegister::uniform(n, 2)?)?;
            circuit.simulate_reference(&mut state)?;
            (state.probabilities(), 0.0, 0)
        }
        Some(method) => {
            let req = DecompositionRequest::new(n, method).odd_variant(spec.odd_variant);
            let cnz = decompose(&req)?;
            let lowered = lower(&circuit, &cnz)?;
            let mut state = cnz.embedding.embed_state(&Bitstring::zeros(n), false)?;
            lowered.apply(&mut state)?;
            let dist = cnz.embedding.read_out(&state.probabilities())?;
            (dist.probabilities, dist.leakage, lowered.two_particle_count())
        }
    };
    if leakage >= STATE_TOL {
        return Err(QuditError::Consistency(format!(
            "{leakage:e} probability left on ancillary levels"
        )));
    }
    let top = distribution
        .iter()
        .enumerate()
        .fold(0, |best, (k, &p)| if p > distribution[best] { k } else { best });
    Ok(GroverReport {
        n,
        omega: spec.omega.clone(),
        backend: spec.backend,
        iterations,
        success_probability: distribution[spec.omega.to_index()],
        top_outcome: Bitstring::from_index(top, n),
        two_particle_gates,
        leakage,
        distribution,
    })
}
