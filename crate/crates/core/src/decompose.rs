//! Compilation of multi-controlled phase gates into two-particle gates.
//!
//! Three strategies are available:
//!
//! * [`Method::Ququint`]: two qubits per ququint, level 4 as an in-place
//!   ancilla. A ladder of `CX^{3->3,4}` / `CX^{4->3,4}` gates moves the
//!   "all controls are one" flag into level 4 of the next-to-last ququint,
//!   a central controlled phase hits the last ququint, and the ladder is
//!   undone.
//! * [`Method::Qutrit`]: one qubit per qutrit, level 2 as the ancilla,
//!   `2n - 3` two-particle gates.
//! * [`Method::Qubit`]: plain qubits plus `n - 2` ancilla qubits holding
//!   a Toffoli AND-chain; every Toffoli is expanded into the standard
//!   six-CNOT Clifford+T network so the circuit is executable on the same
//!   gate algebra, for `12n - 23` controlled phases in total.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::QuditCircuit;
use crate::embedding::EmbeddingMap;
use crate::error::{QuditError, Result};
use crate::gate::{QuditGate, TwoLevelUnitary};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ququint,
    Qutrit,
    Qubit,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Ququint, Method::Qutrit, Method::Qubit];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ququint => "ququint",
            Self::Qutrit => "qutrit",
            Self::Qubit => "qubit",
        })
    }
}

impl FromStr for Method {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ququint" => Ok(Self::Ququint),
            "qutrit" => Ok(Self::Qutrit),
            "qubit" => Ok(Self::Qubit),
            other => Err(QuditError::InvalidSize(format!("unknown method {other:?}"))),
        }
    }
}

/// Placement of the last qubit when an odd number of qubits is packed into
/// ququints.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OddVariant {
    /// The last qubit is alone in its ququint.
    #[default]
    Single,
    /// The last qubit shares its ququint with a bystander qubit that the
    /// gate must leave untouched.
    Neighbor,
}

impl fmt::Display for OddVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Single => "single",
            Self::Neighbor => "neighbor",
        })
    }
}

impl FromStr for OddVariant {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Self::Single),
            "neighbor" => Ok(Self::Neighbor),
            other => Err(QuditError::InvalidSize(format!("unknown odd variant {other:?}"))),
        }
    }
}

/// `Z` is the symmetric `C^{n-1}Z`; `X(t)` flips qubit `t` when all others are 1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Z,
    X(usize),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Z => f.write_str("z"),
            Self::X(t) => write!(f, "x:{t}"),
        }
    }
}

impl FromStr for Target {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "z" {
            return Ok(Self::Z);
        }
        s.strip_prefix("x:")
            .and_then(|t| t.parse().ok())
            .map(Self::X)
            .ok_or_else(|| QuditError::InvalidSize(format!("bad target {s:?}, expected z or x:<idx>")))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DecompositionRequest {
    pub n: usize,
    pub method: Method,
    pub odd_variant: OddVariant,
    pub target: Target,
}

impl DecompositionRequest {
    pub fn new(n: usize, method: Method) -> Self {
        Self { n, method, odd_variant: OddVariant::Single, target: Target::Z }
    }

    pub fn odd_variant(mut self, odd: OddVariant) -> Self {
        self.odd_variant = odd;
        self
    }

    pub fn target(mut self, target: Target) -> Self {
        self.target = target;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionResult {
    pub circuit: QuditCircuit,
    pub embedding: EmbeddingMap,
    pub two_particle_gate_count: usize,
    pub ancilla_systems: usize,
    /// Gates forming the central controlled-phase block; everything before
    /// it is mirrored (as adjoints) after it.
    pub central: Range<usize>,
}

impl DecompositionResult {
    fn assemble(
        embedding: EmbeddingMap,
        compute: Vec<QuditGate>,
        central: Vec<QuditGate>,
        ancilla_systems: usize,
    ) -> Result<Self> {
        let start = compute.len();
        let end = start + central.len();
        let uncompute: Vec<QuditGate> = compute.iter().rev().map(QuditGate::adjoint).collect();
        let gates = compute.into_iter().chain(central).chain(uncompute);
        let circuit = QuditCircuit::from_gates(embedding.register().clone(), gates.collect())?;
        Ok(Self {
            two_particle_gate_count: circuit.two_particle_count(),
            circuit,
            embedding,
            ancilla_systems,
            central: start..end,
        })
    }
}

pub fn decompose(req: &DecompositionRequest) -> Result<DecompositionResult> {
    let base = match req.method {
        Method::Ququint => decompose_cnz_ququint(req.n, req.odd_variant)?,
        Method::Qutrit => decompose_cnz_qutrit(req.n)?,
        Method::Qubit => decompose_cnz_qubit(req.n)?,
    };
    match req.target {
        Target::Z => Ok(base),
        Target::X(t) => to_cnx(&base, t),
    }
}

/// `CX^{i->k,l}`: swaps levels `k` and `l` of `target` when `control` is at
/// level `i`, as `H^{(k,l)} CZ^{i<->l} H^{(k,l)}`.
pub fn build_cx(control: usize, target: usize, i: usize, k: usize, l: usize) -> Result<[QuditGate; 3]> {
    if k >= l {
        return Err(QuditError::InvalidGate(format!("swap levels ({k},{l}) must satisfy k < l")));
    }
    if control == target {
        return Err(QuditError::InvalidGate("control and target coincide".into()));
    }
    let h = QuditGate::level_pair(target, k, l, TwoLevelUnitary::hadamard());
    Ok([h, QuditGate::cz(control, target, i, l), h])
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(QuditError::InvalidSize(format!("need at least 2 qubits, got {n}")));
    }
    Ok(())
}

pub fn decompose_cnz_ququint(n: usize, odd: OddVariant) -> Result<DecompositionResult> {
    check_n(n)?;
    let embedding = EmbeddingMap::default_embedding(n, odd)?;
    if n == 2 {
        let cz = embedding.intra_ququint_cz(0)?;
        return DecompositionResult::assemble(embedding, vec![], vec![cz.into()], 0);
    }
    let hosts = n.div_ceil(2);
    let last = hosts - 1;
    let flag = last - 1;
    // Level of the flag ququint that signals "all earlier controls are one".
    let flag_level = if hosts == 2 { 3 } else { 4 };

    let mut compute = Vec::new();
    if hosts >= 3 {
        compute.extend(build_cx(0, 1, 3, 3, 4)?);
        for q in 1..flag {
            compute.extend(build_cx(q, q + 1, 4, 3, 4)?);
        }
    }
    let target_levels: &[usize] = match (n % 2, odd) {
        (0, _) => &[3],
        (_, OddVariant::Single) => &[1],
        (_, OddVariant::Neighbor) => &[2, 3],
    };
    let central = target_levels
        .iter()
        .map(|&l| QuditGate::cz(flag, last, flag_level, l))
        .collect();
    DecompositionResult::assemble(embedding, compute, central, 0)
}

pub fn decompose_cnz_qutrit(n: usize) -> Result<DecompositionResult> {
    check_n(n)?;
    let embedding = EmbeddingMap::one_per_site(n, 3, 0)?;
    if n == 2 {
        return DecompositionResult::assemble(embedding, vec![], vec![QuditGate::cz(0, 1, 1, 1)], 0);
    }
    let mut compute = Vec::new();
    compute.extend(build_cx(0, 1, 1, 1, 2)?);
    for q in 1..n - 2 {
        compute.extend(build_cx(q, q + 1, 2, 1, 2)?);
    }
    let central = vec![QuditGate::cz(n - 2, n - 1, 2, 1)];
    DecompositionResult::assemble(embedding, compute, central, 0)
}

fn cnot(control: usize, target: usize) -> [QuditGate; 3] {
    let h = QuditGate::level_pair(target, 0, 1, TwoLevelUnitary::hadamard());
    [h, QuditGate::cz(control, target, 1, 1), h]
}

fn single(site: usize, u: TwoLevelUnitary) -> QuditGate {
    QuditGate::level_pair(site, 0, 1, u)
}

/// Exact Toffoli on qubit sites as a six-CNOT Clifford+T network.
pub fn toffoli(a: usize, b: usize, c: usize) -> Vec<QuditGate> {
    let (h, t, tdg) = (TwoLevelUnitary::hadamard(), TwoLevelUnitary::t(), TwoLevelUnitary::t_dagger());
    let mut g = vec![single(c, h)];
    g.extend(cnot(b, c));
    g.push(single(c, tdg));
    g.extend(cnot(a, c));
    g.push(single(c, t));
    g.extend(cnot(b, c));
    g.push(single(c, tdg));
    g.extend(cnot(a, c));
    g.push(single(b, t));
    g.push(single(c, t));
    g.push(single(c, h));
    g.extend(cnot(a, b));
    g.push(single(a, t));
    g.push(single(b, tdg));
    g.extend(cnot(a, b));
    g
}

pub fn decompose_cnz_qubit(n: usize) -> Result<DecompositionResult> {
    check_n(n)?;
    let ancillas = n - 2;
    let embedding = EmbeddingMap::one_per_site(n, 2, ancillas)?;
    let mut compute = Vec::new();
    if n >= 3 {
        // ancilla k (site n + k) holds q_0 AND ... AND q_{k+1}
        compute.extend(toffoli(0, 1, n));
        for k in 1..ancillas {
            compute.extend(toffoli(n + k - 1, k + 1, n + k));
        }
    }
    let flag = if n == 2 { 0 } else { n + ancillas - 1 };
    let central = vec![QuditGate::cz(flag, n - 1, 1, 1)];
    DecompositionResult::assemble(embedding, compute, central, ancillas)
}

/// Turns a `C^{n-1}Z` decomposition into `C^{n-1}X` on `target_qubit` by
/// conjugating with the lifted Hadamard.
pub fn to_cnx(result: &DecompositionResult, target_qubit: usize) -> Result<DecompositionResult> {
    let lifted: Vec<QuditGate> = result
        .embedding
        .lift_single_qubit_gate(&TwoLevelUnitary::hadamard(), target_qubit)?
        .into_iter()
        .map(QuditGate::from)
        .collect();
    let shift = lifted.len();
    let mut circuit = QuditCircuit::new(result.circuit.register().clone());
    circuit.extend(lifted.iter().copied())?;
    circuit.extend(result.circuit.gates().iter().copied())?;
    circuit.extend(lifted.iter().rev().map(QuditGate::adjoint))?;
    Ok(DecompositionResult {
        two_particle_gate_count: circuit.two_particle_count(),
        circuit,
        embedding: result.embedding.clone(),
        ancilla_systems: result.ancilla_systems,
        central: result.central.start + shift..result.central.end + shift,
    })
}

/// True when the gates after `central` are the adjoints of those before it
/// in reverse order.
pub fn is_mirrored(gates: &[QuditGate], central: &Range<usize>, tol: f64) -> bool {
    let (before, after) = (&gates[..central.start], &gates[central.end..]);
    before.len() == after.len()
        && before
            .iter()
            .zip(after.iter().rev())
            .all(|(a, b)| a.approx_eq(&b.adjoint(), tol))
}
