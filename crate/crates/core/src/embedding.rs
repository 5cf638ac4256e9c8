//! Placement of logical qubits inside qudits.
//!
//! A ququint stores either a pair of qubits `(a, b)` as `|2a + b>` with
//! level 4 left as an ancilla, or a single qubit in levels 0 and 1. Qutrit
//! and qubit registers use the single-slot placement only.

use serde::{Deserialize, Serialize};

use crate::bits::Bitstring;
use crate::decompose::OddVariant;
use crate::error::{QuditError, Result};
use crate::gate::{LevelPairGate, TwoLevelUnitary};
use crate::register::QuditRegister;
use crate::state::StateVector;

/// Dimension of a qudit hosting a qubit pair.
pub const PAIR_HOST_DIM: usize = 5;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QubitSlot {
    /// High-order qubit of a pair: levels {0,1} vs {2,3}.
    A,
    /// Low-order qubit of a pair: levels {0,2} vs {1,3}.
    B,
    /// Sole qubit of its qudit, in levels 0 and 1.
    Single,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingMap {
    qubit_count: usize,
    assignments: Vec<(usize, QubitSlot)>,
    register: QuditRegister,
    bystander: Option<usize>,
}

/// Qubit-level outcome probabilities. `probabilities` is indexed by the
/// big-endian value of the logical bitstring; `leakage` collects every
/// outcome outside the embedded subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitDistribution {
    pub probabilities: Vec<f64>,
    pub leakage: f64,
}

impl QubitDistribution {
    pub fn qubit_count(&self) -> usize {
        self.probabilities.len().trailing_zeros() as usize
    }

    pub fn probability(&self, bits: &Bitstring) -> f64 {
        self.probabilities[bits.to_index()]
    }

    /// Most likely bitstring; ties resolve to the smallest index.
    pub fn top_outcome(&self) -> Bitstring {
        let mut best = 0;
        for (k, &p) in self.probabilities.iter().enumerate() {
            if p > self.probabilities[best] {
                best = k;
            }
        }
        Bitstring::from_index(best, self.qubit_count())
    }
}

#[derive(Copy, Clone)]
enum SiteRole {
    Pair { a: Option<usize>, b: Option<usize> },
    Single(usize),
    Unused,
}

impl EmbeddingMap {
    pub fn new(
        qubit_count: usize,
        assignments: Vec<(usize, QubitSlot)>,
        register: QuditRegister,
        bystander: Option<usize>,
    ) -> Result<Self> {
        let map = Self { qubit_count, assignments, register, bystander };
        map.validate()?;
        Ok(map)
    }

    /// Ququint placement for an `n`-qubit multi-controlled gate: qubits
    /// `2k, 2k+1` share ququint `k`; an odd last qubit gets its own ququint,
    /// either alone (`Single`) or next to a bystander (`Neighbor`).
    pub fn default_embedding(n: usize, odd: OddVariant) -> Result<Self> {
        if n < 2 {
            return Err(QuditError::InvalidSize(format!("need at least 2 qubits, got {n}")));
        }
        let hosts = n.div_ceil(2);
        let mut assignments: Vec<_> = (0..n - n % 2)
            .map(|q| (q / 2, if q % 2 == 0 { QubitSlot::A } else { QubitSlot::B }))
            .collect();
        let mut bystander = None;
        if n % 2 == 1 {
            match odd {
                OddVariant::Single => assignments.push((hosts - 1, QubitSlot::Single)),
                OddVariant::Neighbor => {
                    assignments.push((hosts - 1, QubitSlot::A));
                    bystander = Some(hosts - 1);
                }
            }
        }
        Self::new(n, assignments, QuditRegister::uniform(hosts, PAIR_HOST_DIM)?, bystander)
    }

    /// One qubit per `dim`-level site, followed by `ancillas` unassigned
    /// sites of the same dimension.
    pub fn one_per_site(n: usize, dim: usize, ancillas: usize) -> Result<Self> {
        if n < 1 {
            return Err(QuditError::InvalidSize("need at least 1 qubit".into()));
        }
        let assignments = (0..n).map(|q| (q, QubitSlot::Single)).collect();
        Self::new(n, assignments, QuditRegister::uniform(n + ancillas, dim)?, None)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(QuditError::InvalidEmbedding(msg));
        if self.qubit_count == 0 {
            return bad("no qubits".into());
        }
        if self.assignments.len() != self.qubit_count {
            return bad(format!(
                "{} assignments for {} qubits",
                self.assignments.len(),
                self.qubit_count
            ));
        }
        let sites = self.register.len();
        let mut seen: Vec<Vec<QubitSlot>> = vec![Vec::new(); sites];
        for (q, &(site, slot)) in self.assignments.iter().enumerate() {
            if site >= sites {
                return bad(format!("qubit {q} placed on missing qudit {site}"));
            }
            if seen[site].contains(&slot) {
                return bad(format!("qubit {q} reuses slot {slot:?} of qudit {site}"));
            }
            let need = if slot == QubitSlot::Single { 2 } else { PAIR_HOST_DIM };
            let d = self.register.dim(site);
            if (slot == QubitSlot::Single && d < need) || (slot != QubitSlot::Single && d != need)
            {
                return bad(format!("slot {slot:?} cannot live on a qudit of dimension {d}"));
            }
            seen[site].push(slot);
        }
        if let Some(host) = self.bystander {
            if host >= sites {
                return bad(format!("bystander host {host} out of range"));
            }
            if self.register.dim(host) != PAIR_HOST_DIM {
                return bad(format!("bystander host {host} is not a ququint"));
            }
            if !seen[host].contains(&QubitSlot::A) || seen[host].contains(&QubitSlot::B) {
                return bad(format!("bystander host {host} must carry slot A only"));
            }
        }
        for (site, slots) in seen.iter().enumerate() {
            let has_a = slots.contains(&QubitSlot::A);
            let has_b = slots.contains(&QubitSlot::B) || self.bystander == Some(site);
            if slots.contains(&QubitSlot::Single) && slots.len() > 1 {
                return bad(format!("qudit {site} mixes single and paired slots"));
            }
            if has_a != has_b {
                return bad(format!("qudit {site} has an unpaired A/B slot"));
            }
        }
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn assignments(&self) -> &[(usize, QubitSlot)] {
        &self.assignments
    }

    pub fn assignment(&self, qubit: usize) -> Result<(usize, QubitSlot)> {
        self.assignments
            .get(qubit)
            .copied()
            .ok_or(QuditError::IndexOutOfRange { index: qubit, count: self.qubit_count })
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn bystander(&self) -> Option<usize> {
        self.bystander
    }

    /// Qudit levels encoding `bits`, with any bystander qubit at 0.
    pub fn embed_basis_state(&self, bits: &Bitstring) -> Result<Vec<usize>> {
        self.embed_basis_state_with_bystander(bits, false)
    }

    pub fn embed_basis_state_with_bystander(
        &self,
        bits: &Bitstring,
        bystander_bit: bool,
    ) -> Result<Vec<usize>> {
        if bits.len() != self.qubit_count {
            return Err(QuditError::LengthMismatch { expected: self.qubit_count, found: bits.len() });
        }
        let mut levels = vec![0; self.register.len()];
        for (&(site, slot), &bit) in self.assignments.iter().zip(bits.bits()) {
            levels[site] += match slot {
                QubitSlot::A => 2 * bit as usize,
                QubitSlot::B | QubitSlot::Single => bit as usize,
            };
        }
        if let Some(host) = self.bystander {
            levels[host] += bystander_bit as usize;
        }
        Ok(levels)
    }

    pub fn embed_state(&self, bits: &Bitstring, bystander_bit: bool) -> Result<StateVector> {
        let levels = self.embed_basis_state_with_bystander(bits, bystander_bit)?;
        StateVector::from_levels(self.register.clone(), &levels)
    }

    /// Level-pair gates acting as `u` on one embedded qubit and as the
    /// identity on its co-resident qubit and on every ancillary level.
    pub fn lift_single_qubit_gate(
        &self,
        u: &TwoLevelUnitary,
        qubit: usize,
    ) -> Result<Vec<LevelPairGate>> {
        let (site, slot) = self.assignment(qubit)?;
        let pairs: &[(usize, usize)] = match slot {
            QubitSlot::A => &[(0, 2), (1, 3)],
            QubitSlot::B => &[(0, 1), (2, 3)],
            QubitSlot::Single => &[(0, 1)],
        };
        Ok(pairs
            .iter()
            .map(|&(i, j)| LevelPairGate { site, i, j, u: *u })
            .collect())
    }

    /// Controlled-Z between the two qubits sharing `qudit`, realized as
    /// `Z^{(0,3)} = diag(1, 1, 1, -1, 1)`.
    pub fn intra_ququint_cz(&self, qudit: usize) -> Result<LevelPairGate> {
        let slots: Vec<QubitSlot> = self
            .assignments
            .iter()
            .filter(|(s, _)| *s == qudit)
            .map(|&(_, slot)| slot)
            .collect();
        if !(slots.contains(&QubitSlot::A) && slots.contains(&QubitSlot::B)) {
            return Err(QuditError::InvalidEmbedding(format!(
                "qudit {qudit} does not host a qubit pair"
            )));
        }
        Ok(LevelPairGate { site: qudit, i: 0, j: 3, u: TwoLevelUnitary::pauli_z() })
    }

    fn site_roles(&self) -> Vec<SiteRole> {
        let mut roles = vec![SiteRole::Unused; self.register.len()];
        for (q, &(site, slot)) in self.assignments.iter().enumerate() {
            roles[site] = match (roles[site], slot) {
                (_, QubitSlot::Single) => SiteRole::Single(q),
                (SiteRole::Pair { b, .. }, QubitSlot::A) => SiteRole::Pair { a: Some(q), b },
                (SiteRole::Pair { a, .. }, QubitSlot::B) => SiteRole::Pair { a, b: Some(q) },
                (_, QubitSlot::A) => SiteRole::Pair { a: Some(q), b: None },
                (_, QubitSlot::B) => SiteRole::Pair { a: None, b: Some(q) },
            };
        }
        roles
    }

    /// Qubit value (big-endian, bystander traced out) of a qudit basis
    /// index, or `None` if the index populates an ancillary level.
    pub fn decode_index(&self, index: usize) -> Option<usize> {
        self.decode_with(&self.site_roles(), index)
    }

    fn decode_with(&self, roles: &[SiteRole], index: usize) -> Option<usize> {
        let n = self.qubit_count;
        let mut value = 0usize;
        for (site, role) in roles.iter().enumerate() {
            let level = self.register.digit(index, site);
            match *role {
                SiteRole::Pair { a, b } => {
                    if level >= 4 {
                        return None;
                    }
                    if let Some(q) = a {
                        value |= (level >> 1) << (n - 1 - q);
                    }
                    if let Some(q) = b {
                        value |= (level & 1) << (n - 1 - q);
                    }
                }
                SiteRole::Single(q) => {
                    if level >= 2 {
                        return None;
                    }
                    value |= level << (n - 1 - q);
                }
                SiteRole::Unused if level != 0 => return None,
                SiteRole::Unused => {}
            }
        }
        Some(value)
    }

    /// Marginalizes qudit outcome probabilities onto the logical qubits.
    ///
    /// Outcomes with any ancillary level populated (level 4 of a pair host,
    /// levels >= 2 of a single-slot host, or a non-zero unassigned site) are
    /// reported as leakage and never renormalized away. Bystander bits are
    /// traced out.
    pub fn read_out(&self, qudit_probabilities: &[f64]) -> Result<QubitDistribution> {
        let total = self.register.total_dim();
        if qudit_probabilities.len() != total {
            return Err(QuditError::LengthMismatch {
                expected: total,
                found: qudit_probabilities.len(),
            });
        }
        let roles = self.site_roles();
        let mut probabilities = vec![0.0; 1 << self.qubit_count];
        let mut leakage = 0.0;
        for (idx, &p) in qudit_probabilities.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            match self.decode_with(&roles, idx) {
                Some(value) => probabilities[value] += p,
                None => leakage += p,
            }
        }
        Ok(QubitDistribution { probabilities, leakage })
    }
}
