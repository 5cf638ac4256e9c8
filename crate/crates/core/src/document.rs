//! JSON circuit documents.
//!
//! ```json
//! {
//!   "version": "1.0",
//!   "dims": [5, 5],
//!   "embedding": {
//!     "qubit_count": 4,
//!     "assignments": [{ "qudit": 0, "slot": "a" }, ...],
//!     "bystander": null
//!   },
//!   "gates": [
//!     { "levelpair": { "site": 1, "i": 3, "j": 4, "matrix": [[[re, im], [re, im]], [[re, im], [re, im]]] } },
//!     { "cz": { "site_a": 0, "site_b": 1, "i": 3, "j": 4, "phase": [re, im] } }
//!   ]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs, matrices are row-major and every
//! real is written with 17 significant digits, so load followed by save
//! reproduces the input bytes.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_complex::Complex64 as C64;

use crate::circuit::QuditCircuit;
use crate::embedding::{EmbeddingMap, QubitSlot};
use crate::error::{QuditError, Result};
use crate::gate::{LevelPairGate, QuditGate, TwoLevelUnitary, TwoQuditCz};
use crate::register::QuditRegister;

pub const FORMAT_VERSION: &str = "1.0";
const SUPPORTED_MAJOR: u32 = 1;

/// An `f64` written in fixed 17-significant-digit scientific notation.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let text = format!("{:.16e}", self.0);
        let number: serde_json::Number = text.parse().map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        // serde_json's own float parsing is not correctly rounded; std's is.
        let number = serde_json::Number::deserialize(deserializer)?;
        number.to_string().parse().map(Real).map_err(serde::de::Error::custom)
    }
}

type Complex = [Real; 2];

fn to_pair(z: C64) -> Complex {
    [Real(z.re), Real(z.im)]
}

fn from_pair(p: &Complex) -> C64 {
    C64::new(p[0].0, p[1].0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotEntry {
    pub qudit: usize,
    pub slot: QubitSlot,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingEntry {
    pub qubit_count: usize,
    pub assignments: Vec<SlotEntry>,
    pub bystander: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelPairEntry {
    pub site: usize,
    pub i: usize,
    pub j: usize,
    pub matrix: [[Complex; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CzEntry {
    pub site_a: usize,
    pub site_b: usize,
    pub i: usize,
    pub j: usize,
    pub phase: Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum GateEntry {
    Levelpair(LevelPairEntry),
    Cz(CzEntry),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDocument {
    pub version: String,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingEntry>,
    pub gates: Vec<GateEntry>,
}

impl CircuitDocument {
    pub fn from_circuit(circuit: &QuditCircuit, embedding: Option<&EmbeddingMap>) -> Self {
        let gates = circuit
            .gates()
            .iter()
            .map(|g| match g {
                QuditGate::LevelPair(g) => GateEntry::Levelpair(LevelPairEntry {
                    site: g.site,
                    i: g.i,
                    j: g.j,
                    matrix: g.u.rows().map(|row| row.map(to_pair)),
                }),
                QuditGate::Cz(g) => GateEntry::Cz(CzEntry {
                    site_a: g.site_a,
                    site_b: g.site_b,
                    i: g.i,
                    j: g.j,
                    phase: to_pair(g.phase),
                }),
            })
            .collect();
        let embedding = embedding.map(|m| EmbeddingEntry {
            qubit_count: m.qubit_count(),
            assignments: m
                .assignments()
                .iter()
                .map(|&(qudit, slot)| SlotEntry { qudit, slot })
                .collect(),
            bystander: m.bystander(),
        });
        Self {
            version: FORMAT_VERSION.to_string(),
            dims: circuit.register().dims().to_vec(),
            embedding,
            gates,
        }
    }

    fn check_version(&self) -> Result<()> {
        let major = self
            .version
            .split('.')
            .next()
            .and_then(|m| m.parse::<u32>().ok())
            .ok_or_else(|| QuditError::Document(format!("bad version {:?}", self.version)))?;
        if major != SUPPORTED_MAJOR {
            return Err(QuditError::Document(format!(
                "unsupported format version {} (expected major {SUPPORTED_MAJOR})",
                self.version
            )));
        }
        Ok(())
    }

    /// Rebuilds and validates the circuit and optional embedding.
    pub fn to_circuit(&self) -> Result<(QuditCircuit, Option<EmbeddingMap>)> {
        self.check_version()?;
        let register = QuditRegister::new(self.dims.clone())?;
        let mut circuit = QuditCircuit::new(register.clone());
        for entry in &self.gates {
            let gate = match entry {
                GateEntry::Levelpair(g) => {
                    let u = TwoLevelUnitary::from_rows(g.matrix.map(|row| row.map(|z| from_pair(&z))))?;
                    QuditGate::LevelPair(LevelPairGate::new(g.site, g.i, g.j, u)?)
                }
                GateEntry::Cz(g) => QuditGate::Cz(TwoQuditCz::with_phase(
                    g.site_a,
                    g.site_b,
                    g.i,
                    g.j,
                    from_pair(&g.phase),
                )?),
            };
            circuit.push(gate)?;
        }
        let embedding = self
            .embedding
            .as_ref()
            .map(|e| {
                EmbeddingMap::new(
                    e.qubit_count,
                    e.assignments.iter().map(|s| (s.qudit, s.slot)).collect(),
                    register.clone(),
                    e.bystander,
                )
            })
            .transpose()?;
        Ok((circuit, embedding))
    }

    /// Parses and validates a document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| QuditError::Document(e.to_string()))?;
        doc.to_circuit()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialization is infallible");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{decompose_cnz_ququint, OddVariant};

    #[test]
    fn reals_use_17_digits() {
        assert_eq!(serde_json::to_string(&Real(1.0)).unwrap(), "1.0000000000000000e+0");
        assert_eq!(
            serde_json::to_string(&Real(std::f64::consts::FRAC_1_SQRT_2)).unwrap(),
            "7.0710678118654757e-1"
        );
        let back: Real = serde_json::from_str("7.0710678118654757e-1").unwrap();
        assert_eq!(back.0, std::f64::consts::FRAC_1_SQRT_2);
        let back: Real = serde_json::from_str("-9.2504791626269789e-1").unwrap();
        assert_eq!(back.0, "-9.2504791626269789e-1".parse::<f64>().unwrap());
    }

    #[test]
    fn c4z_document_round_trip() {
        let r = decompose_cnz_ququint(5, OddVariant::Neighbor).unwrap();
        let doc = CircuitDocument::from_circuit(&r.circuit, Some(&r.embedding));
        let text = doc.to_json();
        let loaded = CircuitDocument::from_json(&text).unwrap();
        assert_eq!(loaded.to_json(), text);
        let (c, m) = loaded.to_circuit().unwrap();
        assert_eq!(c, r.circuit);
        assert_eq!(m.unwrap(), r.embedding);
    }

    #[test]
    fn rejects_bad_documents() {
        let r = decompose_cnz_ququint(4, OddVariant::Single).unwrap();
        let text = CircuitDocument::from_circuit(&r.circuit, None).to_json();

        let extra = text.replacen("\"dims\"", "\"colour\": 1,\n  \"dims\"", 1);
        assert!(CircuitDocument::from_json(&extra).is_err());

        let v2 = text.replace("\"1.0\"", "\"2.0\"");
        assert!(matches!(CircuitDocument::from_json(&v2), Err(QuditError::Document(_))));

        let bad_site = text.replace("\"site_b\": 1", "\"site_b\": 0");
        assert!(CircuitDocument::from_json(&bad_site).is_err());

        let no_version = text.replace("\"version\": \"1.0\",", "");
        assert!(CircuitDocument::from_json(&no_version).is_err());
    }
}
