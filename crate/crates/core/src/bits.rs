use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::QuditError;

/// A classical bitstring; position 0 is the leftmost (most significant) bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    /// The `n`-bit big-endian expansion of `value`.
    pub fn from_index(value: usize, n: usize) -> Self {
        Self((0..n).map(|k| (value >> (n - 1 - k)) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, k: usize) -> bool {
        self.0[k]
    }

    pub fn all_ones(&self) -> bool {
        self.0.iter().all(|&b| b)
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(QuditError::InvalidState(format!(
                    "bitstring {s:?} contains {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl TryFrom<String> for Bitstring {
    type Error = QuditError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Bitstring> for String {
    fn from(b: Bitstring) -> Self {
        b.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_big_endian() {
        let b: Bitstring = "10101".parse().unwrap();
        assert_eq!(b.to_index(), 21);
        assert_eq!(Bitstring::from_index(21, 5), b);
        assert_eq!(b.to_string(), "10101");
        assert!("10201".parse::<Bitstring>().is_err());
    }
}
