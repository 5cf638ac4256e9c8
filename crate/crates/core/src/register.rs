//! Mixed-radix qudit registers.
//!
//! Site 0 is the most significant digit of a basis-state label, so the
//! amplitude index of `|d_0 d_1 ... d_{m-1}>` is
//! `sum_k d_k * stride_k` with `stride_k = prod_{l > k} dims_l`.

use serde::{Deserialize, Serialize};

use crate::error::{QuditError, Result};

/// Largest state space the simulator will allocate.
pub const MAX_STATE_DIM: usize = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct QuditRegister {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl QuditRegister {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(QuditError::InvalidRegister("register has no sites".into()));
        }
        if let Some((site, &d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(QuditError::InvalidRegister(format!(
                "site {site} has dimension {d} < 2"
            )));
        }
        let mut total: usize = 1;
        for &d in &dims {
            total = total.checked_mul(d).ok_or_else(|| {
                QuditError::InvalidRegister("state space size overflows usize".into())
            })?;
        }
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len() - 1).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Ok(Self { dims, strides, total })
    }

    /// `count` sites of equal dimension.
    pub fn uniform(count: usize, dim: usize) -> Result<Self> {
        Self::new(vec![dim; count])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, site: usize) -> usize {
        self.dims[site]
    }

    pub fn stride(&self, site: usize) -> usize {
        self.strides[site]
    }

    /// Product of all site dimensions.
    pub fn total_dim(&self) -> usize {
        self.total
    }

    /// Fails unless a dense state over this register fits in `MAX_STATE_DIM`.
    pub fn check_simulable(&self) -> Result<()> {
        if self.total > MAX_STATE_DIM {
            return Err(QuditError::StateTooLarge { dim: self.total, limit: MAX_STATE_DIM });
        }
        Ok(())
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        out
    }

    pub fn digit(&self, index: usize, site: usize) -> usize {
        (index / self.strides[site]) % self.dims[site]
    }

    pub fn index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.dims.len() {
            return Err(QuditError::LengthMismatch {
                expected: self.dims.len(),
                found: digits.len(),
            });
        }
        let mut idx = 0;
        for (k, (&d, &dim)) in digits.iter().zip(&self.dims).enumerate() {
            if d >= dim {
                return Err(QuditError::InvalidState(format!(
                    "level {d} on site {k} exceeds dimension {dim}"
                )));
            }
            idx += d * self.strides[k];
        }
        Ok(idx)
    }

    /// Human-readable basis label, e.g. `"31"` for `|3>|1>`.
    pub fn label(&self, index: usize) -> String {
        let digits = self.digits(index);
        if self.dims.iter().all(|&d| d <= 10) {
            digits.iter().map(|d| char::from(b'0' + *d as u8)).collect()
        } else {
            digits
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Inverse of [`Self::label`].
    pub fn parse_label(&self, label: &str) -> Result<usize> {
        let digits: Vec<usize> = if label.contains(',') {
            label
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| QuditError::InvalidState(format!("bad label {label:?}: {e}")))?
        } else {
            label
                .chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as usize).ok_or_else(|| {
                        QuditError::InvalidState(format!("bad label character {c:?}"))
                    })
                })
                .collect::<Result<_>>()?
        };
        self.index(&digits)
    }

    /// Calls `f` on every amplitude index whose digits match `fixed`
    /// (`(site, level)` pairs). Sites must be distinct.
    pub fn for_each_fixed<F: FnMut(usize)>(&self, fixed: &[(usize, usize)], mut f: F) {
        let base: usize = fixed.iter().map(|&(s, l)| l * self.strides[s]).sum();
        let free: Vec<usize> = (0..self.dims.len())
            .filter(|s| !fixed.iter().any(|&(fs, _)| fs == *s))
            .collect();
        let mut counter = vec![0usize; free.len()];
        let mut offset = base;
        loop {
            f(offset);
            // odometer over the free sites, least significant last
            let mut k = free.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                let site = free[k];
                counter[k] += 1;
                offset += self.strides[site];
                if counter[k] < self.dims[site] {
                    break;
                }
                offset -= self.strides[site] * self.dims[site];
                counter[k] = 0;
            }
        }
    }
}

impl TryFrom<Vec<usize>> for QuditRegister {
    type Error = QuditError;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<QuditRegister> for Vec<usize> {
    fn from(reg: QuditRegister) -> Self {
        reg.dims
    }
}
