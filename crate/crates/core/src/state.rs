//! Dense state vectors over mixed-radix registers.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{QuditError, Result};
use crate::gate::{LevelPairGate, QuditGate, TwoQuditCz};
use crate::register::QuditRegister;
use crate::STATE_TOL;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    register: QuditRegister,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(register: QuditRegister) -> Result<Self> {
        Self::basis(register, 0)
    }

    pub fn basis(register: QuditRegister, index: usize) -> Result<Self> {
        register.check_simulable()?;
        if index >= register.total_dim() {
            return Err(QuditError::IndexOutOfRange { index, count: register.total_dim() });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); register.total_dim()];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { register, amplitudes })
    }

    pub fn from_levels(register: QuditRegister, levels: &[usize]) -> Result<Self> {
        let idx = register.index(levels)?;
        Self::basis(register, idx)
    }

    pub fn from_amplitudes(register: QuditRegister, amplitudes: Vec<C64>) -> Result<Self> {
        register.check_simulable()?;
        if amplitudes.len() != register.total_dim() {
            return Err(QuditError::LengthMismatch {
                expected: register.total_dim(),
                found: amplitudes.len(),
            });
        }
        let state = Self { register, amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(QuditError::InvalidState(format!("state norm is {norm}, expected 1")));
        }
        Ok(state)
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    /// Multiplies every amplitude by the unit-modulus `factor`.
    pub fn scaled(mut self, factor: C64) -> Self {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
        self
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest elementwise amplitude difference.
    pub fn max_distance(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&mut self, gate: &QuditGate) -> Result<()> {
        gate.validate(&self.register)?;
        match gate {
            QuditGate::LevelPair(g) => self.level_pair_kernel(g),
            QuditGate::Cz(g) => self.cz_kernel(g),
        }
        Ok(())
    }

    pub fn apply_all<'a, I>(&mut self, gates: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a QuditGate>,
    {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    fn level_pair_kernel(&mut self, g: &LevelPairGate) {
        let stride = self.register.stride(g.site);
        let block = stride * self.register.dim(g.site);
        let gap = (g.j - g.i) * stride;
        let u = g.u;
        let diagonal = u.is_diagonal();
        for outer in (0..self.amplitudes.len()).step_by(block) {
            let lo = outer + g.i * stride;
            for a in lo..lo + stride {
                let b = a + gap;
                if diagonal {
                    self.amplitudes[a] *= u.alpha;
                    self.amplitudes[b] *= u.delta;
                } else {
                    let (x, y) = (self.amplitudes[a], self.amplitudes[b]);
                    self.amplitudes[a] = u.alpha * x + u.beta * y;
                    self.amplitudes[b] = u.gamma * x + u.delta * y;
                }
            }
        }
    }

    fn cz_kernel(&mut self, g: &TwoQuditCz) {
        let amps = &mut self.amplitudes;
        self.register
            .for_each_fixed(&[(g.site_a, g.i), (g.site_b, g.j)], |idx| amps[idx] *= g.phase);
    }

    /// Multiplies every amplitude whose digits match all of `controls`
    /// (`(site, level)` pairs) by `phase`.
    pub fn apply_controlled_phase(&mut self, controls: &[(usize, usize)], phase: C64) -> Result<()> {
        for (k, &(site, level)) in controls.iter().enumerate() {
            if site >= self.register.len() || level >= self.register.dim(site) {
                return Err(QuditError::InvalidGate(format!(
                    "control ({site}, {level}) invalid for register {:?}",
                    self.register.dims()
                )));
            }
            if controls[..k].iter().any(|&(s, _)| s == site) {
                return Err(QuditError::InvalidGate(format!("site {site} controlled twice")));
            }
        }
        let amps = &mut self.amplitudes;
        self.register.for_each_fixed(controls, |idx| amps[idx] *= phase);
        Ok(())
    }

    /// Exact outcome probabilities `|amplitude|^2` indexed like the amplitudes.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Samples `shots` computational-basis outcomes; keys are amplitude indices.
    pub fn sample(&self, seed: u64, shots: usize) -> Result<BTreeMap<usize, usize>> {
        if shots == 0 {
            return Err(QuditError::InvalidSize("shots must be at least 1".into()));
        }
        let dist = WeightedIndex::new(self.probabilities())
            .map_err(|e| QuditError::InvalidState(format!("cannot sample: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hist = BTreeMap::new();
        for _ in 0..shots {
            *hist.entry(dist.sample(&mut rng)).or_insert(0) += 1;
        }
        Ok(hist)
    }
}

pub fn apply_level_pair(state: &StateVector, gate: &LevelPairGate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(&QuditGate::LevelPair(*gate))?;
    Ok(out)
}

pub fn apply_two_qudit_cz(state: &StateVector, gate: &TwoQuditCz) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(&QuditGate::Cz(*gate))?;
    Ok(out)
}

/// Exact probabilities plus a sampled histogram keyed by basis label.
pub fn measure_all(
    state: &StateVector,
    seed: u64,
    shots: usize,
) -> Result<(Vec<f64>, BTreeMap<String, usize>)> {
    let hist = state
        .sample(seed, shots)?
        .into_iter()
        .map(|(idx, n)| (state.register().label(idx), n))
        .collect();
    Ok((state.probabilities(), hist))
}
