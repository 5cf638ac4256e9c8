//! Gate algebra: level-pair single-qudit unitaries and two-qudit
//! controlled phases.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{QuditError, Result};
use crate::register::QuditRegister;
use crate::MATRIX_TOL;

/// Largest total dimension for which dense matrices are built.
pub const MAX_MATRIX_DIM: usize = 1 << 13;

/// A 2x2 unitary with rows `(alpha beta)` / `(gamma delta)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct TwoLevelUnitary {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
}

impl TwoLevelUnitary {
    pub fn new(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        let u = Self { alpha, beta, gamma, delta };
        if !u.is_unitary(MATRIX_TOL) {
            return Err(QuditError::InvalidGate(format!("matrix is not unitary: {u:?}")));
        }
        Ok(u)
    }

    pub fn from_rows(rows: [[C64; 2]; 2]) -> Result<Self> {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    const fn raw(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self {
            alpha: C64::new(alpha, 0.0),
            beta: C64::new(beta, 0.0),
            gamma: C64::new(gamma, 0.0),
            delta: C64::new(delta, 0.0),
        }
    }

    pub const fn identity() -> Self {
        Self::raw(1.0, 0.0, 0.0, 1.0)
    }

    pub const fn hadamard() -> Self {
        Self::raw(FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2)
    }

    pub const fn pauli_x() -> Self {
        Self::raw(0.0, 1.0, 1.0, 0.0)
    }

    pub const fn pauli_z() -> Self {
        Self::raw(1.0, 0.0, 0.0, -1.0)
    }

    /// `diag(1, e^{i phi})`.
    pub fn phase(phi: f64) -> Self {
        Self {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
            gamma: C64::new(0.0, 0.0),
            delta: C64::from_polar(1.0, phi),
        }
    }

    pub fn t() -> Self {
        Self::phase(std::f64::consts::FRAC_PI_4)
    }

    pub fn t_dagger() -> Self {
        Self::phase(-std::f64::consts::FRAC_PI_4)
    }

    pub fn rows(&self) -> [[C64; 2]; 2] {
        [[self.alpha, self.beta], [self.gamma, self.delta]]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: self.gamma.conj(),
            gamma: self.beta.conj(),
            delta: self.delta.conj(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            alpha: self.alpha * rhs.alpha + self.beta * rhs.gamma,
            beta: self.alpha * rhs.beta + self.beta * rhs.delta,
            gamma: self.gamma * rhs.alpha + self.delta * rhs.gamma,
            delta: self.gamma * rhs.beta + self.delta * rhs.delta,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.beta == C64::new(0.0, 0.0) && self.gamma == C64::new(0.0, 0.0)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let p = self.adjoint().mul(self);
        let one = C64::new(1.0, 0.0);
        (p.alpha - one).norm() <= tol
            && p.beta.norm() <= tol
            && p.gamma.norm() <= tol
            && (p.delta - one).norm() <= tol
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.alpha - other.alpha).norm() <= tol
            && (self.beta - other.beta).norm() <= tol
            && (self.gamma - other.gamma).norm() <= tol
            && (self.delta - other.delta).norm() <= tol
    }
}

/// `U^{(i,j)}` on one site: `u` on span{|i>,|j>}, identity elsewhere.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LevelPairGate {
    pub site: usize,
    pub i: usize,
    pub j: usize,
    pub u: TwoLevelUnitary,
}

impl LevelPairGate {
    pub fn new(site: usize, i: usize, j: usize, u: TwoLevelUnitary) -> Result<Self> {
        if i >= j {
            return Err(QuditError::InvalidGate(format!(
                "level pair ({i},{j}) must satisfy i < j"
            )));
        }
        Ok(Self { site, i, j, u })
    }

    pub fn validate(&self, register: &QuditRegister) -> Result<()> {
        if self.site >= register.len() {
            return Err(QuditError::InvalidGate(format!(
                "site {} out of range for {} sites",
                self.site,
                register.len()
            )));
        }
        if self.i >= self.j {
            return Err(QuditError::InvalidGate(format!(
                "level pair ({},{}) must satisfy i < j",
                self.i, self.j
            )));
        }
        let d = register.dim(self.site);
        if self.j >= d {
            return Err(QuditError::InvalidGate(format!(
                "level {} out of range for site {} of dimension {d}",
                self.j, self.site
            )));
        }
        if !self.u.is_unitary(MATRIX_TOL) {
            return Err(QuditError::InvalidGate("level-pair matrix is not unitary".into()));
        }
        Ok(())
    }
}

/// `CZ^{i<->j}`: multiplies the amplitude of `|i>_a |j>_b` by `phase`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct TwoQuditCz {
    pub site_a: usize,
    pub site_b: usize,
    pub i: usize,
    pub j: usize,
    pub phase: C64,
}

impl TwoQuditCz {
    pub fn new(site_a: usize, site_b: usize, i: usize, j: usize) -> Self {
        Self { site_a, site_b, i, j, phase: C64::new(-1.0, 0.0) }
    }

    pub fn with_phase(site_a: usize, site_b: usize, i: usize, j: usize, phase: C64) -> Result<Self> {
        if (phase.norm() - 1.0).abs() > MATRIX_TOL {
            return Err(QuditError::InvalidGate(format!("phase {phase} is not unit modulus")));
        }
        Ok(Self { site_a, site_b, i, j, phase })
    }

    pub fn validate(&self, register: &QuditRegister) -> Result<()> {
        if self.site_a == self.site_b {
            return Err(QuditError::InvalidGate(format!(
                "controlled phase needs two distinct sites, got {} twice",
                self.site_a
            )));
        }
        for (site, level) in [(self.site_a, self.i), (self.site_b, self.j)] {
            if site >= register.len() {
                return Err(QuditError::InvalidGate(format!(
                    "site {site} out of range for {} sites",
                    register.len()
                )));
            }
            if level >= register.dim(site) {
                return Err(QuditError::InvalidGate(format!(
                    "level {level} out of range for site {site} of dimension {}",
                    register.dim(site)
                )));
            }
        }
        if (self.phase.norm() - 1.0).abs() > MATRIX_TOL {
            return Err(QuditError::InvalidGate(format!(
                "phase {} is not unit modulus",
                self.phase
            )));
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum QuditGate {
    LevelPair(LevelPairGate),
    Cz(TwoQuditCz),
}

impl QuditGate {
    pub fn level_pair(site: usize, i: usize, j: usize, u: TwoLevelUnitary) -> Self {
        Self::LevelPair(LevelPairGate { site, i, j, u })
    }

    pub fn cz(site_a: usize, site_b: usize, i: usize, j: usize) -> Self {
        Self::Cz(TwoQuditCz::new(site_a, site_b, i, j))
    }

    pub fn validate(&self, register: &QuditRegister) -> Result<()> {
        match self {
            Self::LevelPair(g) => g.validate(register),
            Self::Cz(g) => g.validate(register),
        }
    }

    /// Gates coupling two physical carriers.
    pub fn is_two_particle(&self) -> bool {
        matches!(self, Self::Cz(_))
    }

    pub fn adjoint(&self) -> Self {
        match *self {
            Self::LevelPair(g) => Self::LevelPair(LevelPairGate { u: g.u.adjoint(), ..g }),
            Self::Cz(g) => Self::Cz(TwoQuditCz { phase: g.phase.conj(), ..g }),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (Self::LevelPair(a), Self::LevelPair(b)) => {
                a.site == b.site && a.i == b.i && a.j == b.j && a.u.approx_eq(&b.u, tol)
            }
            (Self::Cz(a), Self::Cz(b)) => {
                a.site_a == b.site_a
                    && a.site_b == b.site_b
                    && a.i == b.i
                    && a.j == b.j
                    && (a.phase - b.phase).norm() <= tol
            }
            _ => false,
        }
    }
}

impl From<LevelPairGate> for QuditGate {
    fn from(g: LevelPairGate) -> Self {
        Self::LevelPair(g)
    }
}

impl From<TwoQuditCz> for QuditGate {
    fn from(g: TwoQuditCz) -> Self {
        Self::Cz(g)
    }
}

pub(crate) fn check_matrix_dim(register: &QuditRegister) -> Result<usize> {
    let dim = register.total_dim();
    if dim > MAX_MATRIX_DIM {
        return Err(QuditError::DimensionTooLarge { dim, limit: MAX_MATRIX_DIM });
    }
    Ok(dim)
}

/// Dense matrix of `gate` acting on the whole register.
///
/// Level-pair gates are assembled as `1 (x) U_site (x) 1` Kronecker products
/// and controlled phases from decoded basis labels, independently of the
/// in-place application kernels in [`crate::state`].
pub fn gate_matrix(gate: &QuditGate, register: &QuditRegister) -> Result<DMatrix<C64>> {
    gate.validate(register)?;
    let dim = check_matrix_dim(register)?;
    match gate {
        QuditGate::LevelPair(g) => {
            let d = register.dim(g.site);
            let mut local = DMatrix::<C64>::identity(d, d);
            local[(g.i, g.i)] = g.u.alpha;
            local[(g.i, g.j)] = g.u.beta;
            local[(g.j, g.i)] = g.u.gamma;
            local[(g.j, g.j)] = g.u.delta;
            let before: usize = register.dims()[..g.site].iter().product();
            let after: usize = register.dims()[g.site + 1..].iter().product();
            let m = DMatrix::<C64>::identity(before, before)
                .kronecker(&local)
                .kronecker(&DMatrix::<C64>::identity(after, after));
            debug_assert_eq!(m.nrows(), dim);
            Ok(m)
        }
        QuditGate::Cz(g) => {
            let mut m = DMatrix::<C64>::identity(dim, dim);
            for idx in 0..dim {
                let digits = register.digits(idx);
                if digits[g.site_a] == g.i && digits[g.site_b] == g.j {
                    m[(idx, idx)] = g.phase;
                }
            }
            Ok(m)
        }
    }
}
