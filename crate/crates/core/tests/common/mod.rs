#![allow(dead_code)]

use num_complex::Complex64 as C64;
use rand::Rng;

use ququint::{QuditGate, QuditRegister, StateVector, TwoLevelUnitary, TwoQuditCz};

/// Haar-style parameterization `e^{i phi/2}`-free SU(2) times a phase.
pub fn unitary_from_angles(theta: f64, alpha: f64, beta: f64, phi: f64) -> TwoLevelUnitary {
    let a = C64::from_polar(theta.cos(), alpha);
    let b = C64::from_polar(theta.sin(), beta);
    let ph = C64::from_polar(1.0, phi);
    TwoLevelUnitary::new(a, b, -b.conj() * ph, a.conj() * ph).expect("parameterized matrix is unitary")
}

pub fn random_unitary<R: Rng>(rng: &mut R) -> TwoLevelUnitary {
    let tau = std::f64::consts::TAU;
    unitary_from_angles(
        rng.gen::<f64>() * tau,
        rng.gen::<f64>() * tau,
        rng.gen::<f64>() * tau,
        rng.gen::<f64>() * tau,
    )
}

pub fn random_register<R: Rng>(rng: &mut R, max_sites: usize) -> QuditRegister {
    let sites = rng.gen_range(1..=max_sites);
    let dims = (0..sites).map(|_| [2, 3, 5][rng.gen_range(0..3)]).collect();
    QuditRegister::new(dims).unwrap()
}

pub fn random_gate<R: Rng>(rng: &mut R, reg: &QuditRegister) -> QuditGate {
    if reg.len() >= 2 && rng.gen_bool(0.4) {
        let a = rng.gen_range(0..reg.len());
        let mut b = rng.gen_range(0..reg.len() - 1);
        if b >= a {
            b += 1;
        }
        let phase = C64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
        let i = rng.gen_range(0..reg.dim(a));
        let j = rng.gen_range(0..reg.dim(b));
        QuditGate::Cz(TwoQuditCz::with_phase(a, b, i, j, phase).unwrap())
    } else {
        let site = rng.gen_range(0..reg.len());
        let d = reg.dim(site);
        let i = rng.gen_range(0..d - 1);
        let j = rng.gen_range(i + 1..d);
        QuditGate::level_pair(site, i, j, random_unitary(rng))
    }
}

pub fn random_state<R: Rng>(rng: &mut R, reg: &QuditRegister) -> StateVector {
    let mut amps: Vec<C64> = (0..reg.total_dim())
        .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(reg.clone(), amps).unwrap()
}
