use num_complex::Complex64 as C64;

use ququint::analysis::count_row;
use ququint::decompose::{decompose, is_mirrored};
use ququint::verify::verify_decomposition;
use ququint::{
    Bitstring, DecompositionRequest, DecompositionResult, Method, OddVariant, QuditCircuit, StateVector,
    Target, MATRIX_TOL, STATE_TOL,
};

fn build(n: usize, method: Method, odd: OddVariant) -> DecompositionResult {
    decompose(&DecompositionRequest::new(n, method).odd_variant(odd)).unwrap()
}

fn all_requests(max_n: usize) -> impl Iterator<Item = DecompositionRequest> {
    (2..=max_n).flat_map(|n| {
        Method::ALL.into_iter().flat_map(move |m| {
            [OddVariant::Single, OddVariant::Neighbor]
                .into_iter()
                .map(move |odd| DecompositionRequest::new(n, m).odd_variant(odd))
        })
    })
}

/// Probability of `site` sitting at `level` after the compute half.
fn marker_probability(r: &DecompositionResult, bits: &Bitstring, site: usize, level: usize) -> f64 {
    let forward = QuditCircuit::from_gates(
        r.circuit.register().clone(),
        r.circuit.gates()[..r.central.start].to_vec(),
    )
    .unwrap();
    let out = forward.run(&r.embedding.embed_state(bits, false).unwrap()).unwrap();
    out.probabilities()
        .iter()
        .enumerate()
        .filter(|(idx, _)| out.register().digit(*idx, site) == level)
        .map(|(_, p)| p)
        .sum()
}

#[test]
fn dense_simulation_agrees_with_ideal_phase() {
    for req in all_requests(6) {
        let r = decompose(&req).unwrap();
        let n = req.n;
        for v in 0..1usize << n {
            let bits = Bitstring::from_index(v, n);
            let out = r.circuit.run(&r.embedding.embed_state(&bits, false).unwrap()).unwrap();
            let sign = if bits.all_ones() { -1.0 } else { 1.0 };
            let want = r.embedding.embed_state(&bits, false).unwrap().scaled(C64::new(sign, 0.0));
            assert!(out.max_distance(&want) < STATE_TOL, "{req:?} input {bits}");
        }
    }
}

#[test]
fn cnx_targets_every_qubit() {
    for req in all_requests(7) {
        for t in 0..req.n {
            let r = decompose(&req.target(Target::X(t))).unwrap();
            let rep = verify_decomposition(&r, Target::X(t)).unwrap();
            assert!(rep.passed(), "{req:?} target {t}: {rep:?}");
            assert!(is_mirrored(r.circuit.gates(), &r.central, MATRIX_TOL));
        }
    }
}

#[test]
fn cnx_n3_is_toffoli_on_code_space() {
    for m in Method::ALL {
        let r = decompose(&DecompositionRequest::new(3, m).target(Target::X(2))).unwrap();
        let reg = r.circuit.register().clone();
        for v in 0..8usize {
            let bits = Bitstring::from_index(v, 3);
            let out = r.circuit.run(&r.embedding.embed_state(&bits, false).unwrap()).unwrap();
            for w in 0..8usize {
                let idx = reg
                    .index(&r.embedding.embed_basis_state(&Bitstring::from_index(w, 3)).unwrap())
                    .unwrap();
                let want = if (v == 6 && w == 7) || (v == 7 && w == 6) || (v < 6 && v == w) {
                    1.0
                } else {
                    0.0
                };
                assert!((out.amplitude(idx) - C64::new(want, 0.0)).norm() < MATRIX_TOL, "{m} {v}->{w}");
            }
        }
    }
}

#[test]
fn cnx_n2_is_cnot() {
    for m in Method::ALL {
        let r = decompose(&DecompositionRequest::new(2, m).target(Target::X(1))).unwrap();
        for (v, w) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            let out = r
                .circuit
                .run(&r.embedding.embed_state(&Bitstring::from_index(v, 2), false).unwrap())
                .unwrap();
            let want = r.embedding.embed_state(&Bitstring::from_index(w, 2), false).unwrap();
            assert!(out.max_distance(&want) < MATRIX_TOL, "{m} {v}");
        }
    }
}

#[test]
fn ququint_marker_reaches_level_4_only_when_controls_on() {
    for n in 5..=9 {
        for odd in [OddVariant::Single, OddVariant::Neighbor] {
            let r = build(n, Method::Ququint, odd);
            let hosts = n.div_ceil(2);
            for v in 0..1usize << n {
                let bits = Bitstring::from_index(v, n);
                let on = bits.bits()[..2 * (hosts - 1)].iter().all(|&b| b);
                let p = marker_probability(&r, &bits, hosts - 2, 4);
                assert!((p - if on { 1.0 } else { 0.0 }).abs() < MATRIX_TOL, "n={n} {bits}");
            }
        }
    }
}

#[test]
fn qutrit_chain_marks_second_to_last_site() {
    for n in 3..=7 {
        let r = build(n, Method::Qutrit, OddVariant::Single);
        for v in 0..1usize << n {
            let bits = Bitstring::from_index(v, n);
            let on = bits.bits()[..n - 1].iter().all(|&b| b);
            let p = marker_probability(&r, &bits, n - 2, 2);
            assert!((p - if on { 1.0 } else { 0.0 }).abs() < MATRIX_TOL, "n={n} {bits}");
        }
    }
}

#[test]
fn qubit_compute_chain_sets_ancillas() {
    for n in 3..=6 {
        let r = build(n, Method::Qubit, OddVariant::Single);
        assert_eq!(r.circuit.register().len(), 2 * n - 2);
        for v in 0..1usize << n {
            let bits = Bitstring::from_index(v, n);
            for k in 0..n - 2 {
                let on = bits.bits()[..k + 2].iter().all(|&b| b);
                let p = marker_probability(&r, &bits, n + k, 1);
                assert!((p - if on { 1.0 } else { 0.0 }).abs() < MATRIX_TOL, "n={n} anc {k} {bits}");
            }
        }
    }
}

#[test]
fn every_decomposition_is_mirrored() {
    for req in all_requests(12) {
        let r = decompose(&req).unwrap();
        assert!(is_mirrored(r.circuit.gates(), &r.central, MATRIX_TOL), "{req:?}");
        if req.method != Method::Qubit {
            let g = r.circuit.gates();
            assert!(g[..r.central.start].iter().eq(g[r.central.end..].iter().rev()), "{req:?}");
        }
    }
}

fn closed_form(n: usize, method: Method, odd: OddVariant) -> usize {
    match method {
        Method::Qubit if n == 2 => 1,
        Method::Qubit => 12 * n - 23,
        Method::Qutrit => 2 * n - 3,
        Method::Ququint => match (n, n % 2, odd) {
            (2, _, _) => 0,
            (_, 0, _) => n - 3,
            (_, _, OddVariant::Single) => n - 2,
            (_, _, OddVariant::Neighbor) => n - 1,
        },
    }
}

#[test]
fn constructed_counts_match_closed_forms() {
    for req in all_requests(30) {
        let r = decompose(&req).unwrap();
        assert_eq!(r.two_particle_gate_count, r.circuit.two_particle_count());
        assert_eq!(r.two_particle_gate_count, closed_form(req.n, req.method, req.odd_variant), "{req:?}");
        let ancillas = if req.method == Method::Qubit { req.n - 2 } else { 0 };
        assert_eq!(r.ancilla_systems, ancillas);
    }
}

#[test]
fn qubit_to_ququint_ratio_decreases_within_each_parity() {
    let ratio = |n| count_row(n, OddVariant::Single).unwrap().ratio.unwrap();
    for parity in [0, 1] {
        let ns: Vec<usize> = (4..=30).filter(|n| n % 2 == parity).collect();
        for w in ns.windows(2) {
            assert!(ratio(w[1]) < ratio(w[0]), "n={} vs {}", w[0], w[1]);
        }
        assert!(ns.iter().all(|&n| ratio(n) > 12.0));
    }
}

#[test]
fn rejects_bad_requests() {
    for m in Method::ALL {
        assert!(decompose(&DecompositionRequest::new(1, m)).is_err());
        assert!(decompose(&DecompositionRequest::new(4, m).target(Target::X(4))).is_err());
    }
    assert!(StateVector::zero(build(30, Method::Qubit, OddVariant::Single).circuit.register().clone()).is_err());
}
