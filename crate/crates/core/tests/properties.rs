//! Randomized invariants of the state-vector kernel and the gate set.

use dnaswap::gates::{
    bell_basis, equality_entangler, hadamard, identity, pauli_x, pauli_z, rotation, sp, Gate,
};
use dnaswap::linalg::Matrix;
use dnaswap::metrics::entanglement_entropy;
use dnaswap::protocol::build_recognition_unitary;
use dnaswap::statevec::{apply_unitary, measure_two_qubit, permute_qubits, tensor};
use dnaswap::{ConfigF64, StateVectorF64, C64};
use proptest::prelude::*;

fn amplitudes(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("nonzero", |v| {
            v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
        })
        .prop_map(|v| v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
}

fn state(n: usize) -> impl Strategy<Value = StateVectorF64> {
    amplitudes(n).prop_map(move |v| StateVectorF64::normalized(n, v).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

fn distinct_pair(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..=n, 1..=n).prop_filter("distinct", |(a, b)| a != b)
}

/// Random unitary from modified Gram-Schmidt on random columns.
fn random_unitary(arity: usize) -> impl Strategy<Value = Gate<f64>> {
    let d = 1 << arity;
    prop::collection::vec(amplitudes(arity), d).prop_filter_map("rank deficient", move |cols| {
        let mut basis: Vec<Vec<C64>> = Vec::new();
        for mut v in cols {
            for b in &basis {
                let p: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= p * bi;
                }
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-6 {
                return None;
            }
            basis.push(v.into_iter().map(|z| z / n).collect());
        }
        Gate::new("R", Matrix::from_columns(&basis)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parametrized_gates_are_unitary(theta in -10.0f64..10.0, phi in -10.0f64..10.0) {
        prop_assert!(rotation(theta).unwrap().unitarity_residual() < 1e-12);
        let s = sp(theta).unwrap();
        prop_assert!(s.unitarity_residual() < 1e-12);
        prop_assert_eq!(s.matrix(), &s.matrix().adjoint());
        let cfg = ConfigF64 { theta, phi, ..ConfigF64::default() };
        prop_assert!(build_recognition_unitary(&cfg).unwrap().unitarity_residual() < 1e-12);
    }

    #[test]
    fn measurement_is_complete(s in state(6), (i, j) in distinct_pair(6)) {
        let m = measure_two_qubit(&s, &bell_basis(), (i, j), 0.0).unwrap();
        let total: f64 = m.branches.iter().map(|b| b.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert_eq!(m.dropped_mass, 0.0);
        for b in &m.branches {
            prop_assert!((b.post_state.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn measurement_complete_in_computational_basis(s in state(6), (i, j) in distinct_pair(6)) {
        let basis = ["00", "01", "10", "11"].map(|b| StateVectorF64::from_bits(b).unwrap());
        let m = measure_two_qubit(&s, &basis, (i, j), 0.0).unwrap();
        let total: f64 = m.branches.iter().map(|b| b.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn permutation_composition(p in permutation(6), q in permutation(6), index in 0usize..64) {
        let s = StateVectorF64::basis(6, index).unwrap();
        let composed: Vec<usize> = p.iter().map(|&k| q[k - 1]).collect();
        let twice = permute_qubits(&permute_qubits(&s, &p).unwrap(), &q).unwrap();
        prop_assert_eq!(twice, permute_qubits(&s, &composed).unwrap());
    }

    #[test]
    fn permutation_preserves_norm(s in state(6), p in permutation(6)) {
        let out = permute_qubits(&s, &p).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitaries_preserve_norm(s in state(6), u in random_unitary(2), (i, j) in distinct_pair(6)) {
        prop_assert!(u.unitarity_residual() < 1e-12);
        let out = apply_unitary(&s, &u, &[i, j]).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_norm_is_product(a in state(2), b in state(3)) {
        let t = tensor(&a, &b).unwrap();
        prop_assert_eq!(t.num_qubits(), 5);
        prop_assert!((t.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_symmetric(s in state(5), mask in 1u32..31) {
        let cut: Vec<usize> = (1..=5).filter(|q| mask >> (q - 1) & 1 == 1).collect();
        let rest: Vec<usize> = (1..=5).filter(|q| mask >> (q - 1) & 1 == 0).collect();
        let h1 = entanglement_entropy(&s, &cut).unwrap();
        let h2 = entanglement_entropy(&s, &rest).unwrap();
        prop_assert!((h1 - h2).abs() < 1e-10);
    }
}

#[test]
fn fixed_gates_are_unitary() {
    let gates = [
        identity::<f64>(1),
        identity(3),
        pauli_x(),
        pauli_z(),
        hadamard(),
        equality_entangler(),
        build_recognition_unitary(&ConfigF64::default()).unwrap(),
    ];
    for g in gates {
        assert!(g.unitarity_residual() < 1e-12, "{}", g.name());
    }
}
