use chainent::dynamics::{run_quench, QuenchSpec};
use chainent::linalg::{eigh, C64};
use chainent::model::{block_entropy_dense, build_full_hamiltonian, ground_state};

/// Quench observables against brute-force evolution of the full state vector.
#[test]
fn quench_matches_dense_evolution() {
    let mut spec = QuenchSpec::new(8, 3);
    spec.lambda = 0.9;
    spec.impurity_strength = -0.7;
    let times = [0.0, 0.4, 1.3, 3.0, 7.7];
    let run = run_quench(&spec, &times).unwrap();

    let psi0 = ground_state(&spec.homogeneous()).unwrap().full_amplitudes();
    let h = build_full_hamiltonian(&spec.with_impurity()).unwrap().to_dense();
    let (e, v) = eigh(&h);
    let coeffs = v.adjoint() * nalgebra::DVector::from_vec(psi0);
    let e0: f64 = coeffs.iter().zip(&e).map(|(c, &ek)| c.norm_sqr() * ek).sum();
    for sample in &run.samples {
        let phased = nalgebra::DVector::from_iterator(
            e.len(),
            coeffs.iter().zip(&e).map(|(c, &ek)| c * C64::from_polar(1.0, -ek * sample.t)),
        );
        let psi: Vec<C64> = (&v * phased).iter().copied().collect();
        let dense = block_entropy_dense(&psi, spec.n_sites, &spec.block).unwrap();
        assert!((dense - sample.block_entropy).abs() < 1e-9, "t={}: {dense} vs {}", sample.t, sample.block_entropy);
        assert!((sample.energy - e0).abs() < 1e-9, "t={}: {} vs {e0}", sample.t, sample.energy);
        assert!(sample.total_entropy < 1e-8);
        assert!(sample.fidelity <= 1.0 + 1e-12);
    }
}
