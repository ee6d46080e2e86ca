use chainent::entanglement::{
    block_correlation, block_entropy_fermionic, block_occupations, schmidt_spectrum, sigma_z, sigma_z_dense,
    zz_connected, zz_connected_dense,
};
use chainent::fermion::{fermionic_ground_state, sector_ground_state, ParitySector};
use chainent::linalg::eigvalsh;
use chainent::model::{
    block_entropy_dense, build_full_hamiltonian, ground_state, reduced_density_matrix, sector_spectrum,
};
use chainent::{Boundary, Parity, SpinModelSpec, SymmetrySector};
use proptest::prelude::*;

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn sectors_partition_the_full_spectrum() {
    let specs = [
        SpinModelSpec::xyz(6, 0.4, -0.5, 0.8),
        SpinModelSpec::xy(7, 0.7, 1.2).with_dm([0.0, 0.0, 0.3]),
        SpinModelSpec::new(5, [1.0, 0.2, 0.6], [0.0, 0.0, 0.9]),
    ];
    for spec in specs {
        let full = sorted(eigvalsh(&build_full_hamiltonian(&spec).unwrap().to_dense()));
        let mut parts = Vec::new();
        for sector in SymmetrySector::all(spec.n_sites) {
            parts.extend(sector_spectrum(&spec, sector).unwrap());
        }
        let parts = sorted(parts);
        assert_eq!(parts.len(), full.len());
        for (a, b) in parts.iter().zip(&full) {
            assert!((a - b).abs() < 1e-10, "{spec:?}: {a} vs {b}");
        }
    }
}

#[test]
fn parity_sector_energies_match_dense_sectors() {
    for (n, g, l) in [(6, 0.5, 0.4), (7, 1.0, 1.3), (8, 0.3, 0.95)] {
        let spec = SpinModelSpec::xy(n, g, l);
        for (sector, parity) in [(ParitySector::Even, Parity::Even), (ParitySector::Odd, Parity::Odd)] {
            let dense = (0..n)
                .flat_map(|k| sector_spectrum(&spec, SymmetrySector::new(k, parity)).unwrap())
                .fold(f64::INFINITY, f64::min);
            let ff = sector_ground_state(&spec, sector).unwrap().energy;
            assert!((dense - ff).abs() < 1e-9, "N={n} {parity:?}: {dense} vs {ff}");
        }
    }
}

#[test]
fn open_chains_match_dense() {
    for (n, g, l) in [(5, 0.6, 0.7), (8, 1.0, 1.0), (9, 0.2, 1.5)] {
        let spec = SpinModelSpec::xy(n, g, l).with_boundary(Boundary::Open);
        let ed = ground_state(&spec).unwrap();
        let ff = fermionic_ground_state(&spec).unwrap();
        assert!((ed.energy - ff.energy).abs() < 1e-9);
        let psi = ed.full_amplitudes();
        let gamma = ff.correlation();
        for len in 1..n {
            let sites: Vec<usize> = (0..len).collect();
            let d = block_entropy_dense(&psi, n, &sites).unwrap();
            let f = block_entropy_fermionic(&gamma, &sites).unwrap();
            assert!((d - f).abs() < 1e-8, "N={n} ℓ={len}: {d} vs {f}");
        }
    }
}

#[test]
fn schmidt_weights_are_rdm_eigenvalues() {
    let n = 8;
    let spec = SpinModelSpec::xy(n, 0.7, 0.9);
    let psi = ground_state(&spec).unwrap().full_amplitudes();
    let gamma = fermionic_ground_state(&spec).unwrap().correlation();
    for len in [2usize, 3, 4] {
        let sites: Vec<usize> = (0..len).collect();
        let mut dense = eigvalsh(&reduced_density_matrix(&psi, n, &sites).unwrap());
        dense.sort_by(|a, b| b.total_cmp(a));
        let spectrum = block_occupations(&block_correlation(&gamma, &sites).unwrap()).unwrap();
        let k = 1 << len;
        let top = schmidt_spectrum(&spectrum, k).unwrap();
        assert_eq!(top.weights.len(), k);
        for (a, b) in top.weights.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-10, "ℓ={len}: {a} vs {b}");
        }
        assert!(top.truncation_mass.abs() < 1e-10);
    }
}

#[test]
fn correlators_match_dense() {
    let n = 9;
    for (g, l) in [(1.0, 0.6), (0.5, 1.1)] {
        let spec = SpinModelSpec::xy(n, g, l);
        let psi = ground_state(&spec).unwrap().full_amplitudes();
        let gamma = fermionic_ground_state(&spec).unwrap().correlation();
        for k in 0..n {
            assert!((sigma_z(&gamma, k) - sigma_z_dense(&psi, k)).abs() < 1e-10);
            for l2 in k + 1..n {
                let (a, b) = (zz_connected(&gamma, k, l2), zz_connected_dense(&psi, k, l2));
                assert!((a - b).abs() < 1e-10, "({k},{l2}): {a} vs {b}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complementary_blocks_share_entropy(n in 4usize..40, g in 0.05f64..1.0, l in 0.05f64..2.0, cut in 1usize..39, shift in 0usize..40) {
        prop_assume!(cut < n);
        let gamma = fermionic_ground_state(&SpinModelSpec::xy(n, g, l)).unwrap().correlation();
        let a: Vec<usize> = (0..cut).map(|k| (k + shift) % n).collect();
        let b: Vec<usize> = (cut..n).map(|k| (k + shift) % n).collect();
        let sa = block_entropy_fermionic(&gamma, &a).unwrap();
        let sb = block_entropy_fermionic(&gamma, &b).unwrap();
        prop_assert!((sa - sb).abs() < 1e-8);
        prop_assert!(sa <= cut.min(n - cut) as f64 + 1e-12);
    }
}
