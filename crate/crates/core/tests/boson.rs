use chainent::boson::{gaussian_block_entropy, kg_ground_state, symmetric_gaussian_eof, two_mode_matrix};
use chainent::KgSpec;

#[test]
fn massive_limit_is_unentangled() {
    let state = kg_ground_state(&KgSpec::new(12, 100.0)).unwrap();
    for l in 1..12 {
        let s = gaussian_block_entropy(&state, &(0..l).collect::<Vec<_>>()).unwrap();
        assert!(s < 1e-3, "ℓ={l}: {s}");
    }
    assert!(state.is_pure(1e-9).unwrap());
}

#[test]
fn block_entropy_is_symmetric_about_half_chain() {
    let n = 24;
    let state = kg_ground_state(&KgSpec::new(n, 1e-2)).unwrap();
    for l in 1..n / 2 {
        let a = gaussian_block_entropy(&state, &(0..l).collect::<Vec<_>>()).unwrap();
        let b = gaussian_block_entropy(&state, &(0..n - l).collect::<Vec<_>>()).unwrap();
        assert!((a - b).abs() < 1e-8, "ℓ={l}: {a} vs {b}");
    }
}

#[test]
fn two_site_entanglement_range() {
    // Third neighbours are entangled only on the smallest ring.
    for (n, expect) in [(6, true), (8, false), (12, false)] {
        let state = kg_ground_state(&KgSpec::new(n, 1e-3)).unwrap();
        let e3 = symmetric_gaussian_eof(&two_mode_matrix(&state, 0, 3).unwrap()).unwrap();
        assert_eq!(e3 > 0.0, expect, "N={n}: {e3}");
    }
    let state = kg_ground_state(&KgSpec::new(30, 1e-3)).unwrap();
    let e1 = symmetric_gaussian_eof(&two_mode_matrix(&state, 0, 1).unwrap()).unwrap();
    assert!((e1 - 0.479669402881).abs() < 1e-9, "{e1}");
    // Translation invariance of the ring.
    let shifted = symmetric_gaussian_eof(&two_mode_matrix(&state, 17, 18).unwrap()).unwrap();
    assert!((shifted - e1).abs() < 1e-10);
}
