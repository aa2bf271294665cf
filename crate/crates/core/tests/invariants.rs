use proptest::prelude::*;
use qentropy_core::channels::measure_povm;
use qentropy_core::classical::{classical_entropy, majorizes, MajorizationVerdict};
use qentropy_core::composite::{
    entropic_separability_test, marginal_entropy_equality, quantum_conditional_i, werner_boundary,
    werner_z, SeparabilityVerdict,
};
use qentropy_core::functionals::{named_family_grid, FAlphaFamily};
use qentropy_core::quantum::{isometry_conjugate_entropy, quantum_entropy};
use qentropy_core::random::RandomSource;

// ω*(α) with f = ln, solved at 30 digits with mpmath.
const BOUNDARY: [(f64, f64); 7] = [
    (0.5, 0.910683602522959),
    (1.0, 0.747613833446358),
    (2.0, 0.577350269189626),
    (5.0, 0.432040800333096),
    (10.0, 0.381181446493682),
    (50.0, 0.342639653193353),
    (1000.0, 0.333795591641720),
];

#[test]
fn werner_boundary_matches_high_precision_roots() {
    for (alpha, want) in BOUNDARY {
        let got = werner_boundary(&FAlphaFamily::log(alpha).unwrap()).unwrap();
        assert!(
            (got - want).abs() < 1e-12,
            "alpha = {alpha}: {got} vs {want}"
        );
    }
}

#[test]
fn werner_z_high_alpha() {
    // mpmath at 30 digits.
    let z = werner_z(&FAlphaFamily::log(200.0).unwrap(), 0.4).unwrap();
    assert!((z - 0.09230597377037702).abs() < 1e-12, "{z}");
    assert!(werner_z(&FAlphaFamily::log(200.0).unwrap(), 1.0 / 3.0).unwrap() < 0.0);
}

#[test]
fn pure_bipartite_marginals_agree() {
    let mut src = RandomSource::new(11);
    let fams = named_family_grid();
    for dims in [(2, 2), (2, 3), (3, 3)] {
        for _ in 0..500 {
            let psi = src.pure_state(dims.0 * dims.1);
            for pair in &fams {
                let (a, b) = marginal_entropy_equality(pair, &psi, dims).unwrap();
                assert!((a - b).abs() <= 1e-10, "{pair} {dims:?}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn separable_states_never_flagged() {
    let mut src = RandomSource::new(12);
    let fams = named_family_grid();
    for k in 0..1000 {
        let dims: &[usize] = if k % 2 == 0 { &[2, 3] } else { &[2, 2, 2] };
        let terms = 1 + k % 8;
        let rho = src.separable(dims, terms);
        let w = entropic_separability_test(&fams, &rho, dims).unwrap();
        assert_eq!(
            w.verdict,
            SeparabilityVerdict::Inconclusive,
            "{dims:?}, {terms} terms: {w:?}"
        );
        for v in &w.majorization_verdicts {
            assert!(matches!(
                v,
                MajorizationVerdict::FirstMajorized | MajorizationVerdict::Equal
            ));
        }
        if dims.len() == 2 {
            for pair in &fams {
                assert!(quantum_conditional_i(pair, &rho, (2, 3)).unwrap() >= -1e-10);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bistochastic_channels_raise_entropy(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=5) {
        let mut src = RandomSource::new(seed);
        let rank = src.integer(1, n);
        let rho = src.density(n, rank);
        let out = src.bistochastic_channel(n, k).apply(&rho).unwrap();
        let rel = majorizes(out.spectrum(), rho.spectrum()).verdict;
        prop_assert!(matches!(rel, MajorizationVerdict::FirstMajorized | MajorizationVerdict::Equal));
        for pair in named_family_grid() {
            prop_assert!(quantum_entropy(&pair, &out) >= quantum_entropy(&pair, &rho) - 1e-9);
        }
    }

    #[test]
    fn rank_one_measurements_never_go_below(seed in any::<u64>(), n in 1usize..=4) {
        let mut src = RandomSource::new(seed);
        let rank = src.integer(1, n);
        let rho = src.density(n, rank);
        let p = measure_povm(&src.rank_one_povm(n), &rho).unwrap();
        for pair in named_family_grid() {
            prop_assert!(classical_entropy(&pair, &p) >= quantum_entropy(&pair, &rho) - 1e-9);
        }
    }

    #[test]
    fn isometries_preserve_entropy(seed in any::<u64>(), n in 1usize..=4, extra in 0usize..=2) {
        let mut src = RandomSource::new(seed);
        let rank = src.integer(1, n);
        let rho = src.density(n, rank);
        let w = src.isometry(n + extra, n);
        for pair in named_family_grid() {
            let (a, b) = isometry_conjugate_entropy(&pair, &rho, &w).unwrap();
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>()) {
        let mut a = RandomSource::new(seed);
        let mut b = RandomSource::new(seed);
        prop_assert_eq!(a.density(3, 2).matrix().clone(), b.density(3, 2).matrix().clone());
        prop_assert_eq!(a.separable(&[2, 2], 3).matrix().clone(), b.separable(&[2, 2], 3).matrix().clone());
        prop_assert_eq!(a.haar_unitary(4), b.haar_unitary(4));
    }
}
