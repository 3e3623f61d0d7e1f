mod common;

use proptest::prelude::*;
use rand::Rng;

use sipt_core::bounds::{sipt_projection, SpectrumPair};
use sipt_core::criteria::moment_gaps;
use sipt_core::qmat::{hs_distance_sq, moments, pinch, tensor};
use sipt_core::{
    discord_bounds, entanglement_bounds, gqd_oracle, l_ppt, l_sipt, make_state, partial_transpose, ppt_test,
    separable_upper_search, sipt_test, spectrum, BipartiteDims, CMatrix, DensityMatrix, HermitianMatrix,
    Measurement, Operator, OracleOptions, SeparableOptions, StateSpec, Subsystem, Tolerances, Verdict, C64,
};

fn dims_strategy() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4, 1usize..=4)
}

fn state(dims: (usize, usize), seed: u64) -> DensityMatrix {
    common::random_state(dims, &mut common::rng(seed))
}

fn random_hermitian(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    (&g + g.adjoint()) * C64::new(0.5, 0.0)
}

fn quick_oracle(seed: u64) -> OracleOptions {
    OracleOptions {
        restarts: 4,
        seed,
        ..OracleOptions::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn partial_transpose_is_an_exact_involution(dims in dims_strategy(), seed in any::<u64>()) {
        let rho = state(dims, seed);
        for side in [Subsystem::A, Subsystem::B] {
            let twice = partial_transpose(&partial_transpose(&rho, side), side);
            prop_assert_eq!(twice.entries(), rho.entries());
        }
    }

    #[test]
    fn transposed_spectrum_does_not_depend_on_side(dims in dims_strategy(), seed in any::<u64>()) {
        let rho = state(dims, seed);
        let a = spectrum(&partial_transpose(&rho, Subsystem::A)).unwrap();
        let b = spectrum(&partial_transpose(&rho, Subsystem::B)).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn transposed_spectrum_is_locally_invariant(dims in dims_strategy(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_state(dims, &mut rng);
        let rotated = common::locally_rotated(&rho, &mut rng);
        let a = spectrum(&partial_transpose(&rho, Subsystem::A)).unwrap();
        let b = spectrum(&partial_transpose(&rotated, Subsystem::A)).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn moments_match_eigenvalue_powers(dims in dims_strategy(), seed in any::<u64>()) {
        let rho = state(dims, seed);
        let pt = partial_transpose(&rho, Subsystem::A);
        let n_max = 6;
        let traced = moments(&pt, n_max).unwrap();
        let values = spectrum(&pt).unwrap();
        for n in 1..=n_max {
            let direct: f64 = values.values().iter().map(|x| x.powi(n as i32)).sum();
            prop_assert!((traced[n - 1] - direct).abs() <= 1e-9 * n as f64);
        }
    }

    #[test]
    fn hs_distance_is_unitarily_invariant(dims in dims_strategy(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let x = common::random_state(dims, &mut rng);
        let y = common::random_state(dims, &mut rng);
        let side = dims.0 * dims.1;
        let u = common::random_unitary(side, &mut rng);
        let d = BipartiteDims::new(dims.0, dims.1).unwrap();
        let rx = HermitianMatrix::new(&u * x.entries() * u.adjoint(), d, 1e-9).unwrap();
        let ry = HermitianMatrix::new(&u * y.entries() * u.adjoint(), d, 1e-9).unwrap();
        let before = hs_distance_sq(&x, &y).unwrap();
        let after = hs_distance_sq(&rx, &ry).unwrap();
        prop_assert!((before - after).abs() <= 1e-12);
    }

    #[test]
    fn product_spectrum_is_product_of_spectra(a in 1usize..=3, b in 1usize..=3, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let x = common::random_state((a, 1), &mut rng);
        let y = common::random_state((1, b), &mut rng);
        let d = BipartiteDims::new(a, b).unwrap();
        let joint = HermitianMatrix::new(tensor(x.entries(), y.entries()), d, 1e-9).unwrap();
        let mut expected: Vec<f64> = spectrum(&x)
            .unwrap()
            .values()
            .iter()
            .flat_map(|p| spectrum(&y).unwrap().values().iter().map(move |q| p * q).collect::<Vec<_>>())
            .collect();
        expected.sort_by(|p, q| q.total_cmp(p));
        for (p, q) in spectrum(&joint).unwrap().values().iter().zip(&expected) {
            prop_assert!((p - q).abs() <= 1e-12);
        }
    }

    #[test]
    fn pinching_is_the_closest_block_diagonal_matrix(dims in (2usize..=3, 1usize..=3), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_state(dims, &mut rng);
        let u = common::random_unitary(dims.0, &mut rng);
        let m = Measurement::from_unitary(u.clone(), Subsystem::A, 1e-9).unwrap();
        let pinched = pinch(&rho, &m).unwrap();
        let best = hs_distance_sq(&rho, &pinched).unwrap();

        // Any other operator block-diagonal in the same local basis.
        let nb = dims.1;
        let mut local = CMatrix::zeros(dims.0 * nb, dims.0 * nb);
        for a in 0..dims.0 {
            let block = random_hermitian(nb, &mut rng);
            local.view_mut((a * nb, a * nb), (nb, nb)).copy_from(&block);
        }
        let w = tensor(&u, &CMatrix::identity(nb, nb));
        let d = BipartiteDims::new(dims.0, dims.1).unwrap();
        let other = HermitianMatrix::new(&w * local * w.adjoint(), d, 1e-9).unwrap();
        prop_assert!(best <= hs_distance_sq(&rho, &other).unwrap() + 1e-12);
    }

    #[test]
    fn criteria_implication_chain(dims in dims_strategy(), seed in any::<u64>()) {
        let rho = state(dims, seed);
        let ppt = ppt_test(&rho, &Tolerances::default()).unwrap();
        let sipt = sipt_test(&rho).unwrap();
        if ppt.verdict == Verdict::Violated {
            prop_assert_eq!(sipt.verdict, Verdict::Violated);
        }
        let gaps = moment_gaps(&rho, 2).unwrap();
        prop_assert!(gaps.iter().all(|g| *g < 1e-12));
    }

    #[test]
    fn bounds_are_locally_invariant(dims in dims_strategy(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rho = common::random_state(dims, &mut rng);
        let rotated = common::locally_rotated(&rho, &mut rng);
        let (x, y) = (discord_bounds(&rho).unwrap(), discord_bounds(&rotated).unwrap());
        for (p, q) in [(x.l_ppt, y.l_ppt), (x.l_sipt, y.l_sipt), (x.l_ppt_prime, y.l_ppt_prime)] {
            prop_assert!((p - q).abs() <= 1e-9);
        }
        let (e, f) = (entanglement_bounds(&rho).unwrap(), entanglement_bounds(&rotated).unwrap());
        prop_assert!((e.e_hs_lemma - f.e_hs_lemma).abs() <= 1e-9);
        prop_assert!((e.e_hs_floor - f.e_hs_floor).abs() <= 1e-9);
    }

    #[test]
    fn sipt_bound_is_nonnegative_and_combined_is_the_max(dims in dims_strategy(), seed in any::<u64>()) {
        let rho = state(dims, seed);
        let b = discord_bounds(&rho).unwrap();
        prop_assert!(b.l_sipt >= 0.0 && b.l_ppt >= 0.0);
        prop_assert_eq!(b.combined, b.l_ppt.max(b.l_sipt));
        let projected = sipt_projection(&SpectrumPair::of(&rho).unwrap()).unwrap();
        prop_assert!(projected.projected.values().iter().all(|x| *x >= 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn entanglement_lemma_bound_is_below_discord(seed in any::<u64>()) {
        let rho = state((2, 2), seed);
        let e = entanglement_bounds(&rho).unwrap();
        let g = gqd_oracle(&rho, &quick_oracle(seed)).unwrap().value;
        prop_assert!(e.e_hs_lemma <= g + 1e-6, "lemma {} vs gqd {}", e.e_hs_lemma, g);
    }

    #[test]
    fn oracle_is_reproducible(seed in any::<u64>()) {
        let rho = state((2, 3), seed);
        let opts = quick_oracle(seed);
        let first = gqd_oracle(&rho, &opts).unwrap();
        let second = gqd_oracle(&rho, &opts).unwrap();
        prop_assert_eq!(first.value.to_bits(), second.value.to_bits());
        prop_assert_eq!(first.argmin, second.argmin);
    }
}

#[test]
fn eigenvalue_distance_never_exceeds_matrix_distance() {
    let mut rng = common::rng(11);
    for i in 0..1000 {
        let n = 2 + i % 8;
        let d = BipartiteDims::new(n, 1).unwrap();
        let x = HermitianMatrix::new(random_hermitian(n, &mut rng), d, 0.0).unwrap();
        let y = HermitianMatrix::new(random_hermitian(n, &mut rng), d, 0.0).unwrap();
        let (sx, sy) = (spectrum(&x).unwrap(), spectrum(&y).unwrap());
        let eig: f64 = sx.values().iter().zip(sy.values()).map(|(a, b)| (a - b).powi(2)).sum();
        assert!(eig <= hs_distance_sq(&x, &y).unwrap() + 1e-10);
    }
}

#[test]
fn werner_dephasing_in_computational_basis_matches_discord() {
    let rho = make_state(&StateSpec::Werner { p: 0.5 }).unwrap();
    let pinched = pinch(&rho, &Measurement::computational(2, Subsystem::A)).unwrap();
    assert!((hs_distance_sq(&rho, &pinched).unwrap() - 0.125).abs() < 1e-12);
    assert!((l_ppt(&rho).unwrap() - 1.0 / 48.0).abs() < 1e-12);
}

#[test]
fn classical_quantum_states_have_zero_bounds() {
    let mut rng = common::rng(17);
    for i in 0..500 {
        let rho = common::random_cq((1 + i % 4, 1 + (i / 4) % 4), &mut rng);
        let b = discord_bounds(&rho).unwrap();
        assert!(b.combined <= 1e-12, "state {i}: {b:?}");
        let verdict = sipt_test(&rho).unwrap();
        assert_eq!(verdict.verdict, Verdict::Satisfied);
        assert!(verdict.witness_value < 1e-10);
    }
}

#[test]
fn sipt_bound_beats_ppt_bound_below_entanglement_threshold() {
    let rho = make_state(&StateSpec::Werner { p: 0.2 }).unwrap();
    let (ppt, sipt) = (l_ppt(&rho).unwrap(), l_sipt(&rho).unwrap());
    assert!(ppt < 1e-15, "{ppt}");
    assert!(sipt > ppt + 1e-3, "{sipt}");
}

#[test]
fn separable_search_respects_lower_bound_on_singlet() {
    let rho = make_state(&StateSpec::Werner { p: 1.0 }).unwrap();
    let upper = separable_upper_search(&rho, &SeparableOptions::default()).unwrap().value;
    let e = entanglement_bounds(&rho).unwrap();
    assert!(upper >= 1.0 / 3.0 - 1e-9, "{upper}");
    assert!(upper + 1e-9 >= e.e_hs_lemma);
}
