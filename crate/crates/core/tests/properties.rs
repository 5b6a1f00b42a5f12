use ccrkit::{
    ccr_hs, ccr_inequality_gap, ccr_mixedness, coherence_hs, coherence_l1, coherence_re, concurrence_generalized,
    correlated_coherence, dephased, haar_random_pure, linear_entropy, nonlocal_coherence_hs_direct,
    nonlocal_coherence_hs_via_entropy, partial_trace, predictability_hs, predictability_l1, predictability_vn, purify,
    purity, satisfies_offdiag_conditions, tensor_product, von_neumann_entropy, Bipartition, CoherenceKind,
    DensityOperator, DimensionSignature, MeasureValue, PureState, RandomSpec,
};
use proptest::prelude::*;

const SIGNATURES: [&[usize]; 7] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 2, 3], &[3, 3, 3], &[2, 2, 2, 2]];

fn pure_state(dims: &[usize], seed: u64) -> PureState<f64> {
    let spec = RandomSpec { signature: DimensionSignature::new(dims.to_vec()).unwrap(), seed, count: 1 };
    haar_random_pure(&spec).next().unwrap()
}

/// Random mixed state on `dims` as the marginal of a Haar state with an
/// ancilla of dimension `anc`.
fn mixed_state(dims: &[usize], anc: usize, seed: u64) -> DensityOperator<f64> {
    if anc < 2 {
        return pure_state(dims, seed).into_density();
    }
    let mut all = dims.to_vec();
    all.push(anc);
    let rho = pure_state(&all, seed).into_density();
    let keep: Vec<usize> = (0..dims.len()).collect();
    partial_trace(&rho, &keep).unwrap()
}

fn signature() -> impl Strategy<Value = &'static [usize]> {
    prop::sample::select(SIGNATURES.to_vec())
}

fn small_signature() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 1..=3)
}

fn in_bounds(m: &MeasureValue<f64>) -> bool {
    m.within_bound(1e-10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partial_trace_sequential_matches_joint(dims in prop::collection::vec(2usize..=3, 3..=4), seed: u64, order_seed: u64) {
        let rho = mixed_state(&dims, 2, seed);
        let n = dims.len();
        let target = (order_seed as usize) % n;
        let direct = partial_trace(&rho, &[target]).unwrap();
        // trace the others one at a time in a seed-dependent order
        let mut others: Vec<usize> = (0..n).filter(|&s| s != target).collect();
        let shift = (order_seed as usize / n) % others.len();
        others.rotate_left(shift);
        let mut current = rho.clone();
        let mut labels: Vec<usize> = (0..n).collect();
        for s in others {
            let pos = labels.iter().position(|&l| l == s).unwrap();
            let keep: Vec<usize> = (0..labels.len()).filter(|&k| k != pos).collect();
            current = partial_trace(&current, &keep).unwrap();
            labels.remove(pos);
        }
        prop_assert!(current.matrix().max_abs_diff(direct.matrix()) < 1e-12);
        prop_assert!((direct.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(direct.matrix().hermiticity_defect() < 1e-12);
    }

    #[test]
    fn pure_states_have_unit_purity(sig in signature(), seed: u64) {
        let rho = pure_state(sig, seed).into_density();
        prop_assert!((purity(&rho) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_reconstructs(dims in small_signature(), seed: u64) {
        let rho = mixed_state(&dims, 3, seed);
        let s = rho.spectrum().unwrap();
        let rec = s.reconstruct();
        let frob: f64 = rec.as_slice().iter().zip(rho.matrix().as_slice()).map(|(a, b)| (*a - *b).norm_sqr()).sum();
        prop_assert!(frob.sqrt() < 1e-10);
        prop_assert!((s.eigenvalues.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn purification_round_trip(dims in small_signature(), anc in 1usize..=4, seed: u64) {
        let rho = mixed_state(&dims, anc, seed);
        let psi = purify(&rho).unwrap();
        let keep: Vec<usize> = (0..dims.len()).collect();
        let back = partial_trace(&psi.into_density(), &keep).unwrap();
        prop_assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-10);
    }

    #[test]
    fn single_system_measures_respect_bounds(d in 2usize..=5, anc in 1usize..=4, seed: u64) {
        let rho = mixed_state(&[d], anc, seed);
        prop_assert!(in_bounds(&predictability_hs(&rho)));
        prop_assert!(in_bounds(&predictability_vn(&rho)));
        prop_assert!(in_bounds(&predictability_l1(&rho)));
        prop_assert!(in_bounds(&coherence_hs(&rho)));
        prop_assert!(in_bounds(&coherence_l1(&rho)));
        prop_assert!(in_bounds(&coherence_re(&rho).unwrap()));
        prop_assert!(in_bounds(&concurrence_generalized(&rho)));
    }

    #[test]
    fn hs_pair_is_purity_identity(d in 2usize..=5, anc in 1usize..=4, seed: u64) {
        let rho = mixed_state(&[d], anc, seed);
        let lhs = predictability_hs(&rho).value + coherence_hs(&rho).value;
        prop_assert!((lhs - (purity(&rho) - 1.0 / d as f64)).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_coherence_below_diagonal_entropy(d in 2usize..=5, anc in 1usize..=4, seed: u64) {
        let rho = mixed_state(&[d], anc, seed);
        let cre = coherence_re(&rho).unwrap().value;
        prop_assert!(cre <= von_neumann_entropy(&dephased(&rho)).unwrap() + 1e-10);
    }

    #[test]
    fn nonlocal_coherence_forms_agree(sig in signature(), seed: u64) {
        let rho = pure_state(sig, seed).into_density();
        for t in 0..sig.len() {
            let direct = nonlocal_coherence_hs_direct(&rho, t).unwrap();
            let entropy = nonlocal_coherence_hs_via_entropy(&rho, t).unwrap();
            prop_assert!((direct.value - entropy.value).abs() < 1e-12);
            prop_assert!(direct.value >= -1e-12);
            prop_assert!(in_bounds(&direct));
        }
    }

    #[test]
    fn l1_correlated_coherence_is_non_negative(dims in prop::collection::vec(2usize..=3, 2..=2), anc in 1usize..=3, seed: u64) {
        let rho = mixed_state(&dims, anc, seed);
        let cc = correlated_coherence(&rho, &Bipartition::new(vec![0], vec![1]), CoherenceKind::L1Norm).unwrap();
        prop_assert!(cc >= -1e-10);
    }

    #[test]
    fn mixedness_relation_is_exact(dims in small_signature(), anc in 1usize..=3, seed: u64) {
        let rho = mixed_state(&dims, anc, seed);
        for t in 0..dims.len() {
            prop_assert!(ccr_mixedness(&rho, t).unwrap().residual.abs() < 1e-12);
        }
    }

    #[test]
    fn hs_and_mixedness_agree_on_pure_states(sig in signature(), seed: u64) {
        let rho = pure_state(sig, seed).into_density();
        for t in 0..sig.len() {
            let a = ccr_hs(&rho, t).unwrap();
            let b = ccr_mixedness(&rho, t).unwrap();
            prop_assert!((a.predictability.value - b.predictability.value).abs() < 1e-12);
            prop_assert!((a.local_coherence.value - b.local_coherence.value).abs() < 1e-12);
            prop_assert!((a.correlation_term.value - b.correlation_term.value).abs() < 1e-12);
            prop_assert!(a.residual.abs() < 1e-12);
            prop_assert!((a.residual - (a.sum - a.bound)).abs() < 1e-14);
        }
    }

    #[test]
    fn inequality_gap_is_non_negative(dims in prop::collection::vec(2usize..=3, 2..=3), anc in 2usize..=4, seed: u64) {
        let rho = mixed_state(&dims, anc, seed);
        for t in 0..dims.len() {
            prop_assert!(ccr_inequality_gap(&rho, t).unwrap() >= -1e-10);
        }
    }

    #[test]
    fn ghz_family_nonlocal_identity(re0 in -1.0f64..1.0, im0 in -1.0f64..1.0, re1 in -1.0f64..1.0, im1 in -1.0f64..1.0) {
        prop_assume!(re0.hypot(im0) + re1.hypot(im1) > 1e-3);
        let built = ccrkit::build(&ccrkit::FactoryParams::Ghz {
            a000: ccrkit::C::new(re0, im0),
            a111: ccrkit::C::new(re1, im1),
        }).unwrap();
        let psi = built.as_pure().unwrap();
        let want = 2.0 * psi.amplitude(&[0, 0, 0]).norm_sqr() * psi.amplitude(&[1, 1, 1]).norm_sqr();
        let rho = built.density();
        for t in 0..3 {
            prop_assert!((nonlocal_coherence_hs_direct(&rho, t).unwrap().value - want).abs() < 1e-12);
        }
    }
}

#[test]
fn measure_bounds_on_a_thousand_states() {
    for seed in 0..1000u64 {
        let d = 2 + (seed % 4) as usize;
        let rho = mixed_state(&[d], 1 + (seed % 3) as usize, seed);
        for m in [
            predictability_hs(&rho),
            predictability_vn(&rho),
            predictability_l1(&rho),
            coherence_hs(&rho),
            coherence_l1(&rho),
            coherence_re(&rho).unwrap(),
            concurrence_generalized(&rho),
        ] {
            assert!(in_bounds(&m), "{m:?} seed {seed}");
        }
        assert!(linear_entropy(&rho) >= -1e-12);
    }
}

#[test]
fn hs_correlated_coherence_non_negative_when_conditions_hold() {
    let mut checked = 0;
    for seed in 0..400u64 {
        // sparse random pure states hit the factorisation conditions often
        let mut amps = pure_state(&[2, 2], seed).amplitudes().to_vec();
        for (k, a) in amps.iter_mut().enumerate() {
            if (seed >> k) & 1 == 1 {
                *a = ccrkit::C::new(0.0, 0.0);
            }
        }
        let Ok(psi) = PureState::normalized(DimensionSignature::new(vec![2, 2]).unwrap(), amps) else { continue };
        let rho = psi.into_density();
        let bp = Bipartition::new(vec![0], vec![1]);
        if satisfies_offdiag_conditions(&rho, &bp).unwrap() {
            checked += 1;
            assert!(correlated_coherence(&rho, &bp, CoherenceKind::HilbertSchmidt).unwrap() >= -1e-10);
        }
    }
    assert!(checked > 50, "only {checked} states satisfied the conditions");
}

#[test]
fn product_with_incoherent_partner_has_no_l1_correlated_coherence() {
    for seed in 0..50u64 {
        let rho_a = mixed_state(&[3], 2, seed);
        let sigma = dephased(&mixed_state(&[2], 2, seed + 1000));
        let joint = tensor_product(&[rho_a, sigma]).unwrap();
        let cc = correlated_coherence(&joint, &Bipartition::new(vec![0], vec![1]), CoherenceKind::L1Norm).unwrap();
        assert!(cc.abs() < 1e-12);
        let re = correlated_coherence(&joint, &Bipartition::new(vec![0], vec![1]), CoherenceKind::RelativeEntropy).unwrap();
        assert!(re.abs() < 1e-10);
    }
}
