//! Property tests over the continuous parameter spaces: identities that
//! must hold for arbitrary inputs, not just the hand-picked examples.

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qinvar::channels::{
    local_info_after_channel, local_info_depolarized_closed, ChannelKind, ChannelSpec,
};
use qinvar::entangle::{
    isotropic_state, mixed_complementarity_defect, pure_complementarity_residual, IsotropicParams,
};
use qinvar::gf::Field;
use qinvar::invinfo::invariant_info_closed;
use qinvar::qlinalg::{random_density_matrix, PureState};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Depolarization simulation equals the closed-form polynomial at
    /// arbitrary points of the unit square.
    #[test]
    fn depolarization_matches_closed_form(a in 0.0f64..=1.0, p in 0.0f64..=1.0) {
        let spec = ChannelSpec::new(ChannelKind::Depolarization, p).unwrap();
        let sim = local_info_after_channel(a, &spec).unwrap();
        let closed = local_info_depolarized_closed(a, p).unwrap();
        prop_assert!((sim - closed).abs() <= 1e-10);
    }

    /// Composite information of the isotropic family follows its
    /// quadratic in F at arbitrary fidelities.
    #[test]
    fn isotropic_info_is_quadratic_in_fidelity(f in 0.0f64..=1.0) {
        let rho = isotropic_state(&IsotropicParams { d: 3, fidelity: f }).unwrap();
        let info = invariant_info_closed(&rho).unwrap().bits;
        let expected = (81.0 * f * f - 18.0 * f + 1.0) / 32.0 * 3f64.log2();
        prop_assert!((info - expected).abs() <= 1e-10);
    }

    /// The pure complementarity identity holds for arbitrary two-qutrit
    /// amplitude vectors.
    #[test]
    fn pure_complementarity_for_arbitrary_amplitudes(
        parts in proptest::collection::vec((-1.0f64..=1.0, -1.0f64..=1.0), 9)
    ) {
        let mut amp = DVector::from_iterator(
            9,
            parts.iter().map(|&(re, im)| Complex64::new(re, im)),
        );
        let norm = amp.norm();
        prop_assume!(norm > 1e-3);
        amp /= Complex64::new(norm, 0.0);
        let psi = PureState::new(amp, &[3, 3]).unwrap();
        prop_assert!(pure_complementarity_residual(&psi).unwrap().abs() <= 1e-9);
    }

    /// The mixed-state defect never goes negative, whatever the seed.
    #[test]
    fn mixed_defect_nonnegative_for_any_seed(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density_matrix(&[d, d], d * d, &mut rng);
        prop_assert!(mixed_complementarity_defect(&rho).unwrap() >= -1e-9);
    }

    /// Purity of any random mixture stays inside [1/D, 1] and the
    /// information inside [0, log2 D].
    #[test]
    fn information_range(seed in any::<u64>(), d in 2usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density_matrix(&[d], 0, &mut rng);
        let purity = rho.purity();
        prop_assert!(purity >= 1.0 / d as f64 - 1e-12);
        prop_assert!(purity <= 1.0 + 1e-12);
        let info = invariant_info_closed(&rho).unwrap().bits;
        prop_assert!(info >= 0.0);
        prop_assert!(info <= (d as f64).log2() + 1e-10);
    }

    /// Field inverses multiply back to one for arbitrary nonzero
    /// elements of every supported field.
    #[test]
    fn field_inverse_roundtrip(index in 1u64..32, which in 0usize..6) {
        let (p, k) = [(2u64, 1usize), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)][which];
        let field = Field::new(p, k).unwrap();
        let a = field.element(index % (field.order() - 1) + 1);
        let inv = a.inv().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), field.one());
    }
}
