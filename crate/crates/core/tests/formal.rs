use horace_core::exactlin::PrimeField;
use horace_core::formal::{
    build_member, check_coefficient_membership, check_slicing, formula_mismatch, inject_violation,
    random_deformation, CorpusParams, Deformation, FormalError,
};
use horace_core::schemes::VgModel;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn members_satisfy_the_layer_bounds(seed in any::<u64>(), n_vars in 1usize..3) {
        let params = CorpusParams { n_vars, ..CorpusParams::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (def, _) = random_deformation(&mut rng, &params, None).unwrap();
        let f = build_member(&def).unwrap();
        prop_assert!(check_coefficient_membership(&f, def.model(), def.rate()));
        prop_assert_eq!(formula_mismatch(&def, &f), None);
        let field = PrimeField::new(params.prime).unwrap();
        if let Some(bad) = inject_violation(&mut rng, &field, &f, def.model(), def.rate()) {
            prop_assert!(!check_coefficient_membership(&bad, def.model(), def.rate()));
        }
    }

    #[test]
    fn forced_slicing_holds(seed in any::<u64>(), p in 0u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (def, used) = random_deformation(&mut rng, &CorpusParams::default(), Some(p)).unwrap();
        let f = build_member(&def).unwrap();
        prop_assert_eq!(check_slicing(&f, def.model(), def.rate(), used.unwrap()), Ok(true));
    }

    #[test]
    fn small_characteristic(seed in any::<u64>()) {
        let params = CorpusParams { prime: 3, ..CorpusParams::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (def, _) = random_deformation(&mut rng, &params, Some(2)).unwrap();
        let f = build_member(&def).unwrap();
        prop_assert!(check_coefficient_membership(&f, def.model(), def.rate()));
        prop_assert_eq!(formula_mismatch(&def, &f), None);
        match check_slicing(&f, def.model(), def.rate(), 0) {
            Ok(ok) => prop_assert!(ok),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn truncation_too_small_is_reported() {
    let def = Deformation::new(VgModel::fat_point(1, 2), 2, 3, 1_000_003, vec![]).unwrap();
    assert_eq!(
        build_member(&def),
        Err(FormalError::TruncationTooSmall {
            trunc: 3,
            needed: 4
        })
    );
    let def = Deformation::new(VgModel::fat_point(1, 2), 2, 4, 1_000_003, vec![]).unwrap();
    let f = build_member(&def).unwrap();
    assert!(matches!(
        check_slicing(&f, def.model(), 2, 3),
        Err(FormalError::TruncationTooSmall { .. })
    ));
}
