use pifactor_core::factor::{
    factorize_nilpotent, factorize_rank2_euclid, lattice_form, split_elementary,
    verify_factorization, Elementary,
};
use pifactor_core::wavelet::{
    check_biorthogonal, compose_biorthogonal, make_paraunitary, random_unit_vector,
};
use pifactor_core::{random_pair, ConstMatrix, FieldScalar, FieldTag, LPMatrix, LaurentPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tag_strategy() -> impl Strategy<Value = FieldTag> {
    prop_oneof![Just(FieldTag::Rational), Just(FieldTag::GaussianRational)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_round_trip(tag in tag_strategy(), rank in 2usize..=4, n in 0usize..=5, shift in 1i64..=4, seed in any::<u64>()) {
        let pair = random_pair(tag, rank, n, shift, seed).unwrap();
        let fac = factorize_nilpotent(&pair.c).unwrap();
        let rep = verify_factorization(&pair.c, &fac);
        prop_assert!(rep.passed(), "{rep:?}");
        prop_assert_eq!(fac.compose_right(), pair.d);
        prop_assert!(rep.degree_bound_holds());
    }

    #[test]
    fn euclid_round_trip(tag in tag_strategy(), n in 0usize..=5, shift in 1i64..=5, seed in any::<u64>()) {
        let pair = random_pair(tag, 2, n, shift, seed).unwrap();
        let fac = factorize_rank2_euclid(&pair.c).unwrap();
        let rep = verify_factorization(&pair.c, &fac);
        prop_assert!(rep.passed(), "{rep:?}");
        prop_assert!(rep.degree_bound_holds());
    }

    #[test]
    fn lattice_replays(tag in tag_strategy(), rank in 2usize..=4, n in 0usize..=4, seed in any::<u64>()) {
        let pair = random_pair(tag, rank, n, 3, seed).unwrap();
        let lf = lattice_form(&pair.c).unwrap();
        prop_assert_eq!(lf.replay(), pair.c);
        prop_assert!(lf.constant_product().is_identity());
        prop_assert!(lf.diag.is_diagonal());
    }

    /// Splitting `I + f E_ij` yields commuting primitives whose product times
    /// the constant tail gives back the elementary matrix.
    #[test]
    fn split_elementary_recomposes(coeffs in prop::collection::vec(-4i64..=4, 1..6), i in 0usize..3, d in 1usize..3) {
        let tag = FieldTag::Rational;
        let j = (i + d) % 3;
        let e = Elementary { i, j, f: LaurentPoly::from_t_coeffs(tag, &coeffs) };
        let (prims, tail) = split_elementary(&e, 3, tag);
        let prod = prims.iter().fold(LPMatrix::identity(tag, 3), |acc, p| &acc * &p.left());
        prop_assert_eq!(&prod * &LPMatrix::from_const(&tail), e.matrix(3, tag));
        for a in &prims {
            for b in &prims {
                prop_assert_eq!(&a.left() * &b.left(), &b.left() * &a.left());
            }
        }
    }

    #[test]
    fn paraunitary_is_lossless(dim in 2usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = make_paraunitary(random_unit_vector(&mut rng, dim)).unwrap();
        let m = v.matrix();
        prop_assert!((&m * &m.adjoint()).is_identity());
        prop_assert_eq!(m.monomial_det_exponent().unwrap(), (1, FieldScalar::one(FieldTag::Rational)));
    }
}

#[test]
fn identity_g_keeps_haar_pair() {
    use pifactor_core::factor::NilFactorization;
    use pifactor_core::wavelet::WaveletFactorizationBundle;
    let q = FieldTag::Rational;
    let h = ConstMatrix::from_int_rows(q, &[[1, 1], [1, -1]]);
    let bundle = WaveletFactorizationBundle {
        k0: 0,
        paraunitary: vec![],
        nil_factors: NilFactorization::new(2, q, vec![]).unwrap(),
        g: ConstMatrix::identity(q, 1),
        h: h.clone(),
        declared_genus: None,
    };
    let (pair, _) = compose_biorthogonal(&bundle).unwrap();
    assert_eq!(pair.l, LPMatrix::from_const(&h));
    assert!(check_biorthogonal(&pair.l, &pair.r).is_ok());
}
