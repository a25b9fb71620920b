use hvir_arith::Scalar;
use hvir_core::intermediate::{axiom_residual, box_vectors};
use hvir_core::{
    basis_lemma21, basis_lemma23, cone_membership, normal_form_with, pbw_normal_form, APrime, FamilySpec,
    LatticeBasis, LatticeVector, LieElement, OperatorExpr, Virasoro,
};
use proptest::prelude::*;

fn vector(rank: usize) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-5i64..=5, rank).prop_map(LatticeVector::new)
}

fn coefficient() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Scalar::rational(n, d))
}

fn element(rank: usize) -> impl Strategy<Value = LieElement> {
    (prop::collection::vec((vector(rank), coefficient()), 1..=3), coefficient()).prop_map(|(terms, c)| {
        let mut x = LieElement::central(c);
        for (v, k) in terms {
            x.add_term(v, k);
        }
        x
    })
}

/// Triples biased towards opposite pairs so the central term fires.
fn triple(rank: usize) -> impl Strategy<Value = [LatticeVector; 3]> {
    (vector(rank), vector(rank), vector(rank), 0usize..4).prop_map(|(a, b, c, mode)| match mode {
        0 => [a.clone(), -&a, c],
        1 => [a.clone(), b.clone(), -&(&a + &b)],
        _ => [a, b, c],
    })
}

fn vir(rank: usize) -> Virasoro {
    Virasoro::new(LatticeBasis::standard(rank).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bracket_is_antisymmetric(x in element(2), y in element(2)) {
        let v = vir(2);
        prop_assert!(v.bracket(&x, &y).unwrap().add(&v.bracket(&y, &x).unwrap()).is_zero());
    }

    #[test]
    fn jacobi_rank_two(t in triple(2)) {
        let [a, b, c] = t;
        let j = vir(2).jacobiator(&LieElement::generator(a), &LieElement::generator(b), &LieElement::generator(c)).unwrap();
        prop_assert!(j.is_zero(), "{}", j);
    }

    #[test]
    fn jacobi_rank_three(t in triple(3)) {
        let [a, b, c] = t;
        let j = vir(3).jacobiator(&LieElement::generator(a), &LieElement::generator(b), &LieElement::generator(c)).unwrap();
        prop_assert!(j.is_zero(), "{}", j);
    }

    #[test]
    fn jacobi_on_combinations(x in element(2), y in element(2), z in element(2)) {
        prop_assert!(vir(2).jacobiator(&x, &y, &z).unwrap().is_zero());
    }

    #[test]
    fn bracket_respects_grading(a in vector(3), b in vector(3)) {
        let br = vir(3).bracket_generators(&a, &b);
        let sum = &a + &b;
        prop_assert_eq!(br.graded_component(&sum), br.clone());
        prop_assert!(sum.is_zero() || br.central_part().is_zero());
    }

    #[test]
    fn pbw_form_ignores_rewrite_order(word in prop::collection::vec(-3i64..=3, 2..=4), seed in any::<u64>()) {
        let basis = LatticeBasis::standard(1).unwrap().bind(0, Scalar::one());
        let v = Virasoro::new(basis);
        let e = OperatorExpr::product(word.into_iter().map(|n| OperatorExpr::gen(LatticeVector::new(vec![n]))).collect());
        let mut state = seed;
        let mut choose = |n: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % n
        };
        prop_assert_eq!(pbw_normal_form(&v, &e).unwrap(), normal_form_with(&v, &e.expand(), &mut choose).unwrap());
    }

    #[test]
    fn degree_and_embedding_are_additive(a in vector(3), b in vector(3)) {
        let basis = LatticeBasis::standard(3).unwrap();
        let s = &a + &b;
        prop_assert_eq!(s.deg(), a.deg() + b.deg());
        prop_assert!(basis.embed(&s).sub(&basis.embed(&a)).sub(&basis.embed(&b)).is_zero());
    }

    #[test]
    fn lemma23_is_unimodular(v in vector(3).prop_filter("nonzero", |v| !v.is_zero())) {
        let l = basis_lemma23(&v).unwrap();
        prop_assert!(l.change.is_unimodular());
        prop_assert!(l.change_in_original().is_unimodular());
    }

    #[test]
    fn lemma21_generators_span_the_cone(n in 2usize..=4, k in 0u32..=4, c in prop::collection::vec(0i64..=3, 4)) {
        let change = basis_lemma21(n, k).unwrap();
        prop_assert_eq!(change.determinant(), 1.into());
        let c = LatticeVector::new(c[..n].to_vec());
        prop_assume!(!c.is_zero());
        prop_assert!(cone_membership(&c, &change, k as i64));
    }

    #[test]
    fn series_modules_satisfy_the_axiom(t in triple(2), a in -3i64..=3, b in -3i64..=3) {
        let basis = LatticeBasis::standard(2).unwrap();
        let [mu, nu, lambda] = t;
        let half = Scalar::rational(a, 2);
        for spec in [
            FamilySpec::Aab { a: Scalar::rational(a, 3), b: Scalar::integer(b) },
            FamilySpec::Aprime(APrime::Finite(half.clone())),
            FamilySpec::Bprime(APrime::Finite(half)),
            FamilySpec::Aprime(APrime::Infinity),
            FamilySpec::Bprime(APrime::Infinity),
        ] {
            let r = axiom_residual(&spec, &Virasoro::new(basis.clone()), &mu, &nu, &lambda).unwrap();
            prop_assert!(r.is_empty(), "{} at ({}, {}, {})", spec.name(), mu, nu, lambda);
        }
    }
}

#[test]
fn lemma21_rank_one_determinant_is_k_plus_one() {
    for k in 0..=4u32 {
        assert_eq!(basis_lemma21(1, k).unwrap().determinant(), (k + 1).into());
    }
}

#[test]
fn box_contains_every_point_once() {
    let v = box_vectors(2, 3);
    assert_eq!(v.len(), 49);
    let set: std::collections::BTreeSet<_> = v.iter().cloned().collect();
    assert_eq!(set.len(), 49);
}
