use proptest::prelude::*;
use skein_core::annulus::{
    build_psi, meridian_eigenvalue, ov_operator_apply, quantum_dimension, AnnulusElement, Factor, Gamma, Notation,
    Orientation, Tag, TaggedCoeff, TensorElement,
};
use skein_core::coefficients::{HalfLaurent, SkeinValue};
use skein_core::combinatorics::{character, Partition};
use skein_core::homfly::{colored_homfly, framing_monomial, BraidWord};
use skein_core::ov::{
    normalize_unknot, offdiagonal_certificate, partition_function, solve_kernel, ConstraintSystem, Link,
};
use skein_core::Error;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn az() -> SkeinValue {
    SkeinValue::from(&HalfLaurent::a() * &HalfLaurent::z())
}

fn tagged(a1: i32, a2: i32, c: SkeinValue) -> TaggedCoeff {
    TaggedCoeff::tagged(Tag::new(a1, a2, 0), c)
}

/// `<W_lambda>` through the character expansion of `s_lambda` and the unknot
/// specialisation `p_n -> (a^n - a^(-n)) / (q^(n/2) - q^(-n/2))`.
fn dimension_from_power_sums(lambda: &Partition) -> SkeinValue {
    let p_n = |n: usize| {
        let n = n as i32;
        SkeinValue::new(
            &HalfLaurent::monomial(1, n, 0) - &HalfLaurent::monomial(1, -n, 0),
            HalfLaurent::q_bracket(n),
        )
        .unwrap()
    };
    Partition::all(lambda.size())
        .iter()
        .map(|mu| {
            let chi = SkeinValue::ratio(character(lambda, mu).unwrap(), mu.z()).unwrap();
            mu.parts().iter().fold(chi, |acc, &r| &acc * &p_n(r))
        })
        .sum()
}

#[test]
fn meridian_examples() {
    let o = SkeinValue::unknot();
    let x = AnnulusElement::basis(Partition::empty()).meridian_apply();
    assert_eq!(x.coeff(&Partition::empty()), o);
    let x = AnnulusElement::basis(p(&[1])).meridian_apply();
    assert_eq!(x.coeff(&p(&[1])), &o + &az());
    let x = AnnulusElement::basis(p(&[2])).meridian_apply();
    let one_plus_q = SkeinValue::from(HalfLaurent::one() + HalfLaurent::monomial(1, 0, 2));
    assert_eq!(x.coeff(&p(&[2])), &o + &(&az() * &one_plus_q));
}

#[test]
fn meridian_is_diagonal_with_distinct_eigenvalues() {
    let parts = Partition::up_to(8);
    let mut seen = std::collections::HashSet::new();
    for l in &parts {
        let image = AnnulusElement::basis(l.clone()).meridian_apply();
        assert_eq!(image.terms().len(), 1, "{l}");
        assert_eq!(image.coeff(l), meridian_eigenvalue(l));
        assert!(seen.insert(meridian_eigenvalue(l)), "repeated eigenvalue at {l}");
    }
}

#[test]
fn evaluation_examples() {
    let o = SkeinValue::unknot();
    assert_eq!(AnnulusElement::basis(Partition::empty()).eval_s3(Orientation::Standard), SkeinValue::one());
    assert_eq!(AnnulusElement::basis(p(&[1])).eval_s3(Orientation::Standard), o);
    let w2 = AnnulusElement::basis(p(&[2])).eval_s3(Orientation::Standard);
    let factor = SkeinValue::new(
        &HalfLaurent::monomial(1, 1, 1) - &HalfLaurent::monomial(1, -1, -1),
        HalfLaurent::q_bracket(2),
    )
    .unwrap();
    assert_eq!(w2, &o * &factor);
}

#[test]
fn dimensions_agree_with_power_sum_specialisation() {
    for l in Partition::up_to(5) {
        assert_eq!(quantum_dimension(&l, Orientation::Standard), dimension_from_power_sums(&l), "{l}");
    }
}

#[test]
fn conjugation_identity() {
    for l in Partition::up_to(8) {
        assert_eq!(
            quantum_dimension(&l.conjugate(), Orientation::Standard),
            quantum_dimension(&l, Orientation::Conjugated),
            "{l}"
        );
    }
}

#[test]
fn operator_examples() {
    let x = ov_operator_apply(&TensorElement::basis(Partition::empty(), Partition::empty()));
    assert!(x.is_zero());

    let x = ov_operator_apply(&TensorElement::basis(p(&[1]), p(&[1])));
    let expected = &tagged(0, 1, az()) - &tagged(1, 0, az());
    assert_eq!(x.coeff(&p(&[1]), &p(&[1])), expected);
    assert!(x.identify().is_zero());

    let x = ov_operator_apply(&TensorElement::basis(p(&[2]), p(&[1, 1])));
    let c2 = SkeinValue::from(p(&[2]).content_polynomial());
    let c11 = SkeinValue::from(p(&[1, 1]).content_polynomial());
    let expected = &tagged(0, 1, &az() * &c2) - &tagged(1, 0, &az() * &c11);
    assert_eq!(x.coeff(&p(&[2]), &p(&[1, 1])), expected);
    assert!(!x.identify().is_zero());
}

#[test]
fn psi_examples() {
    let psi0 = build_psi(0, Gamma::ONE);
    assert_eq!(psi0, TensorElement::basis(Partition::empty(), Partition::empty()));
    let psi1 = build_psi(1, Gamma::Formal);
    assert_eq!(psi1.render(Notation::Unicode), "W_∅⊗W_∅ + γ·W_(1)⊗W_(1)");
    assert_eq!(psi1.render(Notation::Ascii), "W[] (x) W[] + gamma*W[1] (x) W[1]");
    let psi2 = build_psi(2, Gamma::ONE);
    assert_eq!(psi2.terms().len(), 4);
    assert!(psi2.is_diagonal());
    for l in [p(&[2]), p(&[1, 1])] {
        assert_eq!(psi2.coeff(&l, &l), TaggedCoeff::value(SkeinValue::one()));
    }
}

#[test]
fn psi_is_annihilated() {
    for n in 0..=6 {
        assert!(ov_operator_apply(&build_psi(n, Gamma::Formal)).identify().is_zero(), "degree {n}");
    }
}

#[test]
fn kernels_are_diagonal() {
    let dims: Vec<usize> = (0..=4).map(|d| solve_kernel(d).len()).collect();
    assert_eq!(dims, vec![1, 1, 2, 3, 5]);
    for d in 0..=4 {
        assert!(ConstraintSystem::new(d, d).is_diagonal());
        for v in solve_kernel(d) {
            assert_eq!(v.terms().len(), 1);
            assert!(v.is_diagonal());
        }
    }
    let k2: Vec<(Partition, Partition)> = solve_kernel(2).iter().flat_map(|v| v.terms().keys().cloned()).collect();
    assert!(k2.contains(&(p(&[2]), p(&[2]))));
    assert!(k2.contains(&(p(&[1, 1]), p(&[1, 1]))));
}

#[test]
fn offdiagonal_certificates() {
    assert!(offdiagonal_certificate(1).unwrap().is_empty());
    let c2 = offdiagonal_certificate(2).unwrap();
    assert_eq!(c2.len(), 2);
    let first = c2.iter().find(|c| c.lambda == p(&[2])).unwrap();
    assert_eq!(first.content_difference.to_string(), "q - q^(-1)");
    let c3 = offdiagonal_certificate(3).unwrap();
    assert_eq!(c3.len(), 6);
    let e = c3.iter().find(|c| c.lambda == p(&[3]) && c.mu == p(&[2, 1])).unwrap();
    assert_eq!(e.content_difference.to_string(), "q^2 - q^(-1)");
    assert_eq!(e.entry.as_single().unwrap().0, Tag::new(1, 1, 0));
}

#[test]
fn unknot_normalisation() {
    let n1 = normalize_unknot(1).unwrap();
    assert_eq!(n1.coefficients[&Partition::empty()], TaggedCoeff::value(SkeinValue::one()));
    assert_eq!(n1.coefficients[&p(&[1])], Gamma::Formal.power(1));
    let n2 = normalize_unknot(2).unwrap();
    assert_eq!(n2.coefficients[&p(&[2])], Gamma::Formal.power(2));
    assert_eq!(n2.coefficients[&p(&[1, 1])], Gamma::Formal.power(2));

    // closing off the first factor of psi_2 gives sum gamma^|l| <W_l> W_l
    let closed = n2.psi.close_factor(Factor::First, Orientation::Standard);
    for (l, c) in &closed {
        let expected = Gamma::Formal.power(l.size()).scale(&quantum_dimension(l, Orientation::Standard));
        assert_eq!(c, &expected, "{l}");
    }

    let n4 = normalize_unknot(4).unwrap();
    let consistent: Vec<_> = n4.branches.iter().filter(|b| b.consistent).collect();
    assert_eq!(consistent.len(), 1);
    assert_eq!(consistent[0].branch.first, Orientation::Standard);
    assert_eq!(consistent[0].branch.second, Orientation::Standard);
    let both = n4
        .branches
        .iter()
        .find(|b| b.branch.first == Orientation::Conjugated && b.branch.second == Orientation::Conjugated)
        .unwrap();
    assert!(!both.consistent);
    assert!(both.first_non_monomial && both.second_non_monomial);
    assert!(ov_operator_apply(&n4.psi).identify().is_zero());
    assert!(n4.gamma_relation_holds());
    assert!(!n4.gamma_relation.is_zero());
}

#[test]
fn partition_functions() {
    let u = partition_function(Link::Unknot, 3).unwrap();
    assert_eq!(u.coefficients[&p(&[1])].value, SkeinValue::unknot());
    let mut expected = SkeinValue::one();
    for (c, h) in [(0, 3), (1, 1), (-1, 1)] {
        let num = &HalfLaurent::monomial(1, 1, c) - &HalfLaurent::monomial(1, -1, -c);
        expected = &expected * &SkeinValue::new(num, HalfLaurent::q_bracket(h)).unwrap();
    }
    assert_eq!(u.coefficients[&p(&[2, 1])].value, expected);

    let h = partition_function(Link::Hopf, 2).unwrap();
    let l = p(&[2]);
    assert_eq!(
        h.coefficients[&l].value,
        &meridian_eigenvalue(&l) * &quantum_dimension(&l, Orientation::Standard)
    );
    assert!(matches!(partition_function(Link::Hopf, 3), Err(Error::DegreeScope { .. })));
    assert_eq!("trefoil".parse::<Link>(), Err(Error::UnsupportedLink("trefoil".into())));

    let j = u.to_json();
    assert_eq!(j["link"], "unknot");
    assert_eq!(j["truncation"], 3);
    assert_eq!(j["coefficients"][1]["partition"], serde_json::json!([1]));
}

#[test]
fn unknot_partition_function_matches_cabling() {
    let u = partition_function(Link::Unknot, 2).unwrap();
    let b = BraidWord::unknot();
    for l in [p(&[1]), p(&[2]), p(&[1, 1])] {
        let mono = framing_monomial(&b, std::slice::from_ref(&l));
        let cabled = colored_homfly(&b, &l).unwrap().div(&mono).unwrap();
        assert_eq!(u.coefficients[&l].value, cabled, "{l}");
    }
}

#[test]
fn conjugate_symmetry_of_unknot_coefficients() {
    let u = partition_function(Link::Unknot, 6).unwrap();
    for (l, c) in &u.coefficients {
        assert_eq!(u.coefficients[&l.conjugate()].value, quantum_dimension(l, Orientation::Conjugated), "{l}");
        let sign = SkeinValue::integer(if l.size() % 2 == 0 { 1 } else { -1 });
        assert_eq!(c.value.invert_q(), &sign * &quantum_dimension(l, Orientation::Conjugated), "{l}");
    }
}

fn partition_strategy(max: usize) -> impl Strategy<Value = Partition> {
    let all = Partition::up_to(max);
    prop::sample::select(all)
}

fn value_strategy() -> impl Strategy<Value = SkeinValue> {
    (-3i64..=3, -2i32..=2, -3i32..=3).prop_map(|(c, a, q2)| SkeinValue::from(HalfLaurent::monomial(c, a, q2)))
}

fn annulus_strategy() -> impl Strategy<Value = AnnulusElement> {
    prop::collection::vec((partition_strategy(5), value_strategy()), 0..5).prop_map(|ts| {
        let mut x = AnnulusElement::zero();
        for (l, c) in ts {
            x.add_term(l, &c);
        }
        x
    })
}

fn tensor_strategy() -> impl Strategy<Value = TensorElement> {
    prop::collection::vec(
        (partition_strategy(4), partition_strategy(4), value_strategy(), -2i32..=2, -2i32..=2, 0u32..=3),
        0..6,
    )
    .prop_map(|ts| {
        let mut x = TensorElement::zero();
        for (l, m, c, a1, a2, g) in ts {
            x.add_term(l, m, &TaggedCoeff::tagged(Tag::new(a1, a2, g), c));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn meridian_and_evaluation_are_linear(x in annulus_strategy(), y in annulus_strategy(), c in value_strategy()) {
        let sum = &x + &y;
        prop_assert_eq!(sum.meridian_apply(), &x.meridian_apply() + &y.meridian_apply());
        prop_assert_eq!(x.scale(&c).meridian_apply(), x.meridian_apply().scale(&c));
        for o in [Orientation::Standard, Orientation::Conjugated] {
            prop_assert_eq!(sum.eval_s3(o), &x.eval_s3(o) + &y.eval_s3(o));
        }
    }

    #[test]
    fn operator_is_linear(x in tensor_strategy(), y in tensor_strategy()) {
        prop_assert_eq!(ov_operator_apply(&(&x + &y)), &ov_operator_apply(&x) + &ov_operator_apply(&y));
    }

    #[test]
    fn psi_with_monomial_gamma_is_annihilated(n in 0usize..=4, sign in prop::sample::select(vec![1i8, -1]), a1 in -2i32..=2, a2 in -2i32..=2) {
        let psi = build_psi(n, Gamma::Monomial { sign, a1, a2 });
        prop_assert!(ov_operator_apply(&psi).identify().is_zero());
    }

    #[test]
    fn tensor_json_round_trip(x in tensor_strategy()) {
        prop_assert_eq!(TensorElement::from_json(&x.to_json()).unwrap(), x);
    }
}
