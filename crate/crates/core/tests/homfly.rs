use std::collections::HashMap;

use proptest::prelude::*;
use skein_core::annulus::{meridian_eigenvalue, quantum_dimension, Orientation};
use skein_core::coefficients::{HalfLaurent, SkeinValue};
use skein_core::combinatorics::Partition;
use skein_core::homfly::{
    cable, cable_components, colored_evaluation, colored_homfly, colored_homfly_components, homfly,
    homfly_evaluation, label_idempotents, markov_normalize, two_strand_idempotents, BraidWord, CableExpression,
    Engine, EngineOptions, Normalization, ResolutionOrder,
};
use skein_core::Error;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn braid(n: usize, w: &[i32]) -> BraidWord {
    BraidWord::new(n, w.to_vec()).unwrap()
}

fn o() -> SkeinValue {
    SkeinValue::unknot()
}

/// Independent evaluator: the closure functional on the Hecke algebra
/// `T_i^2 = z T_i + 1`, determined by `V(1_n) = O^n`, `V(x T_(n-1)) = a V(x)`
/// for `x` on fewer strands, and `V(xy) = V(yx)`.
mod hecke {
    use super::*;

    /// Permutation basis element, stored as the top strand sitting at each
    /// bottom position.
    type Perm = Vec<u8>;
    pub type Element = HashMap<Perm, SkeinValue>;

    fn add(e: &mut Element, k: Perm, c: SkeinValue) {
        let slot = e.entry(k.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            e.remove(&k);
        }
    }

    pub fn identity(n: usize) -> Element {
        Element::from([((0..n as u8).collect(), SkeinValue::one())])
    }

    pub fn mul_generator(x: &Element, g: i32) -> Element {
        let i = g.unsigned_abs() as usize;
        let z = SkeinValue::z();
        let mut out = Element::new();
        for (perm, c) in x {
            let mut swapped = perm.clone();
            swapped.swap(i - 1, i);
            add(&mut out, swapped, c.clone());
            if perm[i - 1] > perm[i] {
                add(&mut out, perm.clone(), &z * c);
            }
        }
        if g < 0 {
            for (perm, c) in x {
                add(&mut out, perm.clone(), -(&z * c));
            }
        }
        out
    }

    fn reduced_word(perm: &[u8]) -> Vec<i32> {
        let mut at = perm.to_vec();
        let mut word = Vec::new();
        while let Some(i) = (1..at.len()).find(|&i| at[i - 1] > at[i]) {
            at.swap(i - 1, i);
            word.push(i as i32);
        }
        word.reverse();
        word
    }

    pub fn trace(perm: &[u8], memo: &mut HashMap<Perm, SkeinValue>) -> SkeinValue {
        let n = perm.len();
        if n == 0 {
            return SkeinValue::one();
        }
        if let Some(v) = memo.get(perm) {
            return v.clone();
        }
        let top = (n - 1) as u8;
        let pos = perm.iter().position(|&s| s == top).unwrap();
        let rest: Perm = perm.iter().copied().filter(|&s| s != top).collect();
        let value = if pos == n - 1 {
            &o() * &trace(&rest, memo)
        } else {
            // T_w = T_u T_(n-1) T_(n-2) ... T_(pos+1); rotate the tail to the front
            let mut x = identity(n - 1);
            for g in (pos + 1..n - 1).rev() {
                x = mul_generator(&x, g as i32);
            }
            for g in reduced_word(&rest) {
                x = mul_generator(&x, g);
            }
            let inner: SkeinValue = x.iter().map(|(q, c)| c * &trace(q, memo)).sum();
            &SkeinValue::a() * &inner
        };
        memo.insert(perm.to_vec(), value.clone());
        value
    }

    pub fn closure(b: &BraidWord) -> SkeinValue {
        let mut x = identity(b.strands());
        for &g in b.word() {
            x = mul_generator(&x, g);
        }
        let mut memo = HashMap::new();
        x.iter().map(|(perm, c)| c * &trace(perm, &mut memo)).sum()
    }
}

fn braid_strategy(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (1..=max_strands).prop_flat_map(move |n| {
        let letters = if n == 1 {
            Just(Vec::new()).boxed()
        } else {
            let m = n as i32 - 1;
            prop::collection::vec((1..=m, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g }), 0..=max_len)
                .boxed()
        };
        letters.prop_map(move |w| BraidWord::new(n, w).unwrap())
    })
}

#[test]
fn spec_values() {
    assert_eq!(homfly(&BraidWord::unknot()).unwrap(), o());
    assert_eq!(homfly(&braid(2, &[1])).unwrap(), &SkeinValue::a() * &o());
    let hopf = &(&o() * &o()) + &(&(&SkeinValue::z() * &SkeinValue::a()) * &o());
    assert_eq!(homfly(&BraidWord::hopf()).unwrap(), hopf);
    assert_eq!(homfly(&BraidWord::identity(3)).unwrap(), o().pow(3));
}

#[test]
fn trefoil_unframed() {
    let v = homfly_evaluation(&BraidWord::trefoil(), Normalization::Unframed).unwrap();
    let expected: SkeinValue = "a^(-2)*q + a^(-2)*q^(-1) - a^(-4)".parse().unwrap();
    assert_eq!(v.value.div(&o()).unwrap(), expected);
    assert_eq!(v.framing_monomial.to_string(), "a^3");
    let j = v.to_json();
    assert_eq!(j["normalization"], "unframed");
}

#[test]
fn oracle_matches_on_small_links() {
    for b in [
        BraidWord::unknot(),
        BraidWord::hopf(),
        BraidWord::trefoil(),
        braid(3, &[1, -2, 1, -2]),
        braid(3, &[1, 2, 1, 2, 1, 2]),
        braid(4, &[1, 2, 3, 1, 2, 3]),
    ] {
        assert_eq!(homfly(&b).unwrap(), hecke::closure(&b), "{b}");
    }
}

#[test]
fn markov_normalization() {
    assert_eq!(markov_normalize(&braid(2, &[1, -1])).braid, BraidWord::identity(2));
    let n = markov_normalize(&braid(2, &[1]));
    assert_eq!((n.braid, n.a_power), (BraidWord::unknot(), 1));
    let t = BraidWord::trefoil();
    assert_eq!(markov_normalize(&t).braid, t);
}

#[test]
fn reduction_limit_is_reported() {
    let mut e = Engine::new(EngineOptions { node_limit: 3, ..EngineOptions::plain() });
    let b = braid(4, &[1, -2, 3, -1, 2, -3, 1, -2, 3]);
    assert!(matches!(e.evaluate(&b), Err(Error::ReductionLimit { limit: 3 })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agrees_with_hecke_trace(b in braid_strategy(4, 9)) {
        prop_assert_eq!(homfly(&b).unwrap(), hecke::closure(&b));
    }

    #[test]
    fn resolution_order_does_not_matter(b in braid_strategy(4, 8), seed in any::<u64>()) {
        let base = homfly(&b).unwrap();
        let mut plain = Engine::new(EngineOptions { order: ResolutionOrder::Random { seed }, ..EngineOptions::plain() });
        prop_assert_eq!(plain.evaluate(&b).unwrap(), base.clone());
        let mut simp = Engine::new(EngineOptions { order: ResolutionOrder::Random { seed }, ..EngineOptions::default() });
        prop_assert_eq!(simp.evaluate(&b).unwrap(), base);
    }

    #[test]
    fn braid_relations(b in braid_strategy(5, 6), i in 1i32..=3, s in prop::sample::select(vec![1i32, -1]), k in 0usize..=6) {
        prop_assume!(b.strands() >= 4);
        let at = k.min(b.len());
        let splice = |ins: &[i32]| {
            let mut w = b.word().to_vec();
            w.splice(at..at, ins.iter().copied());
            BraidWord::new(b.strands(), w).unwrap()
        };
        let j = if i + 2 < b.strands() as i32 { i + 2 } else { i - 2 };
        if j >= 1 {
            prop_assert_eq!(homfly(&splice(&[s * i, j])).unwrap(), homfly(&splice(&[j, s * i])).unwrap());
        }
        if i + 1 < b.strands() as i32 {
            prop_assert_eq!(
                homfly(&splice(&[s * i, s * (i + 1), s * i])).unwrap(),
                homfly(&splice(&[s * (i + 1), s * i, s * (i + 1)])).unwrap()
            );
        }
    }

    #[test]
    fn conjugation_invariance(b in braid_strategy(4, 7), g in prop::collection::vec(prop::sample::select(vec![1i32, -1, 2, -2, 3, -3]), 0..4)) {
        let g: Vec<i32> = g.into_iter().filter(|x| (x.unsigned_abs() as usize) < b.strands()).collect();
        prop_assert_eq!(homfly(&b.conjugate_by(&g).unwrap()).unwrap(), homfly(&b).unwrap());
    }

    #[test]
    fn stabilization_multiplies_by_a(b in braid_strategy(4, 7)) {
        let v = homfly(&b).unwrap();
        prop_assert_eq!(homfly(&b.stabilize(1)).unwrap(), &SkeinValue::a() * &v);
        prop_assert_eq!(homfly(&b.stabilize(-1)).unwrap(), v.div(&SkeinValue::a()).unwrap());
    }

    #[test]
    fn skein_relation(b in braid_strategy(4, 7), k in 0usize..8, g in 1i32..=3) {
        prop_assume!(b.strands() >= 2);
        let g = (g - 1) % (b.strands() as i32 - 1) + 1;
        let at = k.min(b.len());
        let with = |letter: Option<i32>| {
            let mut w = b.word().to_vec();
            if let Some(l) = letter {
                w.insert(at, l);
            }
            homfly(&BraidWord::new(b.strands(), w).unwrap()).unwrap()
        };
        prop_assert_eq!(&with(Some(g)) - &with(Some(-g)), &SkeinValue::z() * &with(None));
    }

    #[test]
    fn markov_normalize_preserves_value(b in braid_strategy(4, 8)) {
        let n = markov_normalize(&b);
        let shift = SkeinValue::a().pow(n.a_power.unsigned_abs());
        let v = homfly(&n.braid).unwrap();
        let v = if n.a_power >= 0 { &v * &shift } else { v.div(&shift).unwrap() };
        prop_assert_eq!(v, homfly(&b).unwrap());
    }

    #[test]
    fn text_round_trip(b in braid_strategy(5, 8)) {
        prop_assert_eq!(b.to_string().parse::<BraidWord>().unwrap(), b.clone());
        let j = serde_json::to_string(&b).unwrap();
        prop_assert_eq!(j.parse::<BraidWord>().unwrap(), b);
    }
}

#[test]
fn idempotent_algebra() {
    let (plus, minus) = two_strand_idempotents();
    let zero = (SkeinValue::zero(), SkeinValue::zero());
    assert_eq!(plus.add(&minus).unwrap().reduce_two_strand().unwrap(), (SkeinValue::one(), SkeinValue::zero()));
    assert_eq!(plus.compose(&minus).unwrap().reduce_two_strand().unwrap(), zero);
    assert_eq!(
        plus.compose(&plus).unwrap().reduce_two_strand().unwrap(),
        plus.reduce_two_strand().unwrap()
    );
    let sigma = CableExpression::from_braid(&braid(2, &[1]));
    let (c0, c1) = sigma.compose(&plus).unwrap().reduce_two_strand().unwrap();
    let (p0, p1) = plus.reduce_two_strand().unwrap();
    let qh = SkeinValue::from(HalfLaurent::q_half());
    assert_eq!((c0, c1), (&qh * &p0, &qh * &p1));
    let (c0, c1) = sigma.compose(&minus).unwrap().reduce_two_strand().unwrap();
    let (m0, m1) = minus.reduce_two_strand().unwrap();
    let eig = -SkeinValue::from(HalfLaurent::q_pow_half(-1));
    assert_eq!((c0, c1), (&eig * &m0, &eig * &m1));
}

#[test]
fn idempotent_labels() {
    let labels = label_idempotents().unwrap();
    let (plus, minus) = two_strand_idempotents();
    assert_eq!(labels.len(), 2);
    assert_eq!(labels[&p(&[2])], plus);
    assert_eq!(labels[&p(&[1, 1])], minus);
}

#[test]
fn cabled_unknots() {
    let u = BraidWord::unknot();
    assert_eq!(cable(&u, &CableExpression::single_strand()).unwrap(), o());
    assert_eq!(cable(&u, &CableExpression::identity(2)).unwrap(), o().pow(2));
    let (plus, minus) = two_strand_idempotents();
    let d2 = quantum_dimension(&p(&[2]), Orientation::Standard);
    let d11 = quantum_dimension(&p(&[1, 1]), Orientation::Standard);
    let vp = cable(&u, &plus).unwrap();
    let vm = cable(&u, &minus).unwrap();
    assert_eq!(vp, d2);
    assert_eq!(vm, d11);
    assert_eq!(&vp * &vm, &d2 * &d11);
    assert_eq!(&vp + &vm, o().pow(2));
    assert_eq!(colored_homfly(&u, &p(&[1])).unwrap(), o());
    assert_eq!(colored_homfly(&u, &p(&[2])).unwrap(), d2);
    assert_eq!(colored_homfly(&u, &p(&[3])), Err(Error::ColorScope(3)));
}

#[test]
fn hopf_meridian_eigenvalue() {
    let h = BraidWord::hopf();
    for lambda in [p(&[2]), p(&[1, 1])] {
        let v = colored_homfly_components(&h, &[lambda.clone(), p(&[1])]).unwrap();
        let expected = &meridian_eigenvalue(&lambda) * &quantum_dimension(&lambda, Orientation::Standard);
        assert_eq!(v, expected, "{lambda}");
    }
}

#[test]
fn cabling_a_kinked_unknot_reports_the_twist() {
    let kinked = braid(2, &[1]);
    for lambda in [p(&[1]), p(&[2]), p(&[1, 1])] {
        let e = colored_evaluation(&kinked, &lambda, Normalization::Unframed).unwrap();
        assert_eq!(e.value, quantum_dimension(&lambda, Orientation::Standard), "{lambda}");
        let framed = colored_evaluation(&kinked, &lambda, Normalization::Framed).unwrap();
        assert_eq!(framed.value, &e.value * &e.framing_monomial);
    }
}

#[test]
fn cabling_matches_direct_evaluation() {
    // the 2-cable of the Hopf link with identity patterns is a 4-strand braid
    let h = BraidWord::hopf();
    let direct = homfly(&braid(4, &[2, 1, 3, 2, 2, 1, 3, 2])).unwrap();
    assert_eq!(cable(&h, &CableExpression::identity(2)).unwrap(), direct);
    let deleted = cable_components(&h, &[CableExpression::single_strand(), CableExpression::empty()]).unwrap();
    assert_eq!(deleted, o());
}
