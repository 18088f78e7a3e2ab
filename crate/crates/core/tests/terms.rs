mod common;

use common::*;
use corel::normalform::{decide_equal, synth, synth_rel, Decidable};
use corel::semantics::{eval_in, AnyArrow, Target};
use corel::syntax::{format_term, parse_term};
use corel::theory::{random_term, random_term_from, PresetTheory, Signature, Term, Theory};
use corel::{Corelation, Prop};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corel_of(t: &Term) -> Corelation {
    match eval_in(t, Target::Corel).unwrap() {
        AnyArrow::Corel(c) => c,
        other => panic!("expected a corelation, got {other}"),
    }
}

fn transpose(c: &Corelation) -> Corelation {
    let (n, m) = (c.dom(), c.cod());
    let blocks: Vec<Vec<usize>> = c
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&x| if x < n { m + x } else { x - n })
                .collect()
        })
        .collect();
    Corelation::from_blocks(m, n, blocks).unwrap()
}

proptest! {
    #[test]
    fn format_then_parse_is_identity(seed: u64, size in 1usize..40) {
        let t = random_term(&Signature::frobenius(), size, seed);
        prop_assert_eq!(parse_term(&format_term(&t)).unwrap(), t);
    }

    #[test]
    fn structural_noise_does_not_change_meaning(seed: u64, size in 1usize..30) {
        let sig = Signature::frobenius();
        let t = random_term(&sig, size, seed);
        let variant = structural_variant(&t, &mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        prop_assert_eq!(variant.typecheck(&sig).unwrap(), t.typecheck(&sig).unwrap());
        for target in Target::ALL {
            prop_assert_eq!(eval_in(&variant, target).unwrap(), eval_in(&t, target).unwrap());
        }
    }

    #[test]
    fn evaluation_is_functorial(seed: u64) {
        let sig = Signature::frobenius();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dom = rng.gen_range(0..4);
        let a = random_term_from(&sig, dom, 12, &mut rng);
        let (_, mid) = a.typecheck(&sig).unwrap();
        let b = random_term_from(&sig, mid, 12, &mut rng);
        let seq = corel_of(&Term::seq(a.clone(), b.clone()));
        prop_assert_eq!(seq, corel_of(&a).then(&corel_of(&b)).unwrap());
        let par = corel_of(&Term::tensor(a.clone(), b.clone()));
        prop_assert_eq!(par, corel_of(&a).tensor(&corel_of(&b)));
    }

    #[test]
    fn quotient_squares_commute(seed: u64, size in 1usize..30) {
        let t = random_term(&Signature::frobenius(), size, seed);
        let (AnyArrow::Cospan(cs), AnyArrow::Corel(c)) =
            (eval_in(&t, Target::Cospan).unwrap(), eval_in(&t, Target::Corel).unwrap()) else { unreachable!() };
        prop_assert_eq!(cs.corestrict(), c);
        let (AnyArrow::Span(s), AnyArrow::Rel(r)) =
            (eval_in(&t, Target::Span).unwrap(), eval_in(&t, Target::Rel).unwrap()) else { unreachable!() };
        prop_assert_eq!(s.support(), r);
    }

    #[test]
    fn mirror_image_evaluates_to_transpose(seed: u64, size in 1usize..30) {
        let t = random_term(&Signature::frobenius(), size, seed);
        prop_assert_eq!(corel_of(&mirror(&t)), transpose(&corel_of(&t)));
    }

    #[test]
    fn synthesis_inverts_evaluation(seed: u64, n in 0usize..5, m in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_corelation(&mut rng, n, m);
        prop_assert_eq!(corel_of(&synth(&c)), c);
        let r = random_relation(&mut rng, n, m);
        prop_assert_eq!(eval_in(&synth_rel(&r), Target::Rel).unwrap(), AnyArrow::Rel(r));
    }

    #[test]
    fn equations_hold_in_any_context(seed: u64, size in 1usize..20) {
        let sig = Signature::frobenius();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (which, decider) in [(PresetTheory::Escfm, Decidable::Escfm), (PresetTheory::Sbb, Decidable::Sbb)] {
            let theory = Theory::preset(which);
            let eq = &theory.equations[rng.gen_range(0..theory.equations.len())];
            let ty = eq.lhs.typecheck(&sig).unwrap();
            let sub = random_term(&sig, size, rng.gen());
            let (_, k) = sub.typecheck(&sig).unwrap();
            let mut side_rng = rng.clone();
            let left = wrap_with_side(sub.clone(), k, eq.lhs.clone(), ty, &mut rng);
            let right = wrap_with_side(sub, k, eq.rhs.clone(), ty, &mut side_rng);
            prop_assert!(decide_equal(&left, &right, decider).unwrap().equal, "{}", eq.name);
        }
    }
}

#[test]
fn decision_separates_the_two_theories() {
    let special = parse_term("delta ; mu").unwrap();
    let bimonoid = Theory::preset(PresetTheory::Bb);
    let law = bimonoid.equation("bimonoid-unit").unwrap();
    assert!(
        decide_equal(&special, &Term::Id(1), Decidable::Escfm)
            .unwrap()
            .equal
    );
    assert!(
        decide_equal(&special, &Term::Id(1), Decidable::Sbb)
            .unwrap()
            .equal
    );
    assert!(
        !decide_equal(&law.lhs, &law.rhs, Decidable::Escfm)
            .unwrap()
            .equal
    );
    assert!(
        decide_equal(&law.lhs, &law.rhs, Decidable::Sbb)
            .unwrap()
            .equal
    );
    let frob = Theory::preset(PresetTheory::Scfm);
    let law = frob.equation("frobenius-left").unwrap();
    assert!(
        decide_equal(&law.lhs, &law.rhs, Decidable::Escfm)
            .unwrap()
            .equal
    );
    assert!(
        !decide_equal(&law.lhs, &law.rhs, Decidable::Sbb)
            .unwrap()
            .equal
    );
}

#[test]
fn incomparable_terms_are_rejected() {
    let err = decide_equal(&Term::gen("mu"), &Term::Id(1), Decidable::Escfm).unwrap_err();
    assert!(err.to_string().contains("2 -> 1 and 1 -> 1"), "{err}");
}
