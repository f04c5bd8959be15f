use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::Rational;
use crate::classes::{ClassSpace, PowerClass, SubgroupSpec};
use crate::error::Error;
use crate::places::{FunctionField, RationalPlace, Rationals};

fn q(s: &str) -> Rational {
    Rationals.parse_elem(s).unwrap()
}

fn qspace(l: u128, p: u64) -> Arc<ClassSpace<Rationals>> {
    Arc::new(ClassSpace::new(Rationals, RationalPlace::Prime(l), p).unwrap())
}

fn qspec(l: u128, p: u64, basis: &[Vec<u64>]) -> SubgroupSpec<Rationals> {
    SubgroupSpec::new(qspace(l, p), basis).unwrap()
}

fn canonical_q5() -> ValuationOracle<Rationals> {
    let h = HChoice::from_vector(qspec(5, 2, &[]), &[0, 1]).unwrap();
    ValuationOracle::build(h, 100, 16).unwrap()
}

fn f7t_spec(p: u64, basis: &[Vec<u64>]) -> SubgroupSpec<FunctionField> {
    let field = FunctionField::with_size(7).unwrap();
    let place = field.parse_place("t").unwrap();
    SubgroupSpec::new(Arc::new(ClassSpace::new(field, place, p).unwrap()), basis).unwrap()
}

#[test]
fn hypothesis_a_examples() {
    assert!(check_hypothesis_a(&qspec(5, 2, &[])).unwrap().holds());
    assert!(check_hypothesis_a(&qspec(5, 2, &[vec![0, 1]])).unwrap().holds());
    assert!(check_hypothesis_a(&qspec(5, 2, &[vec![1, 0]])).unwrap().holds());
}

#[test]
fn hypothesis_b_examples() {
    assert!(check_hypothesis_b(&qspec(5, 2, &[])).unwrap().holds());
    assert!(check_hypothesis_b(&qspec(5, 2, &[vec![1, 0], vec![0, 1]])).unwrap().holds());
    assert!(check_hypothesis_b(&qspec(7, 3, &[])).unwrap().holds());
}

#[test]
fn small_quotient_is_flagged() {
    let spec = qspec(7, 5, &[]);
    assert_eq!(check_hypothesis_a(&spec).unwrap(), HypothesisOutcome::QuotientTooSmall);
    assert_eq!(check_hypothesis_b(&spec).unwrap(), HypothesisOutcome::QuotientTooSmall);
}

#[test]
fn hypothesis_a_with_minus_one_in_tbar() {
    // -1 is not a square mod 7, so T-bar has to contain its class.
    let spec = qspec(7, 2, &[vec![0, 1]]);
    assert!(check_hypothesis_a(&spec).unwrap().holds());
    assert!(SubgroupSpec::new(qspace(7, 2), &[]).is_err());
}

#[test]
fn hypotheses_are_lift_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (l, p) in [(5u128, 2u64), (13, 2), (7, 3), (13, 3), (11, 5)] {
        for basis in [vec![], vec![vec![0, 1]], vec![vec![1, 0]]] {
            let Ok(spec) = SubgroupSpec::new(qspace(l, p), &basis) else { continue };
            let space = spec.space();
            let ones: Vec<Rational> = (0..200)
                .map(|_| Rationals.random_element(&mut rng, 400))
                .filter(|x| space.class_of(x).map(|c| c.is_zero()).unwrap_or(false))
                .take(8)
                .collect();
            assert!(!ones.is_empty());
            let pick = |c: &PowerClass| {
                let i = c.0.iter().sum::<u64>() as usize % ones.len();
                Rationals.mul(&space.lift(c), &ones[i])
            };
            assert_eq!(
                check_hypothesis_a_with(&spec, pick).unwrap(),
                check_hypothesis_a(&spec).unwrap()
            );
            assert_eq!(
                check_hypothesis_b_with(&spec, pick).unwrap(),
                check_hypothesis_b(&spec).unwrap()
            );
        }
    }
}

#[test]
fn enumerate_h_examples() {
    assert_eq!(enumerate_h(&qspec(5, 2, &[])).unwrap().len(), 3);
    assert_eq!(enumerate_h(&qspec(5, 2, &[vec![0, 1]])).unwrap().len(), 1);
    assert_eq!(enumerate_h(&qspec(7, 3, &[])).unwrap().len(), 4);
    assert_eq!(
        enumerate_h(&qspec(5, 2, &[vec![1, 0], vec![0, 1]])).unwrap_err(),
        Error::NoProperH
    );
    for h in enumerate_h(&qspec(13, 3, &[])).unwrap() {
        assert_eq!(h.w().dim(), 1);
    }
}

#[test]
fn hchoice_rejects_bad_w() {
    let spec = qspec(5, 2, &[vec![0, 1]]);
    assert!(HChoice::from_vector(spec.clone(), &[0, 1]).is_err());
    assert!(HChoice::from_vector(spec, &[1]).is_err());
}

#[test]
fn o_minus_examples() {
    let h = HChoice::from_vector(qspec(5, 2, &[]), &[0, 1]).unwrap();
    assert!(in_o_minus(&h, &q("5")).unwrap());
    assert!(!in_o_minus(&h, &q("1/5")).unwrap());
    assert!(in_o_minus(&h, &q("10")).unwrap());
    assert!(matches!(in_o_minus(&h, &q("0")), Err(Error::Domain(_))));
    assert!(matches!(in_o_minus(&h, &q("1")), Err(Error::Domain(_))));
}

#[test]
fn o_plus_examples() {
    let oracle = canonical_q5();
    assert_eq!(oracle.witnesses().len(), 16);
    let a = oracle.in_o_plus(&q("1/25")).unwrap();
    assert!(!a.member && !a.sampled);
    assert_eq!(a.witness, Some(q("5")));
    let one = oracle.in_o_plus(&q("1")).unwrap();
    assert!(one.member);
    let two = oracle.in_o_plus(&q("2")).unwrap();
    assert!(two.member && two.sampled && !two.degenerate);
}

#[test]
fn o_examples() {
    let oracle = canonical_q5();
    assert!(oracle.in_o(&q("0")).unwrap());
    assert!(oracle.in_o(&q("1")).unwrap());
    assert!(oracle.in_o(&q("7/3")).unwrap());
    assert!(!oracle.in_o(&q("3/5")).unwrap());
    assert!(oracle.in_o(&q("2")).unwrap() && oracle.in_o(&q("1/2")).unwrap());
}

#[test]
fn witnesses_lie_in_o_minus() {
    let oracle = canonical_q5();
    for y in oracle.witnesses() {
        assert!(oracle.in_o_minus(y).unwrap());
    }
    let h = oracle.h().clone();
    assert!(ValuationOracle::with_witnesses(h, vec![q("1/5")]).is_err());
}

#[test]
fn larger_witness_sets_never_flip_false_to_true() {
    let big = canonical_q5();
    let small = ValuationOracle::with_witnesses(big.h().clone(), big.witnesses()[..3].to_vec()).unwrap();
    for x in Rationals.elements_up_to(40) {
        if Rationals.is_one(&x) {
            continue;
        }
        let s = small.in_o_plus(&x).unwrap();
        let b = big.in_o_plus(&x).unwrap();
        if !s.member {
            assert!(!b.member, "{x}");
        }
    }
}

#[test]
fn classify_q5() {
    let oracle = canonical_q5();
    let candidates: Vec<_> = [2u128, 3, 5, 7].into_iter().map(RationalPlace::Prime).collect();
    let samples = Rationals.elements_up_to(200);
    let c = classify_valuation(&oracle, &candidates, &samples).unwrap();
    assert_eq!(c.matched, Some(RationalPlace::Prime(5)));
    let Classification::Matches { place, sampled, candidates, .. } = c.outcome else {
        panic!("expected a match")
    };
    assert_eq!(place, "Q:5");
    assert!(sampled);
    for r in candidates.iter().filter(|r| r.place != "Q:5") {
        assert!(r.disagreements > 0 && !r.witnesses.is_empty());
    }
}

#[test]
fn classify_rejects_real_candidate() {
    let oracle = canonical_q5();
    let samples = Rationals.elements_up_to(5);
    assert_eq!(
        classify_valuation(&oracle, &[RationalPlace::Real], &samples).unwrap_err(),
        Error::Archimedean
    );
}

#[test]
fn classify_f7t() {
    let spec = f7t_spec(3, &[]);
    let field = spec.space().field().clone();
    let h = HChoice::from_vector(spec, &[0, 1]).unwrap();
    let oracle = ValuationOracle::build(h, 2, 16).unwrap();
    let candidates = field.first_places(4);
    let samples = field.elements_up_to(2);
    let c = classify_valuation(&oracle, &candidates, &samples).unwrap();
    assert_eq!(c.matched, Some(field.parse_place("t").unwrap()));
}

#[test]
fn degenerate_construction_is_refused() {
    // -1 is a non-square mod 7, so T-bar contains its class and H = E*.
    let spec = f7t_spec(2, &[vec![0, 1]]);
    let hs = enumerate_h(&spec).unwrap();
    assert_eq!(hs.len(), 1);
    let oracle = ValuationOracle::build(hs[0].clone(), 2, 16).unwrap();
    assert!(oracle.is_degenerate());
    assert!(oracle.in_o_plus(&spec.space().field().t()).unwrap().degenerate);
    let field = spec.space().field();
    let samples = field.elements_up_to(1);
    let c = classify_valuation(&oracle, &field.first_places(2), &samples).unwrap();
    assert!(matches!(c.outcome, Classification::Refused { .. }));
    assert!(c.matched.is_none());
}

#[test]
fn axioms_hold_for_q5() {
    let oracle = canonical_q5();
    let budget = AxiomBudget {
        unary_height: 100,
        pair_height: 12,
        random_pairs: 500,
        random_height: 100,
        seed: 3,
    };
    let report = valuation_axiom_test(&oracle, budget).unwrap();
    assert!(report.clean(), "{:?}", report.examples);
    assert!(report.pairs_checked > 0 && report.random_pairs_checked > 0);
}

#[test]
fn swapped_h_is_not_a_valuation_ring() {
    let h = HChoice::from_vector(qspec(5, 2, &[]), &[1, 0]).unwrap();
    let oracle = ValuationOracle::build(h, 100, 16).unwrap();
    let budget = AxiomBudget {
        unary_height: 30,
        pair_height: 10,
        random_pairs: 0,
        random_height: 0,
        seed: 0,
    };
    let report = valuation_axiom_test(&oracle, budget).unwrap();
    assert!(oracle.is_degenerate() || !report.clean());
}

#[test]
fn conclusion_examples() {
    let r = verify_conclusions(&qspec(5, 2, &[]), &Valuation::Place(RationalPlace::Prime(5))).unwrap();
    assert!(r.residue_char_ok && r.inequality_ok && r.all_hold);
    assert_eq!((r.value_group_dim, r.codim_t), (1, 2));
    assert_eq!(r.dichotomy, Dichotomy::ResidueImperfect);

    let r = verify_conclusions(&qspec(5, 2, &[vec![0, 1]]), &Valuation::Place(RationalPlace::Prime(5))).unwrap();
    assert_eq!(r.dichotomy, Dichotomy::FullDimension);
    assert!(r.all_hold);

    let spec = f7t_spec(3, &[]);
    let t = spec.space().place().clone();
    let r = verify_conclusions(&spec, &Valuation::Place(t)).unwrap();
    assert!(r.all_hold);
    assert_eq!(r.residue_characteristic, 7);
    assert_eq!(r.dichotomy, Dichotomy::ResidueImperfect);

    let r = verify_conclusions(&qspec(5, 2, &[vec![0, 1]]), &Valuation::Trivial).unwrap();
    assert_eq!((r.value_group_dim, r.residue_characteristic), (0, 0));
    assert_eq!(r.dichotomy, Dichotomy::ResidueImperfect);
    assert!(r.all_hold);
}

#[test]
fn conclusion_flags_perfect_residue_field() {
    // Evaluated at places other than the model's own to reach every branch.
    let spec = qspec(5, 2, &[]);
    let r = verify_conclusions(&spec, &Valuation::Place(RationalPlace::Prime(7))).unwrap();
    assert_eq!(r.dichotomy, Dichotomy::ResidueImperfect);
    let spec = qspec(7, 3, &[]);
    let r = verify_conclusions(&spec, &Valuation::Place(RationalPlace::Prime(5))).unwrap();
    assert_eq!(r.dichotomy, Dichotomy::Violation);
    assert!(!r.all_hold);
    let r = verify_conclusions(&spec, &Valuation::Place(RationalPlace::Prime(3))).unwrap();
    assert!(!r.residue_char_ok);
}

#[test]
fn global_search_over_q() {
    let spec = qspec(5, 2, &[]);
    let out = global_counterexample_search(&spec, 50, 1_000_000).unwrap();
    // -1 is a square mod 5 but not in Q*^2, and {2, -1} = {2, 1 - 2} = 0.
    assert_eq!(out.found(), Some(("2", "-1")));
    let SearchOutcome::Found { hypothesis, certificate, .. } = out else { unreachable!() };
    assert_eq!(hypothesis, ViolatedHypothesis::A);
    assert!(certificate.vanishes);
    assert_eq!(certificate.places(), vec!["Q:2", "Q:inf"]);
}

#[test]
fn global_search_none_and_budget() {
    let spec = qspec(5, 2, &[]);
    assert!(matches!(
        global_counterexample_search(&spec, 1, 1000).unwrap(),
        SearchOutcome::NoneFound { elements: 2, .. }
    ));
    assert!(matches!(
        global_counterexample_search(&spec, 50, 0).unwrap(),
        SearchOutcome::BudgetExhausted { .. }
    ));
}

#[test]
fn global_search_over_f7t() {
    let spec = f7t_spec(2, &[vec![0, 1]]);
    let out = global_counterexample_search(&spec, 3, 100_000).unwrap();
    let SearchOutcome::Found { y, certificate, .. } = &out else { panic!("{out:?}") };
    assert!(certificate.vanishes);
    let field = spec.space().field();
    let y = field.parse_elem(y).unwrap();
    assert!(spec.contains(&y).unwrap());
}

#[test]
fn sample_elements_is_deterministic() {
    let a = sample_elements(&Rationals, 10, 50, 1000, 9);
    let b = sample_elements(&Rationals, 10, 50, 1000, 9);
    assert_eq!(a, b);
    assert_eq!(a.len(), Rationals.elements_up_to(10).len() + 50);
}
