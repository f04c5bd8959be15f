use serde::Serialize;

use crate::classes::{PowerClass, SubgroupSpec};
use crate::error::Result;
use crate::places::GlobalField;
use crate::symbols::element_pairing;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HypothesisOutcome {
    Holds,
    Counterexample { x: PowerClass, y: PowerClass },
    /// `d = 1`: the pairing is identically zero and the model is too small.
    QuotientTooSmall,
}

impl HypothesisOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, HypothesisOutcome::Holds)
    }
}

fn search<F, L, P>(spec: &SubgroupSpec<F>, lift: L, pred: P) -> Result<HypothesisOutcome>
where
    F: GlobalField,
    L: Fn(&PowerClass) -> F::Elem,
    P: Fn(&PowerClass, &PowerClass) -> bool,
{
    let v = spec.space();
    if v.dim() < 2 {
        return Ok(HypothesisOutcome::QuotientTooSmall);
    }
    let classes = v.classes();
    for x in &classes {
        for y in &classes {
            if !pred(x, y) {
                continue;
            }
            if element_pairing(v, &lift(x), &lift(y))? == 0 {
                return Ok(HypothesisOutcome::Counterexample {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
    }
    Ok(HypothesisOutcome::Holds)
}

/// Hypothesis (a) on the local model: the pairing is nonzero on every
/// `x ∉ T-bar` against every nonzero `y ∈ T-bar`.
pub fn check_hypothesis_a<F: GlobalField>(spec: &SubgroupSpec<F>) -> Result<HypothesisOutcome> {
    check_hypothesis_a_with(spec, |c| spec.space().lift(c))
}

/// Hypothesis (b) on the local model: the pairing is nonzero on every
/// pair independent modulo `T-bar`.
pub fn check_hypothesis_b<F: GlobalField>(spec: &SubgroupSpec<F>) -> Result<HypothesisOutcome> {
    check_hypothesis_b_with(spec, |c| spec.space().lift(c))
}

/// As [`check_hypothesis_a`] with caller-chosen class representatives.
pub fn check_hypothesis_a_with<F: GlobalField>(
    spec: &SubgroupSpec<F>,
    lift: impl Fn(&PowerClass) -> F::Elem,
) -> Result<HypothesisOutcome> {
    search(spec, lift, |x, y| {
        !spec.contains_class(x) && !y.is_zero() && spec.contains_class(y)
    })
}

pub fn check_hypothesis_b_with<F: GlobalField>(
    spec: &SubgroupSpec<F>,
    lift: impl Fn(&PowerClass) -> F::Elem,
) -> Result<HypothesisOutcome> {
    search(spec, lift, |x, y| spec.tbar().independent_mod(&x.0, &y.0))
}
