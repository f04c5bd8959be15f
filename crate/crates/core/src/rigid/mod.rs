//! The rigid-element construction of a valuation ring from a subgroup `T`.

mod axioms;
mod classify;
mod conclusions;
mod hchoice;
mod hypotheses;
mod oracle;
mod search;

pub use axioms::{valuation_axiom_test, Axiom, AxiomBudget, AxiomReport, AxiomViolation};
pub use classify::{
    classify_valuation, compare_with_place, membership, CandidateResult, Classification, Classified,
    Disagreement,
};
pub use conclusions::{verify_conclusions, ConclusionReport, Dichotomy, Valuation};
pub use hchoice::{enumerate_h, HChoice};
pub use hypotheses::{
    check_hypothesis_a, check_hypothesis_a_with, check_hypothesis_b, check_hypothesis_b_with,
    HypothesisOutcome,
};
pub use oracle::{in_o_minus, OracleSummary, PlusAnswer, ValuationOracle};
pub use search::{global_counterexample_search, SearchOutcome, ViolatedHypothesis};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::places::GlobalField;

/// Every element up to `height` in canonical order, then `random` seeded
/// elements of height at most `random_height`.
pub fn sample_elements<F: GlobalField>(
    field: &F,
    height: u64,
    random: usize,
    random_height: u64,
    seed: u64,
) -> Vec<F::Elem> {
    let mut out = field.elements_up_to(height);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..random).map(|_| field.random_element(&mut rng, random_height)));
    out
}

#[cfg(test)]
mod tests;
