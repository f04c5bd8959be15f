use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::oracle::ValuationOracle;
use crate::error::Result;
use crate::places::GlobalField;

const MAX_EXAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomBudget {
    /// `x ∈ O or 1/x ∈ O` for every `x` up to this height.
    pub unary_height: u64,
    /// All pairs of members up to this height.
    pub pair_height: u64,
    /// Seeded random pairs of height up to `random_height`.
    pub random_pairs: usize,
    pub random_height: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Inverse,
    Sum,
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub x: String,
    pub y: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub budget: AxiomBudget,
    pub unary_checked: usize,
    pub pairs_checked: usize,
    pub random_pairs_checked: usize,
    pub violations: usize,
    pub examples: Vec<AxiomViolation>,
    pub sampled: bool,
}

impl AxiomReport {
    pub fn clean(&self) -> bool {
        self.violations == 0
    }
}

fn check_pair<F: GlobalField>(
    oracle: &ValuationOracle<F>,
    x: &F::Elem,
    y: &F::Elem,
) -> Result<Vec<AxiomViolation>> {
    let field = oracle.field();
    let mut out = Vec::new();
    let mut record = |axiom| {
        out.push(AxiomViolation {
            axiom,
            x: x.to_string(),
            y: Some(y.to_string()),
        })
    };
    if !oracle.in_o(&field.add(x, y))? {
        record(Axiom::Sum);
    }
    if !oracle.in_o(&field.mul(x, y))? {
        record(Axiom::Product);
    }
    Ok(out)
}

/// Checks that `O` is closed under sums and products and that every
/// nonzero `x` has `x` or `1/x` in `O`.
pub fn valuation_axiom_test<F: GlobalField>(
    oracle: &ValuationOracle<F>,
    budget: AxiomBudget,
) -> Result<AxiomReport> {
    let field = oracle.field();
    let mut violations: Vec<AxiomViolation> = Vec::new();

    let unary = field.elements_up_to(budget.unary_height);
    let unary_found: Vec<Option<AxiomViolation>> = unary
        .par_iter()
        .map(|x| -> Result<_> {
            let ok = oracle.in_o(x)? || oracle.in_o(&field.inv(x)?)?;
            Ok((!ok).then(|| AxiomViolation {
                axiom: Axiom::Inverse,
                x: x.to_string(),
                y: None,
            }))
        })
        .collect::<Result<_>>()?;
    violations.extend(unary_found.into_iter().flatten());

    let small = field.elements_up_to(budget.pair_height);
    let small_in = small
        .par_iter()
        .map(|x| oracle.in_o(x))
        .collect::<Result<Vec<bool>>>()?;
    let members: Vec<&F::Elem> = small.iter().zip(&small_in).filter(|(_, &m)| m).map(|(x, _)| x).collect();
    let pair_found: Vec<Vec<AxiomViolation>> = (0..members.len())
        .into_par_iter()
        .map(|i| -> Result<_> {
            let mut out = Vec::new();
            for y in &members[i..] {
                out.extend(check_pair(oracle, members[i], y)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    violations.extend(pair_found.into_iter().flatten());
    let pairs_checked = members.len() * (members.len() + 1) / 2;

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let drawn: Vec<(F::Elem, F::Elem)> = (0..budget.random_pairs)
        .map(|_| {
            (
                field.random_element(&mut rng, budget.random_height),
                field.random_element(&mut rng, budget.random_height),
            )
        })
        .collect();
    let random_found: Vec<Option<Vec<AxiomViolation>>> = drawn
        .par_iter()
        .map(|(x, y)| -> Result<_> {
            if oracle.in_o(x)? && oracle.in_o(y)? {
                Ok(Some(check_pair(oracle, x, y)?))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    let random_pairs_checked = random_found.iter().filter(|r| r.is_some()).count();
    violations.extend(random_found.into_iter().flatten().flatten());

    let count = violations.len();
    violations.truncate(MAX_EXAMPLES);
    Ok(AxiomReport {
        budget,
        unary_checked: unary.len(),
        pairs_checked,
        random_pairs_checked,
        violations: count,
        examples: violations,
        sampled: true,
    })
}
