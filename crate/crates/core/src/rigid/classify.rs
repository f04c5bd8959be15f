use rayon::prelude::*;
use serde::Serialize;

use super::oracle::ValuationOracle;
use crate::error::{Error, Result};
use crate::places::GlobalField;

const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub x: String,
    pub in_o: bool,
    pub valuation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateResult {
    pub place: String,
    pub disagreements: usize,
    pub witnesses: Vec<Disagreement>,
}

impl CandidateResult {
    pub fn agrees(&self) -> bool {
        self.disagreements == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Classification {
    Matches {
        place: String,
        sampled: bool,
        checked: usize,
        candidates: Vec<CandidateResult>,
    },
    NoMatch {
        checked: usize,
        candidates: Vec<CandidateResult>,
    },
    Indistinguishable {
        places: Vec<String>,
        checked: usize,
        candidates: Vec<CandidateResult>,
    },
    Refused {
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct Classified<F: GlobalField> {
    pub outcome: Classification,
    pub matched: Option<F::Place>,
}

/// Membership in `O` for every sample, computed in parallel, order kept.
pub fn membership<F: GlobalField>(oracle: &ValuationOracle<F>, samples: &[F::Elem]) -> Result<Vec<bool>> {
    samples.par_iter().map(|x| oracle.in_o(x)).collect()
}

/// Compares `x ∈ O` with `v_P(x) >= 0` at one place.
pub fn compare_with_place<F: GlobalField>(
    field: &F,
    place: &F::Place,
    samples: &[F::Elem],
    members: &[bool],
) -> Result<CandidateResult> {
    if !field.is_discrete(place) {
        return Err(Error::Archimedean);
    }
    let mut disagreements = 0;
    let mut witnesses = Vec::new();
    for (x, &in_o) in samples.iter().zip(members) {
        let v = if field.is_zero(x) { 0 } else { field.valuation(x, place)? };
        if (v >= 0) != in_o {
            disagreements += 1;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(Disagreement {
                    x: x.to_string(),
                    in_o,
                    valuation: v,
                });
            }
        }
    }
    Ok(CandidateResult {
        place: field.place_label(place),
        disagreements,
        witnesses,
    })
}

pub fn classify_valuation<F: GlobalField>(
    oracle: &ValuationOracle<F>,
    candidates: &[F::Place],
    samples: &[F::Elem],
) -> Result<Classified<F>> {
    if candidates.is_empty() {
        return Err(Error::Domain("no candidate places".into()));
    }
    if oracle.is_degenerate() {
        return Ok(Classified {
            outcome: Classification::Refused {
                reason: "construction degenerate: O-minus is empty within budget, O-plus = H".into(),
            },
            matched: None,
        });
    }
    let field = oracle.field();
    let members = membership(oracle, samples)?;
    let results = candidates
        .iter()
        .map(|c| compare_with_place(field, c, samples, &members))
        .collect::<Result<Vec<_>>>()?;
    let agreeing: Vec<usize> = (0..results.len()).filter(|&i| results[i].agrees()).collect();
    let checked = samples.len();
    let classified = match agreeing.as_slice() {
        [] => Classified {
            outcome: Classification::NoMatch {
                checked,
                candidates: results,
            },
            matched: None,
        },
        [i] => Classified {
            outcome: Classification::Matches {
                place: results[*i].place.clone(),
                sampled: true,
                checked,
                candidates: results,
            },
            matched: Some(candidates[*i].clone()),
        },
        many => Classified {
            outcome: Classification::Indistinguishable {
                places: many.iter().map(|&i| results[i].place.clone()).collect(),
                checked,
                candidates: results,
            },
            matched: None,
        },
    };
    Ok(classified)
}
