use serde::Serialize;

use crate::classes::{PowerClass, SubgroupSpec};
use crate::error::Result;
use crate::places::GlobalField;
use crate::symbols::{k2_vanishes_mod_p, K2Certificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolatedHypothesis {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    NoneFound {
        height_bound: u64,
        elements: usize,
        pairs_checked: u64,
    },
    Found {
        x: String,
        y: String,
        x_class: PowerClass,
        y_class: PowerClass,
        hypothesis: ViolatedHypothesis,
        certificate: K2Certificate,
        pairs_checked: u64,
    },
    BudgetExhausted {
        height_bound: u64,
        elements: usize,
        pairs_checked: u64,
    },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<(&str, &str)> {
        match self {
            SearchOutcome::Found { x, y, .. } => Some((x, y)),
            _ => None,
        }
    }
}

struct Entry<E> {
    elem: E,
    class: PowerClass,
    in_t: bool,
    pth_power: bool,
}

/// Finds the first pair `(x, y)` of global elements of height at most the
/// bound that satisfies the premise of hypothesis (a) or (b) while
/// `{x, y} = 0` in `K2(E)/p`.
///
/// Elements are indexed in canonical height order; pairs are visited by
/// their larger index, then lexicographically. `max_pairs` caps the number
/// of symbol evaluations.
pub fn global_counterexample_search<F: GlobalField>(
    spec: &SubgroupSpec<F>,
    height_bound: u64,
    max_pairs: u64,
) -> Result<SearchOutcome> {
    let space = spec.space();
    let field = space.field();
    let p = space.p();
    let mut seen: Vec<Entry<F::Elem>> = Vec::new();
    let mut pairs_checked = 0u64;

    for h in field.min_height()..=height_bound {
        for elem in field.elements_of_height(h) {
            let class = space.class_of(&elem)?;
            seen.push(Entry {
                in_t: spec.contains_class(&class),
                pth_power: field.is_pth_power(&elem, p)?,
                class,
                elem,
            });
            let m = seen.len() - 1;
            let order = (0..m).map(|i| (i, m)).chain((0..=m).map(|j| (m, j)));
            for (a, b) in order {
                let (x, y) = (&seen[a], &seen[b]);
                let hypothesis = if !x.in_t && y.in_t && !y.pth_power {
                    ViolatedHypothesis::A
                } else if spec.tbar().independent_mod(&x.class.0, &y.class.0) {
                    ViolatedHypothesis::B
                } else {
                    continue;
                };
                if pairs_checked >= max_pairs {
                    return Ok(SearchOutcome::BudgetExhausted {
                        height_bound,
                        elements: seen.len(),
                        pairs_checked,
                    });
                }
                pairs_checked += 1;
                let certificate = k2_vanishes_mod_p(field, &x.elem, &y.elem, p)?;
                if certificate.vanishes {
                    return Ok(SearchOutcome::Found {
                        x: x.elem.to_string(),
                        y: y.elem.to_string(),
                        x_class: x.class.clone(),
                        y_class: y.class.clone(),
                        hypothesis,
                        certificate,
                        pairs_checked,
                    });
                }
            }
        }
    }
    Ok(SearchOutcome::NoneFound {
        height_bound,
        elements: seen.len(),
        pairs_checked,
    })
}
