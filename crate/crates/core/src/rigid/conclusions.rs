use serde::Serialize;

use crate::classes::SubgroupSpec;
use crate::error::Result;
use crate::places::GlobalField;

/// A valuation on `E` as recognized by classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation<P> {
    Place(P),
    /// `O = E`; value group `0`, residue field `E`.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    FullDimension,
    ResidueImperfect,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConclusionReport {
    pub valuation: String,
    pub residue_field: String,
    pub residue_characteristic: u64,
    /// (i) residue characteristic differs from `p`.
    pub residue_char_ok: bool,
    pub value_group_dim: usize,
    pub codim_t: usize,
    /// (ii) `dim Γ/p >= dim E*/T - 1`.
    pub inequality_ok: bool,
    /// (iii) `dim Γ/p >= dim E*/T`, or the residue field is not perfect
    /// for `p`.
    pub dichotomy: Dichotomy,
    pub all_hold: bool,
}

pub fn verify_conclusions<F: GlobalField>(
    spec: &SubgroupSpec<F>,
    valuation: &Valuation<F::Place>,
) -> Result<ConclusionReport> {
    let space = spec.space();
    let field = space.field();
    let p = space.p();
    let codim_t = spec.codim();
    let (label, residue_field, residue_characteristic, value_group_dim, imperfect) = match valuation {
        Valuation::Place(place) => {
            let n = field.residue_size(place)?;
            (
                field.place_label(place),
                format!("F{n}"),
                field.residue_characteristic(place)?,
                1,
                (n - 1) % p as u128 == 0,
            )
        }
        // A global field is never perfect for p different from its
        // characteristic: 2 (or t) is not a p-th power.
        Valuation::Trivial => (
            "trivial".to_string(),
            field.descriptor().to_string(),
            field.descriptor().characteristic(),
            0,
            true,
        ),
    };
    let residue_char_ok = residue_characteristic != p;
    let inequality_ok = value_group_dim + 1 >= codim_t;
    let dichotomy = if value_group_dim >= codim_t {
        Dichotomy::FullDimension
    } else if imperfect {
        Dichotomy::ResidueImperfect
    } else {
        Dichotomy::Violation
    };
    Ok(ConclusionReport {
        valuation: label,
        residue_field,
        residue_characteristic,
        residue_char_ok,
        value_group_dim,
        codim_t,
        inequality_ok,
        all_hold: residue_char_ok && inequality_ok && dichotomy != Dichotomy::Violation,
        dichotomy,
    })
}
