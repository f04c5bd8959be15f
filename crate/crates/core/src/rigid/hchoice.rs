use crate::classes::{PowerClass, SubgroupSpec};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::places::GlobalField;

/// `T <= H <= E*` with `H` the preimage of `W`, `T-bar ⊆ W`,
/// `dim W / T-bar = 1`.
#[derive(Debug, Clone)]
pub struct HChoice<F: GlobalField> {
    spec: SubgroupSpec<F>,
    w: Subspace,
}

impl<F: GlobalField> HChoice<F> {
    pub fn new(spec: SubgroupSpec<F>, w: Subspace) -> Result<Self> {
        if !w.contains_subspace(spec.tbar()) || w.dim() != spec.tbar().dim() + 1 {
            return Err(Error::InvalidSubgroup(format!(
                "W = span{:?} must contain T-bar with index p",
                w.basis()
            )));
        }
        Ok(HChoice { spec, w })
    }

    /// `W = T-bar + span(v)`.
    pub fn from_vector(spec: SubgroupSpec<F>, v: &[u64]) -> Result<Self> {
        if v.len() != spec.space().dim() {
            return Err(Error::InvalidSubgroup(format!(
                "vector {v:?} has the wrong length"
            )));
        }
        let w = spec.tbar().with_vector(v);
        HChoice::new(spec, w)
    }

    pub fn spec(&self) -> &SubgroupSpec<F> {
        &self.spec
    }

    pub fn w(&self) -> &Subspace {
        &self.w
    }

    pub fn contains_class(&self, c: &PowerClass) -> bool {
        self.w.contains(&c.0)
    }

    /// Whether `x ∈ H`.
    pub fn contains(&self, x: &F::Elem) -> Result<bool> {
        Ok(self.contains_class(&self.spec.space().class_of(x)?))
    }
}

/// `enumerate_H`: every `W` over `T-bar` of relative dimension one, in
/// RREF order; `(p^c - 1)/(p - 1)` of them for `c = codim T-bar`.
pub fn enumerate_h<F: GlobalField>(spec: &SubgroupSpec<F>) -> Result<Vec<HChoice<F>>> {
    if spec.tbar().is_full() {
        return Err(Error::NoProperH);
    }
    spec.tbar()
        .superspaces_of_codim_one()
        .into_iter()
        .map(|w| HChoice::new(spec.clone(), w))
        .collect()
}
