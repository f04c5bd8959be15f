use serde::Serialize;

use super::hchoice::HChoice;
use crate::classes::PowerClass;
use crate::error::{Error, Result};
use crate::places::GlobalField;

fn check_domain<F: GlobalField>(field: &F, x: &F::Elem) -> Result<()> {
    if field.is_zero(x) || field.is_one(x) {
        return Err(Error::Domain(format!(
            "{x} is outside the multiplicative domain of O-minus"
        )));
    }
    Ok(())
}

/// `x ∈ O⁻ = {x ∉ H : 1 - x ∈ T}`.
pub fn in_o_minus<F: GlobalField>(h: &HChoice<F>, x: &F::Elem) -> Result<bool> {
    let field = h.spec().space().field();
    check_domain(field, x)?;
    if h.contains(x)? {
        return Ok(false);
    }
    h.spec().contains(&field.sub(&field.one(), x))
}

/// Answer of the `O⁺` membership test.
///
/// `false` is exact and carries the failing `y ∈ O⁻` unless `x ∉ H`; `true`
/// only holds against the finite witness set and is `sampled`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlusAnswer<E> {
    pub member: bool,
    pub sampled: bool,
    pub witness: Option<E>,
    pub degenerate: bool,
}

/// `O = O⁻ ∪ O⁺` with `O⁺ = {x ∈ H : x O⁻ ⊆ O⁻}` tested against a finite
/// set of known `O⁻` elements.
#[derive(Debug, Clone)]
pub struct ValuationOracle<F: GlobalField> {
    h: HChoice<F>,
    witnesses: Vec<F::Elem>,
    witness_height: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub h_basis: Vec<Vec<u64>>,
    pub witness_height: u64,
    pub witnesses: Vec<String>,
    pub degenerate: bool,
}

impl<F: GlobalField> ValuationOracle<F> {
    /// Witnesses are the first `count` elements of `O⁻` in canonical order
    /// among heights up to `height`.
    pub fn build(h: HChoice<F>, height: u64, count: usize) -> Result<Self> {
        let field = h.spec().space().field().clone();
        let mut witnesses = Vec::with_capacity(count);
        'outer: for k in field.min_height()..=height {
            for x in field.elements_of_height(k) {
                if field.is_one(&x) {
                    continue;
                }
                if in_o_minus(&h, &x)? {
                    witnesses.push(x);
                    if witnesses.len() == count {
                        break 'outer;
                    }
                }
            }
        }
        Ok(ValuationOracle::assemble(h, witnesses, height))
    }

    /// An oracle with an explicit witness list; every entry must lie in `O⁻`.
    pub fn with_witnesses(h: HChoice<F>, witnesses: Vec<F::Elem>) -> Result<Self> {
        for y in &witnesses {
            if !in_o_minus(&h, y)? {
                return Err(Error::Domain(format!("witness {y} is not in O-minus")));
            }
        }
        let field = h.spec().space().field();
        let witness_height = witnesses.iter().map(|y| field.height(y)).max().unwrap_or(0);
        Ok(ValuationOracle::assemble(h, witnesses, witness_height))
    }

    fn assemble(h: HChoice<F>, witnesses: Vec<F::Elem>, witness_height: u64) -> Self {
        ValuationOracle {
            h,
            witnesses,
            witness_height,
        }
    }

    pub fn h(&self) -> &HChoice<F> {
        &self.h
    }

    pub fn field(&self) -> &F {
        self.h.spec().space().field()
    }

    pub fn witnesses(&self) -> &[F::Elem] {
        &self.witnesses
    }

    /// No `O⁻` element was found within the witness budget.
    pub fn is_degenerate(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn summary(&self) -> OracleSummary {
        OracleSummary {
            h_basis: self.h.w().basis().to_vec(),
            witness_height: self.witness_height,
            witnesses: self.witnesses.iter().map(|y| y.to_string()).collect(),
            degenerate: self.is_degenerate(),
        }
    }

    pub fn in_o_minus(&self, x: &F::Elem) -> Result<bool> {
        in_o_minus(&self.h, x)
    }

    pub fn in_o_plus(&self, x: &F::Elem) -> Result<PlusAnswer<F::Elem>> {
        let field = self.field();
        if field.is_zero(x) {
            return Err(Error::Domain("O-plus is tested on nonzero elements".into()));
        }
        let cx = self.h.spec().space().class_of(x)?;
        self.plus_with_class(x, &cx)
    }

    // For `x ∈ H` and `y ∉ H` the product is never in `H`, so only
    // `1 - xy ∈ T` is left to test.
    fn plus_with_class(&self, x: &F::Elem, cx: &PowerClass) -> Result<PlusAnswer<F::Elem>> {
        let field = self.field();
        let answer = |member, sampled, witness| PlusAnswer {
            member,
            sampled,
            witness,
            degenerate: self.is_degenerate(),
        };
        if field.is_one(x) {
            return Ok(answer(true, false, None));
        }
        if !self.h.contains_class(cx) {
            return Ok(answer(false, false, None));
        }
        let spec = self.h.spec();
        for y in &self.witnesses {
            let xy = field.mul(x, y);
            if field.is_one(&xy) || !spec.contains(&field.sub(&field.one(), &xy))? {
                return Ok(answer(false, false, Some(y.clone())));
            }
        }
        Ok(answer(true, true, None))
    }

    /// `in_O`, with `0` and `1` members by convention.
    pub fn in_o(&self, x: &F::Elem) -> Result<bool> {
        let field = self.field();
        if field.is_zero(x) || field.is_one(x) {
            return Ok(true);
        }
        let cx = self.h.spec().space().class_of(x)?;
        if !self.h.contains_class(&cx) {
            return self.h.spec().contains(&field.sub(&field.one(), x));
        }
        Ok(self.plus_with_class(x, &cx)?.member)
    }
}
