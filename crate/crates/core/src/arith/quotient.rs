use std::sync::Arc;

use super::field::FiniteFieldOps;
use super::finite_field::{FiniteField, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

/// The residue field `F_q[t]/(pi)` of a finite place of `F_q(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientField {
    base: FiniteField,
    modulus: Arc<Poly>,
    order: u128,
}

impl QuotientField {
    /// `modulus` must be monic irreducible over `base`.
    pub fn new(base: FiniteField, modulus: Poly) -> Result<Self> {
        if !modulus.is_monic() || !modulus.is_irreducible(&base) {
            return Err(Error::InvalidField(format!(
                "{} is not monic irreducible over {}",
                modulus.format(&base, "t"),
                base.name()
            )));
        }
        let order = (base.size() as u128)
            .checked_pow(modulus.deg() as u32)
            .filter(|&n| n < 1u128 << 96)
            .ok_or_else(|| Error::InvalidField("residue field too large".into()))?;
        Ok(QuotientField {
            base,
            modulus: Arc::new(modulus),
            order,
        })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus, &self.base)
    }

    pub fn embed(&self, c: Fq) -> Poly {
        Poly::constant(c)
    }

    /// `N_{k/F_q}(z) = z^((q^d - 1)/(q - 1))`, a constant.
    pub fn norm(&self, z: &Poly) -> Fq {
        let q = self.base.size() as u128;
        let e = (self.order - 1) / (q - 1);
        let n = self.pow(z, e);
        debug_assert!(n.is_constant());
        n.coeff(0)
    }
}

impl FiniteFieldOps for QuotientField {
    type Elem = Poly;

    fn characteristic(&self) -> u128 {
        self.base.char_u64() as u128
    }

    fn order(&self) -> u128 {
        self.order
    }

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::one()
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, &self.base)
    }

    fn neg(&self, a: &Poly) -> Poly {
        a.neg(&self.base)
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b, &self.base)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.modulus, &self.base)
    }

    fn inv(&self, a: &Poly) -> Option<Poly> {
        if a.is_zero() {
            return None;
        }
        a.inv_mod(&self.modulus, &self.base)
    }

    fn from_int(&self, n: i64) -> Poly {
        Poly::constant(self.base.from_int(n))
    }

    fn element(&self, index: u128) -> Poly {
        Poly::from_index(index, &self.base)
    }

    fn index(&self, a: &Poly) -> u128 {
        a.index(&self.base)
    }

    fn format(&self, a: &Poly) -> String {
        a.format(&self.base, "t")
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}
