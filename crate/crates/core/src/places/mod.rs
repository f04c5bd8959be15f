//! Global fields, their places, and the local data at a place.

mod descriptor;
pub(crate) mod expr;
mod function_field;
mod rationals;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use rand::Rng;

use crate::arith::FiniteFieldOps;
use crate::error::{Error, Result};
use crate::symbols::LocalSymbol;

pub use descriptor::{split_place_label, FieldDescriptor};
pub use function_field::{FunctionField, FunctionPlace};
pub use rationals::{RationalPlace, Rationals};

pub type ResidueElem<F> = <<F as GlobalField>::Residue as FiniteFieldOps>::Elem;

/// A global field `E` (`Q` or `F_q(t)`) together with its places.
///
/// `Place` orders places canonically: for `Q` the primes ascending and then
/// the real place, for `F_q(t)` finite places by degree and then
/// coefficients, and then infinity.
pub trait GlobalField: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;
    type Place: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;
    type Residue: FiniteFieldOps;

    fn descriptor(&self) -> FieldDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Named constants accepted by the element parser (`t`, `a`).
    fn symbol(&self, name: &str) -> Option<Self::Elem>;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        expr::parse(&ExprAdapter(self), s)
    }

    /// Parses the part of a place label after the `:`.
    fn parse_place(&self, s: &str) -> Result<Self::Place>;

    /// Place text without the field prefix, e.g. `5`, `inf`, `t^2+1`.
    fn place_body(&self, place: &Self::Place) -> String;

    fn is_discrete(&self, place: &Self::Place) -> bool;

    /// `N(P)`.
    fn residue_size(&self, place: &Self::Place) -> Result<u128>;

    fn residue_field(&self, place: &Self::Place) -> Result<Self::Residue>;

    /// Normalized additive valuation `v_P(x)`.
    fn valuation(&self, x: &Self::Elem, place: &Self::Place) -> Result<i64>;

    fn uniformizer(&self, place: &Self::Place) -> Result<Self::Elem>;

    /// `(v_P(x), ac_P(x))` where `ac_P(x)` is the residue of
    /// `x * pi^(-v_P(x))` for the fixed uniformizer.
    fn angular_component(
        &self,
        x: &Self::Elem,
        place: &Self::Place,
    ) -> Result<(i64, ResidueElem<Self>)>;

    /// The canonical element of `E` reducing to `z` (degree below the
    /// residue degree).
    fn lift_residue(&self, z: &ResidueElem<Self>, place: &Self::Place) -> Result<Self::Elem>;

    /// Discrete places where `v_P(x) != 0`, in canonical order.
    fn support(&self, x: &Self::Elem) -> Result<Vec<Self::Place>>;

    /// Whether `x` is a `p`-th power in `E` (`p` different from the
    /// characteristic).
    fn is_pth_power(&self, x: &Self::Elem, p: u64) -> Result<bool>;

    fn height(&self, x: &Self::Elem) -> u64;

    /// Nonzero elements of exactly height `h`, in canonical order.
    fn elements_of_height(&self, h: u64) -> Vec<Self::Elem>;

    /// Smallest height for which `elements_of_height` is nonempty.
    fn min_height(&self) -> u64;

    /// A uniformly chosen numerator and denominator of height at most `h`;
    /// never zero.
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, h: u64) -> Self::Elem;

    /// The first `n` finite discrete places in canonical order.
    fn first_places(&self, n: usize) -> Vec<Self::Place>;

    /// Places at which `{x, y}` mod `p` is tested, in certificate order.
    fn k2_places(&self, x: &Self::Elem, y: &Self::Elem, p: u64) -> Result<Vec<Self::Place>>;

    /// The symbol of `{x, y}` at `place` as a class mod `p`.
    fn local_symbol(
        &self,
        x: &Self::Elem,
        y: &Self::Elem,
        place: &Self::Place,
        p: u64,
    ) -> Result<LocalSymbol> {
        crate::symbols::tame_local_symbol(self, x, y, place, p)
    }

    /// Full place label such as `Q:5` or `F7t:t^2+1`.
    fn place_label(&self, place: &Self::Place) -> String {
        format!("{}:{}", self.descriptor(), self.place_body(place))
    }

    /// Parses a full label (`Q:5`) or a bare place body (`5`).
    fn parse_place_label(&self, s: &str) -> Result<Self::Place> {
        if let Some((d, body)) = s.split_once(':') {
            let desc: FieldDescriptor = d.parse()?;
            if desc != self.descriptor() {
                return Err(Error::Mismatch(format!(
                    "place {s:?} does not belong to {}",
                    self.descriptor()
                )));
            }
            self.parse_place(body)
        } else {
            self.parse_place(s)
        }
    }

    /// Residue characteristic of a discrete place.
    fn residue_characteristic(&self, place: &Self::Place) -> Result<u64> {
        Ok(self.residue_field(place)?.characteristic() as u64)
    }

    /// Nonzero elements of height at most `h`, in canonical order.
    fn elements_up_to(&self, h: u64) -> Vec<Self::Elem> {
        (self.min_height()..=h)
            .flat_map(|k| self.elements_of_height(k))
            .collect()
    }
}

struct ExprAdapter<'a, F: GlobalField>(&'a F);

impl<F: GlobalField> expr::ExprField for ExprAdapter<'_, F> {
    type Elem = F::Elem;

    fn int(&self, n: &BigInt) -> F::Elem {
        self.0.from_bigint(n)
    }
    fn symbol(&self, name: &str) -> Option<F::Elem> {
        self.0.symbol(name)
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &F::Elem) -> F::Elem {
        self.0.neg(a)
    }
    fn div(&self, a: &F::Elem, b: &F::Elem) -> Option<F::Elem> {
        self.0.div(a, b).ok()
    }
    fn pow(&self, a: &F::Elem, e: i64) -> Option<F::Elem> {
        (e >= 0 || !self.0.is_zero(a)).then(|| self.0.pow(a, e))
    }
}

/// `residue_at`: the image of a `P`-unit in `k(P)`.
pub fn residue<F: GlobalField>(
    field: &F,
    x: &F::Elem,
    place: &F::Place,
) -> Result<ResidueElem<F>> {
    if field.is_zero(x) {
        return Err(Error::NotAUnit {
            place: field.place_label(place),
        });
    }
    let (v, ac) = field.angular_component(x, place)?;
    if v != 0 {
        return Err(Error::NotAUnit {
            place: field.place_label(place),
        });
    }
    Ok(ac)
}

/// `valuation_at`, rejecting zero.
pub fn valuation<F: GlobalField>(field: &F, x: &F::Elem, place: &F::Place) -> Result<i64> {
    if field.is_zero(x) {
        return Err(Error::Domain("valuation of zero".into()));
    }
    field.valuation(x, place)
}
