//! Symbols of `K_2(E)/p`: tame symbols at discrete places, the quadratic
//! Hilbert symbols of `Q` at 2 and at the real place, global vanishing
//! certificates and the pairing on a local class space.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::field::{primitive_element, PowerResidue};
use crate::arith::{integer, FiniteFieldOps, Rational};
use crate::classes::{ClassSpace, PowerClass};
use crate::error::{Error, Result};
use crate::places::{FunctionField, GlobalField, ResidueElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    Tame,
    Hilbert2,
    Real,
}

/// Value of `{x, y}` at one place: the residue element (or sign) and its
/// class in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalSymbol {
    pub place: String,
    pub kind: SymbolKind,
    pub value: String,
    pub class: u64,
}

impl LocalSymbol {
    pub fn vanishes(&self) -> bool {
        self.class == 0
    }
}

fn residue_pow<R: FiniteFieldOps>(k: &R, z: &R::Elem, e: i64) -> R::Elem {
    if e >= 0 {
        k.pow(z, e as u128)
    } else {
        k.pow(&k.inv(z).expect("unit"), e.unsigned_abs() as u128)
    }
}

/// Tame symbol with an explicit residue field:
/// `(-1)^(ab) ac(x)^b ac(y)^(-a)` where `a = v(x)`, `b = v(y)`.
pub fn tame_symbol_in<F: GlobalField>(
    field: &F,
    k: &F::Residue,
    x: &F::Elem,
    y: &F::Elem,
    place: &F::Place,
) -> Result<ResidueElem<F>> {
    if field.is_zero(x) || field.is_zero(y) {
        return Err(Error::Domain("tame symbol of zero".into()));
    }
    let (a, u) = field.angular_component(x, place)?;
    let (b, w) = field.angular_component(y, place)?;
    let mut z = k.mul(&residue_pow(k, &u, b), &residue_pow(k, &w, -a));
    if (a * b).rem_euclid(2) == 1 {
        z = k.neg(&z);
    }
    Ok(z)
}

/// `tame_symbol`: the residue of `(-1)^(v(x)v(y)) x^v(y) y^(-v(x))` at `P`.
pub fn tame_symbol<F: GlobalField>(
    field: &F,
    x: &F::Elem,
    y: &F::Elem,
    place: &F::Place,
) -> Result<ResidueElem<F>> {
    let k = field.residue_field(place)?;
    tame_symbol_in(field, &k, x, y, place)
}

/// Tame symbol as a [`LocalSymbol`], classed mod `p` against the
/// canonical generator of `k(P)`.
pub fn tame_local_symbol<F: GlobalField>(
    field: &F,
    x: &F::Elem,
    y: &F::Elem,
    place: &F::Place,
    p: u64,
) -> Result<LocalSymbol> {
    let k = field.residue_field(place)?;
    let z = tame_symbol_in(field, &k, x, y, place)?;
    let class = if (k.order() - 1) % p as u128 == 0 {
        let g = primitive_element(&k);
        PowerResidue::new(k.clone(), &g, p).exponent(&z)
    } else {
        0
    };
    Ok(LocalSymbol {
        place: field.place_label(place),
        kind: SymbolKind::Tame,
        value: k.format(&z),
        class,
    })
}

/// `(v_2(x), odd part of x mod 8)`, sign kept.
fn two_adic(x: &Rational) -> (i64, u64) {
    let split = |n: &BigInt| {
        let k = n.trailing_zeros().unwrap_or(0);
        (k as i64, n >> k)
    };
    let (a, n) = split(x.numer());
    let (b, d) = split(x.denom());
    let u = (n * d).mod_floor(&BigInt::from(8)).to_u64().expect("mod 8");
    (a - b, u)
}

/// Quadratic Hilbert symbol `(x, y)_2`: with `x = 2^a u`, `y = 2^b w`,
/// the exponent is `e(u)e(w) + a w(w) + b w(u)` where `e(u) = (u-1)/2`
/// and `w(u) = (u^2-1)/8`.
pub fn hilbert2_at_two(x: &Rational, y: &Rational) -> i8 {
    assert!(!x.is_zero() && !y.is_zero(), "Hilbert symbol of zero");
    let (a, u) = two_adic(x);
    let (b, w) = two_adic(y);
    let eps = |u: u64| (u - 1) / 2;
    let omega = |u: u64| (u * u - 1) / 8;
    let e = eps(u) * eps(w) + (a.rem_euclid(2) as u64) * omega(w) + (b.rem_euclid(2) as u64) * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(x, y)_inf = -1` iff both are negative.
pub fn hilbert_at_real(x: &Rational, y: &Rational) -> i8 {
    if x.is_negative() && y.is_negative() {
        -1
    } else {
        1
    }
}

/// Outcome of `k2_vanishes_mod_p`: every symbol checked, in certificate
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K2Certificate {
    pub vanishes: bool,
    pub checked: Vec<LocalSymbol>,
}

impl K2Certificate {
    /// The first nonvanishing symbol in certificate order.
    pub fn witness(&self) -> Option<&LocalSymbol> {
        self.checked.iter().find(|s| !s.vanishes())
    }

    pub fn symbol_at(&self, place: &str) -> Option<&LocalSymbol> {
        self.checked.iter().find(|s| s.place == place)
    }

    pub fn places(&self) -> Vec<&str> {
        self.checked.iter().map(|s| s.place.as_str()).collect()
    }
}

pub fn k2_vanishes_mod_p<F: GlobalField>(
    field: &F,
    x: &F::Elem,
    y: &F::Elem,
    p: u64,
) -> Result<K2Certificate> {
    if !integer::is_prime(p as u128) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if field.descriptor().characteristic() == p {
        return Err(Error::Domain("p equals the characteristic".into()));
    }
    if field.is_zero(x) || field.is_zero(y) {
        return Err(Error::Domain("symbol of zero".into()));
    }
    let checked = field
        .k2_places(x, y, p)?
        .iter()
        .map(|place| field.local_symbol(x, y, place, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(K2Certificate {
        vanishes: checked.iter().all(LocalSymbol::vanishes),
        checked,
    })
}

/// Exponent of the tame symbol of two elements in the space's `F_p`.
pub fn element_pairing<F: GlobalField>(
    space: &ClassSpace<F>,
    x: &F::Elem,
    y: &F::Elem,
) -> Result<u64> {
    if space.dim() < 2 {
        return Err(Error::DegeneratePairing);
    }
    let z = tame_symbol_in(space.field(), space.residue_field(), x, y, space.place())?;
    Ok(space.residue_class(&z))
}

/// `local_pairing`: the tame symbol of canonical lifts, as an exponent.
pub fn local_pairing<F: GlobalField>(
    space: &ClassSpace<F>,
    a: &PowerClass,
    b: &PowerClass,
) -> Result<u64> {
    if space.dim() < 2 {
        return Err(Error::DegeneratePairing);
    }
    element_pairing(space, &space.lift(a), &space.lift(b))
}

/// Product over all places of `N_{k(P)/F_q}(d_P(f, g))` equals 1.
pub fn weil_reciprocity_check(
    field: &FunctionField,
    f: &crate::arith::RationalFunction,
    g: &crate::arith::RationalFunction,
) -> Result<bool> {
    let base = field.base();
    let mut acc = base.one();
    for place in field.k2_places(f, g, 0)? {
        let k = field.residue_field(&place)?;
        let z = tame_symbol_in(field, &k, f, g, &place)?;
        acc = base.mul(&acc, &k.norm(&z));
    }
    Ok(acc == base.one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WedgeStatus {
    Holds,
    Fails,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedgeReport {
    pub place: String,
    pub p: u64,
    pub dim: usize,
    pub status: WedgeStatus,
    /// Pairing on the standard basis of `V`; empty when `d = 1`.
    pub matrix: Vec<Vec<u64>>,
    pub rank: usize,
    pub witness: Option<(PowerClass, PowerClass)>,
}

impl WedgeReport {
    pub fn holds(&self) -> bool {
        self.status == WedgeStatus::Holds
    }
}

/// `wedge_iso_check`: `∧²V -> F_p` is an isomorphism iff the pairing is
/// alternating with nonzero off-diagonal entry.
pub fn wedge_iso_check<F: GlobalField>(space: &ClassSpace<F>) -> Result<WedgeReport> {
    let p = space.p();
    let base = WedgeReport {
        place: space.label(),
        p,
        dim: space.dim(),
        status: WedgeStatus::Degenerate,
        matrix: Vec::new(),
        rank: 0,
        witness: None,
    };
    if space.dim() < 2 {
        return Ok(base);
    }
    let e = [PowerClass(vec![1, 0]), PowerClass(vec![0, 1])];
    let mut m = vec![vec![0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = local_pairing(space, &e[i], &e[j])?;
        }
    }
    let det = (m[0][0] * m[1][1] + p * p - m[0][1] * m[1][0] % p) % p;
    let rank = if det != 0 {
        2
    } else if m.iter().flatten().any(|&c| c != 0) {
        1
    } else {
        0
    };
    let witness = space
        .classes()
        .into_iter()
        .find(|a| local_pairing(space, a, a).map(|v| v != 0).unwrap_or(false));
    let (status, witness) = match witness {
        Some(a) => (WedgeStatus::Fails, Some((a.clone(), a))),
        None if m[0][1] != 0 => (WedgeStatus::Holds, None),
        None => (WedgeStatus::Fails, Some((e[0].clone(), e[1].clone()))),
    };
    Ok(WedgeReport {
        status,
        matrix: m,
        rank,
        witness,
        ..base
    })
}
