use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{FieldDescriptor, GlobalField, ResidueElem};
use crate::arith::field::is_pth_power;
use crate::arith::poly::monic_irreducibles;
use crate::arith::{FiniteField, FiniteFieldOps, Poly, QuotientField, RationalFunction};
use crate::error::{Error, Result};

/// The rational function field `F_q(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionField {
    base: FiniteField,
}

/// A place of `F_q(t)`: a monic irreducible `pi(t)`, or infinity with
/// uniformizer `1/t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FunctionPlace {
    Finite(Poly),
    Infinity,
}

impl Ord for FunctionPlace {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FunctionPlace::Finite(a), FunctionPlace::Finite(b)) => a.canonical_cmp(b),
            (FunctionPlace::Finite(_), FunctionPlace::Infinity) => Ordering::Less,
            (FunctionPlace::Infinity, FunctionPlace::Finite(_)) => Ordering::Greater,
            (FunctionPlace::Infinity, FunctionPlace::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for FunctionPlace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FunctionField {
    pub fn new(base: FiniteField) -> Self {
        FunctionField { base }
    }

    pub fn with_size(q: u64) -> Result<Self> {
        Ok(FunctionField::new(FiniteField::new(q)?))
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn q(&self) -> u64 {
        self.base.size()
    }

    pub fn t(&self) -> RationalFunction {
        RationalFunction::t(&self.base)
    }

    pub fn poly(&self, p: Poly) -> RationalFunction {
        RationalFunction::from_poly(&self.base, p)
    }

    /// A validated finite place.
    pub fn finite_place(&self, pi: Poly) -> Result<FunctionPlace> {
        if pi.deg() == 0 || !pi.is_monic() || !pi.is_irreducible(&self.base) {
            return Err(Error::InvalidField(format!(
                "{} is not a monic irreducible polynomial",
                pi.format(&self.base, "t")
            )));
        }
        Ok(FunctionPlace::Finite(pi))
    }

    /// Degree of the place (`1` at infinity).
    pub fn place_degree(&self, place: &FunctionPlace) -> usize {
        match place {
            FunctionPlace::Finite(pi) => pi.deg(),
            FunctionPlace::Infinity => 1,
        }
    }

    fn strip(&self, f: &Poly, pi: &Poly) -> (i64, Poly) {
        let mut k = 0;
        let mut m = f.clone();
        loop {
            let (q, r) = m.divrem(pi, &self.base);
            if !r.is_zero() {
                return (k, m);
            }
            m = q;
            k += 1;
        }
    }

    fn monic_of_degree(&self, deg: usize, lower_index: u128) -> Poly {
        let mut c = Poly::from_index(lower_index, &self.base).coeffs().to_vec();
        c.resize(deg, 0);
        c.push(1);
        Poly::from_coeffs(c)
    }

    fn monic_up_to(&self, h: usize) -> Vec<Poly> {
        let q = self.q() as u128;
        (0..=h)
            .flat_map(|d| (0..q.pow(d as u32)).map(move |i| (d, i)))
            .map(|(d, i)| self.monic_of_degree(d, i))
            .collect()
    }
}

impl GlobalField for FunctionField {
    type Elem = RationalFunction;
    type Place = FunctionPlace;
    type Residue = QuotientField;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::FunctionField { q: self.q() }
    }

    fn zero(&self) -> RationalFunction {
        RationalFunction::constant(&self.base, 0)
    }

    fn one(&self) -> RationalFunction {
        RationalFunction::constant(&self.base, 1)
    }

    fn from_bigint(&self, n: &BigInt) -> RationalFunction {
        let l = BigInt::from(self.base.char_u64());
        let r = n.mod_floor(&l).to_i64().expect("reduced");
        RationalFunction::constant(&self.base, self.base.from_int(r))
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.add(b)
    }

    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.sub(b)
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.mul(b)
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        a.neg()
    }

    fn inv(&self, a: &RationalFunction) -> Result<RationalFunction> {
        a.inv()
    }

    fn pow(&self, a: &RationalFunction, e: i64) -> RationalFunction {
        a.pow(e)
    }

    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &RationalFunction) -> bool {
        a.is_one()
    }

    fn symbol(&self, name: &str) -> Option<RationalFunction> {
        match name {
            "t" => Some(self.t()),
            "a" if self.base.degree() > 1 => Some(RationalFunction::constant(
                &self.base,
                self.base.char_u64(),
            )),
            _ => None,
        }
    }

    fn parse_place(&self, s: &str) -> Result<FunctionPlace> {
        if s == "inf" {
            return Ok(FunctionPlace::Infinity);
        }
        let f = self.parse_elem(s)?;
        if !f.denom().is_one() {
            return Err(Error::InvalidField(format!("place {s:?} is not a polynomial")));
        }
        self.finite_place(f.numer().clone())
    }

    fn place_body(&self, place: &FunctionPlace) -> String {
        match place {
            FunctionPlace::Finite(pi) => pi.format(&self.base, "t"),
            FunctionPlace::Infinity => "inf".into(),
        }
    }

    fn is_discrete(&self, _place: &FunctionPlace) -> bool {
        true
    }

    fn residue_size(&self, place: &FunctionPlace) -> Result<u128> {
        (self.q() as u128)
            .checked_pow(self.place_degree(place) as u32)
            .ok_or_else(|| Error::InvalidField("residue field too large".into()))
    }

    fn residue_field(&self, place: &FunctionPlace) -> Result<QuotientField> {
        match place {
            FunctionPlace::Finite(pi) => QuotientField::new(self.base.clone(), pi.clone()),
            FunctionPlace::Infinity => QuotientField::new(self.base.clone(), Poly::x()),
        }
    }

    fn valuation(&self, x: &RationalFunction, place: &FunctionPlace) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::Domain("valuation of zero".into()));
        }
        Ok(match place {
            FunctionPlace::Finite(pi) => {
                self.strip(x.numer(), pi).0 - self.strip(x.denom(), pi).0
            }
            FunctionPlace::Infinity => x.denom().deg() as i64 - x.numer().deg() as i64,
        })
    }

    fn uniformizer(&self, place: &FunctionPlace) -> Result<RationalFunction> {
        Ok(match place {
            FunctionPlace::Finite(pi) => self.poly(pi.clone()),
            FunctionPlace::Infinity => self.t().inv().expect("t is nonzero"),
        })
    }

    fn angular_component(
        &self,
        x: &RationalFunction,
        place: &FunctionPlace,
    ) -> Result<(i64, Poly)> {
        if x.is_zero() {
            return Err(Error::Domain("angular component of zero".into()));
        }
        let f = &self.base;
        match place {
            FunctionPlace::Finite(pi) => {
                let (a, n) = self.strip(x.numer(), pi);
                let (b, d) = self.strip(x.denom(), pi);
                let d = d.rem(pi, f).inv_mod(pi, f).expect("unit mod pi");
                Ok((a - b, n.mul_mod(&d, pi, f)))
            }
            FunctionPlace::Infinity => {
                let v = x.denom().deg() as i64 - x.numer().deg() as i64;
                // denominator is monic
                Ok((v, Poly::constant(x.numer().lead())))
            }
        }
    }

    fn lift_residue(&self, z: &ResidueElem<Self>, place: &FunctionPlace) -> Result<RationalFunction> {
        if z.deg() >= self.place_degree(place) && !z.is_zero() {
            return Err(Error::Domain("residue representative not reduced".into()));
        }
        Ok(self.poly(z.clone()))
    }

    fn support(&self, x: &RationalFunction) -> Result<Vec<FunctionPlace>> {
        if x.is_zero() {
            return Err(Error::Domain("support of zero".into()));
        }
        let mut out: Vec<FunctionPlace> = x
            .numer()
            .factor(&self.base)
            .factors
            .into_iter()
            .chain(x.denom().factor(&self.base).factors)
            .map(|(p, _)| FunctionPlace::Finite(p))
            .collect();
        if x.numer().deg() != x.denom().deg() {
            out.push(FunctionPlace::Infinity);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn is_pth_power(&self, x: &RationalFunction, p: u64) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::Domain("p-th power test of zero".into()));
        }
        if p == self.base.char_u64() {
            return Err(Error::Domain("p equals the characteristic".into()));
        }
        let f = &self.base;
        let num = x.numer().factor(f);
        let den = x.denom().factor(f);
        let all_div = |fs: &[(Poly, u32)]| fs.iter().all(|(_, e)| *e as u64 % p == 0);
        Ok(is_pth_power(f, &num.lead, p) && all_div(&num.factors) && all_div(&den.factors))
    }

    fn height(&self, x: &RationalFunction) -> u64 {
        x.height() as u64
    }

    /// Ordered by denominator (monic, canonical order) and then numerator
    /// (canonical index).
    fn elements_of_height(&self, h: u64) -> Vec<RationalFunction> {
        let h = h as usize;
        let f = &self.base;
        let q = self.q() as u128;
        let mut out = Vec::new();
        for den in self.monic_up_to(h) {
            let lo = if den.deg() == h { 1 } else { q.pow(h as u32) };
            for i in lo..q.pow(h as u32 + 1) {
                let num = Poly::from_index(i, f);
                if num.gcd(&den, f).is_one() {
                    out.push(RationalFunction::new(f, num, den.clone()).expect("monic"));
                }
            }
        }
        out
    }

    fn min_height(&self) -> u64 {
        0
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, h: u64) -> RationalFunction {
        let f = &self.base;
        let q = self.q() as u128;
        let h = h.min(24) as u32;
        let num = Poly::from_index(rng.gen_range(1..q.pow(h + 1)), f);
        let dd = rng.gen_range(0..=h) as usize;
        let den = self.monic_of_degree(dd, rng.gen_range(0..q.pow(dd as u32)));
        RationalFunction::new(f, num, den).expect("monic")
    }

    fn first_places(&self, n: usize) -> Vec<FunctionPlace> {
        let mut out = Vec::with_capacity(n);
        let mut d = 1;
        while out.len() < n {
            let mut irr = monic_irreducibles(d, &self.base);
            irr.sort_by(|a, b| a.canonical_cmp(b));
            out.extend(irr.into_iter().take(n - out.len()).map(FunctionPlace::Finite));
            d += 1;
        }
        out
    }

    fn k2_places(
        &self,
        x: &RationalFunction,
        y: &RationalFunction,
        _p: u64,
    ) -> Result<Vec<FunctionPlace>> {
        let mut s = self.support(x)?;
        s.extend(self.support(y)?);
        s.push(FunctionPlace::Infinity);
        s.sort();
        s.dedup();
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::residue;
    use rand::SeedableRng;

    fn f7t() -> FunctionField {
        FunctionField::with_size(7).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let k = f7t();
        let x = k.parse_elem("(t^2+t)/t^3").unwrap();
        let t = k.parse_place("t").unwrap();
        assert_eq!(k.valuation(&x, &t).unwrap(), -2);
        assert_eq!(k.valuation(&k.one(), &t).unwrap(), 0);
        assert_eq!(k.valuation(&x, &FunctionPlace::Infinity).unwrap(), 1);
        let t1 = k.parse_place("t+1").unwrap();
        assert_eq!(k.valuation(&x, &t1).unwrap(), 1);
    }

    #[test]
    fn residue_examples() {
        let k = f7t();
        let t = k.parse_place("t").unwrap();
        let r = residue(&k, &k.parse_elem("t+1").unwrap(), &t).unwrap();
        assert_eq!(r, Poly::one());
        let pl = k.parse_place("t^2+1").unwrap();
        // (t^3 + 2) mod (t^2 + 1) = -t + 2
        let r = residue(&k, &k.parse_elem("t^3+2").unwrap(), &pl).unwrap();
        assert_eq!(r, Poly::from_coeffs(vec![2, 6]));
        assert!(residue(&k, &k.t(), &t).is_err());
    }

    #[test]
    fn place_grammar_and_order() {
        let k = f7t();
        assert!(k.parse_place("t^2+1").is_ok());
        assert!(k.parse_place("t^2-1").is_err());
        assert!(k.parse_place("2*t+1").is_err());
        assert!(k.parse_place("1/t").is_err());
        assert_eq!(k.place_label(&k.parse_place("t^2+1").unwrap()), "F7t:t^2+1");
        assert_eq!(k.place_label(&FunctionPlace::Infinity), "F7t:inf");
        let first: Vec<String> = k.first_places(9).iter().map(|p| k.place_body(p)).collect();
        assert_eq!(first, ["t", "t+1", "t+2", "t+3", "t+4", "t+5", "t+6", "t^2+1", "t^2+2"]);
        let f9 = FunctionField::with_size(9).unwrap();
        let pl = f9.parse_place("t+a").unwrap();
        assert_eq!(f9.parse_place(&f9.place_body(&pl)).unwrap(), pl);
    }

    #[test]
    fn height_enumeration_is_complete() {
        // brute force over all (num, monic den) with degree <= 1, deduplicated
        let k = FunctionField::with_size(3).unwrap();
        let f = k.base().clone();
        let mut brute = std::collections::HashSet::new();
        for i in 1..9u128 {
            for den in k.monic_up_to(1) {
                brute.insert(RationalFunction::new(&f, Poly::from_index(i, &f), den).unwrap());
            }
        }
        let all = k.elements_up_to(1);
        assert_eq!(all.len(), brute.len());
        assert!(all.iter().all(|x| brute.contains(x)));
        assert_eq!(k.elements_of_height(0).len(), 2);
    }

    #[test]
    fn sum_formula_with_infinity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for q in [5u64, 7, 9] {
            let k = FunctionField::with_size(q).unwrap();
            for _ in 0..200 {
                let x = k.random_element(&mut rng, 5);
                let total: i64 = k
                    .support(&x)
                    .unwrap()
                    .iter()
                    .map(|pl| k.valuation(&x, pl).unwrap() * k.place_degree(pl) as i64)
                    .sum();
                assert_eq!(total, 0, "{x}");
            }
        }
    }

    #[test]
    fn pth_power_detection() {
        let k = f7t();
        assert!(k.is_pth_power(&k.parse_elem("(t+1)^2/t^4").unwrap(), 2).unwrap());
        assert!(k.is_pth_power(&k.parse_elem("2*(t+1)^2").unwrap(), 2).unwrap());
        assert!(!k.is_pth_power(&k.parse_elem("3").unwrap(), 2).unwrap());
        assert!(!k.is_pth_power(&k.parse_elem("t").unwrap(), 3).unwrap());
        assert!(k.is_pth_power(&k.parse_elem("1-t").unwrap().pow(3), 3).unwrap());
    }
}
