use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::{FieldDescriptor, GlobalField, ResidueElem};
use crate::arith::{factor_integer, integer, PrimeField, Rational};
use crate::error::{Error, Result};
use crate::symbols::{self, LocalSymbol, SymbolKind};

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

/// A place of `Q`: a prime, or the real place (ordered last).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RationalPlace {
    Prime(u128),
    Real,
}

impl RationalPlace {
    pub fn prime(p: u128) -> Result<Self> {
        if integer::is_prime(p) {
            Ok(RationalPlace::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }
}

/// Splits `n = p^k * m` with `p` not dividing `m`.
fn strip(n: &BigInt, p: u128) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (k, m);
        }
        m = q;
        k += 1;
    }
}

fn mod_u128(n: &BigInt, p: u128) -> u128 {
    n.mod_floor(&BigInt::from(p)).to_u128().expect("reduced")
}

fn is_perfect_power(n: &BigInt, p: u32) -> bool {
    let r = n.nth_root(p);
    num_traits::pow(r, p as usize) == *n
}

fn discrete(place: &RationalPlace) -> Result<u128> {
    match place {
        RationalPlace::Prime(p) => Ok(*p),
        RationalPlace::Real => Err(Error::Archimedean),
    }
}

impl GlobalField for Rationals {
    type Elem = Rational;
    type Place = RationalPlace;
    type Residue = PrimeField;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from_int(n.clone())
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        a.inv()
    }

    fn pow(&self, a: &Rational, e: i64) -> Rational {
        a.pow(e)
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }

    fn symbol(&self, _name: &str) -> Option<Rational> {
        None
    }

    fn parse_place(&self, s: &str) -> Result<RationalPlace> {
        if s == "inf" {
            return Ok(RationalPlace::Real);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(0, format!("expected a prime or `inf`, got {s:?}")));
        }
        let p: u128 = s
            .parse()
            .map_err(|_| Error::parse(0, format!("prime out of range: {s}")))?;
        RationalPlace::prime(p)
    }

    fn place_body(&self, place: &RationalPlace) -> String {
        match place {
            RationalPlace::Prime(p) => p.to_string(),
            RationalPlace::Real => "inf".into(),
        }
    }

    fn is_discrete(&self, place: &RationalPlace) -> bool {
        matches!(place, RationalPlace::Prime(_))
    }

    fn residue_size(&self, place: &RationalPlace) -> Result<u128> {
        discrete(place)
    }

    fn residue_field(&self, place: &RationalPlace) -> Result<PrimeField> {
        Ok(PrimeField::new(discrete(place)?))
    }

    fn valuation(&self, x: &Rational, place: &RationalPlace) -> Result<i64> {
        let p = discrete(place)?;
        if x.is_zero() {
            return Err(Error::Domain("valuation of zero".into()));
        }
        let (a, _) = strip(x.numer(), p);
        let (b, _) = strip(x.denom(), p);
        Ok(a - b)
    }

    fn uniformizer(&self, place: &RationalPlace) -> Result<Rational> {
        Ok(Rational::from_int(BigInt::from(discrete(place)?)))
    }

    fn angular_component(&self, x: &Rational, place: &RationalPlace) -> Result<(i64, u128)> {
        let p = discrete(place)?;
        if x.is_zero() {
            return Err(Error::Domain("angular component of zero".into()));
        }
        let (a, n) = strip(x.numer(), p);
        let (b, d) = strip(x.denom(), p);
        let n = mod_u128(&n, p);
        let d = integer::inv_mod(mod_u128(&d, p), p).expect("unit mod p");
        Ok((a - b, integer::mul_mod(n, d, p)))
    }

    fn lift_residue(&self, z: &ResidueElem<Self>, place: &RationalPlace) -> Result<Rational> {
        discrete(place)?;
        Ok(Rational::from_int(BigInt::from(*z)))
    }

    fn support(&self, x: &Rational) -> Result<Vec<RationalPlace>> {
        let mut primes: Vec<u128> = factor_integer(x.numer())?
            .factors
            .into_iter()
            .chain(factor_integer(x.denom())?.factors)
            .map(|(p, _)| p)
            .collect();
        primes.sort_unstable();
        primes.dedup();
        Ok(primes.into_iter().map(RationalPlace::Prime).collect())
    }

    fn is_pth_power(&self, x: &Rational, p: u64) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::Domain("p-th power test of zero".into()));
        }
        if p == 2 && x.is_negative() {
            return Ok(false);
        }
        let e = p as u32;
        Ok(is_perfect_power(x.numer(), e) && is_perfect_power(x.denom(), e))
    }

    fn height(&self, x: &Rational) -> u64 {
        x.height_u64().unwrap_or(u64::MAX)
    }

    /// `h/1, -h/1, h/2, -h/2, ..., 1/h, -1/h, 2/h, ...`: ordered by
    /// denominator, then numerator, positive before negative.
    fn elements_of_height(&self, h: u64) -> Vec<Rational> {
        let mut out = Vec::new();
        if h == 0 {
            return out;
        }
        let mut push = |n: u64, d: u64| {
            let r = Rational::new(n, d).expect("d > 0");
            let neg = -&r;
            out.push(r);
            out.push(neg);
        };
        if h == 1 {
            push(1, 1);
            return out;
        }
        for d in 1..h {
            if h.gcd(&d) == 1 {
                push(h, d);
            }
        }
        for n in 1..h {
            if n.gcd(&h) == 1 {
                push(n, h);
            }
        }
        out
    }

    fn min_height(&self) -> u64 {
        1
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, h: u64) -> Rational {
        let h = h.max(1);
        let n = rng.gen_range(1..=h) as i64;
        let n = if rng.gen_bool(0.5) { -n } else { n };
        let d = rng.gen_range(1..=h);
        Rational::new(n, d).expect("d > 0")
    }

    fn first_places(&self, n: usize) -> Vec<RationalPlace> {
        (2u128..)
            .filter(|&k| integer::is_prime(k))
            .take(n)
            .map(RationalPlace::Prime)
            .collect()
    }

    /// For `p = 2`: the place 2, odd primes in the supports, then the real
    /// place. For odd `p`: odd primes in the supports other than `p`.
    fn k2_places(&self, x: &Rational, y: &Rational, p: u64) -> Result<Vec<RationalPlace>> {
        let mut s = self.support(x)?;
        s.extend(self.support(y)?);
        s.sort();
        s.dedup();
        let odd = s
            .into_iter()
            .filter(|pl| matches!(pl, RationalPlace::Prime(l) if *l != 2 && *l != p as u128));
        if p == 2 {
            let mut out = vec![RationalPlace::Prime(2)];
            out.extend(odd);
            out.push(RationalPlace::Real);
            Ok(out)
        } else {
            Ok(odd.collect())
        }
    }

    fn local_symbol(
        &self,
        x: &Rational,
        y: &Rational,
        place: &RationalPlace,
        p: u64,
    ) -> Result<LocalSymbol> {
        let sign = |kind, s: i8| LocalSymbol {
            place: self.place_label(place),
            kind,
            value: s.to_string(),
            class: u64::from(s < 0 && p == 2),
        };
        match place {
            RationalPlace::Real => Ok(sign(SymbolKind::Real, symbols::hilbert_at_real(x, y))),
            RationalPlace::Prime(2) if p == 2 => {
                Ok(sign(SymbolKind::Hilbert2, symbols::hilbert2_at_two(x, y)))
            }
            RationalPlace::Prime(l) if *l == p as u128 => Err(Error::WildPlace {
                place: self.place_label(place),
                p,
            }),
            _ => symbols::tame_local_symbol(self, x, y, place, p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::residue;

    fn q(s: &str) -> Rational {
        Rationals.parse_elem(s).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let p5 = RationalPlace::Prime(5);
        assert_eq!(Rationals.valuation(&q("50"), &p5).unwrap(), 2);
        assert_eq!(Rationals.valuation(&q("1"), &p5).unwrap(), 0);
        assert_eq!(Rationals.valuation(&q("3/125"), &p5).unwrap(), -3);
        assert_eq!(
            Rationals.valuation(&q("2"), &RationalPlace::Real),
            Err(Error::Archimedean)
        );
    }

    #[test]
    fn residue_examples() {
        let p5 = RationalPlace::Prime(5);
        assert_eq!(residue(&Rationals, &q("1/2"), &p5).unwrap(), 3);
        assert_eq!(residue(&Rationals, &q("1"), &p5).unwrap(), 1);
        assert!(matches!(
            residue(&Rationals, &q("5"), &p5),
            Err(Error::NotAUnit { .. })
        ));
        // -7/3 = 1 mod 5 since 3 * 1 = 3 = -7
        assert_eq!(residue(&Rationals, &q("-7/3"), &p5).unwrap(), 1);
    }

    #[test]
    fn height_enumeration() {
        let h2: Vec<String> = Rationals.elements_of_height(2).iter().map(|r| r.to_string()).collect();
        assert_eq!(h2, ["2", "-2", "1/2", "-1/2"]);
        let h1: Vec<String> = Rationals.elements_of_height(1).iter().map(|r| r.to_string()).collect();
        assert_eq!(h1, ["1", "-1"]);
        // count of nonzero rationals with max(|n|, d) <= h, by brute force
        for h in 1..30i64 {
            let mut brute = std::collections::HashSet::new();
            for n in -h..=h {
                for d in 1..=h {
                    if n != 0 {
                        brute.insert(Rational::new(n, d).unwrap());
                    }
                }
            }
            let all = Rationals.elements_up_to(h as u64);
            assert_eq!(all.len(), brute.len());
            assert!(all.iter().all(|r| brute.contains(r) && Rationals.height(r) <= h as u64));
        }
    }

    #[test]
    fn pth_powers() {
        assert!(Rationals.is_pth_power(&q("4/9"), 2).unwrap());
        assert!(!Rationals.is_pth_power(&q("-4"), 2).unwrap());
        assert!(Rationals.is_pth_power(&q("-8/27"), 3).unwrap());
        assert!(!Rationals.is_pth_power(&q("2"), 3).unwrap());
    }

    #[test]
    fn place_grammar() {
        assert_eq!(Rationals.parse_place_label("Q:5").unwrap(), RationalPlace::Prime(5));
        assert_eq!(Rationals.parse_place_label("inf").unwrap(), RationalPlace::Real);
        assert!(Rationals.parse_place_label("Q:6").is_err());
        assert!(Rationals.parse_place_label("F7t:5").is_err());
        assert_eq!(Rationals.place_label(&RationalPlace::Prime(13)), "Q:13");
        assert_eq!(Rationals.place_label(&RationalPlace::Real), "Q:inf");
        assert!(RationalPlace::Prime(1_000_003) < RationalPlace::Real);
    }

    #[test]
    fn sum_formula() {
        // prod_P N(P)^{v_P(x)} = |x|
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        use rand::SeedableRng;
        for _ in 0..500 {
            let x = Rationals.random_element(&mut rng, 10_000);
            let mut acc = Rational::one();
            for pl in Rationals.support(&x).unwrap() {
                let RationalPlace::Prime(l) = pl else { unreachable!() };
                let v = Rationals.valuation(&x, &pl).unwrap();
                acc = &acc * &Rational::from_int(BigInt::from(l)).pow(v);
            }
            assert_eq!(acc, x.abs());
        }
    }
}
