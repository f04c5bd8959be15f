//! `F_q = F_l[x]/(m)` with elements stored as their coordinate index
//! `sum c_i l^i`. Small extension fields multiply through log tables.

use std::fmt;
use std::sync::Arc;

use super::conway::conway_modulus;
use super::field::{primitive_element, FiniteFieldOps};
use super::integer;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Element of a [`FiniteField`]: the coordinate index (see module docs).
pub type Fq = u64;

const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

struct Inner {
    l: u64,
    r: u32,
    q: u64,
    /// Monic, low-to-high, length `r + 1`; `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

impl FiniteField {
    /// `F_l` for a prime `l < 2^32`.
    pub fn prime(l: u64) -> Result<Self> {
        if l >= 1 << 32 || !integer::is_prime(l as u128) {
            return Err(Error::InvalidField(format!("{l} is not a prime below 2^32")));
        }
        Ok(FiniteField(Arc::new(Inner {
            l,
            r: 1,
            q: l,
            modulus: vec![0, 1],
            tables: None,
        })))
    }

    /// `F_q` for a prime power `q`. Prime fields need no modulus; proper
    /// extensions use the built-in Conway table (`q <= 729`).
    pub fn new(q: u64) -> Result<Self> {
        let (l, r) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if r == 1 {
            return Self::prime(l);
        }
        let modulus = conway_modulus(l, r).ok_or_else(|| {
            Error::InvalidField(format!(
                "no built-in modulus for q = {q}; supply one with FiniteField::with_modulus"
            ))
        })?;
        Self::with_modulus(l, modulus.to_vec())
    }

    /// `F_l[x]/(m)` for a caller-supplied monic irreducible `m`
    /// (coefficients low to high).
    pub fn with_modulus(l: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = Self::prime(l)?;
        let m = Poly::from_coeffs(modulus.iter().map(|c| c % l).collect());
        let r = match m.degree() {
            Some(d) if d >= 1 => d as u32,
            _ => return Err(Error::InvalidField("modulus must have degree >= 1".into())),
        };
        if m.lead() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !m.is_irreducible(&base) {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over F_{l}",
                m.format(&base, "x")
            )));
        }
        if r == 1 {
            // Degree-one moduli all give the prime field itself.
            return Ok(base);
        }
        let q = (l as u128).pow(r);
        if q >= 1 << 63 {
            return Err(Error::InvalidField("field too large".into()));
        }
        let mut inner = Inner {
            l,
            r,
            q: q as u64,
            modulus: m.coeffs().to_vec(),
            tables: None,
        };
        if inner.q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FiniteField(Arc::new(inner)))
    }

    pub fn char_u64(&self) -> u64 {
        self.0.l
    }

    pub fn degree(&self) -> u32 {
        self.0.r
    }

    pub fn size(&self) -> u64 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.r == 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn coords(&self, a: Fq) -> Vec<u64> {
        digits(a, self.0.l, self.0.r)
    }

    pub fn from_coords(&self, coords: &[u64]) -> Fq {
        assert!(coords.len() <= self.0.r as usize);
        undigits(coords, self.0.l)
    }

    /// The `l`-th root, i.e. inverse Frobenius `a^(q/l)`.
    pub fn pth_root(&self, a: Fq) -> Fq {
        self.pow(&a, (self.0.q / self.0.l) as u128)
    }

    /// Descriptor string such as `F7` or `F9`.
    pub fn name(&self) -> String {
        format!("F{}", self.0.q)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.l == other.0.l && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

/// `(l, r)` with `q = l^r`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = integer::factor_u128(q as u128);
    match factors.as_slice() {
        [(l, r)] => Some((*l as u64, *r)),
        _ => None,
    }
}

fn digits(mut a: u64, l: u64, r: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(r as usize);
    for _ in 0..r {
        out.push(a % l);
        a /= l;
    }
    out
}

fn undigits(coords: &[u64], l: u64) -> u64 {
    coords.iter().rev().fold(0, |acc, &c| acc * l + c % l)
}

fn mul_slow(inner: &Inner, a: u64, b: u64) -> u64 {
    let l = inner.l;
    let r = inner.r as usize;
    let da = digits(a, l, inner.r);
    let db = digits(b, l, inner.r);
    let mut prod = vec![0u64; 2 * r - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % l;
        }
    }
    // reduce by the monic modulus
    for k in (r..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..r {
            let m = inner.modulus[i];
            prod[k - r + i] = (prod[k - r + i] + (l - c) * m) % l;
        }
    }
    undigits(&prod[..r], l)
}

fn build_tables(inner: &Inner) -> Tables {
    // Find the canonical generator with the slow multiplication.
    let q = inner.q;
    let pow = |a: u64, mut e: u64| {
        let (mut acc, mut base) = (1u64, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_slow(inner, acc, base);
            }
            base = mul_slow(inner, base, base);
            e >>= 1;
        }
        acc
    };
    let primes = integer::prime_divisors((q - 1) as u128);
    let g = (2..q)
        .find(|&g| primes.iter().all(|&p| pow(g, (q - 1) / p as u64) != 1))
        .expect("generator exists");
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u64;
    for i in 0..q - 1 {
        exp.push(cur);
        log[cur as usize] = i as u32;
        cur = mul_slow(inner, cur, g);
    }
    Tables { exp, log }
}

impl FiniteFieldOps for FiniteField {
    type Elem = Fq;

    fn characteristic(&self) -> u128 {
        self.0.l as u128
    }

    fn order(&self) -> u128 {
        self.0.q as u128
    }

    fn zero(&self) -> Fq {
        0
    }

    fn one(&self) -> Fq {
        1
    }

    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let l = self.0.l;
        if self.0.r == 1 {
            return (a + b) % l;
        }
        let (mut a, mut b) = (*a, *b);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.0.r {
            out += ((a % l + b % l) % l) * place;
            a /= l;
            b /= l;
            place *= l;
        }
        out
    }

    fn neg(&self, a: &Fq) -> Fq {
        let l = self.0.l;
        if self.0.r == 1 {
            return (l - a % l) % l;
        }
        let mut a = *a;
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.0.r {
            out += ((l - a % l) % l) * place;
            a /= l;
            place *= l;
        }
        out
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if self.0.r == 1 {
            return a * b % self.0.l;
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => {
                let n = (self.0.q - 1) as usize;
                let k = t.log[*a as usize] as usize + t.log[*b as usize] as usize;
                t.exp[k % n]
            }
            None => mul_slow(&self.0, *a, *b),
        }
    }

    fn inv(&self, a: &Fq) -> Option<Fq> {
        if *a == 0 {
            return None;
        }
        if self.0.r == 1 {
            return integer::inv_mod(*a as u128, self.0.l as u128).map(|x| x as u64);
        }
        match &self.0.tables {
            Some(t) => {
                let n = (self.0.q - 1) as usize;
                Some(t.exp[(n - t.log[*a as usize] as usize) % n])
            }
            None => Some(self.pow(a, (self.0.q - 2) as u128)),
        }
    }

    fn from_int(&self, n: i64) -> Fq {
        (n.rem_euclid(self.0.l as i64)) as u64
    }

    fn element(&self, index: u128) -> Fq {
        index as u64
    }

    fn index(&self, a: &Fq) -> u128 {
        *a as u128
    }

    fn format(&self, a: &Fq) -> String {
        if self.0.r == 1 {
            return a.to_string();
        }
        let d = self.coords(*a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// The first generator of `F_q^*` in index order.
pub fn generator(field: &FiniteField) -> Fq {
    primitive_element(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::is_pth_power;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn all_prime_powers_upto(n: u64) -> Vec<u64> {
        (2..=n).filter(|&q| prime_power(q).is_some()).collect()
    }

    #[test]
    fn builtin_fields_construct() {
        for q in all_prime_powers_upto(729) {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.size(), q);
        }
        assert!(FiniteField::new(1024).is_err());
        assert!(FiniteField::new(6).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+2)(x+3) over F_5
        assert!(FiniteField::with_modulus(5, vec![1, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(7, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = FiniteField::new(81).unwrap();
        for a in 0..81 {
            for b in 0..81 {
                assert_eq!(f.mul(&a, &b), mul_slow(&f.0, a, b));
            }
        }
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 4, 7, 9, 25, 27, 121, 343, 729] {
            let f = FiniteField::new(q).unwrap();
            for _ in 0..1000 {
                let a = rng.gen_range(0..q);
                let b = rng.gen_range(0..q);
                let c = rng.gen_range(0..q);
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                assert_eq!(f.add(&a, &f.neg(&a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn frobenius_root() {
        let f = FiniteField::new(27).unwrap();
        for a in 0..27 {
            let r = f.pth_root(a);
            assert_eq!(f.pow(&r, 3), a);
        }
    }

    #[test]
    fn pth_power_brute_force_all_small_fields() {
        for q in all_prime_powers_upto(121) {
            let f = FiniteField::new(q).unwrap();
            for p in [2u64, 3, 5, 7, 11] {
                if q % p == 0 {
                    continue;
                }
                let powers: HashSet<u64> = (1..q).map(|y| f.pow(&y, p as u128)).collect();
                for z in 1..q {
                    assert_eq!(is_pth_power(&f, &z, p), powers.contains(&z), "q={q} p={p} z={z}");
                }
            }
        }
    }

    #[test]
    fn formats_extension_elements() {
        let f = FiniteField::new(9).unwrap();
        assert_eq!(f.format(&0), "0");
        assert_eq!(f.format(&1), "1");
        assert_eq!(f.format(&3), "a");
        assert_eq!(f.format(&7), "2*a+1");
    }
}
