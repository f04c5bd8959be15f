//! The finite-field interface shared by prime fields, `F_q = F_l[x]/(m)`
//! and residue fields `F_q[t]/(pi)`, plus the generic power-residue helpers.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use super::integer::{self, gcd, mul_mod, pow_mod};

pub trait FiniteFieldOps: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u128;
    /// Number of elements `q`.
    fn order(&self) -> u128;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;

    /// The element at position `index` in the canonical enumeration
    /// `0 <= index < q`.
    fn element(&self, index: u128) -> Self::Elem;
    fn index(&self, a: &Self::Elem) -> u128;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// `F_l` for a prime `l < 2^96`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u128,
}

impl PrimeField {
    /// Panics unless `p` is prime; callers validate places first.
    pub fn new(p: u128) -> Self {
        assert!(integer::is_prime(p), "{p} is not prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u128 {
        self.p
    }

    pub fn reduce_i128(&self, n: i128) -> u128 {
        n.rem_euclid(self.p as i128) as u128
    }
}

impl FiniteFieldOps for PrimeField {
    type Elem = u128;

    fn characteristic(&self) -> u128 {
        self.p
    }
    fn order(&self) -> u128 {
        self.p
    }
    fn zero(&self) -> u128 {
        0
    }
    fn one(&self) -> u128 {
        1 % self.p
    }
    fn add(&self, a: &u128, b: &u128) -> u128 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, a: &u128) -> u128 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u128, b: &u128) -> u128 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u128) -> Option<u128> {
        integer::inv_mod(*a, self.p)
    }
    fn from_int(&self, n: i64) -> u128 {
        self.reduce_i128(n as i128)
    }
    fn element(&self, index: u128) -> u128 {
        index
    }
    fn index(&self, a: &u128) -> u128 {
        *a
    }
    fn format(&self, a: &u128) -> String {
        a.to_string()
    }
    fn pow(&self, a: &u128, e: u128) -> u128 {
        pow_mod(*a, e, self.p)
    }
}

/// `z` is a `p`-th power in `F_q^*` iff `z^((q-1)/gcd(p, q-1)) = 1`.
pub fn is_pth_power<F: FiniteFieldOps>(field: &F, z: &F::Elem, p: u64) -> bool {
    assert!(!field.is_zero(z), "is_pth_power of zero");
    let q1 = field.order() - 1;
    let e = q1 / gcd(p as u128, q1);
    field.pow(z, e) == field.one()
}

/// The first generator of `F_q^*` in canonical enumeration order.
pub fn primitive_element<F: FiniteFieldOps>(field: &F) -> F::Elem {
    let q1 = field.order() - 1;
    let primes = integer::prime_divisors(q1.max(1));
    let one = field.one();
    (1..field.order())
        .map(|i| field.element(i))
        .find(|g| primes.iter().all(|&r| field.pow(g, q1 / r) != one))
        .expect("a finite field has a generator")
}

/// Baby-step giant-step: the least `k < order` with `base^k = target`.
pub fn discrete_log<F: FiniteFieldOps>(
    field: &F,
    base: &F::Elem,
    target: &F::Elem,
    order: u128,
) -> Option<u128> {
    let m = (order as f64).sqrt().ceil() as u128 + 1;
    let mut baby: HashMap<F::Elem, u128> = HashMap::with_capacity(m as usize);
    let mut cur = field.one();
    for j in 0..m {
        baby.entry(cur.clone()).or_insert(j);
        cur = field.mul(&cur, base);
    }
    let giant = field.inv(&field.pow(base, m))?;
    let mut gamma = target.clone();
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            let k = i * m + j;
            if k < order {
                return Some(k);
            }
        }
        gamma = field.mul(&gamma, &giant);
    }
    None
}

/// Class of `z` in `F_q^* / (F_q^*)^p` as an exponent in `F_p`, relative to
/// the generator `g`: `z = g^k` gives `k mod p`. Zero when `p` does not
/// divide `q - 1`.
#[derive(Debug, Clone)]
pub struct PowerResidue<F: FiniteFieldOps> {
    field: F,
    p: u64,
    zeta: F::Elem,
    cofactor: u128,
    nontrivial: bool,
}

impl<F: FiniteFieldOps> PowerResidue<F> {
    pub fn new(field: F, generator: &F::Elem, p: u64) -> Self {
        let q1 = field.order() - 1;
        let nontrivial = q1 % p as u128 == 0;
        let cofactor = if nontrivial { q1 / p as u128 } else { 1 };
        let zeta = field.pow(generator, cofactor);
        PowerResidue {
            field,
            p,
            zeta,
            cofactor,
            nontrivial,
        }
    }

    pub fn is_nontrivial(&self) -> bool {
        self.nontrivial
    }

    /// The primitive `p`-th root of unity `g^((q-1)/p)`.
    pub fn zeta(&self) -> &F::Elem {
        &self.zeta
    }

    pub fn exponent(&self, z: &F::Elem) -> u64 {
        assert!(!self.field.is_zero(z), "power residue of zero");
        if !self.nontrivial {
            return 0;
        }
        let w = self.field.pow(z, self.cofactor);
        discrete_log(&self.field, &self.zeta, &w, self.p as u128)
            .expect("z^((q-1)/p) lies in mu_p") as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pth_power_examples() {
        let f5 = PrimeField::new(5);
        assert!(!is_pth_power(&f5, &2, 2));
        assert!(is_pth_power(&f5, &4, 2));
        // 3 does not divide 4: cubing is a bijection
        assert!((1..5).all(|z| is_pth_power(&f5, &z, 3)));
    }

    #[test]
    fn pth_power_matches_brute_force_prime_fields() {
        for q in [2u128, 3, 5, 7, 11, 13, 31, 37, 101, 113] {
            let f = PrimeField::new(q);
            for p in [2u64, 3, 5, 7] {
                let powers: std::collections::HashSet<u128> =
                    (1..q).map(|y| f.pow(&y, p as u128)).collect();
                for z in 1..q {
                    assert_eq!(is_pth_power(&f, &z, p), powers.contains(&z));
                }
            }
        }
    }

    #[test]
    fn smallest_primitive_roots() {
        let expected = [(5u128, 2u128), (7, 3), (11, 2), (13, 2), (23, 5), (41, 6)];
        for (p, g) in expected {
            assert_eq!(primitive_element(&PrimeField::new(p)), g);
        }
    }

    #[test]
    fn bsgs_recovers_exponents() {
        let f = PrimeField::new(101);
        let g = primitive_element(&f);
        for k in 0..100 {
            let t = f.pow(&g, k);
            assert_eq!(discrete_log(&f, &g, &t, 100), Some(k));
        }
    }

    #[test]
    fn power_residue_exponent() {
        let f = PrimeField::new(5);
        let pr = PowerResidue::new(f, &2, 2);
        assert_eq!(pr.exponent(&2), 1);
        assert_eq!(pr.exponent(&4), 0);
        assert_eq!(pr.exponent(&3), 1);
        let f7 = PrimeField::new(7);
        let pr = PowerResidue::new(f7, &3, 5);
        assert!(!pr.is_nontrivial());
        assert_eq!(pr.exponent(&3), 0);
    }
}
