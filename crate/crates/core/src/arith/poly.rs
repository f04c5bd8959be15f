//! Univariate polynomials over a [`FiniteField`], including factorization by
//! squarefree decomposition, distinct-degree and equal-degree splitting.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FiniteFieldOps;
use super::finite_field::{FiniteField, Fq};
use super::integer;

const SPLIT_SEED: u64 = 0x5eed_0f_c2a1;

/// Coefficients low to high, with no trailing zeros; zero is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Fq>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: Fq) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Fq, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`; use only on nonzero polynomials.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, f: &FiniteField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &FiniteField) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly, f: &FiniteField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| f.sub(&self.coeff(i), &other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: Fq, f: &FiniteField) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| f.mul(a, &c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, f: &FiniteField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u64, f: &FiniteField) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly, f: &FiniteField) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lead = f.inv(&divisor.lead()).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let factor = f.mul(&c, &inv_lead);
            quot[k - dd] = factor;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let t = f.mul(&factor, dc);
                rem[k - dd + i] = f.sub(&rem[k - dd + i], &t);
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &FiniteField) -> Poly {
        self.divrem(divisor, f).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, divisor: &Poly, f: &FiniteField) -> Poly {
        let (q, r) = self.divrem(divisor, f);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, f: &FiniteField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(&self.lead()).expect("nonzero lead"), f)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly, f: &FiniteField) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `(g, s, t)` with `g = s*a + t*b` monic.
    pub fn ext_gcd(&self, other: &Poly, f: &FiniteField) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = f.inv(&r0.lead()).expect("nonzero");
        (r0.scale(li, f), s0.scale(li, f), t0.scale(li, f))
    }

    /// Inverse modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Poly, f: &FiniteField) -> Option<Poly> {
        let (g, s, _) = self.rem(m, f).ext_gcd(m, f);
        g.is_one().then(|| s.rem(m, f))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly, f: &FiniteField) -> Poly {
        self.mul(other, f).rem(m, f)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly, f: &FiniteField) -> Poly {
        let mut acc = Poly::one().rem(m, f);
        let base = self.rem(m, f);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m, f);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m, f);
            }
        }
        acc
    }

    pub fn pow_mod_u128(&self, e: u128, m: &Poly, f: &FiniteField) -> Poly {
        self.pow_mod(&BigUint::from(e), m, f)
    }

    pub fn derivative(&self, f: &FiniteField) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_int((i as u64 % f.char_u64()) as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: Fq, f: &FiniteField) -> Fq {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| f.add(&f.mul(&acc, &x), c))
    }

    /// Canonical order: by degree, then coefficients from the top by index.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Polynomial from its canonical index among polynomials of degree
    /// `< n` (base-`q` digits, low to high).
    pub fn from_index(mut index: u128, f: &FiniteField) -> Poly {
        let q = f.size() as u128;
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push((index % q) as u64);
            index /= q;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn index(&self, f: &FiniteField) -> u128 {
        let q = f.size() as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * q + c as u128)
    }

    pub fn format(&self, f: &FiniteField, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = f.format(&c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = match (c, i) {
                (_, 0) => cs,
                (1, _) => mono,
                _ => format!("{cs}*{mono}"),
            };
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }

    /// `x^(q^k) mod self`, by repeated `q`-th powering.
    fn frobenius_power_of_x(&self, k: usize, f: &FiniteField) -> Poly {
        let q = BigUint::from(f.size());
        let mut h = Poly::x().rem(self, f);
        for _ in 0..k {
            h = h.pow_mod(&q, self, f);
        }
        h
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &FiniteField) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let m = self.monic(f);
        let x = Poly::x();
        if !m.frobenius_power_of_x(n, f).sub(&x, f).rem(&m, f).is_zero() {
            return false;
        }
        integer::prime_divisors(n as u128).into_iter().all(|r| {
            let h = m.frobenius_power_of_x(n / r as usize, f);
            h.sub(&x, f).gcd(&m, f).is_one()
        })
    }

    /// `l`-th root of a polynomial whose exponents are all multiples of `l`.
    fn char_root(&self, f: &FiniteField) -> Poly {
        let l = f.char_u64() as usize;
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .step_by(l)
                .map(|&c| f.pth_root(c))
                .collect(),
        )
    }

    pub fn factor(&self, f: &FiniteField) -> PolyFactorization {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let lead = self.lead();
        let monic = self.monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for (sq, mult) in squarefree(&monic, f) {
            for (g, d) in distinct_degree(&sq, f) {
                for irr in equal_degree(&g, d, f, &mut rng) {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (g, e) in factors {
            match merged.last_mut() {
                Some((last, m)) if *last == g => *m += e,
                _ => merged.push((g, e)),
            }
        }
        PolyFactorization {
            lead,
            factors: merged,
        }
    }
}

/// Leading coefficient times monic irreducible powers, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactorization {
    pub lead: Fq,
    pub factors: Vec<(Poly, u32)>,
}

impl PolyFactorization {
    pub fn product(&self, f: &FiniteField) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.lead), |acc, (g, e)| {
                acc.mul(&g.pow(*e as u64, f), f)
            })
    }
}

fn squarefree(f_in: &Poly, f: &FiniteField) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f_in.is_constant() {
        return out;
    }
    let l = f.char_u64() as u32;
    let mut c = f_in.gcd(&f_in.derivative(f), f);
    let mut w = f_in.div_exact(&c, f);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, f);
        let fac = w.div_exact(&y, f);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w, f);
        i += 1;
    }
    if !c.is_one() {
        for (g, j) in squarefree(&c.char_root(f), f) {
            out.push((g, j * l));
        }
    }
    out
}

fn distinct_degree(g: &Poly, f: &FiniteField) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let q = BigUint::from(f.size());
    let x = Poly::x();
    let mut h = x.rem(&rest, f);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest, f);
        let part = h.sub(&x, f).gcd(&rest, f);
        if !part.is_one() {
            rest = rest.div_exact(&part, f);
            h = h.rem(&rest, f);
            out.push((part, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let dd = rest.deg();
        out.push((rest, dd));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, f: &FiniteField, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.deg();
    if n == d {
        return vec![g.clone()];
    }
    let q = f.size();
    let odd = q % 2 == 1;
    let qd = BigUint::from(q).pow(d as u32);
    let half = (&qd - BigUint::one()) >> 1u32;
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if odd {
            a.pow_mod(&half, g, f).sub(&Poly::one(), f)
        } else {
            // absolute trace to F_2
            let k = f.degree() as usize * d;
            let mut acc = Poly::zero();
            let mut cur = a.rem(g, f);
            for _ in 0..k {
                acc = acc.add(&cur, f);
                cur = cur.mul_mod(&cur, g, f);
            }
            acc
        };
        if b.is_zero() {
            continue;
        }
        let h = b.gcd(g, f);
        if !h.is_one() && h.deg() < n {
            let mut out = equal_degree(&h, d, f, rng);
            out.extend(equal_degree(&g.div_exact(&h, f), d, f, rng));
            return out;
        }
    }
}

/// Monic irreducible polynomials of degree `deg` over `f`, canonical order.
pub fn monic_irreducibles(deg: usize, f: &FiniteField) -> Vec<Poly> {
    let q = f.size() as u128;
    let count = q.pow(deg as u32);
    (0..count)
        .map(|i| {
            let mut p = Poly::from_index(i, f).coeffs;
            p.resize(deg, 0);
            p.push(1);
            Poly::from_coeffs(p)
        })
        .filter(|p| p.is_irreducible(f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[u64]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn factor_examples() {
        let f7 = FiniteField::prime(7).unwrap();
        // x^2 - 1 = (x+1)(x-1); canonical order puts x+1 before x+6
        let fac = p(&[6, 0, 1]).factor(&f7);
        assert_eq!(fac.lead, 1);
        assert_eq!(fac.factors, vec![(p(&[1, 1]), 1), (p(&[6, 1]), 1)]);
        let fac = p(&[1, 0, 1]).factor(&f7);
        assert_eq!(fac.factors, vec![(p(&[1, 0, 1]), 1)]);
        let f5 = FiniteField::prime(5).unwrap();
        let fac = p(&[1, 0, 1]).factor(&f5);
        // x - 2 = x + 3 and x - 3 = x + 2
        assert_eq!(fac.factors, vec![(p(&[2, 1]), 1), (p(&[3, 1]), 1)]);
    }

    #[test]
    fn factor_with_repeated_and_inseparable_parts() {
        let f3 = FiniteField::prime(3).unwrap();
        // (x^3 + 2x + 1)^3 * (x + 1)^2 * 2
        let irr = p(&[1, 2, 0, 1]);
        assert!(irr.is_irreducible(&f3));
        let g = irr
            .pow(3, &f3)
            .mul(&p(&[1, 1]).pow(2, &f3), &f3)
            .scale(2, &f3);
        let fac = g.factor(&f3);
        assert_eq!(fac.lead, 2);
        assert_eq!(fac.factors, vec![(p(&[1, 1]), 2), (irr, 3)]);
        assert_eq!(fac.product(&f3), g);
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree n over F_q
        fn necklace(q: u128, n: u32) -> u128 {
            let mut total: i128 = 0;
            for d in 1..=n {
                if n % d != 0 {
                    continue;
                }
                let m = n / d;
                let mu = mobius(m);
                total += mu * (q.pow(d) as i128);
            }
            (total / n as i128) as u128
        }
        fn mobius(n: u32) -> i128 {
            let f = integer::factor_u128(n as u128);
            if f.iter().any(|&(_, e)| e > 1) {
                0
            } else if f.len() % 2 == 0 {
                1
            } else {
                -1
            }
        }
        for q in [2u64, 3, 4, 5, 7, 9] {
            let f = FiniteField::new(q).unwrap();
            for n in 1..=3 {
                assert_eq!(
                    monic_irreducibles(n, &f).len() as u128,
                    necklace(q as u128, n as u32),
                    "q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = FiniteField::new(9).unwrap();
        let a = p(&[1, 3, 0, 2]);
        let b = p(&[5, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b, &f);
        assert_eq!(s.mul(&a, &f).add(&t.mul(&b, &f), &f), g);
    }

    #[test]
    fn char_two_splitting() {
        let f4 = FiniteField::new(4).unwrap();
        // x^4 + x = x (x+1)(x+a)(x+a+1) over F_4
        let g = p(&[0, 1, 0, 0, 1]);
        let fac = g.factor(&f4);
        assert_eq!(fac.factors.len(), 4);
        assert!(fac.factors.iter().all(|(h, e)| h.deg() == 1 && *e == 1));
        assert_eq!(fac.product(&f4), g);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]
        #[test]
        fn factorization_round_trips(
            qi in 0usize..5,
            coeffs in prop::collection::vec(0u64..1000, 1..9),
        ) {
            let q = [2u64, 3, 7, 9, 25][qi];
            let f = FiniteField::new(q).unwrap();
            let g = Poly::from_coeffs(coeffs.iter().map(|c| c % q).collect());
            prop_assume!(!g.is_zero());
            let fac = g.factor(&f);
            prop_assert_eq!(fac.product(&f), g);
            for (h, _) in &fac.factors {
                prop_assert!(h.is_monic() && h.is_irreducible(&f));
            }
        }
    }
}
