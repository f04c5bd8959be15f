//! Machine-integer number theory: modular products on `u128`, Miller-Rabin,
//! and bounded factorization (trial division, then Pollard-Brent rho).

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default factorization bound, in bits.
pub const DEFAULT_FACTOR_BITS: u32 = 80;
/// Largest bound supported by the `u128` modular kernel.
pub const MAX_FACTOR_BITS: u32 = 96;

const TRIAL_LIMIT: u128 = 10_000;

/// `a * b mod m` for `m < 2^96`.
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0);
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let a = a % m;
    let b = b % m;
    let mut r: u128 = 0;
    for shift in [64u32, 32, 0] {
        let chunk = (b >> shift) & 0xffff_ffff;
        r = (r << 32) % m;
        r = (r + a * chunk % m) % m;
    }
    r
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a % m, m);
    // Bezout coefficients are kept reduced mod m to avoid overflow.
    let (mut old_s, mut s) = (1u128, 0u128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        let qs = mul_mod(q % m, s, m);
        (old_s, s) = (s, (old_s + m - qs) % m);
    }
    (old_r == 1).then_some(old_s)
}

const MR_BASES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first 13 prime bases, deterministic below 3.3e24
/// (covers 2^80); larger inputs use 20 bases.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let rounds = if n < 3_317_044_064_679_887_385_961_981u128 { 13 } else { 20 };
    'witness: for &a in &MR_BASES[..rounds] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho(n: u128, c: u128) -> Option<u128> {
    let f = |x: u128| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
    let mut g = 1u128;
    let mut x = y;
    let mut ys = y;
    let m = 128u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = rho(n, c) {
            break d;
        }
        c += 1;
    };
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factorization of a positive machine integer, sorted by prime.
pub fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    assert!(n > 0, "factor_u128 of zero");
    let mut primes = Vec::new();
    let mut p = 2u128;
    while p <= TRIAL_LIMIT && p * p <= n {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        split_into(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Sign and prime-power factorization of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerFactorization {
    pub negative: bool,
    pub factors: Vec<(u128, u32)>,
}

impl IntegerFactorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(if self.negative { -1 } else { 1 });
        for &(p, e) in &self.factors {
            acc *= num_traits::pow(BigInt::from(p), e as usize);
        }
        acc
    }
}

pub fn factor_integer(n: &BigInt) -> Result<IntegerFactorization> {
    factor_integer_bounded(n, DEFAULT_FACTOR_BITS)
}

pub fn factor_integer_bounded(n: &BigInt, bound_bits: u32) -> Result<IntegerFactorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let bound_bits = bound_bits.min(MAX_FACTOR_BITS);
    let magnitude = n.magnitude();
    if magnitude.bits() > bound_bits as u64 {
        return Err(Error::FactorBudget {
            value: n.to_string(),
            bound_bits,
        });
    }
    let m = magnitude.to_u128().expect("bounded by 96 bits");
    Ok(IntegerFactorization {
        negative: n.sign() == Sign::Minus,
        factors: factor_u128(m),
    })
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u128) -> Vec<u128> {
    factor_u128(n).into_iter().map(|(p, _)| p).collect()
}
