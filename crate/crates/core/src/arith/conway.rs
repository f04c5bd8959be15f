//! Conway polynomials `C(l, r)` for every proper extension `F_{l^r}` with
//! `l^r <= 729`. Coefficients are low to high and monic.

const TABLE: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
    (17, 2, &[3, 16, 1]),
    (19, 2, &[2, 18, 1]),
    (23, 2, &[5, 21, 1]),
];

pub fn conway_modulus(l: u64, r: u32) -> Option<&'static [u64]> {
    TABLE
        .iter()
        .find(|(tl, tr, _)| *tl == l && *tr == r)
        .map(|(_, _, c)| *c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{primitive_element, FiniteFieldOps};
    use crate::arith::finite_field::FiniteField;
    use crate::arith::integer;
    use crate::arith::poly::Poly;
    use num_bigint::BigUint;

    /// Lexicographic Conway search: `x^n - a_{n-1} x^{n-1} + ... + (-1)^n a_0`
    /// with `(a_{n-1}, ..., a_0)` minimal among primitive polynomials
    /// compatible with all lower Conway polynomials.
    fn search(l: u64, n: u32, lower: &dyn Fn(u32) -> Vec<u64>) -> Vec<u64> {
        let f = FiniteField::prime(l).unwrap();
        let order = (l as u128).pow(n) - 1;
        let primes = integer::prime_divisors(order);
        let total = (l as u128).pow(n);
        for idx in 0..total {
            // base-l digits of idx; a[n-1] is the most significant
            let mut a = vec![0u64; n as usize];
            let mut k = idx;
            for i in 0..n as usize {
                a[i] = (k % l as u128) as u64;
                k /= l as u128;
            }
            let mut coeffs = vec![0u64; n as usize + 1];
            coeffs[n as usize] = 1;
            for i in 0..n as usize {
                let sign_neg = (n as usize - i) % 2 == 1;
                coeffs[i] = if sign_neg { f.neg(&a[i]) } else { a[i] };
            }
            let cand = Poly::from_coeffs(coeffs);
            if !cand.is_irreducible(&f) {
                continue;
            }
            let x = Poly::x();
            let one = Poly::one();
            if primes
                .iter()
                .any(|&r| x.pow_mod_u128(order / r, &cand, &f) == one)
            {
                continue;
            }
            let compatible = (1..n).filter(|m| n % m == 0).all(|m| {
                let e = order / ((l as u128).pow(m) - 1);
                let beta = x.pow_mod(&BigUint::from(e), &cand, &f);
                let cm = Poly::from_coeffs(lower(m));
                // evaluate cm at beta modulo cand
                let mut acc = Poly::zero();
                for c in cm.coeffs().iter().rev() {
                    acc = acc.mul_mod(&beta, &cand, &f).add(&Poly::constant(*c), &f);
                }
                acc.is_zero()
            });
            if compatible {
                return cand.coeffs().to_vec();
            }
        }
        panic!("no Conway polynomial found for ({l}, {n})");
    }

    fn conway_by_search(l: u64, n: u32) -> Vec<u64> {
        if n == 1 {
            let f = FiniteField::prime(l).unwrap();
            let g = primitive_element(&f);
            return vec![f.neg(&g), 1];
        }
        search(l, n, &|m| conway_by_search(l, m))
    }

    fn field_degrees() -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for l in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
            let mut r = 2;
            while l.pow(r) <= 729 {
                out.push((l, r));
                r += 1;
            }
        }
        out
    }

    #[test]
    fn well_known_values() {
        let known: &[(u64, u32, &[u64])] = &[
            (2, 2, &[1, 1, 1]),
            (2, 3, &[1, 1, 0, 1]),
            (2, 4, &[1, 1, 0, 0, 1]),
            (3, 2, &[2, 2, 1]),
            (5, 2, &[2, 4, 1]),
            (7, 2, &[3, 6, 1]),
            (3, 3, &[1, 2, 0, 1]),
        ];
        for (l, r, c) in known {
            assert_eq!(conway_by_search(*l, *r), c.to_vec(), "C({l},{r})");
        }
    }

    #[test]
    fn table_matches_search() {
        let mut bad = Vec::new();
        for (l, r) in field_degrees() {
            let searched = conway_by_search(l, r);
                        if conway_modulus(l, r) != Some(searched.as_slice()) {
                bad.push((l, r));
            }
        }
        assert!(bad.is_empty(), "mismatched entries {bad:?}");
    }
}
