//! Subspaces of `F_p^n` in reduced row echelon form.

use serde::Serialize;

pub type Vector = Vec<u64>;

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::integer::inv_mod(a as u128, p as u128).expect("nonzero mod p") as u64
}

/// A subspace of `F_p^n`, stored by its RREF basis. Two subspaces are
/// equal iff their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    p: u64,
    n: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(p: u64, n: usize) -> Self {
        Subspace {
            p,
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(p: u64, n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        Subspace { p, n, basis }
    }

    pub fn span(p: u64, n: usize, vectors: &[Vector]) -> Self {
        let mut rows: Vec<Vector> = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), n, "vector length");
                v.iter().map(|c| c % p).collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let s = inv_mod(rows[rank][col], p);
            for c in rows[rank].iter_mut() {
                *c = *c * s % p;
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let f = rows[r][col];
                    for c in 0..n {
                        rows[r][c] = (rows[r][c] + p * p - f * rows[rank][c]) % p;
                    }
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        Subspace { p, n, basis: rows }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.n - self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// `v` reduced against the RREF basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u64]) -> Vector {
        let p = self.p;
        let mut r: Vector = v.iter().map(|c| c % p).collect();
        for row in &self.basis {
            let col = row.iter().position(|&c| c != 0).expect("nonzero row");
            let f = r[col];
            if f != 0 {
                for c in 0..self.n {
                    r[c] = (r[c] + p * p - f * row[c]) % p;
                }
            }
        }
        r
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.p, self.n, &vs)
    }

    pub fn with_vector(&self, v: &[u64]) -> Subspace {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::span(self.p, self.n, &vs)
    }

    /// Whether `a` and `b` are linearly independent modulo this subspace.
    pub fn independent_mod(&self, a: &[u64], b: &[u64]) -> bool {
        let base = self.dim();
        self.with_vector(a).with_vector(b).dim() == base + 2
    }

    /// Every subspace `W` with `self ⊆ W` and `dim W = dim self + 1`, in
    /// ascending order of RREF basis.
    pub fn superspaces_of_codim_one(&self) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = all_vectors(self.p, self.n)
            .filter(|v| !self.contains(v))
            .map(|v| self.with_vector(&v))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// All of `F_p^n` in lexicographic order.
pub fn all_vectors(p: u64, n: usize) -> impl Iterator<Item = Vector> {
    let total = p.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0; n];
        for i in (0..n).rev() {
            v[i] = k % p;
            k /= p;
        }
        v
    })
}

/// Gaussian binomial coefficient `[n choose 1]_p = (p^n - 1)/(p - 1)`.
pub fn lines_count(p: u64, n: usize) -> u64 {
    (p.pow(n as u32) - 1) / (p - 1)
}
