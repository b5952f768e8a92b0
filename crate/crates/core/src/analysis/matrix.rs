//! Substitution matrices, integer powers and primitivity.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Square nonnegative integer matrix; entry `(k, l)` counts the type-`k`
/// children of prototile `l`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubstMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl SubstMatrix {
    pub fn zeros(n: usize) -> Self {
        SubstMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from rows. Panics when the rows are ragged.
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "substitution matrix must be square");
            entries.extend_from_slice(r);
        }
        SubstMatrix { n, entries }
    }

    /// Companion matrix of `x^m - x^j - 1`: ones on the subdiagonal, and the
    /// last column has ones in rows `0` and `j`.
    pub fn companion(m: usize, j: usize) -> Self {
        let mut s = Self::zeros(m);
        for i in 0..m - 1 {
            s.set(i + 1, i, 1);
        }
        s.set(0, m - 1, 1);
        s.set(j, m - 1, s.get(j, m - 1) + 1);
        s
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, l: usize) -> u64 {
        self.entries[k * self.n + l]
    }

    pub fn set(&mut self, k: usize, l: usize, v: u64) {
        self.entries[k * self.n + l] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.n)
            .map(|l| (0..self.n).map(|k| self.get(k, l)).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for k in 0..self.n {
            for l in 0..self.n {
                t.set(l, k, self.get(k, l));
            }
        }
        t
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v as f64).collect())
            .collect()
    }

    /// `S^r` in big integers; `cap_bits` bounds the bit length of any entry.
    pub fn pow_big(&self, r: u32, cap_bits: u64) -> Result<BigMatrix> {
        let mut acc = BigMatrix::identity(self.n);
        let base = BigMatrix::from_small(self);
        for _ in 0..r {
            acc = acc.mul(&base);
            if acc.max_bits() > cap_bits {
                return Err(Error::OverflowGuard);
            }
        }
        Ok(acc)
    }

    fn boolean(&self) -> Vec<bool> {
        self.entries.iter().map(|&v| v > 0).collect()
    }
}

impl fmt::Debug for SubstMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Dense matrix of big unsigned integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

impl BigMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigUint::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigUint::one();
        }
        BigMatrix { n, entries }
    }

    pub fn from_small(s: &SubstMatrix) -> Self {
        BigMatrix {
            n: s.n,
            entries: s.entries.iter().map(|&v| BigUint::from(v)).collect(),
        }
    }

    pub fn get(&self, k: usize, l: usize) -> &BigUint {
        &self.entries[k * self.n + l]
    }

    pub fn mul(&self, other: &BigMatrix) -> BigMatrix {
        let n = self.n;
        let mut out = vec![BigUint::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        BigMatrix { n, entries: out }
    }

    pub fn column_sum(&self, l: usize) -> BigUint {
        (0..self.n).map(|k| self.get(k, l)).sum()
    }

    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(|e| e.bits()).max().unwrap_or(0)
    }
}

/// Outcome of [`is_primitive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primitivity {
    /// `S^k` is entrywise positive and `k` is minimal.
    Primitive(usize),
    NotPrimitive,
    Inconclusive,
}

/// `(n - 1) n + 1`, at least Wielandt's bound `(n - 1)^2 + 1`.
pub fn default_k_max(n: usize) -> usize {
    n.saturating_sub(1) * n + 1
}

pub fn is_primitive(s: &SubstMatrix, k_max: usize) -> Primitivity {
    let n = s.n;
    if n == 0 {
        return Primitivity::NotPrimitive;
    }
    let a = s.boolean();
    let mut p = a.clone();
    for k in 1..=k_max.max(1) {
        if p.iter().all(|&b| b) {
            return Primitivity::Primitive(k);
        }
        p = bool_mul(&p, &a, n);
    }
    if !strongly_connected(&a, n) || period(&a, n) != 1 {
        Primitivity::NotPrimitive
    } else {
        Primitivity::Inconclusive
    }
}

fn bool_mul(a: &[bool], b: &[bool], n: usize) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k] {
                for j in 0..n {
                    out[i * n + j] |= b[k * n + j];
                }
            }
        }
    }
    out
}

fn reach(a: &[bool], n: usize, start: usize, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            let edge = if forward { a[u * n + v] } else { a[v * n + u] };
            if edge && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

fn strongly_connected(a: &[bool], n: usize) -> bool {
    reach(a, n, 0, true).iter().all(|&b| b) && reach(a, n, 0, false).iter().all(|&b| b)
}

/// Period of an irreducible digraph: gcd of `level(u) + 1 - level(v)` over edges.
fn period(a: &[bool], n: usize) -> usize {
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = alloc::collections::VecDeque::from(vec![0usize]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if a[u * n + v] && level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g = 0usize;
    for u in 0..n {
        for v in 0..n {
            if a[u * n + v] && level[u] != usize::MAX && level[v] != usize::MAX {
                let d = (level[u] as i64 + 1 - level[v] as i64).unsigned_abs() as usize;
                g = num_integer::gcd(g, d);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_layout() {
        assert_eq!(
            SubstMatrix::companion(3, 1).rows(),
            vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]
        );
        assert_eq!(SubstMatrix::companion(4, 3).rows()[3], vec![0, 0, 1, 1]);
    }

    #[test]
    fn primitivity_cases() {
        assert!(
            matches!(is_primitive(&SubstMatrix::companion(3, 1), 9), Primitivity::Primitive(k) if k <= 9)
        );
        assert_eq!(
            is_primitive(&SubstMatrix::companion(4, 2), 10),
            Primitivity::NotPrimitive
        );
        assert_eq!(
            is_primitive(&SubstMatrix::identity(2), 2),
            Primitivity::NotPrimitive
        );
        assert_eq!(
            is_primitive(&SubstMatrix::from_rows(&[vec![5]]), 1),
            Primitivity::Primitive(1)
        );
        // cyclic permutation: irreducible, period 3
        let c = SubstMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(is_primitive(&c, 1), Primitivity::NotPrimitive);
        // primitive but needs more steps than allowed
        assert_eq!(
            is_primitive(&SubstMatrix::companion(3, 1), 2),
            Primitivity::Inconclusive
        );
    }

    #[test]
    fn minimal_exponent_matches_naive_power() {
        let s = SubstMatrix::companion(5, 2);
        let Primitivity::Primitive(k) = is_primitive(&s, default_k_max(5)) else {
            panic!()
        };
        let pk = s.pow_big(k as u32, 64).unwrap();
        let pk1 = s.pow_big(k as u32 - 1, 64).unwrap();
        assert!((0..5).all(|i| (0..5).all(|j| !pk.get(i, j).is_zero())));
        assert!((0..5).any(|i| (0..5).any(|j| pk1.get(i, j).is_zero())));
    }

    #[test]
    fn big_power_cap() {
        let s = SubstMatrix::from_rows(&[vec![5]]);
        assert_eq!(
            s.pow_big(10, 64).unwrap().get(0, 0),
            &BigUint::from(9_765_625u64)
        );
        assert_eq!(s.pow_big(100, 64).unwrap_err(), Error::OverflowGuard);
    }
}
