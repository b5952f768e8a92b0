//! Weyl matrices `M(t)` and the decay of `|M(t)^r| / S^r`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::Result;
use crate::tiling::SubstitutionRule;

/// Bit length allowed for entries of `S^r`.
pub const WEYL_CAP_BITS: u64 = 1 << 16;

/// Dense complex matrix; entry `(k, l)` sums over type-`k` children of `T_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylMatrix {
    pub t: i64,
    n: usize,
    entries: Vec<Complex64>,
}

impl WeylMatrix {
    fn zeros(n: usize, t: i64) -> Self {
        WeylMatrix {
            t,
            n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.entries[k * self.n + l]
    }

    fn add_to(&mut self, k: usize, l: usize, z: Complex64) {
        self.entries[k * self.n + l] += z;
    }

    fn mul(&self, other: &WeylMatrix) -> WeylMatrix {
        let n = self.n;
        let mut out = WeylMatrix::zeros(n, self.t);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    fn conj(&self) -> WeylMatrix {
        WeylMatrix {
            t: self.t,
            n: self.n,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    fn plus(&self, other: &WeylMatrix) -> WeylMatrix {
        WeylMatrix {
            t: self.t,
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Direct and reflected parts `(P, N)` of `M(t)`.
fn split(rule: &SubstitutionRule, t: i64) -> (WeylMatrix, WeylMatrix) {
    let n = rule.prototile_count();
    let reg = rule.registry();
    let (mut p, mut q) = (WeylMatrix::zeros(n, t), WeylMatrix::zeros(n, t));
    for l in 0..n {
        for c in rule.children(l) {
            let phase = Complex64::from_polar(1.0, t as f64 * c.orientation.angle.value(reg));
            let m = if c.orientation.reflect {
                &mut q
            } else {
                &mut p
            };
            m.add_to(c.prototile, l, phase);
        }
    }
    (p, q)
}

pub fn weyl_matrix(rule: &SubstitutionRule, t: i64) -> WeylMatrix {
    let (p, q) = split(rule, t);
    p.plus(&q)
}

/// Entry `(k, l)` sums `e^{i t alpha}` over the type-`k` tiles of
/// `sigma^r(T_l)`. A reflected child negates the angles below it, so the
/// level-`r` matrix is `V_{r-1} P + conj(V_{r-1}) N`; without reflections
/// this is `M(t)^r`.
pub fn weyl_power(rule: &SubstitutionRule, t: i64, r: u32) -> WeylMatrix {
    let (p, q) = split(rule, t);
    let n = rule.prototile_count();
    let mut v = WeylMatrix::zeros(n, t);
    for i in 0..n {
        v.entries[i * n + i] = Complex64::new(1.0, 0.0);
    }
    for _ in 0..r {
        v = v.mul(&p).plus(&v.conj().mul(&q));
    }
    v
}

/// `max_{k,l} |V_r(t)|_{kl} / (S^r)_{kl}` over entries with `S^r > 0`.
pub fn weyl_ratio(rule: &SubstitutionRule, t: i64, r: u32) -> Result<f64> {
    let s = rule.substitution_matrix().pow_big(r, WEYL_CAP_BITS)?;
    let v = weyl_power(rule, t, r);
    let n = rule.prototile_count();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for l in 0..n {
            let d = s.get(k, l).to_f64().unwrap_or(f64::INFINITY);
            if d > 0.0 {
                worst = worst.max(v.get(k, l).norm() / d);
            }
        }
    }
    Ok(worst)
}
