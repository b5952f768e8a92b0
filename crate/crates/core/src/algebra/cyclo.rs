//! Cyclotomic polynomials and the certified "is this cos(k*pi/n)" test.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::{q_int, RatPoly, Q};
use super::real::AlgReal;
use crate::error::{Error, Result};

/// Default cap on the largest order `n` the cosine test may enumerate.
pub const DEFAULT_ORDER_CAP: u64 = 20_000;

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Memoizing table of cyclotomic polynomials.
#[derive(Default)]
pub struct CyclotomicTable {
    cache: BTreeMap<u64, RatPoly>,
}

impl CyclotomicTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Phi_n`, obtained by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
    pub fn get(&mut self, n: u64) -> RatPoly {
        assert!(n >= 1, "cyclotomic index must be positive");
        if let Some(p) = self.cache.get(&n) {
            return p.clone();
        }
        let mut num = RatPoly::monomial(Q::one(), n as usize);
        num = &num - &RatPoly::one();
        for d in 1..n {
            if n.is_multiple_of(d) {
                let phi_d = self.get(d);
                num = num
                    .div_exact(&phi_d)
                    .expect("cyclotomic factor divides x^n - 1");
            }
        }
        self.cache.insert(n, num.clone());
        num
    }
}

pub fn cyclotomic(n: u64) -> RatPoly {
    CyclotomicTable::new().get(n)
}

/// Minimal polynomial of `cos(2*pi/n)`.
pub fn cos_minpoly(n: u64, table: &mut CyclotomicTable) -> RatPoly {
    match n {
        1 => return RatPoly::from_i64s(&[-1, 1]),
        2 => return RatPoly::from_i64s(&[1, 1]),
        _ => {}
    }
    // Phi_n is palindromic of degree 2d: z^-d Phi_n(z) = a_d + sum_k a_{d+k} (z^k + z^-k),
    // and z^k + z^-k is a polynomial D_k in w = z + 1/z.
    let phi = table.get(n);
    let d = phi.deg() / 2;
    let w = RatPoly::from_i64s(&[0, 1]);
    let mut d_prev = RatPoly::constant(q_int(2));
    let mut d_cur = w.clone();
    let mut acc = RatPoly::constant(phi.coeff(d));
    for k in 1..=d {
        if k > 1 {
            let next = &(&w * &d_cur) - &d_prev;
            d_prev = d_cur;
            d_cur = next;
        }
        acc = &acc + &d_cur.scale(&phi.coeff(d + k));
    }
    // w = 2y
    acc.compose(&RatPoly::from_i64s(&[0, 2])).monic()
}

/// Outcome of [`is_rational_cosine`]. `Yes { n, k }` means the value equals
/// `cos(k*pi/n)` with `gcd(k, n) = 1` and `0 <= k <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalCosine {
    Yes { n: u64, k: u64 },
    No,
}

/// Decides exactly whether `c = cos(k*pi/n)` for some integers `k, n`.
///
/// `z = e^{i k pi / n}` is a root of `z^2 - 2cz + 1`, so `c` is a rational
/// cosine iff some cyclotomic `Phi_N` divides
/// `q(z) = Res_y(p_c(y), z^2 - 2yz + 1)` and `c` itself (not merely a
/// conjugate) is a root of the minimal polynomial of `cos(2*pi/N)`.
pub fn is_rational_cosine(c: &AlgReal) -> Result<RationalCosine> {
    is_rational_cosine_capped(c, DEFAULT_ORDER_CAP)
}

pub fn is_rational_cosine_capped(c: &AlgReal, order_cap: u64) -> Result<RationalCosine> {
    if c.cmp_rational(&q_int(1)).is_gt() || c.cmp_rational(&q_int(-1)).is_lt() {
        return Ok(RationalCosine::No);
    }
    let p = c.poly();
    let d = p.deg() as u64;
    // phi(N) >= sqrt(N/2) and phi(N) <= 2d  =>  N <= 2 (2d)^2
    let bound = 2 * (2 * d) * (2 * d);
    if bound > order_cap {
        return Err(Error::DegreeCapExceeded {
            bound,
            cap: order_cap,
        });
    }
    let q = z_polynomial(p);
    let mut table = CyclotomicTable::new();
    for n in 1..=bound {
        if totient(n) > 2 * d {
            continue;
        }
        let phi = table.get(n);
        if !phi.divides(&q) {
            continue;
        }
        let g = p.gcd(&cos_minpoly(n, &mut table));
        if g.is_constant() || !is_root_of(c, &g) {
            continue;
        }
        return Ok(witness(c, n));
    }
    Ok(RationalCosine::No)
}

/// `(2z)^d p((z^2 + 1) / (2z))`, equal to `Res_y(p(y), z^2 - 2yz + 1)` up to a
/// nonzero constant.
fn z_polynomial(p: &RatPoly) -> RatPoly {
    let d = p.deg();
    let zz1 = RatPoly::from_i64s(&[1, 0, 1]);
    let two_z = RatPoly::from_i64s(&[0, 2]);
    let mut acc = RatPoly::zero();
    let mut zz_pow = RatPoly::one();
    for k in 0..=d {
        let mut term = zz_pow.scale(&p.coeff(k));
        for _ in 0..d - k {
            term = &term * &two_z;
        }
        acc = &acc + &term;
        zz_pow = &zz_pow * &zz1;
    }
    acc
}

fn is_root_of(c: &AlgReal, g: &RatPoly) -> bool {
    if let Some(r) = c.as_rational() {
        return g.eval(r).is_zero();
    }
    let (lo, hi) = c.interval();
    g.count_roots(lo, hi) + usize::from(g.eval(lo).is_zero()) > 0
}

fn witness(c: &AlgReal, order: u64) -> RationalCosine {
    let target = c.to_f64();
    let mut best = (f64::INFINITY, 0u64);
    for r in 0..=order / 2 {
        if r.gcd(&order) != 1 && !(order == 1 && r == 0) {
            continue;
        }
        let v = libm::cos(2.0 * core::f64::consts::PI * r as f64 / order as f64);
        let err = libm::fabs(v - target);
        if err < best.0 {
            best = (err, r);
        }
    }
    // c = cos(2 pi r / N) = cos(k pi / n) with k / n = 2r / N
    let (num, den) = (2 * best.1, order);
    let g = num.gcd(&den).max(1);
    RationalCosine::Yes {
        n: den / g,
        k: num / g,
    }
}

/// Integer coefficients of a polynomial, for display and serialization.
pub fn integer_coeffs(p: &RatPoly) -> Vec<i64> {
    use num_traits::ToPrimitive;
    p.primitive_integer()
        .iter()
        .map(|c| c.to_i64().unwrap_or(i64::MAX))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::q_frac;
    use crate::algebra::real::isolate_dominant_root;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(30).deg(), 8);
        // x^12 - 1 = product over divisors
        let mut t = CyclotomicTable::new();
        let mut prod = RatPoly::one();
        for d in [1, 2, 3, 4, 6, 12] {
            prod = &prod * &t.get(d);
        }
        assert_eq!(prod, p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn totients() {
        let expect = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(totient(i as u64 + 1), e);
        }
    }

    #[test]
    fn cos_minpolys_vanish() {
        let mut t = CyclotomicTable::new();
        for n in 1..=24u64 {
            let m = cos_minpoly(n, &mut t);
            let v = libm::cos(2.0 * core::f64::consts::PI / n as f64);
            assert!(m.eval_f64(v).abs() < 1e-9, "n={} {}", n, m);
            let expected_deg = if n <= 2 { 1 } else { totient(n) / 2 };
            assert_eq!(m.deg() as u64, expected_deg);
        }
        assert_eq!(
            cos_minpoly(5, &mut t),
            RatPoly::new(alloc::vec![q_frac(-1, 4), q_frac(1, 2), q_int(1)])
        );
    }

    #[test]
    fn rational_cosine_examples() {
        let half = AlgReal::from_rational(q_frac(1, 2));
        assert_eq!(
            is_rational_cosine(&half).unwrap(),
            RationalCosine::Yes { n: 3, k: 1 }
        );
        let third = AlgReal::from_rational(q_frac(1, 3));
        assert_eq!(is_rational_cosine(&third).unwrap(), RationalCosine::No);
        assert_eq!(
            is_rational_cosine(&AlgReal::from_int(-1)).unwrap(),
            RationalCosine::Yes { n: 1, k: 1 }
        );
        assert_eq!(
            is_rational_cosine(&AlgReal::from_int(0)).unwrap(),
            RationalCosine::Yes { n: 2, k: 1 }
        );
        // golden: cos(pi/5) = tau/2
        let tau = isolate_dominant_root(&p(&[-1, -1, 1])).unwrap();
        let c = tau.mul_rational(&q_frac(1, 2));
        assert_eq!(
            is_rational_cosine(&c).unwrap(),
            RationalCosine::Yes { n: 5, k: 1 }
        );
        // tau - 1 = 2 cos(2pi/5) so (tau - 1)/2 = cos(2pi/5)
        let c2 = tau.add_rational(&q_int(-1)).mul_rational(&q_frac(1, 2));
        assert_eq!(
            is_rational_cosine(&c2).unwrap(),
            RationalCosine::Yes { n: 5, k: 2 }
        );
        // conjugate of cos(pi/5) lies in the same minimal polynomial but is cos(3pi/5)
        let c3 = c2.neg();
        assert_eq!(
            is_rational_cosine(&c3).unwrap(),
            RationalCosine::Yes { n: 5, k: 3 }
        );
    }

    #[test]
    fn degree_cap() {
        let tau = isolate_dominant_root(&p(&[-1, -1, 1]))
            .unwrap()
            .mul_rational(&q_frac(1, 2));
        assert_eq!(
            is_rational_cosine_capped(&tau, 10).unwrap_err(),
            Error::DegreeCapExceeded { bound: 32, cap: 10 }
        );
    }

    #[test]
    fn z_polynomial_matches_bivariate_resultant() {
        // Res_y(p(y), z^2 - 2yz + 1) evaluated at integer z, compared to z_polynomial
        let c = p(&[-1, 0, 0, 4]);
        let zp = z_polynomial(&c);
        for z0 in 1..6i64 {
            let z = q_int(z0);
            let lin = RatPoly::new(alloc::vec![&z * &z + q_int(1), -(q_int(2) * &z)]);
            let res = c.resultant(&lin);
            let ratio = zp.eval(&z) / res;
            // constant ratio (sign and leading-coefficient normalization)
            assert_eq!(ratio, q_int(1));
        }
    }
}
