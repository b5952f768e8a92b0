//! Dense univariate polynomials over the rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial with exact rational coefficients, lowest degree first.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Q>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q_int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// `c * x^k`
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - r`
    pub fn linear_root(r: Q) -> Self {
        Self::new(vec![-r, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree treating the zero polynomial as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn sign_at(&self, x: &Q) -> Ordering {
        self.eval(x).cmp(&Q::zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q_int(k as i64))
                .collect(),
        )
    }

    /// Polynomial long division. Panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.deg() - dd + 1];
        let lead_inv = d.lead().recip();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &RatPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree(&self) -> RatPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &RatPoly::constant(c.clone());
        }
        acc
    }

    /// `self(-x)`
    pub fn reflect(&self) -> RatPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg * self(1/x)`
    pub fn reverse(&self) -> RatPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `self(x^k)`
    pub fn inflate(&self, k: usize) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Q::zero(); self.deg() * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * k] = a.clone();
        }
        Self::new(c)
    }

    /// `self(x - r)`: roots shifted by `+r`.
    pub fn shift(&self, r: &Q) -> RatPoly {
        self.compose(&RatPoly::new(vec![-r.clone(), Q::one()]))
    }

    /// `self(x / r)`: roots scaled by `r`, `r != 0`.
    pub fn dilate(&self, r: &Q) -> RatPoly {
        let inv = r.recip();
        let mut pow = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= &inv;
        }
        Self::new(out)
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in &mut ints {
            *c = &*c / &g * &sign;
        }
        ints
    }

    /// Resultant `Res(self, other)` via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &RatPoly) -> Q {
        if self.is_zero() || other.is_zero() {
            return Q::zero();
        }
        // res(a, b) = lc(a)^deg(b) * prod_{a(r)=0} b(r)
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = Q::one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if da == 0 {
                return acc * pow_q(&a.lead(), db);
            }
            if db == 0 {
                return acc * pow_q(&b.lead(), da);
            }
            let r = b.rem(&a);
            if r.is_zero() {
                return Q::zero();
            }
            let dr = r.deg();
            // res(a, b) = lc(a)^(db - dr) res(a, r) and res(a, r) = (-1)^(da dr) res(r, a)
            acc *= pow_q(&a.lead(), db - dr);
            if (da * dr) % 2 == 1 {
                acc = -acc;
            }
            b = a;
            a = r;
        }
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone()];
        if self.is_constant() {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Q, hi: &Q) -> usize {
        count_roots_with(&self.sturm_sequence(), lo, hi)
    }
}

/// Root count in `(lo, hi]` from a precomputed Sturm sequence.
pub fn count_roots_with(seq: &[RatPoly], lo: &Q, hi: &Q) -> usize {
    let vl = sign_variations(seq, lo);
    let vh = sign_variations(seq, hi);
    vl.saturating_sub(vh)
}

fn sign_variations(seq: &[RatPoly], x: &Q) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = match p.sign_at(x) {
            Ordering::Less => -1,
            Ordering::Greater => 1,
            Ordering::Equal => 0,
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

pub fn pow_q(base: &Q, exp: usize) -> Q {
    let mut acc = Q::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Newton interpolation through `(xs[i], ys[i])`; the `xs` must be distinct.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> RatPoly {
    let n = xs.len();
    let mut dd: Vec<Q> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &RatPoly::linear_root(xs[i].clone())) + &RatPoly::constant(dd[i].clone());
    }
    acc
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || k == 0 {
                write!(f, "{}", mag)?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{}", k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    /// Independent oracle: determinant of the Sylvester matrix by Gaussian elimination.
    #[allow(clippy::needless_range_loop)]
    fn sylvester_resultant(a: &RatPoly, b: &RatPoly) -> Q {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let mut mat = vec![vec![Q::zero(); size]; size];
        for row in 0..n {
            for (k, c) in a.coeffs().iter().rev().enumerate() {
                mat[row][row + k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + row][row + k] = c.clone();
            }
        }
        let mut det = Q::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return Q::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= &mat[col][col];
            for r in col + 1..size {
                let f = &mat[r][col] / &mat[col][col];
                for c in col..size {
                    let v = &f * &mat[col][c];
                    mat[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn division_roundtrip() {
        let a = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let b = p(&[1, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let a = p(&[2, -3, 0, 1]);
        assert_eq!(a.gcd(&a.derivative()), p(&[-1, 1]));
        assert_eq!(a.squarefree(), p(&[-2, 1, 1]));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (p(&[-1, -1, 0, 1]), p(&[1, 0, 1])),
            (p(&[-1, -1, 1]), p(&[-1, 0, 0, 0, 0, 1])),
            (p(&[3, 0, -2, 0, 5]), p(&[1, 4, 0, -1])),
            (p(&[-1, 1]), p(&[-1, 1, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(
                a.resultant(&b),
                sylvester_resultant(&a, &b),
                "{} / {}",
                a,
                b
            );
            assert_eq!(b.resultant(&a), sylvester_resultant(&b, &a));
        }
        // common root
        assert!(p(&[-1, 0, 1]).resultant(&p(&[-1, 1])).is_zero());
    }

    #[test]
    fn sturm_counts() {
        // x^3 - x: roots -1, 0, 1
        let a = p(&[0, -1, 0, 1]);
        assert_eq!(a.count_roots(&q_int(-2), &q_int(2)), 3);
        assert_eq!(a.count_roots(&q_int(0), &q_int(2)), 1);
        assert_eq!(a.count_roots(&q_frac(-1, 2), &q_int(0)), 1);
        assert_eq!(p(&[1, 0, 1]).count_roots(&q_int(-10), &q_int(10)), 0);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let a = p(&[7, -3, 0, 2, 1]);
        let xs: Vec<Q> = (0..5).map(q_int).collect();
        let ys: Vec<Q> = xs.iter().map(|x| a.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), a);
    }

    #[test]
    fn substitutions() {
        let a = p(&[-2, 0, 1]);
        assert_eq!(a.shift(&q_int(1)), p(&[-1, -2, 1]));
        assert_eq!(
            a.dilate(&q_int(2)),
            RatPoly::new(vec![q_int(-2), q_int(0), q_frac(1, 4)])
        );
        assert_eq!(a.inflate(2), p(&[-2, 0, 0, 0, 1]));
        assert_eq!(p(&[1, 2, 3]).reverse(), p(&[3, 2, 1]));
        assert_eq!(format!("{}", p(&[-1, -1, 0, 1])), "x^3 - x - 1");
    }
}
