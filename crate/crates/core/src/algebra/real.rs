//! Real algebraic numbers as (squarefree polynomial, isolating interval).
//!
//! Values are immutable: refinement returns a new, narrower copy, so an
//! `AlgReal` can be shared freely between threads. Sums, products and powers
//! are formed from resultants, which are computed by evaluating at integer
//! points and interpolating.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{count_roots_with, interpolate, pow_q, q_int, RatPoly, Q};
use crate::error::{Error, Result};

/// Bisection steps allowed per refinement request before giving up.
pub const DEFAULT_REFINE_CAP: usize = 20_000;

#[derive(Clone)]
pub struct AlgReal {
    poly: RatPoly,
    lo: Q,
    hi: Q,
    approx: f64,
}

impl AlgReal {
    pub fn from_rational(r: Q) -> Self {
        let approx = r.to_f64().unwrap_or(f64::NAN);
        AlgReal {
            poly: RatPoly::linear_root(r.clone()),
            lo: r.clone(),
            hi: r,
            approx,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(q_int(n))
    }

    /// The unique root of `poly` inside `[lo, hi]`.
    ///
    /// Fails with `NoRootInInterval` unless the closed interval holds exactly
    /// one distinct root.
    pub fn from_interval(poly: &RatPoly, lo: Q, hi: Q) -> Result<Self> {
        if poly.is_zero() || lo > hi {
            return Err(Error::NoRootInInterval);
        }
        let poly = poly.squarefree();
        if lo == hi {
            return if poly.eval(&lo).is_zero() {
                Ok(Self::from_rational(lo))
            } else {
                Err(Error::NoRootInInterval)
            };
        }
        let seq = poly.sturm_sequence();
        let at_lo = poly.eval(&lo).is_zero();
        let count = count_roots_with(&seq, &lo, &hi) + usize::from(at_lo);
        if count != 1 {
            return Err(Error::NoRootInInterval);
        }
        if at_lo {
            return Ok(Self::from_rational(lo));
        }
        if poly.eval(&hi).is_zero() {
            return Ok(Self::from_rational(hi));
        }
        Ok(Self::raw(poly, lo, hi).detect_rational())
    }

    /// Collapses to an exact rational when the root is one of small height.
    /// The simplest rational in a narrow isolating interval is the only
    /// candidate worth an exact evaluation.
    fn detect_rational(self) -> Self {
        if self.is_rational() || self.poly.deg() == 0 {
            return self;
        }
        if self.poly.deg() == 1 {
            let r = -self.poly.coeff(0) / self.poly.coeff(1);
            return Self::from_rational(r);
        }
        let mut a = self;
        for bits in (8..=64).step_by(8) {
            let width = Q::new(num_bigint::BigInt::one(), num_bigint::BigInt::one() << bits);
            let Ok(r) = a.refined(&width) else { return a };
            a = r;
            if a.is_rational() {
                return a;
            }
            let s = simplest_between(&a.lo, &a.hi);
            if a.poly.eval(&s).is_zero() {
                return Self::from_rational(s);
            }
        }
        a
    }

    fn raw(poly: RatPoly, lo: Q, hi: Q) -> Self {
        let approx = ((&lo + &hi) / q_int(2)).to_f64().unwrap_or(f64::NAN);
        AlgReal {
            poly,
            lo,
            hi,
            approx,
        }
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&Q, &Q) {
        (&self.lo, &self.hi)
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_rational().then_some(&self.lo)
    }

    /// Midpoint of the current interval; accuracy is bounded by [`Self::width`].
    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// One bisection step.
    fn bisect(&mut self) {
        if self.is_rational() {
            return;
        }
        let mid = (&self.lo + &self.hi) / q_int(2);
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == Ordering::Equal {
            self.lo = mid.clone();
            self.hi = mid;
            self.poly = RatPoly::linear_root(self.lo.clone());
        } else if s_mid == self.poly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
        self.approx = ((&self.lo + &self.hi) / q_int(2))
            .to_f64()
            .unwrap_or(f64::NAN);
    }

    /// Copy with interval width at most `width`.
    pub fn refined(&self, width: &Q) -> Result<Self> {
        let mut out = self.clone();
        let mut steps = 0;
        while out.width() > *width {
            out.bisect();
            steps += 1;
            if steps > DEFAULT_REFINE_CAP {
                return Err(Error::PrecisionExhausted);
            }
        }
        Ok(out)
    }

    /// Correctly rounded to within a couple of ulps.
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let scale = self.lo.abs().max(self.hi.abs()).max(Q::one());
        let target = scale / Q::from_integer(num_bigint::BigInt::one() << 62);
        match self.refined(&target) {
            Ok(r) => r.approx,
            Err(_) => self.approx,
        }
    }

    /// Value and an absolute error bound, with the bound at most `eps`.
    pub fn approx_within(&self, eps: f64) -> Result<(f64, f64)> {
        let eps_q = Q::from_float(eps).ok_or(Error::PrecisionExhausted)?;
        let r = self.refined(&eps_q)?;
        let w = r.width().to_f64().unwrap_or(f64::INFINITY);
        Ok((r.approx, w / 2.0 + f64::EPSILON * r.approx.abs()))
    }

    pub fn signum(&self) -> Ordering {
        self.cmp_rational(&Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &Q) -> Ordering {
        if self.is_rational() {
            return self.lo.cmp(r);
        }
        if *r <= self.lo {
            return Ordering::Greater;
        }
        if *r >= self.hi {
            return Ordering::Less;
        }
        match self.poly.sign_at(r) {
            // r is another root? no: the interval isolates exactly one root
            Ordering::Equal => Ordering::Equal,
            s if s == self.poly.sign_at(&self.lo) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    /// Exact comparison. Equality is decided through the gcd of the two
    /// defining polynomials, so this terminates for equal inputs too.
    pub fn compare(&self, other: &AlgReal) -> Result<Ordering> {
        if let Some(r) = other.as_rational() {
            return Ok(self.cmp_rational(r));
        }
        if let Some(r) = self.as_rational() {
            return Ok(other.cmp_rational(r).reverse());
        }
        let g = self.poly.gcd(&other.poly);
        let (mut a, mut b) = (self.clone(), other.clone());
        for _ in 0..DEFAULT_REFINE_CAP {
            if a.hi < b.lo {
                return Ok(Ordering::Less);
            }
            if b.hi < a.lo {
                return Ok(Ordering::Greater);
            }
            if !g.is_constant() {
                let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
                let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
                if lo <= hi {
                    let closed = g.count_roots(lo, hi) + usize::from(g.eval(lo).is_zero());
                    if closed > 0 {
                        return Ok(Ordering::Equal);
                    }
                }
            }
            a.bisect();
            b.bisect();
            if let Some(r) = a.as_rational() {
                return Ok(b.cmp_rational(r).reverse());
            }
            if let Some(r) = b.as_rational() {
                return Ok(a.cmp_rational(r));
            }
        }
        Err(Error::PrecisionExhausted)
    }

    pub fn neg(&self) -> AlgReal {
        if let Some(r) = self.as_rational() {
            return Self::from_rational(-r.clone());
        }
        Self::raw(
            self.poly.reflect().monic(),
            -self.hi.clone(),
            -self.lo.clone(),
        )
    }

    pub fn add_rational(&self, r: &Q) -> AlgReal {
        if let Some(x) = self.as_rational() {
            return Self::from_rational(x + r);
        }
        Self::raw(self.poly.shift(r).monic(), &self.lo + r, &self.hi + r)
    }

    pub fn mul_rational(&self, r: &Q) -> AlgReal {
        if r.is_zero() {
            return Self::from_int(0);
        }
        if let Some(x) = self.as_rational() {
            return Self::from_rational(x * r);
        }
        let (mut lo, mut hi) = (&self.lo * r, &self.hi * r);
        if r.is_negative() {
            core::mem::swap(&mut lo, &mut hi);
        }
        Self::raw(self.poly.dilate(r).monic(), lo, hi)
    }

    /// Copy whose interval excludes zero, or `None` if the value is zero.
    fn away_from_zero(&self) -> Result<Option<AlgReal>> {
        if self.is_zero() {
            return Ok(None);
        }
        let mut a = self.clone();
        let mut steps = 0;
        while !a.is_rational() && a.lo.is_negative() != a.hi.is_negative()
            || a.lo.is_zero()
            || a.hi.is_zero()
        {
            a.bisect();
            steps += 1;
            if steps > DEFAULT_REFINE_CAP {
                return Err(Error::PrecisionExhausted);
            }
        }
        // x | poly contributes nothing once zero is excluded
        let mut p = a.poly.clone();
        while !p.is_zero() && p.coeff(0).is_zero() {
            p = p
                .div_exact(&RatPoly::from_i64s(&[0, 1]))
                .expect("x divides");
        }
        a.poly = p;
        Ok(Some(a))
    }

    pub fn inv(&self) -> Result<AlgReal> {
        let a = self.away_from_zero()?.ok_or(Error::DivisionByZero)?;
        if let Some(r) = a.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        Ok(Self::raw(
            a.poly.reverse().monic(),
            a.hi.recip(),
            a.lo.recip(),
        ))
    }

    pub fn add(&self, other: &AlgReal) -> Result<AlgReal> {
        if let Some(r) = other.as_rational() {
            return Ok(self.add_rational(r));
        }
        if let Some(r) = self.as_rational() {
            return Ok(other.add_rational(r));
        }
        let pb = other.poly.clone();
        // Res_y(pa(y), pb(x - y)) vanishes at every sum of roots
        let res = resultant_in_x(&self.poly, self.poly.deg() * pb.deg(), |x0| {
            pb.compose(&RatPoly::new(alloc::vec![x0.clone(), -Q::one()]))
        });
        isolate_combined(res, self.clone(), other.clone(), |a, b| {
            (&a.lo + &b.lo, &a.hi + &b.hi)
        })
    }

    pub fn sub(&self, other: &AlgReal) -> Result<AlgReal> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &AlgReal) -> Result<AlgReal> {
        if let Some(r) = other.as_rational() {
            return Ok(self.mul_rational(r));
        }
        if let Some(r) = self.as_rational() {
            return Ok(other.mul_rational(r));
        }
        let (Some(a), Some(b)) = (self.away_from_zero()?, other.away_from_zero()?) else {
            return Ok(Self::from_int(0));
        };
        let pb = b.poly.clone();
        let n = pb.deg();
        // Res_y(pa(y), y^n pb(x / y)); pb(0) != 0 keeps the y-degree fixed
        let res = resultant_in_x(&a.poly, a.poly.deg() * n, |x0| {
            let mut coeffs = alloc::vec![Q::zero(); n + 1];
            let mut xp = Q::one();
            for (i, c) in pb.coeffs().iter().enumerate() {
                coeffs[n - i] = c * &xp;
                xp *= x0;
            }
            RatPoly::new(coeffs)
        });
        isolate_combined(res, a, b, |a, b| {
            let cands = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
            let lo = cands.iter().min().unwrap().clone();
            let hi = cands.iter().max().unwrap().clone();
            (lo, hi)
        })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<AlgReal> {
        if k < 0 {
            return self.pow(-k)?.inv();
        }
        let k = k as usize;
        if k == 0 {
            return Ok(Self::from_int(1));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(pow_q(r, k)));
        }
        let res = resultant_in_x(&self.poly, self.poly.deg(), |x0| {
            // x0 - y^k
            let mut c = alloc::vec![Q::zero(); k + 1];
            c[0] = x0.clone();
            c[k] = -Q::one();
            RatPoly::new(c)
        });
        let dummy = Self::from_int(0);
        isolate_combined(res, self.clone(), dummy, move |a, _| {
            pow_interval(&a.lo, &a.hi, k)
        })
    }

    /// Positive square root of a positive number.
    pub fn sqrt(&self) -> Result<AlgReal> {
        match self.signum() {
            Ordering::Less => return Err(Error::NegativeSqrt),
            Ordering::Equal => return Ok(Self::from_int(0)),
            Ordering::Greater => {}
        }
        let a = self.away_from_zero()?.expect("positive");
        if let Some(r) = a.as_rational() {
            if let Some(s) = rational_sqrt(r) {
                return Ok(Self::from_rational(s));
            }
        }
        let res = a.poly.inflate(2);
        let dummy = Self::from_int(0);
        isolate_combined(res, a, dummy, |a, _| (sqrt_below(&a.lo), sqrt_above(&a.hi)))
    }

    /// `self^(num/2)` for positive `self`.
    pub fn pow_half(&self, num: i64) -> Result<AlgReal> {
        if num % 2 == 0 {
            return self.pow(num / 2);
        }
        if self.signum() != Ordering::Greater {
            return Err(Error::NegativeSqrt);
        }
        self.pow(num)?.sqrt()
    }
}

/// `Res_y(p(y), q_x(y))` as a polynomial in `x`, by evaluation at
/// `0, 1, ..., degree` and interpolation. `make_q` must keep the y-degree and
/// y-leading coefficient independent of `x`.
fn resultant_in_x(p: &RatPoly, degree: usize, make_q: impl Fn(&Q) -> RatPoly) -> RatPoly {
    let xs: Vec<Q> = (0..=degree as i64).map(q_int).collect();
    let ys: Vec<Q> = xs.iter().map(|x0| p.resultant(&make_q(x0))).collect();
    interpolate(&xs, &ys)
}

fn isolate_combined(
    res: RatPoly,
    mut a: AlgReal,
    mut b: AlgReal,
    bounds: impl Fn(&AlgReal, &AlgReal) -> (Q, Q),
) -> Result<AlgReal> {
    let poly = res.squarefree();
    let seq = poly.sturm_sequence();
    for _ in 0..DEFAULT_REFINE_CAP {
        let (lo, hi) = bounds(&a, &b);
        if lo == hi {
            if poly.eval(&lo).is_zero() {
                return Ok(AlgReal::from_rational(lo));
            }
        } else if !poly.eval(&lo).is_zero()
            && !poly.eval(&hi).is_zero()
            && count_roots_with(&seq, &lo, &hi) == 1
        {
            return Ok(AlgReal::raw(poly, lo, hi).detect_rational());
        }
        a.bisect();
        b.bisect();
    }
    Err(Error::PrecisionExhausted)
}

fn pow_interval(lo: &Q, hi: &Q, k: usize) -> (Q, Q) {
    let (pl, ph) = (pow_q(lo, k), pow_q(hi, k));
    if k % 2 == 1 || !lo.is_negative() {
        (pl, ph)
    } else if !hi.is_positive() {
        (ph, pl)
    } else {
        (Q::zero(), if pl > ph { pl } else { ph })
    }
}

fn rational_sqrt(r: &Q) -> Option<Q> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Q::new(n, d))
}

/// A rational `s` with `0 <= s <= sqrt(r)`.
fn sqrt_below(r: &Q) -> Q {
    let f = libm::sqrt(r.to_f64().unwrap_or(0.0)) * (1.0 - 1e-9);
    let mut s = Q::from_float(f.max(0.0)).unwrap_or_else(Q::zero);
    while &s * &s > *r {
        s /= q_int(2);
    }
    s
}

/// A rational `s >= sqrt(r)`.
fn sqrt_above(r: &Q) -> Q {
    let f = libm::sqrt(r.to_f64().unwrap_or(0.0)) * (1.0 + 1e-9) + 1e-300;
    let mut s = Q::from_float(f).unwrap_or_else(|| r + Q::one());
    while &s * &s < *r {
        s = s * q_int(2) + Q::one();
    }
    s
}

/// Largest real root of `p`, which must exceed 1.
pub fn isolate_dominant_root(p: &RatPoly) -> Result<AlgReal> {
    if p.is_constant() {
        return Err(Error::NoDominantRoot);
    }
    let p = p.squarefree();
    let lead = p.lead();
    let mut bound = Q::one();
    for c in &p.coeffs()[..p.deg()] {
        let r = (c / &lead).abs();
        if r > bound {
            bound = r;
        }
    }
    let mut hi = bound + Q::one();
    let seq = p.sturm_sequence();
    let mut lo = Q::one();
    if count_roots_with(&seq, &lo, &hi) == 0 {
        return Err(Error::NoDominantRoot);
    }
    let mut steps = 0;
    while count_roots_with(&seq, &lo, &hi) > 1 || p.eval(&lo).is_zero() {
        let mid = (&lo + &hi) / q_int(2);
        if count_roots_with(&seq, &mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
        if steps > DEFAULT_REFINE_CAP {
            return Err(Error::PrecisionExhausted);
        }
    }
    if p.eval(&hi).is_zero() {
        return Ok(AlgReal::from_rational(hi));
    }
    Ok(AlgReal::raw(p, lo, hi).detect_rational())
}

/// Rational of least denominator in `[lo, hi]`, by continued fractions.
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    if lo > hi {
        return simplest_between(hi, lo);
    }
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Q::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if &fl + Q::one() <= *hi {
        return fl + Q::one();
    }
    // both in (fl, fl + 1): recurse on reciprocals of the fractional parts
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Operation selector for [`alg_arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    /// Exponent `num / 2`.
    PowHalf(i64),
    Inv,
    Compare,
}

#[derive(Clone, Debug)]
pub enum ArithResult {
    Value(AlgReal),
    Ordering(Ordering),
}

/// Single entry point over the arithmetic above; values come back refined to
/// interval width `<= precision`.
pub fn alg_arith(
    a: &AlgReal,
    b: Option<&AlgReal>,
    op: ArithOp,
    precision: &Q,
) -> Result<ArithResult> {
    let need_b = || b.ok_or(Error::MissingOperand);
    let value = match op {
        ArithOp::Add => a.add(need_b()?)?,
        ArithOp::Mul => a.mul(need_b()?)?,
        ArithOp::PowHalf(n) => a.pow_half(n)?,
        ArithOp::Inv => a.inv()?,
        ArithOp::Compare => return Ok(ArithResult::Ordering(a.compare(need_b()?)?)),
    };
    Ok(ArithResult::Value(value.refined(precision)?))
}

/// Representation equality: same polynomial and same interval. Use
/// [`AlgReal::compare`] for value equality.
impl PartialEq for AlgReal {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.lo == other.lo && self.hi == other.hi
    }
}

impl fmt::Debug for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgReal(root of {} in [{}, {}] ~ {})",
            self.poly, self.lo, self.hi, self.approx
        )
    }
}

impl fmt::Display for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::q_frac;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    /// Float bisection oracle for a sign change in (lo, hi).
    fn bisect_f64(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (f(lo) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn dominant_roots() {
        let tau = isolate_dominant_root(&p(&[-1, -1, 1])).unwrap();
        assert!((tau.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);

        let plastic = isolate_dominant_root(&p(&[-1, -1, 0, 1])).unwrap();
        assert!((plastic.to_f64() - 1.324_717_957_244_746).abs() < 1e-15);

        let tipi = isolate_dominant_root(&p(&[-1, -2, -1, 1])).unwrap();
        let oracle = bisect_f64(|x| x * x * x - x * x - 2.0 * x - 1.0, 2.0, 2.2);
        assert!((tipi.to_f64() - oracle).abs() < 1e-14);
        assert!((tipi.to_f64() - 2.147_899_035_7).abs() < 1e-10);

        assert_eq!(
            isolate_dominant_root(&p(&[1, 0, 1])).unwrap_err(),
            Error::NoDominantRoot
        );
        assert_eq!(
            isolate_dominant_root(&p(&[-1, 2])).unwrap_err(),
            Error::NoDominantRoot
        );
        // rational dominant root
        let two = isolate_dominant_root(&p(&[2, -3, 1])).unwrap();
        assert_eq!(two.as_rational(), Some(&q_int(2)));
    }

    #[test]
    fn arithmetic_examples() {
        let tau = isolate_dominant_root(&p(&[-1, -1, 1])).unwrap();
        let t1 = tau.add(&AlgReal::from_int(-1)).unwrap();
        assert!((t1.to_f64() - 0.618_033_988_749_895).abs() < 1e-15);

        let eta = isolate_dominant_root(&p(&[-1, -1, 0, 1])).unwrap();
        let a = eta.pow_half(-3).unwrap();
        let eta_f = 1.324_717_957_244_746_f64;
        assert!((a.to_f64() - eta_f.powf(-1.5)).abs() < 1e-14);
        assert!((a.to_f64() - 0.655_865_618_097_142).abs() < 1e-14);

        assert_eq!(eta.cmp_rational(&q_frac(4, 3)), Ordering::Less);
        assert_eq!(
            eta.compare(&AlgReal::from_rational(q_frac(4, 3))).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn sums_and_products_of_surds() {
        let s2 = AlgReal::from_interval(&p(&[-2, 0, 1]), q_int(1), q_int(2)).unwrap();
        let s3 = AlgReal::from_interval(&p(&[-3, 0, 1]), q_int(1), q_int(2)).unwrap();
        let sum = s2.add(&s3).unwrap();
        assert!((sum.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-14);
        // minimal polynomial of sqrt2 + sqrt3 is x^4 - 10x^2 + 1
        assert!(p(&[1, 0, -10, 0, 1]).monic().divides(sum.poly()));

        let prod = s2.mul(&s3).unwrap();
        let s6 = AlgReal::from_interval(&p(&[-6, 0, 1]), q_int(2), q_int(3)).unwrap();
        assert_eq!(prod.compare(&s6).unwrap(), Ordering::Equal);

        let sq = s2.mul(&s2).unwrap();
        assert_eq!(sq.as_rational(), Some(&q_int(2)));
        assert_eq!(s2.pow(2).unwrap().as_rational(), Some(&q_int(2)));

        let diff = s2.sub(&s2).unwrap();
        assert!(diff.is_zero());
        assert_eq!(diff.inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn sqrt_and_inverse() {
        let five = AlgReal::from_int(5);
        let r5 = five.sqrt().unwrap();
        assert!((r5.to_f64() - 5f64.sqrt()).abs() < 1e-15);
        let inv = r5.inv().unwrap();
        assert!((inv.to_f64() - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            AlgReal::from_int(9).sqrt().unwrap().as_rational(),
            Some(&q_int(3))
        );
        assert_eq!(
            AlgReal::from_int(-1).sqrt().unwrap_err(),
            Error::NegativeSqrt
        );
    }

    #[test]
    fn pythagoras_identities_hold_exactly() {
        // lambda^2 = eta, eta^m = eta^j + 1  =>  (lambda^(j-m))^2 + (lambda^-m)^2 = 1
        for &(m, j) in &[(3i64, 1i64), (3, 2), (4, 1), (5, 2)] {
            let mut c = alloc::vec![0i64; m as usize + 1];
            c[0] = -1;
            c[j as usize] -= 1;
            c[m as usize] = 1;
            let eta = isolate_dominant_root(&p(&c)).unwrap();
            let a = eta.pow_half(-m).unwrap();
            let b = eta.pow_half(j - m).unwrap();
            let s = a.pow(2).unwrap().add(&b.pow(2).unwrap()).unwrap();
            assert_eq!(s.as_rational(), Some(&q_int(1)), "(m,j)=({},{})", m, j);
        }
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&q_frac(1, 3), &q_frac(1, 2)), q_frac(1, 2));
        assert_eq!(
            simplest_between(&q_frac(3, 10), &q_frac(4, 10)),
            q_frac(1, 3)
        );
        assert_eq!(
            simplest_between(&q_frac(-7, 5), &q_frac(-6, 5)),
            q_frac(-4, 3)
        );
        assert_eq!(simplest_between(&q_frac(-1, 5), &q_frac(1, 5)), q_int(0));
        assert_eq!(
            simplest_between(&q_frac(22, 7), &q_frac(22, 7)),
            q_frac(22, 7)
        );
    }

    #[test]
    fn refinement_is_stable() {
        let eta = isolate_dominant_root(&p(&[-1, -1, 0, 1])).unwrap();
        let r = q_frac(1_324_717, 1_000_000);
        let before = eta.cmp_rational(&r);
        let fine = eta.refined(&q_frac(1, 1 << 40)).unwrap();
        assert_eq!(fine.cmp_rational(&r), before);
        let (flo, fhi) = fine.interval();
        let (lo, hi) = eta.interval();
        assert!(flo >= lo && fhi <= hi);
    }

    #[test]
    fn alg_arith_dispatch() {
        let tau = isolate_dominant_root(&p(&[-1, -1, 1])).unwrap();
        let prec = q_frac(1, 1 << 30);
        let ArithResult::Value(v) = alg_arith(&tau, None, ArithOp::Inv, &prec).unwrap() else {
            panic!()
        };
        assert!(v.width() <= prec);
        assert!((v.to_f64() - 0.618_033_988_749_895).abs() < 1e-15);
        let ArithResult::Ordering(o) = alg_arith(&tau, Some(&v), ArithOp::Compare, &prec).unwrap()
        else {
            panic!()
        };
        assert_eq!(o, Ordering::Greater);
        assert_eq!(
            alg_arith(&tau, None, ArithOp::Add, &prec).unwrap_err(),
            Error::MissingOperand
        );
    }
}
