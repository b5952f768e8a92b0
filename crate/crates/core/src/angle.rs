//! Exact orientations in O(2): a rational multiple of pi plus an integer
//! combination of named generator angles, and an optional reflection.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Generators an angle may reference.
pub const MAX_GENERATORS: usize = 4;

/// Default bound on continued-fraction denominators in numeric reports.
pub const DEFAULT_DENOMINATOR_BOUND: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// The generator is not a rational multiple of pi; the tag names the proof.
    IrrationalPi(String),
    Unverified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    /// Radians in `[0, 2pi)`.
    pub value: f64,
    /// Absolute error bound on `value`.
    pub error: f64,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct GeneratorRegistry {
    entries: Vec<Generator>,
    tag: u64,
}

impl GeneratorRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(entries: Vec<Generator>) -> Result<Self> {
        if entries.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                count: entries.len(),
            });
        }
        for (i, g) in entries.iter().enumerate() {
            if entries[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::SpecViolation(alloc::format!(
                    "duplicate generator '{}'",
                    g.name
                )));
            }
        }
        let entries: Vec<Generator> = entries
            .into_iter()
            .map(|mut g| {
                g.value = crate::geom::wrap_angle(g.value);
                g
            })
            .collect();
        let tag = registry_tag(entries.iter().map(|g| g.name.as_str()));
        Ok(GeneratorRegistry { entries, tag })
    }

    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.entries
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    /// `coeff * generator`.
    pub fn angle(&self, name: &str, coeff: i32) -> Result<Angle> {
        let mut gens = [0; MAX_GENERATORS];
        gens[self.index_of(name)?] = coeff;
        Ok(Angle::from_parts(Ratio::zero(), gens, self.tag))
    }
}

/// FNV-1a over the generator names; 0 is reserved for "no generators".
fn registry_tag<'a>(names: impl Iterator<Item = &'a str>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut any = false;
    for n in names {
        any = true;
        for b in n.bytes().chain(core::iter::once(0)) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    if !any {
        0
    } else {
        h.max(1)
    }
}

/// `pi_part * pi + sum gens[i] * generator_i`, with `pi_part` in `[0, 2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    pi_part: Ratio<i64>,
    gens: [i32; MAX_GENERATORS],
    registry: u64,
}

impl Angle {
    pub const ZERO: Angle = Angle {
        pi_part: Ratio::new_raw(0, 1),
        gens: [0; MAX_GENERATORS],
        registry: 0,
    };

    /// `num/den * pi`.
    pub fn pi_frac(num: i64, den: i64) -> Angle {
        Self::from_parts(Ratio::new(num, den), [0; MAX_GENERATORS], 0)
    }

    pub fn from_parts(pi_part: Ratio<i64>, gens: [i32; MAX_GENERATORS], registry: u64) -> Angle {
        let two = Ratio::from_integer(2);
        let mut q = pi_part % two;
        if q.is_negative() {
            q += two;
        }
        let registry = if gens.iter().all(|&g| g == 0) {
            0
        } else {
            registry
        };
        Angle {
            pi_part: q,
            gens,
            registry,
        }
    }

    pub fn pi_part(&self) -> Ratio<i64> {
        self.pi_part
    }

    pub fn gens(&self) -> &[i32; MAX_GENERATORS] {
        &self.gens
    }

    pub fn registry_tag(&self) -> u64 {
        self.registry
    }

    pub fn is_rational_pi(&self) -> bool {
        self.registry == 0
    }

    fn join_tag(&self, other: &Angle) -> Result<u64> {
        match (self.registry, other.registry) {
            (0, t) | (t, 0) => Ok(t),
            (a, b) if a == b => Ok(a),
            _ => Err(Error::RegistryMismatch),
        }
    }

    pub fn add(&self, other: &Angle) -> Result<Angle> {
        let tag = self.join_tag(other)?;
        let mut gens = self.gens;
        for (g, o) in gens.iter_mut().zip(other.gens.iter()) {
            *g += *o;
        }
        Ok(Self::from_parts(self.pi_part + other.pi_part, gens, tag))
    }

    pub fn neg(&self) -> Angle {
        let mut gens = self.gens;
        gens.iter_mut().for_each(|g| *g = -*g);
        Self::from_parts(-self.pi_part, gens, self.registry)
    }

    pub fn sub(&self, other: &Angle) -> Result<Angle> {
        self.add(&other.neg())
    }

    pub fn times(&self, k: i32) -> Angle {
        let mut gens = self.gens;
        gens.iter_mut().for_each(|g| *g *= k);
        Self::from_parts(
            self.pi_part * Ratio::from_integer(k as i64),
            gens,
            self.registry,
        )
    }

    /// Value in radians, reduced into `[0, 2pi)`.
    pub fn value(&self, reg: &GeneratorRegistry) -> f64 {
        self.value_with_error(reg).0
    }

    /// Value and a propagated absolute error bound.
    pub fn value_with_error(&self, reg: &GeneratorRegistry) -> (f64, f64) {
        let mut v = self.pi_part.to_f64().unwrap_or(0.0) * PI;
        let mut err = 4.0 * f64::EPSILON;
        for (i, &c) in self.gens.iter().enumerate() {
            if c != 0 {
                let g = &reg.entries[i];
                v += c as f64 * g.value;
                err += (c as f64).abs() * (g.error + 4.0 * f64::EPSILON * g.value);
            }
        }
        (crate::geom::wrap_angle(v), err + 8.0 * f64::EPSILON)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}pi", self.pi_part)?;
        for (i, &c) in self.gens.iter().enumerate() {
            if c != 0 {
                write!(f, " {:+}g{}", c, i)?;
            }
        }
        Ok(())
    }
}

/// `angle_value` with an explicit precision request.
pub fn angle_value(a: &Angle, reg: &GeneratorRegistry, precision: f64) -> Result<f64> {
    if a.registry != 0 && a.registry != reg.tag {
        return Err(Error::RegistryMismatch);
    }
    let (v, err) = a.value_with_error(reg);
    if err > precision {
        return Err(Error::PrecisionExhausted);
    }
    Ok(v)
}

/// Element of O(2) acting as `x -> R_angle(x)` or, when reflected,
/// `x -> R_angle(conj x)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Orientation {
    pub reflect: bool,
    pub angle: Angle,
}

impl Orientation {
    pub const IDENTITY: Orientation = Orientation {
        reflect: false,
        angle: Angle::ZERO,
    };

    pub fn new(reflect: bool, angle: Angle) -> Self {
        Orientation { reflect, angle }
    }

    pub fn rotation(angle: Angle) -> Self {
        Orientation {
            reflect: false,
            angle,
        }
    }

    /// `self` after `other`: `(s1, a1) o (s2, a2) = (s1 s2, a1 + s1 a2)`.
    pub fn compose(&self, other: &Orientation) -> Result<Orientation> {
        let a2 = if self.reflect {
            other.angle.neg()
        } else {
            other.angle
        };
        Ok(Orientation {
            reflect: self.reflect != other.reflect,
            angle: self.angle.add(&a2)?,
        })
    }

    pub fn inverse(&self) -> Orientation {
        if self.reflect {
            *self
        } else {
            Orientation {
                reflect: false,
                angle: self.angle.neg(),
            }
        }
    }

    pub fn sign(&self) -> i32 {
        if self.reflect {
            -1
        } else {
            1
        }
    }

    /// The same map with the angle already evaluated.
    pub fn numeric(&self, reg: &GeneratorRegistry) -> NumericOrientation {
        let a = self.angle.value(reg);
        NumericOrientation {
            reflect: self.reflect,
            cos: libm::cos(a),
            sin: libm::sin(a),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericOrientation {
    pub reflect: bool,
    pub cos: f64,
    pub sin: f64,
}

impl NumericOrientation {
    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        let (x, y) = if self.reflect {
            (p[0], -p[1])
        } else {
            (p[0], p[1])
        };
        [self.cos * x - self.sin * y, self.sin * x + self.cos * y]
    }
}

/// Continued-fraction summary of `value / pi`, used when no certificate applies.
#[derive(Clone, Debug, PartialEq)]
pub struct CfReport {
    pub value_over_pi: f64,
    /// Convergents `p/q` with `q` up to the bound.
    pub convergents: Vec<(i64, i64)>,
    /// `|value/pi - p/q|` for the last convergent.
    pub best_error: f64,
}

impl CfReport {
    /// True when some convergent matches within the numeric error, i.e. the
    /// value is indistinguishable from a rational multiple of pi.
    pub fn looks_rational(&self, error: f64) -> bool {
        self.convergents.last().is_some() && self.best_error <= error
    }
}

pub fn continued_fraction(x: f64, den_bound: i64) -> CfReport {
    let mut convergents = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    let mut best_error = f64::INFINITY;
    for _ in 0..64 {
        let a = libm::floor(r);
        if a.abs() > 1e15 {
            break;
        }
        let a_i = a as i64;
        let (Some(p2), Some(q2)) = (
            a_i.checked_mul(p1).and_then(|v| v.checked_add(p0)),
            a_i.checked_mul(q1).and_then(|v| v.checked_add(q0)),
        ) else {
            break;
        };
        if q2 > den_bound {
            break;
        }
        convergents.push((p2, q2));
        best_error = libm::fabs(x - p2 as f64 / q2 as f64);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a;
        if frac.abs() < 1e-300 || best_error == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    CfReport {
        value_over_pi: x,
        convergents,
        best_error,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PiClass {
    RationalPi(Ratio<i64>),
    IrrationalPiCertified,
    UnknownNumeric(CfReport),
}

impl PiClass {
    pub fn name(&self) -> &'static str {
        match self {
            PiClass::RationalPi(_) => "RationalPi",
            PiClass::IrrationalPiCertified => "IrrationalPiCertified",
            PiClass::UnknownNumeric(_) => "UnknownNumeric",
        }
    }
}

pub fn classify_pi_rationality(a: &Angle, reg: &GeneratorRegistry) -> PiClass {
    classify_pi_rationality_bounded(a, reg, DEFAULT_DENOMINATOR_BOUND)
}

pub fn classify_pi_rationality_bounded(
    a: &Angle,
    reg: &GeneratorRegistry,
    den_bound: i64,
) -> PiClass {
    if a.is_rational_pi() {
        return PiClass::RationalPi(a.pi_part);
    }
    let nonzero: Vec<usize> = (0..MAX_GENERATORS).filter(|&i| a.gens[i] != 0).collect();
    if a.registry == reg.tag && nonzero.len() == 1 {
        if let Some(Certificate::IrrationalPi(_)) =
            reg.entries.get(nonzero[0]).map(|g| &g.certificate)
        {
            return PiClass::IrrationalPiCertified;
        }
    }
    let v = a.value(reg) / PI;
    PiClass::UnknownNumeric(continued_fraction(v, den_bound))
}

/// Total order on angles by numeric value, for deterministic reporting.
pub fn cmp_by_value(a: &Angle, b: &Angle, reg: &GeneratorRegistry) -> Ordering {
    a.value(reg)
        .partial_cmp(&b.value(reg))
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.cmp(b))
}

/// Reduced `num/den` for a rational multiple of pi given as integers.
pub fn reduced(num: i64, den: i64) -> (i64, i64) {
    let g = num.gcd(&den).max(1);
    let s = if den < 0 { -1 } else { 1 };
    (s * num / g, s * den / g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn reg() -> GeneratorRegistry {
        GeneratorRegistry::new(vec![
            Generator {
                name: "theta".into(),
                value: 2.2864,
                error: 1e-15,
                certificate: Certificate::IrrationalPi("test".into()),
            },
            Generator {
                name: "phi".into(),
                value: 0.7,
                error: 1e-15,
                certificate: Certificate::Unverified,
            },
        ])
        .unwrap()
    }

    #[test]
    fn compose_examples() {
        let q = Orientation::rotation(Angle::pi_frac(1, 2));
        assert_eq!(
            q.compose(&q).unwrap(),
            Orientation::rotation(Angle::pi_frac(1, 1))
        );
        let r = reg();
        let th = r.angle("theta", 1).unwrap();
        let refl0 = Orientation::new(true, Angle::ZERO);
        let refl_th = Orientation::new(true, th);
        assert_eq!(
            refl0.compose(&refl_th).unwrap(),
            Orientation::rotation(th.neg())
        );
        assert_eq!(
            refl_th.compose(&q).unwrap(),
            Orientation::new(true, th.sub(&Angle::pi_frac(1, 2)).unwrap())
        );
    }

    #[test]
    fn normalization() {
        assert_eq!(Angle::pi_frac(5, 2), Angle::pi_frac(1, 2));
        assert_eq!(Angle::pi_frac(-1, 2), Angle::pi_frac(3, 2));
        let r = reg();
        let th = r.angle("theta", 2).unwrap();
        assert_eq!(th.add(&Angle::pi_frac(2, 1)).unwrap(), th);
        assert_eq!(th.sub(&th).unwrap(), Angle::ZERO);
    }

    #[test]
    fn registry_mismatch() {
        let a = reg().angle("theta", 1).unwrap();
        let other = GeneratorRegistry::new(vec![Generator {
            name: "other".into(),
            value: 1.0,
            error: 0.0,
            certificate: Certificate::Unverified,
        }])
        .unwrap();
        let b = other.angle("other", 1).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::RegistryMismatch);
        assert!(a.add(&Angle::pi_frac(1, 3)).is_ok());
        assert_eq!(
            other.angle("nope", 1).unwrap_err(),
            Error::UnknownGenerator("nope".into())
        );
    }

    #[test]
    fn classification() {
        let r = reg();
        assert_eq!(
            classify_pi_rationality(&Angle::pi_frac(3, 4), &r),
            PiClass::RationalPi(Ratio::new(3, 4))
        );
        let th2 = r
            .angle("theta", 2)
            .unwrap()
            .add(&Angle::pi_frac(1, 2))
            .unwrap();
        assert_eq!(
            classify_pi_rationality(&th2, &r),
            PiClass::IrrationalPiCertified
        );
        let mixed = r
            .angle("theta", 1)
            .unwrap()
            .add(&r.angle("phi", 1).unwrap())
            .unwrap();
        let PiClass::UnknownNumeric(rep) = classify_pi_rationality(&mixed, &r) else {
            panic!()
        };
        // oracle: convergents of x approximate x with error < 1/q^2
        let x = (2.2864 + 0.7) / PI;
        assert!((rep.value_over_pi - x).abs() < 1e-12);
        for &(p, q) in &rep.convergents {
            assert!((x - p as f64 / q as f64).abs() <= 1.0 / (q as f64 * q as f64) + 1e-12);
        }
        let unverified = r.angle("phi", 1).unwrap();
        assert!(matches!(
            classify_pi_rationality(&unverified, &r),
            PiClass::UnknownNumeric(_)
        ));
    }

    #[test]
    fn continued_fraction_of_rational_terminates() {
        let rep = continued_fraction(0.75, 1000);
        assert_eq!(rep.convergents.last(), Some(&(3, 4)));
        assert!(rep.looks_rational(1e-12));
        let rep = continued_fraction(core::f64::consts::SQRT_2 - 1.0, 1000);
        assert_eq!(rep.convergents[..4], [(0, 1), (1, 2), (2, 5), (5, 12)]);
    }

    #[test]
    fn values() {
        let r = reg();
        assert!(
            (angle_value(&Angle::pi_frac(1, 2), &r, 1e-10).unwrap() - 1.570_796_326_8).abs()
                < 1e-10
        );
        let a = r.angle("theta", -1).unwrap();
        assert!((a.value(&r) - (2.0 * PI - 2.2864)).abs() < 1e-12);
    }

    #[test]
    fn numeric_action_matches_composition() {
        let r = reg();
        let o1 = Orientation::new(true, r.angle("theta", 1).unwrap());
        let o2 = Orientation::new(
            false,
            Angle::pi_frac(1, 3)
                .add(&r.angle("phi", 2).unwrap())
                .unwrap(),
        );
        let p = [0.3, -1.7];
        let lhs = o1.compose(&o2).unwrap().numeric(&r).apply(p);
        let rhs = o1.numeric(&r).apply(o2.numeric(&r).apply(p));
        assert!((lhs[0] - rhs[0]).abs() < 1e-12 && (lhs[1] - rhs[1]).abs() < 1e-12);
        let inv = o1.inverse().compose(&o1).unwrap();
        assert_eq!(inv, Orientation::IDENTITY);
    }
}
