//! The built-in substitution families.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::algebra::{is_rational_cosine, AlgReal, RationalCosine};
use crate::angle::Certificate;
use crate::error::{Error, Result};
use crate::tiling::{verify_rule, SubstitutionRule, DEFAULT_TOL};

pub mod fit;
mod pinwheel;
mod pythagoras;
mod pythia;
mod tipi;

pub use pinwheel::build_pinwheel;
pub use pythagoras::build_pythagoras;
pub use pythia::build_pythia;
pub use tipi::{build_tipi, TipiConvention};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Pinwheel,
    Pythagoras,
    Pythia,
    Tipi,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Pinwheel => "pinwheel",
            Family::Pythagoras => "pythagoras",
            Family::Pythia => "pythia",
            Family::Tipi => "tipi",
        }
    }
}

/// A family name with its parameters, e.g. `pythagoras:3,1` or `pinwheel`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub m: u32,
    pub j: u32,
}

impl FamilySpec {
    pub fn new(family: Family, m: u32, j: u32) -> Result<Self> {
        let s = FamilySpec { family, m, j };
        s.validate()?;
        Ok(s)
    }

    pub fn pinwheel() -> Self {
        FamilySpec {
            family: Family::Pinwheel,
            m: 0,
            j: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (m, j) = (self.m, self.j);
        let bad = |why: &str| {
            Err(Error::SpecViolation(format!(
                "{}({},{}): {}",
                self.family.name(),
                m,
                j,
                why
            )))
        };
        match self.family {
            Family::Pinwheel => Ok(()),
            Family::Pythagoras | Family::Pythia => {
                if m < 3 {
                    bad("m must be at least 3")
                } else if j < 1 || j >= m {
                    bad("j must satisfy 1 <= j < m")
                } else if m.gcd(&j) != 1 {
                    bad("gcd(m, j) must be 1")
                } else {
                    Ok(())
                }
            }
            Family::Tipi => {
                if m < 3 {
                    bad("m must be at least 3")
                } else if j < 1 || 2 * j >= m {
                    bad("j must satisfy 1 <= j < m/2")
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn build(&self) -> Result<SubstitutionRule> {
        match self.family {
            Family::Pinwheel => build_pinwheel(),
            Family::Pythagoras => build_pythagoras(self.m, self.j),
            Family::Pythia => build_pythia(self.m, self.j),
            Family::Tipi => build_tipi(self.m, self.j),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Pinwheel => write!(f, "pinwheel"),
            fam => write!(f, "{}:{},{}", fam.name(), self.m, self.j),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (s, None),
        };
        let family = match name.to_ascii_lowercase().as_str() {
            "pinwheel" => Family::Pinwheel,
            "pythagoras" => Family::Pythagoras,
            "pythia" => Family::Pythia,
            "tipi" => Family::Tipi,
            other => return Err(Error::SpecViolation(format!("unknown family '{}'", other))),
        };
        if family == Family::Pinwheel {
            return match params {
                None => Ok(FamilySpec::pinwheel()),
                Some(_) => Err(Error::SpecViolation("pinwheel takes no parameters".into())),
            };
        }
        let params =
            params.ok_or_else(|| Error::SpecViolation(format!("{} needs parameters m,j", name)))?;
        let mut it = params.split(',').map(|p| p.trim().parse::<u32>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(m)), Some(Ok(j)), None) => FamilySpec::new(family, m, j),
            _ => Err(Error::SpecViolation(format!(
                "cannot parse parameters '{}'",
                params
            ))),
        }
    }
}

/// Irrationality certificate for an angle with cosine `c`.
pub(crate) fn cosine_certificate(c: &AlgReal, label: &str) -> Certificate {
    match is_rational_cosine(c) {
        Ok(RationalCosine::No) => Certificate::IrrationalPi(String::from(label)),
        _ => Certificate::Unverified,
    }
}

pub(crate) fn gate(rule: SubstitutionRule) -> Result<SubstitutionRule> {
    let r = verify_rule(&rule, DEFAULT_TOL);
    if r.pass {
        Ok(rule)
    } else {
        Err(Error::VerifyFailed(format!(
            "{}: area {:.3e}, containment {:.3e}, overlap {:.3e} at prototile {}",
            rule.name(),
            r.area_defect,
            r.containment_defect,
            r.overlap_defect,
            r.worst_prototile
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let s: FamilySpec = "pythagoras:3,1".parse().unwrap();
        assert_eq!(
            s,
            FamilySpec {
                family: Family::Pythagoras,
                m: 3,
                j: 1
            }
        );
        assert_eq!(s.to_string(), "pythagoras:3,1");
        assert_eq!(
            "pinwheel".parse::<FamilySpec>().unwrap(),
            FamilySpec::pinwheel()
        );
        assert_eq!("tipi: 5, 2".parse::<FamilySpec>().unwrap().j, 2);
        for bad in [
            "pythagoras:4,2",
            "pythia:2,1",
            "pythagoras:3,3",
            "tipi:5,3",
            "tipi:4,2",
            "hat:1,1",
            "pythia:3",
            "pinwheel:1,1",
        ] {
            assert!(
                matches!(bad.parse::<FamilySpec>(), Err(Error::SpecViolation(_))),
                "{}",
                bad
            );
        }
    }
}
