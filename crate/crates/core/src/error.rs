use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the core can report. [`Error::name`] gives the stable
/// identifier the CLI prints on stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NoDominantRoot,
    NoRootInInterval,
    DivisionByZero,
    NegativeSqrt,
    PrecisionExhausted,
    MissingOperand,
    DegreeCapExceeded { bound: u64, cap: u64 },
    NotPrimitive,
    NoConvergence { iterations: usize },
    RegistryMismatch,
    TooManyGenerators { count: usize },
    UnknownGenerator(String),
    BadIndex { prototile: usize, count: usize },
    FactorNotGreaterThanOne,
    InvalidPrototile(String),
    PrototileMismatch { prototile: usize },
    MemoryCap { projected: u128, cap: u128 },
    NotCentered,
    SpecViolation(String),
    VerifyFailed(String),
    RectangleNotFound,
    ConventionUnresolved,
    NoProvenance,
    ProbeTooLarge,
    EmptyProbe,
    OverflowGuard,
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NoDominantRoot => "NoDominantRoot",
            Error::NoRootInInterval => "NoRootInInterval",
            Error::DivisionByZero => "DivisionByZero",
            Error::NegativeSqrt => "NegativeSqrt",
            Error::PrecisionExhausted => "PrecisionExhausted",
            Error::MissingOperand => "MissingOperand",
            Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            Error::NotPrimitive => "NotPrimitive",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::RegistryMismatch => "RegistryMismatch",
            Error::TooManyGenerators { .. } => "TooManyGenerators",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::BadIndex { .. } => "BadIndex",
            Error::FactorNotGreaterThanOne => "FactorNotGreaterThanOne",
            Error::InvalidPrototile(_) => "InvalidPrototile",
            Error::PrototileMismatch { .. } => "PrototileMismatch",
            Error::MemoryCap { .. } => "MemoryCap",
            Error::NotCentered => "NotCentered",
            Error::SpecViolation(_) => "SpecViolation",
            Error::VerifyFailed(_) => "VerifyFailed",
            Error::RectangleNotFound => "RectangleNotFound",
            Error::ConventionUnresolved => "ConventionUnresolved",
            Error::NoProvenance => "NoProvenance",
            Error::ProbeTooLarge => "ProbeTooLarge",
            Error::EmptyProbe => "EmptyProbe",
            Error::OverflowGuard => "OverflowGuard",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoDominantRoot => f.write_str("polynomial has no real root greater than 1"),
            Error::NoRootInInterval => f.write_str("interval does not isolate exactly one root"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NegativeSqrt => f.write_str("square root of a non-positive number"),
            Error::PrecisionExhausted => {
                f.write_str("interval refinement exceeded its iteration cap")
            }
            Error::MissingOperand => f.write_str("binary operation needs a second operand"),
            Error::DegreeCapExceeded { bound, cap } => {
                write!(f, "cyclotomic search bound {} exceeds cap {}", bound, cap)
            }
            Error::NotPrimitive => f.write_str("substitution matrix is not primitive"),
            Error::NoConvergence { iterations } => {
                write!(
                    f,
                    "power iteration did not converge in {} steps",
                    iterations
                )
            }
            Error::RegistryMismatch => {
                f.write_str("angles refer to different generator registries")
            }
            Error::TooManyGenerators { count } => {
                write!(f, "{} generators exceed the supported maximum", count)
            }
            Error::UnknownGenerator(name) => write!(f, "unknown generator '{}'", name),
            Error::BadIndex { prototile, count } => {
                write!(
                    f,
                    "prototile index {} out of range (rule has {})",
                    prototile, count
                )
            }
            Error::FactorNotGreaterThanOne => f.write_str("substitution factor must exceed 1"),
            Error::InvalidPrototile(why) => write!(f, "invalid prototile: {}", why),
            Error::PrototileMismatch { prototile } => {
                write!(
                    f,
                    "patch tile references prototile {} unknown to the rule",
                    prototile
                )
            }
            Error::MemoryCap { projected, cap } => {
                write!(f, "projected tile count {} exceeds cap {}", projected, cap)
            }
            Error::NotCentered => f.write_str("patch does not contain the origin"),
            Error::SpecViolation(why) => write!(f, "invalid family parameters: {}", why),
            Error::VerifyFailed(why) => write!(f, "rule failed geometric verification: {}", why),
            Error::RectangleNotFound => f.write_str("no two-tile rectangle on the altitude"),
            Error::ConventionUnresolved => f.write_str("no map convention passes verification"),
            Error::NoProvenance => f.write_str("patch carries no supertile provenance"),
            Error::ProbeTooLarge => f.write_str("probe is larger than the supertile inradius"),
            Error::EmptyProbe => f.write_str("probe patch is empty"),
            Error::OverflowGuard => f.write_str("matrix power exceeds the configured size cap"),
        }
    }
}

impl core::error::Error for Error {}
