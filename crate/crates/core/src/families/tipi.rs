use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{cosine_certificate, gate, Family, FamilySpec};
use crate::algebra::{isolate_dominant_root, q_frac, AlgReal, RatPoly};
use crate::angle::{Certificate, Generator, GeneratorRegistry, Orientation};
use crate::error::{Error, Result};
use crate::geom;
use crate::tiling::{make_rule, Child, Prototile, SubstitutionRule};

pub const GENERATOR: &str = "theta";

/// Reading of the scaling and rotation in the tipi maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TipiConvention {
    /// Prototiles grow by `sqrt(eta)` per step (and `a = sqrt(eta)^j`)
    /// instead of by `eta`.
    pub sqrt_scale: bool,
    /// The rotation is `e^{2 pi i theta}` instead of `e^{i theta}`.
    pub two_pi_theta: bool,
}

impl TipiConvention {
    pub const ALL: [TipiConvention; 4] = [
        TipiConvention {
            sqrt_scale: false,
            two_pi_theta: true,
        },
        TipiConvention {
            sqrt_scale: false,
            two_pi_theta: false,
        },
        TipiConvention {
            sqrt_scale: true,
            two_pi_theta: true,
        },
        TipiConvention {
            sqrt_scale: true,
            two_pi_theta: false,
        },
    ];

    pub fn label(&self) -> &'static str {
        match (self.sqrt_scale, self.two_pi_theta) {
            (false, true) => "scale=eta,rotation=e^(2 pi i theta)",
            (false, false) => "scale=eta,rotation=e^(i theta)",
            (true, true) => "scale=sqrt(eta),rotation=e^(2 pi i theta)",
            (true, false) => "scale=sqrt(eta),rotation=e^(i theta)",
        }
    }
}

/// The first convention in [`TipiConvention::ALL`] whose rule verifies.
pub fn build_tipi(m: u32, j: u32) -> Result<SubstitutionRule> {
    FamilySpec::new(Family::Tipi, m, j)?;
    for conv in TipiConvention::ALL {
        match build_tipi_with(m, j, conv) {
            Ok(rule) => return Ok(rule),
            Err(Error::VerifyFailed(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ConventionUnresolved)
}

/// `eta` is the dominant root of `x^m - x^(2j) - 2x^j - 1`; the last
/// prototile splits into `phi_0(T_0), phi_1(T_j), phi_2(T_j), phi_3(T_2j)`.
pub fn build_tipi_with(m: u32, j: u32, conv: TipiConvention) -> Result<SubstitutionRule> {
    FamilySpec::new(Family::Tipi, m, j)?;
    let (mu, ju) = (m as usize, j as usize);
    let mut c = vec![0i64; mu + 1];
    c[0] = -1;
    c[ju] -= 2;
    c[2 * ju] -= 1;
    c[mu] = 1;
    let eta = isolate_dominant_root(&RatPoly::from_i64s(&c))?;
    let lambda = if conv.sqrt_scale {
        eta.sqrt()?
    } else {
        eta.clone()
    };
    let a_exact = lambda.pow(j as i64)?;
    let a = a_exact.to_f64();
    let h = libm::sqrt(a * a - 0.25);
    let cos_theta: AlgReal = a_exact.inv()?.mul_rational(&q_frac(1, 2));
    let theta = libm::acos(cos_theta.to_f64());
    let (rot, certificate) = if conv.two_pi_theta {
        (2.0 * PI * theta, Certificate::Unverified)
    } else {
        (theta, cosine_certificate(&cos_theta, "cosine test: 1/(2a)"))
    };
    let registry = GeneratorRegistry::new(vec![Generator {
        name: GENERATOR.into(),
        value: rot,
        error: 16.0 * f64::EPSILON,
        certificate,
    }])?;

    let base = [[0.0, 0.0], [1.0, 0.0], [0.5, h]];
    let prototiles = (0..mu)
        .map(|i| {
            let s = lambda.pow(i as i64)?.to_f64();
            Prototile::new(base.iter().map(|&p| geom::scale(p, s)).collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let turn = registry.angle(GENERATOR, 1)?;
    let mut children: Vec<Vec<Child>> = (0..mu - 1)
        .map(|i| {
            vec![Child {
                prototile: i + 1,
                orientation: Orientation::IDENTITY,
                translation: [0.0, 0.0],
            }]
        })
        .collect();
    children.push(vec![
        Child {
            prototile: 0,
            orientation: Orientation::IDENTITY,
            translation: [a * a, 0.0],
        },
        Child {
            prototile: ju,
            orientation: Orientation::rotation(turn),
            translation: [a * a, 0.0],
        },
        Child {
            prototile: ju,
            orientation: Orientation::new(true, turn),
            translation: [0.0, 0.0],
        },
        Child {
            prototile: 2 * ju,
            orientation: Orientation::IDENTITY,
            translation: [0.5, h],
        },
    ]);

    let name = format!("tipi:{},{}", m, j);
    let rule = make_rule(&name, prototiles, children, lambda, registry)?
        .with_metadata("family", "tipi")
        .with_metadata("convention", conv.label());
    gate(rule)
}
