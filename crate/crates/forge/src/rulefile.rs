//! Rule files, schema `pinwheel-forge/rule/v1`.
//!
//! Coordinates and generator values are decimal strings with 17
//! significant digits; the factor is exact (minimal polynomial plus an
//! isolating interval, both as rational strings) with a decimal for
//! readers.

use std::str::FromStr;

use num_rational::Ratio;
use pinwheel_core::algebra::{AlgReal, RatPoly, Q};
use pinwheel_core::angle::{
    Angle, Certificate, Generator, GeneratorRegistry, Orientation, MAX_GENERATORS,
};
use pinwheel_core::tiling::{
    make_rule, verify_rule, Child, Prototile, SubstitutionRule, VerifyReport, DEFAULT_TOL,
};
use serde::{Deserialize, Serialize};

use crate::error::{schema, ForgeError, Result};

pub const RULE_SCHEMA: &str = "pinwheel-forge/rule/v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    pub schema: String,
    pub name: String,
    #[serde(default)]
    pub metadata: Vec<(String, String)>,
    pub factor: FactorRecord,
    pub generators: Vec<GeneratorRecord>,
    pub prototiles: Vec<Vec<[String; 2]>>,
    pub children: Vec<Vec<ChildRecord>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorRecord {
    /// Coefficients from the constant term up.
    pub minpoly: Vec<String>,
    pub interval: [String; 2],
    pub decimal: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub name: String,
    pub value: String,
    pub error: String,
    pub certificate: CertificateRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CertificateRecord {
    IrrationalPi { proof: String },
    Unverified,
}

/// `pi_num / pi_den * pi + sum gens[i] * generator_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleRecord {
    pub pi_num: i64,
    pub pi_den: i64,
    pub gens: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChildRecord {
    pub prototile: usize,
    pub reflect: bool,
    pub angle: AngleRecord,
    pub translation: [String; 2],
}

pub fn decimal(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn parse_decimal(s: &str) -> Result<f64> {
    match f64::from_str(s.trim()) {
        Ok(v) if v.is_finite() => Ok(v),
        _ => schema(format!("bad decimal '{}'", s)),
    }
}

pub fn point_record(p: [f64; 2]) -> [String; 2] {
    [decimal(p[0]), decimal(p[1])]
}

pub fn parse_point(p: &[String; 2]) -> Result<[f64; 2]> {
    Ok([parse_decimal(&p[0])?, parse_decimal(&p[1])?])
}

pub fn angle_record(a: &Angle, generators: usize) -> AngleRecord {
    let pi = a.pi_part();
    AngleRecord {
        pi_num: *pi.numer(),
        pi_den: *pi.denom(),
        gens: a.gens()[..generators].to_vec(),
    }
}

pub fn parse_angle(r: &AngleRecord, reg: &GeneratorRegistry) -> Result<Angle> {
    if r.pi_den <= 0 {
        return schema("angle denominator must be positive");
    }
    if r.gens.len() > reg.len() {
        return schema(format!(
            "angle has {} generator coefficients, registry has {}",
            r.gens.len(),
            reg.len()
        ));
    }
    let mut gens = [0i32; MAX_GENERATORS];
    gens[..r.gens.len()].copy_from_slice(&r.gens);
    Ok(Angle::from_parts(
        Ratio::new(r.pi_num, r.pi_den),
        gens,
        reg.tag(),
    ))
}

fn parse_q(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).or_else(|_| schema(format!("bad rational '{}'", s)))
}

pub fn export_rule(rule: &SubstitutionRule) -> RuleFile {
    let reg = rule.registry();
    let f = rule.factor();
    let (lo, hi) = f.interval();
    RuleFile {
        schema: RULE_SCHEMA.into(),
        name: rule.name().into(),
        metadata: rule.metadata().to_vec(),
        factor: FactorRecord {
            minpoly: f.poly().coeffs().iter().map(|c| c.to_string()).collect(),
            interval: [lo.to_string(), hi.to_string()],
            decimal: decimal(rule.factor_f64()),
        },
        generators: reg
            .entries()
            .iter()
            .map(|g| GeneratorRecord {
                name: g.name.clone(),
                value: decimal(g.value),
                error: decimal(g.error),
                certificate: match &g.certificate {
                    Certificate::IrrationalPi(p) => {
                        CertificateRecord::IrrationalPi { proof: p.clone() }
                    }
                    Certificate::Unverified => CertificateRecord::Unverified,
                },
            })
            .collect(),
        prototiles: rule
            .prototiles()
            .iter()
            .map(|p| p.vertices().iter().map(|&v| point_record(v)).collect())
            .collect(),
        children: rule
            .all_children()
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|c| ChildRecord {
                        prototile: c.prototile,
                        reflect: c.orientation.reflect,
                        angle: angle_record(&c.orientation.angle, reg.len()),
                        translation: point_record(c.translation),
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Loaded rule with the report of the verification run on import.
#[derive(Clone, Debug)]
pub struct Imported {
    pub rule: SubstitutionRule,
    pub report: VerifyReport,
}

/// Rebuilds and verifies a rule. A failing verification is an error unless
/// `allow_unverified` is set, in which case the rule loads with its report.
pub fn import_rule(file: &RuleFile, allow_unverified: bool) -> Result<Imported> {
    if file.schema != RULE_SCHEMA {
        return schema(format!("unsupported schema '{}'", file.schema));
    }
    let poly = RatPoly::new(
        file.factor
            .minpoly
            .iter()
            .map(|c| parse_q(c))
            .collect::<Result<_>>()?,
    );
    if poly.degree().unwrap_or(0) == 0 {
        return schema("factor polynomial must be nonconstant");
    }
    let factor = AlgReal::from_interval(
        &poly,
        parse_q(&file.factor.interval[0])?,
        parse_q(&file.factor.interval[1])?,
    )
    .or_else(|e| schema(format!("factor: {}", e)))?;
    if factor.cmp_rational(&Q::from_integer(1.into())) != std::cmp::Ordering::Greater {
        return schema("factor polynomial has no root greater than 1 in the interval");
    }
    let registry = GeneratorRegistry::new(
        file.generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    name: g.name.clone(),
                    value: parse_decimal(&g.value)?,
                    error: parse_decimal(&g.error)?,
                    certificate: match &g.certificate {
                        CertificateRecord::IrrationalPi { proof } => {
                            Certificate::IrrationalPi(proof.clone())
                        }
                        CertificateRecord::Unverified => Certificate::Unverified,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    let prototiles = file
        .prototiles
        .iter()
        .map(|p| {
            Prototile::new(p.iter().map(parse_point).collect::<Result<_>>()?)
                .map_err(ForgeError::from)
        })
        .collect::<Result<Vec<_>>>()?;
    let children = file
        .children
        .iter()
        .map(|cs| {
            cs.iter()
                .map(|c| {
                    Ok(Child {
                        prototile: c.prototile,
                        orientation: Orientation::new(c.reflect, parse_angle(&c.angle, &registry)?),
                        translation: parse_point(&c.translation)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rule = make_rule(&file.name, prototiles, children, factor, registry)?;
    for (k, v) in &file.metadata {
        rule = rule.with_metadata(k, v);
    }
    let report = verify_rule(&rule, DEFAULT_TOL);
    if !report.pass && !allow_unverified {
        return Err(pinwheel_core::Error::VerifyFailed(format!(
            "imported rule '{}' fails verification at prototile {}",
            file.name, report.worst_prototile
        ))
        .into());
    }
    Ok(Imported { rule, report })
}

pub fn to_json(file: &RuleFile) -> Result<String> {
    let mut s = serde_json::to_string_pretty(file)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<RuleFile> {
    serde_json::from_str(text).or_else(|e| schema(format!("rule file: {}", e)))
}
