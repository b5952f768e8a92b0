//! Patch files, format `pinwheel-forge/patch/v1`: JSON lines, a header
//! followed by one record per tile in canonical order.

use std::io::{BufRead, Write};

use pinwheel_core::angle::{Certificate, Generator, GeneratorRegistry, Orientation};
use pinwheel_core::tiling::{Patch, PlacedTile, Provenance, SubstitutionRule};
use serde::{Deserialize, Serialize};

use crate::error::{schema, Result};
use crate::rulefile::{
    angle_record, decimal, parse_angle, parse_decimal, parse_point, point_record, AngleRecord,
};

pub const PATCH_FORMAT: &str = "pinwheel-forge/patch/v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchHeader {
    pub format: String,
    pub rule: String,
    pub tiles: usize,
    pub root: Option<usize>,
    pub level: Option<usize>,
    /// Generator names and values, enough to evaluate tile angles.
    pub generators: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileRecord {
    pub prototile: usize,
    pub reflect: bool,
    pub angle: AngleRecord,
    pub translation: [String; 2],
    /// Realized vertices, for consumers that do not rebuild the rule.
    pub vertices: Vec<[String; 2]>,
}

/// A patch read back from disk, with what is needed to evaluate it.
#[derive(Clone, Debug, PartialEq)]
pub struct PatchFile {
    pub rule: String,
    pub patch: Patch,
    pub registry: GeneratorRegistry,
    pub vertices: Vec<Vec<[f64; 2]>>,
}

pub fn write_patch<W: Write + ?Sized>(
    out: &mut W,
    rule: &SubstitutionRule,
    patch: &Patch,
) -> Result<()> {
    let reg = rule.registry();
    let header = PatchHeader {
        format: PATCH_FORMAT.into(),
        rule: rule.name().into(),
        tiles: patch.len(),
        root: patch.provenance.map(|p| p.root),
        level: patch.provenance.map(|p| p.level),
        generators: reg
            .entries()
            .iter()
            .map(|g| (g.name.clone(), decimal(g.value)))
            .collect(),
    };
    serde_json::to_writer(&mut *out, &header)?;
    out.write_all(b"\n")?;
    for t in &patch.tiles {
        let rec = TileRecord {
            prototile: t.prototile,
            reflect: t.orientation.reflect,
            angle: angle_record(&t.orientation.angle, reg.len()),
            translation: point_record(t.translation),
            vertices: rule.realize(t).into_iter().map(point_record).collect(),
        };
        serde_json::to_writer(&mut *out, &rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_patch(input: impl BufRead) -> Result<PatchFile> {
    let mut lines = input.lines();
    let first = match lines.next() {
        Some(l) => l?,
        None => return schema("patch file is empty"),
    };
    let header: PatchHeader =
        serde_json::from_str(&first).or_else(|e| schema(format!("patch header: {}", e)))?;
    if header.format != PATCH_FORMAT {
        return schema(format!("unsupported patch format '{}'", header.format));
    }
    let registry = GeneratorRegistry::new(
        header
            .generators
            .iter()
            .map(|(name, v)| {
                Ok(Generator {
                    name: name.clone(),
                    value: parse_decimal(v)?,
                    error: 0.0,
                    certificate: Certificate::Unverified,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    let mut tiles = Vec::with_capacity(header.tiles);
    let mut vertices = Vec::with_capacity(header.tiles);
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: TileRecord =
            serde_json::from_str(&line).or_else(|e| schema(format!("tile record {}: {}", i, e)))?;
        tiles.push(PlacedTile {
            prototile: rec.prototile,
            orientation: Orientation::new(rec.reflect, parse_angle(&rec.angle, &registry)?),
            translation: parse_point(&rec.translation)?,
        });
        vertices.push(
            rec.vertices
                .iter()
                .map(parse_point)
                .collect::<Result<Vec<_>>>()?,
        );
    }
    if tiles.len() != header.tiles {
        return schema(format!(
            "header announces {} tiles, found {}",
            header.tiles,
            tiles.len()
        ));
    }
    let provenance = match (header.root, header.level) {
        (Some(root), Some(level)) => Some(Provenance { root, level }),
        _ => None,
    };
    Ok(PatchFile {
        rule: header.rule,
        patch: Patch { tiles, provenance },
        registry,
        vertices,
    })
}
