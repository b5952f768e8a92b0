//! SVG 1.1 output, one closed polygon per tile.

use std::f64::consts::PI;
use std::fmt::Write;

use clap::ValueEnum;
use pinwheel_core::geom::{wrap_angle, BBox};

use crate::error::{ForgeError, Result};
use crate::patchfile::PatchFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColorBy {
    Type,
    Orientation,
    Chirality,
}

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
];

#[derive(Clone, Copy, Debug)]
pub struct SvgStyle {
    pub color_by: ColorBy,
    pub width: f64,
    pub allow_empty: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            color_by: ColorBy::Type,
            width: 800.0,
            allow_empty: false,
        }
    }
}

fn fill(file: &PatchFile, i: usize, by: ColorBy) -> String {
    let t = &file.patch.tiles[i];
    match by {
        ColorBy::Type => PALETTE[t.prototile % PALETTE.len()].into(),
        ColorBy::Chirality => (if t.orientation.reflect {
            "#e15759"
        } else {
            "#4e79a7"
        })
        .into(),
        ColorBy::Orientation => {
            let hue = wrap_angle(t.orientation.angle.value(&file.registry)) / (2.0 * PI) * 360.0;
            format!("hsl({:.3},70%,55%)", hue)
        }
    }
}

/// Renders with the y axis pointing up.
pub fn render_svg(file: &PatchFile, style: &SvgStyle) -> Result<String> {
    if file.patch.is_empty() && !style.allow_empty {
        return Err(ForgeError::EmptyPatch);
    }
    let mut bb = BBox::empty();
    file.vertices.iter().flatten().for_each(|&p| bb.add(p));
    if file.vertices.is_empty() {
        bb = BBox {
            min: [0.0, 0.0],
            max: [1.0, 1.0],
        };
    }
    let (w, h) = (
        (bb.max[0] - bb.min[0]).max(1e-12),
        (bb.max[1] - bb.min[1]).max(1e-12),
    );
    let pad = 0.02 * w.max(h);
    let (vx, vy, vw, vh) = (
        bb.min[0] - pad,
        -bb.max[1] - pad,
        w + 2.0 * pad,
        h + 2.0 * pad,
    );
    let height = style.width * vh / vw;
    let stroke = 0.001 * vw.max(vh);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.3}\" height=\"{:.3}\" viewBox=\"{:.9} {:.9} {:.9} {:.9}\">",
        style.width, height, vx, vy, vw, vh
    );
    let _ = writeln!(
        s,
        "<g stroke=\"#222222\" stroke-width=\"{:.9}\" stroke-linejoin=\"round\">",
        stroke
    );
    for (i, poly) in file.vertices.iter().enumerate() {
        let pts: Vec<String> = poly
            .iter()
            .map(|p| format!("{:.9},{:.9}", p[0], -p[1]))
            .collect();
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"{}\"/>",
            pts.join(" "),
            fill(file, i, style.color_by)
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
