//! Files, rendering and the command line for `pinwheel-core`.

pub mod cli;
pub mod error;
pub mod generate;
pub mod patchfile;
pub mod rulefile;
pub mod svg;

pub use error::{ForgeError, Result};

use std::path::Path;

use pinwheel_core::families::FamilySpec;
use pinwheel_core::tiling::SubstitutionRule;

/// A family spec such as `pythia:3,1`, or a path to a `.json` rule file.
pub fn load_rule(source: &str, allow_unverified: bool) -> Result<SubstitutionRule> {
    if source.ends_with(".json") || Path::new(source).is_file() {
        let text = std::fs::read_to_string(source)?;
        let file = rulefile::from_json(&text)?;
        return Ok(rulefile::import_rule(&file, allow_unverified)?.rule);
    }
    Ok(source.parse::<FamilySpec>()?.build()?)
}
