use std::path::PathBuf;

use clap::Args;
use serde::de::DeserializeOwned;
use vcdlab::io::parse_group;
use vcdlab::ppgroups::FiniteAbelianGroup;

use crate::report::Failure;

/// A JSON document given as a file or inline.
#[derive(Args, Debug, Clone)]
pub struct JsonInput {
    /// Read the JSON input from this file.
    #[arg(long, conflicts_with = "json")]
    pub file: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long)]
    pub json: Option<String>,
}

impl JsonInput {
    pub fn text(&self) -> Result<String, Failure> {
        match (&self.file, &self.json) {
            (Some(path), _) => std::fs::read_to_string(path)
                .map_err(|e| Failure::Parse(format!("reading {}: {e}", path.display()))),
            (None, Some(s)) => Ok(s.clone()),
            (None, None) => Err(Failure::Parse("give --file or --json".into())),
        }
    }

    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, Failure> {
        serde_json::from_str(&self.text()?).map_err(|e| Failure::Parse(e.to_string()))
    }
}

/// A group given inline (`2^1,2^3,3^2x4`) or as `{"factors": [...]}` JSON.
#[derive(Args, Debug, Clone)]
pub struct GroupInput {
    /// Factors `p^e` separated by commas, `xk` for multiplicity k.
    #[arg(long, conflicts_with = "group_file")]
    pub factors: Option<String>,
    /// JSON file `{"factors": [{"p":2,"e":3,"mult":1}, ...]}`.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
}

impl GroupInput {
    pub fn group(&self, cap: u64) -> Result<FiniteAbelianGroup, Failure> {
        match (&self.factors, &self.group_file) {
            (Some(f), _) => Ok(FiniteAbelianGroup::parse_with_cap(f, cap)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Parse(format!("reading {}: {e}", path.display())))?;
                Ok(parse_group(&text, cap)?)
            }
            (None, None) => Err(Failure::Parse("give --factors or --group-file".into())),
        }
    }
}
