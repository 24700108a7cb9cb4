//! The JSON poset file format.
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 4,
//!   "covers": [[0, 1], [0, 2], [1, 3], [2, 3]],
//!   "names": ["0", "a", "b", "1"]
//! }
//! ```
//!
//! Covers are Hasse pairs `[lower, upper]`; `names` is optional. Output is
//! byte-stable: keys in the order above, covers sorted, two-space indentation.

use std::fs;
use std::path::Path;

use poset_endo::Poset;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub version: u32,
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// A poset together with its optional element names.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub poset: Poset,
    pub names: Option<Vec<String>>,
}

impl Loaded {
    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }
}

impl PosetFile {
    pub fn from_poset(p: &Poset, names: Option<Vec<String>>) -> Self {
        PosetFile {
            version: FORMAT_VERSION,
            n: p.len(),
            covers: p.covers().map(|(u, v)| [u, v]).collect(),
            names,
        }
    }
}

/// Parses poset file text; `origin` names the source in error messages.
pub fn parse_poset(text: &str, origin: &str) -> Result<Loaded, HarnessError> {
    let file: PosetFile =
        serde_json::from_str(text).map_err(|e| HarnessError::json(origin, &e))?;
    if file.version != FORMAT_VERSION {
        return Err(HarnessError::Usage(format!(
            "{origin}: unsupported format version {}",
            file.version
        )));
    }
    if let Some(names) = &file.names {
        if names.len() != file.n {
            return Err(HarnessError::Usage(format!(
                "{origin}: {} names for {} elements",
                names.len(),
                file.n
            )));
        }
    }
    let covers: Vec<(usize, usize)> = file.covers.iter().map(|&[u, v]| (u, v)).collect();
    Ok(Loaded {
        poset: Poset::from_cover_list(file.n, &covers)?,
        names: file.names,
    })
}

pub fn read_poset(path: &Path) -> Result<Loaded, HarnessError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(&shown, e))?;
    parse_poset(&text, &shown)
}

/// Serialized file text, with a trailing newline.
pub fn poset_to_string(p: &Poset, names: Option<&[String]>) -> String {
    let file = PosetFile::from_poset(p, names.map(<[String]>::to_vec));
    let mut s = serde_json::to_string_pretty(&file).expect("poset files always serialize");
    s.push('\n');
    s
}

pub fn write_poset(p: &Poset, names: Option<&[String]>, path: &Path) -> Result<(), HarnessError> {
    fs::write(path, poset_to_string(p, names))
        .map_err(|e| HarnessError::io(&path.display().to_string(), e))
}
