//! Resumable progress files for long searches.

use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::count::SignedCount;
use crate::error::{Error, Result};

use crate::run::CheckpointTag;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partial {
    #[serde(with = "crate::serde_big::biguint")]
    pub pos: BigUint,
    #[serde(with = "crate::serde_big::biguint")]
    pub neg: BigUint,
}

impl From<&SignedCount> for Partial {
    fn from(c: &SignedCount) -> Self {
        Partial {
            pos: c.positives().clone(),
            neg: c.negatives().clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Raw {
    design: serde_json::Value,
    class: serde_json::Value,
    prefix_count: usize,
    completed_prefixes: Vec<usize>,
    partial: Partial,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symbol_partial: Option<Partial>,
}

/// The state of a partially finished search: which top-level prefixes are
/// done and the tally over them.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub design: serde_json::Value,
    pub class: serde_json::Value,
    pub prefix_count: usize,
    pub completed_prefixes: Vec<usize>,
    pub partial: SignedCount,
    /// Symbol-sign tallies, for Latin cube censuses.
    pub symbol_partial: Option<SignedCount>,
}

impl Checkpoint {
    pub(crate) fn new(
        tag: &CheckpointTag,
        done: &[bool],
        partial: SignedCount,
        symbol_partial: Option<SignedCount>,
    ) -> Self {
        Checkpoint {
            design: tag.design.clone(),
            class: tag.class.clone(),
            prefix_count: done.len(),
            completed_prefixes: (0..done.len()).filter(|&i| done[i]).collect(),
            partial,
            symbol_partial,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.completed_prefixes.len() == self.prefix_count
    }

    pub fn load(path: &Path) -> Result<Option<Self>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Checkpoint(format!("{}: {e}", path.display()))),
        };
        let raw: Raw = serde_json::from_str(&text)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        Ok(Some(Checkpoint {
            design: raw.design,
            class: raw.class,
            prefix_count: raw.prefix_count,
            completed_prefixes: raw.completed_prefixes,
            partial: SignedCount::new(raw.partial.pos, raw.partial.neg),
            symbol_partial: raw.symbol_partial.map(|p| SignedCount::new(p.pos, p.neg)),
        }))
    }

    /// Writes atomically: a temporary file renamed over the target.
    pub fn save(&self, path: &Path) -> Result<()> {
        let raw = Raw {
            design: self.design.clone(),
            class: self.class.clone(),
            prefix_count: self.prefix_count,
            completed_prefixes: self.completed_prefixes.clone(),
            partial: Partial::from(&self.partial),
            symbol_partial: self.symbol_partial.as_ref().map(Partial::from),
        };
        let text = serde_json::to_string_pretty(&raw).expect("checkpoint serializes");
        let tmp = path.with_extension("tmp");
        let io = |e: std::io::Error| Error::Checkpoint(format!("{}: {e}", path.display()));
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }

    pub(crate) fn check_matches(&self, tag: &CheckpointTag, prefix_count: usize) -> Result<()> {
        if self.design != tag.design || self.class != tag.class {
            return Err(Error::Checkpoint(
                "checkpoint belongs to a different design or class".into(),
            ));
        }
        if self.prefix_count != prefix_count {
            return Err(Error::Checkpoint(format!(
                "checkpoint was split into {} prefixes, this run uses {prefix_count}",
                self.prefix_count
            )));
        }
        if self.completed_prefixes.iter().any(|&i| i >= prefix_count) {
            return Err(Error::Checkpoint("prefix index out of range".into()));
        }
        Ok(())
    }
}
