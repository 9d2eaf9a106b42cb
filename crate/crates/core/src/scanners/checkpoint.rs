use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::collisions::{ScanMode, SCHEMA_VERSION};
use crate::error::{Error, Result};

/// Resume state of a collision scan. `values[i]` is the value at
/// `start + i` as `"p/q"`, or `null` when the argument was filtered out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub func: String,
    pub start: u64,
    pub max: u64,
    pub mode: ScanMode,
    pub chunk_size: u64,
    pub last_chunk: Option<u64>,
    pub values: Vec<Option<String>>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        if cp.version != SCHEMA_VERSION {
            return Err(Error::Checkpoint(format!(
                "unsupported version {}",
                cp.version
            )));
        }
        Ok(cp)
    }

    /// Write through a temporary file so an interrupted write leaves the
    /// previous checkpoint intact.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub(super) fn check_matches(
        &self,
        func: &str,
        start: u64,
        max: u64,
        mode: ScanMode,
        chunk_size: u64,
    ) -> Result<()> {
        let ok = self.func == func
            && self.start == start
            && self.max == max
            && self.mode == mode
            && self.chunk_size == chunk_size;
        if ok {
            Ok(())
        } else {
            Err(Error::Checkpoint(format!(
                "checkpoint is for {} on [{}, {}] mode {} chunk {}, not {func} on [{start}, {max}] mode {mode} chunk {chunk_size}",
                self.func, self.start, self.max, self.mode, self.chunk_size
            )))
        }
    }
}
