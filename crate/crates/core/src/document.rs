//! JSON form of a BPA: frame labels plus a map from focal-set key to mass.
//!
//! ```json
//! { "frame": ["a", "b"], "masses": { "a": 0.6, "a|b": 0.4 } }
//! ```
//!
//! Keys join labels with `|`; the empty string is `∅`. Absent keys carry
//! zero mass.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mass::MassFunction;
use crate::powerset::Frame;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpaDocument {
    pub frame: Vec<String>,
    pub masses: BTreeMap<String, f64>,
}

/// Rounds to 12 significant digits so printed values are stable.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().unwrap()
}

impl BpaDocument {
    pub fn from_mass(m: &MassFunction) -> Self {
        let frame = m.frame();
        BpaDocument {
            frame: frame.labels().to_vec(),
            masses: m
                .focal_sets()
                .map(|(s, v)| (frame.subset_key(s), round_sig(v)))
                .collect(),
        }
    }

    pub fn to_mass(&self) -> Result<MassFunction> {
        let frame = Arc::new(Frame::new(self.frame.iter().cloned())?);
        self.to_mass_on(frame)
    }

    /// Builds the BPA on an existing frame, which must carry the same labels.
    pub fn to_mass_on(&self, frame: Arc<Frame>) -> Result<MassFunction> {
        if frame.labels() != self.frame.as_slice() {
            return Err(Error::FrameMismatch(format!(
                "document frame [{}] differs from [{}]",
                self.frame.join(", "),
                frame.labels().join(", ")
            )));
        }
        let mut masses = vec![0.0; frame.power_set_size()];
        for (key, &v) in &self.masses {
            let s = frame.parse_subset_key(key)?;
            masses[s.index()] = v;
        }
        MassFunction::new(frame, masses)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }
}

/// Reads several documents and places them on one shared frame.
pub fn read_sources(paths: &[impl AsRef<Path>]) -> Result<Vec<MassFunction>> {
    let docs: Vec<BpaDocument> = paths.iter().map(BpaDocument::read).collect::<Result<_>>()?;
    let Some(first) = docs.first() else {
        return Ok(Vec::new());
    };
    let frame = Arc::new(Frame::new(first.frame.iter().cloned())?);
    docs.iter().map(|d| d.to_mass_on(frame.clone())).collect()
}
