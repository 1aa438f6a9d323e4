//! Family files and run reports, both JSON.

use serde::{Deserialize, Serialize};

use crate::code::{is_simple_and_essential, Anchor, ArcCode};
use crate::disc::DiscModel;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// The interchange format for arc families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub format_version: u32,
    pub m: usize,
    pub arcs: Vec<ArcCode>,
}

impl FamilyFile {
    pub fn new(m: usize, arcs: Vec<ArcCode>) -> FamilyFile {
        FamilyFile { format_version: FORMAT_VERSION, m, arcs }
    }

    pub fn from_json(s: &str) -> Result<FamilyFile> {
        let f: FamilyFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        if f.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {}", f.format_version)));
        }
        if f.m < 2 {
            return Err(Error::Format(format!("m = {} is below 2", f.m)));
        }
        for (i, a) in f.arcs.iter().enumerate() {
            for anchor in [a.start, a.end] {
                if let Anchor::Puncture(j) = anchor {
                    if j == 0 || j > f.m {
                        return Err(Error::Format(format!("arc {i}: puncture {j} out of range")));
                    }
                }
            }
            if let Some(t) = a.word.iter().find(|t| **t == 0 || t.unsigned_abs() as usize > f.m) {
                return Err(Error::Format(format!("arc {i}: token {t} out of range")));
            }
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("family serializes");
        s.push('\n');
        s
    }

    /// The arcs as reduced codes of `model`. Every arc must be simple and
    /// essential.
    pub fn codes(&self, model: &DiscModel) -> Result<Vec<ArcCode>> {
        if model.m != self.m {
            return Err(Error::InvalidParameter(format!("file has m = {}, model has m = {}", self.m, model.m)));
        }
        let mut out = Vec::with_capacity(self.arcs.len());
        for (i, a) in self.arcs.iter().enumerate() {
            let c = ArcCode::new(model, a.start, a.end, a.word.clone())?;
            match is_simple_and_essential(model, &c) {
                (true, true) => out.push(c),
                (false, _) => return Err(Error::Hypothesis(format!("arc {i} ({c}) is not simple"))),
                (_, false) => return Err(Error::Hypothesis(format!("arc {i} ({c}) is inessential"))),
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Claim {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Claim {
        Claim { name: name.into(), passed, detail: detail.into() }
    }
}

/// One document per run: what was asked, with what, and what held.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub passed: bool,
    pub claims: Vec<Claim>,
    pub body: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, version: &str, seed: u64, config: serde_json::Value) -> Report {
        Report {
            command: command.into(),
            version: version.into(),
            seed,
            config,
            passed: true,
            claims: Vec::new(),
            body: serde_json::Value::Null,
        }
    }

    pub fn claim(&mut self, c: Claim) {
        self.passed &= c.passed;
        self.claims.push(c);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
