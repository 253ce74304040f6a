use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use adele_lab_core::equivalence::{build_place_matching, PlaceBijectionData};
use adele_lab_core::fieldlab::{builtin_fields, NumberField, NumberFieldSpec};
use adele_lab_core::Error;
use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct WorkspaceDoc {
    #[serde(default)]
    pub fields: BTreeMap<String, NumberFieldSpec>,
    /// Keyed by `"left->right"`.
    #[serde(default)]
    pub matchings: BTreeMap<String, PlaceBijectionData>,
}

/// Fields and saved matchings, optionally persisted to a JSON file.
pub struct Workspace {
    path: Option<PathBuf>,
    doc: WorkspaceDoc,
}

fn pair_key(left: &str, right: &str) -> String {
    format!("{left}->{right}")
}

impl Workspace {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        let doc = match path {
            Some(p) if p.exists() => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            _ => WorkspaceDoc::default(),
        };
        Ok(Workspace { path: path.map(Path::to_path_buf), doc })
    }

    pub fn save(&self) -> Result<()> {
        let path = self
            .path
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("this command needs --workspace".into()))?;
        fs::write(path, serde_json::to_string_pretty(&self.doc)? + "\n")
            .with_context(|| format!("writing {}", path.display()))
    }

    pub fn field(&self, label: &str) -> Result<NumberField> {
        if let Some(spec) = self.doc.fields.get(label) {
            return Ok(NumberField::new(spec.clone())?);
        }
        builtin_fields()
            .into_iter()
            .find(|f| f.label() == label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown field {label}")).into())
    }

    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = builtin_fields().iter().map(|f| f.label().to_string()).collect();
        v.extend(self.doc.fields.keys().filter(|k| !v.contains(k)).cloned().collect::<Vec<_>>());
        v
    }

    pub fn add_field(&mut self, field: &NumberField) -> Result<()> {
        self.doc.fields.insert(field.label().to_string(), field.spec().clone());
        self.save()
    }

    pub fn add_matching(&mut self, phi: &PlaceBijectionData) -> Result<()> {
        self.doc.matchings.insert(pair_key(&phi.left_field, &phi.right_field), phi.clone());
        self.save()
    }

    /// A saved matching covering `bound`, or a freshly built canonical one.
    pub fn matching(&self, left: &str, right: &str, bound: u64) -> Result<PlaceBijectionData> {
        if let Some(phi) = self.doc.matchings.get(&pair_key(left, right)) {
            if phi.verified_bound >= bound {
                return Ok(phi.clone());
            }
        }
        Ok(build_place_matching(&self.field(left)?, &self.field(right)?, bound)?)
    }
}
