//! Reading and writing presentations, modules, scalars and characters.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use oreflag_core::corpus;
use oreflag_core::ore::{parse_presentation, OrePresentation};
use oreflag_core::rep::FDModule;
use oreflag_core::triangularize::Character;
use oreflag_core::{Field, Matrix, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Prefix naming a built-in example instead of a file.
pub const BUILTIN_PREFIX: &str = "builtin:";

/// Resolves a presentation given as `builtin:<name>`, inline text, or a
/// path (relative paths against `base`).
pub fn load_presentation(source: &str, base: Option<&Path>) -> Result<OrePresentation> {
    if let Some(name) = source.strip_prefix(BUILTIN_PREFIX) {
        let example = corpus::example(name).ok_or_else(|| anyhow!("unknown built-in example '{name}'"))?;
        return Ok(example.presentation());
    }
    if source.contains('\n') || source.trim_start().starts_with("field") {
        return parse_presentation(source).map_err(|e| anyhow!("inline presentation: {e}"));
    }
    let path = match base {
        Some(dir) if Path::new(source).is_relative() => dir.join(source),
        _ => PathBuf::from(source),
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    parse_presentation(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    pub dim: usize,
    pub action: BTreeMap<String, Vec<Vec<Entry>>>,
}

pub fn parse_entry(field: Field, e: &Entry) -> Result<Scalar> {
    match e {
        Entry::Int(v) => Ok(field.from_i64(*v)),
        Entry::Text(t) => field.parse_scalar(t.trim()).map_err(|err| anyhow!("{err}")),
    }
}

pub fn scalar_entry(s: &Scalar) -> Entry {
    match s {
        Scalar::Modular { value, .. } => Entry::Int(*value as i64),
        other => Entry::Text(other.to_string()),
    }
}

pub fn scalar_json(s: &Scalar) -> Value {
    serde_json::to_value(scalar_entry(s)).expect("entries serialize")
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|r| Value::Array((0..m.cols()).map(|c| scalar_json(m.get(r, c))).collect())).collect(),
    )
}

pub fn character_json(c: &Character, names: &[String]) -> Value {
    let map: serde_json::Map<String, Value> =
        names.iter().zip(&c.values).map(|(n, v)| (n.clone(), scalar_json(v))).collect();
    Value::Object(map)
}

/// Builds a module from its file form over `p`. Every generator needs a
/// square matrix of the stated dimension.
pub fn module_from_file(file: &ModuleFile, p: OrePresentation) -> Result<FDModule> {
    let f = p.field();
    let names = p.names().to_vec();
    for key in file.action.keys() {
        if !names.contains(key) {
            bail!("action given for unknown generator '{key}'");
        }
    }
    let mut mats = Vec::with_capacity(names.len());
    for name in &names {
        let rows = file.action.get(name).ok_or_else(|| anyhow!("no action matrix for generator '{name}'"))?;
        if rows.len() != file.dim || rows.iter().any(|r| r.len() != file.dim) {
            bail!("action of '{name}' is not {0}x{0}", file.dim);
        }
        let entries = rows.iter().flatten().map(|e| parse_entry(f, e)).collect::<Result<Vec<_>>>()?;
        mats.push(Matrix::from_entries(f, file.dim, file.dim, entries));
    }
    Ok(FDModule::new(Arc::new(p), file.dim, mats)?)
}

/// Reads a module file. `presentation` overrides the file's own field.
pub fn load_module(path: &Path, presentation: Option<OrePresentation>) -> Result<FDModule> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: ModuleFile =
        serde_json::from_str(&text).with_context(|| format!("{} is not a module file", path.display()))?;
    let p = match (presentation, &file.presentation) {
        (Some(p), _) => p,
        (None, Some(src)) => load_presentation(src, path.parent())?,
        (None, None) => bail!("{} names no presentation; pass --presentation", path.display()),
    };
    module_from_file(&file, p)
}

pub fn module_to_file(m: &FDModule, presentation: Option<String>) -> ModuleFile {
    let names = m.presentation().names();
    let action = names
        .iter()
        .zip(m.actions())
        .map(|(n, a)| {
            let rows = (0..a.rows()).map(|r| (0..a.cols()).map(|c| scalar_entry(a.get(r, c))).collect()).collect();
            (n.clone(), rows)
        })
        .collect();
    ModuleFile { presentation, dim: m.dim(), action }
}

/// Parses `1,0` (values in generator order) or `x:1,y:0` (by name) into a
/// tuple of values for the first `level` generators.
pub fn parse_character(p: &OrePresentation, level: usize, text: &str) -> Result<Character> {
    let f = p.field();
    let names = &p.names()[..level];
    let parts: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut values = vec![None; level];
    for (k, part) in parts.iter().enumerate() {
        let (slot, value) = match part.split_once(':') {
            Some((name, v)) => {
                let i = names
                    .iter()
                    .position(|n| n == name.trim())
                    .ok_or_else(|| anyhow!("'{}' is not one of the first {level} generators", name.trim()))?;
                (i, v.trim())
            }
            None if k < level => (k, *part),
            None => bail!("too many values: level {level} has {level} generators"),
        };
        values[slot] = Some(f.parse_scalar(value).map_err(|e| anyhow!("{e}"))?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| anyhow!("no value for generator '{}'", names[i])))
        .collect::<Result<Vec<_>>>()?;
    Ok(Character::new(values))
}

pub fn presentation_summary(p: &OrePresentation) -> Value {
    json!({
        "field": p.field().to_string(),
        "generators": p.names(),
        "left_datum": p.has_left_datum(),
    })
}
