use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::Value;
use sha2::{Digest, Sha256};

use foamcalc_core::foam::{FoamWithBoundary, PreFoam};
use foamcalc_core::planar::RotationWeb;
use foamcalc_core::web::Web;

/// An input file with its digest.
pub struct Input {
    pub path: PathBuf,
    pub text: String,
    pub sha256: String,
}

pub fn read(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let sha256 = format!("{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok(Input {
        path: path.to_path_buf(),
        text,
        sha256,
    })
}

pub fn parse<T: serde::de::DeserializeOwned>(input: &Input) -> Result<T> {
    serde_json::from_str(&input.text)
        .map_err(|e| anyhow::anyhow!("{}:{}:{}: {}", input.path.display(), e.line(), e.column(), e))
}

pub fn web(input: &Input) -> Result<Web> {
    let w: Web = parse(input)?;
    let v = w.validate();
    if !v.is_empty() {
        let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
        bail!("{}: invalid web: {}", input.path.display(), msgs.join("; "));
    }
    Ok(w)
}

pub fn rotation_web(input: &Input) -> Result<RotationWeb> {
    let raw: Value = parse(input)?;
    if raw.get("rotation").is_none() {
        bail!(
            "{}: no \"rotation\" key; planar commands need a rotation system",
            input.path.display()
        );
    }
    let rw: RotationWeb = parse(input)?;
    web(input)?;
    Ok(rw)
}

pub fn is_fragment(input: &Input) -> Result<bool> {
    let raw: Value = parse(input)?;
    Ok(raw.get("boundary_web").is_some())
}

pub fn closed_foam(input: &Input) -> Result<PreFoam> {
    if is_fragment(input)? {
        bail!(
            "{}: expected a closed foam, found a fragment with a boundary web",
            input.path.display()
        );
    }
    parse(input)
}

pub fn fragment(input: &Input) -> Result<FoamWithBoundary> {
    parse(input)
}

/// JSON files of a directory, sorted by name.
pub fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot list {}", dir.display()))? {
        let p = entry?.path();
        if p.extension().is_some_and(|e| e == "json") {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Pretty JSON with a trailing newline; the canonical file form.
pub fn canonical<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("corpus types serialize");
    s.push('\n');
    s
}
