use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Deserialize;

use crate::report::Report;

pub const MANIFEST: &str = "corpus.toml";
pub const EXPECTED_DIR: &str = "expected";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(rename = "entry")]
    pub entries: Vec<CorpusEntry>,
}

/// One frozen check: a command line and where the instance comes from.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub args: Vec<String>,
    pub source: String,
    #[serde(default)]
    pub note: String,
}

pub fn load_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join(MANIFEST);
    let text =
        fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut m: Manifest =
        toml::from_str(&text).with_context(|| format!("invalid {}", path.display()))?;
    m.entries.sort_by(|a, b| a.name.cmp(&b.name));
    if let Some(w) = m.entries.windows(2).find(|w| w[0].name == w[1].name) {
        bail!("duplicate corpus entry `{}`", w[0].name);
    }
    if let Some(e) = m
        .entries
        .iter()
        .find(|e| e.args.first().is_some_and(|a| a == "corpus"))
    {
        bail!("corpus entry `{}` may not invoke the corpus runner", e.name);
    }
    Ok(m)
}

/// Output of an entry as frozen on disk: the report followed by the exit code.
pub fn render_entry(dir: &Path, entry: &CorpusEntry) -> String {
    let args = entry.args.iter().map(|a| {
        let p = dir.join(a);
        if p.is_file() {
            p.into_os_string()
        } else {
            a.into()
        }
    });
    let out = crate::run(std::iter::once("qsgame".into()).chain(args));
    format!("{}EXIT {}\n", out.text, out.code)
}

fn expected_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(EXPECTED_DIR).join(format!("{name}.txt"))
}

fn diff(expected: &str, actual: &str) -> Vec<String> {
    let e: Vec<&str> = expected.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    let mut out = Vec::new();
    for i in 0..e.len().max(a.len()) {
        match (e.get(i), a.get(i)) {
            (Some(x), Some(y)) if x == y => {}
            (x, y) => {
                if let Some(x) = x {
                    out.push(format!("  line {}: - {x}", i + 1));
                }
                if let Some(y) = y {
                    out.push(format!("  line {}: + {y}", i + 1));
                }
            }
        }
    }
    out
}

pub fn run(dir: &Path, name: Option<&str>, refreeze: bool) -> Result<Report> {
    let manifest = load_manifest(dir)?;
    let entries: Vec<&CorpusEntry> = manifest
        .entries
        .iter()
        .filter(|e| name.is_none_or(|n| e.name == n))
        .collect();
    if let (Some(n), true) = (name, entries.is_empty()) {
        bail!("no corpus entry named `{n}`");
    }
    let outputs: Vec<String> = entries.par_iter().map(|e| render_entry(dir, e)).collect();
    let mut r = Report::new();
    let mut mismatches = 0;
    for (e, actual) in entries.iter().zip(outputs) {
        let path = expected_path(dir, &e.name);
        if refreeze {
            fs::create_dir_all(path.parent().expect("expected dir"))?;
            fs::write(&path, &actual)
                .with_context(|| format!("cannot write {}", path.display()))?;
            r.line(format!("CORPUS {} FROZEN", e.name));
            continue;
        }
        let expected = fs::read_to_string(&path).unwrap_or_default();
        if expected == actual {
            r.line(format!("CORPUS {} PASS", e.name));
        } else {
            mismatches += 1;
            r.line(format!("CORPUS {} FAIL", e.name));
            if expected.is_empty() {
                r.line(format!("  missing {}", path.display()));
            }
            for l in diff(&expected, &actual) {
                r.line(l);
            }
        }
    }
    r.flag("corpus", mismatches == 0, || {
        format!("mismatches={mismatches}")
    });
    Ok(r)
}
