//! File formats: coloring, poset and family JSON, plus output routing.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rainbow_poset::{Coloring, Mode, Poset, PosetFamily, SubsetId, Warning};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// `{"n", "l", "colors"}` with `colors[s]` the color of subset `s`, 0 for
/// uncolored. Unknown fields are ignored so richer reports still load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub n: u32,
    pub l: u16,
    pub colors: Vec<u16>,
}

impl ColoringJson {
    pub fn from_coloring(c: &Coloring) -> Self {
        ColoringJson { n: c.n(), l: c.num_colors(), colors: c.assignment().to_vec() }
    }

    pub fn into_coloring(self) -> Result<Coloring> {
        Ok(Coloring::from_assignment(self.n, self.l, self.colors)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub size: usize,
    pub relations: Vec<[usize; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson { size: p.size(), relations: p.relations().into_iter().map(|(i, j)| [i, j]).collect() }
    }

    pub fn into_poset(self) -> Result<Poset> {
        let rel: Vec<(usize, usize)> = self.relations.iter().map(|&[i, j]| (i, j)).collect();
        Ok(Poset::from_relations(self.size, &rel)?)
    }
}

/// A subset literal in JSON: the integer encoding or a string such as
/// `"{1,3}"` or `"5"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SubsetLiteral {
    Bits(u64),
    Text(String),
}

impl SubsetLiteral {
    pub fn resolve(&self) -> Result<SubsetId> {
        match self {
            SubsetLiteral::Bits(b) => Ok(SubsetId(*b)),
            SubsetLiteral::Text(t) => Ok(t.parse::<SubsetId>()?),
        }
    }
}

pub fn resolve_all(lits: &[SubsetLiteral]) -> Result<Vec<SubsetId>> {
    lits.iter().map(SubsetLiteral::resolve).collect()
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_coloring(path: &Path) -> Result<Coloring> {
    read_json::<ColoringJson>(path)?.into_coloring()
}

/// Either inline JSON (starting with `[` or `{`) or a path to a JSON file.
pub fn inline_or_file<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        serde_json::from_str(t).context("parsing inline JSON")
    } else {
        read_json(Path::new(arg))
    }
}

/// One poset file holds a single poset object or a list of them.
#[derive(Deserialize)]
#[serde(untagged)]
enum PosetFile {
    One(PosetJson),
    Many(Vec<PosetJson>),
}

/// Builtin members from `spec` followed by the explicit posets in `files`.
pub fn load_family(spec: Option<&str>, files: &[PathBuf], mode: Mode) -> Result<PosetFamily> {
    let mut members = Vec::new();
    let mut labels = Vec::new();
    if let Some(spec) = spec {
        let parsed = PosetFamily::parse(spec, mode)?;
        members.extend_from_slice(parsed.members());
        labels.extend_from_slice(parsed.labels());
    }
    for path in files {
        let posets = match read_json::<PosetFile>(path)? {
            PosetFile::One(p) => vec![p],
            PosetFile::Many(ps) => ps,
        };
        for (k, p) in posets.into_iter().enumerate() {
            members.push(p.into_poset()?);
            labels.push(format!("{}#{k}", path.display()));
        }
    }
    if members.is_empty() {
        bail!("no forbidden posets given; use --forbid or --poset");
    }
    Ok(PosetFamily::with_labels(members, labels, mode)?)
}

pub fn warning_text(w: &Warning, forbidden: &PosetFamily) -> String {
    match w {
        Warning::PosetLargerThanColors { member, size, colors } => {
            let label = forbidden.labels().get(*member).map_or("?", String::as_str);
            format!("{label} has {size} elements but only {colors} colors exist, so it is never rainbow")
        }
        Warning::DegenerateWeakAntichain => "weak A2 copies are any two distinct sets".into(),
    }
}

pub fn subset_bits(sets: &[SubsetId]) -> Vec<u64> {
    sets.iter().map(|s| s.0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command's result in every rendering it supports.
pub struct Rendered {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
}

impl Rendered {
    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Csv => match &self.csv {
                Some(c) => c.clone(),
                None => bail!("this command has no CSV rendering"),
            },
        })
    }
}

/// Writes to `out` when given, else to stdout.
pub fn emit(body: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

pub fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
