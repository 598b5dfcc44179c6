//! JSON pipeline specs. Every step runs before any file is written, so a
//! failing spec leaves no partial outputs.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use rainbow_poset::{solve_min_class, validate, Coloring, ColoringKind, Mode, PosetFamily, SolveOptions};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{
    build, class_size_rows, congen_trials, construction_json, trials_csv, trials_json, ConstructSpec, ConstructionType,
    VariantArg, DETECTOR_DEFAULT_CAP,
};
use crate::io::{csv_string, load_coloring, read_json, ColoringJson};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PipelineSpec {
    name: String,
    seed: Option<u64>,
    steps: Vec<Step>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
enum Step {
    Construct {
        #[serde(rename = "type")]
        kind: String,
        n: u32,
        l: Option<u64>,
        k: Option<u64>,
        #[serde(default)]
        total: bool,
        variant: Option<String>,
        forbid: Option<String>,
        mode: Option<String>,
        #[serde(default)]
        analytic: bool,
    },
    Load {
        path: PathBuf,
    },
    Validate {
        forbid: Option<String>,
        mode: Option<String>,
    },
    Stats,
    Solve {
        n: u32,
        colors: u64,
        forbid: String,
        mode: Option<String>,
        kind: Option<String>,
    },
    CongenTrials {
        n: u32,
        k: usize,
        l: usize,
        trials: u64,
        #[serde(default)]
        materialize: bool,
    },
}

fn mode_of(m: &Option<String>) -> Result<Mode> {
    Ok(m.as_deref().map(str::parse).transpose()?.unwrap_or_default())
}

fn value_enum<T: ValueEnum>(s: &str, what: &str) -> Result<T> {
    T::from_str(s, true).map_err(|_| anyhow::anyhow!("unknown {what} `{s}`"))
}

/// The coloring the next validate/stats step applies to.
struct Current {
    coloring: Coloring,
    forbidden: Option<PosetFamily>,
}

struct Artifact {
    name: String,
    body: String,
}

/// Runs every step of `spec_path` in memory, then writes the artifacts and
/// `manifest.json` into `out` (default: the current directory).
pub fn run_experiment(spec_path: &Path, out: Option<&Path>, default_seed: u64, budget: u64) -> Result<String> {
    let spec: PipelineSpec = read_json(spec_path)?;
    let seed = spec.seed.unwrap_or(default_seed);
    let base = spec_path.parent().unwrap_or(Path::new("."));
    let mut current: Option<Current> = None;
    let mut artifacts: Vec<Artifact> = Vec::new();
    let mut steps: Vec<Value> = Vec::new();
    for (idx, step) in spec.steps.iter().enumerate() {
        let tag = format!("{:02}", idx + 1);
        let mut add = |suffix: &str, body: String| {
            let name = format!("{tag}-{suffix}");
            artifacts.push(Artifact { name: name.clone(), body });
            name
        };
        let summary = match step {
            Step::Construct { kind, n, l, k, total, variant, forbid, mode, analytic } => {
                let cs = ConstructSpec {
                    kind: value_enum::<ConstructionType>(kind, "construction")?,
                    n: *n,
                    l: *l,
                    k: *k,
                    total: *total,
                    variant: variant.as_deref().map_or(Ok(VariantArg::Three), |v| value_enum(v, "variant"))?,
                    forbid: forbid.clone(),
                    mode: mode_of(mode)?,
                    analytic: *analytic,
                    check: *n <= DETECTOR_DEFAULT_CAP,
                    seed,
                };
                let built = build(&cs).with_context(|| format!("step {tag}"))?;
                if built.validation.as_ref().is_some_and(|v| !v.is_ok()) {
                    bail!("step {tag}: construction failed its detector check");
                }
                let file = add("construction.json", serde_json::to_string_pretty(&construction_json(&built))? + "\n");
                let r = built.report;
                let summary = json!({ "op": "construct", "name": r.name, "min_class": r.min_class(), "file": file });
                if let Some(c) = r.coloring {
                    current = Some(Current { coloring: c, forbidden: Some(r.forbidden) });
                }
                summary
            }
            Step::Load { path } => {
                let full = if path.is_absolute() { path.clone() } else { base.join(path) };
                let c = load_coloring(&full).with_context(|| format!("step {tag}"))?;
                let summary = json!({ "op": "load", "path": path, "n": c.n(), "l": c.num_colors() });
                current = Some(Current { coloring: c, forbidden: None });
                summary
            }
            Step::Validate { forbid, mode } => {
                let Some(cur) = &current else { bail!("step {tag}: validate needs a coloring from an earlier step") };
                let forbidden = match forbid {
                    Some(f) => PosetFamily::parse(f, mode_of(mode)?)?,
                    None => match &cur.forbidden {
                        Some(f) => f.clone(),
                        None => bail!("step {tag}: validate needs `forbid` for a loaded coloring"),
                    },
                };
                let v = validate(&cur.coloring, &forbidden);
                let witness = v.witness.as_ref().map(|w| w.sets.iter().map(|s| s.0).collect::<Vec<_>>());
                let body = json!({ "forbidden": forbidden.spec(), "mode": forbidden.mode().to_string(), "valid": v.is_ok(), "witness": witness });
                let file = add("validation.json", serde_json::to_string_pretty(&body)? + "\n");
                json!({ "op": "validate", "valid": v.is_ok(), "file": file })
            }
            Step::Stats => {
                let Some(cur) = &current else { bail!("step {tag}: stats needs a coloring from an earlier step") };
                let st = cur.coloring.stats();
                let csv = csv_string(&["class", "size"], &class_size_rows(&st.sizes, st.uncolored))?;
                let coloring = add("coloring.json", serde_json::to_string(&ColoringJson::from_coloring(&cur.coloring))? + "\n");
                let file = add("stats.csv", csv);
                json!({ "op": "stats", "min_class": st.min_size, "file": file, "coloring": coloring })
            }
            Step::Solve { n, colors, forbid, mode, kind } => {
                let forbidden = PosetFamily::parse(forbid, mode_of(mode)?)?;
                let kind: ColoringKind = kind.as_deref().map(str::parse).transpose()?.unwrap_or_default();
                let opts = SolveOptions { budget, ..SolveOptions::default() };
                let r = solve_min_class(*n, *colors, &forbidden, kind, &opts).with_context(|| format!("step {tag}"))?;
                let body = json!({
                    "value": r.value,
                    "status": r.status.to_string(),
                    "nodes_explored": r.nodes_explored,
                    "witness": ColoringJson::from_coloring(&r.witness),
                });
                let file = add("solve.json", serde_json::to_string_pretty(&body)? + "\n");
                let summary = json!({ "op": "solve", "value": r.value, "status": r.status.to_string(), "file": file });
                current = Some(Current { coloring: r.witness, forbidden: Some(forbidden) });
                summary
            }
            Step::CongenTrials { n, k, l, trials, materialize } => {
                let t = congen_trials(*n, *k, *l, *trials, *materialize, seed).with_context(|| format!("step {tag}"))?;
                let file = add("trials.csv", trials_csv(&t)?);
                let summary = trials_json(*n, *k, *l, seed, &t);
                json!({
                    "op": "congen_trials",
                    "trials": summary["trials"],
                    "condition_passed": summary["condition_passed"],
                    "detector_failures": summary["detector_failures"],
                    "file": file,
                })
            }
        };
        steps.push(summary);
    }
    let manifest = json!({
        "name": spec.name,
        "spec": spec_path,
        "seed": seed,
        "budget": budget,
        "versions": { "rainbow-poset": rainbow_poset::VERSION, "rainbow-poset-cli": env!("CARGO_PKG_VERSION") },
        "steps": steps,
        "files": artifacts.iter().map(|a| a.name.clone()).collect::<Vec<_>>(),
    });
    let dir = out.unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for a in &artifacts {
        let path = dir.join(&a.name);
        fs::write(&path, &a.body).with_context(|| format!("writing {}", path.display()))?;
    }
    let manifest_path = dir.join("manifest.json");
    fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(format!("{}: {} steps, {} files written to {}\n", spec.name, steps.len(), artifacts.len() + 1, dir.display()))
}
