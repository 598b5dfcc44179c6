//! The single-shot subcommands. Each returns a [`Rendered`] result and
//! writes nothing itself, except for side reports named by the caller.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use rainbow_poset::bounds::{
    binary_entropy, delta, eq_inequality_check, formula_a2, g_of_l, known_value, m_of_l, solve_c0, FormulaValue, Rational,
};
use rainbow_poset::constructions::{
    chain_interval_coloring, congen_coloring, congen_condition_check, congen_generate, derive_seed, incomparable_traces,
    lift3_coloring, p3_total_coloring, pk_coloring, Certificate, ChainFamily, ConstructionReport, Lift3Variant,
};
use rainbow_poset::solver::{az_decompose, cross_sperner_check};
use rainbow_poset::{
    find_copy, solve_min_class, validate, ColoringKind, GroundSet, Mode, PosetFamily, SolveOptions, SubsetId, Validation,
};
use serde_json::{json, Value};

use crate::io::{
    csv_string, inline_or_file, load_coloring, load_family, resolve_all, subset_bits, warning_text, ColoringJson,
    PosetJson, Rendered, SubsetLiteral,
};

/// Largest `n` at which `construct` runs the detector unless told not to.
pub const DETECTOR_DEFAULT_CAP: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionType {
    Traces,
    Chain,
    Congen,
    Lift3,
    P3,
    Pk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Three,
    Four,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Induced,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Induced => Mode::Induced,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Partial,
    Total,
}

impl From<KindArg> for ColoringKind {
    fn from(k: KindArg) -> ColoringKind {
        match k {
            KindArg::Partial => ColoringKind::Partial,
            KindArg::Total => ColoringKind::Total,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ConstructArgs {
    #[arg(long = "type", value_enum)]
    pub kind: ConstructionType,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// total coloring (traces only)
    #[arg(long)]
    pub total: bool,
    /// lift3 base coloring
    #[arg(long, value_enum, default_value = "three")]
    pub variant: VariantArg,
    /// forbidden family for traces; defaults to P2 (partial) or P3 (total)
    #[arg(long)]
    pub forbid: Option<String>,
    #[arg(long, value_enum, default_value = "induced")]
    pub mode: ModeArg,
    /// congen: skip materializing the coloring and report analytic sizes only
    #[arg(long)]
    pub analytic: bool,
    /// skip the detector check on the materialized coloring
    #[arg(long)]
    pub no_check: bool,
    /// congen: CSV file receiving the analytic class sizes
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Parameters of one construction, shared by `construct` and `run`.
#[derive(Clone, Debug)]
pub struct ConstructSpec {
    pub kind: ConstructionType,
    pub n: u32,
    pub l: Option<u64>,
    pub k: Option<u64>,
    pub total: bool,
    pub variant: VariantArg,
    pub forbid: Option<String>,
    pub mode: Mode,
    pub analytic: bool,
    pub check: bool,
    pub seed: u64,
}

impl ConstructArgs {
    pub fn spec(&self, seed: u64) -> ConstructSpec {
        ConstructSpec {
            kind: self.kind,
            n: self.n,
            l: self.l,
            k: self.k,
            total: self.total,
            variant: self.variant,
            forbid: self.forbid.clone(),
            mode: self.mode.into(),
            analytic: self.analytic,
            check: !self.no_check && self.n <= DETECTOR_DEFAULT_CAP,
            seed,
        }
    }
}

pub struct Built {
    pub report: ConstructionReport,
    pub validation: Option<Validation>,
    pub chains: Option<ChainFamily>,
}

fn need(v: Option<u64>, name: &str, kind: ConstructionType) -> Result<u64> {
    v.with_context(|| format!("--{name} is required for {kind:?}"))
}

pub fn build(spec: &ConstructSpec) -> Result<Built> {
    let mut chains = None;
    let mut report = match spec.kind {
        ConstructionType::Traces => {
            let l = need(spec.l, "l", spec.kind)?;
            let default = if spec.total { "P3" } else { "P2" };
            let forbidden = PosetFamily::parse(spec.forbid.as_deref().unwrap_or(default), spec.mode)?;
            incomparable_traces(spec.n, l, spec.total, &forbidden)?
        }
        ConstructionType::Chain => chain_interval_coloring(spec.n, need(spec.l, "l", spec.kind)?)?,
        ConstructionType::Congen => {
            let l = need(spec.l, "l", spec.kind)? as usize;
            let k = need(spec.k, "k", spec.kind)? as usize;
            let cf = congen_generate(spec.n, k, l, spec.seed)?;
            let r = congen_coloring(&cf, !spec.analytic)?;
            chains = Some(cf);
            r
        }
        ConstructionType::Lift3 => {
            let variant = match spec.variant {
                VariantArg::Three => Lift3Variant::ThreeColor,
                VariantArg::Four => Lift3Variant::FourColor,
            };
            lift3_coloring(spec.n, variant)?
        }
        ConstructionType::P3 => p3_total_coloring(spec.n)?,
        ConstructionType::Pk => pk_coloring(spec.n, need(spec.k.or(spec.l), "k", spec.kind)?)?,
    };
    let validation = if spec.check && report.coloring.is_some() { Some(report.detector_check()?) } else { None };
    Ok(Built { report, validation, chains })
}

fn validation_json(v: &Validation, forbidden: &PosetFamily) -> Value {
    json!({
        "valid": v.is_ok(),
        "witness": v.witness.as_ref().map(|w| json!({
            "member": w.member,
            "label": forbidden.labels().get(w.member),
            "sets": subset_bits(&w.sets),
            "embedding": subset_bits(&w.embedding),
        })),
        "warnings": v.warnings.iter().map(|w| warning_text(w, forbidden)).collect::<Vec<_>>(),
    })
}

fn certificate_name(c: Certificate) -> &'static str {
    match c {
        Certificate::Structural => "structural",
        Certificate::Detector => "detector",
    }
}

pub fn class_size_rows(sizes: &[u64], uncolored: u64) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> = sizes.iter().enumerate().map(|(i, s)| vec![(i + 1).to_string(), s.to_string()]).collect();
    rows.push(vec!["uncolored".into(), uncolored.to_string()]);
    rows
}

pub fn construction_json(b: &Built) -> Value {
    let r = &b.report;
    let mut v = json!({
        "construction": r.name,
        "n": r.n,
        "l": r.class_sizes.len(),
        "class_sizes": r.class_sizes,
        "uncolored": r.uncolored,
        "min_class": r.min_class(),
        "claimed_min": r.claimed_min,
        "forbidden": r.forbidden.spec(),
        "mode": r.forbidden.mode().to_string(),
        "certificate": certificate_name(r.certificate),
    });
    if let Some(c) = &r.coloring {
        let cj = ColoringJson::from_coloring(c);
        v["l"] = json!(cj.l);
        v["colors"] = json!(cj.colors);
    }
    if let Some(val) = &b.validation {
        v["validation"] = validation_json(val, &r.forbidden);
    }
    if let Some(cf) = &b.chains {
        v["chains"] = json!(cf.chains().iter().map(|c| subset_bits(c)).collect::<Vec<_>>());
    }
    v
}

pub fn construct(args: &ConstructArgs, seed: u64) -> Result<(Rendered, Option<String>)> {
    let spec = args.spec(seed);
    let built = build(&spec)?;
    let r = &built.report;
    let rows = class_size_rows(&r.class_sizes, r.uncolored);
    let csv = csv_string(&["class", "size"], &rows)?;
    let side = match (&args.report, spec.kind) {
        (Some(_), ConstructionType::Congen) => Some(csv.clone()),
        (Some(_), _) => bail!("--report is only produced by congen"),
        _ => None,
    };
    let mut text = format!(
        "{} n={} forbidden={} ({})\nclass sizes {:?}, uncolored {}\nmin class {} (claimed {}), certificate {}\n",
        r.name,
        r.n,
        r.forbidden.spec(),
        r.forbidden.mode(),
        r.class_sizes,
        r.uncolored,
        r.min_class(),
        r.claimed_min,
        certificate_name(r.certificate)
    );
    if let Some(v) = &built.validation {
        if !v.is_ok() {
            bail!("construction {} failed its detector check", r.name);
        }
        text.push_str("detector: valid\n");
    }
    Ok((Rendered { json: construction_json(&built), text, csv: Some(csv) }, side))
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// builtin posets, comma separated, e.g. "P3,V2,W2" or "P2+A1"
    #[arg(long)]
    pub forbid: Option<String>,
    /// explicit poset JSON file(s): {"size": p, "relations": [[i, j], ...]}
    #[arg(long = "poset")]
    pub posets: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "induced")]
    pub mode: ModeArg,
}

impl FamilyArgs {
    pub fn load(&self) -> Result<PosetFamily> {
        load_family(self.forbid.as_deref(), &self.posets, self.mode.into())
    }
}

#[derive(Args, Debug, Clone)]
pub struct DetectArgs {
    /// coloring JSON to validate
    #[arg(long, conflicts_with = "sets")]
    pub coloring: Option<PathBuf>,
    /// set family to search for plain copies, inline JSON or a file
    #[arg(long)]
    pub sets: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

pub fn detect(args: &DetectArgs) -> Result<Rendered> {
    let forbidden = args.family.load()?;
    if let Some(path) = &args.coloring {
        let c = load_coloring(path)?;
        let v = validate(&c, &forbidden);
        let mut json = validation_json(&v, &forbidden);
        json["n"] = json!(c.n());
        json["l"] = json!(c.num_colors());
        json["forbidden"] = json!(forbidden.spec());
        let text = match &v.witness {
            None => format!("valid: no rainbow copy of {} ({})\n", forbidden.spec(), forbidden.mode()),
            Some(w) => format!(
                "rainbow copy of {}: sets {}\n",
                forbidden.labels()[w.member],
                w.sets.iter().map(SubsetId::to_string).collect::<Vec<_>>().join(" ")
            ),
        };
        return Ok(Rendered { json, text, csv: None });
    }
    let Some(sets) = &args.sets else { bail!("give --coloring FILE or --sets JSON") };
    let lits: Vec<SubsetLiteral> = inline_or_file(sets)?;
    let family = resolve_all(&lits)?;
    let mut entries = Vec::new();
    let mut text = String::new();
    for (p, label) in forbidden.members().iter().zip(forbidden.labels()) {
        let emb = find_copy(&family, p, forbidden.mode());
        text.push_str(&match &emb {
            Some(e) => format!("{label}: copy {}\n", e.iter().map(SubsetId::to_string).collect::<Vec<_>>().join(" ")),
            None => format!("{label}: none\n"),
        });
        entries.push(json!({ "label": label, "found": emb.is_some(), "embedding": emb.as_deref().map(subset_bits) }));
    }
    Ok(Rendered { json: json!({ "mode": forbidden.mode().to_string(), "copies": entries }), text, csv: None })
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub colors: u64,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value = "partial")]
    pub kind: KindArg,
    /// disable lattice-automorphism pruning
    #[arg(long)]
    pub no_symmetry: bool,
    /// valid coloring JSON whose min class seeds the search
    #[arg(long)]
    pub seed_witness: Option<PathBuf>,
}

pub fn formula_json(f: &FormulaValue) -> Value {
    json!({
        "value": f.value,
        "applicable": f.applicable,
        "source": f.source,
        "caveat": f.caveat,
        "note": f.condition_note,
    })
}

pub fn solve(args: &SolveArgs, budget: u64) -> Result<Rendered> {
    let forbidden = args.family.load()?;
    let kind: ColoringKind = args.kind.into();
    let seed_witness = args.seed_witness.as_deref().map(load_coloring).transpose()?;
    let opts = SolveOptions { budget, symmetry: !args.no_symmetry, seed_witness };
    let r = solve_min_class(args.n, args.colors, &forbidden, kind, &opts)?;
    let known = known_value(args.n, args.colors, &forbidden, kind);
    let label = if kind == ColoringKind::Partial { "f" } else { "F" };
    let text = format!(
        "{label}({},{},{}) = {} [{}], {} nodes\nwitness class sizes {:?}\nknown value {:?} ({})\n",
        args.n,
        args.colors,
        forbidden.spec(),
        r.value,
        r.status,
        r.nodes_explored,
        r.witness.stats().sizes,
        known.value,
        known.source
    );
    let json = json!({
        "n": args.n,
        "l": args.colors,
        "forbidden": forbidden.spec(),
        "posets": forbidden.members().iter().map(PosetJson::from_poset).collect::<Vec<_>>(),
        "mode": forbidden.mode().to_string(),
        "kind": kind.to_string(),
        "value": r.value,
        "status": r.status.to_string(),
        "nodes_explored": r.nodes_explored,
        "witness": ColoringJson::from_coloring(&r.witness),
        "warnings": r.warnings.iter().map(|w| warning_text(w, &forbidden)).collect::<Vec<_>>(),
        "known": formula_json(&known),
    });
    Ok(Rendered { json, text, csv: None })
}

#[derive(Args, Debug, Clone)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub n: u32,
    /// list of families, each a list of subset literals; inline JSON or a file
    #[arg(long)]
    pub families: String,
}

pub fn decompose(args: &DecomposeArgs) -> Result<Rendered> {
    let ground = GroundSet::new(args.n)?;
    let lits: Vec<Vec<SubsetLiteral>> = inline_or_file(&args.families)?;
    let fams: Vec<Vec<SubsetId>> = lits.iter().map(|f| resolve_all(f)).collect::<Result<_>>()?;
    let found = az_decompose(ground, &fams)?;
    let cross = (fams.len() == 2).then(|| cross_sperner_check(ground, &fams[0], &fams[1]));
    let (json, text) = match &found {
        Some(d) => (
            json!({
                "found": true,
                "chain": subset_bits(&d.chain),
                "parts": d.parts,
                "covers": d.covers(&fams),
            }),
            format!(
                "chain {}\nparts {:?}\n",
                d.chain.iter().map(SubsetId::to_string).collect::<Vec<_>>().join(" < "),
                d.parts
            ),
        ),
        None => (json!({ "found": false }), "no decomposition\n".into()),
    };
    let mut json = json;
    if let Some(c) = cross {
        json["cross_sperner"] =
            json!({ "is_cross_sperner": c.is_cross_sperner, "product": c.product.to_string(), "bound_ok": c.bound_ok });
    }
    Ok(Rendered { json, text, csv: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundsOp {
    M,
    #[value(name = "formulaA2", alias = "formula-a2")]
    FormulaA2,
    Entropy,
    C0,
    Eq,
}

#[derive(Args, Debug, Clone)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub op: BoundsOp,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub i: Option<u64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn bounds(args: &BoundsArgs) -> Result<Rendered> {
    let need_l = || args.l.context("--l is required");
    let (json, text) = match args.op {
        BoundsOp::M => {
            let l = need_l()?;
            let m = m_of_l(l);
            (json!({ "l": l, "m": m }), format!("m({l}) = {m}\n"))
        }
        BoundsOp::FormulaA2 => {
            let n = args.n.context("--n is required")?;
            let l = need_l()?;
            let f = formula_a2(n, l);
            (formula_json(&f), format!("formulaA2({n},{l}) = {:?} ({})\n", f.value, f.condition_note))
        }
        BoundsOp::Entropy => {
            let x = args.x.context("--x is required")?;
            let h = binary_entropy(x)?;
            (json!({ "x": x, "h": h }), format!("h({x}) = {h}\n"))
        }
        BoundsOp::C0 => {
            let rep = solve_c0(args.tol)?;
            let roots: Vec<Value> = rep
                .roots
                .iter()
                .map(|r| json!({ "root": r.root, "residual": r.residual, "bracket": [r.bracket.0, r.bracket.1] }))
                .collect();
            let text = if rep.roots.is_empty() {
                "no sign change in (0, 1/2)\n".to_string()
            } else {
                rep.roots.iter().map(|r| format!("root {} residual {:e}\n", r.root, r.residual)).collect()
            };
            let text = format!("{text}root in [1/3, 1/2]: {}\n", rep.in_stated_interval);
            (
                json!({ "roots": roots, "in_stated_interval": rep.in_stated_interval, "grid_step": rep.grid_step, "tol": args.tol }),
                text,
            )
        }
        BoundsOp::Eq => {
            let l = need_l()?;
            let range: Vec<u64> = match args.i {
                Some(i) => vec![i],
                None => (1..l).collect(),
            };
            let mut rows = Vec::new();
            let mut text = format!("g({l}) = {}\n", rational(&g_of_l(l)));
            let mut all = true;
            for i in range {
                let c = eq_inequality_check(l, i)?;
                let d = delta(l, i)?;
                all &= c.holds;
                text.push_str(&format!("i={i}: {} <= {} {}\n", rational(&c.lhs), rational(&c.rhs), c.holds));
                rows.push(json!({ "i": i, "lhs": rational(&c.lhs), "rhs": rational(&c.rhs), "holds": c.holds, "delta": rational(&d) }));
            }
            (json!({ "l": l, "g": rational(&g_of_l(l)), "all_hold": all, "checks": rows }), text)
        }
    };
    Ok(Rendered { json, text, csv: None })
}

#[derive(Args, Debug, Clone)]
pub struct CongenArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// also build each coloring and run the detector
    #[arg(long)]
    pub materialize: bool,
    /// CSV file receiving one row per trial
    #[arg(long)]
    pub report: Option<PathBuf>,
}

pub struct Trial {
    pub trial: u64,
    pub seed: u64,
    pub condition_pass: bool,
    pub class_sizes: Vec<u64>,
    pub uncolored: u64,
    pub min_class: u64,
    pub detector_valid: Option<bool>,
}

pub fn congen_trials(n: u32, k: usize, l: usize, trials: u64, materialize: bool, seed: u64) -> Result<Vec<Trial>> {
    (0..trials)
        .map(|t| {
            let s = derive_seed(seed, t);
            let cf = congen_generate(n, k, l, s)?;
            let mut r = congen_coloring(&cf, materialize)?;
            let detector_valid = if materialize { Some(r.detector_check()?.is_ok()) } else { None };
            Ok(Trial {
                trial: t,
                seed: s,
                condition_pass: congen_condition_check(&cf).pass,
                min_class: r.min_class(),
                class_sizes: r.class_sizes,
                uncolored: r.uncolored,
                detector_valid,
            })
        })
        .collect()
}

pub fn trials_csv(trials: &[Trial]) -> Result<String> {
    let classes = trials.first().map_or(0, |t| t.class_sizes.len());
    let mut header: Vec<String> =
        ["trial", "seed", "condition_pass", "min_class", "uncolored", "detector_valid"].map(String::from).to_vec();
    header.extend((1..=classes).map(|c| format!("class_{c}")));
    let rows: Vec<Vec<String>> = trials
        .iter()
        .map(|t| {
            let mut row = vec![
                t.trial.to_string(),
                t.seed.to_string(),
                t.condition_pass.to_string(),
                t.min_class.to_string(),
                t.uncolored.to_string(),
                t.detector_valid.map_or(String::new(), |v| v.to_string()),
            ];
            row.extend(t.class_sizes.iter().map(u64::to_string));
            row
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_string(&header, &rows)
}

pub fn trials_json(n: u32, k: usize, l: usize, seed: u64, trials: &[Trial]) -> Value {
    let passed = trials.iter().filter(|t| t.condition_pass).count();
    json!({
        "n": n, "k": k, "l": l, "seed": seed,
        "trials": trials.len(),
        "condition_passed": passed,
        "detector_failures": trials.iter().filter(|t| t.detector_valid == Some(false)).count(),
        "entries": trials.iter().map(|t| json!({
            "trial": t.trial,
            "seed": t.seed,
            "condition_pass": t.condition_pass,
            "min_class": t.min_class,
            "uncolored": t.uncolored,
            "class_sizes": t.class_sizes,
            "detector_valid": t.detector_valid,
        })).collect::<Vec<_>>(),
    })
}

pub fn congen(args: &CongenArgs, seed: u64) -> Result<(Rendered, Option<String>)> {
    let trials = congen_trials(args.n, args.k, args.l, args.trials, args.materialize, seed)?;
    let csv = trials_csv(&trials)?;
    let passed = trials.iter().filter(|t| t.condition_pass).count();
    let min = trials.iter().map(|t| t.min_class).min().unwrap_or(0);
    let text = format!(
        "congen n={} k={} l={}: condition passed {passed}/{}, smallest min class {min}\n",
        args.n,
        args.k,
        args.l,
        trials.len()
    );
    let side = args.report.as_ref().map(|_| csv.clone());
    Ok((Rendered { json: trials_json(args.n, args.k, args.l, seed, &trials), text, csv: Some(csv) }, side))
}
