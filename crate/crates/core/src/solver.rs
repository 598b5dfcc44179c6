//! Exact max-min class sizes at small `n`, plus the structural diagnostics
//! around cross-comparable and cross-Sperner families.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coloring::{family_warnings, validate, Coloring, Warning};
use crate::copy_search::{ColorView, Relations, Shape};
use crate::error::{Error, Result};
use crate::lattice::{comparable, permutations, GroundSet, SubsetId};
use crate::poset::{Mode, Poset, PosetFamily};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ColoringKind {
    #[default]
    Partial,
    Total,
}

impl FromStr for ColoringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "partial" => Ok(ColoringKind::Partial),
            "total" => Ok(ColoringKind::Total),
            _ => Err(Error::OutOfRange(format!("unknown coloring kind `{s}`"))),
        }
    }
}

impl fmt::Display for ColoringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColoringKind::Partial => "partial",
            ColoringKind::Total => "total",
        })
    }
}

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
/// Largest `n` for which lattice automorphisms prune the search.
pub const SYMMETRY_CAP: u32 = 5;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// search nodes allowed across all feasibility runs
    pub budget: u64,
    pub symmetry: bool,
    /// a known valid coloring whose min class seeds the lower end
    pub seed_witness: Option<Coloring>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, symmetry: true, seed_witness: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    LowerBoundOnly,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::LowerBoundOnly => "lower_bound_only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u64,
    pub witness: Coloring,
    pub status: SolveStatus,
    pub nodes_explored: u64,
    pub warnings: Vec<Warning>,
}

enum Outcome {
    Found(Vec<u16>),
    Refuted,
    OutOfBudget,
}

/// Depth-first feasibility search for one target class size.
struct Search<'a> {
    n: u32,
    l: u16,
    total: bool,
    target: u64,
    mode: Mode,
    rel: &'a Relations,
    shapes: &'a [Shape],
    /// per prefix length, the lattice automorphisms fixing the prefix setwise
    stabilizers: &'a [Vec<Vec<u64>>],
    assign: Vec<u16>,
    sizes: Vec<u64>,
    active: Vec<u64>,
    masks: Vec<Vec<u64>>,
    used: u16,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn len(&self) -> usize {
        1 << self.n
    }

    fn deficit(&self) -> u64 {
        self.sizes[1..].iter().map(|&s| self.target.saturating_sub(s)).sum()
    }

    fn set(&mut self, idx: usize, color: u16) {
        self.assign[idx] = color;
        if color > 0 {
            self.sizes[color as usize] += 1;
            self.active[idx / 64] |= 1 << (idx % 64);
            self.masks[color as usize][idx / 64] |= 1 << (idx % 64);
        }
    }

    fn unset(&mut self, idx: usize) {
        let color = self.assign[idx];
        if color > 0 {
            self.sizes[color as usize] -= 1;
            self.active[idx / 64] &= !(1 << (idx % 64));
            self.masks[color as usize][idx / 64] &= !(1 << (idx % 64));
        }
        self.assign[idx] = 0;
    }

    fn creates_rainbow(&self, idx: usize) -> bool {
        let view = ColorView { active: &self.active, color_of: &self.assign, color_masks: &self.masks };
        self.shapes
            .iter()
            .filter(|s| s.size() <= self.used as usize)
            .any(|s| s.rainbow_search(self.rel, self.mode, &view, Some(idx), false).is_some())
    }

    /// Rejects prefixes that some automorphism maps to a smaller prefix
    /// after renaming colors by first use.
    fn canonical(&self, t: usize) -> bool {
        let prefix = &self.assign[..t];
        let mut image = vec![0u16; t];
        let mut rename = vec![0u16; self.l as usize + 1];
        for perm in &self.stabilizers[t] {
            for (s, &c) in prefix.iter().enumerate() {
                image[perm[s] as usize] = c;
            }
            rename.fill(0);
            let mut next = 0u16;
            for (&mine, &theirs) in prefix.iter().zip(&image) {
                let theirs = if theirs == 0 {
                    0
                } else {
                    if rename[theirs as usize] == 0 {
                        next += 1;
                        rename[theirs as usize] = next;
                    }
                    rename[theirs as usize]
                };
                if theirs != mine {
                    if theirs < mine {
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }

    fn run(&mut self, idx: usize) -> Outcome {
        if idx == self.len() {
            return Outcome::Found(self.assign.clone());
        }
        let remaining = (self.len() - idx) as u64;
        if self.deficit() > remaining {
            return Outcome::Refuted;
        }
        let first = if self.total { 1 } else { 0 };
        let last = (self.used + 1).min(self.l);
        for color in first..=last {
            if self.nodes >= self.budget {
                return Outcome::OutOfBudget;
            }
            self.nodes += 1;
            let prev_used = self.used;
            self.set(idx, color);
            self.used = self.used.max(color);
            let ok = self.deficit() < remaining
                && (color == 0 || !self.creates_rainbow(idx))
                && self.canonical(idx + 1);
            if ok {
                match self.run(idx + 1) {
                    Outcome::Refuted => {}
                    other => {
                        self.unset(idx);
                        self.used = prev_used;
                        return other;
                    }
                }
            }
            self.unset(idx);
            self.used = prev_used;
        }
        Outcome::Refuted
    }
}

fn stabilizers(n: u32, enabled: bool) -> Vec<Vec<Vec<u64>>> {
    let len = 1usize << n;
    let mut out = vec![Vec::new(); len + 1];
    if !enabled || n > SYMMETRY_CAP {
        return out;
    }
    let tables: Vec<Vec<u64>> = permutations(n as usize)
        .into_iter()
        .skip(1)
        .map(|perm| (0..len as u64).map(|s| SubsetId(s).permute(&perm).0).collect())
        .collect();
    for (t, slot) in out.iter_mut().enumerate() {
        *slot = tables.iter().filter(|tab| tab[..t].iter().all(|&img| (img as usize) < t)).cloned().collect();
    }
    out
}

/// `l` blocks of `floor(2^n/l)` consecutive sets; the final sets go to the
/// last class when `total`.
fn block_coloring(n: u32, l: u16, total: bool) -> Result<Coloring> {
    let len = 1u64 << n;
    let q = len / u64::from(l);
    Coloring::from_fn(n, l, |s| match s.0 / q.max(1) {
        b if q > 0 && b < u64::from(l) => b as u16 + 1,
        _ if total => l,
        _ => 0,
    })
}

/// Maximum `m` such that some valid `l`-coloring (total or partial) has all
/// classes of size at least `m`.
pub fn solve_min_class(
    n: u32,
    l: u64,
    forbidden: &PosetFamily,
    kind: ColoringKind,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let ground = GroundSet::enumerable(n)?;
    if l == 0 {
        return Err(Error::OutOfRange(String::from("need at least one color")));
    }
    let colors = u16::try_from(l).map_err(|_| Error::OutOfRange(format!("{l} colors")))?;
    let total = kind == ColoringKind::Total;
    let cap = ground.lattice_size() / l;
    let warnings = family_warnings(forbidden, colors);
    if forbidden.members().iter().all(|p| p.size() > l as usize) {
        let witness = block_coloring(n, colors, total)?;
        return Ok(SolveResult { value: cap, witness, status: SolveStatus::Optimal, nodes_explored: 0, warnings });
    }
    let rel = Relations::lattice(n);
    let shapes: Vec<Shape> = forbidden.members().iter().filter(|p| p.size() <= l as usize).map(Shape::new).collect();
    let stab = stabilizers(n, opts.symmetry);
    let words = rel.words();
    let mut nodes = 0u64;
    let feasible = |target: u64, nodes: &mut u64| {
        let mut s = Search {
            n,
            l: colors,
            total,
            target,
            mode: forbidden.mode(),
            rel: &rel,
            shapes: &shapes,
            stabilizers: &stab,
            assign: vec![0; 1 << n],
            sizes: vec![0; colors as usize + 1],
            active: vec![0; words],
            masks: vec![vec![0; words]; colors as usize + 1],
            used: 0,
            nodes: 0,
            budget: opts.budget.saturating_sub(*nodes),
        };
        let out = s.run(0);
        *nodes += s.nodes;
        out
    };

    // known feasible value and its witness
    let mut best: Option<(u64, Vec<u16>)> = opts.seed_witness.as_ref().and_then(|c| {
        let fits = c.n() == n && c.num_colors() == colors && (!total || c.is_total());
        (fits && validate(c, forbidden).is_ok()).then(|| (c.stats().min_size, c.assignment().to_vec()))
    });
    let mut searched_best = false;
    let mut lo = best.as_ref().map(|b| b.0);
    let mut hi = cap;
    let mut status = SolveStatus::Optimal;
    loop {
        let from = lo.map_or(0, |v| v + 1);
        if from > hi {
            break;
        }
        let mid = match lo {
            Some(v) => v + (hi - v).div_ceil(2),
            None => hi / 2,
        };
        match feasible(mid, &mut nodes) {
            Outcome::Found(a) => {
                lo = Some(mid);
                best = Some((mid, a));
                searched_best = true;
            }
            Outcome::Refuted if mid == 0 => return Err(Error::Infeasible),
            Outcome::Refuted => hi = mid - 1,
            Outcome::OutOfBudget => {
                status = SolveStatus::LowerBoundOnly;
                break;
            }
        }
    }
    let Some((value, mut assign)) = best else {
        return Err(if status == SolveStatus::LowerBoundOnly {
            Error::BudgetExhausted { nodes: opts.budget }
        } else {
            Error::Infeasible
        });
    };
    if !searched_best && status == SolveStatus::Optimal {
        // replace the seed by the first witness in search order
        if let Outcome::Found(a) = feasible(value, &mut nodes) {
            assign = a;
        }
    }
    let witness = Coloring::from_assignment(n, colors, assign)?;
    assert!(
        validate(&witness, forbidden).is_ok() && witness.stats().min_size >= value,
        "solver witness failed verification"
    );
    Ok(SolveResult { value, witness, status, nodes_explored: nodes, warnings })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// `∅ = C_0 ⊊ C_1 ⊊ .. ⊊ C_t = [n]`
    pub chain: Vec<SubsetId>,
    /// `T_i` per family, holding interval indices `h` in `1..=t`
    pub parts: Vec<Vec<usize>>,
}

impl ChainDecomposition {
    /// Checks that each family sits in the chain plus its own intervals and
    /// that the parts partition `1..=t`.
    pub fn covers(&self, families: &[Vec<SubsetId>]) -> bool {
        let t = self.chain.len() - 1;
        let mut seen = vec![false; t + 1];
        for part in &self.parts {
            for &h in part {
                if h == 0 || h > t || seen[h] {
                    return false;
                }
                seen[h] = true;
            }
        }
        if !seen[1..].iter().all(|&s| s) || self.parts.len() != families.len() {
            return false;
        }
        families.iter().zip(&self.parts).all(|(fam, part)| {
            fam.iter().all(|&f| {
                self.chain.contains(&f)
                    || part.iter().any(|&h| self.chain[h - 1].is_proper_subset_of(f) && f.is_proper_subset_of(self.chain[h]))
            })
        })
    }
}

/// Calls `visit` with the block index of each element for every ordered
/// partition of `[n]` into `t` nonempty blocks, in lexicographic order of
/// the block vector. Stops when `visit` returns true.
fn ordered_partitions(n: usize, t: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(blocks: &mut Vec<usize>, n: usize, t: usize, counts: &mut [usize], visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let placed = blocks.len();
        let empty = counts.iter().filter(|&&c| c == 0).count();
        if empty > n - placed {
            return false;
        }
        if placed == n {
            return visit(blocks);
        }
        for b in 0..t {
            blocks.push(b);
            counts[b] += 1;
            let stop = rec(blocks, n, t, counts, visit);
            counts[b] -= 1;
            blocks.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(&mut Vec::with_capacity(n), n, t, &mut vec![0; t], visit)
}

/// Number of ordered set partitions of `[n]` (Fubini numbers).
pub fn ordered_partition_count(n: usize) -> u64 {
    (1..=n.max(1))
        .map(|t| {
            let mut count = 0u64;
            ordered_partitions(n, t, &mut |_| {
                count += 1;
                false
            });
            count
        })
        .sum()
}

pub const DECOMPOSE_CAP: u32 = 8;

/// Finds a chain `∅ ⊊ .. ⊊ [n]` and disjoint index sets `T_i` with every
/// family inside the chain plus the open intervals indexed by its `T_i`.
/// Chains are tried coarsest first.
pub fn az_decompose(ground: GroundSet, families: &[Vec<SubsetId>]) -> Result<Option<ChainDecomposition>> {
    let n = ground.n();
    if n > DECOMPOSE_CAP {
        return Err(Error::AboveEnumerationCap { n, cap: DECOMPOSE_CAP });
    }
    if families.is_empty() {
        return Err(Error::Precondition(String::from("need at least one family")));
    }
    for fam in families {
        for &f in fam {
            ground.check(f)?;
        }
    }
    for i in 0..families.len() {
        for j in i + 1..families.len() {
            for &a in &families[i] {
                if let Some(&b) = families[j].iter().find(|&&b| !comparable(a, b)) {
                    return Err(Error::NotCrossComparable { i: i + 1, j: j + 1, a, b });
                }
            }
        }
    }
    let m = families.len();
    let mut found = None;
    for t in 1..=n as usize {
        let stop = ordered_partitions(n as usize, t, &mut |blocks| {
            let mut chain = vec![0u64; t + 1];
            for h in 1..=t {
                chain[h] = chain[h - 1];
                for (x, &b) in blocks.iter().enumerate() {
                    if b == h - 1 {
                        chain[h] |= 1 << x;
                    }
                }
            }
            let mut owner = vec![usize::MAX; t + 1];
            for (i, fam) in families.iter().enumerate() {
                for &f in fam {
                    if chain.contains(&f.0) {
                        continue;
                    }
                    let Some(h) = (1..=t).find(|&h| chain[h - 1] & !f.0 == 0 && f.0 & !chain[h] == 0) else {
                        return false;
                    };
                    if owner[h] != usize::MAX && owner[h] != i {
                        return false;
                    }
                    owner[h] = i;
                }
            }
            let mut parts = vec![Vec::new(); m];
            for h in 1..=t {
                let i = if owner[h] == usize::MAX { m - 1 } else { owner[h] };
                parts[i].push(h);
            }
            found = Some(ChainDecomposition { chain: chain.into_iter().map(SubsetId).collect(), parts });
            true
        });
        if stop {
            break;
        }
    }
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossSperner {
    pub is_cross_sperner: bool,
    pub product: u128,
    /// `|F_1||F_2| <= 2^(2n-4)`
    pub bound_ok: bool,
}

pub fn cross_sperner_check(ground: GroundSet, f1: &[SubsetId], f2: &[SubsetId]) -> CrossSperner {
    let dedup = |f: &[SubsetId]| {
        let mut v = f.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len() as u128
    };
    let is_cross_sperner = f1.iter().all(|&a| f2.iter().all(|&b| !comparable(a, b)));
    let product = dedup(f1) * dedup(f2);
    let bound_ok = 16 * product <= 1u128 << (2 * ground.n());
    CrossSperner { is_cross_sperner, product, bound_ok }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSequence {
    /// tuple `j` holds `F^j_1, .., F^j_k` with `F^j_i` of color `i`
    pub tuples: Vec<Vec<SubsetId>>,
    /// sets consumed per coordinate, in extraction order
    pub used_per_coordinate: Vec<Vec<SubsetId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyReport {
    pub tuples: TupleSequence,
    pub leftover_clean: bool,
    pub cover_ok: bool,
}

/// Lexicographically least pairwise incomparable tuple with coordinate `i`
/// drawn from `pools[i]`.
fn least_antichain_tuple(pools: &[Vec<SubsetId>]) -> Option<Vec<SubsetId>> {
    fn rec(pools: &[Vec<SubsetId>], acc: &mut Vec<SubsetId>) -> bool {
        let Some(pool) = pools.get(acc.len()) else { return true };
        for &s in pool {
            if acc.iter().all(|&a| !comparable(a, s)) {
                acc.push(s);
                if rec(pools, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::with_capacity(pools.len());
    rec(pools, &mut acc).then_some(acc)
}

/// Greedily extracts rainbow `A_k` tuples from classes `1..=k`, never
/// reusing a set within a coordinate, then checks that class `k+1` lies in
/// the union of the comparability cones of every tuple.
pub fn greedy_tuples_and_cover(c: &Coloring, k: usize) -> Result<GreedyReport> {
    if k == 0 {
        return Err(Error::Precondition(String::from("k must be positive")));
    }
    if (c.num_colors() as usize) < k + 1 {
        return Err(Error::Precondition(format!("coloring has {} colors, need {}", c.num_colors(), k + 1)));
    }
    let bigger = PosetFamily::single(Poset::antichain(k + 1), &format!("A{}", k + 1), Mode::Induced);
    if let Some(w) = validate(c, &bigger).witness {
        return Err(Error::Precondition(format!("coloring contains a rainbow A{} at {:?}", k + 1, w.sets)));
    }
    let mut pools: Vec<Vec<SubsetId>> = (1..=k as u16).map(|i| c.class(i)).collect();
    let mut used = vec![Vec::new(); k];
    let mut tuples = Vec::new();
    while let Some(t) = least_antichain_tuple(&pools) {
        for (i, &s) in t.iter().enumerate() {
            pools[i].retain(|&x| x != s);
            used[i].push(s);
        }
        tuples.push(t);
    }
    let leftover = Coloring::from_fn(c.n(), k as u16, |s| {
        (0..k).find(|&i| pools[i].binary_search(&s).is_ok()).map_or(0, |i| i as u16 + 1)
    })?;
    let smaller = PosetFamily::single(Poset::antichain(k), &format!("A{k}"), Mode::Induced);
    let leftover_clean = validate(&leftover, &smaller).is_ok();
    let top = c.class(k as u16 + 1);
    let cover_ok = tuples.iter().all(|t| top.iter().all(|&s| t.iter().any(|&f| comparable(f, s))));
    Ok(GreedyReport { tuples: TupleSequence { tuples, used_per_coordinate: used }, leftover_clean, cover_ok })
}
