//! Partial and total colorings of `B_n`, class statistics and rainbow-copy
//! validation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::copy_search::{ColorView, Relations, Shape};
use crate::error::{Error, Result};
use crate::lattice::{GroundSet, SubsetId};
use crate::poset::PosetFamily;

/// A map from the `2^n` subsets to colors `1..=l`, with 0 meaning uncolored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: u32,
    colors: u16,
    assign: Vec<u16>,
}

impl Coloring {
    pub fn uncolored(n: u32, colors: u16) -> Result<Self> {
        GroundSet::enumerable(n)?;
        Ok(Coloring { n, colors, assign: vec![0; 1 << n] })
    }

    pub fn from_assignment(n: u32, colors: u16, assign: Vec<u16>) -> Result<Self> {
        GroundSet::enumerable(n)?;
        if assign.len() != 1 << n {
            return Err(Error::InvalidColoring(format!("expected {} entries, got {}", 1u64 << n, assign.len())));
        }
        if let Some(bad) = assign.iter().find(|&&c| c > colors) {
            return Err(Error::InvalidColoring(format!("color {bad} exceeds l = {colors}")));
        }
        Ok(Coloring { n, colors, assign })
    }

    pub fn from_fn(n: u32, colors: u16, mut f: impl FnMut(SubsetId) -> u16) -> Result<Self> {
        GroundSet::enumerable(n)?;
        let assign = (0..1u64 << n).map(|s| f(SubsetId(s))).collect();
        Coloring::from_assignment(n, colors, assign)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.n).expect("validated at construction")
    }

    /// `l`, the number of available colors.
    pub fn num_colors(&self) -> u16 {
        self.colors
    }

    pub fn get(&self, s: SubsetId) -> u16 {
        self.assign[s.0 as usize]
    }

    pub fn set(&mut self, s: SubsetId, color: u16) -> Result<()> {
        self.ground().check(s)?;
        if color > self.colors {
            return Err(Error::InvalidColoring(format!("color {color} exceeds l = {}", self.colors)));
        }
        self.assign[s.0 as usize] = color;
        Ok(())
    }

    pub fn assignment(&self) -> &[u16] {
        &self.assign
    }

    pub fn is_total(&self) -> bool {
        self.assign.iter().all(|&c| c != 0)
    }

    /// Members of color class `color`, ascending.
    pub fn class(&self, color: u16) -> Vec<SubsetId> {
        self.assign
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == color)
            .map(|(s, _)| SubsetId(s as u64))
            .collect()
    }

    pub fn colored_sets(&self) -> Vec<SubsetId> {
        self.assign
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(s, _)| SubsetId(s as u64))
            .collect()
    }

    /// Applies `perm` to the color labels; `perm[c - 1]` is the new label
    /// of color `c`.
    pub fn relabel(&self, perm: &[u16]) -> Result<Coloring> {
        if perm.len() != self.colors as usize {
            return Err(Error::InvalidColoring("relabeling must list every color".into()));
        }
        let assign = self.assign.iter().map(|&c| if c == 0 { 0 } else { perm[c as usize - 1] }).collect();
        Coloring::from_assignment(self.n, self.colors, assign)
    }

    /// Copy with class `color` uncolored.
    pub fn without_class(&self, color: u16) -> Coloring {
        let assign = self.assign.iter().map(|&c| if c == color { 0 } else { c }).collect();
        Coloring { n: self.n, colors: self.colors, assign }
    }

    /// Image under the complement map `F -> [n] \ F`.
    pub fn complemented(&self) -> Coloring {
        let full = (1usize << self.n) - 1;
        let assign = (0..self.assign.len()).map(|s| self.assign[full & !s]).collect();
        Coloring { n: self.n, colors: self.colors, assign }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStats {
    /// size of class `c` at index `c - 1`
    pub sizes: Vec<u64>,
    pub uncolored: u64,
    pub min_size: u64,
}

pub fn class_stats(c: &Coloring) -> ClassStats {
    let mut sizes = vec![0u64; c.colors as usize];
    let mut uncolored = 0;
    for &a in &c.assign {
        if a == 0 {
            uncolored += 1;
        } else {
            sizes[a as usize - 1] += 1;
        }
    }
    let min_size = sizes.iter().copied().min().unwrap_or(0);
    ClassStats { sizes, uncolored, min_size }
}

impl Coloring {
    pub fn stats(&self) -> ClassStats {
        class_stats(self)
    }
}

/// A rainbow copy found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowWitness {
    /// index of the forbidden poset in its family
    pub member: usize,
    /// the copy's sets, ascending
    pub sets: Vec<SubsetId>,
    /// set assigned to each poset element
    pub embedding: Vec<SubsetId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// A forbidden poset with more elements than colors can never be rainbow.
    PosetLargerThanColors { member: usize, size: usize, colors: u16 },
    /// Weak copies of `A_2` are just pairs of distinct sets.
    DegenerateWeakAntichain,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub witness: Option<RainbowWitness>,
    pub warnings: Vec<Warning>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.witness.is_none()
    }
}

pub(crate) fn family_warnings(forbidden: &PosetFamily, colors: u16) -> Vec<Warning> {
    let mut w = Vec::new();
    for (member, p) in forbidden.members().iter().enumerate() {
        if p.size() > colors as usize {
            w.push(Warning::PosetLargerThanColors { member, size: p.size(), colors });
        }
    }
    if forbidden.has_degenerate_weak_antichain() {
        w.push(Warning::DegenerateWeakAntichain);
    }
    w
}

/// Colored sets with their per-color masks, indexed over the colored sets
/// only.
struct ColoredIndex {
    rel: Relations,
    active: Vec<u64>,
    color_of: Vec<u16>,
    masks: Vec<Vec<u64>>,
}

impl ColoredIndex {
    fn new(c: &Coloring) -> Self {
        let members = c.colored_sets();
        let color_of: Vec<u16> = members.iter().map(|&s| c.get(s)).collect();
        let rel = Relations::new(members);
        let mut masks = vec![BitSet::new(rel.len()); c.colors as usize + 1];
        for (i, &col) in color_of.iter().enumerate() {
            masks[col as usize].insert(i);
        }
        let masks = masks.into_iter().map(|b| b.words().to_vec()).collect();
        let active = rel.all_mask();
        ColoredIndex { rel, active, color_of, masks }
    }

    fn search(&self, forbidden: &PosetFamily, colors: u16, required: Option<usize>) -> Option<RainbowWitness> {
        let view = ColorView { active: &self.active, color_of: &self.color_of, color_masks: &self.masks };
        let mut best: Option<RainbowWitness> = None;
        for (member, p) in forbidden.members().iter().enumerate() {
            if p.size() > colors as usize || p.size() > self.rel.len() {
                continue;
            }
            let shape = Shape::new(p);
            if let Some(emb) = shape.rainbow_search(&self.rel, forbidden.mode(), &view, required, true) {
                let embedding: Vec<SubsetId> = emb.iter().map(|&i| self.rel.member(i)).collect();
                let mut sets = embedding.clone();
                sets.sort_unstable();
                if best.as_ref().is_none_or(|b| sets < b.sets) {
                    best = Some(RainbowWitness { member, sets, embedding });
                }
            }
        }
        best
    }
}

/// Looks for a rainbow copy of any member of `forbidden`; the reported
/// witness is the least by sorted set tuple.
pub fn validate(c: &Coloring, forbidden: &PosetFamily) -> Validation {
    let warnings = family_warnings(forbidden, c.colors);
    let index = ColoredIndex::new(c);
    Validation { witness: index.search(forbidden, c.colors, None), warnings }
}

/// [`validate`] restricted to copies through `just_colored`; agrees with
/// it whenever `c` was valid before `just_colored` got its color.
pub fn validate_incremental(c: &Coloring, just_colored: SubsetId, forbidden: &PosetFamily) -> Validation {
    let warnings = family_warnings(forbidden, c.colors);
    let index = ColoredIndex::new(c);
    let witness = index
        .rel
        .index_of(just_colored)
        .and_then(|r| index.search(forbidden, c.colors, Some(r)));
    Validation { witness, warnings }
}
