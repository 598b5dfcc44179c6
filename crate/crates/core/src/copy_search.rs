//! Backtracking search for copies of a poset inside an indexed set family.
//!
//! Members are indexed in increasing `SubsetId` order, so index order and
//! integer order agree. For each member the strict-subset, strict-superset
//! and incomparable members are kept as bit rows; candidate sets for a
//! poset element are the AND of the rows of the members already placed.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{clear_below, is_empty, next_set, test_bit, words_for};
use crate::lattice::SubsetId;
use crate::poset::{Mode, Poset};

/// Above this many members rows are computed on demand instead of stored.
const PRECOMPUTE_LIMIT: usize = 4096;
const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rel {
    /// members that are proper subsets of the reference member
    Below,
    /// members that are proper supersets of the reference member
    Above,
    Incomparable,
}

impl Rel {
    fn holds(self, reference: SubsetId, other: SubsetId) -> bool {
        match self {
            Rel::Below => other.is_proper_subset_of(reference),
            Rel::Above => reference.is_proper_subset_of(other),
            Rel::Incomparable => !other.is_subset_of(reference) && !reference.is_subset_of(other),
        }
    }

    fn slot(self) -> usize {
        match self {
            Rel::Below => 0,
            Rel::Above => 1,
            Rel::Incomparable => 2,
        }
    }
}

pub(crate) struct Relations {
    members: Vec<SubsetId>,
    words: usize,
    rows: Option<Vec<u64>>,
}

impl Relations {
    /// `members` must be sorted and free of duplicates.
    pub(crate) fn new(members: Vec<SubsetId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let words = words_for(members.len());
        let mut rel = Relations { members, words, rows: None };
        if rel.members.len() <= PRECOMPUTE_LIMIT {
            let len = rel.members.len();
            let mut rows = vec![0u64; 3 * len * words];
            for i in 0..len {
                for r in [Rel::Below, Rel::Above, Rel::Incomparable] {
                    let base = (3 * i + r.slot()) * words;
                    rel.fill_row(i, r, &mut rows[base..base + words]);
                }
            }
            rel.rows = Some(rows);
        }
        rel
    }

    /// The full lattice `B_n` with member index equal to the subset bits.
    pub(crate) fn lattice(n: u32) -> Self {
        Relations::new((0..1u64 << n).map(SubsetId).collect())
    }

    fn fill_row(&self, i: usize, r: Rel, out: &mut [u64]) {
        out.fill(0);
        let reference = self.members[i];
        for (j, &m) in self.members.iter().enumerate() {
            if r.holds(reference, m) {
                out[j / 64] |= 1 << (j % 64);
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.members.len()
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn member(&self, i: usize) -> SubsetId {
        self.members[i]
    }

    pub(crate) fn index_of(&self, s: SubsetId) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    pub(crate) fn all_mask(&self) -> Vec<u64> {
        let mut m = vec![!0u64; self.words];
        let len = self.members.len();
        if !len.is_multiple_of(64) {
            m[self.words - 1] = (1u64 << (len % 64)) - 1;
        }
        m
    }

    pub(crate) fn and_row(&self, i: usize, r: Rel, out: &mut [u64]) {
        match &self.rows {
            Some(rows) => {
                let base = (3 * i + r.slot()) * self.words;
                for (o, w) in out.iter_mut().zip(&rows[base..base + self.words]) {
                    *o &= *w;
                }
            }
            None => {
                let reference = self.members[i];
                for (wi, o) in out.iter_mut().enumerate() {
                    let mut bits = *o;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        if !r.holds(reference, self.members[wi * 64 + b]) {
                            *o &= !(1u64 << b);
                        }
                        bits &= bits - 1;
                    }
                }
            }
        }
    }
}

/// Colors of the members as seen by the rainbow search.
pub(crate) struct ColorView<'a> {
    /// colored members
    pub active: &'a [u64],
    /// color per member index, 0 = uncolored
    pub color_of: &'a [u16],
    /// per color (index 0 unused), the members carrying it
    pub color_masks: &'a [Vec<u64>],
}

/// Poset data laid out for the search.
pub(crate) struct Shape {
    size: usize,
    up: Vec<u64>,
    down: Vec<u64>,
    /// twins (same up- and down-set) with a smaller index
    twin_lower: Vec<u64>,
}

impl Shape {
    pub(crate) fn new(p: &Poset) -> Self {
        let size = p.size();
        let up: Vec<u64> = (0..size).map(|i| p.up_mask(i)).collect();
        let down: Vec<u64> = (0..size).map(|i| p.down_mask(i)).collect();
        let twin_lower = (0..size)
            .map(|e| (0..e).filter(|&f| up[f] == up[e] && down[f] == down[e]).fold(0u64, |m, f| m | 1 << f))
            .collect();
        Shape { size, up, down, twin_lower }
    }

    pub(crate) fn size(&self) -> usize {
        self.size
    }

    /// Relation the member of `e` must have relative to the member of `u`.
    fn rel(&self, e: usize, u: usize, mode: Mode) -> Option<Rel> {
        if self.up[e] >> u & 1 == 1 {
            Some(Rel::Below)
        } else if self.down[e] >> u & 1 == 1 {
            Some(Rel::Above)
        } else if mode == Mode::Induced {
            Some(Rel::Incomparable)
        } else {
            None
        }
    }

    /// Search placing elements by decreasing comparability degree; returns
    /// member indices per element.
    pub(crate) fn degree_ordered_search(&self, rel: &Relations, mode: Mode, active: &[u64]) -> Option<Vec<usize>> {
        let p = self.size;
        if p == 0 {
            return Some(Vec::new());
        }
        let degree = |i: usize| (self.up[i] | self.down[i]).count_ones();
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| degree(b).cmp(&degree(a)).then(a.cmp(&b)));
        // previous twin in placement order
        let prev_twin: Vec<usize> = order
            .iter()
            .enumerate()
            .map(|(t, &e)| {
                order[..t]
                    .iter()
                    .rev()
                    .copied()
                    .find(|&f| self.twin_lower[e] >> f & 1 == 1)
                    .unwrap_or(NONE)
            })
            .collect();
        let words = rel.words();
        let mut st = OrderedState {
            shape: self,
            rel,
            mode,
            active,
            order: &order,
            prev_twin: &prev_twin,
            assign: vec![NONE; p],
            taken: vec![0u64; words],
            scratch: vec![0u64; p * words],
        };
        if st.run(0) {
            Some(st.assign)
        } else {
            None
        }
    }

    /// Looks for a rainbow copy (pairwise distinct colors, all colored).
    /// With `least`, returns the copy whose sorted member tuple is
    /// lexicographically least; otherwise any copy. With `required`, only
    /// copies through that member are considered.
    pub(crate) fn rainbow_search(
        &self,
        rel: &Relations,
        mode: Mode,
        view: &ColorView<'_>,
        required: Option<usize>,
        least: bool,
    ) -> Option<Vec<usize>> {
        let p = self.size;
        if p == 0 {
            return Some(Vec::new());
        }
        let words = rel.words();
        let mut st = AscendingState {
            shape: self,
            rel,
            mode,
            view,
            assign: vec![NONE; p],
            assigned: 0,
            used_colors: Vec::with_capacity(p),
            scratch: vec![0u64; (p + 1) * (p + 1) * words],
        };
        let complete = |st: &mut AscendingState<'_, '_>, depth: usize| {
            if least {
                st.run_least(depth, 0)
            } else {
                st.run(depth, 0).then(|| st.assign.clone())
            }
        };
        let Some(r) = required else {
            return complete(&mut st, 0);
        };
        if !test_bit(view.active, r) {
            return None;
        }
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for e in (0..p).filter(|&e| self.twin_lower[e] == 0) {
            st.assign.fill(NONE);
            st.used_colors.clear();
            st.push(e, r);
            if let Some(found) = complete(&mut st, 1) {
                if !least {
                    best = Some((Vec::new(), found));
                    break;
                }
                let key = sorted_key(&found);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, found));
                }
            }
            st.assigned = 0;
        }
        best.map(|(_, mut emb)| {
            // twins are interchangeable; order their sets by index
            for _ in 0..p {
                for f in 0..p {
                    for e in (0..f).filter(|&e| self.twin_lower[f] >> e & 1 == 1) {
                        if emb[e] > emb[f] {
                            emb.swap(e, f);
                        }
                    }
                }
            }
            emb
        })
    }
}

struct OrderedState<'a> {
    shape: &'a Shape,
    rel: &'a Relations,
    mode: Mode,
    active: &'a [u64],
    order: &'a [usize],
    prev_twin: &'a [usize],
    assign: Vec<usize>,
    taken: Vec<u64>,
    scratch: Vec<u64>,
}

impl OrderedState<'_> {
    fn run(&mut self, t: usize) -> bool {
        if t == self.order.len() {
            return true;
        }
        let words = self.rel.words();
        let e = self.order[t];
        let range = t * words..(t + 1) * words;
        {
            let cand = &mut self.scratch[range.clone()];
            for (w, (&a, &tk)) in cand.iter_mut().zip(self.active.iter().zip(&self.taken)) {
                *w = a & !tk;
            }
            for &u in &self.order[..t] {
                if let Some(r) = self.shape.rel(e, u, self.mode) {
                    self.rel.and_row(self.assign[u], r, cand);
                }
            }
            let f = self.prev_twin[t];
            if f != NONE {
                clear_below(cand, self.assign[f] + 1);
            }
        }
        let mut from = 0;
        while let Some(idx) = next_set(&self.scratch[range.clone()], from) {
            from = idx + 1;
            self.assign[e] = idx;
            self.taken[idx / 64] |= 1 << (idx % 64);
            if self.run(t + 1) {
                return true;
            }
            self.taken[idx / 64] &= !(1 << (idx % 64));
            self.assign[e] = NONE;
        }
        false
    }
}

struct AscendingState<'a, 'v> {
    shape: &'a Shape,
    rel: &'a Relations,
    mode: Mode,
    view: &'a ColorView<'v>,
    assign: Vec<usize>,
    assigned: u64,
    used_colors: Vec<u16>,
    scratch: Vec<u64>,
}

impl AscendingState<'_, '_> {
    fn slot(&self, depth: usize, e: usize) -> core::ops::Range<usize> {
        let words = self.rel.words();
        let base = (depth * (self.shape.size + 1) + e) * words;
        base..base + words
    }

    /// Fills the candidate rows for `depth`; false if some unassigned
    /// element has none left.
    fn candidates(&mut self, depth: usize, min_next: usize) -> bool {
        let p = self.shape.size;
        let union = self.slot(depth, p);
        self.scratch[union.clone()].fill(0);
        for e in 0..p {
            if self.assigned >> e & 1 == 1 {
                continue;
            }
            let range = self.slot(depth, e);
            let mut cand = core::mem::take(&mut self.scratch);
            {
                let c = &mut cand[range.clone()];
                c.copy_from_slice(self.view.active);
                for &color in &self.used_colors {
                    for (w, m) in c.iter_mut().zip(&self.view.color_masks[color as usize]) {
                        *w &= !m;
                    }
                }
                for u in 0..p {
                    if self.assigned >> u & 1 == 1 {
                        if let Some(r) = self.shape.rel(e, u, self.mode) {
                            self.rel.and_row(self.assign[u], r, c);
                        }
                    }
                }
                clear_below(c, min_next);
            }
            let empty = is_empty(&cand[range.clone()]);
            if !empty && self.shape.twin_lower[e] & !self.assigned == 0 {
                let (lo, hi) = cand.split_at_mut(union.start);
                for (u, c) in hi[..union.len()].iter_mut().zip(&lo[range]) {
                    *u |= *c;
                }
            }
            self.scratch = cand;
            if empty {
                return false;
            }
        }
        true
    }

    /// Elements that may take member `idx` at `depth`.
    fn takers(&self, depth: usize, idx: usize) -> u64 {
        (0..self.shape.size)
            .filter(|&e| self.assigned >> e & 1 == 0 && self.shape.twin_lower[e] & !self.assigned == 0)
            .filter(|&e| test_bit(&self.scratch[self.slot(depth, e)], idx))
            .fold(0, |m, e| m | 1 << e)
    }

    fn push(&mut self, e: usize, idx: usize) {
        self.assign[e] = idx;
        self.assigned |= 1 << e;
        self.used_colors.push(self.view.color_of[idx]);
    }

    fn pop(&mut self, e: usize) {
        self.used_colors.pop();
        self.assigned &= !(1 << e);
        self.assign[e] = NONE;
    }

    /// Any completion, members placed in increasing index order.
    fn run(&mut self, depth: usize, min_next: usize) -> bool {
        if self.assigned.count_ones() as usize == self.shape.size {
            return true;
        }
        if !self.candidates(depth, min_next) {
            return false;
        }
        let union = self.slot(depth, self.shape.size);
        let mut from = 0;
        while let Some(idx) = next_set(&self.scratch[union.clone()], from) {
            from = idx + 1;
            let mut takers = self.takers(depth, idx);
            while takers != 0 {
                let e = takers.trailing_zeros() as usize;
                takers &= takers - 1;
                self.push(e, idx);
                if self.run(depth + 1, idx + 1) {
                    return true;
                }
                self.pop(e);
            }
        }
        false
    }

    /// The completion whose member indices, sorted, are least. Every
    /// element that can take the smallest feasible index is tried, since
    /// each leads to different completions.
    fn run_least(&mut self, depth: usize, min_next: usize) -> Option<Vec<usize>> {
        if self.assigned.count_ones() as usize == self.shape.size {
            return Some(self.assign.clone());
        }
        if !self.candidates(depth, min_next) {
            return None;
        }
        let union = self.slot(depth, self.shape.size);
        let mut from = 0;
        while let Some(idx) = next_set(&self.scratch[union.clone()], from) {
            from = idx + 1;
            let mut takers = self.takers(depth, idx);
            let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
            while takers != 0 {
                let e = takers.trailing_zeros() as usize;
                takers &= takers - 1;
                self.push(e, idx);
                if let Some(found) = self.run_least(depth + 1, idx + 1) {
                    let key = sorted_key(&found);
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((key, found));
                    }
                }
                self.pop(e);
            }
            if let Some((_, found)) = best {
                return Some(found);
            }
        }
        None
    }
}

fn sorted_key(assign: &[usize]) -> Vec<usize> {
    let mut key = assign.to_vec();
    key.sort_unstable();
    key
}
