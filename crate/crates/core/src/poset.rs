//! Finite posets, the builtin families, duality, components and copy
//! detection inside set families.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::copy_search::{Relations, Shape};
use crate::error::{Error, Result};
use crate::lattice::{permutations, SubsetId};

/// Posets are stored as 64-bit up-set masks, which caps their size.
pub const MAX_POSET_SIZE: usize = 64;
/// Largest size for which [`Poset::is_isomorphic`] tries all relabelings.
pub const ISOMORPHISM_CAP: usize = 8;

/// A strict partial order on `0..size`, kept transitively closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    /// `up[i]` has bit `j` set iff `i < j`.
    up: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("size", &self.size())
            .field("relations", &self.relations())
            .finish()
    }
}

impl Poset {
    /// Builds the transitive closure of `relations`, each pair `(i, j)`
    /// meaning `i < j`.
    pub fn from_relations(size: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if size > MAX_POSET_SIZE {
            return Err(Error::PosetTooLarge { size, max: MAX_POSET_SIZE });
        }
        let mut up = vec![0u64; size];
        for &(i, j) in relations {
            for index in [i, j] {
                if index >= size {
                    return Err(Error::ElementOutOfRange { index, size });
                }
            }
            up[i] |= 1 << j;
        }
        // Warshall
        for k in 0..size {
            for i in 0..size {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        if let Some(i) = (0..size).find(|&i| up[i] >> i & 1 == 1) {
            return Err(Error::CyclicRelation(i));
        }
        Ok(Poset { up })
    }

    /// `A_k`, `k` pairwise incomparable elements.
    pub fn antichain(k: usize) -> Self {
        Poset { up: vec![0; k] }
    }

    /// `P_k`, the chain `0 < 1 < .. < k-1`.
    pub fn chain(k: usize) -> Self {
        let rel: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Poset::from_relations(k, &rel).expect("chain is acyclic")
    }

    /// `∨_k`: element 0 below each of `1..=k`.
    pub fn vee(k: usize) -> Self {
        let rel: Vec<_> = (1..=k).map(|b| (0, b)).collect();
        Poset::from_relations(k + 1, &rel).expect("star is acyclic")
    }

    /// `∧_k`: element 0 above each of `1..=k`.
    pub fn wedge(k: usize) -> Self {
        let rel: Vec<_> = (1..=k).map(|b| (b, 0)).collect();
        Poset::from_relations(k + 1, &rel).expect("star is acyclic")
    }

    /// `D_2` on `a=0, b=1, c=2, d=3` with `a < b, c < d`.
    pub fn diamond() -> Self {
        Poset::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond is acyclic")
    }

    /// Disjoint union; elements of later parts are shifted past earlier ones.
    pub fn disjoint_sum(parts: &[Poset]) -> Result<Self> {
        let size: usize = parts.iter().map(Poset::size).sum();
        if size > MAX_POSET_SIZE {
            return Err(Error::PosetTooLarge { size, max: MAX_POSET_SIZE });
        }
        let mut up = Vec::with_capacity(size);
        let mut offset = 0;
        for p in parts {
            up.extend(p.up.iter().map(|&m| m << offset));
            offset += p.size();
        }
        Ok(Poset { up })
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    pub fn up_mask(&self, i: usize) -> u64 {
        self.up[i]
    }

    pub fn down_mask(&self, i: usize) -> u64 {
        (0..self.size()).filter(|&j| self.less(j, i)).fold(0, |m, j| m | 1 << j)
    }

    /// All pairs `(i, j)` with `i < j`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.less(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_antichain(&self) -> bool {
        self.up.iter().all(|&m| m == 0)
    }

    /// Comparability degree of element `i`.
    pub fn degree(&self, i: usize) -> u32 {
        (self.up[i] | self.down_mask(i)).count_ones()
    }

    /// The order-reversed poset.
    pub fn dual(&self) -> Poset {
        Poset { up: (0..self.size()).map(|i| self.down_mask(i)).collect() }
    }

    /// Comparability-connected classes, each sorted, ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let p = self.size();
        let mut label = vec![usize::MAX; p];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..p {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            label[start] = id;
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..p {
                    if label[y] == usize::MAX && self.comparable(x, y) {
                        label[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subposet induced on `elements`, relabeled `0..elements.len()` in order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let up = elements
            .iter()
            .map(|&i| {
                elements
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.less(i, j))
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        Poset { up }
    }

    /// Minimum relation list over all relabelings; equal for isomorphic
    /// posets. Limited to [`ISOMORPHISM_CAP`] elements.
    pub fn canonical_form(&self) -> Result<Vec<u64>> {
        let p = self.size();
        if p > ISOMORPHISM_CAP {
            return Err(Error::PosetTooLarge { size: p, max: ISOMORPHISM_CAP });
        }
        let mut best: Option<Vec<u64>> = None;
        for perm in permutations(p) {
            let mut img = vec![0u64; p];
            for i in 0..p {
                let mut m = 0u64;
                for j in 0..p {
                    if self.less(i, j) {
                        m |= 1 << perm[j];
                    }
                }
                img[perm[i] as usize] = m;
            }
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
        Ok(best.unwrap_or_default())
    }

    pub fn is_isomorphic(&self, other: &Poset) -> Result<bool> {
        if self.size() != other.size() || self.relations().len() != other.relations().len() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }
}

/// Parses a builtin name (`A<k>`, `P<k>`, `V<k>`, `W<k>`, `D2`) or a
/// `+`-separated disjoint sum of builtins.
pub fn build_poset(spec: &str) -> Result<Poset> {
    let bad = || Error::BadPosetSpec(spec.to_string());
    let parts: Vec<&str> = spec.split('+').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(bad());
    }
    let mut posets = Vec::with_capacity(parts.len());
    for part in parts {
        let mut chars = part.chars();
        let head = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let k: usize = chars.as_str().parse().map_err(|_| bad())?;
        let p = match head {
            'A' if k >= 1 => Poset::antichain(k),
            'P' if k >= 1 => Poset::chain(k),
            'V' if k >= 1 => Poset::vee(k),
            'W' if k >= 1 => Poset::wedge(k),
            'D' if k == 2 => Poset::diamond(),
            _ => return Err(bad()),
        };
        if p.size() > MAX_POSET_SIZE {
            return Err(Error::PosetTooLarge { size: p.size(), max: MAX_POSET_SIZE });
        }
        posets.push(p);
    }
    if posets.len() == 1 {
        Ok(posets.pop().unwrap())
    } else {
        Poset::disjoint_sum(&posets)
    }
}

/// How a poset must sit inside a set family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `p < q` iff the image of `p` is a proper subset of the image of `q`.
    #[default]
    Induced,
    /// `p < q` implies proper inclusion of the images.
    Weak,
}

impl core::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "induced" | "strong" => Ok(Mode::Induced),
            "weak" => Ok(Mode::Weak),
            other => Err(Error::OutOfRange(alloc::format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Induced => "induced",
            Mode::Weak => "weak",
        })
    }
}

/// A nonempty list of forbidden posets sharing one embedding mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetFamily {
    members: Vec<Poset>,
    labels: Vec<String>,
    mode: Mode,
}

impl PosetFamily {
    pub fn new(members: Vec<Poset>, mode: Mode) -> Result<Self> {
        let labels = members.iter().map(|p| alloc::format!("poset{}", p.size())).collect();
        PosetFamily::with_labels(members, labels, mode)
    }

    pub fn with_labels(members: Vec<Poset>, labels: Vec<String>, mode: Mode) -> Result<Self> {
        if members.is_empty() || members.iter().any(|p| p.size() == 0) {
            return Err(Error::BadPosetSpec("family must be nonempty with nonempty members".into()));
        }
        if labels.len() != members.len() {
            return Err(Error::BadPosetSpec("label count does not match member count".into()));
        }
        Ok(PosetFamily { members, labels, mode })
    }

    pub fn single(p: Poset, label: &str, mode: Mode) -> Self {
        PosetFamily { members: vec![p], labels: vec![label.to_string()], mode }
    }

    /// Comma-separated builtin specs, e.g. `"P3,V2,W2"`.
    pub fn parse(spec: &str, mode: Mode) -> Result<Self> {
        let mut members = Vec::new();
        let mut labels = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            members.push(build_poset(part)?);
            labels.push(part.to_string());
        }
        PosetFamily::with_labels(members, labels, mode)
    }

    pub fn members(&self) -> &[Poset] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn max_size(&self) -> usize {
        self.members.iter().map(Poset::size).max().unwrap_or(0)
    }

    /// Labels joined with commas, as accepted by [`PosetFamily::parse`].
    pub fn spec(&self) -> String {
        self.labels.join(",")
    }

    /// Weak copies of a two-element antichain are just pairs of distinct
    /// sets; such families are legal but say little.
    pub fn has_degenerate_weak_antichain(&self) -> bool {
        self.mode == Mode::Weak && self.members.iter().any(|p| p.size() == 2 && p.is_antichain())
    }

    /// True iff each member of `self` is isomorphic to some member of `other`
    /// and vice versa.
    pub fn same_members_as(&self, other: &PosetFamily) -> Result<bool> {
        let covers = |a: &PosetFamily, b: &PosetFamily| -> Result<bool> {
            for p in &a.members {
                let mut hit = false;
                for q in &b.members {
                    if p.is_isomorphic(q)? {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Ok(covers(self, other)? && covers(other, self)?)
    }
}

/// Finds a copy of `p` inside `family`; the returned vector maps each poset
/// element to its set. Elements are placed in order of decreasing
/// comparability degree.
pub fn find_copy(family: &[SubsetId], p: &Poset, mode: Mode) -> Option<Vec<SubsetId>> {
    let mut members = family.to_vec();
    members.sort_unstable();
    members.dedup();
    if p.size() > members.len() {
        return None;
    }
    let rel = Relations::new(members);
    let shape = Shape::new(p);
    let active = rel.all_mask();
    let emb = shape.degree_ordered_search(&rel, mode, &active)?;
    Some(emb.into_iter().map(|i| rel.member(i)).collect())
}

/// Checks that `embedding` witnesses a copy of `p` (per `mode`).
pub fn is_copy(embedding: &[SubsetId], p: &Poset, mode: Mode) -> bool {
    if embedding.len() != p.size() {
        return false;
    }
    for i in 0..p.size() {
        for j in 0..p.size() {
            if i == j {
                continue;
            }
            if embedding[i] == embedding[j] {
                return false;
            }
            let strict = embedding[i].is_proper_subset_of(embedding[j]);
            match mode {
                Mode::Induced if p.less(i, j) != strict => return false,
                Mode::Weak if p.less(i, j) && !strict => return false,
                _ => {}
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[u64]) -> Vec<SubsetId> {
        sets.iter().copied().map(SubsetId).collect()
    }

    fn is_closed_and_irreflexive(p: &Poset) -> bool {
        (0..p.size()).all(|i| !p.less(i, i))
            && (0..p.size()).all(|i| {
                (0..p.size()).all(|j| !p.less(i, j) || (0..p.size()).all(|k| !p.less(j, k) || p.less(i, k)))
            })
    }

    #[test]
    fn builtins() {
        let a3 = build_poset("A3").unwrap();
        assert_eq!(a3.size(), 3);
        assert!(a3.relations().is_empty());
        let d2 = build_poset("D2").unwrap();
        assert_eq!(d2.relations(), [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        let s = build_poset("V1+A2").unwrap();
        assert_eq!(s.size(), 4);
        assert_eq!(s.relations(), [(0, 1)]);
        assert_eq!(build_poset("P3").unwrap().relations(), [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(build_poset("w2").unwrap().relations(), [(1, 0), (2, 0)]);
    }

    #[test]
    fn bad_specs_are_rejected() {
        for bad in ["", "X3", "A", "A0", "D3", "P2+", "+A1", "A-1", "V2++A1"] {
            assert!(matches!(build_poset(bad), Err(Error::BadPosetSpec(_))), "{bad}");
        }
        assert!(matches!(Poset::from_relations(3, &[(0, 1), (1, 2), (2, 0)]), Err(Error::CyclicRelation(_))));
        assert!(matches!(Poset::from_relations(2, &[(0, 2)]), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn builtins_are_closed() {
        for spec in ["A1", "A4", "P1", "P5", "V1", "V3", "W3", "D2", "P2+A2", "V2+W1+P3"] {
            assert!(is_closed_and_irreflexive(&build_poset(spec).unwrap()), "{spec}");
        }
    }

    #[test]
    fn duality() {
        let v2 = build_poset("V2").unwrap();
        let w2 = build_poset("W2").unwrap();
        assert!(v2.dual().is_isomorphic(&w2).unwrap());
        assert!(!v2.is_isomorphic(&w2).unwrap());
        let a4 = build_poset("A4").unwrap();
        assert_eq!(a4.dual(), a4);
        let p3 = build_poset("P3").unwrap();
        assert!(p3.dual().is_isomorphic(&p3).unwrap());
        let d2 = build_poset("D2+V1").unwrap();
        assert_eq!(d2.dual().dual(), d2);
    }

    #[test]
    fn component_counts() {
        assert_eq!(build_poset("P3").unwrap().components().len(), 1);
        assert_eq!(build_poset("V1+A2").unwrap().components(), [vec![0, 1], vec![2], vec![3]]);
        assert_eq!(build_poset("A5").unwrap().components().len(), 5);
        assert!(build_poset("D2").unwrap().is_connected());
    }

    #[test]
    fn find_copy_examples() {
        let b2 = fam(&[0, 1, 2, 3]);
        let d2 = build_poset("D2").unwrap();
        let emb = find_copy(&b2, &d2, Mode::Induced).unwrap();
        assert!(is_copy(&emb, &d2, Mode::Induced));
        let chain = fam(&[0, 1, 3]);
        assert_eq!(find_copy(&chain, &build_poset("A2").unwrap(), Mode::Induced), None);
        assert_eq!(find_copy(&chain, &build_poset("V2").unwrap(), Mode::Induced), None);
        // a chain is a weak A2
        assert!(find_copy(&chain, &build_poset("A2").unwrap(), Mode::Weak).is_some());
        assert!(find_copy(&chain, &build_poset("P3").unwrap(), Mode::Induced).is_some());
    }

    #[test]
    fn weak_copy_needs_strict_inclusion_only_on_relations() {
        // {1} ⊂ {1,2} and {1} ⊂ {1,3}: a V2 both ways; P3 only weakly absent
        let f = fam(&[1, 3, 5]);
        assert!(find_copy(&f, &build_poset("V2").unwrap(), Mode::Induced).is_some());
        assert!(find_copy(&f, &build_poset("P3").unwrap(), Mode::Weak).is_none());
        assert!(find_copy(&f, &build_poset("V1+A1").unwrap(), Mode::Weak).is_some());
        assert!(find_copy(&f, &build_poset("V1+A1").unwrap(), Mode::Induced).is_none());
    }

    #[test]
    fn family_parsing() {
        let f = PosetFamily::parse("P3, V2 ,W2", Mode::Induced).unwrap();
        assert_eq!(f.members().len(), 3);
        assert_eq!(f.spec(), "P3,V2,W2");
        assert_eq!(f.max_size(), 3);
        assert!(PosetFamily::parse("P3,,V2", Mode::Induced).is_err());
        assert!(PosetFamily::parse("A2", Mode::Weak).unwrap().has_degenerate_weak_antichain());
        let g = PosetFamily::parse("W2,P3,V2", Mode::Induced).unwrap();
        assert!(f.same_members_as(&g).unwrap());
        assert!(!f.same_members_as(&PosetFamily::parse("P3,V2", Mode::Induced).unwrap()).unwrap());
    }
}
