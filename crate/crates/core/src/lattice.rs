//! Subsets of `[n]`, comparability, cones and intervals of `B_n`.
//!
//! A subset of `[n] = {1, .., n}` is stored as an integer whose binary digit
//! `i - 1` records whether element `i` is present. Comparability is then two
//! mask tests.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coloring::Coloring;
use crate::error::{Error, Result};

/// Largest `n` for which members of `B_n` may be enumerated.
pub const ENUMERATION_CAP: u32 = 20;
/// Largest `n` accepted by operations that only count.
pub const ANALYTIC_CAP: u32 = 63;
/// Largest `n` for which [`canonicalize`] minimizes over all of `S_n`.
pub const CANONICALIZE_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    /// Ground set usable for analytic (counting-only) operations.
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > ANALYTIC_CAP {
            return Err(Error::DimensionOutOfRange { n, cap: ANALYTIC_CAP });
        }
        Ok(GroundSet { n })
    }

    /// Ground set whose lattice may be enumerated.
    pub fn enumerable(n: u32) -> Result<Self> {
        let g = GroundSet::new(n)?;
        g.check_enumerable()?;
        Ok(g)
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// `2^n`, the number of members of `B_n`.
    pub fn lattice_size(self) -> u64 {
        1u64 << self.n
    }

    pub fn empty(self) -> SubsetId {
        SubsetId::EMPTY
    }

    pub fn full(self) -> SubsetId {
        SubsetId((1u64 << self.n) - 1)
    }

    pub fn contains(self, s: SubsetId) -> bool {
        s.0 >> self.n == 0
    }

    pub fn check(self, s: SubsetId) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange(s))
        }
    }

    pub fn check_enumerable(self) -> Result<()> {
        if self.n > ENUMERATION_CAP {
            return Err(Error::AboveEnumerationCap { n: self.n, cap: ENUMERATION_CAP });
        }
        Ok(())
    }

    pub fn complement(self, s: SubsetId) -> SubsetId {
        SubsetId(self.full().0 & !s.0)
    }

    /// All members of `B_n` in increasing integer order.
    pub fn subsets(self) -> Result<impl Iterator<Item = SubsetId>> {
        self.check_enumerable()?;
        Ok((0..self.lattice_size()).map(SubsetId))
    }
}

/// A subset of `[n]`, bit `i - 1` set iff element `i` is a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetId(pub u64);

impl SubsetId {
    pub const EMPTY: SubsetId = SubsetId(0);

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements(elements: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > 64 {
                return Err(Error::BadSubsetLiteral(alloc::format!("element {e}")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetId(bits))
    }

    /// Members in increasing order, 1-based.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (0..64u32).filter(move |i| bits >> i & 1 == 1).map(|i| i + 1)
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=64).contains(&element) && self.0 >> (element - 1) & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetId) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: SubsetId) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn union(self, other: SubsetId) -> SubsetId {
        SubsetId(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetId) -> SubsetId {
        SubsetId(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetId) -> SubsetId {
        SubsetId(self.0 & !other.0)
    }

    /// Image under a permutation of the coordinates; `perm[i]` is the
    /// 0-based image of 0-based coordinate `i`.
    pub fn permute(self, perm: &[u8]) -> SubsetId {
        let mut out = 0u64;
        for (i, &p) in perm.iter().enumerate() {
            if self.0 >> i & 1 == 1 {
                out |= 1 << p;
            }
        }
        SubsetId(out)
    }
}

impl fmt::Display for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Accepts either the integer encoding (`"5"`) or a brace literal (`"{1,3}"`).
impl FromStr for SubsetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let inner = inner.trim();
            if inner.is_empty() {
                return Ok(SubsetId::EMPTY);
            }
            let mut elements = Vec::new();
            for part in inner.split(',') {
                let e: u32 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadSubsetLiteral(t.to_string()))?;
                elements.push(e);
            }
            return SubsetId::from_elements(&elements).map_err(|_| Error::BadSubsetLiteral(t.to_string()));
        }
        t.parse::<u64>()
            .map(SubsetId)
            .map_err(|_| Error::BadSubsetLiteral(String::from(t)))
    }
}

/// `a ⊆ b` or `b ⊆ a`.
pub fn comparable(a: SubsetId, b: SubsetId) -> bool {
    a.is_subset_of(b) || b.is_subset_of(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    /// `D_F = [∅, F]`
    Down,
    /// `U_F = [F, [n]]`
    Up,
    /// `I_F = D_F ∪ U_F`
    Incident,
}

/// Members of the cone of `f`, in increasing order.
pub fn cone(ground: GroundSet, f: SubsetId, kind: ConeKind) -> Result<Vec<SubsetId>> {
    ground.check(f)?;
    ground.check_enumerable()?;
    let down = || submasks(f.0).map(SubsetId);
    let up = || submasks(ground.complement(f).0).map(move |s| SubsetId(s | f.0));
    let mut out: Vec<SubsetId> = match kind {
        ConeKind::Down => down().collect(),
        ConeKind::Up => up().collect(),
        ConeKind::Incident => down().chain(up().filter(|&s| s != f)).collect(),
    };
    out.sort_unstable();
    Ok(out)
}

/// `|cone(f, kind)|` without enumeration.
pub fn cone_size(ground: GroundSet, f: SubsetId, kind: ConeKind) -> Result<u64> {
    ground.check(f)?;
    let below = 1u64 << f.len();
    let above = 1u64 << (ground.n() - f.len());
    Ok(match kind {
        ConeKind::Down => below,
        ConeKind::Up => above,
        ConeKind::Incident => below + above - 1,
    })
}

/// All submasks of `mask`, ascending.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    core::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

/// An interval of `B_n` between `lo` and `hi`, each end open or closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: SubsetId,
    pub hi: SubsetId,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    /// `[lo, hi]`
    pub fn closed(lo: SubsetId, hi: SubsetId) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: false }
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: SubsetId, hi: SubsetId) -> Self {
        Interval { lo, hi, lo_open: true, hi_open: false }
    }

    /// `(lo, hi)`
    pub fn open(lo: SubsetId, hi: SubsetId) -> Self {
        Interval { lo, hi, lo_open: true, hi_open: true }
    }

    pub fn contains(&self, h: SubsetId) -> bool {
        self.lo.is_subset_of(h)
            && h.is_subset_of(self.hi)
            && !(self.lo_open && h == self.lo)
            && !(self.hi_open && h == self.hi)
    }

    pub fn size(&self) -> u64 {
        interval_size(self)
    }

    /// Members in increasing order.
    pub fn members(&self, ground: GroundSet) -> Result<Vec<SubsetId>> {
        ground.check_enumerable()?;
        if !self.lo.is_subset_of(self.hi) {
            return Ok(Vec::new());
        }
        let free = self.hi.difference(self.lo).0;
        let mut out: Vec<SubsetId> = submasks(free)
            .map(|s| SubsetId(s | self.lo.0))
            .filter(|&h| self.contains(h))
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// Number of members of `iv`, computed from `|hi \ lo|` alone.
pub fn interval_size(iv: &Interval) -> u64 {
    if !iv.lo.is_subset_of(iv.hi) {
        return 0;
    }
    let d = iv.hi.difference(iv.lo).len();
    let total: u64 = if d >= 64 { u64::MAX } else { 1u64 << d };
    let open = u64::from(iv.lo_open) + u64::from(iv.hi_open);
    total.saturating_sub(open)
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = alloc::vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Lexicographically least coloring in the orbit of `c` under coordinate
/// permutations of `[n]`.
pub fn canonicalize(c: &Coloring) -> Result<Coloring> {
    let n = c.n();
    if n > CANONICALIZE_CAP {
        return Err(Error::AboveEnumerationCap { n, cap: CANONICALIZE_CAP });
    }
    let src = c.assignment();
    let mut best: Vec<u16> = src.to_vec();
    let mut img = alloc::vec![0u16; src.len()];
    for perm in permutations(n as usize).iter().skip(1) {
        for (s, &color) in src.iter().enumerate() {
            img[SubsetId(s as u64).permute(perm).0 as usize] = color;
        }
        if img < best {
            best.copy_from_slice(&img);
        }
    }
    Coloring::from_assignment(n, c.num_colors(), best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[u32]) -> SubsetId {
        SubsetId::from_elements(e).unwrap()
    }

    #[test]
    fn comparable_examples() {
        assert!(comparable(SubsetId::EMPTY, s(&[1])));
        assert!(!comparable(s(&[1]), s(&[2])));
        assert!(comparable(s(&[1, 3]), s(&[1, 2, 3])));
    }

    #[test]
    fn comparable_is_reflexive_and_symmetric() {
        for a in 0..32u64 {
            assert!(comparable(SubsetId(a), SubsetId(a)));
            for b in 0..32u64 {
                assert_eq!(comparable(SubsetId(a), SubsetId(b)), comparable(SubsetId(b), SubsetId(a)));
            }
        }
    }

    #[test]
    fn cone_examples() {
        let g2 = GroundSet::new(2).unwrap();
        assert_eq!(cone(g2, s(&[1]), ConeKind::Incident).unwrap(), [SubsetId(0), s(&[1]), s(&[1, 2])]);
        for n in 1..=5 {
            let g = GroundSet::new(n).unwrap();
            assert_eq!(cone(g, SubsetId::EMPTY, ConeKind::Down).unwrap(), [SubsetId::EMPTY]);
        }
        let g3 = GroundSet::new(3).unwrap();
        assert_eq!(cone(g3, s(&[1]), ConeKind::Incident).unwrap().len(), 5);
    }

    #[test]
    fn cone_sizes_match_enumeration() {
        for n in 1..=10u32 {
            let g = GroundSet::new(n).unwrap();
            for f in g.subsets().unwrap() {
                let brute = g.subsets().unwrap().filter(|&h| comparable(f, h)).count() as u64;
                assert_eq!(brute, (1 << f.len()) + (1 << (n - f.len())) - 1);
                assert_eq!(cone(g, f, ConeKind::Incident).unwrap().len() as u64, brute);
                assert_eq!(cone_size(g, f, ConeKind::Incident).unwrap(), brute);
                assert_eq!(cone_size(g, f, ConeKind::Up).unwrap(), cone(g, f, ConeKind::Up).unwrap().len() as u64);
            }
        }
    }

    #[test]
    fn cone_above_cap_is_an_error() {
        let g = GroundSet::new(30).unwrap();
        assert!(matches!(cone(g, SubsetId(1), ConeKind::Up), Err(Error::AboveEnumerationCap { .. })));
        assert_eq!(cone_size(g, SubsetId(1), ConeKind::Up).unwrap(), 1 << 29);
    }

    #[test]
    fn interval_size_examples() {
        assert_eq!(interval_size(&Interval::open_closed(s(&[1]), s(&[1, 2, 3]))), 3);
        let g = GroundSet::new(5).unwrap();
        assert_eq!(interval_size(&Interval::closed(SubsetId::EMPTY, g.full())), 32);
        assert_eq!(interval_size(&Interval::open_closed(s(&[1, 2]), s(&[1, 3]))), 0);
        assert_eq!(interval_size(&Interval::closed(s(&[2]), s(&[2]))), 1);
        assert_eq!(interval_size(&Interval::open(s(&[2]), s(&[2]))), 0);
    }

    #[test]
    fn interval_size_matches_enumeration() {
        for n in 1..=6u32 {
            let g = GroundSet::new(n).unwrap();
            for lo in g.subsets().unwrap() {
                for hi in g.subsets().unwrap() {
                    for (lo_open, hi_open) in [(false, false), (true, false), (false, true), (true, true)] {
                        let iv = Interval { lo, hi, lo_open, hi_open };
                        let brute = g.subsets().unwrap().filter(|&h| iv.contains(h)).count() as u64;
                        assert_eq!(interval_size(&iv), brute, "{iv:?}");
                        assert_eq!(iv.members(g).unwrap().len() as u64, brute);
                    }
                }
            }
        }
    }

    #[test]
    fn literals_round_trip() {
        assert_eq!("{1,3}".parse::<SubsetId>().unwrap(), SubsetId(5));
        assert_eq!(" { } ".parse::<SubsetId>().unwrap(), SubsetId::EMPTY);
        assert_eq!("6".parse::<SubsetId>().unwrap(), s(&[2, 3]));
        assert_eq!(s(&[2, 3]).to_string(), "{2,3}");
        assert!("{1,x}".parse::<SubsetId>().is_err());
        assert!("{0}".parse::<SubsetId>().is_err());
    }

    #[test]
    fn permutation_list() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3)[1], [0, 2, 1]);
    }

    #[test]
    fn canonical_form_examples() {
        let a = Coloring::from_fn(2, 1, |h| u16::from(h == s(&[1]))).unwrap();
        let b = Coloring::from_fn(2, 1, |h| u16::from(h == s(&[2]))).unwrap();
        assert_ne!(a, b);
        assert_eq!(canonicalize(&a).unwrap(), canonicalize(&b).unwrap());
        let blank = Coloring::uncolored(3, 2).unwrap();
        assert_eq!(canonicalize(&blank).unwrap(), blank);
    }

    #[test]
    fn canonical_form_is_orbit_invariant_for_n3() {
        // every 2-coloring of B_3: compare canonical forms with explicit orbits
        let perms = permutations(3);
        for code in 0..(1u32 << 8) {
            let c = Coloring::from_fn(3, 1, |h| (code >> h.0 & 1) as u16).unwrap();
            let canon = canonicalize(&c).unwrap();
            assert_eq!(canonicalize(&canon).unwrap(), canon);
            for p in &perms {
                let moved = Coloring::from_fn(3, 1, |h| {
                    // (π·c)(π(S)) = c(S); find S with π(S) = h
                    let pre = (0..8u64).map(SubsetId).find(|x| x.permute(p) == h).unwrap();
                    c.get(pre)
                })
                .unwrap();
                assert_eq!(canonicalize(&moved).unwrap(), canon);
            }
        }
    }
}
