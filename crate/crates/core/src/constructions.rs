//! Generators for the explicit extremal colorings.
//!
//! Every generator returns a [`ConstructionReport`] holding the coloring
//! (when `B_n` is small enough to materialize), the exact class sizes, the
//! minimum class size the construction guarantees and the forbidden family
//! it avoids.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{a_param, chain_condition, m_of_l};
use crate::coloring::{validate, Coloring, Validation};
use crate::error::{Error, Result};
use crate::lattice::{GroundSet, SubsetId, ENUMERATION_CAP};
use crate::poset::{Mode, Poset, PosetFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// validity follows from how the classes are built
    Structural,
    /// validity was confirmed by running the rainbow detector
    Detector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionReport {
    pub name: &'static str,
    pub n: u32,
    pub coloring: Option<Coloring>,
    /// exact size of class `c` at index `c - 1`
    pub class_sizes: Vec<u64>,
    pub uncolored: u64,
    pub claimed_min: u64,
    pub forbidden: PosetFamily,
    pub certificate: Certificate,
}

impl ConstructionReport {
    pub fn min_class(&self) -> u64 {
        self.class_sizes.iter().copied().min().unwrap_or(0)
    }

    /// Runs the detector on the materialized coloring; on success the
    /// certificate becomes [`Certificate::Detector`].
    pub fn detector_check(&mut self) -> Result<Validation> {
        let c = self
            .coloring
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("{} was not materialized", self.name)))?;
        let v = validate(c, &self.forbidden);
        if v.is_ok() {
            self.certificate = Certificate::Detector;
        }
        Ok(v)
    }
}

fn materializable(n: u32) -> bool {
    n <= ENUMERATION_CAP
}

fn report_from_coloring(
    name: &'static str,
    coloring: Coloring,
    claimed_min: u64,
    forbidden: PosetFamily,
) -> ConstructionReport {
    let st = coloring.stats();
    ConstructionReport {
        name,
        n: coloring.n(),
        class_sizes: st.sizes,
        uncolored: st.uncolored,
        coloring: Some(coloring),
        claimed_min,
        forbidden,
        certificate: Certificate::Structural,
    }
}

fn color_count(l: u64) -> Result<u16> {
    u16::try_from(l).map_err(|_| Error::OutOfRange(format!("{l} colors do not fit the coloring format")))
}

/// The first `count` subsets of `[m]` of size `k`, in lexicographic order of
/// their sorted element lists.
pub fn lex_first_subsets(m: u32, k: u32, count: usize) -> Vec<SubsetId> {
    let mut out = Vec::with_capacity(count);
    let mut combo: Vec<u32> = (1..=k).collect();
    if k > m {
        return out;
    }
    while out.len() < count {
        out.push(SubsetId::from_elements(&combo).expect("elements within 1..=64"));
        // advance to the next combination
        let Some(pos) = (0..k as usize).rev().find(|&p| combo[p] < m - (k - 1 - p as u32)) else {
            break;
        };
        combo[pos] += 1;
        for q in pos + 1..k as usize {
            combo[q] = combo[q - 1] + 1;
        }
    }
    out
}

/// Shape of a rainbow set inside the trace coloring with a remainder class:
/// an antichain plus at most one point comparable to some of it.
fn is_star_plus_antichain(p: &Poset) -> Result<bool> {
    let big: Vec<Vec<usize>> = p.components().into_iter().filter(|c| c.len() >= 2).collect();
    match big.as_slice() {
        [] => Ok(true),
        [c] => {
            let k = c.len() - 1;
            let sub = p.induced(c);
            Ok(sub.is_isomorphic(&Poset::vee(k))? || sub.is_isomorphic(&Poset::wedge(k))?)
        }
        _ => Ok(false),
    }
}

/// Colorings by traces on `[m]`: class `i` holds the sets meeting `[m]` in
/// the `i`-th fixed half-size subset. In total mode the last class takes
/// every remaining set.
pub fn incomparable_traces(n: u32, l: u64, total: bool, forbidden: &PosetFamily) -> Result<ConstructionReport> {
    let g = GroundSet::new(n)?;
    if l < 2 {
        return Err(Error::Precondition(format!("traces need l >= 2, got {l}")));
    }
    let colors = color_count(l)?;
    let traced = if total { l - 1 } else { l };
    let m = m_of_l(traced);
    if m > n {
        return Err(Error::Precondition(format!("m({traced}) = {m} exceeds n = {n}")));
    }
    for (p, label) in forbidden.members().iter().zip(forbidden.labels()) {
        let refused = if total { is_star_plus_antichain(p)? } else { p.is_antichain() };
        if refused {
            let why = if total {
                "is an antichain plus at most one star component"
            } else {
                "is an antichain"
            };
            return Err(Error::Uncertifiable(format!("{label} {why}")));
        }
    }
    let traces = lex_first_subsets(m, m / 2, traced as usize);
    let per_class = 1u64 << (n - m);
    let rest = g.lattice_size() - (traced * per_class);
    let mut class_sizes = vec![per_class; traced as usize];
    if total {
        class_sizes.push(rest);
    }
    let uncolored = g.lattice_size() - class_sizes.iter().sum::<u64>();
    let claimed_min = class_sizes.iter().copied().min().unwrap_or(0);
    let coloring = if materializable(n) {
        let mask = (1u64 << m) - 1;
        Some(Coloring::from_fn(n, colors, |h| {
            match traces.iter().position(|s| s.0 == h.0 & mask) {
                Some(i) => i as u16 + 1,
                None if total => colors,
                None => 0,
            }
        })?)
    } else {
        None
    };
    Ok(ConstructionReport {
        name: "traces",
        n,
        coloring,
        class_sizes,
        uncolored,
        claimed_min,
        forbidden: forbidden.clone(),
        certificate: Certificate::Structural,
    })
}

/// Part sizes `floor((n+i-1)/l)` for `i = 1..=l`.
fn equipartition(n: u32, l: u64) -> Vec<u32> {
    (1..=l).map(|i| ((u64::from(n) + i - 1) / l) as u32).collect()
}

fn chain_interval_sizes(n: u32, l: u64) -> Vec<u64> {
    let parts = equipartition(n, l);
    let a = a_param(u64::from(n), l);
    let mut sizes: Vec<u64> = parts.iter().map(|&d| (1u64 << d) - 2).collect();
    for j in 0..=l {
        sizes[(j % a) as usize] += 1;
    }
    sizes
}

/// Minimum class size of [`chain_interval_coloring`], if its hypotheses hold.
pub fn chain_interval_min(n: u32, l: u64) -> Option<u64> {
    if l < 2 || n > 63 || !chain_condition(n, l) {
        return None;
    }
    chain_interval_sizes(n, l).into_iter().min()
}

/// Intervals of one equipartitioned chain, one color per open interval,
/// with the `l+1` chain sets dealt round-robin to the `a` classes whose
/// interval is smallest.
pub fn chain_interval_coloring(n: u32, l: u64) -> Result<ConstructionReport> {
    GroundSet::new(n)?;
    if l < 2 {
        return Err(Error::Precondition(format!("need l >= 2, got {l}")));
    }
    if !chain_condition(n, l) {
        return Err(Error::Precondition(format!("l*log2(l) <= n fails for n = {n}, l = {l}")));
    }
    let colors = color_count(l)?;
    let class_sizes = chain_interval_sizes(n, l);
    let claimed_min = class_sizes.iter().copied().min().unwrap_or(0);
    let uncolored = (1u64 << n) - class_sizes.iter().sum::<u64>();
    let forbidden = PosetFamily::single(Poset::antichain(2), "A2", Mode::Induced);
    let coloring = if materializable(n) {
        let parts = equipartition(n, l);
        let a = a_param(u64::from(n), l);
        let mut chain = vec![0u64];
        let mut acc = 0u32;
        for &d in &parts {
            acc += d;
            chain.push((1u64 << acc) - 1);
        }
        Some(Coloring::from_fn(n, colors, |h| {
            if let Some(j) = chain.iter().position(|&c| c == h.0) {
                return (j as u64 % a) as u16 + 1;
            }
            for i in 1..chain.len() {
                let (lo, hi) = (chain[i - 1], chain[i]);
                if h.0 & lo == lo && h.0 & !hi == 0 {
                    return i as u16;
                }
            }
            0
        })?)
    } else {
        None
    };
    Ok(ConstructionReport {
        name: "chain",
        n,
        coloring,
        class_sizes,
        uncolored,
        claimed_min,
        forbidden,
        certificate: Certificate::Structural,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift3Variant {
    /// classes 1..3 only, forbidding `P3`, `V2` and `W2`
    ThreeColor,
    /// all four classes, forbidding `D2`
    FourColor,
}

/// Color of a subset of `[3]` in the base pattern that is lifted to `B_n`.
pub fn lift3_base(trace: u64) -> u16 {
    match trace {
        0b001 | 0b011 => 1,
        0b010 | 0b110 => 2,
        0b100 | 0b101 => 3,
        _ => 4,
    }
}

/// Classes `{F : c'(F ∩ [3]) = i}` for the fixed pattern `c'` on `B_3`.
pub fn lift3_coloring(n: u32, variant: Lift3Variant) -> Result<ConstructionReport> {
    if n < 3 {
        return Err(Error::Precondition(format!("lift3 needs n >= 3, got {n}")));
    }
    GroundSet::enumerable(n)?;
    let (colors, forbidden) = match variant {
        Lift3Variant::ThreeColor => (
            3,
            PosetFamily::with_labels(
                vec![Poset::chain(3), Poset::vee(2), Poset::wedge(2)],
                vec!["P3".into(), "V2".into(), "W2".into()],
                Mode::Induced,
            )?,
        ),
        Lift3Variant::FourColor => (4, PosetFamily::single(Poset::diamond(), "D2", Mode::Induced)),
    };
    let c = Coloring::from_fn(n, colors, |h| {
        let base = lift3_base(h.0 & 0b111);
        if base > colors {
            0
        } else {
            base
        }
    })?;
    Ok(report_from_coloring("lift3", c, 1 << (n - 2), forbidden))
}

/// Total 3-coloring by membership of 1 and 2.
pub fn p3_total_coloring(n: u32) -> Result<ConstructionReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("p3 needs n >= 2, got {n}")));
    }
    GroundSet::enumerable(n)?;
    let c = Coloring::from_fn(n, 3, |h| match (h.contains(1), h.contains(2)) {
        (true, false) => 1,
        (false, true) => 2,
        _ => 3,
    })?;
    Ok(report_from_coloring("p3", c, 1 << (n - 2), PosetFamily::single(Poset::chain(3), "P3", Mode::Induced)))
}

/// `k` classes of exactly `floor(2^n/k)` sets; classes 1 and 2 are
/// cross-incomparable so no chain meets both.
pub fn pk_coloring(n: u32, k: u64) -> Result<ConstructionReport> {
    if k < 4 {
        return Err(Error::Precondition(format!("pk needs k >= 4, got {k}")));
    }
    if n < 2 {
        return Err(Error::Precondition(format!("pk needs n >= 2, got {n}")));
    }
    let g = GroundSet::enumerable(n)?;
    let colors = color_count(k)?;
    let q = g.lattice_size() / k;
    if (1u64 << (n - 2)) < q {
        return Err(Error::Precondition(format!("2^(n-2) < floor(2^n/k) = {q}")));
    }
    let mut assign = vec![0u16; g.lattice_size() as usize];
    let (mut first, mut second) = (0u64, 0u64);
    let mut rest = Vec::new();
    for h in g.subsets()? {
        match (h.contains(1), h.contains(2)) {
            (true, false) if first < q => {
                assign[h.0 as usize] = 1;
                first += 1;
            }
            (false, true) if second < q => {
                assign[h.0 as usize] = 2;
                second += 1;
            }
            _ => rest.push(h),
        }
    }
    for (idx, h) in rest.into_iter().enumerate() {
        let color = 3 + idx as u64 / q.max(1);
        if q > 0 && color <= k {
            assign[h.0 as usize] = color as u16;
        }
    }
    let c = Coloring::from_assignment(n, colors, assign)?;
    let label = format!("P{k}");
    Ok(report_from_coloring("pk", c, q, PosetFamily::single(Poset::chain(k as usize), &label, Mode::Induced)))
}

/// `k - 1` chains `∅ = C^j_0 ⊊ C^j_1 ⊊ .. ⊊ C^j_l = [n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFamily {
    n: u32,
    k: usize,
    l: usize,
    chains: Vec<Vec<SubsetId>>,
}

impl ChainFamily {
    pub fn new(n: u32, k: usize, l: usize, chains: Vec<Vec<SubsetId>>) -> Result<Self> {
        let g = GroundSet::new(n)?;
        let bad = |msg: String| Err(Error::InvalidChainFamily(msg));
        if k < 2 || l < 1 {
            return bad(format!("need k >= 2 and l >= 1, got k = {k}, l = {l}"));
        }
        if chains.len() != k - 1 {
            return bad(format!("expected {} chains, got {}", k - 1, chains.len()));
        }
        for (j, chain) in chains.iter().enumerate() {
            if chain.len() != l + 1 {
                return bad(format!("chain {} has {} sets, expected {}", j + 1, chain.len(), l + 1));
            }
            if chain[0] != SubsetId::EMPTY || chain[l] != g.full() {
                return bad(format!("chain {} must run from the empty set to [n]", j + 1));
            }
            if let Some(i) = (1..=l).find(|&i| !chain[i - 1].is_proper_subset_of(chain[i])) {
                return bad(format!("chain {} is not strictly nested at position {i}", j + 1));
            }
        }
        Ok(ChainFamily { n, k, l, chains })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn chains(&self) -> &[Vec<SubsetId>] {
        &self.chains
    }

    /// Color of `(chain j, interval i)`, both 1-based: `(j-1)l + i`.
    pub fn color_of(&self, j: usize, i: usize) -> usize {
        (j - 1) * self.l + i
    }
}

/// Mixes a base seed with an index into an independent seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    splitmix(seed ^ splitmix(index))
}

/// Random chains: `C^j_i = C^j_{i-1} ∪ D^j_i` where each element outside
/// `C^j_{i-1}` joins `D^j_i` with probability `1/(l-i+1)`. Chain `j` draws
/// from its own stream of the seeded generator, elements in increasing
/// order; a draw that is not strictly nested is discarded and redrawn.
pub fn congen_generate(n: u32, k: usize, l: usize, seed: u64) -> Result<ChainFamily> {
    let g = GroundSet::new(n)?;
    if k < 2 || l < 2 || (n as usize) < l {
        return Err(Error::Precondition(format!("need k >= 2, l >= 2, n >= l; got n = {n}, k = {k}, l = {l}")));
    }
    let mut chains = Vec::with_capacity(k - 1);
    for j in 0..k - 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(j as u64);
        chains.push(loop {
            let mut chain = vec![SubsetId::EMPTY];
            let mut cur = 0u64;
            for i in 1..l {
                let odds = (l - i + 1) as u32;
                for x in 0..n {
                    if cur >> x & 1 == 0 && rng.gen_range(0..odds) == 0 {
                        cur |= 1 << x;
                    }
                }
                chain.push(SubsetId(cur));
            }
            chain.push(g.full());
            if chain.windows(2).all(|w| w[0].is_proper_subset_of(w[1])) {
                break chain;
            }
        });
    }
    ChainFamily::new(n, k, l, chains)
}

/// A half-open interval `(lo, hi]`.
#[derive(Clone, Copy)]
struct HalfOpen {
    lo: u64,
    hi: u64,
}

/// `|∩ (lo_s, hi_s]|`: sets containing every `lo_s` properly and inside
/// every `hi_s`.
fn half_open_intersection(parts: &[HalfOpen]) -> u64 {
    let lower = parts.iter().fold(0u64, |m, p| m | p.lo);
    let upper = parts.iter().fold(!0u64, |m, p| m & p.hi);
    if lower & !upper != 0 {
        return 0;
    }
    let free = (upper & !lower).count_ones();
    let total = 1u64 << free;
    if parts.iter().any(|p| p.lo == lower) {
        total - 1
    } else {
        total
    }
}

/// Exact class sizes by inclusion-exclusion over the intervals of earlier
/// chains meeting each class interval.
pub fn congen_class_sizes(cf: &ChainFamily) -> Vec<u64> {
    let l = cf.l;
    let interval = |j: usize, i: usize| HalfOpen { lo: cf.chains[j][i - 1].0, hi: cf.chains[j][i].0 };
    let mut sizes = Vec::with_capacity(l * (cf.k - 1));
    for j in 0..cf.k - 1 {
        for i in 1..=l {
            // choice[j'] = 0 skips chain j', h > 0 picks its h-th interval;
            // two intervals of one chain are disjoint so at most one is chosen
            let mut total: i128 = 0;
            let mut choice = vec![0usize; j];
            loop {
                let mut parts = vec![interval(j, i)];
                parts.extend(choice.iter().enumerate().filter(|&(_, &h)| h > 0).map(|(jp, &h)| interval(jp, h)));
                let term = i128::from(half_open_intersection(&parts));
                if (parts.len() - 1) % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
                let Some(pos) = choice.iter().position(|&h| h < l) else { break };
                choice[pos] += 1;
                for c in &mut choice[..pos] {
                    *c = 0;
                }
            }
            sizes.push(u64::try_from(total).expect("class sizes are nonnegative"));
        }
    }
    sizes
}

/// The color of `h` in the chain-interval coloring: the first chain whose
/// half-open intervals contain `h` decides.
pub fn congen_color(cf: &ChainFamily, h: SubsetId) -> u16 {
    for (j, chain) in cf.chains.iter().enumerate() {
        if let Some(i) = (1..=cf.l).find(|&i| h.is_subset_of(chain[i])) {
            if chain[i - 1].is_proper_subset_of(h) {
                return cf.color_of(j + 1, i) as u16;
            }
        }
    }
    0
}

/// The `l(k-1)`-coloring with class `(j-1)l + i` equal to
/// `(C^j_{i-1}, C^j_i]` minus the intervals of earlier chains. Any `k`
/// colored sets include two from one chain, which are comparable when their
/// colors differ, so there is no rainbow `A_k`.
pub fn congen_coloring(cf: &ChainFamily, materialize: bool) -> Result<ConstructionReport> {
    let colors = color_count((cf.l * (cf.k - 1)) as u64)?;
    let class_sizes = congen_class_sizes(cf);
    let total = 1u64 << cf.n;
    let uncolored = total - class_sizes.iter().sum::<u64>();
    let coloring = if materialize {
        GroundSet::enumerable(cf.n)?;
        Some(Coloring::from_fn(cf.n, colors, |h| congen_color(cf, h))?)
    } else {
        None
    };
    let claimed_min = class_sizes.iter().copied().min().unwrap_or(0);
    let label = format!("A{}", cf.k);
    Ok(ConstructionReport {
        name: "congen",
        n: cf.n,
        coloring,
        class_sizes,
        uncolored,
        claimed_min,
        forbidden: PosetFamily::single(Poset::antichain(cf.k), &label, Mode::Induced),
        certificate: Certificate::Structural,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionEntry {
    pub i: usize,
    pub j: usize,
    pub j_other: usize,
    pub intersection: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub entries: Vec<ConditionEntry>,
    pub pass: bool,
}

/// `|C^j_i ∩ C^{j'}_i| <= (i-1) n/l + (2/3) n/l` for `1 <= i <= l-1`,
/// `j < j'`, compared exactly as `3l|∩| <= (3(i-1) + 2) n`.
pub fn congen_condition_check(cf: &ChainFamily) -> ConditionCheck {
    let mut entries = Vec::new();
    let n = u64::from(cf.n);
    let l = cf.l as u64;
    for i in 1..cf.l {
        for j in 0..cf.chains.len() {
            for jp in j + 1..cf.chains.len() {
                let inter = cf.chains[j][i].intersection(cf.chains[jp][i]).len();
                let holds = 3 * l * u64::from(inter) <= (3 * (i as u64 - 1) + 2) * n;
                entries.push(ConditionEntry { i, j: j + 1, j_other: jp + 1, intersection: inter, holds });
            }
        }
    }
    let pass = entries.iter().all(|e| e.holds);
    ConditionCheck { entries, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn s(e: &[u32]) -> SubsetId {
        SubsetId::from_elements(e).unwrap()
    }

    #[test]
    fn lex_subsets() {
        assert_eq!(lex_first_subsets(2, 1, 2), [s(&[1]), s(&[2])]);
        assert_eq!(lex_first_subsets(4, 2, 3), [s(&[1, 2]), s(&[1, 3]), s(&[1, 4])]);
        assert_eq!(lex_first_subsets(4, 2, 10).len(), 6);
        assert_eq!(lex_first_subsets(0, 0, 1), [SubsetId::EMPTY]);
    }

    #[test]
    fn traces_examples() {
        let weak_p2 = PosetFamily::parse("P2", Mode::Weak).unwrap();
        let r = incomparable_traces(4, 2, false, &weak_p2).unwrap();
        assert_eq!(r.class_sizes, [4, 4]);
        let c = r.coloring.as_ref().unwrap();
        assert_eq!(c.get(s(&[1, 3])), 1);
        assert!(validate(c, &weak_p2).is_ok());
        let r = incomparable_traces(3, 3, false, &weak_p2).unwrap();
        assert_eq!(r.class_sizes, [1, 1, 1]);
        assert!(matches!(
            incomparable_traces(4, 2, false, &PosetFamily::parse("A2", Mode::Induced).unwrap()),
            Err(Error::Uncertifiable(_))
        ));
        assert!(incomparable_traces(2, 3, false, &weak_p2).is_err());
    }

    #[test]
    fn traces_total_certification() {
        let fam = |spec| PosetFamily::parse(spec, Mode::Induced).unwrap();
        assert!(incomparable_traces(4, 3, true, &fam("P3")).is_ok());
        assert!(incomparable_traces(4, 3, true, &fam("D2")).is_ok());
        for refused in ["V2", "W2+A1", "P2", "A3", "V1+A1"] {
            assert!(matches!(incomparable_traces(4, 3, true, &fam(refused)), Err(Error::Uncertifiable(_))), "{refused}");
        }
        // two nontrivial components cannot both sit on one remainder set
        assert!(incomparable_traces(4, 3, true, &fam("P2+P2")).is_ok());
        let r = incomparable_traces(4, 3, true, &fam("P3")).unwrap();
        assert_eq!(r.class_sizes, [4, 4, 8]);
        assert!(validate(r.coloring.as_ref().unwrap(), &fam("P3")).is_ok());
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain_interval_coloring(4, 2).unwrap().min_class(), 3);
        assert_eq!(chain_interval_coloring(6, 3).unwrap().min_class(), 3);
        assert_eq!(chain_interval_coloring(5, 2).unwrap().min_class(), 5);
        assert!(chain_interval_coloring(4, 3).is_err());
        let r = chain_interval_coloring(6, 2).unwrap();
        assert_eq!(r.coloring.as_ref().unwrap().stats().sizes, r.class_sizes);
    }

    #[test]
    fn lift3_examples() {
        let r = lift3_coloring(3, Lift3Variant::ThreeColor).unwrap();
        assert_eq!(r.class_sizes, [2, 2, 2]);
        assert_eq!(r.uncolored, 2);
        assert_eq!(r.coloring.as_ref().unwrap().get(s(&[1, 2, 3])), 0);
        let r = lift3_coloring(4, Lift3Variant::FourColor).unwrap();
        assert_eq!(r.class_sizes, [4, 4, 4, 4]);
        assert!(lift3_coloring(2, Lift3Variant::FourColor).is_err());
    }

    #[test]
    fn p3_and_pk_examples() {
        let r = p3_total_coloring(4).unwrap();
        assert_eq!(r.class_sizes, [4, 4, 8]);
        assert_eq!(r.coloring.as_ref().unwrap().get(s(&[1, 2])), 3);
        let r = pk_coloring(4, 4).unwrap();
        assert_eq!(r.class_sizes, [4, 4, 4, 4]);
        let r = pk_coloring(4, 5).unwrap();
        assert_eq!(r.class_sizes, [3, 3, 3, 3, 3]);
        assert_eq!(r.uncolored, 1);
        assert!(pk_coloring(4, 3).is_err());
    }

    #[test]
    fn congen_endpoints_and_determinism() {
        for seed in 0..20 {
            let cf = congen_generate(12, 4, 3, seed).unwrap();
            for chain in cf.chains() {
                assert_eq!(chain[0], SubsetId::EMPTY);
                assert_eq!(chain[3], s(&(1..=12).collect::<Vec<_>>()));
            }
            assert_eq!(cf, congen_generate(12, 4, 3, seed).unwrap());
        }
        assert!(congen_generate(1, 3, 2, 0).is_err());
    }

    #[test]
    fn congen_single_chain_sizes() {
        let cf = congen_generate(9, 2, 3, 5).unwrap();
        let r = congen_coloring(&cf, true).unwrap();
        let chain = &cf.chains()[0];
        for i in 1..=3 {
            let d = chain[i].difference(chain[i - 1]).len();
            assert_eq!(r.class_sizes[i - 1], (1 << d) - 1);
        }
        let st = r.coloring.as_ref().unwrap().stats();
        assert_eq!((st.sizes, st.uncolored), (r.class_sizes.clone(), r.uncolored));
    }

    #[test]
    fn condition_examples() {
        let cf = congen_generate(10, 2, 2, 1).unwrap();
        let chk = congen_condition_check(&cf);
        assert!(chk.entries.is_empty() && chk.pass);
        let full = s(&[1, 2, 3, 4, 5, 6]);
        let cf = ChainFamily::new(
            6,
            3,
            2,
            vec![vec![SubsetId::EMPTY, s(&[1, 2, 3]), full], vec![SubsetId::EMPTY, s(&[4, 5, 6]), full]],
        )
        .unwrap();
        let chk = congen_condition_check(&cf);
        assert!(chk.pass);
        assert_eq!(chk.entries.len(), 1);
        let r = congen_coloring(&cf, true).unwrap();
        assert!(validate(r.coloring.as_ref().unwrap(), &PosetFamily::parse("A3", Mode::Induced).unwrap()).is_ok());
    }

    #[test]
    fn chain_family_validation() {
        let full = s(&[1, 2]);
        assert!(ChainFamily::new(2, 2, 2, vec![vec![SubsetId::EMPTY, s(&[1]), full]]).is_ok());
        assert!(ChainFamily::new(2, 2, 2, vec![vec![SubsetId::EMPTY, full, full]]).is_err());
        assert!(ChainFamily::new(2, 2, 2, vec![vec![s(&[1]), s(&[1]), full]]).is_err());
        assert!(ChainFamily::new(2, 3, 2, vec![vec![SubsetId::EMPTY, s(&[1]), full]]).is_err());
    }

    #[test]
    fn half_open_intersections() {
        // (∅,{1,2}] ∩ ({1},{1,2,3}] = {{1,2}} plus nothing else
        let a = HalfOpen { lo: 0, hi: 0b011 };
        let b = HalfOpen { lo: 0b001, hi: 0b111 };
        assert_eq!(half_open_intersection(&[a, b]), 2 - 1);
        // ({1},..] ∩ ({2},..] = [{1,2}, ..]
        let c = HalfOpen { lo: 0b001, hi: 0b111 };
        let d = HalfOpen { lo: 0b010, hi: 0b111 };
        assert_eq!(half_open_intersection(&[c, d]), 2);
        let _ = build_poset("A2").unwrap();
    }
}
