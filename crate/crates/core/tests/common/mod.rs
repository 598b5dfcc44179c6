//! Brute-force oracles and random generators shared by the integration
//! tests. The oracles never call into the search code of the library.

#![allow(dead_code)]

use rainbow_poset::{comparable, validate_incremental, Coloring, ColoringKind, Mode, Poset, PosetFamily, SubsetId};

pub fn s(e: &[u32]) -> SubsetId {
    SubsetId::from_elements(e).unwrap()
}

pub fn fam(spec: &str) -> PosetFamily {
    PosetFamily::parse(spec, Mode::Induced).unwrap()
}

fn proper_subset(a: u64, b: u64) -> bool {
    a != b && a & !b == 0
}

/// Order on the tuple matches the poset as the mode requires.
pub fn naive_is_copy(tuple: &[u64], p: &Poset, mode: Mode) -> bool {
    for i in 0..tuple.len() {
        for j in 0..tuple.len() {
            if i == j {
                continue;
            }
            let need = p.less(i, j);
            let have = proper_subset(tuple[i], tuple[j]);
            if need && !have {
                return false;
            }
            if mode == Mode::Induced && have && !need {
                return false;
            }
        }
    }
    true
}

/// Visits every injective tuple of `pool` of length `k` until `f` is true.
pub fn any_injection(pool: &[u64], k: usize, f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(pool: &[u64], k: usize, used: &mut Vec<bool>, acc: &mut Vec<u64>, f: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if acc.len() == k {
            return f(acc);
        }
        for i in 0..pool.len() {
            if !used[i] {
                used[i] = true;
                acc.push(pool[i]);
                if rec(pool, k, used, acc, f) {
                    return true;
                }
                acc.pop();
                used[i] = false;
            }
        }
        false
    }
    rec(pool, k, &mut vec![false; pool.len()], &mut Vec::with_capacity(k), f)
}

pub fn naive_has_copy(family: &[u64], p: &Poset, mode: Mode) -> bool {
    let mut pool = family.to_vec();
    pool.sort_unstable();
    pool.dedup();
    any_injection(&pool, p.size(), &mut |t| naive_is_copy(t, p, mode))
}

/// Rainbow copy of some member, over raw assignments (0 = uncolored).
pub fn naive_rainbow(assign: &[u16], forbidden: &PosetFamily) -> bool {
    let colored: Vec<u64> = (0..assign.len() as u64).filter(|&s| assign[s as usize] != 0).collect();
    forbidden.members().iter().any(|p| {
        any_injection(&colored, p.size(), &mut |t| {
            let mut seen = 0u64;
            for &x in t {
                let bit = 1u64 << assign[x as usize];
                if seen & bit != 0 {
                    return false;
                }
                seen |= bit;
            }
            naive_is_copy(t, p, forbidden.mode())
        })
    })
}

/// Max over all valid assignments of the min class size; `None` when no
/// assignment is valid.
pub fn naive_solve(n: u32, l: u16, forbidden: &PosetFamily, kind: ColoringKind) -> Option<u64> {
    let len = 1usize << n;
    let base = u64::from(l) + 1;
    let total = (base).pow(len as u32);
    let mut best: Option<u64> = None;
    let mut assign = vec![0u16; len];
    for code in 0..total {
        let mut x = code;
        for a in assign.iter_mut() {
            *a = (x % base) as u16;
            x /= base;
        }
        if kind == ColoringKind::Total && assign.contains(&0) {
            continue;
        }
        let mut sizes = vec![0u64; l as usize + 1];
        for &a in &assign {
            sizes[a as usize] += 1;
        }
        let min = sizes[1..].iter().copied().min().unwrap();
        if best.is_some_and(|b| min <= b) {
            continue;
        }
        if !naive_rainbow(&assign, forbidden) {
            best = Some(min);
        }
    }
    best
}

pub fn naive_validate(c: &Coloring, forbidden: &PosetFamily) -> bool {
    !naive_rainbow(c.assignment(), forbidden)
}

/// Small splitmix generator so tests do not depend on the library RNG.
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, k: u64) -> u64 {
        self.next() % k
    }
}

pub const BUILTIN_SPECS: &[&str] = &[
    "A1", "A2", "A3", "A4", "P2", "P3", "P4", "V2", "V3", "W2", "W3", "D2", "P2+A1", "V2+A1", "P2+P2",
];

pub fn builtin_posets() -> Vec<(&'static str, Poset)> {
    BUILTIN_SPECS.iter().map(|&spec| (spec, rainbow_poset::build_poset(spec).unwrap())).collect()
}

/// Least sorted rainbow tuple over all members, with the member index.
pub fn naive_least_witness(assign: &[u16], forbidden: &PosetFamily) -> Option<(usize, Vec<u64>)> {
    let colored: Vec<u64> = (0..assign.len() as u64).filter(|&s| assign[s as usize] != 0).collect();
    let mut best: Option<(usize, Vec<u64>)> = None;
    for (member, p) in forbidden.members().iter().enumerate() {
        any_injection(&colored, p.size(), &mut |t| {
            let mut colors: Vec<u16> = t.iter().map(|&x| assign[x as usize]).collect();
            colors.sort_unstable();
            colors.dedup();
            if colors.len() == t.len() && naive_is_copy(t, p, forbidden.mode()) {
                let mut key = t.to_vec();
                key.sort_unstable();
                if best.as_ref().is_none_or(|(_, b)| key < *b) {
                    best = Some((member, key));
                }
            }
            false
        });
    }
    best
}

/// A cross-comparable system built from a random chain: each family takes
/// chain sets and sets from its own open intervals.
pub fn chain_built_system(n: u32, rng: &mut Mix) -> Vec<Vec<SubsetId>> {
    let mut elems: Vec<u32> = (0..n).collect();
    for i in (1..elems.len()).rev() {
        elems.swap(i, rng.below(i as u64 + 1) as usize);
    }
    let mut chain = vec![0u64];
    let mut cur = 0u64;
    for (idx, &x) in elems.iter().enumerate() {
        cur |= 1 << x;
        if idx + 1 == elems.len() || rng.below(2) == 0 {
            chain.push(cur);
        }
    }
    let m = 1 + rng.below(3) as usize;
    let mut fams = vec![Vec::new(); m];
    for h in 1..chain.len() {
        let owner = rng.below(m as u64) as usize;
        let (lo, hi) = (chain[h - 1], chain[h]);
        let free = hi & !lo;
        for _ in 0..rng.below(3) {
            let sub = lo | (rng.next() & free);
            if sub != lo && sub != hi {
                fams[owner].push(SubsetId(sub));
            }
        }
    }
    for &c in &chain {
        if rng.below(3) == 0 {
            let owner = rng.below(m as u64) as usize;
            fams[owner].push(SubsetId(c));
        }
    }
    for f in &mut fams {
        f.sort_unstable();
        f.dedup();
    }
    fams
}

pub fn cross_comparable(fams: &[Vec<SubsetId>]) -> bool {
    (0..fams.len()).all(|i| {
        (i + 1..fams.len()).all(|j| fams[i].iter().all(|&a| fams[j].iter().all(|&b| comparable(a, b))))
    })
}

/// Random valid coloring by greedily adding sets that keep it valid.
pub fn random_valid_coloring(n: u32, colors: u16, forbidden: &PosetFamily, rng: &mut Mix) -> Coloring {
    let mut c = Coloring::uncolored(n, colors).unwrap();
    let mut order: Vec<u64> = (0..1 << n).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.below(i as u64 + 1) as usize);
    }
    for x in order {
        let color = rng.below(u64::from(colors) + 1) as u16;
        if color == 0 {
            continue;
        }
        c.set(SubsetId(x), color).unwrap();
        if !validate_incremental(&c, SubsetId(x), forbidden).is_ok() {
            c.set(SubsetId(x), 0).unwrap();
        }
    }
    c
}

/// Alternates chain-built systems with rejection-sampled random ones, so
/// hypotheses are not only met by construction.
pub fn random_cross_comparable_system(n: u32, rng: &mut Mix, index: usize) -> Vec<Vec<SubsetId>> {
    if index.is_multiple_of(2) {
        return chain_built_system(n, rng);
    }
    loop {
        let m = 2 + rng.below(2) as usize;
        let fams: Vec<Vec<SubsetId>> =
            (0..m).map(|_| (0..1 + rng.below(3)).map(|_| SubsetId(rng.below(1 << n))).collect()).collect();
        if cross_comparable(&fams) {
            return fams;
        }
    }
}
