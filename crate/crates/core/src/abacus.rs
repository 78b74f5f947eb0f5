//! The p-runner abacus, p-bar removal, and core t-tuples.
//!
//! A part `a*p + b` is a bead at height `a` on runner `b`. Runner 0 carries
//! the multiples of `p` (heights start at 1) and may stack beads, since
//! multiples of `p` can repeat in a p-strict partition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{Modulus, PStrictPartition, StrictPartition};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAbacus")]
pub struct Abacus {
    p: Modulus,
    /// Heights per runner, ascending.
    runners: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawAbacus {
    p: u32,
    runners: Vec<Vec<u32>>,
}

impl TryFrom<RawAbacus> for Abacus {
    type Error = Error;
    fn try_from(raw: RawAbacus) -> Result<Self> {
        Abacus::new(Modulus::new(raw.p)?, raw.runners)
    }
}

impl Abacus {
    pub fn new(p: Modulus, mut runners: Vec<Vec<u32>>) -> Result<Self> {
        if runners.len() != p.get() as usize {
            return Err(Error::InvalidAbacus(format!(
                "expected {} runners, got {}",
                p,
                runners.len()
            )));
        }
        for (b, heights) in runners.iter_mut().enumerate() {
            heights.sort_unstable();
            if b == 0 {
                if heights.first() == Some(&0) {
                    return Err(Error::InvalidAbacus("runner 0 bead at height 0".into()));
                }
            } else if heights.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidAbacus(format!(
                    "runner {b} has a repeated bead"
                )));
            }
        }
        Ok(Abacus { p, runners })
    }

    pub fn from_partition(lambda: &PStrictPartition) -> Self {
        let p = lambda.modulus();
        let mut runners = vec![Vec::new(); p.get() as usize];
        for &x in lambda.parts() {
            runners[(x % p.get()) as usize].push(x / p.get());
        }
        for r in &mut runners {
            r.sort_unstable();
        }
        Abacus { p, runners }
    }

    pub fn to_partition(&self) -> PStrictPartition {
        let p = self.p.get();
        let parts = self
            .runners
            .iter()
            .enumerate()
            .flat_map(|(b, hs)| hs.iter().map(move |&h| h * p + b as u32))
            .collect();
        PStrictPartition::from_parts_unchecked(parts, self.p)
    }

    pub fn modulus(&self) -> Modulus {
        self.p
    }

    pub fn runners(&self) -> &[Vec<u32>] {
        &self.runners
    }

    pub fn runner(&self, b: usize) -> &[u32] {
        &self.runners[b]
    }

    /// Text picture of the abacus, one line per height, bottom line first.
    pub fn render(&self) -> String {
        let top = self.runners.iter().flatten().copied().max().unwrap_or(0);
        let mut out = String::new();
        for h in 0..=top {
            let row: Vec<String> = self
                .runners
                .iter()
                .enumerate()
                .map(|(b, hs)| {
                    let n = hs.iter().filter(|&&x| x == h).count();
                    match (b, h, n) {
                        (0, 0, _) => "-".to_string(),
                        (_, _, 0) => ".".to_string(),
                        (_, _, 1) => "o".to_string(),
                        (_, _, n) => n.to_string(),
                    }
                })
                .collect();
            out.push_str(&format!("{h:>3} | {}\n", row.join(" ")));
        }
        out
    }
}

pub fn to_abacus(lambda: &PStrictPartition) -> Abacus {
    Abacus::from_partition(lambda)
}

pub fn from_abacus(a: &Abacus) -> PStrictPartition {
    a.to_partition()
}

/// The three ways to take a p-bar off a p-strict partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    /// Lower one bead by one place on its runner.
    Lower,
    /// Remove a part equal to `p`.
    RemoveP,
    /// Remove two parts summing to `p`.
    RemovePair,
}

impl MoveKind {
    pub fn number(self) -> u8 {
        match self {
            MoveKind::Lower => 1,
            MoveKind::RemoveP => 2,
            MoveKind::RemovePair => 3,
        }
    }
}

/// Every partition obtained by removing one p-bar, ordered by runner then
/// height; pair removals are listed under the smaller runner.
pub fn pbar_removals(lambda: &PStrictPartition) -> Vec<(PStrictPartition, MoveKind)> {
    let p = lambda.modulus();
    let pv = p.get();
    let parts = lambda.parts();
    let has = |x: u32| parts.contains(&x);
    let without = |drop: &[u32], add: Option<u32>| {
        let mut v = parts.to_vec();
        for d in drop {
            let k = v.iter().position(|x| x == d).expect("part present");
            v.remove(k);
        }
        v.extend(add);
        PStrictPartition::from_parts_unchecked(v, p)
    };

    let abacus = to_abacus(lambda);
    let mut out = Vec::new();
    for (b, heights) in abacus.runners.iter().enumerate() {
        let mut distinct = heights.clone();
        distinct.dedup();
        for &h in &distinct {
            let x = h * pv + b as u32;
            if b == 0 && h == 1 {
                out.push((without(&[x], None), MoveKind::RemoveP));
            } else if h >= 1 && !has(x - pv) {
                out.push((without(&[x], Some(x - pv)), MoveKind::Lower));
            }
        }
        if b >= 1 && b <= p.t() && has(b as u32) && has(pv - b as u32) {
            out.push((
                without(&[b as u32, pv - b as u32], None),
                MoveKind::RemovePair,
            ));
        }
    }
    out
}

/// Strips p-bars until none remain; returns the core and the number removed.
pub fn pbar_core(lambda: &PStrictPartition) -> (StrictPartition, u32) {
    let mut cur = lambda.clone();
    let mut w = 0;
    while let Some((next, _)) = pbar_removals(&cur).into_iter().next() {
        cur = next;
        w += 1;
    }
    let core = cur.to_strict().expect("a p-bar core has no repeated parts");
    (core, w)
}

pub fn is_core(rho: &StrictPartition, p: Modulus) -> bool {
    pbar_removals(&rho.with_modulus(p)).is_empty()
}

/// `((ℓ_1, ε_1), …, (ℓ_t, ε_t))`: bead count on runner `i` (ε = 0) or
/// `p - i` (ε = 1). An empty pair is written `(0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, u8)>", into = "Vec<(u32, u8)>")]
pub struct CoreTuple {
    pairs: Vec<(u32, u8)>,
}

impl CoreTuple {
    pub fn new(pairs: Vec<(u32, u8)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidTuple(
                "a core tuple needs at least one pair".into(),
            ));
        }
        Modulus::from_t(pairs.len())
            .map_err(|_| Error::InvalidTuple(format!("2*{}+1 is not prime", pairs.len())))?;
        for &(l, e) in &pairs {
            if e > 1 {
                return Err(Error::InvalidTuple(format!("ε must be 0 or 1, got {e}")));
            }
            if l == 0 && e == 0 {
                return Err(Error::InvalidTuple("an empty pair is written (0,1)".into()));
            }
        }
        Ok(CoreTuple { pairs })
    }

    /// The tuple of the empty core.
    pub fn empty(p: Modulus) -> Self {
        CoreTuple {
            pairs: vec![(0, 1); p.t()],
        }
    }

    pub(crate) fn from_pairs_unchecked(pairs: Vec<(u32, u8)>) -> Self {
        debug_assert!(pairs.iter().all(|&(l, e)| e <= 1 && (l > 0 || e == 1)));
        CoreTuple { pairs }
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::from_t(self.pairs.len()).expect("validated at construction")
    }

    pub fn t(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(u32, u8)] {
        &self.pairs
    }

    /// Pair `i`, 1-indexed as in `(ℓ_i, ε_i)`.
    pub fn pair(&self, i: usize) -> (u32, u8) {
        self.pairs[i - 1]
    }

    pub fn ell(&self, i: usize) -> u32 {
        self.pairs[i - 1].0
    }

    pub fn eps(&self, i: usize) -> u8 {
        self.pairs[i - 1].1
    }

    pub fn rank(&self) -> u64 {
        rank_from_tuple(self)
    }
}

impl TryFrom<Vec<(u32, u8)>> for CoreTuple {
    type Error = Error;
    fn try_from(pairs: Vec<(u32, u8)>) -> Result<Self> {
        CoreTuple::new(pairs)
    }
}

impl From<CoreTuple> for Vec<(u32, u8)> {
    fn from(c: CoreTuple) -> Self {
        c.pairs
    }
}

impl fmt::Display for CoreTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.pairs.iter().map(|(l, e)| format!("{l}:{e}")).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for CoreTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, (l, e)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({l},{e})")?;
        }
        write!(f, ")")
    }
}

/// Parses `l:e` pairs joined by commas, e.g. `2:0,3:0`.
impl FromStr for CoreTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let pairs = s
            .split(',')
            .map(|pair| {
                let (l, e) = pair
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected l:e, got {pair:?}")))?;
                let l = l
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad ℓ in {pair:?}")))?;
                let e = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad ε in {pair:?}")))?;
                Ok((l, e))
            })
            .collect::<Result<Vec<_>>>()?;
        CoreTuple::new(pairs)
    }
}

pub fn core_tuple(rho: &StrictPartition, p: Modulus) -> Result<CoreTuple> {
    let abacus = to_abacus(&rho.with_modulus(p));
    let not_core = |why: String| Err(Error::NotACore(format!("{rho} at p={p}: {why}")));
    if !abacus.runner(0).is_empty() {
        return not_core("has a part divisible by p".into());
    }
    let contiguous = |hs: &[u32]| hs.iter().enumerate().all(|(k, &h)| h == k as u32);
    let pv = p.get() as usize;
    let mut pairs = Vec::with_capacity(p.t());
    for i in 1..=p.t() {
        let (lo, hi) = (abacus.runner(i), abacus.runner(pv - i));
        let pair = match (lo.is_empty(), hi.is_empty()) {
            (true, true) => (0, 1),
            (false, true) => (lo.len() as u32, 0),
            (true, false) => (hi.len() as u32, 1),
            (false, false) => return not_core(format!("beads on both runners {i} and {}", pv - i)),
        };
        if !contiguous(lo) || !contiguous(hi) {
            return not_core(format!("gap on runner {i} or {}", pv - i));
        }
        pairs.push(pair);
    }
    Ok(CoreTuple { pairs })
}

pub fn core_from_tuple(c: &CoreTuple) -> StrictPartition {
    let p = c.modulus().get();
    let mut parts: Vec<u32> = c
        .pairs
        .iter()
        .enumerate()
        .flat_map(|(k, &(l, e))| {
            let i = k as u32 + 1;
            let runner = if e == 0 { i } else { p - i };
            (0..l).map(move |h| h * p + runner)
        })
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    StrictPartition::new(parts).expect("distinct runners give distinct parts")
}

/// `Σ ℓ_i · i^{1-ε_i} (p-i)^{ε_i} + p · ℓ_i(ℓ_i - 1)/2`.
pub fn rank_from_tuple(c: &CoreTuple) -> u64 {
    let p = c.modulus().get() as u64;
    c.pairs
        .iter()
        .enumerate()
        .map(|(k, &(l, e))| {
            let i = k as u64 + 1;
            let l = l as u64;
            let runner = if e == 0 { i } else { p - i };
            l * runner + p * l * l.saturating_sub(1) / 2
        })
        .sum()
}
