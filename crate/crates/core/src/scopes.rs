//! Scopes involutions `K_0, …, K_t` on p-strict partitions and on core
//! tuples, the w-allowed thresholds, and allowed-equivalence classes.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::abacus::{rank_from_tuple, CoreTuple};
use crate::error::{Error, Result};
use crate::partitions::{parity, Modulus, PStrictPartition, StrictPartition};

/// One involution `K_i` for a fixed modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScopesAction {
    pub i: usize,
    pub p: Modulus,
}

impl ScopesAction {
    pub fn new(i: usize, p: Modulus) -> Result<Self> {
        check_index(i, p.t())?;
        Ok(ScopesAction { i, p })
    }

    pub fn apply(&self, lambda: &PStrictPartition) -> Result<PStrictPartition> {
        apply_k(self.i, lambda)
    }

    pub fn apply_tuple(&self, c: &CoreTuple) -> Result<CoreTuple> {
        apply_k_tuple(self.i, c)
    }
}

fn check_index(i: usize, t: usize) -> Result<()> {
    if i > t {
        Err(Error::InvalidIndex { index: i, t })
    } else {
        Ok(())
    }
}

/// `K_i` on a p-strict partition.
///
/// For `0 < i < t` runners `i, i+1` and `p-i, p-i-1` trade beads; `K_t`
/// trades runners `t` and `t+1`. `K_0` moves each part `ap+1` (a > 0) to
/// `ap-1` and vice versa, and toggles the part 1. Runner 0 is never touched.
pub fn apply_k(i: usize, lambda: &PStrictPartition) -> Result<PStrictPartition> {
    let p = lambda.modulus();
    let (pv, t) = (p.get(), p.t() as u32);
    check_index(i, p.t())?;
    let i = i as u32;
    let mut parts: Vec<u32> = Vec::with_capacity(lambda.len() + 1);
    let mut has_one = false;
    for &x in lambda.parts() {
        let r = x % pv;
        let y = if i == 0 {
            if x == 1 {
                has_one = true;
                continue;
            }
            match r {
                1 => x - 2,
                r if r == pv - 1 => x + 2,
                _ => x,
            }
        } else if i < t {
            match r {
                r if r == i || r == pv - i - 1 => x + 1,
                r if r == i + 1 || r == pv - i => x - 1,
                _ => x,
            }
        } else {
            match r {
                r if r == t => x + 1,
                r if r == t + 1 => x - 1,
                _ => x,
            }
        };
        parts.push(y);
    }
    if i == 0 && !has_one {
        parts.push(1);
    }
    Ok(PStrictPartition::from_parts_unchecked(parts, p))
}

/// `K_i` on a core tuple: middle indices swap neighbouring pairs, `K_t`
/// flips `ε_t`, and `K_0` sends `(ℓ_1, ε_1)` to `(ℓ_1 - (-1)^{ε_1}, 1 - ε_1)`.
pub fn apply_k_tuple(i: usize, c: &CoreTuple) -> Result<CoreTuple> {
    let t = c.t();
    check_index(i, t)?;
    let mut pairs = c.pairs().to_vec();
    if i == 0 {
        let (l, e) = pairs[0];
        pairs[0] = if e == 0 { (l - 1, 1) } else { (l + 1, 0) };
    } else if i < t {
        pairs.swap(i - 1, i);
    } else {
        let (l, e) = pairs[t - 1];
        if l > 0 {
            pairs[t - 1] = (l, 1 - e);
        }
    }
    Ok(CoreTuple::from_pairs_unchecked(pairs))
}

/// The largest weight for which `K_i` is w-allowed at `c`, as read off the
/// tuple. Negative values mean no weight qualifies at this end.
pub fn allowed_threshold(i: usize, c: &CoreTuple) -> Result<i64> {
    let t = c.t();
    check_index(i, t)?;
    let l = |k: usize| c.ell(k) as i64;
    Ok(if i == 0 {
        l(1) + c.eps(1) as i64 - 1
    } else if i == t {
        2 * l(t) + 1
    } else if c.eps(i) == c.eps(i + 1) {
        let sign = if c.eps(i) == 0 { 1 } else { -1 };
        (l(i + 1) - l(i)) * sign
    } else {
        l(i) + l(i + 1)
    })
}

/// Whether `K_i` is a w-allowed action for the block `c^w`, evaluated at `c`.
pub fn is_w_allowed(i: usize, c: &CoreTuple, w: u32) -> Result<bool> {
    Ok(w as i64 <= allowed_threshold(i, c)?)
}

/// The threshold test applied at the rank-larger of `c` and `K_i(c)` (or at
/// `c` itself when `K_i` fixes it). Both ends of an i-string agree on this.
pub fn action_allowed(i: usize, c: &CoreTuple, w: u32) -> Result<bool> {
    let other = apply_k_tuple(i, c)?;
    let top = if rank_from_tuple(&other) > rank_from_tuple(c) {
        &other
    } else {
        c
    };
    is_w_allowed(i, top, w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub action: usize,
    pub from: CoreTuple,
    pub to: CoreTuple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMember {
    pub tuple: CoreTuple,
    pub rank: u64,
    /// Actions taking the start tuple to this one.
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBudget {
    /// Tuples of larger core rank are not explored.
    pub max_rank: u64,
    /// Exceeding this many members is an error.
    pub max_members: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowedComponent {
    pub w: u32,
    /// Members in breadth-first order from the start.
    pub members: Vec<ComponentMember>,
    /// The members of smallest rank, sorted.
    pub minimal: Vec<CoreTuple>,
    /// Whether some allowed neighbour lay above `max_rank`.
    pub truncated: bool,
}

/// Breadth-first closure of `c` under w-allowed actions, in both rank
/// directions. The class can be infinite, so it is cut at `max_rank`; the
/// `truncated` flag records whether the cut was hit.
pub fn allowed_component(
    c: &CoreTuple,
    w: u32,
    budget: ComponentBudget,
) -> Result<AllowedComponent> {
    let t = c.t();
    let mut seen: BTreeMap<CoreTuple, usize> = BTreeMap::new();
    let mut members = vec![ComponentMember {
        tuple: c.clone(),
        rank: rank_from_tuple(c),
        trace: Vec::new(),
    }];
    seen.insert(c.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    while let Some(k) = queue.pop_front() {
        let cur = members[k].tuple.clone();
        for i in 0..=t {
            if !action_allowed(i, &cur, w)? {
                continue;
            }
            let next = apply_k_tuple(i, &cur)?;
            if seen.contains_key(&next) {
                continue;
            }
            let rank = rank_from_tuple(&next);
            if rank > budget.max_rank {
                truncated = true;
                continue;
            }
            if members.len() >= budget.max_members {
                return Err(Error::ResourceLimit(format!(
                    "allowed component of {c:?} exceeds {} members",
                    budget.max_members
                )));
            }
            let mut trace = members[k].trace.clone();
            trace.push(TraceStep {
                action: i,
                from: cur.clone(),
                to: next.clone(),
            });
            seen.insert(next.clone(), members.len());
            queue.push_back(members.len());
            members.push(ComponentMember {
                tuple: next,
                rank,
                trace,
            });
        }
    }
    let low = members.iter().map(|m| m.rank).min().unwrap_or(0);
    let mut minimal: Vec<CoreTuple> = members
        .iter()
        .filter(|m| m.rank == low)
        .map(|m| m.tuple.clone())
        .collect();
    minimal.sort();
    Ok(AllowedComponent {
        w,
        members,
        minimal,
        truncated,
    })
}

/// Whether equivalent blocks stay in the same family of covering groups or
/// cross between the symmetric and alternating covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossoverPairing {
    SameFamily,
    Crossover,
}

pub fn crossover_pairing(nu: &StrictPartition, mu: &StrictPartition) -> CrossoverPairing {
    if parity(nu) == parity(mu) {
        CrossoverPairing::SameFamily
    } else {
        CrossoverPairing::Crossover
    }
}
