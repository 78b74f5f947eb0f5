//! Reducing cores along w-allowed actions, the RoCK core, and the sharp rank
//! bound for irreducible blocks.

use serde::{Deserialize, Serialize};

use crate::abacus::{rank_from_tuple, CoreTuple};
use crate::error::{Error, Result};
use crate::lie::{coords_from_tuple, level, tuple_from_coords, CoordVector};
use crate::partitions::Modulus;
use crate::scopes::{apply_k_tuple, is_w_allowed};

/// Which part of the reduction produced a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Push every non-empty pair to `ε = 0` and to the front.
    NormalizeSigns,
    /// Lower every pair by one when all of them exceed the weight.
    Decrement,
    /// Lower the tall side of a wide gap by one.
    CloseGap,
    /// Any remaining rank-decreasing allowed action.
    Sweep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub i: usize,
    /// The tuple after applying `K_i`.
    pub tuple: CoreTuple,
    pub rank: u64,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: CoreTuple,
    pub w: u32,
    pub steps: Vec<ReductionStep>,
    pub end: CoreTuple,
    pub end_rank: u64,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Whether `K_i` is w-allowed at `c` and strictly lowers the rank.
fn lowers(i: usize, c: &CoreTuple, w: u32) -> Option<CoreTuple> {
    let next = apply_k_tuple(i, c).ok()?;
    (is_w_allowed(i, c, w).ok()? && rank_from_tuple(&next) < rank_from_tuple(c)).then_some(next)
}

/// Replays a plan, giving up as soon as a step is not a rank-decreasing
/// allowed action.
struct Plan {
    cur: CoreTuple,
    w: u32,
    rule: Rule,
    steps: Vec<ReductionStep>,
}

impl Plan {
    fn new(c: &CoreTuple, w: u32, rule: Rule) -> Self {
        Plan {
            cur: c.clone(),
            w,
            rule,
            steps: Vec::new(),
        }
    }

    fn act(&mut self, i: usize) -> Option<()> {
        let next = lowers(i, &self.cur, self.w)?;
        self.steps.push(ReductionStep {
            i,
            rank: rank_from_tuple(&next),
            tuple: next.clone(),
            rule: self.rule,
        });
        self.cur = next;
        Some(())
    }

    /// Moves the pair at `from` to `to < from` through `K_{from-1}, …, K_to`.
    fn pull(&mut self, from: usize, to: usize) -> Option<()> {
        (to..from).rev().try_for_each(|k| self.act(k))
    }

    /// Moves the pair at `from` to `to > from` through `K_from, …, K_{to-1}`.
    fn push(&mut self, from: usize, to: usize) -> Option<()> {
        (from..to).try_for_each(|k| self.act(k))
    }

    fn finish(self) -> Option<Vec<ReductionStep>> {
        (!self.steps.is_empty()).then_some(self.steps)
    }
}

fn positive_ells(c: &CoreTuple) -> Vec<u32> {
    c.pairs()
        .iter()
        .map(|&(l, _)| l)
        .filter(|&l| l > 0)
        .collect()
}

fn normalize_into(plan: &mut Plan) -> Option<()> {
    let t = plan.cur.t();
    loop {
        // Bring each ε = 0 pair in front of every ε = 1 pair.
        while let Some((k, j)) = (1..=t)
            .find(|&k| plan.cur.eps(k) == 1)
            .and_then(|k| Some((k, (k + 1..=t).find(|&j| plan.cur.eps(j) == 0)?)))
        {
            plan.pull(j, k)?;
        }
        // Carry the last non-empty ε = 1 pair to the end and flip it.
        let Some(s) = (1..=t)
            .rev()
            .find(|&s| plan.cur.eps(s) == 1 && plan.cur.ell(s) > 0)
        else {
            return Some(());
        };
        plan.push(s, t)?;
        plan.act(t)?;
    }
}

/// Rewrites a core whose pairs are all empty or of size at least `w` into the
/// shape `((ℓ'_1, 0), …, (ℓ'_r, 0), (0, 1), …, (0, 1))`.
///
/// Returns `None` when the hypothesis fails, when the core already has that
/// shape, or when some step is not a rank-decreasing allowed action.
pub fn normalize_signs(c: &CoreTuple, w: u32) -> Option<Vec<ReductionStep>> {
    if positive_ells(c).iter().any(|&l| l < w) {
        return None;
    }
    let mut plan = Plan::new(c, w, Rule::NormalizeSigns);
    normalize_into(&mut plan)?;
    plan.finish()
}

/// Lowers every non-empty pair by one, assuming each exceeds `w`: normalise
/// signs, rotate each pair to the front and apply `K_0`, then normalise again.
pub fn decrement_all(c: &CoreTuple, w: u32) -> Option<Vec<ReductionStep>> {
    let ells = positive_ells(c);
    if ells.is_empty() || ells.iter().any(|&l| l <= w) {
        return None;
    }
    let mut plan = Plan::new(c, w, Rule::Decrement);
    normalize_into(&mut plan)?;
    for k in 1..=ells.len() {
        plan.pull(k, 1)?;
        plan.act(0)?;
    }
    normalize_into(&mut plan)?;
    plan.finish()
}

/// The widest gap `m_{j+1} - m_j` between consecutive sorted positive
/// `ℓ`-values, returned as `(m_j, m_{j+1})`. Ties go to the smallest `m_j`.
pub fn widest_gap(c: &CoreTuple) -> Option<(u32, u32)> {
    let mut m = positive_ells(c);
    m.sort_unstable();
    m.windows(2)
        .map(|w| (w[0], w[1]))
        .fold(None, |best: Option<(u32, u32)>, (a, b)| match best {
            Some((x, y)) if y - x >= b - a => best,
            _ => Some((a, b)),
        })
}

/// When the widest gap is at least `max(w, 1)`, moves every pair above the
/// gap to the front with `ε = 0` and lowers each of them by one.
pub fn close_gap(c: &CoreTuple, w: u32) -> Option<Vec<ReductionStep>> {
    let (low, high) = widest_gap(c)?;
    if high - low < w.max(1) {
        return None;
    }
    let t = c.t();
    let runner = |k: usize, cur: &CoreTuple| {
        if cur.eps(k) == 0 {
            k
        } else {
            2 * t + 1 - k
        }
    };
    let mut plan = Plan::new(c, w, Rule::CloseGap);
    let mut placed = 0;
    loop {
        // First unplaced tall pair in runner order.
        let cur = plan.cur.clone();
        let Some(k) = (placed + 1..=t)
            .filter(|&k| cur.ell(k) >= high)
            .min_by_key(|&k| runner(k, &cur))
        else {
            break;
        };
        let target = placed + 1;
        if cur.eps(k) == 1 {
            plan.push(k, t)?;
            plan.act(t)?;
            plan.pull(t, target)?;
        } else {
            plan.pull(k, target)?;
        }
        placed += 1;
    }
    for k in 1..=placed {
        plan.pull(k, 1)?;
        plan.act(0)?;
    }
    plan.finish()
}

/// True when no `K_i` is both w-allowed at `c` and rank-decreasing.
pub fn is_irreducible(c: &CoreTuple, w: u32) -> bool {
    (0..=c.t()).all(|i| lowers(i, c, w).is_none())
}

/// Reduces `c` by w-allowed actions until no rank-decreasing one remains.
///
/// The structured moves are tried in a fixed order (sign normalisation,
/// uniform decrement, gap closing); whenever none of them applies, the
/// lowest-index rank-decreasing allowed action is taken instead. Every step
/// lowers the rank, so this terminates.
pub fn reduce_core(c: &CoreTuple, w: u32) -> ReductionTrace {
    let mut cur = c.clone();
    let mut steps = Vec::new();
    loop {
        let planned = normalize_signs(&cur, w)
            .or_else(|| decrement_all(&cur, w))
            .or_else(|| close_gap(&cur, w));
        let batch = match planned {
            Some(batch) => batch,
            None => match (0..=cur.t()).find_map(|i| lowers(i, &cur, w).map(|n| (i, n))) {
                Some((i, next)) => vec![ReductionStep {
                    i,
                    rank: rank_from_tuple(&next),
                    tuple: next,
                    rule: Rule::Sweep,
                }],
                None => break,
            },
        };
        cur = batch.last().expect("plans are non-empty").tuple.clone();
        steps.extend(batch);
    }
    ReductionTrace {
        start: c.clone(),
        w,
        steps,
        end_rank: rank_from_tuple(&cur),
        end: cur,
    }
}

/// The RoCK core `ρ_w`: `ℓ_i = w + (i-1)(w-1)`, all `ε_i = 0`. For `w = 0`
/// this is the empty core.
pub fn rock_core(p: Modulus, w: u32) -> CoreTuple {
    if w == 0 {
        return CoreTuple::empty(p);
    }
    CoreTuple::from_pairs_unchecked((0..p.t() as u32).map(|k| (w + k * (w - 1), 0)).collect())
}

/// The largest rank of an irreducible block of weight `w`:
/// `pw + (p(w-1)/2 + 1) · Σ_{i=1}^t (i²(w-1) + i)`.
pub fn donovan_bound(p: Modulus, w: u32) -> Result<u64> {
    if w == 0 {
        return Err(Error::Precondition("the rank bound needs w >= 1".into()));
    }
    let (p, w) = (p.get() as u64, w as u64);
    let s: u64 = (1..=(p - 1) / 2).map(|i| i * i * (w - 1) + i).sum();
    Ok(p * w + (p * (w - 1) + 2) * s / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub tuple: CoreTuple,
    pub rank: u64,
    pub level: i64,
}

/// All irreducible cores of level at most `level(ρ_w) + w`, sorted by rank
/// and then by tuple. `budget` caps the number of cores examined.
pub fn enumerate_representatives(p: Modulus, w: u32, budget: usize) -> Result<Vec<Representative>> {
    let bound = level(&coords_from_tuple(&rock_core(p, w))) + w as i64;
    // n(n-1)/2 <= bound  <=>  1 - n_max <= n <= n_max.
    let mut n_max = 0i64;
    while (n_max + 1) * n_max / 2 <= bound {
        n_max += 1;
    }
    let mut search = Search {
        t: p.t(),
        n_max,
        w,
        budget,
        seen: 0,
        coords: Vec::with_capacity(p.t()),
        out: Vec::new(),
    };
    search.dfs(bound)?;
    let mut out = search.out;
    out.sort_by(|a, b| (a.rank, &a.tuple).cmp(&(b.rank, &b.tuple)));
    Ok(out)
}

/// Depth-first walk over coordinate vectors whose level fits the bound.
struct Search {
    t: usize,
    n_max: i64,
    w: u32,
    budget: usize,
    seen: usize,
    coords: Vec<i64>,
    out: Vec<Representative>,
}

impl Search {
    fn dfs(&mut self, room: i64) -> Result<()> {
        if self.coords.len() == self.t {
            self.seen += 1;
            if self.seen > self.budget {
                return Err(Error::ResourceLimit(format!(
                    "representative search exceeds {} cores",
                    self.budget
                )));
            }
            let v = CoordVector(self.coords.clone());
            let c = tuple_from_coords(&v)?;
            if is_irreducible(&c, self.w) {
                self.out.push(Representative {
                    rank: rank_from_tuple(&c),
                    level: level(&v),
                    tuple: c,
                });
            }
            return Ok(());
        }
        for n in 1 - self.n_max..=self.n_max {
            let cost = n * (n - 1) / 2;
            if cost <= room {
                self.coords.push(n);
                self.dfs(room - cost)?;
                self.coords.pop();
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32) -> Modulus {
        Modulus::new(p).unwrap()
    }

    fn tup(s: &str) -> CoreTuple {
        s.parse().unwrap()
    }

    fn replay(tr: &ReductionTrace) {
        let mut cur = tr.start.clone();
        for s in &tr.steps {
            assert!(is_w_allowed(s.i, &cur, tr.w).unwrap());
            let next = apply_k_tuple(s.i, &cur).unwrap();
            assert_eq!(next, s.tuple);
            assert!(rank_from_tuple(&next) < rank_from_tuple(&cur));
            assert_eq!(s.rank, rank_from_tuple(&next));
            cur = next;
        }
        assert_eq!(cur, tr.end);
        assert!(is_irreducible(&tr.end, tr.w));
    }

    #[test]
    fn rock_cores() {
        assert_eq!(rock_core(m(5), 2), tup("2:0,3:0"));
        assert_eq!(rock_core(m(5), 1), tup("1:0,1:0"));
        assert_eq!(rank_from_tuple(&rock_core(m(5), 1)), 3);
        for w in 0..6 {
            assert_eq!(rock_core(m(3), w).pairs().len(), 1);
        }
        assert_eq!(rock_core(m(7), 0), CoreTuple::empty(m(7)));
    }

    #[test]
    fn bound_values() {
        assert_eq!(donovan_bound(m(5), 2).unwrap(), 38);
        assert_eq!(donovan_bound(m(5), 1).unwrap(), 8);
        assert!(donovan_bound(m(5), 0).is_err());
        for p in [3, 5, 7, 11] {
            for w in 1..8 {
                let r = rock_core(m(p), w);
                assert_eq!(
                    donovan_bound(m(p), w).unwrap(),
                    rank_from_tuple(&r) + (p * w) as u64
                );
                assert!(is_irreducible(&r, w), "p={p} w={w}");
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&tup("2:0,3:0"), 2));
        assert!(!is_irreducible(&tup("3:0,0:1"), 2));
        assert!(is_irreducible(&CoreTuple::empty(m(5)), 4));
        assert!(reduce_core(&tup("2:0,3:0"), 2).is_empty());
        for w in 0..5 {
            assert!(reduce_core(&tup("0:1,0:1"), w).is_empty());
        }
    }

    #[test]
    fn decrement_round_lowers_each_pair() {
        for (s, w, want) in [
            ("3:0,4:0", 2, "2:0,3:0"),
            ("5:0,9:0,4:0", 3, "4:0,8:0,3:0"),
            ("2:0,2:0", 1, "1:0,1:0"),
        ] {
            let steps = decrement_all(&tup(s), w).unwrap();
            assert_eq!(steps.last().unwrap().tuple, tup(want), "{s}");
        }
        assert!(decrement_all(&tup("2:0,3:0"), 2).is_none());
    }

    #[test]
    fn normalize_shape() {
        let steps = normalize_signs(&tup("3:1,0:1,4:1"), 2).unwrap();
        let end = &steps.last().unwrap().tuple;
        let nonzero: Vec<_> = end.pairs().iter().filter(|p| p.0 > 0).collect();
        assert!(nonzero.iter().all(|p| p.1 == 0));
        let mut ls: Vec<u32> = nonzero.iter().map(|p| p.0).collect();
        ls.sort();
        assert_eq!(ls, vec![3, 4]);
        assert!(end.pairs()[..2].iter().all(|p| p.0 > 0));
    }

    #[test]
    fn traces_replay_and_meet_necessary_conditions() {
        for p in [3u32, 5, 7] {
            let t = m(p).t();
            for w in 0..5u32 {
                // A small box of tuples.
                let mut stack = vec![vec![]];
                while let Some(v) = stack.pop() {
                    if v.len() == t {
                        let c = CoreTuple::new(v).unwrap();
                        let tr = reduce_core(&c, w);
                        replay(&tr);
                        let mut ls = positive_ells(&tr.end);
                        ls.sort();
                        if let Some(&min) = ls.first() {
                            assert!(min <= w, "{c:?} -> {:?}", tr.end);
                        }
                        for g in ls.windows(2) {
                            assert!(g[1] - g[0] < w, "{c:?} -> {:?}", tr.end);
                        }
                        assert!(tr.end_rank <= rank_from_tuple(&rock_core(m(p), w)));
                        continue;
                    }
                    for l in 0..=6u32 {
                        for e in 0..2u8 {
                            if l == 0 && e == 0 {
                                continue;
                            }
                            let mut v2 = v.clone();
                            v2.push((l, e));
                            stack.push(v2);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn representatives() {
        let reps = enumerate_representatives(m(5), 1, 1 << 20).unwrap();
        let tuples: Vec<_> = reps.iter().map(|r| r.tuple.clone()).collect();
        assert!(tuples.contains(&tup("1:0,1:0")));
        assert!(reps
            .iter()
            .all(|r| r.tuple.pairs().iter().all(|p| p.0 <= 1)));
        assert!(reps.windows(2).all(|x| x[0].rank <= x[1].rank));
        assert!(enumerate_representatives(m(7), 3, 10).is_err());
    }
}
