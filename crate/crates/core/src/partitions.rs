//! Strict and p-strict partitions, p-bar residues, content and parity.
//!
//! Every other module works on these types. Parts are stored as weakly
//! decreasing `u32` vectors; the empty partition is valid everywhere.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime `p`, together with `t = (p - 1) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Modulus {
    pub fn new(p: u32) -> Result<Self> {
        if p % 2 == 1 && is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    /// The modulus whose `t` equals `t`, i.e. `p = 2t + 1`.
    pub fn from_t(t: usize) -> Result<Self> {
        let p = u32::try_from(2 * t + 1).map_err(|_| Error::InvalidModulus(u32::MAX))?;
        Modulus::new(p)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `t = (p - 1) / 2`, the largest p-bar residue.
    pub fn t(self) -> usize {
        (self.0 as usize - 1) / 2
    }

    /// The p-bar residue of `m`: `m mod p` folded onto `0..=t`.
    pub fn bar_residue(self, m: u32) -> u32 {
        let r = m % self.0;
        if r <= (self.0 - 1) / 2 {
            r
        } else {
            self.0 - 1 - r
        }
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Modulus::new(p)
    }
}

impl From<Modulus> for u32 {
    fn from(p: Modulus) -> u32 {
        p.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// p-bar residue of `m` for an odd prime `p`.
pub fn pbar_residue(m: u32, p: u32) -> Result<u32> {
    Ok(Modulus::new(p)?.bar_residue(m))
}

pub(crate) fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in parts.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Parses comma-separated parts such as `12,7,6,2,1`. The empty string (and
/// `()`) is the empty partition. Parts are sorted into decreasing order.
pub fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let s = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut parts = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad part {x:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

fn weakly_decreasing_positive(parts: &[u32]) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&x| x > 0)
}

/// Whether `parts` is a p-strict partition: weakly decreasing, positive, and
/// repeated only in multiples of `p`.
pub(crate) fn is_p_strict_parts(parts: &[u32], p: Modulus) -> bool {
    weakly_decreasing_positive(parts)
        && parts
            .windows(2)
            .all(|w| w[0] != w[1] || w[0] % p.get() == 0)
}

pub(crate) fn is_strict_parts(parts: &[u32]) -> bool {
    parts.windows(2).all(|w| w[0] > w[1]) && parts.iter().all(|&x| x > 0)
}

/// A partition with distinct parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if is_strict_parts(&parts) {
            Ok(StrictPartition(parts))
        } else {
            Err(Error::InvalidPartition {
                parts,
                reason: "parts must be positive and strictly decreasing".into(),
            })
        }
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn rank(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `k` (0-indexed), or zero past the end.
    pub fn part(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn with_modulus(&self, p: Modulus) -> PStrictPartition {
        PStrictPartition {
            p,
            parts: self.0.clone(),
        }
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        StrictPartition::new(parts)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

/// A partition whose only repeated parts are multiples of `p`. The set of
/// these is the domain `D` on which the Scopes involutions act.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PStrictPartition {
    p: Modulus,
    parts: Vec<u32>,
}

/// Serialized as its parts alone; the modulus travels alongside.
impl Serialize for PStrictPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl PStrictPartition {
    pub fn new(parts: Vec<u32>, p: Modulus) -> Result<Self> {
        if is_p_strict_parts(&parts, p) {
            Ok(PStrictPartition { p, parts })
        } else {
            Err(Error::InvalidPartition {
                parts,
                reason: format!("not {p}-strict"),
            })
        }
    }

    pub fn empty(p: Modulus) -> Self {
        PStrictPartition {
            p,
            parts: Vec::new(),
        }
    }

    pub(crate) fn from_parts_unchecked(mut parts: Vec<u32>, p: Modulus) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert!(is_p_strict_parts(&parts, p), "{parts:?} not {p}-strict");
        PStrictPartition { p, parts }
    }

    pub fn modulus(&self) -> Modulus {
        self.p
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn rank(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, k: usize) -> u32 {
        self.parts.get(k).copied().unwrap_or(0)
    }

    pub fn is_strict(&self) -> bool {
        is_strict_parts(&self.parts)
    }

    pub fn to_strict(&self) -> Option<StrictPartition> {
        self.is_strict()
            .then(|| StrictPartition(self.parts.clone()))
    }
}

impl fmt::Display for PStrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

impl fmt::Debug for PStrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)?;
        write!(f, "_{}", self.p)
    }
}

/// Box counts `(γ_0, …, γ_t)` per p-bar residue. The modulus is implied by
/// the length: `p = 2 * len - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Content(pub Vec<u32>);

impl Content {
    pub fn zero(p: Modulus) -> Self {
        Content(vec![0; p.t() + 1])
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Total number of boxes.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

fn add_row_content(counts: &mut [u32], row_len: u32, p: Modulus) {
    for col in 0..row_len {
        counts[p.bar_residue(col) as usize] += 1;
    }
}

/// Content of a p-strict partition. The box in column `s` (1-indexed) has
/// residue `bar_residue(s - 1)`, so each row reads `0, 1, …, t, …, 1, 0, 0, 1, …`.
pub fn content(lambda: &PStrictPartition) -> Content {
    let p = lambda.p;
    let mut counts = vec![0; p.t() + 1];
    for &row in &lambda.parts {
        add_row_content(&mut counts, row, p);
    }
    Content(counts)
}

pub(crate) fn parity_of_parts(parts: &[u32]) -> u8 {
    let rank: u64 = parts.iter().map(|&x| x as u64).sum();
    ((rank + parts.len() as u64) % 2) as u8
}

/// `ε(λ) = (|λ| + number of parts) mod 2`.
pub fn parity(lambda: &StrictPartition) -> u8 {
    parity_of_parts(&lambda.0)
}

/// `parity(ρ) + w (mod 2)`. Lowering a bead or removing a pair summing to
/// `p` flips the parity, but removing a part equal to `p` does not, so this
/// is the parity of the members of `ρ^w` with no part divisible by `p`; in
/// general `parity(λ) ≡ block_parity(ρ, w) + #{parts of λ divisible by p}`.
pub fn block_parity(rho: &StrictPartition, w: u32) -> u8 {
    parity(rho) ^ (w % 2) as u8
}

/// Consecutive parts (and the last part against zero) differ by at most `p`,
/// and by exactly `p` only when the larger one is not divisible by `p`.
pub fn is_p_restricted(lambda: &PStrictPartition) -> bool {
    let p = lambda.p.get();
    (0..lambda.len()).all(|k| {
        let (a, b) = (lambda.part(k), lambda.part(k + 1));
        let gap = a - b;
        gap < p || (gap == p && a % p != 0)
    })
}

/// All strict partitions of `n`, in lexicographically decreasing order.
pub fn enumerate_strict(n: u32) -> Vec<StrictPartition> {
    fn go(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
        if remaining == 0 {
            out.push(StrictPartition(prefix.clone()));
            return;
        }
        for first in (1..=remaining.min(max_part)).rev() {
            // the rest must fit in distinct parts below `first`
            let room = first as u64 * (first as u64 - 1) / 2;
            if room < (remaining - first) as u64 {
                break;
            }
            prefix.push(first);
            go(remaining - first, first - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All p-strict partitions of `n`, in lexicographically decreasing order.
pub fn enumerate_p_strict(n: u32, p: Modulus) -> Vec<PStrictPartition> {
    fn go(
        remaining: u32,
        max_part: u32,
        p: Modulus,
        prefix: &mut Vec<u32>,
        out: &mut Vec<PStrictPartition>,
    ) {
        if remaining == 0 {
            out.push(PStrictPartition {
                p,
                parts: prefix.clone(),
            });
            return;
        }
        for first in (1..=remaining.min(max_part)).rev() {
            prefix.push(first);
            let next_max = if first % p.get() == 0 {
                first
            } else {
                first - 1
            };
            go(remaining - first, next_max, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, p, &mut Vec::new(), &mut out);
    out
}

/// A random element of `D` with rank at most `max_rank`: distinct parts off
/// runner 0 plus multiples of `p` with arbitrary multiplicity.
pub fn sample_p_strict<R: Rng + ?Sized>(
    rng: &mut R,
    p: Modulus,
    max_rank: u32,
) -> PStrictPartition {
    let target = rng.gen_range(0..=max_rank);
    let mut multiplicity: BTreeMap<u32, u32> = BTreeMap::new();
    let mut rank = 0;
    let mut misses = 0;
    while rank < target && misses < 64 {
        let x = rng.gen_range(1..=target - rank);
        let taken = multiplicity.get(&x).copied().unwrap_or(0);
        if taken > 0 && x % p.get() != 0 {
            misses += 1;
            continue;
        }
        *multiplicity.entry(x).or_default() += 1;
        rank += x;
    }
    let parts = multiplicity
        .iter()
        .rev()
        .flat_map(|(&x, &m)| std::iter::repeat_n(x, m as usize))
        .collect();
    PStrictPartition::from_parts_unchecked(parts, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> Modulus {
        Modulus::new(5).unwrap()
    }

    #[test]
    fn modulus_validation() {
        assert!(Modulus::new(3).is_ok());
        assert!(Modulus::new(11).is_ok());
        for bad in [0, 1, 2, 4, 9, 15] {
            assert_eq!(Modulus::new(bad), Err(Error::InvalidModulus(bad)));
        }
        assert_eq!(p5().t(), 2);
    }

    #[test]
    fn residues_for_p5() {
        let got: Vec<u32> = (0..10).map(|m| pbar_residue(m, 5).unwrap()).collect();
        assert_eq!(got, vec![0, 1, 2, 1, 0, 0, 1, 2, 1, 0]);
        for p in [3, 5, 7, 11] {
            assert_eq!(pbar_residue(0, p).unwrap(), 0);
            assert_eq!(pbar_residue(p - 1, p).unwrap(), 0);
        }
        assert!(pbar_residue(3, 4).is_err());
    }

    #[test]
    fn content_examples() {
        let p = p5();
        let rho = PStrictPartition::new(vec![12, 7, 6, 2, 1], p).unwrap();
        // row by row: (5,5,2) + (3,3,1) + (3,2,1) + (1,1,0) + (1,0,0)
        assert_eq!(content(&rho), Content(vec![13, 11, 4]));
        assert_eq!(content(&PStrictPartition::empty(p)), Content(vec![0, 0, 0]));
        let five = PStrictPartition::new(vec![5], p).unwrap();
        assert_eq!(content(&five), Content(vec![2, 2, 1]));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(
            parity(&StrictPartition::new(vec![12, 7, 6, 2, 1]).unwrap()),
            1
        );
        assert_eq!(parity(&StrictPartition::empty()), 0);
        assert_eq!(parity(&StrictPartition::new(vec![1]).unwrap()), 0);
        let rho = StrictPartition::new(vec![12, 7, 6, 2, 1]).unwrap();
        assert_eq!(block_parity(&rho, 2), 1);
        assert_eq!(block_parity(&rho, 1), 0);
        assert_eq!(block_parity(&rho, 0), parity(&rho));
    }

    #[test]
    fn restricted_examples() {
        let p = p5();
        assert!(is_p_restricted(
            &PStrictPartition::new(vec![3, 2, 1], p).unwrap()
        ));
        assert!(!is_p_restricted(
            &PStrictPartition::new(vec![12, 1], p).unwrap()
        ));
        assert!(is_p_restricted(&PStrictPartition::empty(p)));
        // a gap of exactly p is fine only below a non-multiple of p
        assert!(is_p_restricted(
            &PStrictPartition::new(vec![6, 1], p).unwrap()
        ));
        assert!(!is_p_restricted(
            &PStrictPartition::new(vec![5], p).unwrap()
        ));
        assert!(is_p_restricted(
            &PStrictPartition::new(vec![5, 5, 1], p).unwrap()
        ));
    }

    #[test]
    fn strict_enumeration() {
        let six: Vec<Vec<u32>> = enumerate_strict(6).into_iter().map(|x| x.0).collect();
        assert_eq!(six, vec![vec![6], vec![5, 1], vec![4, 2], vec![3, 2, 1]]);
        assert_eq!(enumerate_strict(0), vec![StrictPartition::empty()]);
        let three: Vec<Vec<u32>> = enumerate_strict(3).into_iter().map(|x| x.0).collect();
        assert_eq!(three, vec![vec![3], vec![2, 1]]);
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(StrictPartition::new(vec![2, 2]).is_err());
        assert!(StrictPartition::new(vec![1, 2]).is_err());
        assert!(StrictPartition::new(vec![3, 0]).is_err());
        assert!(PStrictPartition::new(vec![5, 5], p5()).is_ok());
        assert!(PStrictPartition::new(vec![4, 4], p5()).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_parts("12,7,6,2,1").unwrap(), vec![12, 7, 6, 2, 1]);
        assert_eq!(parse_parts("").unwrap(), Vec::<u32>::new());
        assert_eq!(parse_parts("()").unwrap(), Vec::<u32>::new());
        assert_eq!(parse_parts("1, 3").unwrap(), vec![3, 1]);
        assert!(parse_parts("1,x").is_err());
    }
}
