//! Path counts between Young diagrams of strict partitions, brute-force
//! checks of w-compatible pairs, and the multiplicity formulas that feed
//! the equivalence between spin blocks.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::abacus::{is_core, pbar_core};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_strict, parity, Modulus, PStrictPartition, StrictPartition};
use crate::scopes::apply_k;

/// Shapes reachable from `parts` by taking one box off a row while staying
/// strict.
fn strict_predecessors(parts: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    (0..parts.len()).filter_map(move |r| {
        let below = parts.get(r + 1).copied().unwrap_or(0);
        // row r can shrink if it stays above the next row (or vanishes as the last row)
        if parts[r] - 1 > below || (parts[r] == 1 && r + 1 == parts.len()) {
            let mut next = parts.to_vec();
            next[r] -= 1;
            if next[r] == 0 {
                next.pop();
            }
            Some(next)
        } else {
            None
        }
    })
}

fn contains(big: &[u32], small: &[u32]) -> bool {
    small.len() <= big.len() && small.iter().zip(big).all(|(a, b)| a <= b)
}

/// Number of ways to go from `lambda` down to `chi` one box at a time
/// with every intermediate shape strict. Zero unless `chi ⊆ lambda`.
pub fn count_paths(lambda: &StrictPartition, chi: &StrictPartition) -> u128 {
    fn go(cur: Vec<u32>, target: &[u32], memo: &mut HashMap<Vec<u32>, u128>) -> u128 {
        if cur == target {
            return 1;
        }
        if let Some(&n) = memo.get(&cur) {
            return n;
        }
        let mut total = 0;
        for next in strict_predecessors(&cur) {
            if contains(&next, target) {
                total += go(next, target, memo);
            }
        }
        memo.insert(cur, total);
        total
    }
    if !lambda.contains(chi) {
        return 0;
    }
    go(lambda.parts().to_vec(), chi.parts(), &mut HashMap::new())
}

/// Path counts from `lambda` to every strict partition of rank `m` below it.
fn path_counts_to_rank(lambda: &StrictPartition, m: u32) -> HashMap<Vec<u32>, u128> {
    let mut layer: HashMap<Vec<u32>, u128> = HashMap::from([(lambda.parts().to_vec(), 1)]);
    for _ in m..lambda.rank() {
        let mut next: HashMap<Vec<u32>, u128> = HashMap::new();
        for (shape, n) in &layer {
            for pred in strict_predecessors(shape) {
                *next.entry(pred).or_default() += n;
            }
        }
        layer = next;
    }
    layer
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// `α!` for `i ≠ 0` and `α! / 2^{(α-1)/2}` for `i = 0`, where `α = |ν| - |μ|`
/// and `μ = K_i(ν)` is the smaller core.
pub fn count_paths_closed(
    nu: &StrictPartition,
    mu: &StrictPartition,
    i: usize,
    p: Modulus,
) -> Result<u128> {
    let image = apply_k(i, &nu.with_modulus(p))?;
    if image.parts() != mu.parts() {
        return Err(Error::Precondition(format!(
            "{mu} is not K_{i}({nu}) at p={p}"
        )));
    }
    if mu.rank() >= nu.rank() {
        return Err(Error::Precondition(format!(
            "K_{i} does not lower the rank of {nu}"
        )));
    }
    let alpha = nu.rank() - mu.rank();
    Ok(if i == 0 {
        factorial(alpha) >> ((alpha - 1) / 2)
    } else {
        factorial(alpha)
    })
}

/// Moves needed to insert `n_pairs` pairs of beads on runners `i, p-i` of a
/// core with `ℓ_i` beads: `n² + ℓ_i n`.
pub fn pair_insertion_cost(n_pairs: u64, ell: u64) -> u64 {
    n_pairs * n_pairs + ell * n_pairs
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFailure {
    pub lambda: StrictPartition,
    pub chi: StrictPartition,
    pub count: u128,
    pub expected: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCondition {
    /// Pairs `(λ, χ)` compared.
    pub checked: u64,
    /// The first failures found, at most [`MAX_RECORDED_FAILURES`].
    pub failures: Vec<PathFailure>,
    pub total_failures: u64,
}

pub const MAX_RECORDED_FAILURES: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub nu: StrictPartition,
    pub mu: StrictPartition,
    pub i: usize,
    pub w: u32,
    /// `K_i` maps the strict partitions of block `ν^w` onto those of `μ^w`.
    pub cond1: bool,
    /// Paths from `λ` to `χ` exist only for `χ = K_i(λ)`, and then as many
    /// as from `ν` to `μ`.
    pub cond2: PathCondition,
    /// `ε(λ) + ε(K_i λ) ≡ ε(ν) + ε(μ)` throughout.
    pub cond3: bool,
    pub beta: u128,
    pub j_n: usize,
    pub j_m: usize,
    /// Wall-clock seconds, filled in by callers that time the check.
    pub elapsed: Option<f64>,
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.cond1 && self.cond2.total_failures == 0 && self.cond3
    }
}

/// The strict partitions of rank `|core| + p·w` with the given core.
pub fn strict_block_members(core: &StrictPartition, w: u32, p: Modulus) -> Vec<StrictPartition> {
    enumerate_strict(core.rank() + p.get() * w)
        .into_iter()
        .filter(|lam| pbar_core(&lam.with_modulus(p)).0 == *core)
        .collect()
}

/// Checks the three conditions for `(ν, K_i(ν))` at weight `w` by
/// enumerating both blocks. `max_rank` caps `|ν| + p·w`.
pub fn verify_w_compatible(
    nu: &StrictPartition,
    i: usize,
    w: u32,
    p: Modulus,
    max_rank: u32,
) -> Result<CompatibilityReport> {
    if !is_core(nu, p) {
        return Err(Error::NotACore(format!("{nu} at p={p}")));
    }
    let mu = apply_k(i, &nu.with_modulus(p))?
        .to_strict()
        .expect("K_i keeps cores strict");
    let n = nu.rank() + p.get() * w;
    if n > max_rank {
        return Err(Error::ResourceLimit(format!(
            "block rank {n} exceeds the budget {max_rank}"
        )));
    }
    if mu == *nu {
        return Ok(CompatibilityReport {
            nu: nu.clone(),
            mu,
            i,
            w,
            cond1: true,
            cond2: PathCondition {
                checked: 0,
                failures: Vec::new(),
                total_failures: 0,
            },
            cond3: true,
            beta: 1,
            j_n: 0,
            j_m: 0,
            elapsed: None,
        });
    }
    if mu.rank() > nu.rank() {
        return Err(Error::Precondition(format!(
            "K_{i} raises the rank of {nu}; start from the larger core"
        )));
    }
    let m = mu.rank() + p.get() * w;
    let j_n = strict_block_members(nu, w, p);
    let j_m = strict_block_members(&mu, w, p);
    let j_m_set: BTreeSet<&StrictPartition> = j_m.iter().collect();

    let image = |lam: &StrictPartition| -> Option<StrictPartition> {
        apply_k(i, &lam.with_modulus(p))
            .ok()
            .and_then(|x: PStrictPartition| x.to_strict())
    };

    let images: Vec<Option<StrictPartition>> = j_n.iter().map(image).collect();
    let image_set: BTreeSet<&StrictPartition> = images.iter().flatten().collect();
    let cond1 = images
        .iter()
        .all(|x| x.as_ref().is_some_and(|x| j_m_set.contains(x)))
        && image_set == j_m_set;

    let beta = count_paths(nu, &mu);
    let mut cond2 = PathCondition {
        checked: 0,
        failures: Vec::new(),
        total_failures: 0,
    };
    for (lam, k_lam) in j_n.iter().zip(&images) {
        let counts = path_counts_to_rank(lam, m);
        for chi in &j_m {
            let count = counts.get(chi.parts()).copied().unwrap_or(0);
            let expected = if k_lam.as_ref() == Some(chi) { beta } else { 0 };
            cond2.checked += 1;
            if count != expected {
                cond2.total_failures += 1;
                if cond2.failures.len() < MAX_RECORDED_FAILURES {
                    cond2.failures.push(PathFailure {
                        lambda: lam.clone(),
                        chi: chi.clone(),
                        count,
                        expected,
                    });
                }
            }
        }
    }

    let target = (parity(nu) + parity(&mu)) % 2;
    let cond3 = j_n.iter().zip(&images).all(|(lam, k_lam)| match k_lam {
        Some(k) => (parity(lam) + parity(k)) % 2 == target,
        None => false,
    });

    Ok(CompatibilityReport {
        nu: nu.clone(),
        mu,
        i,
        w,
        cond1,
        cond2,
        cond3,
        beta,
        j_n: j_n.len(),
        j_m: j_m.len(),
        elapsed: None,
    })
}

/// The covering-group family a multiplicity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Symmetric,
    Alternating,
}

/// `r(θ_λ, θ_χ) = 2^{(α - ε(α) - ε(λ) - ε(χ))/2} β` for `α ≥ 2`; for `α = 1`
/// the only case is `β = 1` with multiplicity 1.
pub fn branching_multiplicity(
    alpha: u32,
    eps_alpha: u8,
    eps_lambda: u8,
    eps_chi: u8,
    beta: u128,
) -> Result<u128> {
    if eps_alpha as u32 != alpha % 2 || eps_lambda > 1 || eps_chi > 1 {
        return Err(Error::InconsistentParities(format!(
            "ε(α)={eps_alpha} for α={alpha}, ε(λ)={eps_lambda}, ε(χ)={eps_chi}"
        )));
    }
    if alpha == 0 {
        return Err(Error::Precondition("α must be positive".into()));
    }
    if alpha == 1 {
        return if beta == 1 {
            Ok(1)
        } else {
            Err(Error::Precondition(format!(
                "α = 1 forces β = 1, got {beta}"
            )))
        };
    }
    let top = alpha - eps_alpha as u32;
    let drop = eps_lambda as u32 + eps_chi as u32;
    if !(top - drop).is_multiple_of(2) {
        return Err(Error::InconsistentParities(format!(
            "exponent ({top} - {drop})/2 is not an integer"
        )));
    }
    Ok(beta << ((top - drop) / 2))
}

/// The same multiplicity for the cover of the alternating group, which obeys
/// the same formula.
pub fn branching_multiplicity_for(
    _family: Family,
    alpha: u32,
    eps_alpha: u8,
    eps_lambda: u8,
    eps_chi: u8,
    beta: u128,
) -> Result<u128> {
    branching_multiplicity(alpha, eps_alpha, eps_lambda, eps_chi, beta)
}

/// `Σ_τ r(θ_λ, θ_τ) = 2^{(α - ε(α))/2} β`.
pub fn multiplicity_row_sum(alpha: u32, beta: u128) -> u128 {
    beta << ((alpha - alpha % 2) / 2)
}

/// `2^{(α-1)/2} β` for odd `α`, `2^{α/2} β` for even `α`.
pub fn idempotent_count(alpha: u32, beta: u128) -> u128 {
    if alpha % 2 == 1 {
        beta * 2u128.pow((alpha - 1) / 2)
    } else {
        beta * 2u128.pow(alpha / 2)
    }
}
