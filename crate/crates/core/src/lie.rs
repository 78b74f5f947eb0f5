//! Cores as points of a lattice for the twisted affine algebra of type
//! `A^(2)_{2t}`.
//!
//! A core with tuple `((ℓ_i, ε_i))` sits at `n_i = (-1)^{ε_i} ℓ_i`. In these
//! coordinates `K_i` is a simple reflection and `γ_t` is a quadratic form.
//! Weights `Λ_0 - Σ γ_i α_i` are handled through their `γ` vector only.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abacus::{core_tuple, CoreTuple};
use crate::crystal::BlockLabel;
use crate::error::{Error, Result};
use crate::partitions::{content, Content, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub t: usize,
    /// Generalised Cartan matrix; column `j` is the simple root `α_j`.
    #[serde(rename = "C")]
    pub c_matrix: Vec<Vec<i64>>,
    /// Symmetrised form `diag(1/2, 1, …, 1, 2) · C`.
    #[serde(rename = "B")]
    pub b_matrix: Vec<Vec<i64>>,
    /// Coefficients of `δ` in `α_0, …, α_t`: `(2, …, 2, 1)`.
    pub delta: Vec<i64>,
    /// Coefficients of the central element: `(1, 2, …, 2)`.
    pub c: Vec<i64>,
}

impl CartanData {
    /// `(x, y)` for root-lattice vectors given in simple-root coordinates.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.b_matrix[i][j] * yj;
            }
        }
        s
    }

    /// Squared lengths of the simple roots.
    pub fn root_lengths(&self) -> Vec<i64> {
        (0..=self.t).map(|i| self.b_matrix[i][i]).collect()
    }

    /// The long root `β_i = 2α_i + … + 2α_{t-1} + α_t`, in simple-root
    /// coordinates (1-indexed `i`).
    pub fn long_root(&self, i: usize) -> Vec<i64> {
        (0..=self.t)
            .map(|j| match j {
                j if j == self.t => 1,
                j if j >= i => 2,
                _ => 0,
            })
            .collect()
    }
}

pub fn cartan_data(p: Modulus) -> CartanData {
    let t = p.t();
    let n = t + 1;
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i > 0 {
            c[i][i - 1] = -1;
        }
        if i + 1 < n {
            c[i][i + 1] = -1;
        }
    }
    // double bonds at both ends; for t = 1 they stack into a single -4
    c[0][1] = -2;
    c[t - 1][t] += if t == 1 { -2 } else { -1 };
    let scale = |i: usize| -> (i64, i64) {
        if i == 0 {
            (1, 2)
        } else if i == t {
            (2, 1)
        } else {
            (1, 1)
        }
    };
    let b = (0..n)
        .map(|i| {
            let (num, den) = scale(i);
            c[i].iter().map(|x| x * num / den).collect()
        })
        .collect();
    let mut delta = vec![2; n];
    delta[t] = 1;
    let mut cvec = vec![2; n];
    cvec[0] = 1;
    CartanData {
        t,
        c_matrix: c,
        b_matrix: b,
        delta,
        c: cvec,
    }
}

/// `(n_1, …, n_t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoordVector(pub Vec<i64>);

impl CoordVector {
    pub fn t(&self) -> usize {
        self.0.len()
    }
}

pub fn coords_from_tuple(c: &CoreTuple) -> CoordVector {
    CoordVector(
        c.pairs()
            .iter()
            .map(|&(l, e)| if e == 0 { l as i64 } else { -(l as i64) })
            .collect(),
    )
}

/// Inverse of [`coords_from_tuple`]; `n_i = 0` becomes the pair `(0, 1)`.
pub fn tuple_from_coords(v: &CoordVector) -> Result<CoreTuple> {
    CoreTuple::new(
        v.0.iter()
            .map(|&n| (n.unsigned_abs() as u32, u8::from(n <= 0)))
            .collect(),
    )
}

/// `Σ n_i (n_i - 1) / 2`, which is `γ_t` of the core.
pub fn level(v: &CoordVector) -> i64 {
    v.0.iter().map(|n| n * (n - 1) / 2).sum()
}

fn check_index(i: usize, t: usize) -> Result<()> {
    if i > t {
        Err(Error::InvalidIndex { index: i, t })
    } else {
        Ok(())
    }
}

/// The reflection `r_{α_i}` on coordinates: `n_1 ↦ 1 - n_1` for `i = 0`,
/// swap `n_i, n_{i+1}` for `0 < i < t`, and `n_t ↦ -n_t` for `i = t`.
pub fn weyl_reflect(i: usize, v: &CoordVector) -> Result<CoordVector> {
    let t = v.t();
    check_index(i, t)?;
    let mut n = v.0.clone();
    if i == 0 {
        n[0] = 1 - n[0];
    } else if i < t {
        n.swap(i - 1, i);
    } else {
        n[t - 1] = -n[t - 1];
    }
    Ok(CoordVector(n))
}

/// The content of the core at `v`, read off the translation of `Λ_0` by
/// `½ Σ n_i β_i`: `γ = (Σ n_i² · δ - Σ n_i β_i) / 2`.
pub fn translation_content(v: &CoordVector, cartan: &CartanData) -> Content {
    let t = cartan.t;
    let sq: i64 = v.0.iter().map(|n| n * n).sum();
    let mut twice: Vec<i64> = cartan.delta.iter().map(|d| d * sq).collect();
    for (k, &n) in v.0.iter().enumerate() {
        let beta = cartan.long_root(k + 1);
        for j in 0..=t {
            twice[j] -= n * beta[j];
        }
    }
    Content(twice.into_iter().map(|x| (x / 2) as u32).collect())
}

/// `γ` after applying `r_{α_i}` to `Λ_0 - Σ γ_j α_j`:
/// `γ_i ↦ γ_i + [i = 0] - Σ_j C_{ij} γ_j`.
pub fn reflect_weight(i: usize, gamma: &Content, cartan: &CartanData) -> Result<Content> {
    check_index(i, cartan.t)?;
    let pairing: i64 = (0..=cartan.t)
        .map(|j| cartan.c_matrix[i][j] * gamma.0[j] as i64)
        .sum();
    let mut out = gamma.0.clone();
    let new = out[i] as i64 + i64::from(i == 0) - pairing;
    out[i] = u32::try_from(new)
        .map_err(|_| Error::Precondition(format!("reflection leaves γ_{i} = {new} negative")))?;
    Ok(Content(out))
}

/// `r_{α_i}` on a root-lattice vector in simple-root coordinates.
pub fn simple_reflection(i: usize, x: &[i64], cartan: &CartanData) -> Result<Vec<i64>> {
    check_index(i, cartan.t)?;
    let pairing: i64 = (0..=cartan.t).map(|j| cartan.c_matrix[i][j] * x[j]).sum();
    let mut out = x.to_vec();
    out[i] -= pairing;
    Ok(out)
}

/// `γ(ρ) + w·δ`: the content of every partition in `ρ^w`.
pub fn block_weight_vector(b: &BlockLabel, p: Modulus) -> Content {
    let cartan = cartan_data(p);
    let core = content(&b.core.with_modulus(p));
    Content(
        core.0
            .iter()
            .zip(&cartan.delta)
            .map(|(g, d)| g + b.weight * *d as u32)
            .collect(),
    )
}

/// Level of a block `ρ^w`: the level of `ρ` shifted by `w`.
pub fn block_level(b: &BlockLabel, p: Modulus) -> Result<i64> {
    let c = core_tuple(&b.core, p)?;
    Ok(level(&coords_from_tuple(&c)) + b.weight as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LevelGrid {
    /// `t = 2`: rows indexed by `n_1`, columns by `n_2`, both `lo..=hi`.
    Matrix {
        lo: i64,
        hi: i64,
        rows: Vec<Vec<i64>>,
    },
    /// Any other `t`: one entry per coordinate vector in lexicographic order.
    Table {
        lo: i64,
        hi: i64,
        entries: Vec<(CoordVector, i64)>,
    },
}

/// Largest number of grid cells [`level_matrix`] will produce.
pub const MAX_GRID_CELLS: usize = 1 << 20;

pub fn level_matrix(p: Modulus, lo: i64, hi: i64) -> Result<LevelGrid> {
    if lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    let t = p.t();
    let side = (hi - lo + 1) as usize;
    let cells = side
        .checked_pow(t as u32)
        .filter(|&n| n <= MAX_GRID_CELLS)
        .ok_or_else(|| Error::ResourceLimit(format!("{side}^{t} level cells")))?;
    if t == 2 {
        let rows = (lo..=hi)
            .map(|a| (lo..=hi).map(|b| level(&CoordVector(vec![a, b]))).collect())
            .collect();
        return Ok(LevelGrid::Matrix { lo, hi, rows });
    }
    let mut entries = Vec::with_capacity(cells);
    let mut cur = vec![lo; t];
    loop {
        let v = CoordVector(cur.clone());
        let l = level(&v);
        entries.push((v, l));
        let mut k = t;
        loop {
            if k == 0 {
                return Ok(LevelGrid::Table { lo, hi, entries });
            }
            k -= 1;
            if cur[k] < hi {
                cur[k] += 1;
                break;
            }
            cur[k] = lo;
        }
    }
}

impl LevelGrid {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            LevelGrid::Matrix { lo, hi, rows } => {
                out.push_str("n1\\n2");
                for b in *lo..=*hi {
                    let _ = write!(out, ",{b}");
                }
                out.push('\n');
                for (a, row) in (*lo..=*hi).zip(rows) {
                    let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                    let _ = writeln!(out, "{a},{}", cells.join(","));
                }
            }
            LevelGrid::Table { entries, .. } => {
                let t = entries.first().map_or(0, |(v, _)| v.t());
                let head: Vec<String> = (1..=t).map(|i| format!("n{i}")).collect();
                let _ = writeln!(out, "{},level", head.join(","));
                for (v, l) in entries {
                    let cells: Vec<String> = v.0.iter().map(i64::to_string).collect();
                    let _ = writeln!(out, "{},{l}", cells.join(","));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus::core_from_tuple;
    use crate::partitions::StrictPartition;
    use crate::scopes::apply_k_tuple;

    fn p(v: u32) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn cartan_p11_matches_printed() {
        let d = cartan_data(p(11));
        let c = vec![
            vec![2, -2, 0, 0, 0, 0],
            vec![-1, 2, -1, 0, 0, 0],
            vec![0, -1, 2, -1, 0, 0],
            vec![0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, -1, 2, -2],
            vec![0, 0, 0, 0, -1, 2],
        ];
        let b = vec![
            vec![1, -1, 0, 0, 0, 0],
            vec![-1, 2, -1, 0, 0, 0],
            vec![0, -1, 2, -1, 0, 0],
            vec![0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, -1, 2, -2],
            vec![0, 0, 0, 0, -2, 4],
        ];
        assert_eq!(d.c_matrix, c);
        assert_eq!(d.b_matrix, b);
        assert_eq!(d.root_lengths(), vec![1, 2, 2, 2, 2, 4]);
    }

    #[test]
    fn null_vectors_and_long_roots() {
        for pv in [3, 5, 7, 11, 13] {
            let d = cartan_data(p(pv));
            let n = d.t + 1;
            for i in 0..n {
                let right: i64 = (0..n).map(|j| d.c_matrix[i][j] * d.delta[j]).sum();
                let left: i64 = (0..n).map(|j| d.c[j] * d.c_matrix[j][i]).sum();
                assert_eq!((right, left), (0, 0), "p={pv}");
                for j in 0..n {
                    assert_eq!(d.b_matrix[i][j], d.b_matrix[j][i]);
                }
            }
            let lengths = d.root_lengths();
            assert_eq!(lengths[0], 1);
            assert_eq!(lengths[d.t], 4);
            for a in 1..=d.t {
                for b in 1..=d.t {
                    let want = if a == b { 4 } else { 0 };
                    assert_eq!(d.form(&d.long_root(a), &d.long_root(b)), want);
                }
            }
        }
    }

    #[test]
    fn coordinate_examples() {
        let v = coords_from_tuple(&"2:0,3:0".parse().unwrap());
        assert_eq!(v, CoordVector(vec![2, 3]));
        assert_eq!(
            coords_from_tuple(&"2:0,3:1".parse().unwrap()),
            CoordVector(vec![2, -3])
        );
        assert_eq!(
            coords_from_tuple(&"0:1,0:1".parse().unwrap()),
            CoordVector(vec![0, 0])
        );
        assert_eq!(
            tuple_from_coords(&CoordVector(vec![0, -2]))
                .unwrap()
                .to_string(),
            "0:1,2:1"
        );
        assert_eq!(level(&v), 4);
        assert_eq!(level(&CoordVector(vec![0, 0])), 0);
        assert_eq!(level(&CoordVector(vec![1, 1])), 0);
        assert_eq!(level(&CoordVector(vec![-4, -4])), 20);
    }

    #[test]
    fn reflection_examples() {
        let r = weyl_reflect(0, &CoordVector(vec![-1, 0])).unwrap();
        assert_eq!(r, CoordVector(vec![2, 0]));
        assert_eq!(
            weyl_reflect(2, &CoordVector(vec![2, 3])).unwrap(),
            CoordVector(vec![2, -3])
        );
        let v = CoordVector(vec![1, -2, 5]);
        for i in 0..=3 {
            let r = weyl_reflect(i, &v).unwrap();
            assert_eq!(weyl_reflect(i, &r).unwrap(), v);
        }
        assert!(weyl_reflect(4, &v).is_err());
    }

    #[test]
    fn content_from_translation() {
        let d = cartan_data(p(5));
        assert_eq!(
            translation_content(&CoordVector(vec![2, 3]), &d),
            Content(vec![13, 11, 4])
        );
        for c in ["0:1,0:1", "1:0,0:1", "3:1,2:0", "4:0,1:1"] {
            let c: CoreTuple = c.parse().unwrap();
            let rho = core_from_tuple(&c);
            assert_eq!(
                translation_content(&coords_from_tuple(&c), &d),
                content(&rho.with_modulus(p(5))),
                "{c}"
            );
        }
    }

    fn small_tuples(t: usize, max_l: u32) -> Vec<CoreTuple> {
        let mut out = vec![vec![]];
        for _ in 0..t {
            out = out
                .into_iter()
                .flat_map(|pre: Vec<(u32, u8)>| {
                    (0..=max_l).flat_map(move |l| {
                        let pre = pre.clone();
                        (0..2u8).filter(move |&e| l > 0 || e == 1).map(move |e| {
                            let mut v = pre.clone();
                            v.push((l, e));
                            v
                        })
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|v| CoreTuple::new(v).unwrap())
            .collect()
    }

    #[test]
    fn reflections_act_on_content() {
        for pv in [3, 5, 7] {
            let d = cartan_data(p(pv));
            for c in small_tuples(d.t, 3) {
                let g = content(&core_from_tuple(&c).with_modulus(p(pv)));
                assert_eq!(translation_content(&coords_from_tuple(&c), &d), g);
                for i in 0..=d.t {
                    let k = core_from_tuple(&apply_k_tuple(i, &c).unwrap());
                    assert_eq!(
                        reflect_weight(i, &g, &d).unwrap(),
                        content(&k.with_modulus(p(pv)))
                    );
                }
            }
        }
        let d = cartan_data(p(5));
        let x = vec![1, 0, 0];
        assert_eq!(simple_reflection(0, &x, &d).unwrap(), vec![-1, 0, 0]);
        let delta = d.delta.clone();
        for i in 0..=2 {
            assert_eq!(simple_reflection(i, &delta, &d).unwrap(), delta);
        }
    }

    #[test]
    fn block_weight_examples() {
        let empty = BlockLabel::new(StrictPartition::empty(), 1);
        assert_eq!(block_weight_vector(&empty, p(5)), Content(vec![2, 2, 1]));
        let rho = StrictPartition::new(vec![12, 7, 6, 2, 1]).unwrap();
        let b0 = BlockLabel::new(rho.clone(), 0);
        assert_eq!(
            block_weight_vector(&b0, p(5)),
            content(&rho.with_modulus(p(5)))
        );
        let b3 = BlockLabel::new(rho, 3);
        assert_eq!(block_weight_vector(&b3, p(5)), Content(vec![19, 17, 7]));
        assert_eq!(block_level(&b3, p(5)).unwrap(), 7);
    }

    #[test]
    fn grid_shapes() {
        let g = level_matrix(p(5), -4, 5).unwrap();
        let LevelGrid::Matrix { rows, .. } = &g else {
            panic!()
        };
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0][0], 20);
        assert_eq!(rows[4][4], 0);
        let LevelGrid::Matrix { rows, .. } = level_matrix(p(5), 0, 0).unwrap() else {
            panic!()
        };
        assert_eq!(rows, vec![vec![0]]);
        assert_eq!(
            level_matrix(p(5), 2, 1),
            Err(Error::InvalidRange { lo: 2, hi: 1 })
        );
        let LevelGrid::Table { entries, .. } = level_matrix(p(7), -1, 1).unwrap() else {
            panic!()
        };
        assert_eq!(entries.len(), 27);
        assert_eq!(entries[0], (CoordVector(vec![-1, -1, -1]), 3));
        assert!(g.to_csv().starts_with("n1\\n2,-4,-3"));
        assert!(level_matrix(p(13), -50, 50).is_err());
    }
}
