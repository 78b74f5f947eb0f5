//! Crystal operators on p-restricted p-strict partitions and the
//! block-reduced crystal graph.
//!
//! Nodes are read along the rim from bottom left to top right, i.e. by row
//! descending and then column ascending. A removable (addable) node gets a
//! `-` (`+`); adjacent `+-` pairs cancel, and the survivors decide which node
//! `e_i` removes or `f_i` adds.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::abacus::pbar_core;
use crate::error::{Error, Result};
use crate::partitions::{
    is_p_strict_parts, write_parts, Modulus, PStrictPartition, StrictPartition,
};

/// A box of a Young diagram, 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodePos {
    pub row: usize,
    pub col: u32,
}

impl NodePos {
    pub fn residue(self, p: Modulus) -> u32 {
        p.bar_residue(self.col - 1)
    }
}

/// A removable or addable node. `partner` is set for the paired case where
/// two adjacent residue-0 nodes in one row qualify together; the sign sits
/// on `node` (the left one when removing, the right one when adding).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeGroup {
    pub node: NodePos,
    pub partner: Option<NodePos>,
}

impl NodeGroup {
    fn single(row: usize, col: u32) -> Self {
        NodeGroup {
            node: NodePos { row, col },
            partner: None,
        }
    }

    fn nodes(&self) -> impl Iterator<Item = NodePos> {
        std::iter::once(self.node).chain(self.partner)
    }
}

/// Parts after changing row `row` (1-indexed) by `delta`, if the result is
/// still a p-strict partition without re-sorting.
fn reshaped(lambda: &PStrictPartition, row: usize, delta: i64) -> Option<Vec<u32>> {
    let mut parts = lambda.parts().to_vec();
    if row == parts.len() + 1 {
        parts.push(0);
    }
    let x = parts[row - 1] as i64 + delta;
    if x < 0 {
        return None;
    }
    parts[row - 1] = x as u32;
    while parts.last() == Some(&0) {
        parts.pop();
    }
    is_p_strict_parts(&parts, lambda.modulus()).then_some(parts)
}

fn rim_order(groups: &mut [NodeGroup]) {
    groups.sort_by(|a, b| {
        b.node
            .row
            .cmp(&a.node.row)
            .then(a.node.col.cmp(&b.node.col))
    });
}

/// The i-removable nodes of `lambda` in rim order.
pub fn i_removable_nodes(lambda: &PStrictPartition, i: u32) -> Vec<NodeGroup> {
    let p = lambda.modulus();
    let mut out = Vec::new();
    for row in 1..=lambda.len() {
        let len = lambda.part(row - 1);
        if p.bar_residue(len - 1) == i && reshaped(lambda, row, -1).is_some() {
            out.push(NodeGroup::single(row, len));
        }
        // A = (row, len-1) with B = (row, len) to its right
        if len >= 2
            && p.bar_residue(len - 2) == i
            && p.bar_residue(len - 1) == i
            && reshaped(lambda, row, -1).is_some()
            && reshaped(lambda, row, -2).is_some()
        {
            out.push(NodeGroup {
                node: NodePos { row, col: len - 1 },
                partner: Some(NodePos { row, col: len }),
            });
        }
    }
    rim_order(&mut out);
    out
}

/// The i-addable nodes of `lambda` in rim order.
pub fn i_addable_nodes(lambda: &PStrictPartition, i: u32) -> Vec<NodeGroup> {
    let p = lambda.modulus();
    let mut out = Vec::new();
    for row in 1..=lambda.len() + 1 {
        let len = lambda.part(row - 1);
        if p.bar_residue(len) == i && reshaped(lambda, row, 1).is_some() {
            out.push(NodeGroup::single(row, len + 1));
        }
        // B = (row, len+2) with A = (row, len+1) to its left
        if p.bar_residue(len) == i
            && p.bar_residue(len + 1) == i
            && reshaped(lambda, row, 1).is_some()
            && reshaped(lambda, row, 2).is_some()
        {
            out.push(NodeGroup {
                node: NodePos { row, col: len + 2 },
                partner: Some(NodePos { row, col: len + 1 }),
            });
        }
    }
    rim_order(&mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// The full i-signature in rim order.
pub fn signature(lambda: &PStrictPartition, i: u32) -> Vec<(Sign, NodeGroup)> {
    let mut all: Vec<(Sign, NodeGroup)> = i_removable_nodes(lambda, i)
        .into_iter()
        .map(|g| (Sign::Minus, g))
        .chain(
            i_addable_nodes(lambda, i)
                .into_iter()
                .map(|g| (Sign::Plus, g)),
        )
        .collect();
    all.sort_by(|(_, a), (_, b)| {
        b.node
            .row
            .cmp(&a.node.row)
            .then(a.node.col.cmp(&b.node.col))
    });
    all
}

/// The surviving `-` entries (i-normal) and `+` entries (i-conormal), each
/// in rim order.
pub fn reduced_signature(lambda: &PStrictPartition, i: u32) -> (Vec<NodeGroup>, Vec<NodeGroup>) {
    let mut normals = Vec::new();
    let mut pluses: Vec<NodeGroup> = Vec::new();
    for (sign, g) in signature(lambda, i) {
        match sign {
            Sign::Plus => pluses.push(g),
            Sign::Minus => {
                if pluses.pop().is_none() {
                    normals.push(g);
                }
            }
        }
    }
    (normals, pluses)
}

fn edit(lambda: &PStrictPartition, g: &NodeGroup, delta: i64) -> PStrictPartition {
    let n = g.nodes().count() as i64;
    let parts = reshaped(lambda, g.node.row, delta * n).expect("signed nodes keep p-strictness");
    PStrictPartition::from_parts_unchecked(parts, lambda.modulus())
}

/// The i-good node: the rightmost i-normal one.
pub fn good_node(lambda: &PStrictPartition, i: u32) -> Option<NodeGroup> {
    reduced_signature(lambda, i).0.pop()
}

/// The i-cogood node: the leftmost i-conormal one.
pub fn cogood_node(lambda: &PStrictPartition, i: u32) -> Option<NodeGroup> {
    reduced_signature(lambda, i).1.into_iter().next()
}

/// Removes the i-good node, if any.
pub fn apply_e(lambda: &PStrictPartition, i: u32) -> Option<PStrictPartition> {
    good_node(lambda, i).map(|g| edit(lambda, &g, -1))
}

/// Adds the i-cogood node, if any.
pub fn apply_f(lambda: &PStrictPartition, i: u32) -> Option<PStrictPartition> {
    cogood_node(lambda, i).map(|g| edit(lambda, &g, 1))
}

/// A spin block `ρ^w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockLabel {
    pub core: StrictPartition,
    pub weight: u32,
}

impl BlockLabel {
    pub fn new(core: StrictPartition, weight: u32) -> Self {
        BlockLabel { core, weight }
    }

    /// `|ρ| + p·w`.
    pub fn rank(&self, p: Modulus) -> u32 {
        self.core.rank() + p.get() * self.weight
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, self.core.parts())?;
        write!(f, "^{}", self.weight)
    }
}

impl fmt::Debug for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn block_of(lambda: &PStrictPartition) -> BlockLabel {
    let (core, weight) = pbar_core(lambda);
    BlockLabel { core, weight }
}

/// Blocks reachable from the empty partition, joined by an i-edge whenever
/// some partition of one block is sent into the other by `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGraph {
    p: Modulus,
    max_rank: u32,
    /// Sorted by rank, then label.
    vertices: Vec<BlockLabel>,
    index: HashMap<BlockLabel, usize>,
    /// `(lower, upper, i)` as vertex indices.
    edges: BTreeSet<(usize, usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub core: StrictPartition,
    pub weight: u32,
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<(usize, usize, u32)>,
}

impl BlockGraph {
    /// Assembles a graph from labelled block edges; vertices and edges are
    /// put in canonical order, so the result does not depend on input order.
    pub fn from_edges(
        p: Modulus,
        max_rank: u32,
        vertices: impl IntoIterator<Item = BlockLabel>,
        edges: impl IntoIterator<Item = (BlockLabel, BlockLabel, u32)>,
    ) -> Self {
        let edges: Vec<_> = edges.into_iter().collect();
        let mut set: BTreeSet<(u32, BlockLabel)> =
            vertices.into_iter().map(|b| (b.rank(p), b)).collect();
        for (a, b, _) in &edges {
            set.insert((a.rank(p), a.clone()));
            set.insert((b.rank(p), b.clone()));
        }
        let vertices: Vec<BlockLabel> = set.into_iter().map(|(_, b)| b).collect();
        let index: HashMap<BlockLabel, usize> = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, b)| (b, k))
            .collect();
        let edges = edges
            .into_iter()
            .map(|(a, b, i)| {
                let (u, v) = (index[&a], index[&b]);
                (u.min(v), u.max(v), i)
            })
            .collect();
        BlockGraph {
            p,
            max_rank,
            vertices,
            index,
            edges,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.p
    }

    pub fn max_rank(&self) -> u32 {
        self.max_rank
    }

    pub fn vertices(&self) -> &[BlockLabel] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&BlockLabel, &BlockLabel, u32)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v, i)| (&self.vertices[u], &self.vertices[v], i))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, b: &BlockLabel) -> bool {
        self.index.contains_key(b)
    }

    pub fn has_edge(&self, a: &BlockLabel, b: &BlockLabel, i: u32) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&u), Some(&v)) => self.edges.contains(&(u.min(v), u.max(v), i)),
            _ => false,
        }
    }

    /// The i-neighbours of `b` of rank one less and one more.
    pub fn i_neighbors(
        &self,
        b: &BlockLabel,
        i: u32,
    ) -> Result<(Option<&BlockLabel>, Option<&BlockLabel>)> {
        let k = *self
            .index
            .get(b)
            .ok_or_else(|| Error::UnknownBlock(b.to_string()))?;
        let down = self
            .edges
            .iter()
            .find(|&&(u, v, j)| j == i && v == k && u != k)
            .map(|&(u, _, _)| &self.vertices[u]);
        let up = self
            .edges
            .iter()
            .find(|&&(u, v, j)| j == i && u == k && v != k)
            .map(|&(_, v, _)| &self.vertices[v]);
        Ok((down, up))
    }

    /// Whether `b` ends its maximal i-string.
    pub fn is_extremal(&self, b: &BlockLabel, i: u32) -> Result<bool> {
        let (down, up) = self.i_neighbors(b, i)?;
        Ok(down.is_none() || up.is_none())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|b| GraphVertex {
                    core: b.core.clone(),
                    weight: b.weight,
                    rank: b.rank(self.p),
                })
                .collect(),
            edges: self.edges.iter().copied().collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph blocks {\n  rankdir=TB;\n  node [shape=box];\n");
        for (k, b) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{k} [label=\"{b}\\nrank {}\"];", b.rank(self.p));
        }
        for &(u, v, i) in &self.edges {
            let _ = writeln!(out, "  v{u} -> v{v} [label=\"{i}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the block-reduced crystal graph up to `max_rank` by closing the
/// empty partition under every `f_i`. `budget` caps the number of
/// partitions visited.
pub fn block_reduced_graph(p: Modulus, max_rank: u32, budget: usize) -> Result<BlockGraph> {
    let t = p.t() as u32;
    let mut blocks: BTreeMap<PStrictPartition, BlockLabel> = BTreeMap::new();
    let empty = PStrictPartition::empty(p);
    blocks.insert(empty.clone(), block_of(&empty));
    let mut frontier = vec![empty];
    let mut edges = Vec::new();
    for _ in 0..max_rank {
        let mut next = BTreeSet::new();
        for lambda in &frontier {
            for i in 0..=t {
                if let Some(mu) = apply_f(lambda, i) {
                    next.insert(mu.clone());
                    let from = blocks[lambda].clone();
                    let to = blocks
                        .entry(mu.clone())
                        .or_insert_with(|| block_of(&mu))
                        .clone();
                    edges.push((from, to, i));
                }
            }
        }
        if blocks.len() > budget {
            return Err(Error::ResourceLimit(format!(
                "crystal graph up to rank {max_rank} visits more than {budget} partitions"
            )));
        }
        frontier = next.into_iter().collect();
    }
    Ok(BlockGraph::from_edges(
        p,
        max_rank,
        blocks.into_values(),
        edges,
    ))
}

/// A maximal chain of blocks joined by i-edges, ordered by rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IString {
    pub i: u32,
    pub blocks: Vec<BlockLabel>,
    /// The top block sits at the graph's rank cap, so the string may go on.
    pub open_above: bool,
}

impl IString {
    pub fn bottom(&self) -> &BlockLabel {
        &self.blocks[0]
    }

    pub fn top(&self) -> &BlockLabel {
        self.blocks.last().expect("strings are nonempty")
    }
}

pub fn maximal_i_string(b: &BlockLabel, i: u32, g: &BlockGraph) -> Result<IString> {
    let mut below = Vec::new();
    let mut cur = b;
    while let (Some(d), _) = g.i_neighbors(cur, i)? {
        below.push(d.clone());
        cur = d;
    }
    below.reverse();
    below.push(b.clone());
    let mut cur = b;
    while let (_, Some(u)) = g.i_neighbors(cur, i)? {
        below.push(u.clone());
        cur = u;
    }
    let open_above = below.last().map(|x| x.rank(g.p)) == Some(g.max_rank);
    Ok(IString {
        i,
        blocks: below,
        open_above,
    })
}
