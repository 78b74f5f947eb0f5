//! Rebuild the block-reduced crystal graph from a direct enumeration of
//! restricted partitions, in scrambled order, and compare.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinblock::crystal::{apply_e, block_of, block_reduced_graph, maximal_i_string, BlockGraph};
use spinblock::partitions::{enumerate_p_strict, is_p_restricted, Modulus};

fn rebuild(p: Modulus, max_rank: u32, seed: u64) -> BlockGraph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for n in 0..=max_rank {
        for mu in enumerate_p_strict(n, p).into_iter().filter(is_p_restricted) {
            vertices.push(block_of(&mu));
            for i in 0..=p.t() as u32 {
                if let Some(lam) = apply_e(&mu, i) {
                    edges.push((block_of(&lam), block_of(&mu), i));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vertices.shuffle(&mut rng);
    edges.shuffle(&mut rng);
    BlockGraph::from_edges(p, max_rank, vertices, edges)
}

#[test]
fn graph_matches_independent_rebuild() {
    for (p, max_rank) in [(3, 12), (3, 15), (5, 8), (5, 12), (7, 10)] {
        let p = Modulus::new(p).unwrap();
        let g = block_reduced_graph(p, max_rank, 10_000_000).unwrap();
        for seed in 0..3 {
            let h = rebuild(p, max_rank, seed);
            assert_eq!(g.vertices(), h.vertices(), "p={p} max_rank={max_rank}");
            assert_eq!(g.edge_count(), h.edge_count(), "p={p} max_rank={max_rank}");
            assert_eq!(g.to_json(), h.to_json());
        }
    }
}

#[test]
fn smallest_graph() {
    let p = Modulus::new(5).unwrap();
    let g = block_reduced_graph(p, 1, 100).unwrap();
    assert_eq!(g.vertices().len(), 2);
    assert_eq!(g.edge_count(), 1);
}

#[test]
fn dot_is_deterministic() {
    let p = Modulus::new(5).unwrap();
    let a = block_reduced_graph(p, 8, 1_000_000).unwrap().to_dot();
    let b = rebuild(p, 8, 42).to_dot();
    assert_eq!(a, b);
    assert!(a.starts_with("digraph"));
}

#[test]
fn strings_are_edge_paths() {
    let p = Modulus::new(5).unwrap();
    let g = block_reduced_graph(p, 12, 1_000_000).unwrap();
    for b in g.vertices() {
        for i in 0..=p.t() as u32 {
            let s = maximal_i_string(b, i, &g).unwrap();
            assert!(s.blocks.contains(b));
            for w in s.blocks.windows(2) {
                assert!(g.has_edge(&w[0], &w[1], i), "{} {} {i}", w[0], w[1]);
            }
        }
    }
}
