//! Build the block-reduced crystal graph and export it as DOT.
//!
//!     cargo run --example crystal_graph -- 5 10 > blocks.dot

use spinblock::crystal::{block_reduced_graph, maximal_i_string};
use spinblock::partitions::Modulus;

fn main() -> spinblock::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<u32>().expect("integer argument"));
    let p = Modulus::new(args.next().unwrap_or(5))?;
    let max_rank = args.next().unwrap_or(10);

    let g = block_reduced_graph(p, max_rank, 5_000_000)?;
    eprintln!(
        "{} blocks, {} edges up to rank {max_rank}",
        g.vertices().len(),
        g.edge_count()
    );

    // Longest i-string through the graph, for each residue.
    for i in 0..=p.t() as u32 {
        let longest = g
            .vertices()
            .iter()
            .filter_map(|b| maximal_i_string(b, i, &g).ok())
            .max_by_key(|s| s.blocks.len());
        if let Some(s) = longest {
            let names: Vec<String> = s.blocks.iter().map(|b| b.to_string()).collect();
            eprintln!("  longest {i}-string: {}", names.join(" -> "));
        }
    }
    print!("{}", g.to_dot());
    Ok(())
}
