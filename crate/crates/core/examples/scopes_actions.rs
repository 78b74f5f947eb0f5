//! Scopes involutions on partitions and on core tuples, and the weights at
//! which they are allowed.

use spinblock::abacus::{core_tuple, rank_from_tuple, CoreTuple};
use spinblock::partitions::{Modulus, PStrictPartition};
use spinblock::scopes::{
    allowed_component, allowed_threshold, apply_k, apply_k_tuple, ComponentBudget,
};

fn main() -> spinblock::Result<()> {
    let p = Modulus::new(5)?;
    let lambda = PStrictPartition::new(vec![12, 11, 7, 6, 4, 2, 1], p)?;
    let rho = PStrictPartition::new(vec![12, 7, 6, 2, 1], p)?;

    for i in 0..=p.t() {
        println!(
            "K_{i}: {rho} -> {}   {lambda} -> {}",
            apply_k(i, &rho)?,
            apply_k(i, &lambda)?
        );
    }

    let c = core_tuple(&rho.to_strict().unwrap(), p)?;
    println!("\ncore tuple {c:?}, rank {}", rank_from_tuple(&c));
    for i in 0..=p.t() {
        let image = apply_k_tuple(i, &c)?;
        println!(
            "  K_{i} -> {image:?} (rank {}), allowed for w <= {}",
            rank_from_tuple(&image),
            allowed_threshold(i, &c)?
        );
    }

    // Everything reachable from ((3,0),(1,1)) by 2-allowed actions, up to rank 60.
    let start: CoreTuple = "3:0,1:1".parse()?;
    let comp = allowed_component(
        &start,
        2,
        ComponentBudget {
            max_rank: 60,
            max_members: 10_000,
        },
    )?;
    println!(
        "\n2-allowed class of {start:?}: {} members (truncated: {})",
        comp.members.len(),
        comp.truncated
    );
    for m in &comp.members {
        let path: Vec<String> = m.trace.iter().map(|s| format!("K_{}", s.action)).collect();
        println!("  {:?} rank {:>3}  via {}", m.tuple, m.rank, path.join(" "));
    }
    println!("minimal: {:?}", comp.minimal);
    Ok(())
}
