//! Reduce cores by w-allowed actions, and list the irreducible ones.

use spinblock::abacus::CoreTuple;
use spinblock::donovan::{donovan_bound, enumerate_representatives, reduce_core, rock_core};
use spinblock::partitions::Modulus;

fn main() -> spinblock::Result<()> {
    let p = Modulus::new(5)?;
    let w = 2;

    let start: CoreTuple = "7:1,4:0".parse()?;
    let trace = reduce_core(&start, w);
    println!(
        "{:?} (rank {})",
        trace.start,
        spinblock::abacus::rank_from_tuple(&start)
    );
    for s in &trace.steps {
        println!(
            "  K_{} {:<18} -> {:?} rank {}",
            s.i,
            format!("[{:?}]", s.rule),
            s.tuple,
            s.rank
        );
    }

    let rock = rock_core(p, w);
    println!(
        "\nRoCK core for w={w}: {rock:?}; bound {}",
        donovan_bound(p, w)?
    );

    let reps = enumerate_representatives(p, w, 1 << 22)?;
    println!("{} irreducible cores within the level bound:", reps.len());
    for r in reps {
        println!("  {:?}  rank {:>3}  level {}", r.tuple, r.rank, r.level);
    }
    Ok(())
}
