//! Abacus display, p-bar cores and core tuples.
//!
//!     cargo run --example abacus_cores -- 12,11,7,6,4,2,1 5

use spinblock::abacus::{core_from_tuple, core_tuple, pbar_core, pbar_removals, to_abacus};
use spinblock::partitions::{parity, parse_parts, Modulus, PStrictPartition};

fn main() -> spinblock::Result<()> {
    let mut args = std::env::args().skip(1);
    let parts = parse_parts(&args.next().unwrap_or_else(|| "12,11,7,6,4,2,1".into()))?;
    let p = Modulus::new(
        args.next()
            .map_or(5, |s| s.parse().expect("p must be an integer")),
    )?;

    let lambda = PStrictPartition::new(parts, p)?;
    println!(
        "λ = {lambda} on the {p}-abacus:\n{}",
        to_abacus(&lambda).render()
    );

    for (mu, kind) in pbar_removals(&lambda) {
        println!("  remove a {p}-bar (kind {}): {mu}", kind.number());
    }

    let (core, w) = pbar_core(&lambda);
    let tuple = core_tuple(&core, p)?;
    println!("core {core}, weight {w}, parity {}", parity(&core));
    println!("tuple {tuple:?}  ({tuple} on the command line)");
    assert_eq!(core_from_tuple(&tuple), core);
    Ok(())
}
