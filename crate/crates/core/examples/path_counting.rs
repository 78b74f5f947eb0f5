//! Counting paths in the strict Young lattice and checking that a Scopes
//! pair of cores is w-compatible.

use spinblock::abacus::core_tuple;
use spinblock::compat::{count_paths, count_paths_closed, verify_w_compatible};
use spinblock::partitions::{Modulus, StrictPartition};
use spinblock::scopes::{apply_k, is_w_allowed};

fn main() -> spinblock::Result<()> {
    let p = Modulus::new(5)?;
    let nu = StrictPartition::new(vec![11, 6, 1])?;
    let mu = apply_k(0, &nu.with_modulus(p))?.to_strict().unwrap();
    println!(
        "{nu} -> {mu}: {} paths by search, {} by formula",
        count_paths(&nu, &mu),
        count_paths_closed(&nu, &mu, 0, p)?
    );

    let nu = StrictPartition::new(vec![6, 1])?;
    let c = core_tuple(&nu, p)?;
    for w in 0..=3 {
        for i in 0..=p.t() {
            if !is_w_allowed(i, &c, w)? {
                continue;
            }
            match verify_w_compatible(&nu, i, w, p, 30) {
                Ok(r) => println!(
                    "w={w} K_{i}: {} -> {}  bijection {}  paths {}/{}  parity {}",
                    r.nu,
                    r.mu,
                    r.cond1,
                    r.cond2.checked - r.cond2.total_failures,
                    r.cond2.checked,
                    r.cond3
                ),
                Err(e) => println!("w={w} K_{i}: {e}"),
            }
        }
    }
    Ok(())
}
