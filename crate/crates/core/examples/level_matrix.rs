//! Cartan data, Weyl reflections on core coordinates, and the level grid.

use spinblock::abacus::CoreTuple;
use spinblock::lie::{cartan_data, coords_from_tuple, level_matrix, weyl_reflect};
use spinblock::partitions::Modulus;
use spinblock::scopes::apply_k_tuple;

fn main() -> spinblock::Result<()> {
    let p = Modulus::new(5)?;
    let cd = cartan_data(p);
    println!("C = {:?}\nB = {:?}", cd.c_matrix, cd.b_matrix);

    let c: CoreTuple = "1:1,0:1".parse()?;
    for i in 0..=p.t() {
        let via_k = coords_from_tuple(&apply_k_tuple(i, &c)?);
        let via_weyl = weyl_reflect(i, &coords_from_tuple(&c))?;
        assert_eq!(via_k, via_weyl);
        println!("r_{i} {:?} = {:?}", coords_from_tuple(&c).0, via_weyl.0);
    }

    print!("\n{}", level_matrix(p, -4, 5)?.to_csv());
    Ok(())
}
