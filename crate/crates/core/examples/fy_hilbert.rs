//! Hilbert series of the FY ring for every irreducible catalog entry.

use builtlat::catalog::default_catalog;
use builtlat::fy::FyAlgebra;
use std::time::Instant;

fn main() {
    for entry in default_catalog() {
        let bs = entry.resolve().expect("catalog entries are valid");
        if !bs.is_irreducible() {
            println!("{:<14} reducible, skipped", entry.name);
            continue;
        }
        let t = Instant::now();
        let fy = FyAlgebra::new(&bs).expect("consistent");
        println!("{:<14} {:?}  pd={}  ({:.2?})", entry.name, fy.hilbert(), fy.poincare_duality_holds(), t.elapsed());
    }
}
