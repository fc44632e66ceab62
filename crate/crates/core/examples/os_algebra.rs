//! Orlik-Solomon algebras and their projective parts across the catalog.
use builtlat::catalog::default_catalog;
use builtlat::os::OsAlgebra;

fn main() {
    let mut seen = Vec::new();
    for e in default_catalog() {
        let bs = e.resolve().expect("catalog entry");
        let l = bs.lattice().clone();
        if seen.iter().any(|x: &builtlat::lattice::Lattice| x.find_isomorphism(&l).is_some()) {
            continue;
        }
        let os = OsAlgebra::new(l.clone(), None).unwrap();
        println!(
            "{:<14} OS {:?}  projective {:?}  exact {}",
            e.name,
            os.hilbert(),
            os.projective_hilbert(),
            os.kernel_equals_image()
        );
        seen.push((*l).clone());
    }
}
