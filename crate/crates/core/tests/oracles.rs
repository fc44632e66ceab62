mod common;

use builtlat::building::BuildingSet;
use builtlat::catalog::default_catalog;
use builtlat::fy::FyAlgebra;
use builtlat::lattice::Lattice;
use builtlat::nested::enumerate_nested;
use builtlat::os::OsAlgebra;
use builtlat::shuffle::Directed;
use common::Flats;
use std::sync::Arc;

fn catalog() -> Vec<(String, BuildingSet)> {
    default_catalog().into_iter().map(|e| (e.name.clone(), e.resolve().unwrap())).collect()
}

#[test]
fn catalog_building_sets_satisfy_the_definition() {
    for (name, bs) in catalog() {
        assert!(common::is_building(&Flats::of(bs.lattice()), bs.members()), "{name}");
    }
}

#[test]
fn fy_hilbert_matches_quotient_oracle() {
    for (name, bs) in catalog() {
        let fy = FyAlgebra::build(&bs, true).unwrap();
        let mut want = common::fy_hilbert(&bs);
        assert_eq!(want.pop(), Some(0), "{name}: nothing survives in degree rank");
        assert_eq!(fy.hilbert(), want, "{name}");
    }
}

#[test]
fn nested_sets_match_brute_force() {
    for (name, bs) in catalog() {
        let f = Flats::of(bs.lattice());
        let mut want: Vec<Vec<usize>> = common::all_nested(&f, bs.members());
        want.iter_mut().for_each(|s| s.sort());
        want.sort();
        let mut got = enumerate_nested(&bs, false, None).unwrap();
        got.iter_mut().for_each(|s| s.sort());
        got.sort();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn os_hilbert_matches_mobius_and_quotient() {
    for (name, bs) in catalog() {
        let l = bs.lattice();
        let os = OsAlgebra::new(l.clone(), None).unwrap();
        let mobius = Flats::of(l).mobius_hilbert();
        assert_eq!(os.hilbert(), mobius, "{name}");
        assert_eq!(common::os_hilbert_by_quotient(l), mobius, "{name}");
        assert_eq!(os.projective_hilbert(), common::projectivize(&mobius), "{name}");
    }
}

#[test]
fn el_labels_match_oracle() {
    for l in [Lattice::partition(4).unwrap(), Lattice::boolean(4).unwrap()] {
        let l = Arc::new(l);
        let bs = BuildingSet::maximal(l.clone());
        let f = Flats::of(&l);
        for order in builtlat::checks::atom_orders(l.num_atoms(), 2) {
            let d = Directed::new(&bs, &order).unwrap();
            for x in 0..l.len() {
                for y in (0..l.len()).filter(|&y| f.covers(x, y)) {
                    assert_eq!(d.label(x, y), common::el_label(&f, &order, x, y));
                }
            }
            assert_eq!(common::el_failures(&f, &order), 0);
            assert!(builtlat::shuffle::check_el(&d).ok());
        }
    }
}

#[test]
fn fy_pairing_ranks_by_oracle() {
    for (name, bs) in catalog().into_iter().filter(|(_, bs)| bs.is_irreducible()) {
        let fy = FyAlgebra::new(&bs).unwrap();
        let h = fy.hilbert();
        assert_eq!(h.last(), Some(&1), "{name}");
        for (d, m) in fy.pairing_matrices().iter().enumerate() {
            let rows: Vec<Vec<common::Q>> = (0..h[d]).map(|r| (0..h[h.len() - 1 - d]).map(|c| m[(r, c)].clone()).collect()).collect();
            assert_eq!(common::dense_rank(&rows), h[d], "{name} degree {d}");
        }
    }
}
