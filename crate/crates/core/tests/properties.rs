mod common;

use builtlat::bar::{koszul_check, Variant};
use builtlat::building::BuildingSet;
use builtlat::fy::FyAlgebra;
use builtlat::lattice::{GraphInput, Lattice};
use builtlat::linalg::Mat;
use builtlat::nested::enumerate_nested;
use builtlat::os::OsAlgebra;
use builtlat::shuffle::{verify_quadratic_gb_factored, Directed};
use common::{qi, Flats};
use proptest::prelude::*;
use std::sync::Arc;

/// A graph on `n` vertices with at least one edge, edges chosen by bitmask.
fn graph(max_vertices: usize) -> impl Strategy<Value = GraphInput> {
    (3..=max_vertices).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        (Just(n), Just(pairs.clone()), 1u64..1 << pairs.len())
    }).prop_map(|(n, pairs, mask)| {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &(a, b))| (names[a].clone(), names[b].clone())).collect();
        GraphInput::new(names, edges)
    })
}

fn building(g: &GraphInput, maximal: bool) -> BuildingSet {
    let l = Arc::new(Lattice::graphic(g).unwrap());
    if maximal {
        BuildingSet::maximal(l)
    } else {
        BuildingSet::minimal(l)
    }
}

/// Atom order given by sorting atoms on random keys.
fn shuffled(n: usize, keys: &[u32]) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.sort_by_key(|&i| (keys[i], i));
    v
}

fn keys() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fy_hilbert_agrees_with_oracle(g in graph(4), maximal in any::<bool>()) {
        let bs = building(&g, maximal);
        let mut want = common::fy_hilbert(&bs);
        prop_assert_eq!(want.pop(), Some(0));
        prop_assert_eq!(FyAlgebra::build(&bs, true).unwrap().hilbert(), want);
    }

    #[test]
    fn irreducible_fy_has_poincare_duality(g in graph(4), maximal in any::<bool>()) {
        let bs = building(&g, maximal);
        prop_assume!(bs.is_irreducible());
        let fy = FyAlgebra::new(&bs).unwrap();
        prop_assert_eq!(fy.hilbert().last().copied(), Some(1));
        prop_assert!(fy.poincare_duality_holds());
    }

    #[test]
    fn os_hilbert_is_mobius(g in graph(5), order_keys in keys()) {
        let l = Arc::new(Lattice::graphic(&g).unwrap());
        let mobius = Flats::of(&l).mobius_hilbert();
        let os = OsAlgebra::new(l.clone(), Some(shuffled(l.num_atoms(), &order_keys))).unwrap();
        prop_assert_eq!(os.hilbert(), mobius.clone());
        prop_assert_eq!(os.projective_hilbert(), common::projectivize(&mobius));
        prop_assert!(os.kernel_equals_image());
    }

    #[test]
    fn nested_sets_agree_with_definition(g in graph(5), maximal in any::<bool>()) {
        let bs = building(&g, maximal);
        let f = Flats::of(bs.lattice());
        let mut want = common::all_nested(&f, bs.members());
        want.iter_mut().for_each(|s| s.sort());
        want.sort();
        let mut got = enumerate_nested(&bs, false, None).unwrap();
        got.iter_mut().for_each(|s| s.sort());
        got.sort();
        prop_assert_eq!(got, want);
        prop_assert!(common::is_building(&f, bs.members()));
    }

    #[test]
    fn tubes_form_building_sets(g in graph(5)) {
        let bs = BuildingSet::tubes(&g).unwrap();
        prop_assert!(common::is_building(&Flats::of(bs.lattice()), bs.members()));
    }

    #[test]
    fn normal_monomials_count_fy(g in graph(4), maximal in any::<bool>(), order_keys in keys()) {
        let bs = building(&g, maximal);
        let order = shuffled(bs.lattice().num_atoms(), &order_keys);
        let r = verify_quadratic_gb_factored(&bs, &order).unwrap();
        prop_assert!(r.verdict);
        prop_assert_eq!(r.normal_monomials, common::total(&common::fy_hilbert(&bs)));
    }

    #[test]
    fn every_atom_order_is_el(g in graph(4), order_keys in keys()) {
        let bs = building(&g, true);
        let f = Flats::of(bs.lattice());
        let order = shuffled(bs.lattice().num_atoms(), &order_keys);
        prop_assert_eq!(common::el_failures(&f, &order), 0);
        prop_assert!(builtlat::shuffle::check_el(&Directed::new(&bs, &order).unwrap()).ok());
    }

    #[test]
    fn leray_homology_is_os(g in graph(4), maximal in any::<bool>()) {
        let bs = building(&g, maximal);
        prop_assume!(bs.is_irreducible());
        let mobius = Flats::of(bs.lattice()).mobius_hilbert();
        let proj = koszul_check(&bs, Variant::Projective).unwrap();
        prop_assert!(proj.d_squared_zero && proj.koszul);
        prop_assert_eq!(proj.homology, common::projectivize(&mobius));
        let aff = koszul_check(&bs, Variant::Affine).unwrap();
        prop_assert!(aff.koszul);
        prop_assert_eq!(aff.homology, mobius);
    }

    #[test]
    fn matrix_rank_matches_oracle(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-3i64..=3, 36)) {
        let cols_data: Vec<Vec<_>> = (0..cols).map(|c| (0..rows).map(|r| qi(entries[r * 6 + c])).collect()).collect();
        let m = Mat::from_columns(rows, &cols_data);
        let dense: Vec<Vec<_>> = (0..rows).map(|r| (0..cols).map(|c| qi(entries[r * 6 + c])).collect()).collect();
        prop_assert_eq!(m.rank(), common::dense_rank(&dense));
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.nullspace().len(), cols - m.rank());
    }
}
