mod common;

use builtlat::bar::{BElem, BMono, Decomposition, LerayModel, Variant};
use builtlat::building::{building_witness, BuildingError, BuildingSet};
use builtlat::fy::FyAlgebra;
use builtlat::lattice::{GraphInput, Lattice};
use builtlat::nested::{comp, compose_nested, decompose_nested, enumerate_nested, is_nested, local_intervals, Ctx};
use builtlat::os::{circuits, OsAlgebra};
use builtlat::poly::{Mono, Poly};
use builtlat::shuffle::{verify_quadratic_gb, Directed, FyDual};
use common::{el, entry, Flats};
use num_traits::One;
use std::collections::BTreeMap;
use std::sync::Arc;

fn partition(n: usize) -> Arc<Lattice> {
    Arc::new(Lattice::partition(n).unwrap())
}

fn boolean(n: usize) -> Arc<Lattice> {
    Arc::new(Lattice::boolean(n).unwrap())
}

fn q1() -> builtlat::linalg::Q {
    builtlat::linalg::Q::one()
}

#[test]
fn boolean_lattice_sizes() {
    let b1 = Lattice::boolean(1).unwrap();
    assert_eq!((b1.len(), b1.ranks().to_vec()), (2, vec![0, 1]));
    let b2 = Lattice::boolean(2).unwrap();
    assert_eq!((b2.len(), b2.total_rank()), (4, 2));
    let b3 = Lattice::boolean(3).unwrap();
    let coatoms = (0..b3.len()).filter(|&x| b3.rank(x) == 2).count();
    assert_eq!((b3.len(), b3.num_atoms(), coatoms), (8, 3, 3));
}

#[test]
fn partition_lattice_sizes() {
    assert_eq!(Lattice::partition(2).unwrap().len(), 2);
    let p3 = partition(3);
    assert_eq!((p3.len(), p3.total_rank()), (5, 2));
    let p4 = partition(4);
    assert_eq!((p4.len(), p4.num_atoms(), p4.total_rank()), (15, 6, 3));
}

#[test]
fn graphic_lattices() {
    let k3 = Lattice::graphic(&GraphInput::complete(3)).unwrap();
    assert!(k3.find_isomorphism(&partition(3)).is_some());
    let path = Lattice::graphic(&GraphInput::path(4)).unwrap();
    assert!(path.find_isomorphism(&boolean(3)).is_some());
    let c4 = Lattice::graphic(&GraphInput::cycle(4)).unwrap();
    assert_eq!((c4.num_atoms(), c4.total_rank()), (4, 3));
    assert_eq!(circuits(&c4).unwrap(), vec![0b1111]);
}

#[test]
fn flats_round_trip_and_rejection() {
    let b2 = Lattice::boolean(2).unwrap();
    let flats: Vec<Vec<String>> = (0..b2.len()).map(|x| b2.flats_as_labels(x)).collect();
    assert_eq!(Lattice::from_flats(b2.atom_labels().to_vec(), flats).unwrap(), b2);
    let bad = vec![vec![], vec!["a".to_string()], vec!["a".to_string(), "b".to_string()]];
    assert!(Lattice::from_flats(vec!["a".into(), "b".into()], bad).is_err());
    let p3 = partition(3);
    let flats: Vec<Vec<String>> = (0..p3.len()).map(|x| p3.flats_as_labels(x)).collect();
    let again = Lattice::from_flats(p3.atom_labels().to_vec(), flats).unwrap();
    assert_eq!(again.total_rank(), 2);
}

#[test]
fn intervals_and_products() {
    let p4 = partition(4);
    let (sub, _) = p4.interval(el(&p4, &["12"]), p4.top()).unwrap();
    assert!(sub.find_isomorphism(&partition(3)).is_some());
    let b3 = boolean(3);
    let (sub, _) = b3.interval(el(&b3, &["1"]), b3.top()).unwrap();
    assert!(sub.find_isomorphism(&boolean(2)).is_some());
    let (full, _) = b3.interval(b3.bottom(), b3.top()).unwrap();
    assert!(full.find_isomorphism(&b3).is_some());

    let b1 = boolean(1);
    let (p, _, _) = b1.product(&b1).unwrap();
    assert!(p.find_isomorphism(&boolean(2)).is_some());
    let (p, _, _) = partition(3).product(&b1).unwrap();
    assert_eq!((p.len(), p.total_rank()), (10, 3));
    let point = Lattice::from_flats(vec![], vec![vec![]]).unwrap();
    let (p, _, _) = b3.product(&point).unwrap();
    assert!(p.find_isomorphism(&b3).is_some());
}

#[test]
fn building_sets_from_definitions() {
    for l in [boolean(3), partition(3), partition(4)] {
        let all: Vec<usize> = (1..l.len()).collect();
        assert_eq!(building_witness(&l, &all).unwrap(), None);
    }
    let b3 = boolean(3);
    assert_eq!(building_witness(&b3, &b3.atoms()).unwrap(), None);
    let p3 = partition(3);
    assert_eq!(building_witness(&p3, &p3.atoms()).unwrap(), Some(p3.top()));
    match BuildingSet::new(p3.clone(), p3.atoms()) {
        Err(BuildingError::NotBuilding { witness, .. }) => assert_eq!(witness, p3.top()),
        other => panic!("expected a witness, got {other:?}"),
    }
    assert!(!common::is_building(&Flats::of(&p3), &p3.atoms()));
}

#[test]
fn minimal_and_maximal_building_sets() {
    for n in 1..=4 {
        let b = boolean(n);
        assert_eq!(BuildingSet::minimal(b.clone()).members(), b.atoms().as_slice());
    }
    let p4 = partition(4);
    let min = BuildingSet::minimal(p4.clone());
    assert_eq!(min.len(), 11);
    let f = Flats::of(&p4);
    for &g in min.members() {
        // exactly one non-singleton block: the atoms below form a complete graph on its vertices
        let atoms = f.supports[g].count_ones();
        assert!([1, 3, 6].contains(&atoms), "{}", p4.name(g));
    }
    assert!(common::is_building(&f, min.members()));
    let p3 = partition(3);
    assert_eq!(BuildingSet::maximal(p3.clone()).len(), 4);
}

#[test]
fn tubes_of_small_graphs() {
    let path = BuildingSet::tubes(&GraphInput::new(vec!["a", "b", "c"], vec![("a", "b"), ("b", "c")])).unwrap();
    let l = path.lattice();
    let mut want: Vec<usize> =
        [&["a"][..], &["b"], &["c"], &["a", "b"], &["b", "c"], &["a", "b", "c"]].iter().map(|s| el(l, s)).collect();
    want.sort();
    assert_eq!(path.members(), want.as_slice());
    let edgeless = BuildingSet::tubes(&GraphInput::new(vec!["a", "b"], vec![])).unwrap();
    assert_eq!(edgeless.members(), edgeless.lattice().atoms().as_slice());
    let k3 = BuildingSet::tubes(&GraphInput::complete(3)).unwrap();
    assert_eq!(k3.len(), 7);
}

#[test]
fn factors_and_induction() {
    let p4 = partition(4);
    let min = BuildingSet::minimal(p4.clone());
    let x = el(&p4, &["12", "34"]);
    let mut want = vec![el(&p4, &["12"]), el(&p4, &["34"])];
    want.sort();
    assert_eq!(min.factors(x).unwrap(), want);
    let g = el(&p4, &["12", "13", "23"]);
    assert_eq!(min.factors(g).unwrap(), vec![g]);
    let b3 = boolean(3);
    assert_eq!(BuildingSet::minimal(b3.clone()).factors(b3.top()).unwrap(), b3.atoms());

    let (ind, _) = min.induced(el(&p4, &["12"]), p4.top()).unwrap();
    assert!(ind.lattice().find_isomorphism(&partition(3)).is_some());
    assert_eq!(ind.len(), 4);
    let (whole, _) = min.induced(p4.bottom(), p4.top()).unwrap();
    assert_eq!(whole.len(), min.len());
}

#[test]
fn nestedness() {
    let p4 = partition(4);
    let min = BuildingSet::minimal(p4.clone());
    let pair = [el(&p4, &["12"]), el(&p4, &["34"])];
    assert_eq!(is_nested(&min, &pair).unwrap(), None);
    let bad = [el(&p4, &["12", "13", "23"]), el(&p4, &["12", "14", "24"])];
    assert!(is_nested(&min, &bad).unwrap().is_some());

    let p3 = partition(3);
    let min3 = BuildingSet::minimal(p3.clone());
    let mut got = enumerate_nested(&min3, true, None).unwrap();
    got.sort();
    let top = p3.top();
    let mut want: Vec<Vec<usize>> = vec![vec![top]];
    want.extend(p3.atoms().into_iter().map(|a| vec![a, top]));
    want.sort();
    assert_eq!(got, want);
    assert!(enumerate_nested(&BuildingSet::minimal(boolean(3)), true, None).is_err());
}

#[test]
fn maximal_building_set_nested_sets_are_chains() {
    for l in [boolean(3), partition(4)] {
        let max = BuildingSet::maximal(l.clone());
        for s in enumerate_nested(&max, false, None).unwrap() {
            assert!(s.iter().all(|&a| s.iter().all(|&b| l.comparable(a, b))));
        }
    }
}

#[test]
fn comp_examples() {
    let b3 = BuildingSet::maximal(boolean(3));
    let l = b3.lattice().clone();
    assert_eq!(comp(&b3, el(&l, &["1"]), el(&l, &["1", "2"])).unwrap(), el(&l, &["1", "2"]));
    let p4 = partition(4);
    let min = BuildingSet::minimal(p4.clone());
    let g0 = el(&p4, &["12"]);
    assert_eq!(comp(&min, g0, el(&p4, &["12", "34"])).unwrap(), el(&p4, &["34"]));
    let k = el(&p4, &["12", "13", "23"]);
    assert_eq!(comp(&min, g0, k).unwrap(), k);
}

#[test]
fn composition_of_nested_sets() {
    let p3 = partition(3);
    let min = BuildingSet::minimal(p3.clone());
    let top = p3.top();
    let a = p3.atom(0);
    let s = vec![top];
    let (lo, hi) = local_intervals(&min, &s)[0];
    assert_eq!((lo, hi), (top, p3.bottom()));
    let locals = BTreeMap::from([(top, vec![a, top])]);
    assert_eq!(compose_nested(&min, &s, &locals).unwrap(), vec![a, top]);

    let s = vec![a, top];
    let trivial: BTreeMap<usize, Vec<usize>> = local_intervals(&min, &s).into_iter().map(|(g, _)| (g, vec![g])).collect();
    assert_eq!(compose_nested(&min, &s, &trivial).unwrap(), s);
    let d = decompose_nested(&min, &s, &s).unwrap();
    assert!(d.iter().all(|(g, local)| local == &vec![*g]));
    let d = decompose_nested(&min, &s, &[top]).unwrap();
    assert_eq!(d[&top], s);
    let ranks: Vec<(usize, usize)> = local_intervals(&min, &s).into_iter().map(|(g, t)| (t, g)).collect();
    assert_eq!(ranks, vec![(p3.bottom(), a), (a, top)]);
}

#[test]
fn local_ranks_add_up() {
    for e in builtlat::catalog::default_catalog() {
        let bs = e.resolve().unwrap();
        if !bs.is_irreducible() {
            continue;
        }
        let l = bs.lattice();
        for s in enumerate_nested(&bs, true, None).unwrap() {
            let sum: usize = local_intervals(&bs, &s).iter().map(|&(g, t)| l.rank(g) - l.rank(t)).sum();
            assert_eq!(sum, l.total_rank(), "{} {s:?}", e.name);
        }
    }
}

#[test]
fn fy_small_hilbert_series() {
    let rank1 = FyAlgebra::new(&BuildingSet::minimal(boolean(1))).unwrap();
    assert_eq!(rank1.hilbert(), vec![1]);
    let p3 = FyAlgebra::new(&BuildingSet::minimal(partition(3))).unwrap();
    assert_eq!(p3.hilbert(), vec![1, 1]);
    let top = p3.building().top();
    assert_eq!(p3.normal_basis()[1], vec![Mono::var(top)]);
    let p4 = FyAlgebra::new(&BuildingSet::minimal(partition(4))).unwrap();
    assert_eq!(p4.hilbert(), vec![1, 5, 1]);
    assert_eq!(p4.normal_basis()[2], vec![Mono::from_pairs([(p4.building().top(), 2)])]);
}

#[test]
fn fy_relations_reduce_to_zero() {
    let bs = BuildingSet::minimal(partition(3));
    let fy = FyAlgebra::new(&bs).unwrap();
    let l = bs.lattice();
    for h in l.atoms() {
        assert!(fy.reduce(&fy.h_in_x(h)).unwrap().is_zero());
    }
    let (a, b, top) = (l.atom(0), l.atom(1), l.top());
    assert!(fy.reduce(&Poly::var(a).mul(&Poly::var(b))).unwrap().is_zero());
    // x_a = -x_top in degree one, so x_a x_top = -x_top²
    let lhs = fy.reduce(&Poly::var(a).mul(&Poly::var(top))).unwrap();
    let rhs = fy.reduce(&Poly::var(top).pow(2).scale(&-q1())).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(fy.h_in_x(top), Poly::var(top));
}

#[test]
fn fy_pairings_are_nondegenerate() {
    let p4 = FyAlgebra::new(&entry("P4-min")).unwrap();
    let mats = p4.pairing_matrices();
    assert_eq!(mats[0].rank(), 1);
    assert_eq!(mats[1].rank(), 5);
    assert!(FyAlgebra::new(&entry("B3-max")).unwrap().poincare_duality_holds());
}

#[test]
fn os_algebra_small_cases() {
    assert!(circuits(&boolean(3)).unwrap().is_empty());
    let p3 = partition(3);
    assert_eq!(circuits(&p3).unwrap(), vec![0b111]);
    let b2 = OsAlgebra::new(boolean(2), None).unwrap();
    assert_eq!(b2.hilbert(), vec![1, 2, 1]);
    let os = OsAlgebra::new(p3, None).unwrap();
    assert_eq!(os.hilbert(), vec![1, 3, 2]);
    assert!(os.reduce(&os.monomial(&[0, 1, 2]).unwrap()).is_zero());
    assert_eq!(os.projective_hilbert(), vec![1, 2]);
    assert!(os.delta(&builtlat::os::Ext::one()).is_zero());
    assert_eq!(os.delta(&os.generator(0)), builtlat::os::Ext::one());
}

#[test]
fn os_factors_through_one_plus_t() {
    for e in builtlat::catalog::default_catalog() {
        let bs = e.resolve().unwrap();
        let os = OsAlgebra::new(bs.lattice().clone(), None).unwrap();
        let (h, p) = (os.hilbert(), os.projective_hilbert());
        for (k, &hk) in h.iter().enumerate() {
            let below = if k == 0 { 0 } else { p.get(k - 1).copied().unwrap_or(0) };
            assert_eq!(hk, p.get(k).copied().unwrap_or(0) + below, "{}", e.name);
        }
    }
}

#[test]
fn directed_order_and_el_chains() {
    let b3 = BuildingSet::maximal(boolean(3));
    let l = b3.lattice().clone();
    let d = Directed::new(&b3, &[0, 1, 2]).unwrap();
    use std::cmp::Ordering::Less;
    assert_eq!(d.element_cmp(el(&l, &["1", "3"]), el(&l, &["1"])), Less);
    assert_eq!(d.element_cmp(el(&l, &["1"]), el(&l, &["2"])), Less);
    for &g in b3.members().iter().filter(|&&g| g != l.top()) {
        assert_eq!(d.element_cmp(l.top(), g), Less);
    }

    let p3 = BuildingSet::minimal(partition(3));
    let l = p3.lattice().clone();
    let d = Directed::new(&p3, &[0, 1, 2]).unwrap();
    let chain = d.increasing_chain(l.bottom(), l.top(), None).unwrap();
    assert_eq!(chain, vec![l.bottom(), l.atom(0), l.top()]);
    assert_eq!(d.chain_labels(&chain), vec![1, 2]);
    assert_eq!(d.increasing_chain(l.bottom(), l.top(), Some(1)).unwrap(), vec![l.bottom(), l.atom(0)]);

    let b2 = BuildingSet::minimal(boolean(2));
    let l = b2.lattice().clone();
    let d = Directed::new(&b2, &[0, 1]).unwrap();
    assert_eq!(d.increasing_chain(l.bottom(), l.top(), None).unwrap(), vec![l.bottom(), l.atom(0), l.top()]);
}

#[test]
fn clusters_and_frames() {
    let p4 = BuildingSet::minimal(partition(4));
    let l = p4.lattice().clone();
    let d = Directed::new(&p4, &[0, 1, 2, 3, 4, 5]).unwrap();
    assert_eq!(d.cluster_from_chain(&[l.bottom()]).unwrap(), vec![l.top()]);
    let a = el(&l, &["12"]);
    let mut want = vec![a, l.top()];
    want.sort();
    assert_eq!(d.cluster_from_chain(&[l.bottom(), a]).unwrap(), want);
    assert!(d.is_cluster(&want));
    assert_eq!(d.frame(&want).unwrap().0, vec![l.top()]);
}

#[test]
fn normal_monomials_of_small_entries() {
    let rank1 = BuildingSet::minimal(boolean(1));
    assert_eq!(verify_quadratic_gb(&rank1, &[0]).unwrap().normal_monomials, 1);

    let p3 = BuildingSet::minimal(partition(3));
    let l = p3.lattice().clone();
    let d = Directed::new(&p3, &[0, 1, 2]).unwrap();
    let mut got = FyDual::new(&d).normal_by_divisibility().unwrap();
    got.sort();
    let mut want = vec![vec![l.top()], vec![l.atom(0), l.top()]];
    want.sort();
    assert_eq!(got, want);

    let r = verify_quadratic_gb(&entry("P4-min"), &[0, 1, 2, 3, 4, 5]).unwrap();
    assert_eq!((r.normal_monomials, r.fy_dim), (7, 7));
    assert!(r.verdict);
}

#[test]
fn leray_model_small_cases() {
    let rank1 = LerayModel::build(&BuildingSet::minimal(boolean(1)), Variant::Projective).unwrap();
    assert_eq!(rank1.homology(), vec![1]);

    let p3 = BuildingSet::minimal(partition(3));
    let proj = LerayModel::build(&p3, Variant::Projective).unwrap();
    assert_eq!(proj.dim(0, 1), 3);
    assert_eq!(Decomposition::new(&p3).unwrap().dims_by_e_degree().unwrap()[1], 3);
    assert_eq!(proj.homology(), vec![1, 2]);
    let aff = LerayModel::build(&p3, Variant::Affine).unwrap();
    assert_eq!(aff.homology(), vec![1, 3, 2]);
    let total = |m: &LerayModel| m.bigraded_dims().iter().flatten().sum::<usize>();
    assert!(total(&aff) > total(&proj));

    let p4 = LerayModel::build(&entry("P4-min"), Variant::Projective).unwrap();
    assert!(p4.d_squared_zero());
}

#[test]
fn leray_differential_signs() {
    let (g1, g2) = (3, 5);
    let e = BElem::term(BMono { e: vec![g1, g2], x: Mono::one() }, q1());
    let mut want = BElem::term(BMono { e: vec![g2], x: Mono::var(g1) }, q1());
    want.add_term(BMono { e: vec![g1], x: Mono::var(g2) }, -q1());
    assert_eq!(e.d(), want);
    assert!(e.d().d().is_zero());
}

#[test]
fn bar_product_vanishes_on_non_nested_union() {
    let p3 = BuildingSet::minimal(partition(3));
    let l = p3.lattice().clone();
    let dec = Decomposition::new(&p3).unwrap();
    let (a, b, top) = (l.atom(0), l.atom(1), l.top());
    assert!(dec.bar_product(&[a, top], &Poly::one(), &[b, top], &Poly::one()).unwrap().is_none());
    assert!(dec.bar_product(&[a, top], &Poly::one(), &[a, top], &Poly::one()).unwrap().is_none());
    let (u, p) = dec.bar_product(&[top], &Poly::one(), &[a, top], &Poly::one()).unwrap().unwrap();
    assert_eq!(u, vec![a, top]);
    assert!(!p.is_zero());
}

#[test]
fn nested_ctx_agrees_with_free_functions() {
    let bs = entry("P4-min");
    let ctx = Ctx::whole(&bs);
    let f = Flats::of(bs.lattice());
    for s in enumerate_nested(&bs, false, None).unwrap() {
        assert!(ctx.is_nested(&s));
        assert!(common::is_nested(&f, bs.members(), &s));
    }
}
