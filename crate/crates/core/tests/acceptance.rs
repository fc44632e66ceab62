//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use builtlat::bar::{koszul_check, Decomposition, LerayModel, Variant};
use builtlat::building::BuildingSet;
use builtlat::catalog::default_catalog;
use builtlat::checks::{self, atom_orders, MapKind};
use builtlat::fy::FyAlgebra;
use builtlat::nested::enumerate_nested;
use builtlat::shuffle::{verify_quadratic_gb_factored, Directed};
use common::{entry, Flats};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn catalog() -> Vec<(String, BuildingSet)> {
    default_catalog().into_iter().map(|e| (e.name.clone(), e.resolve().unwrap())).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fy_dimensions() -> Verdict {
    let mut degrees = 0;
    for (name, bs) in catalog() {
        let fy = FyAlgebra::build(&bs, true).map_err(|e| format!("{name}: {e}"))?;
        let mut oracle = common::fy_hilbert(&bs);
        ensure(oracle.pop() == Some(0), || format!("{name}: oracle survives in degree rank"))?;
        let counts: Vec<usize> = fy.normal_basis().iter().map(|b| b.len()).collect();
        ensure(counts == oracle, || format!("{name}: normal basis {counts:?}, oracle {oracle:?}"))?;
        degrees += counts.len();
    }
    let p3 = FyAlgebra::new(&entry("P3-min")).unwrap().hilbert();
    let p4 = FyAlgebra::new(&entry("P4-min")).unwrap().hilbert();
    ensure(p3 == [1, 1] && p4 == [1, 5, 1], || format!("spot values {p3:?} {p4:?}"))?;
    Ok(format!("{} entries, {degrees} degrees; Π3 {p3:?}, Π4 {p4:?}", catalog().len()))
}

fn pd_of(name: &str, bs: &BuildingSet) -> Result<(), String> {
    let fy = FyAlgebra::new(bs).map_err(|e| format!("{name}: {e}"))?;
    let h = fy.hilbert();
    ensure(h.last() == Some(&1), || format!("{name}: top degree {h:?}"))?;
    for (d, m) in fy.pairing_matrices().iter().enumerate() {
        let rows: Vec<Vec<common::Q>> = (0..m.rows).map(|r| (0..m.cols).map(|c| m[(r, c)].clone()).collect()).collect();
        let full = m.rows == m.cols && common::dense_rank(&rows) == m.rows;
        ensure(full, || format!("{name}: pairing in degree {d} is degenerate"))?;
    }
    Ok(())
}

fn poincare_duality() -> Verdict {
    let (mut whole, mut factored) = (0, 0);
    for (name, bs) in catalog() {
        if bs.is_irreducible() {
            pd_of(&name, &bs)?;
            whole += 1;
        } else {
            // a reducible FY is the tensor product over the factors of the top
            let l = bs.lattice();
            let mut product = 1;
            for f in bs.factors(l.top()).unwrap() {
                let (sub, _) = bs.induced(l.bottom(), f).unwrap();
                pd_of(&format!("{name}/[0,{}]", l.name(f)), &sub)?;
                product *= FyAlgebra::new(&sub).unwrap().dim();
            }
            let dim = FyAlgebra::build(&bs, true).unwrap().dim();
            ensure(dim == product, || format!("{name}: dim {dim} vs factor product {product}"))?;
            factored += 1;
        }
    }
    Ok(format!("{whole} irreducible entries, {factored} reducible entries checked factorwise"))
}

fn structure_maps() -> Verdict {
    let mut n = 0;
    for (name, bs) in catalog().into_iter().filter(|(_, bs)| bs.is_irreducible()) {
        for kind in [MapKind::Fy, MapKind::Fypd, MapKind::Os, MapKind::Osbar] {
            let o = checks::operad(&bs, kind);
            ensure(o.ok, || format!("{name} {kind:?}: {}", o.outputs))?;
        }
        n += 1;
    }
    Ok(format!("fy, fypd, os, osbar on {n} irreducible entries"))
}

fn nested_laws() -> Verdict {
    let mut n = 0;
    for (name, bs) in catalog().into_iter().filter(|(_, bs)| bs.is_irreducible()) {
        let f = Flats::of(bs.lattice());
        for s in enumerate_nested(&bs, true, Some(3)).unwrap() {
            ensure(common::is_nested(&f, bs.members(), &s), || format!("{name}: {s:?} is not nested"))?;
        }
        let o = checks::nested(&bs, 3);
        ensure(o.ok, || format!("{name}: {}", o.outputs))?;
        n += 1;
    }
    Ok(format!("round trip and associativity, |S| <= 3, {n} irreducible entries"))
}

fn groebner_bases() -> Verdict {
    let (mut entries, mut orders) = (0, 0);
    for (name, bs) in catalog() {
        let n = bs.lattice().num_atoms();
        let list = atom_orders(n, 3);
        let want = if n >= 3 { 3 } else { (1..=n).product() };
        ensure(list.len() == want, || format!("{name}: only {} orders", list.len()))?;
        let oracle = common::total(&common::fy_hilbert(&bs));
        for order in &list {
            let r = verify_quadratic_gb_factored(&bs, order).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.verdict && r.normal_monomials == oracle, || {
                format!("{name} {order:?}: {} normal monomials, oracle {oracle}", r.normal_monomials)
            })?;
            orders += 1;
        }
        let o = checks::groebner(&bs, &list, 3);
        ensure(o.ok, || format!("{name}: {}", o.outputs))?;
        entries += 1;
    }
    Ok(format!("{entries} entries, {orders} orders, admissibility for |S| <= 3"))
}

fn el_labelings() -> Verdict {
    let mut pairs = 0;
    for name in ["P4-max", "B4-max"] {
        let bs = entry(name);
        let f = Flats::of(bs.lattice());
        for order in atom_orders(bs.lattice().num_atoms(), 2) {
            ensure(common::el_failures(&f, &order) == 0, || format!("{name} {order:?}: oracle"))?;
            let r = builtlat::shuffle::check_el(&Directed::new(&bs, &order).unwrap());
            ensure(r.ok(), || format!("{name} {order:?}: {:?}", r.failures.first()))?;
            pairs += r.checked;
        }
    }
    Ok(format!("Π4 and B4 under 2 orders each, {pairs} comparable pairs"))
}

fn koszulness() -> Verdict {
    let mut spots = Vec::new();
    for name in ["P3-min", "P4-min", "B3-max", "C4-min"] {
        let bs = entry(name);
        let mobius = Flats::of(bs.lattice()).mobius_hilbert();
        for (variant, want) in [(Variant::Projective, common::projectivize(&mobius)), (Variant::Affine, mobius.clone())] {
            let t = Instant::now();
            let r = koszul_check(&bs, variant).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.d_squared_zero, || format!("{name} {variant:?}: d² ≠ 0"))?;
            ensure(r.homology == want, || format!("{name} {variant:?}: homology {:?}, oracle {want:?}", r.homology))?;
            ensure(r.koszul, || format!("{name} {variant:?}: comparison failed"))?;
            if name == "P3-min" {
                spots.push(format!("{variant:?} {:?}", r.homology));
            }
            if name == "P4-min" {
                spots.push(format!("Π4 {variant:?} {}ms", t.elapsed().as_millis()));
            }
        }
    }
    ensure(spots[0] == "Projective [1, 2]" && spots[1] == "Affine [1, 3, 2]", || format!("spot values {spots:?}"))?;
    Ok(format!("Π3, Π4, B3-max, C4-min; {}", spots.join(", ")))
}

fn cross_module() -> Verdict {
    let mut rows = Vec::new();
    for (name, bs) in catalog().into_iter().filter(|(_, bs)| bs.is_irreducible()) {
        let n = bs.lattice().num_atoms();
        let shuffle = verify_quadratic_gb_factored(&bs, &(0..n).collect::<Vec<_>>()).map_err(|e| e.to_string())?.normal_monomials;
        let fy = common::total(&common::fy_hilbert(&bs));
        let leray: usize =
            LerayModel::build(&bs, Variant::Projective).map_err(|e| e.to_string())?.bigraded_dims().iter().map(|row| row[0]).sum();
        let dec = Decomposition::new(&bs).and_then(|d| d.dims_by_e_degree()).map_err(|e| e.to_string())?[0];
        ensure(shuffle == fy && fy == leray && leray == dec, || {
            format!("{name}: shuffle {shuffle}, fy {fy}, leray {leray}, decomposition {dec}")
        })?;
        rows.push(format!("{name}={fy}"));
    }
    Ok(format!("{} irreducible entries agree: {}", rows.len(), rows.join(" ")))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("fy dimensions match the linear-algebra oracle", fy_dimensions),
        ("poincare duality", poincare_duality),
        ("structure-map laws for all four kinds", structure_maps),
        ("nested-set operad laws", nested_laws),
        ("quadratic groebner basis", groebner_bases),
        ("el-labelings", el_labelings),
        ("koszulness via the leray model", koszulness),
        ("cross-module dimension agreement", cross_module),
    ];
    let start = Instant::now();
    let results: Vec<(Verdict, u128)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
                    (v, t.elapsed().as_millis())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (v, ms))) in criteria.iter().zip(&results).enumerate() {
        match v {
            Ok(detail) => println!("criterion {} PASS  {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {} ms", criteria.len() - failed, start.elapsed().as_millis());
    if failed > 0 {
        std::process::exit(1);
    }
}
