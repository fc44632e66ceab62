//! Building sets and nested sets of the rank-3 partition lattice, with one
//! composition and its decomposition.
use builtlat::building::BuildingSet;
use builtlat::lattice::Lattice;
use builtlat::nested::Ctx;
use std::collections::BTreeMap;
use std::sync::Arc;

fn main() {
    let l = Arc::new(Lattice::partition(4).unwrap());
    for (name, bs) in [("minimal", BuildingSet::minimal(l.clone())), ("maximal", BuildingSet::maximal(l.clone()))] {
        let ctx = Ctx::whole(&bs);
        let all = ctx.enumerate(false, None).unwrap();
        let irr = ctx.enumerate(true, None).unwrap();
        println!("{name}: {} members, {} nested sets, {} irreducible", bs.len(), all.len(), irr.len());
    }

    let bs = BuildingSet::minimal(l.clone());
    let ctx = Ctx::whole(&bs);
    let by_name = |n: &str| (0..l.len()).find(|&i| l.name(i) == n).unwrap();
    let top = bs.top();
    let g = by_name("123|4");
    let s = vec![g, top];
    let mut locals = BTreeMap::new();
    locals.insert(g, vec![by_name("12|3|4"), g]);
    locals.insert(top, vec![top]);
    let t = ctx.compose(&s, &locals).unwrap();
    let names = |v: &[usize]| v.iter().map(|&x| l.name(x).to_string()).collect::<Vec<_>>();
    println!("compose {:?} with {:?} -> {:?}", names(&s), names(&locals[&g]), names(&t));
    let back = ctx.decompose(&t, &s).unwrap();
    println!("decompose back: {:?}", back.iter().map(|(k, v)| (l.name(*k).to_string(), names(v))).collect::<Vec<_>>());
}
