//! Leray models: bigraded dimensions and homology against OS.
use builtlat::bar::{koszul_check, Variant};
use builtlat::catalog::find;

fn main() {
    let names: Vec<String> = std::env::args().skip(1).collect();
    let names = if names.is_empty() { vec!["P3-min".into(), "P4-min".into(), "B3-max".into(), "C4-min".into()] } else { names };
    for name in names {
        let bs = find(&name).expect("catalog entry").resolve().unwrap();
        for v in [Variant::Projective, Variant::Affine] {
            let t = std::time::Instant::now();
            let r = koszul_check(&bs, v).unwrap();
            println!("{name:<8} {v:?}");
            for (a, row) in r.bigraded.iter().enumerate() {
                println!("    x^{a}: {row:?}");
            }
            println!("    homology {:?} vs {:?}  koszul {}  ({:.2?})", r.homology, r.comparison.os_dims, r.koszul, t.elapsed());
        }
    }
}
