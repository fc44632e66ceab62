//! Normal monomials of FY^∨ under a few atom orders, with EL and admissibility checks.
use builtlat::catalog::default_catalog;
use builtlat::shuffle::{check_admissibility, check_el, verify_quadratic_gb, Directed};

fn main() {
    let only = std::env::args().nth(1);
    for e in default_catalog() {
        if only.as_deref().is_some_and(|o| o != e.name) {
            continue;
        }
        let bs = e.resolve().expect("catalog entry");
        if !bs.is_irreducible() {
            println!("{:<14} reducible, skipped", e.name);
            continue;
        }
        let n = bs.lattice().num_atoms();
        let t = std::time::Instant::now();
        let id: Vec<usize> = (0..n).collect();
        let rev: Vec<usize> = (0..n).rev().collect();
        let mut line = format!("{:<14}", e.name);
        for order in [id.clone(), rev] {
            let r = verify_quadratic_gb(&bs, &order).expect("gb check");
            line += &format!(" {:?}: {}/{}/{} {}", order, r.normal_monomials, r.by_frames, r.fy_dim, r.verdict);
        }
        let dir = Directed::new(&bs, &id).unwrap();
        let el = check_el(&dir);
        let adm = check_admissibility(&dir, 3).unwrap();
        line += &format!(" el {}/{} adm {}/{} ({:.2?})", el.checked - el.failures.len(), el.checked, adm.checked - adm.failures.len(), adm.checked, t.elapsed());
        println!("{line}");
        for f in adm.failures.iter().take(3) {
            println!("   {f}");
        }
    }
}
