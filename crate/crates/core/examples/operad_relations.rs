use builtlat::catalog::default_catalog;
use builtlat::operad::FyOperad;
use builtlat::os_operad::OsOperad;

fn main() {
    let only: Option<String> = std::env::args().nth(1);
    for e in default_catalog() {
        if only.as_deref().is_some_and(|o| o != e.name) {
            continue;
        }
        let bs = e.resolve().expect("catalog entry");
        let Ok(op) = FyOperad::new(&bs) else {
            println!("{:<14} reducible, skipped", e.name);
            continue;
        };
        let t = std::time::Instant::now();
        let wd = op.check_well_defined().unwrap();
        let coop = op.check_cooperad_relations().unwrap();
        let pd = op.check_pd_relations().unwrap();
        let conj = op.check_pd_conjugation().unwrap();
        let nested = op.check_nested_formula(None).unwrap();
        let (_, ev) = op.evaluation_matrix().unwrap();
        let os = OsOperad::new(&bs, None).unwrap();
        let os_wd = os.check_well_defined().unwrap();
        let os_rel = os.check_relations(false).unwrap();
        let lands = os.check_odd_lands().unwrap();
        let odd_rel = os.check_relations(true).unwrap();
        let fmt = |r: &builtlat::operad::CheckReport| format!("{}/{}", r.checked - r.failures.len(), r.checked);
        println!(
            "{:<14} wd {} coop {} pd {} conj {} nested {} eval rank {}/{} | os wd {} rel {} odd lands {} rel {} ({:.2?})",
            e.name,
            fmt(&wd),
            coop.iter().map(|(_, r)| fmt(r)).collect::<Vec<_>>().join(","),
            pd.iter().map(|(_, r)| fmt(r)).collect::<Vec<_>>().join(","),
            fmt(&conj),
            fmt(&nested),
            ev.rank(),
            op.whole().unwrap().dim(),
            fmt(&os_wd),
            os_rel.iter().map(|(_, r)| fmt(r)).collect::<Vec<_>>().join(","),
            fmt(&lands),
            odd_rel.iter().map(|(_, r)| fmt(r)).collect::<Vec<_>>().join(","),
            t.elapsed()
        );
    }
}
