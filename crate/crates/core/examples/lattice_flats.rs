//! Flats, ranks and atoms of a few geometric lattices.
use builtlat::lattice::{GraphInput, Lattice};

fn show(name: &str, l: &Lattice) {
    let mut by_rank = vec![0; l.total_rank() + 1];
    for x in 0..l.len() {
        by_rank[l.rank(x)] += 1;
    }
    println!("{name:<10} {} elements, rank {}, flats per rank {:?}", l.len(), l.total_rank(), by_rank);
    l.check_axioms().expect("geometric lattice");
}

fn main() {
    show("B4", &Lattice::boolean(4).unwrap());
    show("Pi4", &Lattice::partition(4).unwrap());
    show("K4", &Lattice::graphic(&GraphInput::complete(4)).unwrap());
    let c4 = Lattice::graphic(&GraphInput::cycle(4)).unwrap();
    show("C4", &c4);
    for x in 0..c4.len() {
        println!("  {:>8}  rank {}  covers {:?}", c4.name(x), c4.rank(x), c4.covers(x).iter().map(|&y| c4.name(y)).collect::<Vec<_>>());
    }
}
