//! Geometric lattices stored as flats.
//!
//! Every element is identified by its atom support (a bitmask over the atom
//! list). Ids are canonical: sorted by rank, then lexicographically by the
//! sorted list of atom indices. Id 0 is the bottom and the last id is the top.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_MAX_ELEMENTS: usize = 1 << 16;
pub const MAX_ATOMS: usize = 64;
pub const MAX_GRAPH_EDGES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("size bound exceeded: {what} has {got}, limit {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("atomicity violated at flat {flat:?}")]
    Atomicity { flat: Vec<String> },
    #[error("Jordan-Hölder violated: {lower:?} is covered by {upper:?} but ranks are {lower_rank} and {upper_rank}")]
    JordanHolder { lower: Vec<String>, upper: Vec<String>, lower_rank: usize, upper_rank: usize },
    #[error("sub-modularity violated for {x:?} and {y:?}")]
    Submodularity { x: Vec<String>, y: Vec<String> },
    #[error("element {0} is not below element {1}")]
    NotBelow(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Lattice {
    atom_labels: Vec<String>,
    names: Vec<String>,
    supports: Vec<u64>,
    ranks: Vec<usize>,
    join: Vec<u32>,
    index: HashMap<u64, usize>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.atom_labels == other.atom_labels && self.supports == other.supports
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn lex_key(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// Rank of each flat as the length of the longest chain from the empty flat.
/// Also returns the lower covers of every flat.
fn longest_chain_ranks(flats: &[u64]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = flats.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| flats[i].count_ones());
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &x in &order {
        let below: Vec<usize> =
            (0..n).filter(|&y| y != x && flats[y] & !flats[x] == 0).collect();
        for &y in &below {
            let covered = below
                .iter()
                .all(|&z| z == y || !(flats[y] & !flats[z] == 0 && flats[z] != flats[y]));
            if covered {
                lower[x].push(y);
            }
        }
    }
    let mut ranks = vec![0usize; n];
    for &x in &order {
        ranks[x] = lower[x].iter().map(|&y| ranks[y] + 1).max().unwrap_or(0);
    }
    (ranks, lower)
}

impl Lattice {
    /// Build from supports that are already known to be the flats of a
    /// geometric lattice. Ids are reassigned canonically.
    fn from_trusted(atom_labels: Vec<String>, flats: Vec<u64>, names: Option<Vec<String>>) -> Lattice {
        let (ranks, _) = longest_chain_ranks(&flats);
        let mut order: Vec<usize> = (0..flats.len()).collect();
        order.sort_by(|&a, &b| (ranks[a], lex_key(flats[a])).cmp(&(ranks[b], lex_key(flats[b]))));
        let supports: Vec<u64> = order.iter().map(|&i| flats[i]).collect();
        let ranks: Vec<usize> = order.iter().map(|&i| ranks[i]).collect();
        let names = match names {
            Some(ns) => order.iter().map(|&i| ns[i].clone()).collect(),
            None => supports.iter().map(|&s| default_name(&atom_labels, s)).collect(),
        };
        let n = supports.len();
        let index: HashMap<u64, usize> = supports.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        // closure of a mask: the smallest flat containing it
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&i| supports[i].count_ones());
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = supports[a] | supports[b];
                let j = match index.get(&m) {
                    Some(&j) => j,
                    None => *by_size.iter().find(|&&i| supports[i] & m == m).expect("full set is a flat"),
                };
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        Lattice { atom_labels, names, supports, ranks, join, index }
    }

    pub fn boolean(n: usize) -> Result<Lattice, LatticeError> {
        if n == 0 || n > 8 {
            return Err(LatticeError::OutOfRange(format!("boolean lattice needs 1 <= n <= 8, got {n}")));
        }
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let flats: Vec<u64> = (0..1u64 << n).collect();
        Ok(Lattice::from_trusted(labels, flats, None))
    }

    pub fn boolean_on(labels: Vec<String>) -> Result<Lattice, LatticeError> {
        let n = labels.len();
        if n == 0 || n > 8 {
            return Err(LatticeError::OutOfRange(format!("boolean lattice needs 1 <= n <= 8, got {n}")));
        }
        Ok(Lattice::from_trusted(labels, (0..1u64 << n).collect(), None))
    }

    /// Partition lattice of {1..n}; atoms are the pair merges in lexicographic order.
    pub fn partition(n: usize) -> Result<Lattice, LatticeError> {
        if !(2..=6).contains(&n) {
            return Err(LatticeError::OutOfRange(format!("partition lattice needs 2 <= n <= 6, got {n}")));
        }
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let labels: Vec<String> = pairs.iter().map(|(i, j)| format!("{}{}", i + 1, j + 1)).collect();
        let mut flats = Vec::new();
        let mut names = Vec::new();
        for blocks in set_partitions(n) {
            let mut mask = 0u64;
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if blocks[i] == blocks[j] {
                    mask |= 1 << k;
                }
            }
            flats.push(mask);
            names.push(partition_name(&blocks));
        }
        Ok(Lattice::from_trusted(labels, flats, Some(names)))
    }

    pub fn graphic(g: &GraphInput) -> Result<Lattice, LatticeError> {
        let edges = g.validated_edges()?;
        let m = edges.len();
        let nv = g.vertices.len();
        let closure = |mask: u64| -> u64 {
            let mut uf: Vec<usize> = (0..nv).collect();
            fn find(uf: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while uf[r] != r {
                    r = uf[r];
                }
                uf[x] = r;
                r
            }
            for k in bits(mask) {
                let (a, b) = edges[k];
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                uf[ra] = rb;
            }
            let mut out = 0u64;
            for (k, &(a, b)) in edges.iter().enumerate() {
                if find(&mut uf, a) == find(&mut uf, b) {
                    out |= 1 << k;
                }
            }
            out
        };
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![0u64];
        seen.insert(0u64);
        while let Some(f) = stack.pop() {
            for k in 0..m {
                if f >> k & 1 == 0 {
                    let c = closure(f | 1 << k);
                    if seen.insert(c) {
                        if seen.len() > DEFAULT_MAX_ELEMENTS {
                            return Err(LatticeError::TooLarge {
                                what: "graphic lattice",
                                got: seen.len(),
                                limit: DEFAULT_MAX_ELEMENTS,
                            });
                        }
                        stack.push(c);
                    }
                }
            }
        }
        let labels = g.edge_labels();
        Ok(Lattice::from_trusted(labels, seen.into_iter().collect(), None))
    }

    /// Validating constructor for arbitrary flat lists.
    pub fn from_flats(atoms: Vec<String>, flats: Vec<Vec<String>>) -> Result<Lattice, LatticeError> {
        if atoms.len() > MAX_ATOMS {
            return Err(LatticeError::TooLarge { what: "atoms", got: atoms.len(), limit: MAX_ATOMS });
        }
        if flats.len() > DEFAULT_MAX_ELEMENTS {
            return Err(LatticeError::TooLarge { what: "flats", got: flats.len(), limit: DEFAULT_MAX_ELEMENTS });
        }
        let pos: HashMap<&str, usize> = atoms.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
        if pos.len() != atoms.len() {
            return Err(LatticeError::NotALattice("duplicate atom label".into()));
        }
        let mut masks = Vec::new();
        for f in &flats {
            let mut m = 0u64;
            for a in f {
                let i = pos
                    .get(a.as_str())
                    .ok_or_else(|| LatticeError::NotALattice(format!("unknown atom {a:?} in a flat")))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        check_flats(&atoms, &masks)?;
        let mut uniq = masks.clone();
        uniq.sort();
        uniq.dedup();
        Ok(Lattice::from_trusted(atoms, uniq, None))
    }

    pub fn from_flats_json(input: &FlatsInput) -> Result<Lattice, LatticeError> {
        Lattice::from_flats(input.atoms.clone(), input.flats.clone())
    }

    /// The interval [x, y] as a lattice of its own, with the embedding into self.
    pub fn interval(&self, x: usize, y: usize) -> Result<(Lattice, Vec<usize>), LatticeError> {
        if !self.leq(x, y) {
            return Err(LatticeError::NotBelow(x, y));
        }
        let atoms: Vec<usize> = self.covers(x).into_iter().filter(|&c| self.leq(c, y)).collect();
        let members: Vec<usize> = (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect();
        let flats: Vec<u64> = members
            .iter()
            .map(|&z| {
                atoms.iter().enumerate().filter(|(_, &a)| self.leq(a, z)).fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let labels: Vec<String> = atoms.iter().map(|&a| self.names[a].clone()).collect();
        let names: Vec<String> = members.iter().map(|&z| self.names[z].clone()).collect();
        let sub = Lattice::from_trusted(labels, flats.clone(), Some(names));
        let mut emb = vec![0; sub.len()];
        for (k, &z) in members.iter().enumerate() {
            emb[sub.index[&flats[k]]] = z;
        }
        Ok((sub, emb))
    }

    /// Cartesian product with the two summand embeddings.
    pub fn product(&self, other: &Lattice) -> Result<(Lattice, Vec<usize>, Vec<usize>), LatticeError> {
        let na = self.num_atoms();
        if na + other.num_atoms() > MAX_ATOMS {
            return Err(LatticeError::TooLarge { what: "atoms", got: na + other.num_atoms(), limit: MAX_ATOMS });
        }
        let total = self.len() * other.len();
        if total > DEFAULT_MAX_ELEMENTS {
            return Err(LatticeError::TooLarge { what: "product lattice", got: total, limit: DEFAULT_MAX_ELEMENTS });
        }
        let mut labels: Vec<String> = self.atom_labels.iter().map(|a| format!("({a},0)")).collect();
        labels.extend(other.atom_labels.iter().map(|b| format!("(0,{b})")));
        let mut flats = Vec::new();
        let mut names = Vec::new();
        for x in 0..self.len() {
            for y in 0..other.len() {
                flats.push(self.supports[x] | other.supports[y] << na);
                names.push(format!("({},{})", self.names[x], other.names[y]));
            }
        }
        let p = Lattice::from_trusted(labels, flats, Some(names));
        let left = (0..self.len()).map(|x| p.index[&self.supports[x]]).collect();
        let right = (0..other.len()).map(|y| p.index[&(other.supports[y] << na)]).collect();
        Ok((p, left, right))
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of the lattice, i.e. of its top element.
    pub fn total_rank(&self) -> usize {
        self.ranks[self.top()]
    }

    pub fn num_atoms(&self) -> usize {
        self.atom_labels.len()
    }

    pub fn atom_labels(&self) -> &[String] {
        &self.atom_labels
    }

    /// Element id of the i-th atom.
    pub fn atom(&self, i: usize) -> usize {
        self.index[&(1u64 << i)]
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.num_atoms()).map(|i| self.atom(i)).collect()
    }

    /// Atom index of an element of rank one.
    pub fn atom_index(&self, x: usize) -> Option<usize> {
        let s = self.supports[x];
        (s.count_ones() == 1 && self.ranks[x] == 1).then(|| s.trailing_zeros() as usize)
    }

    pub fn support(&self, x: usize) -> u64 {
        self.supports[x]
    }

    pub fn atoms_below(&self, x: usize) -> Vec<usize> {
        bits(self.supports[x]).collect()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_support(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.supports[x] & !self.supports[y] == 0
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(0, |acc, x| self.join(acc, x))
    }

    /// Join of the atoms below both elements.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        let common = self.supports[x] & self.supports[y];
        self.join_all(bits(common).map(|i| self.atom(i)))
    }

    /// Smallest flat containing the given atom indices.
    pub fn closure(&self, atoms: u64) -> usize {
        self.join_all(bits(atoms).map(|i| self.atom(i)))
    }

    pub fn covers(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.lt(x, y) && self.ranks[y] == self.ranks[x] + 1).collect()
    }

    pub fn elements_between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect()
    }

    pub fn flats_as_labels(&self, x: usize) -> Vec<String> {
        bits(self.supports[x]).map(|i| self.atom_labels[i].clone()).collect()
    }

    /// Exhaustive check of the geometric lattice axioms.
    pub fn check_axioms(&self) -> Result<(), LatticeError> {
        check_flats(&self.atom_labels, &self.supports)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            atoms: self.atom_labels.clone(),
            flats: (0..self.len()).map(|x| self.flats_as_labels(x)).collect(),
            ranks: self.ranks.clone(),
        }
    }

    /// Atom bijections `f` with `f(flat)` a flat for every flat, i.e. lattice
    /// isomorphisms, returned as element maps. `accept` filters complete maps.
    pub fn isomorphisms<F>(&self, other: &Lattice, limit: Option<usize>, accept: F) -> Vec<Vec<usize>>
    where
        F: Fn(&[usize]) -> bool,
    {
        let n = self.num_atoms();
        if n != other.num_atoms() || self.len() != other.len() || self.ranks != other.ranks {
            return Vec::new();
        }
        // flats grouped by their highest atom so they can be checked as soon as complete
        let mut by_max: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 1..self.len() {
            let hi = 63 - self.supports[x].leading_zeros() as usize;
            by_max[hi].push(x);
        }
        let mut out = Vec::new();
        let mut assign = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.iso_search(other, 0, &by_max, &mut assign, &mut used, &mut out, limit, &accept);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_search<F: Fn(&[usize]) -> bool>(
        &self,
        other: &Lattice,
        k: usize,
        by_max: &[Vec<usize>],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        limit: Option<usize>,
        accept: &F,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let n = assign.len();
        if k == n {
            let map: Vec<usize> = (0..self.len())
                .map(|x| {
                    let img = bits(self.supports[x]).fold(0u64, |m, i| m | 1 << assign[i]);
                    other.index[&img]
                })
                .collect();
            if accept(&map) {
                out.push(map);
            }
            return;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            assign[k] = t;
            let ok = by_max[k].iter().all(|&x| {
                let img = bits(self.supports[x]).fold(0u64, |m, i| m | 1 << assign[i]);
                other.index.get(&img).is_some_and(|&y| other.ranks[y] == self.ranks[x])
            });
            if ok {
                used[t] = true;
                self.iso_search(other, k + 1, by_max, assign, used, out, limit, accept);
                used[t] = false;
            }
        }
        assign[k] = usize::MAX;
    }

    pub fn find_isomorphism(&self, other: &Lattice) -> Option<Vec<usize>> {
        self.isomorphisms(other, Some(1), |_| true).pop()
    }

    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.isomorphisms(self, None, |_| true)
    }
}

fn default_name(labels: &[String], mask: u64) -> String {
    if mask == 0 {
        return "0".into();
    }
    let parts: Vec<&str> = bits(mask).map(|i| labels[i].as_str()).collect();
    if parts.iter().all(|p| p.chars().count() == 1) {
        parts.concat()
    } else {
        format!("{{{}}}", parts.join(","))
    }
}

fn partition_name(blocks: &[usize]) -> String {
    let nb = blocks.iter().max().map_or(0, |m| m + 1);
    let parts: Vec<String> = (0..nb)
        .map(|b| {
            blocks
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == b)
                .map(|(i, _)| (i + 1).to_string())
                .collect::<String>()
        })
        .collect();
    parts.join("|")
}

/// Restricted growth strings of length n.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let m = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=m {
            cur.push(b);
            rec(cur, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// Validate a family of atom-support sets against the geometric lattice axioms.
fn check_flats(atoms: &[String], masks: &[u64]) -> Result<(), LatticeError> {
    let labels = |m: u64| -> Vec<String> { bits(m).map(|i| atoms[i].clone()).collect() };
    let full = if atoms.len() == 64 { u64::MAX } else { (1u64 << atoms.len()) - 1 };
    let set: std::collections::HashSet<u64> = masks.iter().copied().collect();
    if !set.contains(&0) {
        return Err(LatticeError::NotALattice("the empty flat is missing".into()));
    }
    if !set.contains(&full) {
        return Err(LatticeError::NotALattice("the flat of all atoms is missing".into()));
    }
    let flats: Vec<u64> = {
        let mut v: Vec<u64> = set.iter().copied().collect();
        v.sort();
        v
    };
    for (i, &a) in flats.iter().enumerate() {
        for &b in &flats[i + 1..] {
            if !set.contains(&(a & b)) {
                return Err(LatticeError::NotALattice(format!(
                    "{:?} and {:?} have no meet among the flats",
                    labels(a),
                    labels(b)
                )));
            }
        }
    }
    // atomicity: rank-one flats are single atoms and generate every flat
    let closure = |m: u64| -> u64 {
        flats.iter().filter(|&&f| f & m == m).fold(full, |acc, &f| acc & f)
    };
    let singles: Vec<u64> = flats.iter().copied().filter(|&f| f != 0 && flats.iter().all(|&g| g == 0 || g == f || g & !f != 0)).collect();
    for &s in &singles {
        if s.count_ones() != 1 {
            return Err(LatticeError::Atomicity { flat: labels(s) });
        }
    }
    for &f in &flats {
        let gen = singles.iter().filter(|&&s| s & !f == 0).fold(0u64, |m, &s| m | s);
        if closure(gen) != f {
            return Err(LatticeError::Atomicity { flat: labels(f) });
        }
    }
    let (ranks, lower) = longest_chain_ranks(&flats);
    for (x, covers) in lower.iter().enumerate() {
        for &y in covers {
            if ranks[x] != ranks[y] + 1 {
                return Err(LatticeError::JordanHolder {
                    lower: labels(flats[y]),
                    upper: labels(flats[x]),
                    lower_rank: ranks[y],
                    upper_rank: ranks[x],
                });
            }
        }
    }
    let pos: HashMap<u64, usize> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    for i in 0..flats.len() {
        for j in i + 1..flats.len() {
            let jn = pos[&closure(flats[i] | flats[j])];
            let mt = pos[&(flats[i] & flats[j])];
            if ranks[jn] + ranks[mt] > ranks[i] + ranks[j] {
                return Err(LatticeError::Submodularity { x: labels(flats[i]), y: labels(flats[j]) });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeJson {
    pub atoms: Vec<String>,
    pub flats: Vec<Vec<String>>,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FlatsInput {
    pub atoms: Vec<String>,
    pub flats: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphInput {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphInput {
    pub fn new<S: Into<String>>(vertices: Vec<S>, edges: Vec<(S, S)>) -> Self {
        GraphInput {
            vertices: vertices.into_iter().map(Into::into).collect(),
            edges: edges.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }

    pub fn path(n: usize) -> Self {
        let v: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let e = (0..n.saturating_sub(1)).map(|i| (v[i].clone(), v[i + 1].clone())).collect();
        GraphInput { vertices: v, edges: e }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = GraphInput::path(n);
        if n >= 3 {
            g.edges.push((g.vertices[n - 1].clone(), g.vertices[0].clone()));
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let v: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let e = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (v[i].clone(), v[j].clone())).collect();
        GraphInput { vertices: v, edges: e }
    }

    fn vertex_index(&self) -> Result<HashMap<&str, usize>, LatticeError> {
        let idx: HashMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if idx.len() != self.vertices.len() {
            return Err(LatticeError::InvalidGraph("duplicate vertex".into()));
        }
        Ok(idx)
    }

    /// Edges as vertex index pairs, rejecting loops, parallel edges and unknown vertices.
    pub fn validated_edges(&self) -> Result<Vec<(usize, usize)>, LatticeError> {
        if self.edges.len() > MAX_GRAPH_EDGES {
            return Err(LatticeError::TooLarge { what: "graph edges", got: self.edges.len(), limit: MAX_GRAPH_EDGES });
        }
        let idx = self.vertex_index()?;
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for (a, b) in &self.edges {
            let ia = *idx.get(a.as_str()).ok_or_else(|| LatticeError::InvalidGraph(format!("unknown vertex {a:?}")))?;
            let ib = *idx.get(b.as_str()).ok_or_else(|| LatticeError::InvalidGraph(format!("unknown vertex {b:?}")))?;
            if ia == ib {
                return Err(LatticeError::InvalidGraph(format!("self-loop at {a:?}")));
            }
            if !seen.insert((ia.min(ib), ia.max(ib))) {
                return Err(LatticeError::InvalidGraph(format!("parallel edge {a:?}-{b:?}")));
            }
            out.push((ia, ib));
        }
        Ok(out)
    }

    pub fn edge_labels(&self) -> Vec<String> {
        let short = self.vertices.iter().all(|v| v.chars().count() == 1);
        self.edges
            .iter()
            .map(|(a, b)| if short { format!("{a}{b}") } else { format!("{a}-{b}") })
            .collect()
    }

    /// Vertex subsets (as bitmasks) inducing connected subgraphs.
    pub fn tubes(&self) -> Result<Vec<u64>, LatticeError> {
        let edges = self.validated_edges()?;
        let n = self.vertices.len();
        if n > 8 {
            return Err(LatticeError::OutOfRange(format!("tubes need at most 8 vertices, got {n}")));
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in &edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        let connected = |m: u64| {
            let start = m.trailing_zeros() as usize;
            let mut seen = 1u64 << start;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= adj[v] & m & !seen;
                }
                seen |= next;
                frontier = next;
            }
            seen == m
        };
        Ok((1..1u64 << n).filter(|&m| connected(m)).collect())
    }
}

pub type SharedLattice = Arc<Lattice>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_sizes() {
        let b3 = Lattice::boolean(3).unwrap();
        assert_eq!(b3.len(), 8);
        assert_eq!(b3.atoms().len(), 3);
        assert_eq!(b3.total_rank(), 3);
        assert!(b3.check_axioms().is_ok());
        assert!(Lattice::boolean(9).is_err());
    }

    #[test]
    fn partition_names() {
        let p4 = Lattice::partition(4).unwrap();
        assert_eq!(p4.len(), 15);
        assert_eq!(p4.name(p4.top()), "1234");
        assert_eq!(p4.name(p4.atom(0)), "12|3|4");
    }

    #[test]
    fn join_and_meet() {
        let p3 = Lattice::partition(3).unwrap();
        let (a, b) = (p3.atom(0), p3.atom(1));
        assert_eq!(p3.join(a, b), p3.top());
        assert_eq!(p3.meet(a, b), 0);
    }
}
