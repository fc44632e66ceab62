//! Brute-force oracles shared by the integration tests. Everything here is
//! computed from the flats of a lattice and the member list of a building
//! set, without going through the library's own algebra.
#![allow(dead_code)]

use builtlat::building::BuildingSet;
use builtlat::lattice::Lattice;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse rank over the rationals by plain row echelon elimination.
pub fn rank(rows: Vec<BTreeMap<usize, Q>>) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, Q>> = HashMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        while let Some((&lead, c)) = row.iter().next() {
            let Some(p) = pivots.get(&lead) else {
                let inv = c.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                pivots.insert(lead, row);
                break;
            };
            let c = c.clone();
            for (k, v) in p {
                let e = row.entry(*k).or_insert_with(Q::zero);
                *e -= &c * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
    }
    pivots.len()
}

pub fn dense_rank(m: &[Vec<Q>]) -> usize {
    rank(m.iter().map(|r| r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect()).collect())
}

/// A lattice seen only through its flats as atom bitmasks.
pub struct Flats {
    pub supports: Vec<u64>,
    pub ranks: Vec<usize>,
    pub atoms: Vec<usize>,
}

impl Flats {
    pub fn of(l: &Lattice) -> Flats {
        let supports: Vec<u64> = (0..l.len()).map(|x| l.support(x)).collect();
        let mut by_size: Vec<usize> = (0..supports.len()).collect();
        by_size.sort_by_key(|&x| supports[x].count_ones());
        let mut ranks = vec![0; supports.len()];
        for (i, &y) in by_size.iter().enumerate() {
            for &x in &by_size[..i] {
                if supports[x] != supports[y] && supports[x] & !supports[y] == 0 {
                    ranks[y] = ranks[y].max(ranks[x] + 1);
                }
            }
        }
        let mut atoms: Vec<usize> = (0..supports.len()).filter(|&x| supports[x].count_ones() == 1).collect();
        atoms.sort_by_key(|&x| supports[x].trailing_zeros());
        Flats { supports, ranks, atoms }
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.supports[x] & !self.supports[y] == 0
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn closure(&self, mask: u64) -> usize {
        (0..self.len())
            .filter(|&x| mask & !self.supports[x] == 0)
            .min_by_key(|&x| self.supports[x].count_ones())
            .expect("the top contains every atom")
    }

    pub fn join(&self, xs: &[usize]) -> usize {
        self.closure(xs.iter().fold(0, |m, &x| m | self.supports[x]))
    }

    pub fn bottom(&self) -> usize {
        self.closure(0)
    }

    pub fn top(&self) -> usize {
        self.closure(u64::MAX >> (64 - self.atoms.len()))
    }

    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && self.ranks[y] == self.ranks[x] + 1
    }

    /// |μ(0̂, x)| summed by rank.
    pub fn mobius_hilbert(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.ranks[x]);
        let mut mu = vec![0i64; self.len()];
        for &x in &order {
            mu[x] = if self.ranks[x] == 0 { 1 } else { -order.iter().filter(|&&y| self.lt(y, x)).map(|&y| mu[y]).sum::<i64>() };
        }
        let mut h = vec![0; self.ranks[self.top()] + 1];
        for x in 0..self.len() {
            h[self.ranks[x]] += mu[x].unsigned_abs() as usize;
        }
        h
    }
}

fn subsets<T: Clone>(v: &[T]) -> Vec<Vec<T>> {
    (0u64..1 << v.len()).map(|m| v.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, x)| x.clone()).collect()).collect()
}

/// Building-set axioms from the definition: every X above the bottom is the
/// join of its maximal members below, ranks add, and the join map from the
/// product of lower intervals is a bijection.
pub fn is_building(f: &Flats, members: &[usize]) -> bool {
    let bot = f.bottom();
    for x in (0..f.len()).filter(|&x| x != bot) {
        let below: Vec<usize> = members.iter().copied().filter(|&g| f.leq(g, x)).collect();
        let maxes: Vec<usize> = below.iter().copied().filter(|&g| !below.iter().any(|&h| f.lt(g, h))).collect();
        if maxes.is_empty() || f.join(&maxes) != x {
            return false;
        }
        if maxes.iter().map(|&g| f.ranks[g]).sum::<usize>() != f.ranks[x] {
            return false;
        }
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for &g in &maxes {
            let lower: Vec<usize> = (0..f.len()).filter(|&y| f.leq(y, g)).collect();
            tuples = tuples.into_iter().flat_map(|t| lower.iter().map(move |&y| [t.clone(), vec![y]].concat())).collect();
        }
        let mut images: Vec<usize> = tuples.iter().map(|t| f.join(t)).collect();
        let count = images.len();
        images.sort();
        images.dedup();
        if images.len() != count || count != (0..f.len()).filter(|&y| f.leq(y, x)).count() {
            return false;
        }
    }
    true
}

/// Nested from the definition: every antichain of two or more members has
/// its join outside the building set.
pub fn is_nested(f: &Flats, members: &[usize], s: &[usize]) -> bool {
    subsets(s).into_iter().filter(|t| t.len() >= 2).all(|t| {
        let antichain = t.iter().all(|&a| t.iter().all(|&b| a == b || !f.leq(a, b)));
        !antichain || !members.contains(&f.join(&t))
    })
}

/// Every nested subset of the members, including the empty one.
pub fn all_nested(f: &Flats, members: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    while let Some(s) = frontier.pop() {
        let start = s.last().map_or(0, |&g| members.iter().position(|&m| m == g).unwrap() + 1);
        for &g in &members[start..] {
            let t = [s.clone(), vec![g]].concat();
            if is_nested(f, members, &t) {
                out.push(t.clone());
                frontier.push(t);
            }
        }
    }
    out
}

fn compositions(d: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    if d < parts {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=d - parts + 1 {
        for rest in compositions(d - first, parts - 1) {
            out.push([vec![first], rest].concat());
        }
    }
    out
}

/// Monomials as sorted (member, exponent) lists.
type Monomial = Vec<(usize, usize)>;

fn times_var(m: &Monomial, g: usize) -> Monomial {
    let mut out = m.clone();
    match out.iter_mut().find(|(h, _)| *h == g) {
        Some(p) => p.1 += 1,
        None => {
            out.push((g, 1));
            out.sort();
        }
    }
    out
}

/// Hilbert series of Q[x_G] modulo non-nested products and the linear forms
/// Σ_{G ≥ H} x_G for atoms H, in degrees 0 through the rank of the top.
pub fn fy_hilbert(bs: &BuildingSet) -> Vec<usize> {
    let f = Flats::of(bs.lattice());
    let members = bs.members().to_vec();
    let nested = all_nested(&f, &members);
    let top_rank = f.ranks[f.top()];
    let monomials = |d: usize| -> Vec<Monomial> {
        nested
            .iter()
            .flat_map(|s| compositions(d, s.len()).into_iter().map(move |c| s.iter().copied().zip(c).collect::<Monomial>()))
            .collect()
    };
    let mut out = vec![1];
    for d in 1..=top_rank {
        let cols: HashMap<Monomial, usize> = monomials(d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for m in monomials(d - 1) {
            for &h in &f.atoms {
                let mut row = BTreeMap::new();
                for &g in members.iter().filter(|&&g| f.leq(h, g)) {
                    if let Some(&c) = cols.get(&times_var(&m, g)) {
                        *row.entry(c).or_insert_with(Q::zero) += Q::one();
                    }
                }
                rows.push(row);
            }
        }
        out.push(cols.len() - rank(rows));
    }
    out
}

fn wedge_sign(a: u64, b: u64) -> i64 {
    let mut inversions = 0;
    for i in 0..64 {
        if b >> i & 1 == 1 {
            inversions += (a >> (i + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exterior algebra on the atoms modulo ∂e_S for every dependent S.
pub fn os_hilbert_by_quotient(l: &Lattice) -> Vec<usize> {
    let f = Flats::of(l);
    let n = f.atoms.len();
    let dependent = |s: u64| f.ranks[f.closure(s)] < s.count_ones() as usize;
    let boundary = |s: u64| -> Vec<(u64, i64)> {
        (0..n).filter(|i| s >> i & 1 == 1).enumerate().map(|(k, i)| (s & !(1 << i), if k % 2 == 0 { 1 } else { -1 })).collect()
    };
    let mut h = Vec::new();
    for k in 0..=n {
        let basis: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect();
        let index: HashMap<u64, usize> = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut rows = Vec::new();
        for s in (1u64..1 << n).filter(|&s| dependent(s)) {
            for t in (0u64..1 << n).filter(|t| t.count_ones() + s.count_ones() == k as u32 + 1) {
                let mut row = BTreeMap::new();
                for (b, c) in boundary(s) {
                    if t & b == 0 {
                        *row.entry(index[&(t | b)]).or_insert_with(Q::zero) += qi(c * wedge_sign(t, b));
                    }
                }
                rows.push(row);
            }
        }
        h.push(basis.len() - rank(rows));
    }
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }
    h
}

/// Divide a Hilbert series by 1 + t.
pub fn projectivize(h: &[usize]) -> Vec<usize> {
    let mut out: Vec<i64> = Vec::new();
    let mut carry = 0i64;
    for &a in &h[..h.len().saturating_sub(1)] {
        carry = a as i64 - carry;
        out.push(carry);
    }
    assert!(out.iter().all(|&c| c >= 0));
    out.into_iter().map(|c| c as usize).collect()
}

/// Label of a covering X ≺ Y: one plus the position of the first atom in
/// `order` whose join with X is Y.
pub fn el_label(f: &Flats, order: &[usize], x: usize, y: usize) -> usize {
    1 + order.iter().position(|&i| f.join(&[x, f.atoms[i]]) == y).unwrap()
}

pub fn maximal_chains(f: &Flats, x: usize, y: usize) -> Vec<Vec<usize>> {
    if x == y {
        return vec![vec![x]];
    }
    (0..f.len())
        .filter(|&c| f.covers(x, c) && f.leq(c, y))
        .flat_map(|c| maximal_chains(f, c, y).into_iter().map(move |rest| [vec![x], rest].concat()))
        .collect()
}

/// Number of comparable pairs violating the EL property under `order`.
pub fn el_failures(f: &Flats, order: &[usize]) -> usize {
    let mut bad = 0;
    for x in 0..f.len() {
        for y in (0..f.len()).filter(|&y| f.lt(x, y)) {
            let labelled: Vec<Vec<usize>> = maximal_chains(f, x, y)
                .iter()
                .map(|c| c.windows(2).map(|w| el_label(f, order, w[0], w[1])).collect())
                .collect();
            let increasing: Vec<&Vec<usize>> = labelled.iter().filter(|l| l.windows(2).all(|w| w[0] < w[1])).collect();
            let least = labelled.iter().min().unwrap();
            if increasing.len() != 1 || increasing[0] != least {
                bad += 1;
            }
        }
    }
    bad
}

pub fn total(h: &[usize]) -> usize {
    h.iter().sum()
}

pub fn is_unit(q: &Q) -> bool {
    q.abs().is_one()
}

/// Element of `l` spanned by the atoms with the given labels.
pub fn el(l: &Lattice, labels: &[&str]) -> usize {
    let mask = labels.iter().fold(0u64, |m, s| m | 1 << l.atom_labels().iter().position(|a| a == s).expect("atom label"));
    l.element_by_support(mask).expect("a flat")
}

pub fn entry(name: &str) -> BuildingSet {
    builtlat::catalog::find(name).expect("catalog entry").resolve().expect("valid entry")
}
