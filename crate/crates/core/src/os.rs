//! Orlik–Solomon algebras, the derivation δ and its kernel.
//!
//! Exterior monomials are bitmasks over atom indices; the sign of a
//! monomial refers to its atoms listed increasingly in the chosen atom
//! order. As for FY rings, each degree is handled by row reduction with
//! the no-broken-circuit monomials placed first.

use crate::lattice::{Lattice, LatticeError};
use crate::linalg::{Mat, Reducer, SparseVec, Q};
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OsError {
    #[error("atom index {0} is out of range")]
    UnknownAtom(usize),
    #[error("too many atoms for circuit enumeration: {0}")]
    TooManyAtoms(usize),
    #[error("degree {degree}: relations have rank {rank}, expected {expected}")]
    Inconsistent { degree: usize, rank: usize, expected: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

const MAX_OS_ATOMS: usize = 24;

/// Element of the exterior algebra on the atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ext(BTreeMap<u64, Q>);

impl Ext {
    pub fn zero() -> Ext {
        Ext(BTreeMap::new())
    }

    pub fn one() -> Ext {
        Ext::term(0, Q::one())
    }

    pub fn term(mask: u64, c: Q) -> Ext {
        let mut e = Ext::zero();
        e.add_term(mask, c);
        e
    }

    pub fn add_term(&mut self, mask: u64, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(mask) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Q)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, mask: u64) -> Q {
        self.0.get(&mask).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Ext) -> Ext {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Ext) -> Ext {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Ext {
        let mut out = Ext::zero();
        for (m, c) in &self.0 {
            out.add_term(*m, c * k);
        }
        out
    }
}

struct OsPiece {
    cols: Vec<u64>,
    col_of: HashMap<u64, usize>,
    n_normal: usize,
    nf: Vec<SparseVec>,
}

pub struct OsAlgebra {
    lattice: Arc<Lattice>,
    order: Vec<usize>,
    pos: Vec<usize>,
    circuits: Vec<u64>,
    basis: Vec<Vec<u64>>,
    pieces: Vec<OsPiece>,
}

impl std::fmt::Debug for OsAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OsAlgebra").field("order", &self.order).field("hilbert", &self.hilbert()).finish()
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Subsets of {0..n} of size k, as masks, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(n: usize, k: usize, from: usize, cur: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in from..n {
            if n - i < k {
                break;
            }
            rec(n, k - 1, i + 1, cur | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, 0, &mut out);
    out
}

/// Minimal dependent atom sets.
pub fn circuits(l: &Lattice) -> Result<Vec<u64>, OsError> {
    let n = l.num_atoms();
    if n > MAX_OS_ATOMS {
        return Err(OsError::TooManyAtoms(n));
    }
    let dependent = |m: u64| l.rank(l.closure(m)) < m.count_ones() as usize;
    let mut out: Vec<u64> = Vec::new();
    for k in 1..=(l.total_rank() + 1).min(n) {
        for m in subsets(n, k) {
            if dependent(m) && !out.iter().any(|&c| c & m == c) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

impl OsAlgebra {
    /// `order` lists atom indices from smallest to largest; identity when absent.
    pub fn new(lattice: Arc<Lattice>, order: Option<Vec<usize>>) -> Result<OsAlgebra, OsError> {
        let n = lattice.num_atoms();
        let order = match order {
            Some(o) => crate::catalog::validate_order(&o, n)?,
            None => (0..n).collect(),
        };
        let mut pos = vec![0; n];
        for (p, &a) in order.iter().enumerate() {
            pos[a] = p;
        }
        let circuits = circuits(&lattice)?;
        let rank = lattice.total_rank();
        let independent = |m: u64| lattice.rank(lattice.closure(m)) == m.count_ones() as usize;
        let broken: Vec<u64> = circuits
            .iter()
            .map(|&c| {
                let min = bits(c).min_by_key(|&a| pos[a]).expect("nonempty");
                c & !(1 << min)
            })
            .collect();
        let mut alg = OsAlgebra { lattice: lattice.clone(), order, pos, circuits, basis: Vec::new(), pieces: Vec::new() };
        for d in 0..=rank {
            let ind: Vec<u64> = subsets(n, d).into_iter().filter(|&m| independent(m)).collect();
            let (nbc, rest): (Vec<u64>, Vec<u64>) = ind.into_iter().partition(|&m| !broken.iter().any(|&b| b & m == b));
            let n_normal = nbc.len();
            let cols: Vec<u64> = nbc.iter().copied().chain(rest).collect();
            let col_of: HashMap<u64, usize> = cols.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let mut red = Reducer::new();
            for &c in &alg.circuits {
                let k = c.count_ones() as usize;
                if k - 1 > d {
                    continue;
                }
                let dc = alg.delta(&Ext::term(c, Q::one()));
                for t in subsets(n, d + 1 - k) {
                    let row = alg.wedge(&dc, &Ext::term(t, Q::one()));
                    let entries = row.terms().filter_map(|(m, x)| col_of.get(m).map(|&j| (j, x.clone())));
                    red.insert(SparseVec::from_entries(entries));
                }
            }
            let expected = cols.len() - n_normal;
            if red.rank() != expected || (0..n_normal).any(|c| red.is_pivot(c)) {
                return Err(OsError::Inconsistent { degree: d, rank: red.rank(), expected });
            }
            let nf = (0..cols.len()).map(|c| red.reduce(&SparseVec::from_entries([(c, Q::one())]))).collect();
            alg.basis.push(nbc);
            alg.pieces.push(OsPiece { cols, col_of, n_normal, nf });
        }
        Ok(alg)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn circuits(&self) -> &[u64] {
        &self.circuits
    }

    /// No-broken-circuit sets by degree.
    pub fn nbc_basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Atoms of a mask, increasing in the atom order.
    pub fn ordered(&self, mask: u64) -> Vec<usize> {
        let mut v: Vec<usize> = bits(mask).collect();
        v.sort_by_key(|&a| self.pos[a]);
        v
    }

    /// e_{a1} ∧ … ∧ e_{ak} for atoms in the given order.
    pub fn monomial(&self, atoms: &[usize]) -> Result<Ext, OsError> {
        let mut e = Ext::one();
        for &a in atoms {
            if a >= self.pos.len() {
                return Err(OsError::UnknownAtom(a));
            }
            e = self.wedge(&e, &Ext::term(1 << a, Q::one()));
        }
        Ok(e)
    }

    pub fn generator(&self, a: usize) -> Ext {
        Ext::term(1 << a, Q::one())
    }

    fn merge_sign(&self, a: u64, b: u64) -> bool {
        // number of pairs (x in a, y in b) with x after y
        let mut inv = 0usize;
        for x in bits(a) {
            for y in bits(b) {
                if self.pos[x] > self.pos[y] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }

    /// Product in the exterior algebra, without reduction.
    pub fn wedge(&self, a: &Ext, b: &Ext) -> Ext {
        let mut out = Ext::zero();
        for (&m1, c1) in a.terms() {
            for (&m2, c2) in b.terms() {
                if m1 & m2 != 0 {
                    continue;
                }
                let c = c1 * c2;
                out.add_term(m1 | m2, if self.merge_sign(m1, m2) { -c } else { c });
            }
        }
        out
    }

    /// δ(e_{H1}…e_{Hk}) = Σ (−1)^{i−1} e_{H1}…ê_{Hi}…e_{Hk}.
    pub fn delta(&self, x: &Ext) -> Ext {
        let mut out = Ext::zero();
        for (&m, c) in x.terms() {
            for (i, a) in self.ordered(m).into_iter().enumerate() {
                let s = if i % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_term(m & !(1 << a), s);
            }
        }
        out
    }

    /// Normal form in the nbc basis.
    pub fn reduce(&self, x: &Ext) -> Ext {
        let mut out = Ext::zero();
        for (&m, c) in x.terms() {
            let d = m.count_ones() as usize;
            let Some(piece) = self.pieces.get(d) else { continue };
            if let Some(&col) = piece.col_of.get(&m) {
                for (j, v) in piece.nf[col].entries() {
                    out.add_term(piece.cols[*j], c * v);
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &Ext, b: &Ext) -> Ext {
        self.reduce(&self.wedge(a, b))
    }

    pub fn coords(&self, x: &Ext, d: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.basis.get(d).map_or(0, Vec::len)];
        if let Some(piece) = self.pieces.get(d) {
            for (&m, c) in x.terms() {
                if m.count_ones() as usize == d {
                    let col = piece.col_of[&m];
                    assert!(col < piece.n_normal, "coords expects a reduced element");
                    v[col] = c.clone();
                }
            }
        }
        v
    }

    pub fn from_coords(&self, d: usize, v: &[Q]) -> Ext {
        let mut e = Ext::zero();
        for (&m, c) in self.basis[d].iter().zip(v) {
            e.add_term(m, c.clone());
        }
        e
    }

    /// Matrix of δ from degree d to degree d−1 in nbc bases.
    pub fn delta_matrix(&self, d: usize) -> Mat {
        let rows = if d == 0 { 0 } else { self.basis[d - 1].len() };
        let cols: Vec<Vec<Q>> = self.basis[d]
            .iter()
            .map(|&m| if d == 0 { vec![] } else { self.coords(&self.reduce(&self.delta(&Ext::term(m, Q::one()))), d - 1) })
            .collect();
        Mat::from_columns(rows, &cols)
    }

    /// Kernel of δ by degree, as coordinate vectors in the nbc basis.
    pub fn projective_basis(&self) -> Vec<Vec<Vec<Q>>> {
        (0..self.basis.len())
            .map(|d| {
                if d == 0 {
                    vec![vec![Q::one()]]
                } else {
                    self.delta_matrix(d).nullspace()
                }
            })
            .collect()
    }

    pub fn projective_hilbert(&self) -> Vec<usize> {
        let mut h: Vec<usize> = self.projective_basis().iter().map(Vec::len).collect();
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    /// Is ker δ = im δ in every positive degree, and does the kernel
    /// contain the image?
    pub fn kernel_equals_image(&self) -> bool {
        let top = self.basis.len();
        (0..top).all(|d| {
            let out = self.delta_matrix(d);
            let kernel = if d == 0 { 1 } else { self.basis[d].len() - out.rank() };
            let image = if d + 1 < top { self.delta_matrix(d + 1).rank() } else { 0 };
            let contained = d + 1 >= top || d == 0 || out.mul(&self.delta_matrix(d + 1)).is_zero();
            // degree 0: the kernel is everything, the image of δ on degree 1 is the constants
            contained && kernel == image
        })
    }

    /// Do products of the differences e_H − e_{H0} span the kernel of δ?
    pub fn kernel_generated_by_differences(&self) -> bool {
        let n = self.pos.len();
        if n == 0 {
            return true;
        }
        let h0 = self.order[0];
        let diffs: Vec<Ext> = (0..n)
            .filter(|&a| a != h0)
            .map(|a| self.generator(a).sub(&self.generator(h0)))
            .collect();
        let kernel = self.projective_basis();
        let mut layer = vec![Ext::one()];
        for (d, k) in kernel.iter().enumerate() {
            let mut red = Reducer::new();
            for e in &layer {
                let v = self.coords(e, d);
                red.insert(SparseVec::from_entries(v.into_iter().enumerate()));
            }
            if red.rank() != k.len() {
                return false;
            }
            let mut next = Vec::new();
            for e in &layer {
                for g in &diffs {
                    let p = self.mul(e, g);
                    if !p.is_zero() {
                        next.push(p);
                    }
                }
            }
            layer = next;
        }
        true
    }

    pub fn render(&self, x: &Ext) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let labels = self.lattice.atom_labels();
        x.terms()
            .map(|(&m, c)| {
                let word = if m == 0 {
                    "1".to_string()
                } else {
                    self.ordered(m).iter().map(|&a| format!("e_{}", labels[a])).collect::<Vec<_>>().join(" ")
                };
                if c.is_one() {
                    word
                } else {
                    format!("{c}*{word}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), vec![0]);
    }

    #[test]
    fn p3() {
        let os = OsAlgebra::new(Arc::new(Lattice::partition(3).unwrap()), None).unwrap();
        assert_eq!(os.hilbert(), vec![1, 3, 2]);
        assert_eq!(os.projective_hilbert(), vec![1, 2]);
        assert!(os.kernel_equals_image());
        assert!(os.kernel_generated_by_differences());
    }
}
