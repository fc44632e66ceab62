//! Feichtner–Yuzvinsky rings of irreducible built lattices.
//!
//! The quotient is computed degree by degree. In degree d the space spanned
//! by monomials with nested support is cut down by the linear relations
//! times every such monomial of degree d−1; monomials with non-nested
//! support vanish outright. Columns are ordered with the normal monomials
//! first, so row reduction leaves exactly the normal monomials as free
//! columns and yields normal forms directly.
//!
//! Degrees count generators: the cohomological degree is twice that.

use crate::building::{BuildingError, BuildingSet};
use crate::linalg::{Mat, Reducer, SparseVec, Q};
use crate::nested::{Ctx, NestedError};
use crate::poly::{Mono, Poly};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FyError {
    #[error("{0} is not a generator of this presentation")]
    UnknownGenerator(usize),
    #[error("building set is not irreducible (top is missing)")]
    Reducible,
    #[error("degree {degree}: relations have rank {rank}, expected {expected}")]
    Inconsistent { degree: usize, rank: usize, expected: usize },
    #[error(transparent)]
    Building(#[from] BuildingError),
    #[error(transparent)]
    Nested(#[from] NestedError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Presentation {
    /// x_G for every G, relations Σ_{G≥H} x_G.
    Affine,
    /// x_G for G below the top.
    Projective,
    /// h_G = Σ_{G'≥G} x_{G'}.
    Wonderful,
}

struct Piece {
    cols: Vec<Mono>,
    col_of: HashMap<Mono, usize>,
    n_normal: usize,
    rank: usize,
    /// normal form of every column, as entries in normal columns
    nf: Vec<SparseVec>,
}

struct AltBasis {
    monos: Vec<Vec<Mono>>,
    /// normal coordinates to alternative coordinates, per degree
    to_alt: Vec<Mat>,
}

pub struct FyAlgebra {
    bs: BuildingSet,
    rank: usize,
    nested: HashSet<Vec<usize>>,
    basis: Vec<Vec<Mono>>,
    pieces: Vec<Piece>,
    projective: OnceLock<AltBasis>,
    wonderful: OnceLock<AltBasis>,
}

impl std::fmt::Debug for FyAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FyAlgebra").field("rank", &self.rank).field("hilbert", &self.hilbert()).finish()
    }
}

/// Compositions of `total` into `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if total < parts {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=total - parts + 1 {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Exponent bounds: x_G may appear with exponent below rk[∨S_{<G}, G].
pub fn exponent_bounds(ctx: &Ctx, s: &[usize]) -> Vec<u32> {
    let l = ctx.lattice();
    s.iter().map(|&g| (l.rank(g) - l.rank(ctx.tau(s, g))) as u32).collect()
}

/// Normal monomials supported exactly on `s`.
pub fn normal_monomials_on(ctx: &Ctx, s: &[usize]) -> Vec<Mono> {
    let bounds = exponent_bounds(ctx, s);
    let mut out = vec![Vec::<(usize, u32)>::new()];
    for (i, &g) in s.iter().enumerate() {
        let mut next = Vec::new();
        for m in &out {
            for a in 1..bounds[i] {
                let mut m2 = m.clone();
                m2.push((g, a));
                next.push(m2);
            }
        }
        out = next;
    }
    out.into_iter().map(Mono::from_pairs).collect()
}

impl FyAlgebra {
    pub fn new(bs: &BuildingSet) -> Result<FyAlgebra, FyError> {
        FyAlgebra::build(bs, false)
    }

    /// Like [`FyAlgebra::new`], optionally accepting reducible building sets.
    /// The quotient is still computed, but Poincaré duality fails there.
    pub fn build(bs: &BuildingSet, allow_reducible: bool) -> Result<FyAlgebra, FyError> {
        if !allow_reducible && !bs.is_irreducible() {
            return Err(FyError::Reducible);
        }
        let ctx = Ctx::whole(bs);
        let l = bs.lattice();
        let rank = l.rank(l.top());
        let all_nested = ctx.enumerate(false, Some(rank))?;
        let mut basis: Vec<Vec<Mono>> = vec![Vec::new(); rank];
        for s in &all_nested {
            for m in normal_monomials_on(&ctx, s) {
                let d = m.degree();
                if d < rank {
                    basis[d].push(m);
                }
            }
        }
        for b in &mut basis {
            b.sort();
        }
        let nested: HashSet<Vec<usize>> = all_nested.iter().cloned().collect();

        let mut pieces: Vec<Piece> = Vec::with_capacity(rank);
        for d in 0..rank {
            let normal: HashSet<&Mono> = basis[d].iter().collect();
            let mut others: Vec<Mono> = Vec::new();
            for s in all_nested.iter().filter(|s| !s.is_empty() && s.len() <= d) {
                for c in compositions(d, s.len()) {
                    let m = Mono::from_pairs(s.iter().copied().zip(c));
                    if !normal.contains(&m) {
                        others.push(m);
                    }
                }
            }
            others.sort();
            let n_normal = basis[d].len();
            let cols: Vec<Mono> = basis[d].iter().cloned().chain(others).collect();
            let col_of: HashMap<Mono, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut red = Reducer::new();
            if d > 0 {
                let prev = &pieces[d - 1];
                for h in l.atoms() {
                    let above: Vec<usize> = bs.members().iter().copied().filter(|&g| l.leq(h, g)).collect();
                    for m in &prev.cols {
                        let entries = above.iter().filter_map(|&g| {
                            let t = m.mul(&Mono::var(g));
                            col_of.get(&t).map(|&c| (c, Q::one()))
                        });
                        red.insert(SparseVec::from_entries(entries));
                    }
                }
            }
            let expected = cols.len() - n_normal;
            if red.rank() != expected || (0..n_normal).any(|c| red.is_pivot(c)) {
                return Err(FyError::Inconsistent { degree: d, rank: red.rank(), expected });
            }
            let nf = (0..cols.len())
                .map(|c| red.reduce(&SparseVec::from_entries([(c, Q::one())])))
                .collect();
            pieces.push(Piece { cols, col_of, n_normal, rank: red.rank(), nf });
        }
        Ok(FyAlgebra {
            bs: bs.clone(),
            rank,
            nested,
            basis,
            pieces,
            projective: OnceLock::new(),
            wonderful: OnceLock::new(),
        })
    }

    pub fn building(&self) -> &BuildingSet {
        &self.bs
    }

    /// Rank of the lattice; the top degree is one less.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn top_degree(&self) -> usize {
        self.rank - 1
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Normal monomials in the affine presentation, by degree.
    pub fn normal_basis(&self) -> &[Vec<Mono>] {
        &self.basis
    }

    pub fn is_nested_support(&self, m: &Mono) -> bool {
        self.nested.contains(&m.support())
    }

    /// Size of the nested-support monomial space and rank of the relations, in degree d.
    pub fn piece_stats(&self, d: usize) -> (usize, usize) {
        (self.pieces[d].cols.len(), self.pieces[d].rank)
    }

    pub fn top_monomial(&self) -> Mono {
        Mono::from_pairs([(self.bs.top(), (self.rank - 1) as u32)])
    }

    fn check_generators(&self, p: &Poly, pres: Presentation) -> Result<(), FyError> {
        for g in p.variables() {
            let ok = g < self.bs.lattice().len()
                && self.bs.contains(g)
                && !(pres == Presentation::Projective && g == self.bs.top());
            if !ok {
                return Err(FyError::UnknownGenerator(g));
            }
        }
        Ok(())
    }

    /// h_G in x variables.
    pub fn h_in_x(&self, g: usize) -> Poly {
        let l = self.bs.lattice();
        let mut p = Poly::zero();
        for &gp in self.bs.members() {
            if l.leq(g, gp) {
                p.add_term(Mono::var(gp), Q::one());
            }
        }
        p
    }

    /// x_G in h variables, by Möbius inversion over the building set.
    pub fn x_in_h(&self, g: usize) -> Poly {
        let l = self.bs.lattice();
        let up: Vec<usize> = self.bs.members().iter().copied().filter(|&x| l.leq(g, x)).collect();
        // mu(g, y) over the poset of members, filled bottom-up from g
        let mut mu: HashMap<usize, Q> = HashMap::new();
        for &y in &up {
            let v = if y == g {
                Q::one()
            } else {
                let mut s = Q::zero();
                for &z in &up {
                    if l.lt(z, y) {
                        s += &mu[&z];
                    }
                }
                -s
            };
            mu.insert(y, v);
        }
        Poly::from_terms(up.iter().map(|&y| (Mono::var(y), mu[&y].clone())))
    }

    /// Rewrite a polynomial of the given presentation in affine x variables.
    pub fn to_affine(&self, p: &Poly, pres: Presentation) -> Result<Poly, FyError> {
        self.check_generators(p, pres)?;
        Ok(match pres {
            Presentation::Affine | Presentation::Projective => p.clone(),
            Presentation::Wonderful => p.substitute(|g| self.h_in_x(g)),
        })
    }

    fn reduce_mono(&self, m: &Mono, c: &Q, out: &mut Poly) {
        let d = m.degree();
        if d >= self.rank {
            return;
        }
        let piece = &self.pieces[d];
        if let Some(&col) = piece.col_of.get(m) {
            for (j, x) in piece.nf[col].entries() {
                out.add_term(piece.cols[*j].clone(), c * x);
            }
        }
    }

    /// Normal form of an affine polynomial.
    pub fn reduce(&self, p: &Poly) -> Result<Poly, FyError> {
        self.check_generators(p, Presentation::Affine)?;
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            self.reduce_mono(m, c, &mut out);
        }
        Ok(out)
    }

    /// Normal form (in affine normal monomials) of a polynomial in any presentation.
    pub fn reduce_in(&self, p: &Poly, pres: Presentation) -> Result<Poly, FyError> {
        self.reduce(&self.to_affine(p, pres)?)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly, FyError> {
        self.reduce(&a.mul(b))
    }

    /// Coordinates of the degree-d part of a reduced element.
    pub fn coords(&self, p: &Poly, d: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.basis.get(d).map_or(0, Vec::len)];
        if d >= self.rank {
            return v;
        }
        let piece = &self.pieces[d];
        for (m, c) in p.terms() {
            if m.degree() == d {
                let col = piece.col_of[m];
                assert!(col < piece.n_normal, "coords expects a reduced element");
                v[col] = c.clone();
            }
        }
        v
    }

    pub fn from_coords(&self, d: usize, v: &[Q]) -> Poly {
        Poly::from_terms(self.basis[d].iter().cloned().zip(v.iter().cloned()))
    }

    /// Coefficient of x_top^{rk−1} in the normal form.
    pub fn top_coefficient(&self, p: &Poly) -> Result<Q, FyError> {
        Ok(self.reduce(p)?.coeff(&self.top_monomial()))
    }

    /// Poincaré pairing matrices between degree d and its complement, for every d.
    pub fn pairing_matrices(&self) -> Vec<Mat> {
        let top = self.top_monomial();
        (0..self.rank)
            .map(|d| {
                let e = self.rank - 1 - d;
                let mut m = Mat::zeros(self.basis[d].len(), self.basis[e].len());
                for (i, a) in self.basis[d].iter().enumerate() {
                    for (j, b) in self.basis[e].iter().enumerate() {
                        let mut out = Poly::zero();
                        self.reduce_mono(&a.mul(b), &Q::one(), &mut out);
                        m[(i, j)] = out.coeff(&top);
                    }
                }
                m
            })
            .collect()
    }

    /// Is every pairing matrix square and invertible?
    pub fn poincare_duality_holds(&self) -> bool {
        self.pairing_matrices().iter().all(|m| m.rows == m.cols && m.rank() == m.rows)
    }

    fn alt(&self, pres: Presentation) -> &AltBasis {
        match pres {
            Presentation::Affine => unreachable!("affine coordinates are the normal ones"),
            Presentation::Wonderful => self.wonderful.get_or_init(|| {
                let monos = self.basis.clone();
                let to_alt = monos
                    .iter()
                    .enumerate()
                    .map(|(d, ms)| {
                        let cols: Vec<Vec<Q>> = ms
                            .iter()
                            .map(|m| {
                                let p = Poly::mono(m.clone(), Q::one()).substitute(|g| self.h_in_x(g));
                                self.coords(&self.reduce(&p).expect("members"), d)
                            })
                            .collect();
                        Mat::from_columns(ms.len(), &cols).inverse().expect("h monomials form a basis")
                    })
                    .collect();
                AltBasis { monos, to_alt }
            }),
            Presentation::Projective => self.projective.get_or_init(|| {
                let top = self.bs.top();
                let mut monos = Vec::new();
                let mut to_alt = Vec::new();
                for d in 0..self.rank {
                    let mut chosen: Vec<Mono> = Vec::new();
                    let mut cols: Vec<Vec<Q>> = Vec::new();
                    let mut red = Reducer::new();
                    for m in self.pieces[d].cols.iter().filter(|m| m.exponent(top) == 0) {
                        if chosen.len() == self.basis[d].len() {
                            break;
                        }
                        let mut r = Poly::zero();
                        self.reduce_mono(m, &Q::one(), &mut r);
                        let v = self.coords(&r, d);
                        let sv = SparseVec::from_entries(v.iter().cloned().enumerate());
                        if red.insert(sv) {
                            chosen.push(m.clone());
                            cols.push(v);
                        }
                    }
                    let mat = Mat::from_columns(self.basis[d].len(), &cols);
                    to_alt.push(mat.inverse().expect("projective monomials span"));
                    monos.push(chosen);
                }
                AltBasis { monos, to_alt }
            }),
        }
    }

    /// Basis monomials of a presentation, by degree.
    pub fn basis_in(&self, pres: Presentation) -> Vec<Vec<Mono>> {
        match pres {
            Presentation::Affine => self.basis.clone(),
            _ => self.alt(pres).monos.clone(),
        }
    }

    /// Write a reduced element in the basis of the given presentation.
    pub fn express(&self, p: &Poly, pres: Presentation) -> Poly {
        if pres == Presentation::Affine {
            return p.clone();
        }
        let alt = self.alt(pres);
        let mut out = Poly::zero();
        for d in 0..self.rank {
            let v = self.coords(p, d);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let w = alt.to_alt[d].mul(&Mat::from_columns(v.len(), &[v]));
            for (i, m) in alt.monos[d].iter().enumerate() {
                out.add_term(m.clone(), w[(i, 0)].clone());
            }
        }
        out
    }

    pub fn change_of_variable(&self, p: &Poly, from: Presentation, to: Presentation) -> Result<Poly, FyError> {
        Ok(self.express(&self.reduce_in(p, from)?, to))
    }

    /// Degree-2(rk−2) wonderful monomials h_G^{rk G −1} h_top^{rk − rk G −1}, one per G below the top.
    pub fn subtop_wonderful_monomials(&self) -> Vec<Mono> {
        let l = self.bs.lattice();
        let top = self.bs.top();
        let mut out: Vec<Mono> = self
            .bs
            .members()
            .iter()
            .filter(|&&g| g != top)
            .map(|&g| Mono::from_pairs([(g, (l.rank(g) - 1) as u32), (top, (self.rank - l.rank(g) - 1) as u32)]))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}
