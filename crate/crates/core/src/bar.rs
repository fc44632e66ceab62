//! Leray models: bigraded differential algebras on odd generators e_G and
//! even generators x_G whose homology is the (projective) OS algebra.
//!
//! Each bidegree is built directly from the presentation. Monomials
//! e_S x^μ with non-nested support are zero, the remaining ones span the
//! columns, and the products of Σ_{G≥H} x_G with monomials one x-degree
//! lower span the relations. In the projective model e_top is not a
//! generator at all, which keeps the ideal stable under d.

use crate::building::{BuildingError, BuildingSet};
use crate::linalg::{Mat, Reducer, SparseVec, Q};
use crate::nested::{Ctx, NestedError};
use crate::operad::{CheckReport, FyOperad, OperadError};
use crate::os::{Ext, OsAlgebra, OsError};
use crate::poly::{Mono, Poly};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

/// Cap on the number of monomials enumerated for one model.
pub const MAX_COLUMNS: usize = 400_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarError {
    #[error("the model needs more than {0} monomials")]
    TooLarge(usize),
    #[error("nested set {0:?} does not index a summand of this model")]
    NotASummand(Vec<usize>),
    #[error(transparent)]
    Building(#[from] BuildingError),
    #[error(transparent)]
    Nested(#[from] NestedError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Os(#[from] OsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Projective,
    Affine,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "projective" => Ok(Variant::Projective),
            "affine" => Ok(Variant::Affine),
            _ => Err(format!("unknown variant {s:?} (expected projective or affine)")),
        }
    }
}

/// e_S x^μ with S sorted by element id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BMono {
    pub e: Vec<usize>,
    pub x: Mono,
}

/// Sign of sorting the concatenation of two disjoint sorted lists.
fn merge_sign(a: &[usize], b: &[usize]) -> bool {
    let inv: usize = a.iter().map(|x| b.iter().filter(|y| *y < x).count()).sum();
    inv % 2 == 1
}

/// Element of the free graded-commutative algebra on e and x.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BElem(BTreeMap<BMono, Q>);

impl BElem {
    pub fn zero() -> BElem {
        BElem::default()
    }

    pub fn term(m: BMono, c: Q) -> BElem {
        let mut b = BElem::zero();
        b.add_term(m, c);
        b
    }

    pub fn add_term(&mut self, m: BMono, c: Q) {
        match self.0.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BMono, &Q)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &BElem) -> BElem {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Q) -> BElem {
        let mut out = BElem::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &BElem) -> BElem {
        let mut out = BElem::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                if m1.e.iter().any(|g| m2.e.contains(g)) {
                    continue;
                }
                let mut e: Vec<usize> = m1.e.iter().chain(&m2.e).copied().collect();
                e.sort_unstable();
                let c = c1 * c2;
                let c = if merge_sign(&m1.e, &m2.e) { -c } else { c };
                out.add_term(BMono { e, x: m1.x.mul(&m2.x) }, c);
            }
        }
        out
    }

    /// d(e_G) = x_G, d(x_G) = 0, with the Koszul sign of each e passed.
    pub fn d(&self) -> BElem {
        let mut out = BElem::zero();
        for (m, c) in self.terms() {
            for (i, &g) in m.e.iter().enumerate() {
                let mut e = m.e.clone();
                e.remove(i);
                let c = if i % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_term(BMono { e, x: m.x.mul(&Mono::var(g)) }, c);
            }
        }
        out
    }
}

/// One bidegree: all monomials with nested support, and the relations.
struct Piece {
    cols: Vec<BMono>,
    index: HashMap<BMono, usize>,
    red: Reducer,
    normal: Vec<usize>,
    normal_pos: HashMap<usize, usize>,
}

impl Piece {
    fn dim(&self) -> usize {
        self.normal.len()
    }

    fn coords(&self, v: &BElem) -> Vec<Q> {
        let sv = SparseVec::from_entries(v.terms().filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone()))));
        let r = self.red.reduce(&sv);
        let mut out = vec![Q::zero(); self.normal.len()];
        for (c, x) in r.entries() {
            out[self.normal_pos[c]] = x.clone();
        }
        out
    }
}

/// Compositions of `total` into `parts` positive pieces.
fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if total < parts {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

fn subsets_of<T: Clone>(v: &[T]) -> Vec<Vec<T>> {
    (0u64..1 << v.len())
        .map(|mask| v.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect())
        .collect()
}

pub struct LerayModel {
    bs: BuildingSet,
    pub variant: Variant,
    rank: usize,
    e_max: usize,
    pieces: BTreeMap<(usize, usize), Piece>,
    diffs: BTreeMap<(usize, usize), Mat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    /// Dimensions of OS̄ (projective) or OS (affine) by degree.
    pub os_dims: Vec<usize>,
    /// Rank of the comparison map in each degree.
    pub image_ranks: Vec<usize>,
    pub lands_in_cycles: bool,
    pub kills_circuit_relations: bool,
    pub homology_matches: bool,
    pub quasi_isomorphism: bool,
}

impl LerayModel {
    pub fn build(bs: &BuildingSet, variant: Variant) -> Result<LerayModel, BarError> {
        bs.require_irreducible()?;
        let l = bs.lattice();
        let top = bs.top();
        let rank = l.rank(top);
        let nested = Ctx::whole(bs).enumerate(false, None)?;
        let allowed = |g: &usize| variant == Variant::Affine || *g != top;
        let e_max = nested.iter().map(|n| n.iter().filter(|g| allowed(g)).count()).max().unwrap_or(0);

        // bucket monomials e_S x^μ by bidegree; the support S ∪ supp μ is the nested set n
        let mut cols: BTreeMap<(usize, usize), Vec<BMono>> = BTreeMap::new();
        let mut total = 0usize;
        for n in &nested {
            for s in subsets_of(n) {
                if !s.iter().all(allowed) {
                    continue;
                }
                let rest: Vec<usize> = n.iter().copied().filter(|g| !s.contains(g)).collect();
                for extra in subsets_of(&s) {
                    let mut t: Vec<usize> = rest.iter().chain(&extra).copied().collect();
                    t.sort_unstable();
                    for a in t.len()..=rank {
                        for exps in compositions(a, t.len()) {
                            let x = Mono::from_pairs(t.iter().copied().zip(exps));
                            cols.entry((a, s.len())).or_default().push(BMono { e: s.clone(), x });
                            total += 1;
                            if total > MAX_COLUMNS {
                                return Err(BarError::TooLarge(MAX_COLUMNS));
                            }
                        }
                    }
                }
            }
        }

        let atoms = l.atoms();
        let mut pieces = BTreeMap::new();
        for a in 0..=rank {
            for b in 0..=e_max {
                let mut c = cols.remove(&(a, b)).unwrap_or_default();
                c.sort();
                let index: HashMap<BMono, usize> = c.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
                let mut red = Reducer::new();
                if a > 0 {
                    if let Some(lower) = pieces.get(&(a - 1, b)) {
                        let lower: &Piece = lower;
                        for m in &lower.cols {
                            for &h in &atoms {
                                let row = SparseVec::from_entries(bs.members().iter().filter(|&&g| l.leq(h, g)).filter_map(|&g| {
                                    let t = BMono { e: m.e.clone(), x: m.x.mul(&Mono::var(g)) };
                                    index.get(&t).map(|&i| (i, Q::one()))
                                }));
                                red.insert(row);
                            }
                        }
                    }
                }
                let normal: Vec<usize> = (0..c.len()).filter(|&i| !red.is_pivot(i)).collect();
                let normal_pos = normal.iter().enumerate().map(|(p, &i)| (i, p)).collect();
                pieces.insert((a, b), Piece { cols: c, index, red, normal, normal_pos });
            }
        }

        let mut m = LerayModel { bs: bs.clone(), variant, rank, e_max, pieces, diffs: BTreeMap::new() };
        for (&(a, b), p) in &m.pieces {
            if b == 0 || a == rank {
                continue;
            }
            let dst = &m.pieces[&(a + 1, b - 1)];
            let columns: Vec<Vec<Q>> =
                p.normal.iter().map(|&i| dst.coords(&BElem::term(p.cols[i].clone(), Q::one()).d())).collect();
            m.diffs.insert((a, b), Mat::from_columns(dst.dim(), &columns));
        }
        if m.pieces.iter().any(|(&(a, _), p)| a == rank && p.dim() > 0) {
            panic!("x-degree {rank} survives in the Leray model");
        }
        Ok(m)
    }

    pub fn building(&self) -> &BuildingSet {
        &self.bs
    }

    /// dim B^{2a, b}, indexed [a][b].
    pub fn bigraded_dims(&self) -> Vec<Vec<usize>> {
        (0..self.rank).map(|a| (0..=self.e_max).map(|b| self.dim(a, b)).collect()).collect()
    }

    pub fn dim(&self, a: usize, b: usize) -> usize {
        self.pieces.get(&(a, b)).map_or(0, Piece::dim)
    }

    /// Monomial representatives of the basis of B^{2a, b}.
    pub fn basis(&self, a: usize, b: usize) -> Vec<BMono> {
        self.pieces.get(&(a, b)).map_or(vec![], |p| p.normal.iter().map(|&i| p.cols[i].clone()).collect())
    }

    /// Coordinates of an element of bidegree (2a, b) in the chosen basis.
    pub fn coords(&self, a: usize, b: usize, v: &BElem) -> Vec<Q> {
        self.pieces.get(&(a, b)).map_or(vec![], |p| p.coords(v))
    }

    /// d: B^{2a, b} → B^{2a+2, b−1}.
    pub fn differential(&self, a: usize, b: usize) -> Mat {
        match self.diffs.get(&(a, b)) {
            Some(m) => m.clone(),
            None => Mat::zeros(self.dim(a + 1, b.saturating_sub(1)), self.dim(a, b)),
        }
    }

    pub fn d_squared_zero(&self) -> bool {
        self.diffs.iter().all(|(&(a, b), m)| match self.diffs.get(&(a + 1, b - 1)) {
            Some(n) => n.mul(m).is_zero(),
            None => true,
        })
    }

    fn rank_of(&self, a: usize, b: usize) -> usize {
        self.diffs.get(&(a, b)).map_or(0, Mat::rank)
    }

    /// Homology of bidegree (2a, b).
    pub fn homology_at(&self, a: usize, b: usize) -> usize {
        let incoming = if a == 0 { 0 } else { self.rank_of(a - 1, b + 1) };
        self.dim(a, b) - self.rank_of(a, b) - incoming
    }

    /// Homology by total degree 2a + b, trailing zeros trimmed.
    pub fn homology(&self) -> Vec<usize> {
        let mut h = vec![0; 2 * self.rank + self.e_max + 1];
        for &(a, b) in self.pieces.keys() {
            h[2 * a + b] += self.homology_at(a, b);
        }
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    /// Image of e_H: the sum of e_G over members G ≥ H that are generators.
    fn iota_atom(&self, h: usize) -> BElem {
        let l = self.bs.lattice();
        let mut v = BElem::zero();
        for &g in self.bs.members() {
            if l.leq(h, g) && (self.variant == Variant::Affine || g != self.bs.top()) {
                v.add_term(BMono { e: vec![g], x: Mono::one() }, Q::one());
            }
        }
        v
    }

    /// The algebra map from the exterior algebra on atoms, on an OS element.
    pub fn iota(&self, os: &OsAlgebra, x: &Ext) -> BElem {
        let l = self.bs.lattice();
        let mut out = BElem::zero();
        for (&mask, c) in x.terms() {
            let mut p = BElem::term(BMono { e: vec![], x: Mono::one() }, c.clone());
            for a in os.ordered(mask) {
                p = p.mul(&self.iota_atom(l.atom(a)));
            }
            out = out.add(&p);
        }
        out
    }

    /// OS̄ → B (projective) or OS → B (affine) is a quasi-isomorphism.
    pub fn os_comparison(&self) -> Result<ComparisonReport, BarError> {
        let os = OsAlgebra::new(self.bs.lattice().clone(), None)?;
        let sources: Vec<Vec<Ext>> = match self.variant {
            Variant::Projective => os
                .projective_basis()
                .iter()
                .enumerate()
                .map(|(d, vs)| vs.iter().map(|v| os.from_coords(d, v)).collect())
                .collect(),
            Variant::Affine => os
                .nbc_basis()
                .iter()
                .map(|ms| ms.iter().map(|&m| Ext::term(m, Q::one())).collect())
                .collect(),
        };
        let mut os_dims: Vec<usize> = sources.iter().map(Vec::len).collect();
        while os_dims.len() > 1 && os_dims.last() == Some(&0) {
            os_dims.pop();
        }
        let mut image_ranks = Vec::new();
        let mut lands = true;
        for (p, xs) in sources.iter().enumerate().take(os_dims.len()) {
            let cols: Vec<Vec<Q>> = xs.iter().map(|x| self.coords(0, p, &self.iota(&os, x))).collect();
            let img = Mat::from_columns(self.dim(0, p), &cols);
            lands &= self.differential(0, p).mul(&img).is_zero();
            image_ranks.push(img.rank());
        }
        let kills = os.circuits().iter().all(|&c| {
            let b = self.iota(&os, &os.delta(&Ext::term(c, Q::one())));
            let deg = c.count_ones() as usize - 1;
            self.coords(0, deg, &b).iter().all(Q::is_zero)
        });
        let homology_matches = self.homology() == os_dims;
        let quasi_isomorphism = lands && kills && homology_matches && image_ranks == os_dims;
        Ok(ComparisonReport { os_dims, image_ranks, lands_in_cycles: lands, kills_circuit_relations: kills, homology_matches, quasi_isomorphism })
    }
}

/// Summand of the projective model attached to an irreducible nested set:
/// e_{S∖top} times local FY monomials pushed into L through Comp.
pub struct Decomposition<'a> {
    pub fy: FyOperad<'a>,
    bs: &'a BuildingSet,
}

impl<'a> Decomposition<'a> {
    pub fn new(bs: &'a BuildingSet) -> Result<Decomposition<'a>, BarError> {
        Ok(Decomposition { fy: FyOperad::new(bs)?, bs })
    }

    fn check(&self, s: &[usize]) -> Result<Vec<usize>, BarError> {
        let ctx = Ctx::whole(self.bs);
        let mut s = s.to_vec();
        s.sort_unstable();
        if !s.contains(&self.bs.top()) || !ctx.is_nested(&s) {
            return Err(BarError::NotASummand(s));
        }
        Ok(s)
    }

    /// Local FY basis of the summand at s, as ambient monomials.
    pub fn summand_basis(&self, s: &[usize]) -> Result<Vec<Mono>, BarError> {
        let s = self.check(s)?;
        let ctx = Ctx::whole(self.bs);
        let iv: Vec<(usize, usize)> = s.iter().map(|&g| (ctx.tau(&s, g), g)).collect();
        Ok(self.fy.tensor(&iv)?.basis().to_vec())
    }

    /// Σ_{|S| = b+1} ∏ dim FY(local intervals), for each e-degree b.
    pub fn dims_by_e_degree(&self) -> Result<Vec<usize>, BarError> {
        let mut out = Vec::new();
        for s in Ctx::whole(self.bs).enumerate(true, None)? {
            let b = s.len() - 1;
            if out.len() <= b {
                out.resize(b + 1, 0);
            }
            out[b] += self.summand_basis(&s)?.len();
        }
        Ok(out)
    }

    /// Write each non-top factor without its own top variable, then send
    /// x_K ↦ x_{Comp(τ_S(G), K)}. The e_G in front stands in for x_G, as in
    /// the FY^PD maps.
    fn push(&self, s: &[usize], p: &Poly) -> Result<Poly, BarError> {
        let ctx = Ctx::whole(self.bs);
        let top = self.bs.top();
        let mut map = HashMap::new();
        let mut locals = Vec::new();
        for &g in s {
            let t = ctx.tau(s, g);
            let local = self.fy.local(t, g)?;
            for &k in local.members() {
                map.insert(k, if k == g { g } else { ctx.comp(t, k)? });
            }
            locals.push(local);
        }
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut term = Poly::mono(Mono::one(), c.clone());
            for local in &locals {
                let part = Poly::mono(Mono::from_pairs(m.pairs().iter().copied().filter(|&(k, _)| local.owns(k))), Q::one());
                let part = if local.hi == top { part } else { local.projective_form(&part) };
                term = term.mul(&part);
            }
            out = out.add(&term);
        }
        Ok(out.substitute(|k| Poly::var(map[&k])))
    }

    /// e_{S∖top} · push(p) in the free algebra.
    pub fn embed(&self, s: &[usize], p: &Poly) -> Result<BElem, BarError> {
        let s = self.check(s)?;
        let e: Vec<usize> = s.iter().copied().filter(|&g| g != self.bs.top()).collect();
        let mut out = BElem::zero();
        for (m, c) in self.push(&s, p)?.terms() {
            out.add_term(BMono { e: e.clone(), x: m.clone() }, c.clone());
        }
        Ok(out)
    }

    /// Operadic product of α in the summand at s and β at t: zero unless
    /// s ∩ t = {top} and s ∪ t is nested; otherwise both are pushed to
    /// s ∪ t by the FY maps and multiplied there. The sign is the one of
    /// reordering e_{s∖top} e_{t∖top}.
    pub fn bar_product(&self, s: &[usize], alpha: &Poly, t: &[usize], beta: &Poly) -> Result<Option<(Vec<usize>, Poly)>, BarError> {
        let (s, t) = (self.check(s)?, self.check(t)?);
        let top = self.bs.top();
        if s.iter().any(|g| *g != top && t.contains(g)) {
            return Ok(None);
        }
        let mut u: Vec<usize> = s.iter().chain(&t).copied().collect();
        u.sort_unstable();
        u.dedup();
        let ctx = Ctx::whole(self.bs);
        if !ctx.is_nested(&u) {
            return Ok(None);
        }
        let (ia, ib) = (self.fy.refine_images(&s, &u)?, self.fy.refine_images(&t, &u)?);
        let a = alpha.substitute(|k| ia[&k].clone());
        let b = beta.substitute(|k| ib[&k].clone());
        let iv: Vec<(usize, usize)> = u.iter().map(|&g| (ctx.tau(&u, g), g)).collect();
        let prod = self.fy.tensor(&iv)?.reduce(&a.mul(&b));
        let es: Vec<usize> = s.iter().copied().filter(|&g| g != top).collect();
        let et: Vec<usize> = t.iter().copied().filter(|&g| g != top).collect();
        let prod = if merge_sign(&es, &et) { prod.scale(&-Q::one()) } else { prod };
        Ok(Some((u, prod)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub variant: Variant,
    pub bigraded: Vec<Vec<usize>>,
    pub homology: Vec<usize>,
    pub d_squared_zero: bool,
    pub comparison: ComparisonReport,
    /// Per-e-degree sizes from the nested-set decomposition (projective only).
    pub decomposition: Option<Vec<usize>>,
    pub decomposition_matches: Option<bool>,
    pub koszul: bool,
}

/// Does the decomposition-indexed family form a basis of every bidegree?
pub fn decomposition_is_basis(m: &LerayModel, dec: &Decomposition) -> Result<bool, BarError> {
    let mut by_bideg: BTreeMap<(usize, usize), Vec<Vec<Q>>> = BTreeMap::new();
    for s in Ctx::whole(m.building()).enumerate(true, None)? {
        let b = s.len() - 1;
        for mono in dec.summand_basis(&s)? {
            let a = mono.degree();
            let v = dec.embed(&s, &Poly::mono(mono, Q::one()))?;
            by_bideg.entry((a, b)).or_default().push(m.coords(a, b, &v));
        }
    }
    for (&(a, b), p) in &m.pieces {
        let cols = by_bideg.remove(&(a, b)).unwrap_or_default();
        if cols.len() != p.dim() || Mat::from_columns(p.dim(), &cols).rank() != p.dim() {
            return Ok(false);
        }
    }
    Ok(by_bideg.is_empty())
}

pub fn koszul_check(bs: &BuildingSet, variant: Variant) -> Result<KoszulReport, BarError> {
    let m = LerayModel::build(bs, variant)?;
    let comparison = m.os_comparison()?;
    let d2 = m.d_squared_zero();
    let (decomposition, decomposition_matches) = match variant {
        Variant::Projective => {
            let dec = Decomposition::new(bs)?;
            let dims = dec.dims_by_e_degree()?;
            let oracle: Vec<usize> = (0..dims.len()).map(|b| (0..m.rank).map(|a| m.dim(a, b)).sum()).collect();
            let ok = oracle == dims && decomposition_is_basis(&m, &dec)?;
            (Some(dims), Some(ok))
        }
        Variant::Affine => (None, None),
    };
    let koszul = d2 && comparison.quasi_isomorphism && decomposition_matches != Some(false);
    Ok(KoszulReport {
        variant,
        bigraded: m.bigraded_dims(),
        homology: m.homology(),
        d_squared_zero: d2,
        comparison,
        decomposition,
        decomposition_matches,
        koszul,
    })
}

/// Operadic product against multiplication in the presentation, on every
/// pair of decomposition basis elements.
pub fn check_bar_product(m: &LerayModel, dec: &Decomposition, max_pairs: Option<usize>) -> Result<CheckReport, BarError> {
    let mut elems = Vec::new();
    for s in Ctx::whole(m.building()).enumerate(true, None)? {
        for mono in dec.summand_basis(&s)? {
            elems.push((s.clone(), Poly::mono(mono, Q::one())));
        }
    }
    let mut rep = CheckReport::default();
    for (i, (s, alpha)) in elems.iter().enumerate() {
        for (t, beta) in &elems {
            if max_pairs.is_some_and(|k| rep.checked >= k) {
                return Ok(rep);
            }
            let lhs = dec.embed(s, alpha)?.mul(&dec.embed(t, beta)?);
            let rhs = match dec.bar_product(s, alpha, t, beta)? {
                Some((u, p)) => dec.embed(&u, &p)?,
                None => BElem::zero(),
            };
            let a = alpha.terms().next().map_or(0, |(m, _)| m.degree()) + beta.terms().next().map_or(0, |(m, _)| m.degree());
            let b = s.len() + t.len() - 2;
            let diff = lhs.add(&rhs.scale(&-Q::one()));
            rep.record(m.coords(a, b, &diff).iter().all(Q::is_zero), || format!("element {i} at {s:?} times {beta:?} at {t:?}"));
        }
    }
    Ok(rep)
}
