//! Structure maps of the FY cooperad and the FY^PD operad.
//!
//! Every local interval [lo, hi] carries its own FY ring, but all variables
//! are kept as ambient element ids. The generators of the factors of a
//! tensor product of local rings then live in disjoint half-open intervals
//! (lo, hi], so a tensor product of polynomials is just a polynomial in
//! ambient ids and reduction splits factor by factor.

use crate::building::{BuildingError, BuildingSet};
use crate::fy::{FyAlgebra, FyError, Presentation};
use crate::linalg::{Mat, Q};
use crate::nested::{Ctx, NestedError};
use crate::poly::{Mono, Poly};
use num_traits::{One, Zero};
use serde::Serialize;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("{g} is not a non-top element of the building set on [{lo}, {hi}]")]
    BadGenerator { lo: usize, hi: usize, g: usize },
    #[error("the elements {0} and {1} do not form a nested antichain")]
    NotNestedPair(usize, usize),
    #[error(transparent)]
    Fy(#[from] FyError),
    #[error(transparent)]
    Building(#[from] BuildingError),
    #[error(transparent)]
    Nested(#[from] NestedError),
    #[error(transparent)]
    Os(#[from] crate::os::OsError),
}

/// FY ring of a local interval, addressed by ambient ids.
pub struct LocalFy {
    pub lo: usize,
    pub hi: usize,
    members: Vec<usize>,
    emb: Vec<usize>,
    to_local: HashMap<usize, usize>,
    pub fy: FyAlgebra,
}

impl LocalFy {
    fn new(bs: &BuildingSet, lo: usize, hi: usize) -> Result<LocalFy, OperadError> {
        let (sub, emb) = if lo == bs.lattice().bottom() && hi == bs.top() {
            (bs.clone(), (0..bs.lattice().len()).collect())
        } else {
            bs.induced(lo, hi)?
        };
        let to_local = emb.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let members = sub.members().iter().map(|&m| emb[m]).collect();
        let fy = FyAlgebra::new(&sub)?;
        Ok(LocalFy { lo, hi, members, emb, to_local, fy })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn owns(&self, var: usize) -> bool {
        self.members.binary_search(&var).is_ok()
    }

    fn to_local(&self, p: &Poly) -> Poly {
        Poly::from_terms(p.terms().map(|(m, c)| {
            (Mono::from_pairs(m.pairs().iter().map(|&(g, e)| (self.to_local[&g], e))), c.clone())
        }))
    }

    fn to_ambient(&self, p: &Poly) -> Poly {
        Poly::from_terms(
            p.terms().map(|(m, c)| (Mono::from_pairs(m.pairs().iter().map(|&(g, e)| (self.emb[g], e))), c.clone())),
        )
    }

    fn mono_to_ambient(&self, m: &Mono) -> Mono {
        Mono::from_pairs(m.pairs().iter().map(|&(g, e)| (self.emb[g], e)))
    }

    /// Normal monomials of all degrees, in ambient ids.
    pub fn basis(&self) -> Vec<Mono> {
        self.fy.normal_basis().iter().flatten().map(|m| self.mono_to_ambient(m)).collect()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        self.to_ambient(&self.fy.reduce(&self.to_local(p)).expect("variables belong to the interval"))
    }

    /// Rewrite a reduced element without the top variable.
    pub fn projective_form(&self, p: &Poly) -> Poly {
        let local = self.fy.reduce(&self.to_local(p)).expect("variables belong to the interval");
        self.to_ambient(&self.fy.express(&local, Presentation::Projective))
    }

    pub fn top_mono(&self) -> Mono {
        self.mono_to_ambient(&self.fy.top_monomial())
    }

    /// h_K = Σ_{K' ≥ K} x_{K'} over the induced building set.
    pub fn h(&self, k: usize, l: &crate::lattice::Lattice) -> Poly {
        Poly::from_terms(self.members.iter().filter(|&&m| l.leq(k, m)).map(|&m| (Mono::var(m), Q::one())))
    }

    /// x_K in terms of h, as (K', μ(K, K')) pairs.
    pub fn x_in_h(&self, k: usize) -> Vec<(usize, Q)> {
        let local = self.fy.x_in_h(self.to_local[&k]);
        local.terms().map(|(m, c)| (self.emb[m.pairs()[0].0], c.clone())).collect()
    }
}

/// Tensor product of local FY rings.
pub struct FyTensor {
    pub factors: Vec<Rc<LocalFy>>,
    basis: Vec<Mono>,
    index: HashMap<Mono, usize>,
    owner: HashMap<usize, usize>,
}

impl FyTensor {
    pub fn new(factors: Vec<Rc<LocalFy>>) -> FyTensor {
        let mut basis = vec![Mono::one()];
        for f in &factors {
            let fb = f.basis();
            basis = basis.iter().flat_map(|a| fb.iter().map(move |b| a.mul(b))).collect();
        }
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut owner = HashMap::new();
        for (i, f) in factors.iter().enumerate() {
            for &m in f.members() {
                owner.insert(m, i);
            }
        }
        FyTensor { factors, basis, index, owner }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    pub fn intervals(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|f| (f.lo, f.hi)).collect()
    }

    fn split(&self, m: &Mono) -> Vec<Mono> {
        let mut parts: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.factors.len()];
        for &(g, e) in m.pairs() {
            parts[self.owner[&g]].push((g, e));
        }
        parts.into_iter().map(Mono::from_pairs).collect()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut acc = Poly::mono(Mono::one(), c.clone());
            for (f, part) in self.factors.iter().zip(self.split(m)) {
                if acc.is_zero() {
                    break;
                }
                acc = acc.mul(&f.reduce(&Poly::mono(part, Q::one())));
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn coords(&self, p: &Poly) -> Vec<Q> {
        let r = self.reduce(p);
        let mut v = vec![Q::zero(); self.basis.len()];
        for (m, c) in r.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Matrix of the linear map sending each basis monomial m to f(m).
    pub fn matrix_to(&self, dst: &FyTensor, f: impl Fn(&Mono) -> Poly) -> Mat {
        let cols: Vec<Vec<Q>> = self.basis.iter().map(|m| dst.coords(&f(m))).collect();
        Mat::from_columns(dst.dim(), &cols)
    }

    /// Matrix of the ring map given by images of the generators.
    pub fn hom_matrix(&self, dst: &FyTensor, img: &HashMap<usize, Poly>) -> Mat {
        self.matrix_to(dst, |m| {
            m.pairs().iter().fold(Poly::one(), |acc, &(g, e)| match img.get(&g) {
                Some(p) => acc.mul(&p.pow(e)),
                None => acc.mul(&Poly::var(g).pow(e)),
            })
        })
    }

    /// Product of the top coefficients of the factors.
    pub fn top_functional(&self) -> Vec<Q> {
        let top = self.factors.iter().fold(Mono::one(), |acc, f| acc.mul(&f.top_mono()));
        let mut v = vec![Q::zero(); self.basis.len()];
        v[self.index[&top]] = Q::one();
        v
    }

    /// Degree functional: each factor integrates (−x_top)^{rk−1} to one.
    pub fn degree_functional(&self) -> Vec<Q> {
        let odd = self.factors.iter().map(|f| f.fy.rank() - 1).sum::<usize>() % 2 == 1;
        let mut v = self.top_functional();
        if odd {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        v
    }
}

/// Report of a batch of exact checks.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, pass: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !pass {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Cache of local FY rings and the FY-side structure maps of one built lattice.
pub struct FyOperad<'a> {
    pub bs: &'a BuildingSet,
    cache: RefCell<HashMap<(usize, usize), Rc<LocalFy>>>,
}

impl<'a> FyOperad<'a> {
    pub fn new(bs: &'a BuildingSet) -> Result<FyOperad<'a>, OperadError> {
        bs.require_irreducible()?;
        Ok(FyOperad { bs, cache: RefCell::new(HashMap::new()) })
    }

    pub fn local(&self, lo: usize, hi: usize) -> Result<Rc<LocalFy>, OperadError> {
        if let Some(x) = self.cache.borrow().get(&(lo, hi)) {
            return Ok(x.clone());
        }
        let x = Rc::new(LocalFy::new(self.bs, lo, hi)?);
        self.cache.borrow_mut().insert((lo, hi), x.clone());
        Ok(x)
    }

    pub fn tensor(&self, intervals: &[(usize, usize)]) -> Result<FyTensor, OperadError> {
        Ok(FyTensor::new(intervals.iter().map(|&(a, b)| self.local(a, b)).collect::<Result<_, _>>()?))
    }

    pub fn whole(&self) -> Result<FyTensor, OperadError> {
        let l = self.bs.lattice();
        self.tensor(&[(l.bottom(), l.top())])
    }

    fn check_generator(&self, lo: usize, hi: usize, g: usize) -> Result<(), OperadError> {
        let ctx = Ctx::interval(self.bs, lo, hi);
        if g == hi || !ctx.contains(g) {
            return Err(OperadError::BadGenerator { lo, hi, g });
        }
        Ok(())
    }

    /// Images of the generators of FY([lo,hi]) under FY({g}), in x variables.
    pub fn coop_images(&self, lo: usize, hi: usize, g: usize) -> Result<HashMap<usize, Poly>, OperadError> {
        self.check_generator(lo, hi, g)?;
        let l = self.bs.lattice();
        let src = self.local(lo, hi)?;
        let up = self.local(g, hi)?;
        let down = self.local(lo, g)?;
        let himg = |k: usize| if l.leq(k, g) { down.h(k, l) } else { up.h(l.join(g, k), l) };
        let mut out = HashMap::new();
        for &k in src.members() {
            let mut p = Poly::zero();
            for (k2, mu) in src.x_in_h(k) {
                p = p.add(&himg(k2).scale(&mu));
            }
            out.insert(k, p);
        }
        Ok(out)
    }

    /// FY({g}) : FY(L) → FY([g,1]) ⊗ FY([0,g]).
    pub fn cooperad_map(&self, g: usize) -> Result<(FyTensor, FyTensor, Mat), OperadError> {
        let l = self.bs.lattice();
        let (b, t) = (l.bottom(), l.top());
        let src = self.tensor(&[(b, t)])?;
        let dst = self.tensor(&[(g, t), (b, g)])?;
        let m = src.hom_matrix(&dst, &self.coop_images(b, t, g)?);
        Ok((src, dst, m))
    }

    /// FY(S) for an irreducible nested set: h_G goes to h_{τ(G')∨G} in the
    /// interval of G', the smallest member of S above G.
    pub fn nested_map(&self, s: &[usize]) -> Result<(FyTensor, Mat), OperadError> {
        let ctx = Ctx::whole(self.bs);
        let l = self.bs.lattice();
        if let Some(w) = ctx.nested_witness(s)? {
            return Err(NestedError::NotNested(w).into());
        }
        if !s.contains(&self.bs.top()) {
            return Err(NestedError::NotIrreducible(self.bs.top()).into());
        }
        let intervals: Vec<(usize, usize)> = s.iter().map(|&g| (ctx.tau(s, g), g)).collect();
        let dst = self.tensor(&intervals)?;
        let src = self.whole()?;
        let whole = self.local(l.bottom(), l.top())?;
        let himg = |k: usize| {
            let gp = s.iter().copied().filter(|&x| l.leq(k, x)).min_by_key(|&x| l.rank(x)).expect("top is in S");
            let t = ctx.tau(s, gp);
            let f = self.local(t, gp).expect("local interval");
            f.h(l.join(t, k), l)
        };
        let mut img = HashMap::new();
        for &k in whole.members() {
            let mut p = Poly::zero();
            for (k2, mu) in whole.x_in_h(k) {
                p = p.add(&himg(k2).scale(&mu));
            }
            img.insert(k, p);
        }
        let m = src.hom_matrix(&dst, &img);
        Ok((dst, m))
    }

    /// Apply FY({g}) to factor `i` of a tensor; other factors are untouched.
    pub fn coop_on_factor(&self, src: &FyTensor, i: usize, g: usize) -> Result<(FyTensor, Mat), OperadError> {
        let (lo, hi) = src.intervals()[i];
        let img = self.coop_images(lo, hi, g)?;
        let mut iv = src.intervals();
        iv.splice(i..=i, [(g, hi), (lo, g)]);
        let dst = self.tensor(&iv)?;
        let m = src.hom_matrix(&dst, &img);
        Ok((dst, m))
    }

    /// FY^PD({g}) on factors i (upper, [g,hi]) and i+1 (lower, [lo,g]) of a tensor.
    pub fn pd_on_factors(&self, src: &FyTensor, i: usize) -> Result<(FyTensor, Mat), OperadError> {
        let iv = src.intervals();
        let (g, hi) = iv[i];
        let (lo, g2) = iv[i + 1];
        assert_eq!(g, g2, "adjacent factors must share the generator");
        self.check_generator(lo, hi, g)?;
        let ctx = Ctx::interval(self.bs, lo, hi);
        let upper = self.local(g, hi)?;
        let lower = self.local(lo, g)?;
        let mut comp: HashMap<usize, usize> = HashMap::new();
        for &k in upper.members() {
            comp.insert(k, ctx.comp(g, k)?);
        }
        let mut out_iv = iv.clone();
        out_iv.splice(i..=i + 1, [(lo, hi)]);
        let dst = self.tensor(&out_iv)?;
        let m = src.matrix_to(&dst, |mono| {
            let mut lower_part = Poly::one();
            let mut rest = Poly::var(g);
            for &(v, e) in mono.pairs() {
                if lower.owns(v) {
                    lower_part = lower_part.mul(&Poly::var(v).pow(e));
                } else if upper.owns(v) {
                    rest = rest.mul(&Poly::var(comp[&v]).pow(e));
                } else {
                    rest = rest.mul(&Poly::var(v).pow(e));
                }
            }
            rest.mul(&lower.projective_form(&lower_part))
        });
        Ok((dst, m))
    }

    /// FY^PD({g}) : FY([g,1]) ⊗ FY([0,g]) → FY(L).
    pub fn pd_operad_map(&self, g: usize) -> Result<(FyTensor, FyTensor, Mat), OperadError> {
        let l = self.bs.lattice();
        let src = self.tensor(&[(g, l.top()), (l.bottom(), g)])?;
        let (dst, m) = self.pd_on_factors(&src, 0)?;
        Ok((src, dst, m))
    }

    /// Poincaré pairing Gram matrix of a tensor, in its basis.
    pub fn pairing(&self, t: &FyTensor) -> Mat {
        let top = t.degree_functional();
        let n = t.dim();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let p = Poly::mono(t.basis()[i].mul(&t.basis()[j]), Q::one());
                let v = t.coords(&p);
                m[(i, j)] = crate::linalg::dot(&v, &top);
            }
        }
        m
    }

    /// Ring map of an automorphism on a tensor: x_K ↦ x_{f(K)}.
    pub fn transport(&self, src: &FyTensor, f: &[usize]) -> Result<(FyTensor, Mat), OperadError> {
        let iv: Vec<(usize, usize)> = src.intervals().iter().map(|&(a, b)| (f[a], f[b])).collect();
        let dst = self.tensor(&iv)?;
        let img: HashMap<usize, Poly> = src.factors.iter().flat_map(|fa| fa.members().to_vec()).map(|k| (k, Poly::var(f[k]))).collect();
        let m = src.hom_matrix(&dst, &img);
        Ok((dst, m))
    }

    /// Ring map identifying intervals through an explicit element map.
    pub fn relabel(&self, src: &FyTensor, iv: &[(usize, usize)], f: &dyn Fn(usize) -> usize) -> Result<(FyTensor, Mat), OperadError> {
        let dst = self.tensor(iv)?;
        let img: HashMap<usize, Poly> = src.factors.iter().flat_map(|fa| fa.members().to_vec()).map(|k| (k, Poly::var(f(k)))).collect();
        let m = src.hom_matrix(&dst, &img);
        Ok((dst, m))
    }

    /// Ψ_S evaluated on every basis element of FY(L).
    pub fn psi_row(&self, s: &[usize]) -> Result<Vec<Q>, OperadError> {
        let (dst, m) = self.nested_map(s)?;
        let f = dst.top_functional();
        Ok((0..m.cols).map(|c| crate::linalg::dot(&f, &m.column(c))).collect())
    }

    /// The same evaluation through the product formula: top coefficient of α·x_{S∖1}.
    pub fn psi_row_by_product(&self, s: &[usize]) -> Result<Vec<Q>, OperadError> {
        let whole = self.whole()?;
        let top = self.bs.top();
        let xs = s.iter().filter(|&&g| g != top).fold(Poly::one(), |acc, &g| acc.mul(&Poly::var(g)));
        let f = whole.top_functional();
        Ok(whole.basis().iter().map(|m| crate::linalg::dot(&f, &whole.coords(&Poly::mono(m.clone(), Q::one()).mul(&xs)))).collect())
    }

    /// Matrix of Ψ_S evaluations over all irreducible nested sets.
    pub fn evaluation_matrix(&self) -> Result<(Vec<Vec<usize>>, Mat), OperadError> {
        let sets = Ctx::whole(self.bs).enumerate(true, None)?;
        let rows: Vec<Vec<Q>> = sets.iter().map(|s| self.psi_row(s)).collect::<Result<_, _>>()?;
        let n = self.whole()?.dim();
        let mut m = Mat::zeros(rows.len(), n);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok((sets, m))
    }
}

/// A formal sum of Ψ_{{G}} for G below the top: Σ_{1>G≥H1} − Σ_{1>G≥H2}.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuadraticRelation {
    pub atoms: (usize, usize),
    pub terms: Vec<(usize, i64)>,
}

/// One relation per pair of atoms H1 < H2 in the atom order.
pub fn quadratic_relation_elements(bs: &BuildingSet, order: &[usize]) -> Vec<QuadraticRelation> {
    let l = bs.lattice();
    let atoms: Vec<usize> = order.iter().map(|&i| l.atom(i)).collect();
    quadratic_relations_in(&Ctx::whole(bs), &atoms)
}

/// The same relations on a local interval, whose atoms are listed in order.
pub fn quadratic_relations_in(ctx: &Ctx, atoms: &[usize]) -> Vec<QuadraticRelation> {
    let l = ctx.lattice();
    let top = ctx.hi;
    let mut out = Vec::new();
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            let (h1, h2) = (atoms[i], atoms[j]);
            let mut terms: Vec<(usize, i64)> = ctx
                .members()
                .iter()
                .filter(|&&g| g != top)
                .map(|&g| (g, l.leq(h1, g) as i64 - l.leq(h2, g) as i64))
                .filter(|&(_, c)| c != 0)
                .collect();
            terms.sort_unstable();
            out.push(QuadraticRelation { atoms: (h1, h2), terms });
        }
    }
    out
}

impl<'a> FyOperad<'a> {
    /// Pair a quadratic relation against every basis element of FY(L).
    pub fn relation_functional(&self, r: &QuadraticRelation) -> Result<Vec<Q>, OperadError> {
        let n = self.whole()?.dim();
        let mut acc = vec![Q::zero(); n];
        for &(g, c) in &r.terms {
            let row = self.psi_row(&[g, self.bs.top()])?;
            for (a, x) in acc.iter_mut().zip(row) {
                *a += x * Q::from_integer(c.into());
            }
        }
        Ok(acc)
    }
}

pub(crate) fn mats_equal(a: &Mat, b: &Mat) -> bool {
    a.rows == b.rows && a.cols == b.cols && a.add(&b.scaled(&-Q::one())).is_zero()
}

/// Comparable pairs G1 < G2 and nested antichains {G1, G2} below the top.
pub fn generator_pairs(bs: &BuildingSet) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let l = bs.lattice();
    let top = bs.top();
    let ctx = Ctx::whole(bs);
    let gens: Vec<usize> = bs.members().iter().copied().filter(|&g| g != top).collect();
    let mut chains = Vec::new();
    let mut antichains = Vec::new();
    for &a in &gens {
        for &b in &gens {
            if l.lt(a, b) {
                chains.push((a, b));
            } else if a < b && !l.comparable(a, b) && ctx.is_nested(&[a, b]) {
                antichains.push((a, b));
            }
        }
    }
    (chains, antichains)
}

/// Which relation a failure belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Chain,
    Antichain,
    Iso,
    WellDefined,
}

impl<'a> FyOperad<'a> {
    /// Images of the ideal generators under FY({g}) all vanish.
    pub fn cooperad_well_defined(&self, g: usize) -> Result<CheckReport, OperadError> {
        let l = self.bs.lattice();
        let (b, t) = (l.bottom(), l.top());
        let img = self.coop_images(b, t, g)?;
        let dst = self.tensor(&[(g, t), (b, g)])?;
        let apply = |p: &Poly| {
            p.substitute(|v| img[&v].clone())
        };
        let mut rep = CheckReport::default();
        let whole = self.local(b, t)?;
        // wonderful generators: h_H for atoms, products over antichains with join G
        for h in l.atoms() {
            let r = dst.reduce(&apply(&whole.h(h, l)));
            rep.record(r.is_zero(), || format!("FY({{{g}}}): h_{h} does not vanish"));
        }
        for (gg, anti) in wonderful_antichains(self.bs) {
            let hg = whole.h(gg, l);
            let r = anti.iter().fold(Poly::one(), |acc, &a| dst.reduce(&acc.mul(&apply(&hg.sub(&whole.h(a, l))))));
            rep.record(r.is_zero(), || format!("FY({{{g}}}): antichain {anti:?} below {gg} does not vanish"));
        }
        Ok(rep)
    }

    /// x_g Θ(r) vanishes for every ideal generator r of the source.
    pub fn pd_well_defined(&self, g: usize) -> Result<CheckReport, OperadError> {
        let l = self.bs.lattice();
        let (b, t) = (l.bottom(), l.top());
        let ctx = Ctx::whole(self.bs);
        let upper = self.local(g, t)?;
        let lower = self.local(b, g)?;
        let whole = self.local(b, t)?;
        let theta = |p: &Poly| {
            Poly::var(g).mul(&p.substitute(|v| if upper.owns(v) { Poly::var(ctx.comp(g, v).expect("induced")) } else { Poly::var(v) }))
        };
        let mut rep = CheckReport::default();
        let mut gens: Vec<(String, Poly)> = Vec::new();
        // upper: affine linear relations and non-nested products
        let uctx = Ctx::interval(self.bs, g, t);
        for &a in &l.covers(g) {
            gens.push((format!("upper linear relation at {a}"), upper.h(a, l)));
        }
        for x in minimal_non_nested(&uctx) {
            gens.push((format!("upper non-nested {x:?}"), x.iter().fold(Poly::one(), |acc, &v| acc.mul(&Poly::var(v)))));
        }
        // lower: projective relations and non-nested products avoiding the top
        let lctx = Ctx::interval(self.bs, b, g);
        let latoms = l.covers(b).into_iter().filter(|&a| l.leq(a, g)).collect::<Vec<_>>();
        let proj = |h: usize| {
            Poly::from_terms(lower.members().iter().filter(|&&m| m != g && l.leq(h, m)).map(|&m| (Mono::var(m), Q::one())))
        };
        for w in latoms.windows(2) {
            gens.push((format!("lower relation {}-{}", w[0], w[1]), proj(w[0]).sub(&proj(w[1]))));
        }
        for x in minimal_non_nested(&lctx).into_iter().filter(|x| !x.contains(&g)) {
            gens.push((format!("lower non-nested {x:?}"), x.iter().fold(Poly::one(), |acc, &v| acc.mul(&Poly::var(v)))));
        }
        for (name, p) in gens {
            let r = whole.reduce(&theta(&p));
            rep.record(r.is_zero(), || format!("FY^PD({{{g}}}): {name} does not vanish"));
        }
        Ok(rep)
    }
}

/// Pairs (G, A) with A an antichain of members, |A| ≥ 2, and ∨A = G.
pub fn wonderful_antichains(bs: &BuildingSet) -> Vec<(usize, Vec<usize>)> {
    let l = bs.lattice();
    let mut out = Vec::new();
    let m = bs.members();
    fn rec(l: &crate::lattice::Lattice, m: &[usize], from: usize, cur: &mut Vec<usize>, bs: &BuildingSet, out: &mut Vec<(usize, Vec<usize>)>) {
        if cur.len() >= 2 {
            let j = l.join_all(cur.iter().copied());
            if bs.contains(j) {
                out.push((j, cur.clone()));
            }
        }
        for i in from..m.len() {
            if cur.iter().all(|&c| !l.comparable(c, m[i])) {
                cur.push(m[i]);
                rec(l, m, i + 1, cur, bs, out);
                cur.pop();
            }
        }
    }
    rec(l, m, 0, &mut Vec::new(), bs, &mut out);
    out
}

/// Minimal non-nested subsets of the induced building set of a context
/// (antichains whose join is a member, minimal under inclusion).
pub fn minimal_non_nested(ctx: &Ctx) -> Vec<Vec<usize>> {
    let l = ctx.lattice();
    let m = ctx.members().to_vec();
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn rec(ctx: &Ctx, l: &crate::lattice::Lattice, m: &[usize], from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 && ctx.contains(l.join_all(cur.iter().copied())) {
            if !out.iter().any(|o| o.iter().all(|x| cur.contains(x))) {
                out.push(cur.clone());
            }
            return;
        }
        for i in from..m.len() {
            if cur.iter().all(|&c| !l.comparable(c, m[i])) {
                cur.push(m[i]);
                rec(ctx, l, m, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(ctx, l, &m, 0, &mut Vec::new(), &mut out);
    out
}

impl<'a> FyOperad<'a> {
    /// Chain, antichain and automorphism relations for the cooperad maps.
    pub fn check_cooperad_relations(&self) -> Result<Vec<(RelationKind, CheckReport)>, OperadError> {
        let l = self.bs.lattice();
        let (b, t) = (l.bottom(), l.top());
        let whole = self.whole()?;
        let (chains, antichains) = generator_pairs(self.bs);
        let mut chain = CheckReport::default();
        for &(g1, g2) in &chains {
            let (t1, a) = self.coop_on_factor(&whole, 0, g1)?;
            let (_, bm) = self.coop_on_factor(&t1, 0, g2)?;
            let (u1, c) = self.coop_on_factor(&whole, 0, g2)?;
            let (_, d) = self.coop_on_factor(&u1, 1, g1)?;
            chain.record(mats_equal(&bm.mul(&a), &d.mul(&c)), || format!("chain {g1} < {g2}"));
        }
        let mut anti = CheckReport::default();
        for &(g1, g2) in &antichains {
            let j = l.join(g1, g2);
            let (t1, a) = self.coop_on_factor(&whole, 0, g1)?;
            let (_, bm) = self.coop_on_factor(&t1, 0, j)?;
            let (u1, c) = self.coop_on_factor(&whole, 0, g2)?;
            let (u2, d) = self.coop_on_factor(&u1, 0, j)?;
            let phi = move |v: usize| if l.leq(v, g2) { l.join(v, g1) } else if l.leq(v, j) { l.meet(v, g1) } else { v };
            let (_, s) = self.relabel(&u2, &[(j, t), (g1, j), (b, g1)], &phi)?;
            anti.record(mats_equal(&bm.mul(&a), &s.mul(&d).mul(&c)), || format!("antichain {g1}, {g2}"));
        }
        let mut iso = CheckReport::default();
        for f in self.bs.automorphisms() {
            let (_, fl) = self.transport(&whole, &f)?;
            for &g in self.bs.members().iter().filter(|&&g| g != t) {
                let (_, left) = self.cooperad_map(f[g]).map(|(_, d, m)| (d, m))?;
                let (src, _, right) = self.cooperad_map(g)?;
                let _ = src;
                let split = self.tensor(&[(g, t), (b, g)])?;
                let (_, fs) = self.transport(&split, &f)?;
                iso.record(mats_equal(&left.mul(&fl), &fs.mul(&right)), || format!("automorphism {f:?} at {g}"));
            }
        }
        Ok(vec![(RelationKind::Chain, chain), (RelationKind::Antichain, anti), (RelationKind::Iso, iso)])
    }

    /// The same relations, in operad direction, for the FY^PD maps.
    pub fn check_pd_relations(&self) -> Result<Vec<(RelationKind, CheckReport)>, OperadError> {
        let l = self.bs.lattice();
        let (b, t) = (l.bottom(), l.top());
        let (chains, antichains) = generator_pairs(self.bs);
        let mut chain = CheckReport::default();
        for &(g1, g2) in &chains {
            let src = self.tensor(&[(g2, t), (g1, g2), (b, g1)])?;
            let (t1, a) = self.pd_on_factors(&src, 0)?;
            let (_, bm) = self.pd_on_factors(&t1, 0)?;
            let (u1, c) = self.pd_on_factors(&src, 1)?;
            let (_, d) = self.pd_on_factors(&u1, 0)?;
            chain.record(mats_equal(&bm.mul(&a), &d.mul(&c)), || format!("chain {g1} < {g2}"));
        }
        let mut anti = CheckReport::default();
        for &(g1, g2) in &antichains {
            let j = l.join(g1, g2);
            let src = self.tensor(&[(j, t), (g1, j), (b, g1)])?;
            let (t1, a) = self.pd_on_factors(&src, 0)?;
            let (_, bm) = self.pd_on_factors(&t1, 0)?;
            let phi = move |v: usize| if l.leq(v, g1) { l.join(v, g2) } else if l.leq(v, j) { l.meet(v, g2) } else { v };
            let (s_dst, s) = self.relabel(&src, &[(j, t), (g2, j), (b, g2)], &phi)?;
            let (u1, c) = self.pd_on_factors(&s_dst, 0)?;
            let (_, d) = self.pd_on_factors(&u1, 0)?;
            anti.record(mats_equal(&bm.mul(&a), &d.mul(&c).mul(&s)), || format!("antichain {g1}, {g2}"));
        }
        let mut iso = CheckReport::default();
        let whole = self.whole()?;
        for f in self.bs.automorphisms() {
            let (_, fl) = self.transport(&whole, &f)?;
            for &g in self.bs.members().iter().filter(|&&g| g != t) {
                let (split, _, pd) = self.pd_operad_map(g)?;
                let (_, fs) = self.transport(&split, &f)?;
                let (_, _, pdf) = self.pd_operad_map(f[g])?;
                iso.record(mats_equal(&fl.mul(&pd), &pdf.mul(&fs)), || format!("automorphism {f:?} at {g}"));
            }
        }
        Ok(vec![(RelationKind::Chain, chain), (RelationKind::Antichain, anti), (RelationKind::Iso, iso)])
    }

    /// Well-definedness of both families of maps on every generator.
    pub fn check_well_defined(&self) -> Result<CheckReport, OperadError> {
        let mut rep = CheckReport::default();
        for &g in self.bs.members().iter().filter(|&&g| g != self.bs.top()) {
            rep.merge(self.cooperad_well_defined(g)?);
            rep.merge(self.pd_well_defined(g)?);
        }
        Ok(rep)
    }

    /// FY^PD({g}) = PD⁻¹ ∘ FY({g})^∨ ∘ (PD ⊗ PD) for every generator.
    pub fn check_pd_conjugation(&self) -> Result<CheckReport, OperadError> {
        let whole = self.whole()?;
        let pl_inv = self.pairing(&whole).inverse().expect("Poincaré duality");
        let mut rep = CheckReport::default();
        for &g in self.bs.members().iter().filter(|&&g| g != self.bs.top()) {
            let (_, split, c) = self.cooperad_map(g)?;
            let (_, _, pd) = self.pd_operad_map(g)?;
            let rhs = pl_inv.mul(&c.transpose()).mul(&self.pairing(&split));
            rep.record(mats_equal(&pd, &rhs), || format!("PD conjugation at {g}"));
        }
        Ok(rep)
    }

    /// Images of generators of FY([lo,hi]) under the composite of single-step
    /// maps, splitting first along a maximal element g of s. The upper
    /// factor [g,hi] carries the locals y = x ∨ g, whose intervals are moved
    /// back onto the intervals [τ(x), x] of s.
    fn composite_images(&self, lo: usize, hi: usize, s: &[usize]) -> Result<HashMap<usize, Poly>, OperadError> {
        let l = self.bs.lattice();
        let src = self.local(lo, hi)?;
        let rest: Vec<usize> = s.iter().copied().filter(|&x| x != hi).collect();
        let Some(&g) = rest.iter().find(|&&x| !rest.iter().any(|&y| l.lt(x, y))) else {
            return Ok(src.members().iter().map(|&k| (k, Poly::var(k))).collect());
        };
        let ctx = Ctx::interval(self.bs, lo, hi);
        let locals = ctx.decompose(s, &[g, hi])?;
        let upper = &locals[&hi];
        let uctx = Ctx::interval(self.bs, g, hi);
        let mut back: HashMap<usize, usize> = HashMap::new();
        for &x in s.iter().filter(|&&x| !l.leq(x, g)) {
            let y = l.join(x, g);
            let (tu, ts) = (uctx.tau(upper, y), ctx.tau(s, x));
            let target = self.local(ts, x)?;
            for &w in self.local(tu, y)?.members() {
                let z = target.members().iter().copied().find(|&z| l.join(z, tu) == w).expect("intervals are isomorphic");
                back.insert(w, z);
            }
        }
        let up = self.composite_images(g, hi, upper)?;
        let down = self.composite_images(lo, g, &locals[&g])?;
        let step = self.coop_images(lo, hi, g)?;
        Ok(step
            .into_iter()
            .map(|(k, p)| {
                let q = p.substitute(|w| match up.get(&w) {
                    Some(u) => u.substitute(|v| Poly::var(back[&v])),
                    None => down[&w].clone(),
                });
                (k, q)
            })
            .collect())
    }

    /// Images of the generators of the local rings of `s` under the maps
    /// FY(U_G) attached to a larger nested set `u ⊇ s`, moved onto the local
    /// intervals of `u`.
    pub fn refine_images(&self, s: &[usize], u: &[usize]) -> Result<HashMap<usize, Poly>, OperadError> {
        let l = self.bs.lattice();
        let whole = Ctx::whole(self.bs);
        let locals = whole.decompose(u, s)?;
        let mut out = HashMap::new();
        for &g in s {
            let t = whole.tau(s, g);
            let local = &locals[&g];
            let lctx = Ctx::interval(self.bs, t, g);
            let mut back: HashMap<usize, usize> = HashMap::new();
            for &x in u.iter().filter(|&&x| l.leq(x, g) && s.iter().filter(|&&h| l.leq(x, h)).all(|&h| l.leq(g, h))) {
                let y = l.join(x, t);
                let (tu, ts) = (lctx.tau(local, y), whole.tau(u, x));
                let target = self.local(ts, x)?;
                for &w in self.local(tu, y)?.members() {
                    let z = target.members().iter().copied().find(|&z| l.join(z, tu) == w).expect("intervals are isomorphic");
                    back.insert(w, z);
                }
            }
            for (k, p) in self.composite_images(t, g, local)? {
                out.insert(k, p.substitute(|w| Poly::var(back[&w])));
            }
        }
        Ok(out)
    }

    /// The explicit FY(S) agrees with the composite of single-step maps.
    pub fn check_nested_formula(&self, max_size: Option<usize>) -> Result<CheckReport, OperadError> {
        let l = self.bs.lattice();
        let mut rep = CheckReport::default();
        for s in Ctx::whole(self.bs).enumerate(true, max_size)? {
            let (dst, m) = self.nested_map(&s)?;
            let whole = self.whole()?;
            let img = self.composite_images(l.bottom(), l.top(), &s)?;
            let comp = whole.hom_matrix(&dst, &img);
            rep.record(mats_equal(&m, &comp), || format!("nested set {s:?}"));
        }
        Ok(rep)
    }
}
