//! Directed built lattices, the ⊲* orders, EL-labelings, clusters and frames,
//! and the normal monomials of the quadratic relations of FY^∨.
//!
//! A monomial of the free shuffle operad on a one-dimensional generator per
//! arity is an irreducible nested set; the general labeled form is kept so
//! the order works for any based module.

use crate::building::BuildingSet;
use crate::nested::{Ctx, NestedError};
use crate::operad::quadratic_relations_in;
use crate::poly::Mono;
use serde::Serialize;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShuffleError {
    #[error("{0} is not below {1}")]
    NotBelow(usize, usize),
    #[error("chain does not start at the bottom of the interval")]
    NotAnchored,
    #[error("consecutive chain elements {0} and {1} are not a covering pair")]
    NotCover(usize, usize),
    #[error("monomials live in different arities")]
    ArityMismatch,
    #[error(transparent)]
    Nested(#[from] NestedError),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
    #[error(transparent)]
    Building(#[from] crate::building::BuildingError),
}

/// A built lattice (or interval of one) with a linear order on its atoms.
#[derive(Clone, Debug)]
pub struct Directed<'a> {
    pub ctx: Ctx<'a>,
    /// Atoms of the interval (elements covering `lo`), smallest first.
    atoms: Vec<usize>,
    pos: HashMap<usize, usize>,
}

/// Monomial: nested set with one basis label per element (label 0 for FY^∨).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ShuffleMonomial {
    pub lo: usize,
    pub hi: usize,
    pub elems: Vec<(usize, u32)>,
}

impl ShuffleMonomial {
    pub fn unlabeled(lo: usize, hi: usize, s: &[usize]) -> ShuffleMonomial {
        let mut elems: Vec<(usize, u32)> = s.iter().map(|&g| (g, 0)).collect();
        elems.sort_unstable();
        elems.dedup();
        ShuffleMonomial { lo, hi, elems }
    }

    pub fn set(&self) -> Vec<usize> {
        self.elems.iter().map(|&(g, _)| g).collect()
    }

    fn label(&self, g: usize) -> Option<u32> {
        self.elems.iter().find(|&&(h, _)| h == g).map(|&(_, e)| e)
    }
}

impl<'a> Directed<'a> {
    /// `order` lists atom indices from smallest to largest.
    pub fn new(bs: &'a BuildingSet, order: &[usize]) -> Result<Directed<'a>, ShuffleError> {
        let l = bs.lattice();
        let order = crate::catalog::validate_order(order, l.num_atoms())?;
        let atoms: Vec<usize> = order.iter().map(|&i| l.atom(i)).collect();
        Ok(Directed::from_atoms(Ctx::whole(bs), atoms))
    }

    fn from_atoms(ctx: Ctx<'a>, atoms: Vec<usize>) -> Directed<'a> {
        let pos = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        Directed { ctx, atoms, pos }
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Induced direction on [lo, hi]: a cover K of lo is ranked by the
    /// smallest atom H of this interval with lo ∨ H = K.
    pub fn induced(&self, lo: usize, hi: usize) -> Result<Directed<'a>, ShuffleError> {
        let l = self.ctx.lattice();
        if !l.leq(self.ctx.lo, lo) || !l.leq(lo, hi) || !l.leq(hi, self.ctx.hi) {
            return Err(ShuffleError::NotBelow(lo, hi));
        }
        let mut covers: Vec<(usize, usize)> = l
            .covers(lo)
            .into_iter()
            .filter(|&k| l.leq(k, hi))
            .map(|k| {
                let first = self.atoms.iter().position(|&h| l.join(lo, h) == k).expect("geometric lattice");
                (first, k)
            })
            .collect();
        covers.sort_unstable();
        Ok(Directed::from_atoms(Ctx::interval(self.ctx.bs, lo, hi), covers.into_iter().map(|(_, k)| k).collect()))
    }

    /// w(G): positions of the atoms below G, increasing.
    pub fn word(&self, g: usize) -> Vec<usize> {
        let l = self.ctx.lattice();
        let mut w: Vec<usize> = self.atoms.iter().filter(|&&h| l.leq(h, g)).map(|h| self.pos[h]).collect();
        w.sort_unstable();
        w
    }

    /// G1 ⊲* G2 when w(G2) is a proper initial subword of w(G1), or w(G1)
    /// is lexicographically smaller at the first difference.
    pub fn element_cmp(&self, g1: usize, g2: usize) -> Ordering {
        let (w1, w2) = (self.word(g1), self.word(g2));
        match w1.iter().zip(&w2).find(|(a, b)| a != b) {
            Some((a, b)) => a.cmp(b),
            None => w2.len().cmp(&w1.len()),
        }
    }

    fn minimal(&self, s: &[usize]) -> Vec<usize> {
        let l = self.ctx.lattice();
        s.iter().copied().filter(|&x| !s.iter().any(|&y| l.lt(y, x))).collect()
    }

    /// MM(S): the ⊲*-smallest minimal element.
    pub fn mm(&self, s: &[usize]) -> usize {
        self.minimal(s).into_iter().min_by(|&a, &b| self.element_cmp(a, b)).expect("nonempty nested set")
    }

    /// G ∨ m in the arity [G, hi]; each element keeps the label of the element it came from.
    pub fn join_monomial(&self, g: usize, m: &ShuffleMonomial) -> ShuffleMonomial {
        let l = self.ctx.lattice();
        let mut elems: BTreeMap<usize, u32> = BTreeMap::new();
        for &(k, e) in &m.elems {
            if k != g {
                elems.insert(l.join(g, k), e);
            }
        }
        ShuffleMonomial { lo: g, hi: m.hi, elems: elems.into_iter().collect() }
    }

    /// The inductive order ⊲*_⊣ on monomials of this arity.
    pub fn monomial_cmp(&self, m1: &ShuffleMonomial, m2: &ShuffleMonomial) -> Result<Ordering, ShuffleError> {
        if (m1.lo, m1.hi) != (self.ctx.lo, self.ctx.hi) || (m2.lo, m2.hi) != (m1.lo, m1.hi) {
            return Err(ShuffleError::ArityMismatch);
        }
        if m1 == m2 {
            return Ok(Ordering::Equal);
        }
        let (s1, s2) = (m1.set(), m2.set());
        let min2 = self.minimal(&s2);
        for g in self.minimal(&s1) {
            if min2.contains(&g) && m1.label(g) == m2.label(g) {
                let sub = self.induced(g, self.ctx.hi)?;
                return sub.monomial_cmp(&self.join_monomial(g, m1), &self.join_monomial(g, m2));
            }
        }
        let (a, b) = (self.mm(&s1), self.mm(&s2));
        Ok(self.element_cmp(a, b).then_with(|| m1.label(a).cmp(&m2.label(b))))
    }

    /// Composite S ∘ (m_G): all locals trivial except `m` at `g0`.
    pub fn compose_at(&self, s: &[usize], g0: usize, m: &ShuffleMonomial) -> Result<ShuffleMonomial, ShuffleError> {
        let t = self.ctx.tau(s, g0);
        let mut locals: BTreeMap<usize, Vec<usize>> = s.iter().map(|&g| (g, vec![g])).collect();
        locals.insert(g0, m.set());
        let set = self.ctx.compose(s, &locals)?;
        let mut out = ShuffleMonomial::unlabeled(self.ctx.lo, self.ctx.hi, &set);
        for (k, e) in &m.elems {
            let c = if *k == g0 { g0 } else { self.ctx.comp(t, *k)? };
            if let Some(x) = out.elems.iter_mut().find(|x| x.0 == c) {
                x.1 = *e;
            }
        }
        Ok(out)
    }

    /// Does m2 arise from m1 by composing with generators everywhere else?
    pub fn divides(&self, m1: &ShuffleMonomial, m2: &ShuffleMonomial) -> Result<bool, ShuffleError> {
        let s = m2.set();
        let extra = m1.elems.len().saturating_sub(1);
        if extra >= s.len() {
            return Ok(false);
        }
        for t in subsets_with(&s, self.ctx.hi, s.len() - extra) {
            let locals = self.ctx.decompose(&s, &t)?;
            for (&g0, local) in &locals {
                let (lo, hi) = (self.ctx.tau(&t, g0), g0);
                if (lo, hi) != (m1.lo, m1.hi) || *local != m1.set() {
                    continue;
                }
                let others_trivial = locals.iter().all(|(&g, loc)| g == g0 || loc.len() == 1);
                if others_trivial && self.compose_at(&t, g0, m1)?.elems.iter().all(|&(k, e)| m2.label(k) == Some(e)) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// λ(X ≺ Y) = 1 + position of the first atom H with X ∨ H = Y.
    pub fn label(&self, x: usize, y: usize) -> usize {
        let l = self.ctx.lattice();
        1 + self.atoms.iter().position(|&h| l.join(x, h) == y).expect("covering pair")
    }

    /// All maximal chains from x to y.
    pub fn maximal_chains(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        let l = self.ctx.lattice();
        if x == y {
            return vec![vec![x]];
        }
        let mut out = Vec::new();
        for c in l.covers(x).into_iter().filter(|&c| l.leq(c, y)) {
            for mut rest in self.maximal_chains(c, y) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }

    pub fn chain_labels(&self, chain: &[usize]) -> Vec<usize> {
        chain.windows(2).map(|w| self.label(w[0], w[1])).collect()
    }

    /// ω_{X,Y}: the chain with increasing labels, optionally truncated at height k.
    pub fn increasing_chain(&self, x: usize, y: usize, k: Option<usize>) -> Result<Vec<usize>, ShuffleError> {
        let l = self.ctx.lattice();
        if !l.leq(x, y) {
            return Err(ShuffleError::NotBelow(x, y));
        }
        let mut chain = vec![x];
        let mut cur = x;
        while cur != y {
            let next = l
                .covers(cur)
                .into_iter()
                .filter(|&c| l.leq(c, y))
                .min_by_key(|&c| self.label(cur, c))
                .expect("x ≤ y in a graded lattice");
            chain.push(next);
            cur = next;
        }
        if let Some(k) = k {
            chain.truncate(k + 1);
        }
        Ok(chain)
    }

    /// S(ω) = {X1} ∘ {X2} ∘ … ∘ {Xn} for a chain starting at the bottom.
    pub fn cluster_from_chain(&self, chain: &[usize]) -> Result<Vec<usize>, ShuffleError> {
        let l = self.ctx.lattice();
        if chain.first() != Some(&self.ctx.lo) {
            return Err(ShuffleError::NotAnchored);
        }
        let mut s = vec![self.ctx.hi];
        for w in chain.windows(2) {
            if !l.covers(w[0]).contains(&w[1]) {
                return Err(ShuffleError::NotCover(w[0], w[1]));
            }
            let mut locals: BTreeMap<usize, Vec<usize>> = s.iter().map(|&g| (g, vec![g])).collect();
            if w[1] != self.ctx.hi {
                locals.insert(self.ctx.hi, vec![w[1], self.ctx.hi]);
            }
            s = self.ctx.compose(&s, &locals)?;
        }
        Ok(s)
    }

    /// Rank of the local interval of g in s.
    pub fn local_rank(&self, s: &[usize], g: usize) -> usize {
        let l = self.ctx.lattice();
        l.rank(g) - l.rank(self.ctx.tau(s, g))
    }

    /// Frame: members with local rank > 1, plus the top; and the locals.
    pub fn frame(&self, s: &[usize]) -> Result<(Vec<usize>, BTreeMap<usize, Vec<usize>>), ShuffleError> {
        let hi = self.ctx.hi;
        let fr: Vec<usize> = s.iter().copied().filter(|&g| g == hi || self.local_rank(s, g) > 1).collect();
        let locals = self.ctx.decompose(s, &fr)?;
        Ok((fr, locals))
    }

    /// Is s a cluster (all non-top local intervals of rank one)?
    pub fn is_cluster(&self, s: &[usize]) -> bool {
        s.iter().all(|&g| g == self.ctx.hi || self.local_rank(s, g) == 1)
    }
}

/// Subsets of s of the given size containing `must`.
fn subsets_with(s: &[usize], must: usize, size: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != must).collect();
    let mut out = Vec::new();
    if size == 0 || !s.contains(&must) {
        return out;
    }
    fn rec(rest: &[usize], from: usize, need: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if need == 0 {
            let mut v = cur.clone();
            v.sort_unstable();
            out.push(v);
            return;
        }
        for i in from..rest.len() {
            cur.push(rest[i]);
            rec(rest, i + 1, need - 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = vec![must];
    rec(&rest, 0, size - 1, &mut cur, &mut out);
    out
}

/// Normal monomials of FY^∨ for one directed built lattice, by two routes.
pub struct FyDual<'d, 'a> {
    pub dir: &'d Directed<'a>,
    leading: RefCell<HashMap<(usize, usize), BTreeSet<Vec<usize>>>>,
}

impl<'d, 'a> FyDual<'d, 'a> {
    pub fn new(dir: &'d Directed<'a>) -> FyDual<'d, 'a> {
        FyDual { dir, leading: RefCell::new(HashMap::new()) }
    }

    /// Leading terms of the quadratic relations in the arity [lo, hi], as local nested sets.
    pub fn leading_terms(&self, lo: usize, hi: usize) -> Result<BTreeSet<Vec<usize>>, ShuffleError> {
        if let Some(x) = self.leading.borrow().get(&(lo, hi)) {
            return Ok(x.clone());
        }
        let d = self.dir.induced(lo, hi)?;
        let mut out = BTreeSet::new();
        for r in quadratic_relations_in(&d.ctx, d.atoms()) {
            let mut best: Option<ShuffleMonomial> = None;
            for &(g, _) in &r.terms {
                let m = ShuffleMonomial::unlabeled(lo, hi, &[g, hi]);
                best = match best {
                    Some(b) if d.monomial_cmp(&b, &m)? != Ordering::Less => Some(b),
                    _ => Some(m),
                };
            }
            if let Some(b) = best {
                out.insert(b.set());
            }
        }
        self.leading.borrow_mut().insert((lo, hi), out.clone());
        Ok(out)
    }

    /// Is the nested set divisible by some leading term?
    pub fn reducible(&self, s: &[usize]) -> Result<bool, ShuffleError> {
        let ctx = &self.dir.ctx;
        let l = ctx.lattice();
        for &x in s.iter().filter(|&&x| x != ctx.hi) {
            let t: Vec<usize> = s.iter().copied().filter(|&y| y != x).collect();
            let g0 = t.iter().copied().filter(|&y| l.lt(x, y)).min_by_key(|&y| l.rank(y)).expect("top is above");
            let locals = ctx.decompose(s, &t)?;
            if self.leading_terms(ctx.tau(&t, g0), g0)?.contains(&locals[&g0]) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Irreducible nested sets not divisible by any leading term.
    pub fn normal_by_divisibility(&self) -> Result<Vec<Vec<usize>>, ShuffleError> {
        let mut out = Vec::new();
        for s in self.dir.ctx.enumerate(true, None)? {
            if !self.reducible(&s)? {
                out.push(s);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Frames with truncated increasing chains in each local interval,
    /// together with the matching FY monomial ∏ x_G^{rk_G − k_G − 1}.
    pub fn normal_by_frames(&self) -> Result<Vec<(Vec<usize>, Mono)>, ShuffleError> {
        let ctx = &self.dir.ctx;
        let hi = ctx.hi;
        let mut out = Vec::new();
        for fr in ctx.enumerate(true, None)? {
            if fr.iter().any(|&g| g != hi && self.dir.local_rank(&fr, g) < 2) {
                continue;
            }
            let ranges: Vec<Vec<usize>> = fr
                .iter()
                .map(|&g| {
                    let r = self.dir.local_rank(&fr, g);
                    if g == hi { (0..r).collect() } else { (0..r - 1).collect() }
                })
                .collect();
            for ks in crate::nested::cartesian(&ranges) {
                let mut locals = BTreeMap::new();
                let mut pairs = Vec::new();
                for (&g, &k) in fr.iter().zip(&ks) {
                    let t = ctx.tau(&fr, g);
                    let d = self.dir.induced(t, g)?;
                    let chain = d.increasing_chain(t, g, Some(k))?;
                    locals.insert(g, d.cluster_from_chain(&chain)?);
                    pairs.push((g, (self.dir.local_rank(&fr, g) - k - 1) as u32));
                }
                out.push((ctx.compose(&fr, &locals)?, Mono::from_pairs(pairs)));
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Verdict of the Gröbner check for one directed built lattice.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroebnerReport {
    pub atom_order: Vec<usize>,
    pub normal_monomials: usize,
    pub by_frames: usize,
    pub fy_dim: usize,
    pub routes_agree: bool,
    pub matches_fy_basis: bool,
    pub verdict: bool,
}

/// Count normal monomials both ways and compare with dim FY and its normal basis.
pub fn verify_quadratic_gb(bs: &BuildingSet, order: &[usize]) -> Result<GroebnerReport, ShuffleError> {
    let fy = crate::fy::FyAlgebra::new(bs).map_err(|e| match e {
        crate::fy::FyError::Building(b) => ShuffleError::Building(b),
        other => panic!("FY ring of an irreducible input failed: {other}"),
    })?;
    let dir = Directed::new(bs, order)?;
    let dual = FyDual::new(&dir);
    let a = dual.normal_by_divisibility()?;
    let b = dual.normal_by_frames()?;
    let sets: Vec<Vec<usize>> = b.iter().map(|(s, _)| s.clone()).collect();
    let mut monos: Vec<Mono> = b.iter().map(|(_, m)| m.clone()).collect();
    monos.sort();
    let mut basis: Vec<Mono> = fy.normal_basis().iter().flatten().cloned().collect();
    basis.sort();
    let routes_agree = a == sets;
    let matches_fy_basis = monos == basis;
    Ok(GroebnerReport {
        atom_order: order.to_vec(),
        normal_monomials: a.len(),
        by_frames: b.len(),
        fy_dim: fy.dim(),
        routes_agree,
        matches_fy_basis,
        verdict: routes_agree && matches_fy_basis && a.len() == fy.dim(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactoredGroebner {
    /// Top factor element and the report on its lower interval.
    pub factors: Vec<(usize, GroebnerReport)>,
    pub normal_monomials: usize,
    pub fy_dim: usize,
    pub verdict: bool,
}

/// The quadratic GB check on each factor [0, F] of the top; the normal
/// monomial count of a reducible input is the product over factors.
pub fn verify_quadratic_gb_factored(bs: &BuildingSet, order: &[usize]) -> Result<FactoredGroebner, ShuffleError> {
    let l = bs.lattice();
    let fy_dim = crate::fy::FyAlgebra::build(bs, true)
        .unwrap_or_else(|e| panic!("FY ring of a building set failed: {e}"))
        .dim();
    let mut factors = Vec::new();
    for f in bs.factors(l.top())? {
        let report = if f == l.top() {
            verify_quadratic_gb(bs, order)?
        } else {
            let (sub, emb) = bs.induced(l.bottom(), f)?;
            let local_of: HashMap<usize, usize> =
                (0..sub.lattice().num_atoms()).map(|i| (emb[sub.lattice().atom(i)], i)).collect();
            let sub_order: Vec<usize> = order.iter().filter_map(|&a| local_of.get(&l.atom(a)).copied()).collect();
            verify_quadratic_gb(&sub, &sub_order)?
        };
        factors.push((f, report));
    }
    let normal_monomials = factors.iter().map(|(_, r)| r.normal_monomials).product();
    let verdict = factors.iter().all(|(_, r)| r.verdict) && normal_monomials == fy_dim;
    Ok(FactoredGroebner { factors, normal_monomials, fy_dim, verdict })
}

/// Admissibility on composable triples: for S with |S| ≤ max_size, an
/// element G0 of S and two monomials m1 ⊲* m2 of equal size in the local
/// arity of G0, the composites keep the strict order.
pub fn check_admissibility(dir: &Directed, max_size: usize) -> Result<crate::operad::CheckReport, ShuffleError> {
    let ctx = &dir.ctx;
    let mut rep = crate::operad::CheckReport::default();
    for s in ctx.enumerate(true, Some(max_size))? {
        for &g0 in &s {
            let t = ctx.tau(&s, g0);
            let local = dir.induced(t, g0)?;
            let monos: Vec<ShuffleMonomial> = local
                .ctx
                .enumerate(true, Some(max_size))?
                .into_iter()
                .map(|x| ShuffleMonomial::unlabeled(t, g0, &x))
                .collect();
            for m1 in &monos {
                for m2 in &monos {
                    if m1.elems.len() != m2.elems.len() || local.monomial_cmp(m1, m2)? != Ordering::Less {
                        continue;
                    }
                    let c1 = dir.compose_at(&s, g0, m1)?;
                    let c2 = dir.compose_at(&s, g0, m2)?;
                    let ok = dir.monomial_cmp(&c1, &c2)? == Ordering::Less;
                    rep.record(ok, || format!("S={s:?} at {g0}: {:?} < {:?} not preserved", m1.set(), m2.set()));
                }
            }
        }
    }
    Ok(rep)
}

/// EL property for every comparable pair: exactly one increasing maximal
/// chain, and it is the lexicographically least.
pub fn check_el(dir: &Directed) -> crate::operad::CheckReport {
    let l = dir.ctx.lattice();
    let mut rep = crate::operad::CheckReport::default();
    for x in 0..l.len() {
        for y in 0..l.len() {
            if !l.lt(x, y) {
                continue;
            }
            let chains = dir.maximal_chains(x, y);
            let labels: Vec<Vec<usize>> = chains.iter().map(|c| dir.chain_labels(c)).collect();
            let inc: Vec<usize> = (0..chains.len()).filter(|&i| labels[i].windows(2).all(|w| w[0] < w[1])).collect();
            let least = (0..chains.len()).min_by(|&a, &b| labels[a].cmp(&labels[b])).expect("x < y");
            let greedy = dir.increasing_chain(x, y, None).expect("x < y");
            rep.record(inc.len() == 1 && inc[0] == least && chains[least] == greedy, || format!("pair {x} < {y}"));
        }
    }
    rep
}
