//! OS cooperad maps and the odd maps on the projective OS algebra.
//!
//! Tensor elements keep one exterior monomial per factor, in the local atom
//! indices of that factor. Moving a degree-p element past a degree-q one
//! costs (−1)^{pq}, and an odd map applied to factor i picks up the parity
//! of the factors to its left.

use crate::building::BuildingSet;
use crate::linalg::{Mat, Q};
use crate::lattice::Lattice;
use crate::operad::{generator_pairs, CheckReport, OperadError, RelationKind};
use crate::os::{Ext, OsAlgebra};
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

/// OS algebra of an interval, with atoms addressed by ambient ids.
pub struct LocalOs {
    pub lo: usize,
    pub hi: usize,
    pub os: OsAlgebra,
    atom_of: HashMap<usize, usize>,
    atom_elem: Vec<usize>,
}

impl LocalOs {
    fn new(l: &Arc<Lattice>, lo: usize, hi: usize, order: Option<Vec<usize>>) -> Result<LocalOs, OperadError> {
        let (sub, emb) = if lo == l.bottom() && hi == l.top() {
            ((**l).clone(), (0..l.len()).collect::<Vec<_>>())
        } else {
            let (s, e) = l.interval(lo, hi).map_err(crate::os::OsError::from)?;
            (s, e)
        };
        let atom_elem: Vec<usize> = (0..sub.num_atoms()).map(|i| emb[sub.atom(i)]).collect();
        let atom_of = atom_elem.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let os = OsAlgebra::new(Arc::new(sub), order)?;
        Ok(LocalOs { lo, hi, os, atom_of, atom_elem })
    }

    /// Local atom index of an ambient element covering `lo`.
    pub fn atom_of(&self, elem: usize) -> usize {
        self.atom_of[&elem]
    }

    /// Ambient element of a local atom.
    pub fn atom_elem(&self, i: usize) -> usize {
        self.atom_elem[i]
    }

    pub fn num_atoms(&self) -> usize {
        self.atom_elem.len()
    }
}

/// Element of a tensor product of exterior algebras.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorExt(BTreeMap<Vec<u64>, Q>);

impl TensorExt {
    pub fn zero() -> TensorExt {
        TensorExt::default()
    }

    pub fn term(masks: Vec<u64>, c: Q) -> TensorExt {
        let mut t = TensorExt::zero();
        t.add_term(masks, c);
        t
    }

    pub fn add_term(&mut self, masks: Vec<u64>, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(masks).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &Q)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &TensorExt) -> TensorExt {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Q) -> TensorExt {
        let mut out = TensorExt::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn neg(&self) -> TensorExt {
        self.scale(&-Q::one())
    }
}

fn deg(m: u64) -> usize {
    m.count_ones() as usize
}

/// Tensor product of local OS algebras.
pub struct OsTensor {
    pub factors: Vec<Rc<LocalOs>>,
}

impl OsTensor {
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|f| (f.lo, f.hi)).collect()
    }

    /// Normal form factor by factor.
    pub fn reduce(&self, x: &TensorExt) -> TensorExt {
        let mut out = TensorExt::zero();
        for (masks, c) in x.terms() {
            let mut acc: Vec<(Vec<u64>, Q)> = vec![(Vec::new(), c.clone())];
            for (f, &m) in self.factors.iter().zip(masks) {
                let r = f.os.reduce(&Ext::term(m, Q::one()));
                acc = acc
                    .iter()
                    .flat_map(|(ms, k)| {
                        r.terms().map(move |(&m2, k2)| {
                            let mut v = ms.clone();
                            v.push(m2);
                            (v, k * k2)
                        })
                    })
                    .collect();
            }
            for (ms, k) in acc {
                out.add_term(ms, k);
            }
        }
        out
    }

    /// nbc tensor basis of all degrees.
    pub fn basis(&self) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = vec![Vec::new()];
        for f in &self.factors {
            let fb: Vec<u64> = f.os.nbc_basis().iter().flatten().copied().collect();
            out = out.iter().flat_map(|v| fb.iter().map(move |&m| [v.clone(), vec![m]].concat())).collect();
        }
        out
    }

    pub fn coords(&self, x: &TensorExt, basis: &[Vec<u64>]) -> Vec<Q> {
        let r = self.reduce(x);
        basis.iter().map(|b| r.0.get(b).cloned().unwrap_or_else(Q::zero)).collect()
    }

    /// Is every factor of every term killed by δ after reduction?
    pub fn in_kernel_of_each_delta(&self, x: &TensorExt) -> bool {
        (0..self.factors.len()).all(|i| self.reduce(&self.delta_on(x, i)).is_zero())
    }

    /// δ applied to factor i, with the Koszul sign of the factors to its left.
    pub fn delta_on(&self, x: &TensorExt, i: usize) -> TensorExt {
        let mut out = TensorExt::zero();
        for (masks, c) in x.terms() {
            let left: usize = masks[..i].iter().map(|&m| deg(m)).sum();
            let sign = if left % 2 == 1 { -c.clone() } else { c.clone() };
            for (&m, k) in self.factors[i].os.delta(&Ext::term(masks[i], Q::one())).terms() {
                let mut v = masks.clone();
                v[i] = m;
                out.add_term(v, &sign * k);
            }
        }
        out
    }
}

/// Cache of local OS algebras of one built lattice and its structure maps.
pub struct OsOperad<'a> {
    pub bs: &'a BuildingSet,
    order: Vec<usize>,
    cache: RefCell<HashMap<(usize, usize), Rc<LocalOs>>>,
}

impl<'a> OsOperad<'a> {
    pub fn new(bs: &'a BuildingSet, order: Option<Vec<usize>>) -> Result<OsOperad<'a>, OperadError> {
        bs.require_irreducible()?;
        let n = bs.lattice().num_atoms();
        let order = match order {
            Some(o) => crate::catalog::validate_order(&o, n).map_err(crate::os::OsError::from)?,
            None => (0..n).collect(),
        };
        Ok(OsOperad { bs, order, cache: RefCell::new(HashMap::new()) })
    }

    pub fn local(&self, lo: usize, hi: usize) -> Result<Rc<LocalOs>, OperadError> {
        if let Some(x) = self.cache.borrow().get(&(lo, hi)) {
            return Ok(x.clone());
        }
        let l = self.bs.lattice();
        let order = (lo == l.bottom() && hi == l.top()).then(|| self.order.clone());
        let x = Rc::new(LocalOs::new(l, lo, hi, order)?);
        self.cache.borrow_mut().insert((lo, hi), x.clone());
        Ok(x)
    }

    pub fn tensor(&self, iv: &[(usize, usize)]) -> Result<OsTensor, OperadError> {
        Ok(OsTensor { factors: iv.iter().map(|&(a, b)| self.local(a, b)).collect::<Result<_, _>>()? })
    }

    pub fn whole(&self) -> Result<OsTensor, OperadError> {
        let l = self.bs.lattice();
        self.tensor(&[(l.bottom(), l.top())])
    }

    fn check_generator(&self, lo: usize, hi: usize, g: usize) -> Result<(), OperadError> {
        let members = self.bs.induced_members(lo, hi);
        if g == hi || !members.contains(&g) {
            return Err(OperadError::BadGenerator { lo, hi, g });
        }
        Ok(())
    }

    /// OS({g}) applied to factor i: e_H ↦ 1 ⊗ e_H below g, e_{g∨H} ⊗ 1 otherwise.
    /// With `odd`, δ is applied to the upper output afterwards.
    pub fn map_on_factor(&self, src: &OsTensor, x: &TensorExt, i: usize, g: usize, odd: bool) -> Result<(OsTensor, TensorExt), OperadError> {
        let l = self.bs.lattice();
        let (lo, hi) = src.intervals()[i];
        self.check_generator(lo, hi, g)?;
        let mut iv = src.intervals();
        iv.splice(i..=i, [(g, hi), (lo, g)]);
        let dst = self.tensor(&iv)?;
        let f = &src.factors[i];
        let (up, down) = (&dst.factors[i], &dst.factors[i + 1]);
        let mut out = TensorExt::zero();
        for (masks, c) in x.terms() {
            // image of the ordered monomial of factor i as an element of up ⊗ down
            let mut acc: Vec<(u64, u64, Q)> = vec![(0, 0, Q::one())];
            for a in f.os.ordered(masks[i]) {
                let e = f.atom_elem(a);
                let mut next = Vec::new();
                for (mu, md, k) in acc {
                    if l.leq(e, g) {
                        let gen = down.os.generator(down.atom_of(e));
                        for (&m2, k2) in down.os.wedge(&Ext::term(md, k.clone()), &gen).terms() {
                            next.push((mu, m2, k2.clone()));
                        }
                    } else {
                        let gen = up.os.generator(up.atom_of(l.join(g, e)));
                        let k = if deg(md) % 2 == 1 { -k } else { k };
                        for (&m2, k2) in up.os.wedge(&Ext::term(mu, k), &gen).terms() {
                            next.push((m2, md, k2.clone()));
                        }
                    }
                }
                acc = next;
            }
            let left: usize = masks[..i].iter().map(|&m| deg(m)).sum();
            for (mu, md, k) in acc {
                let k = &k * c;
                let k = if odd && left % 2 == 1 { -k } else { k };
                let ups: Vec<(u64, Q)> =
                    if odd { up.os.delta(&Ext::term(mu, Q::one())).terms().map(|(&m, q)| (m, q.clone())).collect() } else { vec![(mu, Q::one())] };
                for (mu2, q) in ups {
                    let mut v = masks[..i].to_vec();
                    v.push(mu2);
                    v.push(md);
                    v.extend_from_slice(&masks[i + 1..]);
                    out.add_term(v, &k * q);
                }
            }
        }
        Ok((dst, out))
    }

    /// Permute factors (new factor j is old factor perm[j]) and relabel
    /// elements through `f`, which maps each old interval onto its new one.
    pub fn relabel(&self, src: &OsTensor, x: &TensorExt, perm: &[usize], iv: &[(usize, usize)], f: &dyn Fn(usize) -> usize) -> Result<(OsTensor, TensorExt), OperadError> {
        let dst = self.tensor(iv)?;
        let mut out = TensorExt::zero();
        for (masks, c) in x.terms() {
            let mut sign = false;
            for a in 0..perm.len() {
                for b in a + 1..perm.len() {
                    if perm[a] > perm[b] && deg(masks[perm[a]]) * deg(masks[perm[b]]) % 2 == 1 {
                        sign = !sign;
                    }
                }
            }
            let mut acc: Vec<(Vec<u64>, Q)> = vec![(Vec::new(), if sign { -c.clone() } else { c.clone() })];
            for (j, &p) in perm.iter().enumerate() {
                let (sf, df) = (&src.factors[p], &dst.factors[j]);
                let atoms: Vec<usize> = sf.os.ordered(masks[p]).into_iter().map(|a| df.atom_of(f(sf.atom_elem(a)))).collect();
                let e = df.os.monomial(&atoms)?;
                acc = acc
                    .iter()
                    .flat_map(|(v, k)| {
                        e.terms().map(move |(&m, q)| {
                            let mut v = v.clone();
                            v.push(m);
                            (v, k * q)
                        })
                    })
                    .collect();
            }
            for (v, k) in acc {
                out.add_term(v, k);
            }
        }
        Ok((dst, out))
    }

    /// nbc basis of OS(L), as tensor elements with one factor.
    pub fn os_basis(&self) -> Result<Vec<TensorExt>, OperadError> {
        let w = self.whole()?;
        Ok(w.basis().into_iter().map(|m| TensorExt::term(m, Q::one())).collect())
    }

    /// Basis of the projective algebra (kernel of δ), as tensor elements.
    pub fn osbar_basis(&self) -> Result<Vec<TensorExt>, OperadError> {
        let w = self.whole()?;
        let os = &w.factors[0].os;
        let mut out = Vec::new();
        for (d, vecs) in os.projective_basis().iter().enumerate() {
            for v in vecs {
                let e = os.from_coords(d, v);
                let mut t = TensorExt::zero();
                for (&m, c) in e.terms() {
                    t.add_term(vec![m], c.clone());
                }
                out.push(t);
            }
        }
        Ok(out)
    }

    /// Matrix of OS({g}) or its odd version, from the given source basis to
    /// the nbc basis of OS([g,1]) ⊗ OS([0,g]).
    pub fn map_matrix(&self, g: usize, odd: bool) -> Result<Mat, OperadError> {
        let w = self.whole()?;
        let src = if odd { self.osbar_basis()? } else { self.os_basis()? };
        let l = self.bs.lattice();
        let dst = self.tensor(&[(g, l.top()), (l.bottom(), g)])?;
        let basis = dst.basis();
        let cols: Vec<Vec<Q>> = src
            .iter()
            .map(|x| self.map_on_factor(&w, x, 0, g, odd).map(|(_, y)| dst.coords(&y, &basis)))
            .collect::<Result<_, _>>()?;
        Ok(Mat::from_columns(basis.len(), &cols))
    }

    /// Circuit relations go to zero under every OS({g}).
    pub fn check_well_defined(&self) -> Result<CheckReport, OperadError> {
        let w = self.whole()?;
        let os = &w.factors[0].os;
        let l = self.bs.lattice();
        let mut rep = CheckReport::default();
        for &g in self.bs.members().iter().filter(|&&g| g != self.bs.top()) {
            let dst = self.tensor(&[(g, l.top()), (l.bottom(), g)])?;
            for &c in os.circuits() {
                let dc = os.delta(&Ext::term(c, Q::one()));
                let mut t = TensorExt::zero();
                for (&m, k) in dc.terms() {
                    t.add_term(vec![m], k.clone());
                }
                let (_, img) = self.map_on_factor(&w, &t, 0, g, false)?;
                rep.record(dst.reduce(&img).is_zero(), || format!("OS({{{g}}}) does not kill the circuit {c:#b}"));
            }
        }
        Ok(rep)
    }

    /// Odd maps send the projective algebra into the tensor of projective algebras.
    pub fn check_odd_lands(&self) -> Result<CheckReport, OperadError> {
        let w = self.whole()?;
        let l = self.bs.lattice();
        let mut rep = CheckReport::default();
        let basis = self.osbar_basis()?;
        for &g in self.bs.members().iter().filter(|&&g| g != self.bs.top()) {
            let dst = self.tensor(&[(g, l.top()), (l.bottom(), g)])?;
            for x in &basis {
                let (_, y) = self.map_on_factor(&w, x, 0, g, true)?;
                rep.record(dst.in_kernel_of_each_delta(&y), || format!("odd map at {g} leaves the projective part"));
            }
        }
        Ok(rep)
    }

    /// Chain, antichain and automorphism relations. For the odd maps the
    /// chain and antichain relations hold with a minus sign.
    pub fn check_relations(&self, odd: bool) -> Result<Vec<(RelationKind, CheckReport)>, OperadError> {
        let l = self.bs.lattice();
        let (b, t) = (l.bottom(), l.top());
        let w = self.whole()?;
        let elems = if odd { self.osbar_basis()? } else { self.os_basis()? };
        let sign = |x: TensorExt| if odd { x.neg() } else { x };
        let (chains, antichains) = generator_pairs(self.bs);
        let mut chain = CheckReport::default();
        for &(g1, g2) in &chains {
            for x in &elems {
                let (t1, a) = self.map_on_factor(&w, x, 0, g1, odd)?;
                let (t2, left) = self.map_on_factor(&t1, &a, 0, g2, odd)?;
                let (u1, c) = self.map_on_factor(&w, x, 0, g2, odd)?;
                let (_, right) = self.map_on_factor(&u1, &c, 1, g1, odd)?;
                let diff = left.add(&sign(right).neg());
                chain.record(t2.reduce(&diff).is_zero(), || format!("chain {g1} < {g2}"));
            }
        }
        let mut anti = CheckReport::default();
        for &(g1, g2) in &antichains {
            let j = l.join(g1, g2);
            let phi = move |v: usize| if l.leq(v, g2) { l.join(v, g1) } else if l.leq(v, j) { l.meet(v, g1) } else { v };
            for x in &elems {
                let (t1, a) = self.map_on_factor(&w, x, 0, g1, odd)?;
                let (t2, left) = self.map_on_factor(&t1, &a, 0, j, odd)?;
                let (u1, c) = self.map_on_factor(&w, x, 0, g2, odd)?;
                let (u2, d) = self.map_on_factor(&u1, &c, 0, j, odd)?;
                let (_, right) = self.relabel(&u2, &d, &[0, 2, 1], &[(j, t), (g1, j), (b, g1)], &phi)?;
                let diff = left.add(&sign(right).neg());
                anti.record(t2.reduce(&diff).is_zero(), || format!("antichain {g1}, {g2}"));
            }
        }
        let mut iso = CheckReport::default();
        for f in self.bs.automorphisms() {
            let fm = |v: usize| f[v];
            for &g in self.bs.members().iter().filter(|&&g| g != t) {
                let split = self.tensor(&[(g, t), (b, g)])?;
                for x in &elems {
                    let (_, fx) = self.relabel(&w, x, &[0], &[(b, t)], &fm)?;
                    let (dst, left) = self.map_on_factor(&w, &fx, 0, f[g], odd)?;
                    let (_, y) = self.map_on_factor(&w, x, 0, g, odd)?;
                    let (_, right) = self.relabel(&split, &y, &[0, 1], &[(f[g], t), (b, f[g])], &fm)?;
                    iso.record(dst.reduce(&left.add(&right.neg())).is_zero(), || format!("automorphism {f:?} at {g}"));
                }
            }
        }
        Ok(vec![(RelationKind::Chain, chain), (RelationKind::Antichain, anti), (RelationKind::Iso, iso)])
    }
}
