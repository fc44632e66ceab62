//! Nested sets, the Comp map, and composition of nested sets.
//!
//! All sets are sorted vectors of element ids of the ambient lattice. A
//! [`Ctx`] is an interval [lo, hi] of a built lattice carrying the induced
//! building set, still addressed by ambient ids, so that compositions inside
//! local intervals never need relabelling.

use crate::building::{BuildingError, BuildingSet};
use crate::lattice::Lattice;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NestedError {
    #[error("element {0} is not in the building set")]
    NotMember(usize),
    #[error("not nested: the antichain {0:?} has its join in the building set")]
    NotNested(Vec<usize>),
    #[error("nested set does not contain the top element {0}")]
    NotIrreducible(usize),
    #[error("element {k} is not in the induced building set over base {base}")]
    NotInduced { base: usize, k: usize },
    #[error("no local nested set given for {0}")]
    MissingLocal(usize),
    #[error("{0} is not an element of the nested set")]
    NotInSet(usize),
    #[error(transparent)]
    Building(#[from] BuildingError),
}

/// An interval of a built lattice with its induced building set.
#[derive(Clone, Debug)]
pub struct Ctx<'a> {
    pub bs: &'a BuildingSet,
    pub lo: usize,
    pub hi: usize,
    members: Vec<usize>,
    is_member: Vec<bool>,
}

impl<'a> Ctx<'a> {
    pub fn whole(bs: &'a BuildingSet) -> Ctx<'a> {
        let l = bs.lattice();
        Ctx::interval(bs, l.bottom(), l.top())
    }

    pub fn interval(bs: &'a BuildingSet, lo: usize, hi: usize) -> Ctx<'a> {
        let members = if lo == bs.lattice().bottom() {
            bs.members().iter().copied().filter(|&g| bs.lattice().leq(g, hi)).collect()
        } else {
            bs.induced_members(lo, hi)
        };
        let mut is_member = vec![false; bs.lattice().len()];
        for &m in &members {
            is_member[m] = true;
        }
        Ctx { bs, lo, hi, members, is_member }
    }

    pub fn lattice(&self) -> &Lattice {
        self.bs.lattice()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.is_member[x]
    }

    pub fn rank(&self) -> usize {
        let l = self.lattice();
        l.rank(self.hi) - l.rank(self.lo)
    }

    pub fn is_irreducible(&self) -> bool {
        self.is_member[self.hi]
    }

    /// Join of the members of `s` strictly below `g`, inside this interval.
    pub fn tau(&self, s: &[usize], g: usize) -> usize {
        let l = self.lattice();
        s.iter().filter(|&&x| l.lt(x, g)).fold(self.lo, |acc, &x| l.join(acc, x))
    }

    /// First antichain of size at least two whose join is a member.
    pub fn nested_witness(&self, s: &[usize]) -> Result<Option<Vec<usize>>, NestedError> {
        for &g in s {
            if !self.contains(g) {
                return Err(NestedError::NotMember(g));
            }
        }
        let mut chosen = Vec::new();
        Ok(self.antichain_search(s, 0, &mut chosen))
    }

    fn antichain_search(&self, s: &[usize], from: usize, chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
        let l = self.lattice();
        for i in from..s.len() {
            if chosen.iter().any(|&c| l.comparable(c, s[i])) {
                continue;
            }
            chosen.push(s[i]);
            if chosen.len() >= 2 && self.contains(l.join_all(chosen.iter().copied())) {
                return Some(chosen.clone());
            }
            if let Some(w) = self.antichain_search(s, i + 1, chosen) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }

    pub fn is_nested(&self, s: &[usize]) -> bool {
        matches!(self.nested_witness(s), Ok(None))
    }

    /// Can `g` be added to the nested set `s` keeping it nested?
    fn extends(&self, s: &[usize], g: usize) -> bool {
        let l = self.lattice();
        let inc: Vec<usize> = s.iter().copied().filter(|&x| !l.comparable(x, g)).collect();
        // antichains containing g: g plus an antichain among the incomparable ones
        fn rec(ctx: &Ctx, inc: &[usize], from: usize, acc: usize, chosen: &mut Vec<usize>) -> bool {
            let l = ctx.lattice();
            for i in from..inc.len() {
                if chosen.iter().any(|&c| l.comparable(c, inc[i])) {
                    continue;
                }
                let j = l.join(acc, inc[i]);
                if ctx.contains(j) {
                    return false;
                }
                chosen.push(inc[i]);
                let ok = rec(ctx, inc, i + 1, j, chosen);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        rec(self, &inc, 0, g, &mut Vec::new())
    }

    /// All nested sets, ordered by size then lexicographically by ids.
    pub fn enumerate(&self, irreducible_only: bool, max_size: Option<usize>) -> Result<Vec<Vec<usize>>, NestedError> {
        if irreducible_only && !self.is_irreducible() {
            return Err(NestedError::NotIrreducible(self.hi));
        }
        let cap = max_size.unwrap_or(usize::MAX);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enum_rec(0, &mut cur, cap, &mut out);
        if irreducible_only {
            out.retain(|s| s.contains(&self.hi));
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(out)
    }

    fn enum_rec(&self, from: usize, cur: &mut Vec<usize>, cap: usize, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == cap {
            return;
        }
        for i in from..self.members.len() {
            let g = self.members[i];
            if self.extends(cur, g) {
                cur.push(g);
                self.enum_rec(i + 1, cur, cap, out);
                cur.pop();
            }
        }
    }

    /// Factors of `x` in the induced building set.
    pub fn factors(&self, x: usize) -> Vec<usize> {
        let l = self.lattice();
        let below: Vec<usize> = self.members.iter().copied().filter(|&g| l.leq(g, x)).collect();
        below.iter().copied().filter(|&g| !below.iter().any(|&h| l.lt(g, h))).collect()
    }

    /// The unique maximal member F with F ∨ base = k.
    pub fn comp(&self, base: usize, k: usize) -> Result<usize, NestedError> {
        let l = self.lattice();
        let cands: Vec<usize> = self.members.iter().copied().filter(|&f| l.join(f, base) == k).collect();
        let maxes: Vec<usize> = cands.iter().copied().filter(|&f| !cands.iter().any(|&h| l.lt(f, h))).collect();
        match maxes.as_slice() {
            [f] if k != base => Ok(*f),
            _ => Err(NestedError::NotInduced { base, k }),
        }
    }

    /// Local intervals (g, tau(g)) of an irreducible nested set, in the order of `s`.
    pub fn local_intervals(&self, s: &[usize]) -> Vec<(usize, usize)> {
        s.iter().map(|&g| (g, self.tau(s, g))).collect()
    }

    pub fn local_ctx(&self, s: &[usize], g: usize) -> Ctx<'a> {
        Ctx::interval(self.bs, self.tau(s, g), g)
    }

    fn check_irreducible(&self, s: &[usize]) -> Result<(), NestedError> {
        if let Some(w) = self.nested_witness(s)? {
            return Err(NestedError::NotNested(w));
        }
        if !s.contains(&self.hi) {
            return Err(NestedError::NotIrreducible(self.hi));
        }
        Ok(())
    }

    /// S ∘ (S_G): each local set lives in the local interval of its G.
    pub fn compose(&self, s: &[usize], locals: &BTreeMap<usize, Vec<usize>>) -> Result<Vec<usize>, NestedError> {
        self.check_irreducible(s)?;
        let mut out: Vec<usize> = s.to_vec();
        for &g in s {
            let local = locals.get(&g).ok_or(NestedError::MissingLocal(g))?;
            let t = self.tau(s, g);
            let lctx = Ctx::interval(self.bs, t, g);
            lctx.check_irreducible(local)?;
            for &k in local {
                out.push(self.comp(t, k)?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Locals S'_G' = (S ∨ tau_{S'}(G')) ∩ (tau_{S'}(G'), G'] for S' ⊆ S containing the top.
    pub fn decompose(&self, s: &[usize], sub: &[usize]) -> Result<BTreeMap<usize, Vec<usize>>, NestedError> {
        if !sub.contains(&self.hi) {
            return Err(NestedError::NotIrreducible(self.hi));
        }
        if let Some(&x) = sub.iter().find(|x| !s.contains(x)) {
            return Err(NestedError::NotInSet(x));
        }
        let l = self.lattice();
        let mut out = BTreeMap::new();
        for &g in sub {
            let t = self.tau(sub, g);
            let mut local: Vec<usize> =
                s.iter().map(|&x| l.join(t, x)).filter(|&k| k != t && l.leq(t, k) && l.leq(k, g)).collect();
            local.sort_unstable();
            local.dedup();
            out.insert(g, local);
        }
        Ok(out)
    }

    /// Forest property: above any element, the members of s form a chain's worth
    /// of data with a unique minimum.
    pub fn forest_ok(&self, s: &[usize]) -> bool {
        let l = self.lattice();
        (0..l.len()).all(|k| {
            let above: Vec<usize> = s.iter().copied().filter(|&x| l.lt(k, x)).collect();
            above.is_empty() || above.iter().filter(|&&x| above.iter().all(|&y| l.leq(x, y))).count() == 1
        })
    }
}

pub fn is_nested(bs: &BuildingSet, s: &[usize]) -> Result<Option<Vec<usize>>, NestedError> {
    Ctx::whole(bs).nested_witness(s)
}

pub fn enumerate_nested(bs: &BuildingSet, irreducible_only: bool, max_size: Option<usize>) -> Result<Vec<Vec<usize>>, NestedError> {
    Ctx::whole(bs).enumerate(irreducible_only, max_size)
}

pub fn comp(bs: &BuildingSet, base: usize, k: usize) -> Result<usize, NestedError> {
    Ctx::whole(bs).comp(base, k)
}

/// (G, lower end of its local interval) for each G of an irreducible nested set.
pub fn local_intervals(bs: &BuildingSet, s: &[usize]) -> Vec<(usize, usize)> {
    Ctx::whole(bs).local_intervals(s)
}

pub fn compose_nested(bs: &BuildingSet, s: &[usize], locals: &BTreeMap<usize, Vec<usize>>) -> Result<Vec<usize>, NestedError> {
    Ctx::whole(bs).compose(s, locals)
}

pub fn decompose_nested(bs: &BuildingSet, s: &[usize], sub: &[usize]) -> Result<BTreeMap<usize, Vec<usize>>, NestedError> {
    Ctx::whole(bs).decompose(s, sub)
}

/// Outcome of one associativity instance: the two triple compositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocInstance {
    pub outer: Vec<usize>,
    pub inner_first: Vec<usize>,
    pub outer_first: Vec<usize>,
}

/// Exhaustive associativity check over nested sets of size at most `max_size`
/// at every level. Returns every instance so callers can count and compare.
pub fn associativity_instances(bs: &BuildingSet, max_size: usize) -> Result<Vec<AssocInstance>, NestedError> {
    let top = Ctx::whole(bs);
    let l = bs.lattice();
    let mut out = Vec::new();
    for s in top.enumerate(true, Some(max_size))? {
        // middle level: one irreducible nested set per local interval
        let mids = product_of_choices(&s, |g| top.local_ctx(&s, g).enumerate(true, Some(max_size)))?;
        for mid in mids {
            let t = top.compose(&s, &mid)?;
            // innermost level, indexed by (g, k) with k in mid[g]
            let mut slots: Vec<(usize, usize)> = Vec::new();
            for (&g, local) in &mid {
                for &k in local {
                    slots.push((g, k));
                }
            }
            let choices: Vec<Vec<Vec<usize>>> = slots
                .iter()
                .map(|&(g, k)| {
                    let gctx = top.local_ctx(&s, g);
                    gctx.local_ctx(&mid[&g], k).enumerate(true, Some(max_size))
                })
                .collect::<Result<_, _>>()?;
            for pick in cartesian(&choices) {
                // inner first: compose inside each local interval of s
                let mut inner = BTreeMap::new();
                for (&g, local) in &mid {
                    let gctx = top.local_ctx(&s, g);
                    let mut sub = BTreeMap::new();
                    for (i, &(g2, k)) in slots.iter().enumerate() {
                        if g2 == g {
                            sub.insert(k, pick[i].clone());
                        }
                    }
                    inner.insert(g, gctx.compose(local, &sub)?);
                }
                let a = top.compose(&s, &inner)?;
                // outer first: transport each innermost set to its local interval in t
                let mut moved = BTreeMap::new();
                for (i, &(g, k)) in slots.iter().enumerate() {
                    let base = top.tau(&s, g);
                    let c = top.comp(base, k)?;
                    let t_lo = top.tau(&t, c);
                    let lctx = top.local_ctx(&t, c);
                    let mut img = Vec::new();
                    for &y in &pick[i] {
                        let pre: Vec<usize> = l
                            .elements_between(t_lo, c)
                            .into_iter()
                            .filter(|&z| l.join(z, base) == y && lctx.contains(z))
                            .collect();
                        match pre.as_slice() {
                            [z] => img.push(*z),
                            _ => return Err(NestedError::NotInduced { base, k: y }),
                        }
                    }
                    img.sort_unstable();
                    moved.insert(c, img);
                }
                let b = top.compose(&t, &moved)?;
                out.push(AssocInstance { outer: s.clone(), inner_first: a, outer_first: b });
            }
        }
    }
    Ok(out)
}

fn product_of_choices<F>(s: &[usize], f: F) -> Result<Vec<BTreeMap<usize, Vec<usize>>>, NestedError>
where
    F: Fn(usize) -> Result<Vec<Vec<usize>>, NestedError>,
{
    let lists: Vec<Vec<Vec<usize>>> = s.iter().map(|&g| f(g)).collect::<Result<_, _>>()?;
    Ok(cartesian(&lists).into_iter().map(|pick| s.iter().copied().zip(pick).collect()).collect())
}

pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for a in &acc {
            for x in list {
                let mut v = a.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}
