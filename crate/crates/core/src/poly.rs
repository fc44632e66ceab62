//! Commutative monomials and polynomials over exact rationals, with
//! variables indexed by lattice element ids.

use crate::linalg::Q;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Sorted (variable, exponent) pairs, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(Vec<(usize, u32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn var(g: usize) -> Mono {
        Mono(vec![(g, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(it: I) -> Mono {
        let mut m: BTreeMap<usize, u32> = BTreeMap::new();
        for (g, e) in it {
            if e > 0 {
                *m.entry(g).or_default() += e;
            }
        }
        Mono(m.into_iter().collect())
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().map(|&(g, _)| g).collect()
    }

    pub fn exponent(&self, g: usize) -> u32 {
        self.0.iter().find(|&&(h, _)| h == g).map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Mono(out)
    }

    /// Does self divide other?
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().all(|&(g, e)| other.exponent(g) >= e)
    }

    pub fn render(&self, var: &str, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, e)| if e == 1 { format!("{var}_{}", names[g]) } else { format!("{var}_{}^{e}", names[g]) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<Mono, Q>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(BTreeMap::new())
    }

    pub fn one() -> Poly {
        Poly::mono(Mono::one(), Q::one())
    }

    pub fn var(g: usize) -> Poly {
        Poly::mono(Mono::var(g), Q::one())
    }

    pub fn mono(m: Mono, c: Q) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Q)>>(it: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.0.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(m, c)| (m.clone(), c * k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Substitute every variable g by `f(g)`.
    pub fn substitute<F: Fn(usize) -> Poly>(&self, f: F) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            let mut t = Poly::mono(Mono::one(), c.clone());
            for &(g, e) in m.pairs() {
                t = t.mul(&f(g).pow(e));
            }
            out = out.add(&t);
        }
        out
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.keys().flat_map(|m| m.support()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.0.keys().all(|m| m.degree() == d)
    }

    pub fn render(&self, var: &str, names: &[String]) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(m, c)| if c.is_one() { m.render(var, names) } else { format!("{c}*{}", m.render(var, names)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(g, e)| format!("{g}^{e}")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn cancellation_removes_terms() {
        let x = Poly::var(1);
        let y = Poly::var(2);
        let p = x.add(&y).mul(&x.sub(&y));
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expect);
        assert_eq!(p.sub(&expect).len(), 0);
        assert_eq!(Poly::mono(Mono::var(3), q(2)).scale(&q(0)), Poly::zero());
    }
}
