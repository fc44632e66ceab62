//! Building sets and their factors.

use crate::lattice::{GraphInput, Lattice, LatticeError};
use std::collections::HashSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildingError {
    #[error("the bottom element cannot belong to a building set")]
    ContainsBottom,
    #[error("element id {0} is out of range")]
    UnknownElement(usize),
    #[error("not a building set: the factor map fails at {witness_name} (id {witness})")]
    NotBuilding { witness: usize, witness_name: String },
    #[error("the bottom element has no factors")]
    BottomFactors,
    #[error("interval bounds must satisfy lower < upper, got {0} and {1}")]
    BadInterval(usize, usize),
    #[error("building set is not irreducible (top is missing)")]
    Reducible,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug)]
pub struct BuildingSet {
    lattice: Arc<Lattice>,
    members: Vec<usize>,
    is_member: Vec<bool>,
}

impl PartialEq for BuildingSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && *self.lattice == *other.lattice
    }
}

/// Outcome of the product-isomorphism test: `None` when it holds everywhere.
pub fn building_witness(l: &Lattice, members: &[usize]) -> Result<Option<usize>, BuildingError> {
    let mut is_member = vec![false; l.len()];
    for &m in members {
        if m >= l.len() {
            return Err(BuildingError::UnknownElement(m));
        }
        if m == 0 {
            return Err(BuildingError::ContainsBottom);
        }
        is_member[m] = true;
    }
    for x in 1..l.len() {
        let fact = max_members_below(l, &is_member, x);
        if !factor_map_is_iso(l, &fact, x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn max_members_below(l: &Lattice, is_member: &[bool], x: usize) -> Vec<usize> {
    let below: Vec<usize> = (1..l.len()).filter(|&g| is_member[g] && l.leq(g, x)).collect();
    below.iter().copied().filter(|&g| !below.iter().any(|&h| l.lt(g, h))).collect()
}

/// Is the join map from the product of the lower intervals of `fact` onto
/// [0, x] an isomorphism of posets?
fn factor_map_is_iso(l: &Lattice, fact: &[usize], x: usize) -> bool {
    if fact.is_empty() {
        return false;
    }
    let lowers: Vec<Vec<usize>> = fact.iter().map(|&f| l.elements_between(0, f)).collect();
    let target = l.elements_between(0, x);
    let size: usize = lowers.iter().map(Vec::len).product();
    if size != target.len() {
        return false;
    }
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for low in &lowers {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                low.iter().map(move |&z| {
                    let mut t2 = t.clone();
                    t2.push(z);
                    t2
                })
            })
            .collect();
    }
    let images: Vec<usize> = tuples.iter().map(|t| l.join_all(t.iter().copied())).collect();
    let distinct: HashSet<usize> = images.iter().copied().collect();
    if distinct.len() != images.len() || images.iter().any(|&z| !l.leq(z, x)) {
        return false;
    }
    // order reflection: componentwise order iff image order
    for (i, a) in tuples.iter().enumerate() {
        for (j, b) in tuples.iter().enumerate() {
            let prod_leq = a.iter().zip(b).all(|(&u, &v)| l.leq(u, v));
            if prod_leq != l.leq(images[i], images[j]) {
                return false;
            }
        }
    }
    true
}

/// No bipartition of the atoms below `g` splits its rank additively.
pub fn is_irreducible_element(l: &Lattice, g: usize) -> bool {
    if g == 0 {
        return false;
    }
    let sg = l.support(g);
    let rg = l.rank(g);
    // a rank-additive split is always by a flat and its complementary atoms
    !(1..l.len()).any(|f| {
        f != g && l.leq(f, g) && {
            let rest = l.closure(sg & !l.support(f));
            l.rank(f) + l.rank(rest) == rg
        }
    })
}

impl BuildingSet {
    /// Validating constructor.
    pub fn new(lattice: Arc<Lattice>, mut members: Vec<usize>) -> Result<BuildingSet, BuildingError> {
        members.sort_unstable();
        members.dedup();
        if let Some(w) = building_witness(&lattice, &members)? {
            return Err(BuildingError::NotBuilding { witness: w, witness_name: lattice.name(w).to_string() });
        }
        Ok(BuildingSet::trusted(lattice, members))
    }

    fn trusted(lattice: Arc<Lattice>, members: Vec<usize>) -> BuildingSet {
        let mut is_member = vec![false; lattice.len()];
        for &m in &members {
            is_member[m] = true;
        }
        BuildingSet { lattice, members, is_member }
    }

    pub fn minimal(lattice: Arc<Lattice>) -> BuildingSet {
        let members = (1..lattice.len()).filter(|&g| is_irreducible_element(&lattice, g)).collect();
        BuildingSet::trusted(lattice, members)
    }

    pub fn maximal(lattice: Arc<Lattice>) -> BuildingSet {
        let members = (1..lattice.len()).collect();
        BuildingSet::trusted(lattice, members)
    }

    /// Tubes of a graph, on the boolean lattice of its vertices.
    pub fn tubes(g: &GraphInput) -> Result<BuildingSet, BuildingError> {
        let lattice = Arc::new(Lattice::boolean_on(g.vertices.clone())?);
        let members = g.tubes()?.into_iter().map(|m| lattice.element_by_support(m).expect("subset")).collect();
        Ok(BuildingSet::trusted(lattice, members).sorted())
    }

    /// Members given as atom-label lists.
    pub fn from_labels(lattice: Arc<Lattice>, members: &[Vec<String>]) -> Result<BuildingSet, BuildingError> {
        let mut ids = Vec::new();
        for m in members {
            let mut mask = 0u64;
            for a in m {
                let i = lattice
                    .atom_labels()
                    .iter()
                    .position(|x| x == a)
                    .ok_or_else(|| LatticeError::NotALattice(format!("unknown atom {a:?}")))?;
                mask |= 1 << i;
            }
            let id = lattice
                .element_by_support(mask)
                .ok_or_else(|| LatticeError::NotALattice(format!("{m:?} is not a flat")))?;
            ids.push(id);
        }
        BuildingSet::new(lattice, ids)
    }

    fn sorted(mut self) -> Self {
        self.members.sort_unstable();
        self
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.is_member[x]
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn is_irreducible(&self) -> bool {
        self.is_member[self.top()]
    }

    pub fn require_irreducible(&self) -> Result<(), BuildingError> {
        if self.is_irreducible() {
            Ok(())
        } else {
            Err(BuildingError::Reducible)
        }
    }

    /// Maximal members below `x`.
    pub fn factors(&self, x: usize) -> Result<Vec<usize>, BuildingError> {
        if x == 0 {
            return Err(BuildingError::BottomFactors);
        }
        Ok(max_members_below(&self.lattice, &self.is_member, x))
    }

    /// Members of the induced building set on [g1, g2], as ids of self's lattice.
    pub fn induced_members(&self, g1: usize, g2: usize) -> Vec<usize> {
        let l = &self.lattice;
        let mut out: Vec<usize> = self
            .members
            .iter()
            .map(|&f| l.join(g1, f))
            .filter(|&k| k != g1 && l.leq(k, g2))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The induced building set on [g1, g2] over the interval lattice, with
    /// the embedding of interval ids into self's lattice.
    pub fn induced(&self, g1: usize, g2: usize) -> Result<(BuildingSet, Vec<usize>), BuildingError> {
        let l = &self.lattice;
        if !l.lt(g1, g2) {
            return Err(BuildingError::BadInterval(g1, g2));
        }
        let (sub, emb) = l.interval(g1, g2)?;
        let ind: HashSet<usize> = self.induced_members(g1, g2).into_iter().collect();
        let members: Vec<usize> = (0..sub.len()).filter(|&z| ind.contains(&emb[z])).collect();
        Ok((BuildingSet::trusted(Arc::new(sub), members), emb))
    }

    /// Lattice automorphisms that map the building set onto itself.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let l = &self.lattice;
        l.isomorphisms(l, None, |map| self.members.iter().all(|&g| self.is_member[map[g]]))
    }

    /// Isomorphisms of built lattices onto `other`.
    pub fn isomorphisms_to(&self, other: &BuildingSet, limit: Option<usize>) -> Vec<Vec<usize>> {
        if self.members.len() != other.members.len() {
            return Vec::new();
        }
        self.lattice
            .isomorphisms(&other.lattice, limit, |map| self.members.iter().all(|&g| other.is_member[map[g]]))
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(|&g| self.lattice.name(g).to_string()).collect()
    }
}
