//! Named built lattices and the default test catalog.

use crate::building::{BuildingError, BuildingSet};
use crate::lattice::{FlatsInput, GraphInput, Lattice, LatticeError};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LatticeSource {
    Boolean { n: usize },
    Partition { n: usize },
    Graphic { graph: GraphInput },
    Flats { flats: FlatsInput },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum BuildingChoice {
    Minimal,
    Maximal,
    /// Tubes of a graph; the lattice must be boolean on its vertices.
    Tubes { graph: GraphInput },
    /// Members as lists of atom labels.
    Explicit { members: Vec<Vec<String>> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub lattice: LatticeSource,
    pub building: BuildingChoice,
    /// Atom indices from smallest to largest; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom_order: Option<Vec<usize>>,
}

impl LatticeSource {
    /// Parse `boolean:3`, `partition:4`, `path:4`, `cycle:4`, `complete:4`.
    pub fn parse_family(s: &str) -> Result<LatticeSource, LatticeError> {
        let (kind, n) = s
            .split_once(':')
            .ok_or_else(|| LatticeError::OutOfRange(format!("family {s:?} is not of the form kind:n")))?;
        let n: usize = n.parse().map_err(|_| LatticeError::OutOfRange(format!("bad family size in {s:?}")))?;
        Ok(match kind {
            "boolean" => LatticeSource::Boolean { n },
            "partition" => LatticeSource::Partition { n },
            "path" => LatticeSource::Graphic { graph: GraphInput::path(n) },
            "cycle" => LatticeSource::Graphic { graph: GraphInput::cycle(n) },
            "complete" => LatticeSource::Graphic { graph: GraphInput::complete(n) },
            _ => return Err(LatticeError::OutOfRange(format!("unknown family {kind:?}"))),
        })
    }

    pub fn build(&self) -> Result<Lattice, LatticeError> {
        match self {
            LatticeSource::Boolean { n } => Lattice::boolean(*n),
            LatticeSource::Partition { n } => Lattice::partition(*n),
            LatticeSource::Graphic { graph } => Lattice::graphic(graph),
            LatticeSource::Flats { flats } => Lattice::from_flats_json(flats),
        }
    }
}

impl CatalogEntry {
    pub fn new(name: &str, lattice: LatticeSource, building: BuildingChoice) -> CatalogEntry {
        CatalogEntry { name: name.into(), lattice, building, atom_order: None }
    }

    pub fn resolve(&self) -> Result<BuildingSet, BuildingError> {
        match &self.building {
            BuildingChoice::Tubes { graph } => BuildingSet::tubes(graph),
            other => {
                let l = Arc::new(self.lattice.build()?);
                match other {
                    BuildingChoice::Minimal => Ok(BuildingSet::minimal(l)),
                    BuildingChoice::Maximal => Ok(BuildingSet::maximal(l)),
                    BuildingChoice::Explicit { members } => BuildingSet::from_labels(l, members),
                    BuildingChoice::Tubes { .. } => unreachable!(),
                }
            }
        }
    }

    /// The atom order, validated against the number of atoms.
    pub fn order(&self, num_atoms: usize) -> Result<Vec<usize>, LatticeError> {
        match &self.atom_order {
            None => Ok((0..num_atoms).collect()),
            Some(o) => validate_order(o, num_atoms),
        }
    }
}

pub fn validate_order(o: &[usize], num_atoms: usize) -> Result<Vec<usize>, LatticeError> {
    let mut seen = vec![false; num_atoms];
    if o.len() != num_atoms {
        return Err(LatticeError::OutOfRange(format!("atom order has {} entries, expected {num_atoms}", o.len())));
    }
    for &i in o {
        if i >= num_atoms || std::mem::replace(&mut seen[i], true) {
            return Err(LatticeError::OutOfRange(format!("atom order {o:?} is not a permutation")));
        }
    }
    Ok(o.to_vec())
}

/// Boolean and partition lattices up to rank 4 with both extreme building
/// sets, the 4-cycle and a path as graphic lattices, and graph tubes on
/// paths and cycles with at most five vertices.
pub fn default_catalog() -> Vec<CatalogEntry> {
    use BuildingChoice::*;
    let mut out = Vec::new();
    for n in 2..=4 {
        out.push(CatalogEntry::new(&format!("B{n}-min"), LatticeSource::Boolean { n }, Minimal));
        out.push(CatalogEntry::new(&format!("B{n}-max"), LatticeSource::Boolean { n }, Maximal));
    }
    for n in 3..=4 {
        out.push(CatalogEntry::new(&format!("P{n}-min"), LatticeSource::Partition { n }, Minimal));
        out.push(CatalogEntry::new(&format!("P{n}-max"), LatticeSource::Partition { n }, Maximal));
    }
    let c4 = LatticeSource::Graphic { graph: GraphInput::cycle(4) };
    out.push(CatalogEntry::new("C4-min", c4.clone(), Minimal));
    out.push(CatalogEntry::new("C4-max", c4, Maximal));
    out.push(CatalogEntry::new("path4-max", LatticeSource::Graphic { graph: GraphInput::path(4) }, Maximal));
    for n in 2..=5 {
        let g = GraphInput::path(n);
        out.push(CatalogEntry::new(&format!("tubes-path{n}"), LatticeSource::Boolean { n }, Tubes { graph: g }));
    }
    for n in 3..=5 {
        let g = GraphInput::cycle(n);
        out.push(CatalogEntry::new(&format!("tubes-cycle{n}"), LatticeSource::Boolean { n }, Tubes { graph: g }));
    }
    out
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    default_catalog().into_iter().find(|e| e.name == name)
}
