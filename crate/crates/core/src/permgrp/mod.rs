//! Permutation groups small enough to store element by element, and the
//! bundled catalog of minimal 3-generated 6-transposition groups.

mod group;
mod perm;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use group::{CosetAction, Elem, Group, Subgroup};
pub use perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("image list is not a permutation")]
    NotAPermutation,
    #[error("malformed cycle notation {0:?}")]
    BadCycles(String),
    #[error("generators act on different degrees")]
    DegreeMismatch,
    #[error("group exceeds the explicit-enumeration limit")]
    TooLarge,
    #[error("lower subgroup is not contained in the upper one")]
    NotContained,
    #[error("marked generator {0} is neither an involution nor the identity")]
    BadGenerator(usize),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("catalog data: {0}")]
    Data(String),
}

/// A group `G = <x, y, z>` with its three marked generators and the
/// normal set `D = x^G u y^G u z^G` of involutions.
#[derive(Clone, Debug)]
pub struct MarkedGroup {
    pub name: String,
    pub group: Group,
    pub gens: [Elem; 3],
    /// Sorted; never contains the identity.
    pub d_set: Vec<Elem>,
}

impl MarkedGroup {
    pub fn new(name: &str, degree: usize, gens: [Perm; 3]) -> Result<MarkedGroup, GroupError> {
        let group = Group::generate(degree, &gens)?;
        let idx: Vec<Elem> = gens.iter().map(|p| group.find(p).expect("generator")).collect();
        let gens = [idx[0], idx[1], idx[2]];
        for (k, &g) in gens.iter().enumerate() {
            if g != group.identity() && !group.is_involution(g) {
                return Err(GroupError::BadGenerator(k));
            }
        }
        let mut d: BTreeSet<Elem> = BTreeSet::new();
        for &g in &gens {
            if g != group.identity() {
                d.extend(group.conj_class(g));
            }
        }
        Ok(MarkedGroup { name: name.to_string(), group, gens, d_set: d.into_iter().collect() })
    }

    pub fn from_cycles(name: &str, degree: usize, gens: &[String]) -> Result<Self, GroupError> {
        if gens.len() != 3 {
            return Err(GroupError::Data(format!("{name}: expected three generators")));
        }
        let p: Vec<Perm> = gens.iter().map(|s| Perm::parse_cycles(s, degree)).collect::<Result<_, _>>()?;
        MarkedGroup::new(name, degree, [p[0].clone(), p[1].clone(), p[2].clone()])
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn is_six_transposition(&self) -> bool {
        self.group.is_six_transposition(&self.d_set)
    }

    pub fn in_d(&self, e: Elem) -> bool {
        self.d_set.binary_search(&e).is_ok()
    }

    pub fn orbit(&self, point: usize) -> BTreeSet<usize> {
        self.group.orbit(point)
    }

    pub fn stabilizer(&self, point: usize) -> Subgroup {
        self.group.stabilizer(point)
    }

    pub fn centralizer(&self, e: &Perm) -> Result<Subgroup, GroupError> {
        let e = self.group.find(e).ok_or(GroupError::NotInGroup)?;
        Ok(self.group.centralizer(e))
    }

    pub fn conj_class(&self, e: &Perm) -> Result<BTreeSet<Elem>, GroupError> {
        let e = self.group.find(e).ok_or(GroupError::NotInGroup)?;
        Ok(self.group.conj_class(e))
    }
}

/// One catalog row family as stored in the bundled JSON file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub gens: Vec<String>,
    pub axes_patterns: Vec<String>,
}

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

/// Generator triples are a reconstruction: only the isomorphism type of each
/// group is fixed by the source tables, so representations were chosen here
/// and are validated by order, generator and 6-transposition checks.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    serde_json::from_str(CATALOG_JSON).expect("bundled catalog parses")
}

pub fn catalog() -> Result<Vec<(MarkedGroup, Vec<String>)>, GroupError> {
    catalog_entries()
        .into_iter()
        .map(|e| Ok((MarkedGroup::from_cycles(&e.name, e.degree, &e.gens)?, e.axes_patterns)))
        .collect()
}

/// All catalog families of the named group.
pub fn catalog_group(name: &str) -> Result<Vec<(MarkedGroup, Vec<String>)>, GroupError> {
    let all: Vec<_> = catalog()?.into_iter().filter(|(g, _)| g.name == name).collect();
    if all.is_empty() {
        return Err(GroupError::UnknownGroup(name.to_string()));
    }
    Ok(all)
}

pub fn catalog_group_names() -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for e in catalog_entries() {
        if !names.contains(&e.name) {
            names.push(e.name);
        }
    }
    names
}
