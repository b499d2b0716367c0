//! Dependency models: explicit sets of independence statements.

use std::collections::btree_set;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::triplet::Triplet;
use crate::var::Universe;

/// A finite set of canonical triplets over a declared universe.
///
/// Membership is symmetric: a query is canonicalized before lookup, so
/// `I(X, Z, Y)` and `I(Y, Z, X)` are the same member. Iteration follows the
/// canonical bitmask order of [`Triplet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyModel {
    universe: Arc<Universe>,
    triplets: BTreeSet<Triplet>,
}

impl DependencyModel {
    pub fn new(universe: Arc<Universe>) -> Self {
        DependencyModel {
            universe,
            triplets: BTreeSet::new(),
        }
    }

    pub fn from_triplets<I>(universe: Arc<Universe>, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Triplet>,
    {
        let mut m = DependencyModel::new(universe);
        for t in triplets {
            m.insert(t)?;
        }
        Ok(m)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Adds `t` in canonical form; returns whether it was new.
    pub fn insert(&mut self, t: Triplet) -> Result<bool> {
        if !self.universe.contains_set(t.vars()) {
            return Err(Error::Query(
                "triplet mentions variables outside the universe".into(),
            ));
        }
        Ok(self.triplets.insert(t.canonical()))
    }

    pub(crate) fn insert_unchecked(&mut self, t: Triplet) -> bool {
        self.triplets.insert(t.canonical())
    }

    pub fn contains(&self, t: &Triplet) -> bool {
        self.triplets.contains(&t.canonical())
    }

    pub fn len(&self) -> usize {
        self.triplets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triplets.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Triplet> {
        self.triplets.iter()
    }

    pub fn is_subset(&self, other: &DependencyModel) -> bool {
        self.triplets.is_subset(&other.triplets)
    }

    /// Members of `self` missing from `other`, in canonical order.
    pub fn difference<'a>(&'a self, other: &'a DependencyModel) -> impl Iterator<Item = &'a Triplet> {
        self.triplets.difference(&other.triplets)
    }
}

impl<'a> IntoIterator for &'a DependencyModel {
    type Item = &'a Triplet;
    type IntoIter = btree_set::Iter<'a, Triplet>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::{VarId, VarSet};

    #[test]
    fn membership_is_symmetric() {
        let u = Arc::new(Universe::new(["a", "b", "c"]).unwrap());
        let a = VarSet::singleton(VarId::new(0));
        let b = VarSet::singleton(VarId::new(1));
        let c = VarSet::singleton(VarId::new(2));
        let t = Triplet::new(c, b, a).unwrap();
        let m = DependencyModel::from_triplets(u, [t]).unwrap();
        assert!(m.contains(&t));
        assert!(m.contains(&t.flip()));
        assert!(m.iter().all(Triplet::is_canonical));
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn insert_rejects_foreign_variables() {
        let u = Arc::new(Universe::new(["a", "b"]).unwrap());
        let mut m = DependencyModel::new(u);
        let t = Triplet::new(
            VarSet::singleton(VarId::new(0)),
            VarSet::EMPTY,
            VarSet::singleton(VarId::new(5)),
        )
        .unwrap();
        assert!(m.insert(t).is_err());
    }
}
