use crate::error::{Error, Result};
use crate::var::{Universe, VarSet};

/// An independence statement `I(X, Z, Y)`: knowing `Z` renders `X` and `Y`
/// independent.
///
/// `x`, `z` and `y` are pairwise disjoint and `x`, `y` are nonempty; `z` may
/// be empty. Field order gives the derived `Ord` its meaning: triplets sort
/// by the bitmask of `x`, then `z`, then `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triplet {
    x: VarSet,
    z: VarSet,
    y: VarSet,
}

impl Triplet {
    pub fn new(x: VarSet, z: VarSet, y: VarSet) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::InvalidTriplet("x is empty"));
        }
        if y.is_empty() {
            return Err(Error::InvalidTriplet("y is empty"));
        }
        if x.intersects(z) {
            return Err(Error::InvalidTriplet("x and z overlap"));
        }
        if z.intersects(y) {
            return Err(Error::InvalidTriplet("z and y overlap"));
        }
        if x.intersects(y) {
            return Err(Error::InvalidTriplet("x and y overlap"));
        }
        Ok(Triplet { x, z, y })
    }

    /// Builds the canonical triplet when the parts are valid, `None` otherwise.
    /// Used on hot paths where invalid candidates are simply skipped.
    pub(crate) fn try_canonical(x: VarSet, z: VarSet, y: VarSet) -> Option<Self> {
        if x.is_empty() || y.is_empty() || x.intersects(z) || z.intersects(y) || x.intersects(y) {
            return None;
        }
        Some(Triplet { x, z, y }.canonical())
    }

    pub fn x(&self) -> VarSet {
        self.x
    }

    pub fn z(&self) -> VarSet {
        self.z
    }

    pub fn y(&self) -> VarSet {
        self.y
    }

    /// All variables mentioned by the triplet.
    pub fn vars(&self) -> VarSet {
        self.x | self.z | self.y
    }

    /// The symmetric statement `I(Y, Z, X)`.
    pub fn flip(self) -> Self {
        Triplet {
            x: self.y,
            z: self.z,
            y: self.x,
        }
    }

    /// Normal form: the entry with the smaller bitmask comes first.
    pub fn canonical(self) -> Self {
        if self.y < self.x {
            self.flip()
        } else {
            self
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.x < self.y
    }

    /// Both orientations, the stored one first.
    pub(crate) fn orientations(self) -> [Triplet; 2] {
        [self, self.flip()]
    }

    /// `x | z | y` using variable names, `-` for an empty `z`.
    pub fn display(&self, universe: &Universe) -> String {
        format!(
            "{} | {} | {}",
            universe.format_set(self.x),
            universe.format_set(self.z),
            universe.format_set(self.y)
        )
    }
}

/// Symmetry normal form of `t`.
pub fn canonical(t: Triplet) -> Triplet {
    t.canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::VarId;

    fn set(ids: &[usize]) -> VarSet {
        ids.iter().map(|&i| VarId::new(i)).collect()
    }

    // a=0, b=1, z=2
    #[test]
    fn canonical_puts_smaller_mask_first() {
        let t = Triplet::new(set(&[1]), set(&[2]), set(&[0])).unwrap();
        let c = canonical(t);
        assert_eq!((c.x(), c.z(), c.y()), (set(&[0]), set(&[2]), set(&[1])));
        assert_eq!(canonical(c), c);
    }

    #[test]
    fn canonical_is_identity_on_canonical_input() {
        let t = Triplet::new(set(&[0]), VarSet::EMPTY, set(&[1])).unwrap();
        assert_eq!(canonical(t), t);
        assert!(t.is_canonical());
    }

    #[test]
    fn validation_names_the_offending_field() {
        assert_eq!(
            Triplet::new(set(&[0]), set(&[0]), set(&[1])),
            Err(Error::InvalidTriplet("x and z overlap"))
        );
        assert_eq!(
            Triplet::new(VarSet::EMPTY, set(&[0]), set(&[1])),
            Err(Error::InvalidTriplet("x is empty"))
        );
        assert_eq!(
            Triplet::new(set(&[0]), set(&[1]), VarSet::EMPTY),
            Err(Error::InvalidTriplet("y is empty"))
        );
        assert_eq!(
            Triplet::new(set(&[0]), set(&[1]), set(&[1, 2])),
            Err(Error::InvalidTriplet("z and y overlap"))
        );
        assert_eq!(
            Triplet::new(set(&[0, 1]), VarSet::EMPTY, set(&[1])),
            Err(Error::InvalidTriplet("x and y overlap"))
        );
    }
}
