use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};

/// Largest universe a [`VarSet`] can represent.
pub const MAX_VARS: usize = 64;

/// Dense index of a variable within its [`Universe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(u8);

impl VarId {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_VARS, "variable index {index} out of range");
        VarId(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of variables stored as a 64-bit mask. Bit `i` is `VarId(i)`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: VarId) -> Self {
        VarSet(1 << v.0)
    }

    /// The first `n` variables.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: VarId) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    pub fn insert(&mut self, v: VarId) {
        self.0 |= 1 << v.0;
    }

    pub fn remove(&mut self, v: VarId) {
        self.0 &= !(1 << v.0);
    }

    pub fn with(self, v: VarId) -> Self {
        VarSet(self.0 | 1 << v.0)
    }

    pub fn without(self, v: VarId) -> Self {
        VarSet(self.0 & !(1 << v.0))
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: VarSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Lowest-indexed member.
    pub fn first(self) -> Option<VarId> {
        (self.0 != 0).then(|| VarId(self.0.trailing_zeros() as u8))
    }

    /// Members in ascending index order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, the empty set and `self` included.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl BitOr for VarSet {
    type Output = VarSet;
    fn bitor(self, rhs: VarSet) -> VarSet {
        VarSet(self.0 | rhs.0)
    }
}

impl BitAnd for VarSet {
    type Output = VarSet;
    fn bitand(self, rhs: VarSet) -> VarSet {
        VarSet(self.0 & rhs.0)
    }
}

impl Sub for VarSet {
    type Output = VarSet;
    fn sub(self, rhs: VarSet) -> VarSet {
        VarSet(self.0 & !rhs.0)
    }
}

impl Not for VarSet {
    type Output = VarSet;
    fn not(self) -> VarSet {
        VarSet(!self.0)
    }
}

impl FromIterator<VarId> for VarSet {
    fn from_iter<I: IntoIterator<Item = VarId>>(iter: I) -> Self {
        iter.into_iter().fold(VarSet::EMPTY, VarSet::with)
    }
}

impl IntoIterator for VarSet {
    type Item = VarId;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = VarId;

    fn next(&mut self) -> Option<VarId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(VarId(i as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Enumerates submasks in increasing numeric order.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VarSet;

    fn next(&mut self) -> Option<VarSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask above `cur`
            Some((cur | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(VarSet(cur))
    }
}

/// The named variables a model or graph ranges over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    lookup: HashMap<String, VarId>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(Error::UniverseTooLarge(names.len()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            check_name(name)?;
            if lookup.insert(name.clone(), VarId(i as u8)).is_some() {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Universe { names, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn all(&self) -> VarSet {
        VarSet::full(self.len())
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.len()).map(VarId::new)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.index()]
    }

    pub fn id(&self, name: &str) -> Result<VarId> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn check(&self, v: VarId) -> Result<VarId> {
        if v.index() < self.len() {
            Ok(v)
        } else {
            Err(Error::UnknownIndex(v.index()))
        }
    }

    pub fn contains_set(&self, s: VarSet) -> bool {
        s.is_subset(self.all())
    }

    /// Comma-separated member names, or `-` for the empty set.
    pub fn format_set(&self, s: VarSet) -> String {
        if s.is_empty() {
            return "-".to_string();
        }
        s.iter().map(|v| self.name(v)).collect::<Vec<_>>().join(",")
    }
}

fn check_name(name: &str) -> Result<()> {
    let reason = if name.is_empty() {
        "empty"
    } else if name.chars().any(char::is_whitespace) {
        "contains whitespace"
    } else if name.contains([',', '|', '#']) {
        "contains a reserved character"
    } else if name == "-" {
        "reserved for the empty set"
    } else {
        return Ok(());
    };
    Err(Error::InvalidName {
        name: name.to_string(),
        reason,
    })
}
