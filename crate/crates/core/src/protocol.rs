//! Stratified protocols (causal input lists).
//!
//! A protocol fixes a total order on the variables and, for each variable
//! `v`, a tail boundary `B(v)` drawn from its predecessors such that `v` is
//! independent of the remaining predecessors given `B(v)`. Taking boundaries
//! as parent sets yields a DAG; d-separation in that DAG reads off exactly
//! the semi-graphoid consequences of the protocol's statements.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Dag;
use crate::model::DependencyModel;
use crate::separation::dsep;
use crate::triplet::Triplet;
use crate::var::{Universe, VarId, VarSet};

/// Uniform membership access to some dependency model.
///
/// Implementations must answer identically for a triplet and its flip, and
/// repeated queries must agree.
pub trait IndependenceOracle {
    fn universe(&self) -> &Arc<Universe>;
    fn affirms(&self, t: &Triplet) -> Result<bool>;
}

impl IndependenceOracle for DependencyModel {
    fn universe(&self) -> &Arc<Universe> {
        DependencyModel::universe(self)
    }

    fn affirms(&self, t: &Triplet) -> Result<bool> {
        Ok(self.contains(t))
    }
}

impl<O: IndependenceOracle + ?Sized> IndependenceOracle for &O {
    fn universe(&self) -> &Arc<Universe> {
        (**self).universe()
    }

    fn affirms(&self, t: &Triplet) -> Result<bool> {
        (**self).affirms(t)
    }
}

/// A defect reported by [`StratifiedProtocol::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Duplicate(String),
    Missing(String),
    NotPreceding { member: String, var: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Duplicate(v) => write!(f, "duplicate {v}"),
            Violation::Missing(v) => write!(f, "missing {v}"),
            Violation::NotPreceding { member, var } => write!(f, "{member} does not precede {var}"),
        }
    }
}

/// An ordering of the universe plus a tail boundary per variable.
///
/// Construction does not validate; call [`validate`](Self::validate) or let
/// [`compile`](Self::compile) reject defects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedProtocol {
    universe: Arc<Universe>,
    order: Vec<VarId>,
    /// indexed by `VarId`
    boundary: Vec<VarSet>,
}

impl StratifiedProtocol {
    pub fn new(universe: Arc<Universe>, order: Vec<VarId>, boundary: Vec<VarSet>) -> Result<Self> {
        if boundary.len() != universe.len() {
            return Err(Error::Query(format!(
                "expected {} boundaries, got {}",
                universe.len(),
                boundary.len()
            )));
        }
        for &v in &order {
            universe.check(v)?;
        }
        if let Some(b) = boundary.iter().find(|b| !universe.contains_set(**b)) {
            return Err(Error::Query(format!("boundary {b:?} outside the universe")));
        }
        Ok(StratifiedProtocol {
            universe,
            order,
            boundary,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn order(&self) -> &[VarId] {
        &self.order
    }

    pub fn boundary(&self, v: VarId) -> VarSet {
        self.boundary[v.index()]
    }

    /// Every order defect and every boundary member that does not precede
    /// its variable. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let u = &self.universe;
        let mut out = Vec::new();
        let mut seen = VarSet::EMPTY;
        for &v in &self.order {
            if seen.contains(v) {
                out.push(Violation::Duplicate(u.name(v).to_string()));
            }
            seen.insert(v);
        }
        for v in u.all() - seen {
            out.push(Violation::Missing(u.name(v).to_string()));
        }
        let mut before = VarSet::EMPTY;
        let mut checked = VarSet::EMPTY;
        for &v in &self.order {
            if !checked.contains(v) {
                for m in self.boundary(v) - before {
                    out.push(Violation::NotPreceding {
                        member: u.name(m).to_string(),
                        var: u.name(v).to_string(),
                    });
                }
                checked.insert(v);
            }
            before.insert(v);
        }
        out
    }

    fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidProtocol(violations))
        }
    }

    /// The DAG whose parent sets are the tail boundaries.
    pub fn compile(&self) -> Result<Dag> {
        self.ensure_valid()?;
        Dag::new(self.universe.clone(), self.boundary.clone(), VarSet::EMPTY)
    }

    /// `I(v, B(v), R(v))` for each variable in order, `R(v)` being the
    /// predecessors outside the boundary. Variables with empty `R(v)` are
    /// skipped.
    pub fn triplets(&self) -> Result<Vec<Triplet>> {
        self.ensure_valid()?;
        let mut before = VarSet::EMPTY;
        let mut out = Vec::new();
        for &v in &self.order {
            let b = self.boundary(v);
            let rest = before - b;
            if !rest.is_empty() {
                out.push(Triplet::new(VarSet::singleton(v), b, rest)?);
            }
            before.insert(v);
        }
        Ok(out)
    }

    /// The protocol's statements as a model.
    pub fn model(&self) -> Result<DependencyModel> {
        DependencyModel::from_triplets(self.universe.clone(), self.triplets()?)
    }

    /// The protocol that generates `g`: topological order, parents as
    /// boundaries.
    pub fn extract(g: &Dag) -> StratifiedProtocol {
        StratifiedProtocol {
            universe: g.universe().clone(),
            order: g.topological_order(),
            boundary: g.parent_sets().to_vec(),
        }
    }

    /// Boundaries minimized against `oracle` along a given order.
    pub fn minimal_for_order<O: IndependenceOracle + ?Sized>(oracle: &O, order: Vec<VarId>) -> Result<Self> {
        let universe = oracle.universe().clone();
        let mut boundary = vec![VarSet::EMPTY; universe.len()];
        let mut before = VarSet::EMPTY;
        for &v in &order {
            boundary[v.index()] = minimal_boundary(oracle, before, v)?;
            before.insert(v);
        }
        let p = StratifiedProtocol::new(universe, order, boundary)?;
        p.ensure_valid()?;
        Ok(p)
    }
}

/// Compiles a valid protocol into its DAG.
pub fn compile(p: &StratifiedProtocol) -> Result<Dag> {
    p.compile()
}

pub fn extract(g: &Dag) -> StratifiedProtocol {
    StratifiedProtocol::extract(g)
}

pub fn protocol_triplets(p: &StratifiedProtocol) -> Result<Vec<Triplet>> {
    p.triplets()
}

/// An inclusion-minimal tail boundary for `v` among `predecessors`.
///
/// Starts from the full predecessor set, which is trivially a boundary, and
/// greedily drops members in ascending index order, rescanning after every
/// successful removal.
pub fn minimal_boundary<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    predecessors: VarSet,
    v: VarId,
) -> Result<VarSet> {
    shrink_boundary(oracle, predecessors, predecessors, v)
}

/// Greedy deletion starting from `start ⊆ predecessors`, which the caller
/// guarantees is already a boundary.
fn shrink_boundary<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    predecessors: VarSet,
    start: VarSet,
    v: VarId,
) -> Result<VarSet> {
    debug_assert!(start.is_subset(predecessors) && !predecessors.contains(v));
    let mut b = start;
    'rescan: loop {
        for u in b {
            let smaller = b.without(u);
            let t = Triplet::new(VarSet::singleton(v), smaller, predecessors - smaller)?;
            if oracle.affirms(&t)? {
                b = smaller;
                continue 'rescan;
            }
        }
        return Ok(b);
    }
}

/// A protocol whose DAG d-separates `t`, for any `t` the oracle affirms.
///
/// The order puts `Y ∪ Z` first, then the members `x_1 < … < x_k` of `X`,
/// then everything else, each group ascending by index. Since
/// `I(x_i, x_1…x_{i-1} Z, Y)` follows from `t` by weak union, the boundary of
/// `x_i` is minimized starting from `x_1…x_{i-1} Z`; the resulting protocol
/// statement still implies it, and contraction over `i` recovers `t`. Other
/// variables get plain minimal boundaries. The result is re-checked with
/// d-separation before it is returned.
pub fn witness_protocol<O: IndependenceOracle + ?Sized>(oracle: &O, t: &Triplet) -> Result<StratifiedProtocol> {
    let universe = oracle.universe().clone();
    if !universe.contains_set(t.vars()) {
        return Err(Error::Query("triplet mentions variables outside the universe".into()));
    }
    if !oracle.affirms(t)? {
        return Err(Error::NotAffirmed(format!(
            "refusing to build a witness: the model does not contain {}",
            t.display(&universe)
        )));
    }
    let head = t.y() | t.z();
    let tail = universe.all() - head - t.x();
    let order: Vec<VarId> = head.iter().chain(t.x()).chain(tail).collect();

    let mut boundary = vec![VarSet::EMPTY; universe.len()];
    let mut before = VarSet::EMPTY;
    let mut earlier_x = VarSet::EMPTY;
    for &v in &order {
        boundary[v.index()] = if t.x().contains(v) {
            let b = shrink_boundary(oracle, before, earlier_x | t.z(), v)?;
            earlier_x.insert(v);
            b
        } else {
            minimal_boundary(oracle, before, v)?
        };
        before.insert(v);
    }
    let p = StratifiedProtocol::new(universe.clone(), order, boundary)?;
    if !dsep(&p.compile()?, t)? {
        return Err(Error::WitnessFailed(t.display(&universe)));
    }
    Ok(p)
}
