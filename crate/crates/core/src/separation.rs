//! Graphical separation criteria.
//!
//! * d-separation: `Z` d-separates `X` and `Y` when every adjacency path
//!   between them is inactive. A path is inactive when some interior
//!   head-to-head node is outside `Z` and has no descendant in `Z`, or some
//!   interior node that is not head-to-head is in `Z`.
//! * ID-separation: as d-separation, except that a non-head-to-head interior
//!   node also blocks when it is functionally determined by `Z` (see
//!   [`determination_closure`]).
//! * undirected separation: every path between `X` and `Y` passes through `Z`.
//!
//! [`dsep_naive`] enumerates simple paths and is the reference for the
//! reachability search behind [`dsep`] and [`idsep`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Dag, UndirectedGraph};
use crate::model::DependencyModel;
use crate::protocol::IndependenceOracle;
use crate::triplet::Triplet;
use crate::var::{Universe, VarId, VarSet};

/// Default limit for simple-path enumeration.
pub const DEFAULT_PATH_LIMIT: usize = 10;
/// Default limit for exhaustive triplet enumeration.
pub const DEFAULT_MODEL_LIMIT: usize = 7;

/// Queries share the triplet invariants: pairwise disjoint, `x` and `y`
/// nonempty.
pub type SeparationQuery = Triplet;

/// A simple path through a DAG, ignoring arc direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyPath {
    nodes: Vec<VarId>,
}

impl AdjacencyPath {
    pub fn new(g: &Dag, nodes: Vec<VarId>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Query("empty path".into()));
        }
        let mut seen = VarSet::EMPTY;
        for &v in &nodes {
            g.universe().check(v)?;
            if seen.contains(v) {
                return Err(Error::Query(format!(
                    "path repeats {}",
                    g.universe().name(v)
                )));
            }
            seen.insert(v);
        }
        for w in nodes.windows(2) {
            if !g.neighbors(w[0]).contains(w[1]) {
                return Err(Error::Query(format!(
                    "{} and {} are not adjacent",
                    g.universe().name(w[0]),
                    g.universe().name(w[1])
                )));
            }
        }
        Ok(AdjacencyPath { nodes })
    }

    pub fn nodes(&self) -> &[VarId] {
        &self.nodes
    }

    /// Interior nodes paired with whether they are head-to-head on this path.
    pub fn interior<'a>(&'a self, g: &'a Dag) -> impl Iterator<Item = (VarId, bool)> + 'a {
        self.nodes.windows(3).map(move |w| {
            let collider = g.has_edge(w[0], w[1]) && g.has_edge(w[2], w[1]);
            (w[1], collider)
        })
    }
}

/// Whether `p` is active given `z` under d-separation.
pub fn path_active(g: &Dag, p: &AdjacencyPath, z: VarSet) -> Result<bool> {
    path_active_with(g, p, z, z)
}

/// Whether `p` is active given `z` under ID-separation.
pub fn path_id_active(g: &Dag, p: &AdjacencyPath, z: VarSet) -> Result<bool> {
    path_active_with(g, p, z, determination_closure(g, z))
}

/// Head-to-head nodes test `z` (membership or a descendant in it); the other
/// interior nodes block when in `blocking`.
fn path_active_with(g: &Dag, p: &AdjacencyPath, z: VarSet, blocking: VarSet) -> Result<bool> {
    let first = p.nodes[0];
    let last = *p.nodes.last().unwrap();
    if z.contains(first) || z.contains(last) {
        return Err(Error::Query("path endpoint is in the conditioning set".into()));
    }
    for (w, collider) in p.interior(g) {
        let open = if collider {
            z.contains(w) || g.descendants(w)?.intersects(z)
        } else {
            !blocking.contains(w)
        };
        if !open {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_query(g_universe: &Universe, q: &SeparationQuery) -> Result<()> {
    if !g_universe.contains_set(q.vars()) {
        return Err(Error::Query("query mentions variables outside the universe".into()));
    }
    Ok(())
}

/// d-separation by enumerating every simple adjacency path from `x` to `y`.
pub fn dsep_naive(g: &Dag, q: &SeparationQuery) -> Result<bool> {
    dsep_naive_with_limit(g, q, DEFAULT_PATH_LIMIT)
}

pub fn dsep_naive_with_limit(g: &Dag, q: &SeparationQuery, limit: usize) -> Result<bool> {
    naive(g, q, limit, |p| path_active(g, p, q.z()))
}

/// ID-separation by simple-path enumeration.
pub fn idsep_naive(g: &Dag, q: &SeparationQuery) -> Result<bool> {
    let determined = determination_closure(g, q.z());
    naive(g, q, DEFAULT_PATH_LIMIT, |p| path_active_with(g, p, q.z(), determined))
}

fn naive(
    g: &Dag,
    q: &SeparationQuery,
    limit: usize,
    mut active: impl FnMut(&AdjacencyPath) -> Result<bool>,
) -> Result<bool> {
    check_query(g.universe(), q)?;
    if g.len() > limit {
        return Err(Error::LimitExceeded {
            what: "path enumeration",
            size: g.len(),
            limit,
        });
    }
    let mut found = false;
    for start in q.x() {
        let mut path = vec![start];
        walk_paths(g, &mut path, q.y(), &mut |nodes| {
            let p = AdjacencyPath {
                nodes: nodes.to_vec(),
            };
            found = active(&p)?;
            Ok(!found)
        })?;
        if found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth-first enumeration of simple paths that end at their first `targets`
/// node. `visit` returns `false` to stop.
///
/// Paths continuing past a target are skipped: their prefix ending at that
/// target has the same interior classification, so it is active whenever the
/// longer path is.
fn walk_paths(
    g: &Dag,
    path: &mut Vec<VarId>,
    targets: VarSet,
    visit: &mut dyn FnMut(&[VarId]) -> Result<bool>,
) -> Result<bool> {
    let cur = *path.last().unwrap();
    let on_path: VarSet = path.iter().copied().collect();
    for next in g.neighbors(cur) - on_path {
        path.push(next);
        let keep_going = if targets.contains(next) {
            visit(path)?
        } else {
            walk_paths(g, path, targets, visit)?
        };
        path.pop();
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is `X` d-separated from `Y` given `Z`?
///
/// Reachability over (node, direction-of-arrival) states; a trail may pass a
/// head-to-head node only if it is in `Z` or has a descendant in `Z`, and any
/// other node only if it is outside `Z`. Linear in the number of edges.
pub fn dsep(g: &Dag, q: &SeparationQuery) -> Result<bool> {
    check_query(g.universe(), q)?;
    Ok(!reachable(g, q, q.z()))
}

/// Is `X` ID-separated from `Y` given `Z`?
///
/// Non-head-to-head nodes block when they are in the determination closure of
/// `Z`; head-to-head nodes keep the plain d-separation condition.
pub fn idsep(g: &Dag, q: &SeparationQuery) -> Result<bool> {
    check_query(g.universe(), q)?;
    Ok(!reachable(g, q, determination_closure(g, q.z())))
}

/// True when some active trail joins `q.x` to `q.y`.
fn reachable(g: &Dag, q: &SeparationQuery, blocking: VarSet) -> bool {
    // nodes that are in z or have a descendant in z
    let opens_collider = g.ancestral_closure(q.z());
    // visited[0]: arrived along an edge pointing out of the node (from a child)
    // visited[1]: arrived along an edge pointing into the node (from a parent)
    let mut visited = [VarSet::EMPTY; 2];
    let mut stack: Vec<(VarId, usize)> = Vec::new();

    for x in q.x() {
        // endpoints are never tested, so leave through any edge
        for p in g.parents(x) {
            stack.push((p, 0));
        }
        for c in g.children(x) {
            stack.push((c, 1));
        }
    }
    while let Some((v, dir)) = stack.pop() {
        if visited[dir].contains(v) {
            continue;
        }
        visited[dir].insert(v);
        if q.y().contains(v) {
            return true;
        }
        if dir == 0 {
            // arrived from a child: v is a chain or fork node either way
            if !blocking.contains(v) {
                stack.extend(g.parents(v).iter().map(|p| (p, 0)));
                stack.extend(g.children(v).iter().map(|c| (c, 1)));
            }
        } else {
            // arrived from a parent: continuing to a child is a chain,
            // turning back to a parent makes v head-to-head
            if !blocking.contains(v) {
                stack.extend(g.children(v).iter().map(|c| (c, 1)));
            }
            if opens_collider.contains(v) {
                stack.extend(g.parents(v).iter().map(|p| (p, 0)));
            }
        }
    }
    false
}

/// Least `D ⊇ z` containing every deterministic node whose parents all lie in
/// `D`. Parentless deterministic nodes are constants and always included.
pub fn determination_closure(g: &Dag, z: VarSet) -> VarSet {
    let mut d = z;
    loop {
        let added: VarSet = (g.deterministic() - d)
            .iter()
            .filter(|&v| g.parents(v).is_subset(d))
            .collect();
        if added.is_empty() {
            return d;
        }
        d = d | added;
    }
}

/// Is `X` separated from `Y` by `Z` in the undirected graph?
pub fn usep(u: &UndirectedGraph, q: &SeparationQuery) -> Result<bool> {
    check_query(u.universe(), q)?;
    let mut seen = q.x();
    let mut frontier = q.x();
    while let Some(v) = frontier.first() {
        frontier.remove(v);
        let next = u.neighbors(v) - q.z() - seen;
        if next.intersects(q.y()) {
            return Ok(false);
        }
        seen = seen | next;
        frontier = frontier | next;
    }
    Ok(true)
}

/// Every canonical triplet over a universe of `n` variables, in canonical
/// order.
///
/// Walks all 4-way assignments of variables to x / z / y / neither and keeps
/// the valid canonical ones.
pub fn canonical_triplets(n: usize) -> Vec<Triplet> {
    assert!(n <= 16, "triplet enumeration over {n} variables");
    let mut out = Vec::new();
    let total = 1usize << (2 * n);
    for code in 0..total {
        let (mut x, mut z, mut y) = (VarSet::EMPTY, VarSet::EMPTY, VarSet::EMPTY);
        for i in 0..n {
            match (code >> (2 * i)) & 3 {
                1 => x.insert(VarId::new(i)),
                2 => z.insert(VarId::new(i)),
                3 => y.insert(VarId::new(i)),
                _ => {}
            }
        }
        if x.is_empty() || y.is_empty() || y < x {
            continue;
        }
        out.push(Triplet::new(x, z, y).expect("assignment is disjoint"));
    }
    out.sort();
    out
}

fn enumerate_model(
    universe: &Arc<Universe>,
    limit: usize,
    mut holds: impl FnMut(&Triplet) -> Result<bool>,
) -> Result<DependencyModel> {
    if universe.len() > limit {
        return Err(Error::LimitExceeded {
            what: "triplet enumeration",
            size: universe.len(),
            limit,
        });
    }
    let mut m = DependencyModel::new(universe.clone());
    for t in canonical_triplets(universe.len()) {
        if holds(&t)? {
            m.insert_unchecked(t);
        }
    }
    Ok(m)
}

/// All triplets d-separated in `g`.
pub fn dsep_model(g: &Dag) -> Result<DependencyModel> {
    dsep_model_with_limit(g, DEFAULT_MODEL_LIMIT)
}

pub fn dsep_model_with_limit(g: &Dag, limit: usize) -> Result<DependencyModel> {
    enumerate_model(g.universe(), limit, |t| dsep(g, t))
}

/// All triplets ID-separated in `g`.
pub fn idsep_model(g: &Dag) -> Result<DependencyModel> {
    enumerate_model(g.universe(), DEFAULT_MODEL_LIMIT, |t| idsep(g, t))
}

/// All triplets separated in `u`.
pub fn usep_model(u: &UndirectedGraph) -> Result<DependencyModel> {
    enumerate_model(u.universe(), DEFAULT_MODEL_LIMIT, |t| usep(u, t))
}

/// The undirected graph that omits `a – b` exactly when the oracle affirms
/// `I(a, U ∖ {a, b}, b)`. For a graphoid this is its unique edge-minimal
/// I-map.
pub fn undirected_minimal_imap<O: IndependenceOracle + ?Sized>(oracle: &O) -> Result<UndirectedGraph> {
    let universe = oracle.universe().clone();
    let all = universe.all();
    let mut g = UndirectedGraph::empty(universe.clone());
    for a in universe.ids() {
        for b in universe.ids().filter(|&b| b > a) {
            let rest = all.without(a).without(b);
            let t = Triplet::new(VarSet::singleton(a), rest, VarSet::singleton(b))?;
            if !oracle.affirms(&t)? {
                g.add_link(a, b);
            }
        }
    }
    Ok(g)
}

/// `Ok(())` when every triplet of `candidate` is affirmed by `m`; otherwise
/// the first violating triplet in canonical order.
pub fn is_imap<O: IndependenceOracle + ?Sized>(
    candidate: &DependencyModel,
    m: &O,
) -> Result<Result<(), Triplet>> {
    for t in candidate {
        if !m.affirms(t)? {
            return Ok(Err(*t));
        }
    }
    Ok(Ok(()))
}

/// d-separation in a fixed DAG as an [`IndependenceOracle`].
#[derive(Debug, Clone, Copy)]
pub struct DsepOracle<'a> {
    dag: &'a Dag,
}

impl<'a> DsepOracle<'a> {
    pub fn new(dag: &'a Dag) -> Self {
        DsepOracle { dag }
    }
}

impl IndependenceOracle for DsepOracle<'_> {
    fn universe(&self) -> &Arc<Universe> {
        self.dag.universe()
    }

    fn affirms(&self, t: &Triplet) -> Result<bool> {
        dsep(self.dag, t)
    }
}
