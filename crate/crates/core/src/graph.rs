//! Directed acyclic graphs (with optional deterministic nodes) and undirected
//! graphs over a [`Universe`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::var::{Universe, VarId, VarSet};

/// A DAG stored as parent and child masks per node.
///
/// Acyclicity is checked at construction; every `Dag` value admits a
/// topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    universe: Arc<Universe>,
    parents: Vec<VarSet>,
    children: Vec<VarSet>,
    deterministic: VarSet,
}

impl Dag {
    /// `parents[v]` is the parent set of `VarId(v)`.
    pub fn new(universe: Arc<Universe>, parents: Vec<VarSet>, deterministic: VarSet) -> Result<Self> {
        let n = universe.len();
        if parents.len() != n {
            return Err(Error::Query(format!(
                "expected {n} parent sets, got {}",
                parents.len()
            )));
        }
        if !universe.contains_set(deterministic) {
            return Err(Error::Query("deterministic nodes outside the universe".into()));
        }
        let mut children = vec![VarSet::EMPTY; n];
        for (c, &ps) in parents.iter().enumerate() {
            if !universe.contains_set(ps) {
                return Err(Error::InvalidEdge(
                    universe.names()[c].clone(),
                    "parent outside the universe",
                ));
            }
            if ps.contains(VarId::new(c)) {
                let name = universe.names()[c].clone();
                return Err(Error::Cycle(vec![name.clone(), name]));
            }
            for p in ps {
                children[p.index()].insert(VarId::new(c));
            }
        }
        topological_sort(&universe, &parents)?;
        Ok(Dag {
            universe,
            parents,
            children,
            deterministic,
        })
    }

    pub fn from_edges(
        universe: Arc<Universe>,
        edges: &[(VarId, VarId)],
        deterministic: VarSet,
    ) -> Result<Self> {
        let mut parents = vec![VarSet::EMPTY; universe.len()];
        for &(p, c) in edges {
            universe.check(p)?;
            universe.check(c)?;
            parents[c.index()].insert(p);
        }
        Dag::new(universe, parents, deterministic)
    }

    /// Same structure, no deterministic nodes.
    pub fn without_determinism(&self) -> Dag {
        Dag {
            deterministic: VarSet::EMPTY,
            ..self.clone()
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn parents(&self, v: VarId) -> VarSet {
        self.parents[v.index()]
    }

    pub fn children(&self, v: VarId) -> VarSet {
        self.children[v.index()]
    }

    pub fn neighbors(&self, v: VarId) -> VarSet {
        self.parents[v.index()] | self.children[v.index()]
    }

    pub fn parent_sets(&self) -> &[VarSet] {
        &self.parents
    }

    pub fn deterministic(&self) -> VarSet {
        self.deterministic
    }

    pub fn has_edge(&self, from: VarId, to: VarId) -> bool {
        self.parents[to.index()].contains(from)
    }

    /// All edges `(parent, child)`, sorted by parent then child index.
    pub fn edges(&self) -> Vec<(VarId, VarId)> {
        let mut out = Vec::new();
        for (p, &cs) in self.children.iter().enumerate() {
            for c in cs {
                out.push((VarId::new(p), c));
            }
        }
        out
    }

    /// Nodes reachable from `v` by a directed path of length at least one.
    pub fn descendants(&self, v: VarId) -> Result<VarSet> {
        self.universe.check(v)?;
        Ok(self.reach(self.children[v.index()], &self.children))
    }

    /// Nodes with a directed path to `v`, `v` excluded.
    pub fn ancestors(&self, v: VarId) -> Result<VarSet> {
        self.universe.check(v)?;
        Ok(self.reach(self.parents[v.index()], &self.parents))
    }

    /// `seeds` together with all their ancestors.
    pub fn ancestral_closure(&self, seeds: VarSet) -> VarSet {
        seeds | self.reach(seeds, &self.parents)
    }

    fn reach(&self, start: VarSet, step: &[VarSet]) -> VarSet {
        let mut seen = VarSet::EMPTY;
        let mut frontier = start;
        while let Some(u) = frontier.first() {
            frontier.remove(u);
            if seen.contains(u) {
                continue;
            }
            seen.insert(u);
            frontier = frontier | (step[u.index()] - seen);
        }
        seen
    }

    /// Kahn's algorithm, ties broken by ascending index.
    pub fn topological_order(&self) -> Vec<VarId> {
        topological_sort(&self.universe, &self.parents).expect("Dag is acyclic by construction")
    }
}

/// Topological order of the graph given by `parents`, or a [`Error::Cycle`]
/// naming the nodes of one directed cycle.
pub fn topological_sort(universe: &Universe, parents: &[VarSet]) -> Result<Vec<VarId>> {
    let n = parents.len();
    let mut placed = VarSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let ready = (0..n)
            .map(VarId::new)
            .find(|&v| !placed.contains(v) && parents[v.index()].is_subset(placed));
        match ready {
            Some(v) => {
                placed.insert(v);
                order.push(v);
            }
            None => return Err(Error::Cycle(cycle_witness(universe, parents, placed))),
        }
    }
    Ok(order)
}

/// Every unplaced node has an unplaced parent, so walking parents inside the
/// unplaced set must revisit a node.
fn cycle_witness(universe: &Universe, parents: &[VarSet], placed: VarSet) -> Vec<String> {
    let remaining = VarSet::full(parents.len()) - placed;
    let mut walk = vec![remaining.first().expect("cycle implies unplaced nodes")];
    loop {
        let cur = *walk.last().unwrap();
        let next = (parents[cur.index()] & remaining)
            .first()
            .expect("unplaced node has an unplaced parent");
        if let Some(pos) = walk.iter().position(|&w| w == next) {
            // walk follows parent links; reverse so the listing follows edges
            let mut cycle: Vec<String> = walk[pos..]
                .iter()
                .rev()
                .map(|&v| universe.name(v).to_string())
                .collect();
            cycle.push(cycle[0].clone());
            return cycle;
        }
        walk.push(next);
    }
}

/// An undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    universe: Arc<Universe>,
    adjacency: Vec<VarSet>,
}

impl UndirectedGraph {
    pub fn empty(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        UndirectedGraph {
            universe,
            adjacency: vec![VarSet::EMPTY; n],
        }
    }

    pub fn from_links(universe: Arc<Universe>, links: &[(VarId, VarId)]) -> Result<Self> {
        let mut g = UndirectedGraph::empty(universe);
        for &(a, b) in links {
            g.universe.check(a)?;
            g.universe.check(b)?;
            if a == b {
                return Err(Error::InvalidEdge(
                    g.universe.name(a).to_string(),
                    "self-loop",
                ));
            }
            g.adjacency[a.index()].insert(b);
            g.adjacency[b.index()].insert(a);
        }
        Ok(g)
    }

    pub(crate) fn add_link(&mut self, a: VarId, b: VarId) {
        self.adjacency[a.index()].insert(b);
        self.adjacency[b.index()].insert(a);
    }

    pub fn without_link(&self, a: VarId, b: VarId) -> UndirectedGraph {
        let mut g = self.clone();
        g.adjacency[a.index()].remove(b);
        g.adjacency[b.index()].remove(a);
        g
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, v: VarId) -> VarSet {
        self.adjacency[v.index()]
    }

    pub fn has_link(&self, a: VarId, b: VarId) -> bool {
        self.adjacency[a.index()].contains(b)
    }

    /// Links as `(a, b)` with `a < b`, sorted.
    pub fn links(&self) -> Vec<(VarId, VarId)> {
        let mut out = Vec::new();
        for (a, &ns) in self.adjacency.iter().enumerate() {
            let a = VarId::new(a);
            for b in ns {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
