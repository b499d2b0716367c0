//! Seeded random instances for property checks and benchmarks.
//!
//! All generators draw from a caller-supplied RNG; [`rng`] builds the
//! ChaCha-based generator used throughout, so a seed pins every instance
//! across platforms.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Dag, UndirectedGraph};
use crate::protocol::StratifiedProtocol;
use crate::triplet::Triplet;
use crate::var::{Universe, VarId, VarSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a`, `b`, … `z`, then `v26`, `v27`, …
pub fn names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("v{i}")
            }
        })
        .collect()
}

pub fn universe(n: usize) -> Arc<Universe> {
    Arc::new(Universe::new(names(n)).expect("generated names are valid"))
}

fn subset<R: Rng + ?Sized>(rng: &mut R, of: VarSet, p: f64) -> VarSet {
    of.iter().filter(|_| rng.gen_bool(p)).collect()
}

/// A DAG whose edges follow a random hidden order, each present with
/// probability `edge_prob`.
pub fn dag<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_prob: f64) -> Dag {
    let mut perm: Vec<VarId> = (0..n).map(VarId::new).collect();
    perm.shuffle(rng);
    let mut parents = vec![VarSet::EMPTY; n];
    let mut before = VarSet::EMPTY;
    for &v in &perm {
        parents[v.index()] = subset(rng, before, edge_prob);
        before.insert(v);
    }
    Dag::new(universe(n), parents, VarSet::EMPTY).expect("edges follow a total order")
}

/// `g` with each non-root node marked deterministic with probability `p`,
/// and roots with probability `p / 4`.
pub fn with_deterministic<R: Rng + ?Sized>(rng: &mut R, g: &Dag, p: f64) -> Dag {
    let det: VarSet = g
        .universe()
        .ids()
        .filter(|&v| {
            let q = if g.parents(v).is_empty() { p / 4.0 } else { p };
            rng.gen_bool(q)
        })
        .collect();
    Dag::new(g.universe().clone(), g.parent_sets().to_vec(), det).expect("same structure")
}

/// A valid protocol with a random order and each predecessor in a boundary
/// with probability `boundary_prob`.
pub fn protocol<R: Rng + ?Sized>(rng: &mut R, n: usize, boundary_prob: f64) -> StratifiedProtocol {
    let mut order: Vec<VarId> = (0..n).map(VarId::new).collect();
    order.shuffle(rng);
    let mut boundary = vec![VarSet::EMPTY; n];
    let mut before = VarSet::EMPTY;
    for &v in &order {
        boundary[v.index()] = subset(rng, before, boundary_prob);
        before.insert(v);
    }
    StratifiedProtocol::new(universe(n), order, boundary).expect("well-formed")
}

pub fn undirected<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_prob: f64) -> UndirectedGraph {
    let mut links = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(edge_prob) {
                links.push((VarId::new(a), VarId::new(b)));
            }
        }
    }
    UndirectedGraph::from_links(universe(n), &links).expect("valid links")
}

/// A uniformly random valid triplet over `n ≥ 2` variables.
pub fn triplet<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Triplet {
    assert!(n >= 2, "a triplet needs two variables");
    loop {
        let (mut x, mut z, mut y) = (VarSet::EMPTY, VarSet::EMPTY, VarSet::EMPTY);
        for i in 0..n {
            match rng.gen_range(0..4) {
                0 => x.insert(VarId::new(i)),
                1 => z.insert(VarId::new(i)),
                2 => y.insert(VarId::new(i)),
                _ => {}
            }
        }
        if let Ok(t) = Triplet::new(x, z, y) {
            return t;
        }
    }
}

/// A random total order of `0..n`.
pub fn order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<VarId> {
    let mut order: Vec<VarId> = (0..n).map(VarId::new).collect();
    order.shuffle(rng);
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = dag(&mut rng(42), 6, 0.5);
        let b = dag(&mut rng(42), 6, 0.5);
        assert_eq!(a, b);
        let p = protocol(&mut rng(3), 5, 0.5);
        assert!(p.validate().is_empty());
    }

    #[test]
    fn names_are_letters_then_indexed() {
        let n = names(28);
        assert_eq!(n[0], "a");
        assert_eq!(n[25], "z");
        assert_eq!(n[27], "v27");
    }
}
