use std::collections::BTreeSet;

use indep_core::axioms::{closure, derive, is_closed, Mode};
use indep_core::protocol::{extract, minimal_boundary, StratifiedProtocol};
use indep_core::separation::{canonical_triplets, dsep, dsep_model, dsep_naive, idsep, DsepOracle};
use indep_core::{random, text, Dag, DependencyModel, Triplet, VarId, VarSet};
use proptest::prelude::*;

/// Every labelled DAG on `n` nodes: all edge subsets over ordered pairs,
/// keeping the acyclic ones.
fn all_dags(n: usize) -> Vec<Dag> {
    let pairs: Vec<(VarId, VarId)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (VarId::new(a), VarId::new(b))))
        .collect();
    let u = random::universe(n);
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Dag::from_edges(u.clone(), &edges, VarSet::EMPTY).ok()
        })
        .collect()
}

#[test]
fn labelled_dag_counts() {
    // OEIS A003024
    assert_eq!(all_dags(2).len(), 3);
    assert_eq!(all_dags(3).len(), 25);
    assert_eq!(all_dags(4).len(), 543);
}

#[test]
fn descendants_are_transitive_on_all_small_dags() {
    for n in 1..=4 {
        for g in all_dags(n) {
            for v in g.universe().ids() {
                let dv = g.descendants(v).unwrap();
                assert!(!dv.contains(v));
                for u in dv {
                    assert!(g.descendants(u).unwrap().is_subset(dv));
                }
            }
        }
    }
}

#[test]
fn topological_order_respects_every_edge_on_all_small_dags() {
    for n in 1..=4 {
        for g in all_dags(n) {
            let order = g.topological_order();
            let pos = |v: VarId| order.iter().position(|&w| w == v).unwrap();
            for (p, c) in g.edges() {
                assert!(pos(p) < pos(c));
            }
            let rebuilt = Dag::from_edges(g.universe().clone(), &g.edges(), VarSet::EMPTY).unwrap();
            assert_eq!(rebuilt, g);
        }
    }
}

/// Reference d-separation on all 4-node DAGs and every query.
#[test]
fn dsep_matches_path_enumeration_exhaustively() {
    let queries = canonical_triplets(4);
    for g in all_dags(4) {
        for q in &queries {
            assert_eq!(dsep(&g, q).unwrap(), dsep_naive(&g, q).unwrap(), "{g:?} {q:?}");
        }
    }
}

fn model_strategy(max_n: usize, max_len: usize) -> impl Strategy<Value = DependencyModel> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(any::<u64>(), 0..=max_len).prop_map(move |seeds| {
            let u = random::universe(n);
            let ts = seeds.into_iter().map(|s| random::triplet(&mut random::rng(s), n));
            DependencyModel::from_triplets(u, ts).unwrap()
        })
    })
}

fn as_set(m: &DependencyModel) -> BTreeSet<Triplet> {
    m.iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_is_idempotent_and_symmetric(seed in any::<u64>(), n in 2usize..8) {
        let t = random::triplet(&mut random::rng(seed), n);
        let c = t.canonical();
        prop_assert_eq!(c.canonical(), c);
        prop_assert_eq!(t.flip().canonical(), c);
        prop_assert!(c == t || c == t.flip());
    }

    #[test]
    fn closure_is_idempotent_and_extensive(m in model_strategy(5, 4)) {
        let c = closure(&m, Mode::SemiGraphoid).unwrap();
        prop_assert!(m.is_subset(&c));
        prop_assert_eq!(closure(&c, Mode::SemiGraphoid).unwrap(), c.clone());
        prop_assert!(is_closed(&c, Mode::SemiGraphoid).unwrap());
        for t in &c {
            prop_assert!(c.contains(&t.flip()));
        }
    }

    #[test]
    fn closure_is_monotone(m in model_strategy(5, 4), extra in prop::collection::vec(any::<u64>(), 0..3)) {
        let n = m.universe().len();
        let mut bigger = m.clone();
        for s in extra {
            bigger.insert(random::triplet(&mut random::rng(s), n)).unwrap();
        }
        let small = closure(&m, Mode::SemiGraphoid).unwrap();
        let large = closure(&bigger, Mode::SemiGraphoid).unwrap();
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn graphoid_closure_dominates(m in model_strategy(5, 4)) {
        let semi = closure(&m, Mode::SemiGraphoid).unwrap();
        let full = closure(&m, Mode::Graphoid).unwrap();
        prop_assert!(semi.is_subset(&full));
    }

    #[test]
    fn every_closure_member_has_a_replayable_trace(m in model_strategy(4, 3), graphoid in any::<bool>()) {
        let mode = if graphoid { Mode::Graphoid } else { Mode::SemiGraphoid };
        let c = closure(&m, mode).unwrap();
        for t in &c {
            let trace = derive(&m, t, mode).unwrap().expect("member is derivable");
            prop_assert_eq!(trace.conclusion, *t);
            if let Err(e) = trace.replay(&m, mode) {
                return Err(TestCaseError::fail(e));
            }
        }
        for t in canonical_triplets(m.universe().len()) {
            if !c.contains(&t) {
                prop_assert!(derive(&m, &t, mode).unwrap().is_none());
            }
        }
    }

    #[test]
    fn dsep_matches_naive_up_to_eight(seed in any::<u64>(), n in 2usize..=8, p in 0.1f64..0.6) {
        let mut rng = random::rng(seed);
        let g = random::dag(&mut rng, n, p);
        for _ in 0..20 {
            let q = random::triplet(&mut rng, n);
            prop_assert_eq!(dsep(&g, &q).unwrap(), dsep_naive(&g, &q).unwrap());
        }
    }

    #[test]
    fn extract_then_compile_is_identity(seed in any::<u64>(), n in 1usize..=6) {
        let g = random::dag(&mut random::rng(seed), n, 0.4);
        prop_assert_eq!(extract(&g).compile().unwrap(), g);
    }

    #[test]
    fn protocol_dag_is_a_perfect_map_of_its_closure(seed in any::<u64>(), n in 2usize..=5) {
        let p = random::protocol(&mut random::rng(seed), n, 0.5);
        let graph_model = dsep_model(&p.compile().unwrap()).unwrap();
        let derived = closure(&p.model().unwrap(), Mode::SemiGraphoid).unwrap();
        prop_assert_eq!(as_set(&graph_model), as_set(&derived));
    }

    #[test]
    fn idsep_equals_dsep_without_determinism(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = random::rng(seed);
        let g = random::dag(&mut rng, n, 0.4);
        for q in canonical_triplets(n).iter().take(400) {
            prop_assert_eq!(idsep(&g, q).unwrap(), dsep(&g, q).unwrap());
        }
    }

    #[test]
    fn idsep_matches_its_path_definition(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = random::rng(seed);
        let base = random::dag(&mut rng, n, 0.45);
        let g = random::with_deterministic(&mut rng, &base, 0.4);
        for _ in 0..30 {
            let q = random::triplet(&mut rng, n);
            prop_assert_eq!(
                idsep(&g, &q).unwrap(),
                indep_core::separation::idsep_naive(&g, &q).unwrap()
            );
        }
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::rng(seed);
        let base = random::dag(&mut rng, n, 0.4);
        let g = random::with_deterministic(&mut rng, &base, 0.3);
        prop_assert_eq!(text::parse_dag(&text::write_dag(&g)).unwrap(), g);
        let p = random::protocol(&mut rng, n, 0.5);
        // the order line fixes variable indices, so compare by names
        let written = text::write_protocol(&p);
        prop_assert_eq!(text::write_protocol(&text::parse_protocol(&written).unwrap()), written);
    }
}

/// All valid boundaries for `v` after `before` under `m`.
fn valid_boundaries(m: &DependencyModel, before: VarSet, v: VarId) -> Vec<VarSet> {
    before
        .subsets()
        .filter(|&b| {
            let rest = before - b;
            rest.is_empty() || m.contains(&Triplet::new(VarSet::singleton(v), b, rest).unwrap())
        })
        .collect()
}

/// Every stratified protocol of `m`, compiled.
fn all_protocol_dags(m: &DependencyModel) -> Vec<Dag> {
    fn orders(n: usize) -> Vec<Vec<VarId>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in orders(n - 1) {
            for pos in 0..=rest.len() {
                let mut o = rest.clone();
                o.insert(pos, VarId::new(n - 1));
                out.push(o);
            }
        }
        out
    }
    let u = m.universe().clone();
    let mut dags = Vec::new();
    for order in orders(u.len()) {
        let mut partial: Vec<Vec<VarSet>> = vec![vec![VarSet::EMPTY; u.len()]];
        let mut before = VarSet::EMPTY;
        for &v in &order {
            let choices = valid_boundaries(m, before, v);
            partial = partial
                .into_iter()
                .flat_map(|b| {
                    choices.iter().map(move |&c| {
                        let mut b = b.clone();
                        b[v.index()] = c;
                        b
                    })
                })
                .collect();
            before.insert(v);
        }
        for b in partial {
            dags.push(StratifiedProtocol::new(u.clone(), order.clone(), b).unwrap().compile().unwrap());
        }
    }
    dags
}

/// The union of d-separation over all protocol DAGs recovers the model, for
/// every d-separation model on up to three variables and for closures of
/// random statement sets.
#[test]
fn all_protocols_together_form_a_perfect_map() {
    let mut models: Vec<DependencyModel> = Vec::new();
    for n in 2..=3 {
        for g in all_dags(n) {
            models.push(dsep_model(&g).unwrap());
        }
    }
    for seed in 0..40u64 {
        let mut rng = random::rng(seed);
        let n = 3;
        let ts: Vec<_> = (0..2).map(|_| random::triplet(&mut rng, n)).collect();
        let m = DependencyModel::from_triplets(random::universe(n), ts).unwrap();
        models.push(closure(&m, Mode::SemiGraphoid).unwrap());
    }
    for m in models {
        let mut union = DependencyModel::new(m.universe().clone());
        for g in all_protocol_dags(&m) {
            for t in &dsep_model(&g).unwrap() {
                union.insert(*t).unwrap();
            }
        }
        assert_eq!(union, m);
    }
}

#[test]
fn minimal_boundaries_cannot_shrink_further() {
    for seed in 0..60u64 {
        let mut rng = random::rng(seed);
        let n = 2 + (seed as usize % 4);
        let g = random::dag(&mut rng, n, 0.5);
        let oracle = DsepOracle::new(&g);
        let order = random::order(&mut rng, n);
        let mut before = VarSet::EMPTY;
        for &v in &order {
            let b = minimal_boundary(&oracle, before, v).unwrap();
            let rest = before - b;
            if !rest.is_empty() {
                assert!(dsep(&g, &Triplet::new(VarSet::singleton(v), b, rest).unwrap()).unwrap());
            }
            for u in b {
                let smaller = b.without(u);
                let t = Triplet::new(VarSet::singleton(v), smaller, before - smaller).unwrap();
                assert!(!dsep(&g, &t).unwrap(), "boundary {b:?} of {v:?} not minimal");
            }
            before.insert(v);
        }
    }
}

#[test]
fn closure_at_the_default_limit_finishes() {
    let p = random::protocol(&mut random::rng(11), 7, 0.4);
    let m = p.model().unwrap();
    let c = closure(&m, Mode::SemiGraphoid).unwrap();
    assert_eq!(c, dsep_model(&p.compile().unwrap()).unwrap());
}
