//! Seeded randomized checks of the core guarantees, plus brute-force axiom
//! verifiers that work directly from the definitions.

use indep_core::axioms::{closure, DEFAULT_CLOSURE_LIMIT};
use indep_core::protocol::{witness_protocol, StratifiedProtocol};
use indep_core::separation::{
    dsep, dsep_model, dsep_naive, is_imap, usep_model, DEFAULT_MODEL_LIMIT, DEFAULT_PATH_LIMIT,
};
use indep_core::{random, text, DependencyModel, Error, IndependenceOracle, Mode, Triplet, VarId, VarSet, MAX_VARS};
use rand::Rng;

use crate::args::CheckName;

/// Edge and boundary density for generated instances.
const DENSITY: f64 = 0.4;
/// Random queries per DAG in the oracle-equivalence check.
const QUERIES_PER_GRAPH: usize = 50;
/// Orderings sampled per DAG in the I-map check when `n > 4`.
const SAMPLED_ORDERS: usize = 10;

/// Outcome of one trial; `failure` holds a reproduction when it failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub seed: u64,
    pub failure: Option<String>,
}

impl CheckName {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::ProtocolClosure => "corollary1",
            CheckName::RoundTrip => "theorem1",
            CheckName::MinimalImap => "theorem2",
            CheckName::Witness => "theorem3",
            CheckName::OracleEq => "oracle-eq",
            CheckName::UsepAxioms => "usep-axioms",
        }
    }

    fn size_limit(self) -> usize {
        match self {
            CheckName::ProtocolClosure => DEFAULT_CLOSURE_LIMIT,
            CheckName::RoundTrip => MAX_VARS,
            CheckName::MinimalImap | CheckName::Witness | CheckName::UsepAxioms => DEFAULT_MODEL_LIMIT,
            CheckName::OracleEq => DEFAULT_PATH_LIMIT,
        }
    }
}

/// Runs `trials` instances of `name` over `n` variables. Trial seeds are
/// drawn from `seed`, so any single trial can be replayed with
/// [`run_trial`].
pub fn run_check(name: CheckName, n: usize, trials: usize, seed: u64) -> Result<Vec<Trial>, Error> {
    let limit = name.size_limit();
    if n > limit {
        return Err(Error::LimitExceeded {
            what: name.as_str(),
            size: n,
            limit,
        });
    }
    let min = if name == CheckName::RoundTrip { 1 } else { 2 };
    if n < min {
        return Err(Error::Query(format!("{} needs at least {min} variables", name.as_str())));
    }
    let mut master = random::rng(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.gen()).collect();
    seeds
        .into_iter()
        .map(|s| Ok(Trial { seed: s, failure: run_trial(name, n, s)? }))
        .collect()
}

pub fn run_trial(name: CheckName, n: usize, seed: u64) -> Result<Option<String>, Error> {
    let mut rng = random::rng(seed);
    match name {
        CheckName::ProtocolClosure => {
            let p = random::protocol(&mut rng, n, DENSITY);
            protocol_closure(&p)
        }
        CheckName::RoundTrip => {
            let g = random::dag(&mut rng, n, DENSITY);
            let back = StratifiedProtocol::extract(&g).compile()?;
            Ok((back != g).then(|| format!("graph:\n{}recompiled:\n{}", text::write_dag(&g), text::write_dag(&back))))
        }
        CheckName::MinimalImap => {
            let g = random::dag(&mut rng, n, DENSITY);
            let orders = if n <= 4 {
                permutations(n)
            } else {
                (0..SAMPLED_ORDERS).map(|_| random::order(&mut rng, n)).collect()
            };
            minimal_dags_are_imaps(&dsep_model(&g)?, &orders).map(|r| r.map(|msg| format!("graph:\n{}{msg}", text::write_dag(&g))))
        }
        CheckName::Witness => {
            let g = random::dag(&mut rng, n, DENSITY);
            witnesses_separate(&dsep_model(&g)?).map(|r| r.map(|msg| format!("graph:\n{}{msg}", text::write_dag(&g))))
        }
        CheckName::OracleEq => {
            let g = random::dag(&mut rng, n, DENSITY);
            for _ in 0..QUERIES_PER_GRAPH {
                let q = random::triplet(&mut rng, n);
                let (fast, slow) = (dsep(&g, &q)?, dsep_naive(&g, &q)?);
                if fast != slow {
                    return Ok(Some(format!(
                        "graph:\n{}query: {}\nreachability: {fast}, path enumeration: {slow}\n",
                        text::write_dag(&g),
                        q.display(g.universe())
                    )));
                }
            }
            Ok(None)
        }
        CheckName::UsepAxioms => {
            let u = random::undirected(&mut rng, n, DENSITY);
            let m = usep_model(&u)?;
            Ok(undirected_axiom_violation(&m).map(|msg| format!("graph:\n{}{msg}\n", text::write_undirected(&u))))
        }
    }
}

/// The DAG of `p` separates exactly the semi-graphoid consequences of its
/// statements.
pub fn protocol_closure(p: &StratifiedProtocol) -> Result<Option<String>, Error> {
    let graph_model = dsep_model(&p.compile()?)?;
    let derived = closure(&p.model()?, Mode::SemiGraphoid)?;
    if graph_model == derived {
        return Ok(None);
    }
    let u = p.universe();
    let mut msg = format!("protocol:\n{}", text::write_protocol(p));
    if let Some(t) = graph_model.difference(&derived).next() {
        msg += &format!("separated but not derivable: {}\n", t.display(u));
    }
    if let Some(t) = derived.difference(&graph_model).next() {
        msg += &format!("derivable but not separated: {}\n", t.display(u));
    }
    Ok(Some(msg))
}

/// For each order, the DAG built from minimal boundaries against `m` is an
/// I-map of `m`, and no boundary can lose a member.
pub fn minimal_dags_are_imaps(m: &DependencyModel, orders: &[Vec<VarId>]) -> Result<Option<String>, Error> {
    let u = m.universe();
    for order in orders {
        let p = StratifiedProtocol::minimal_for_order(m, order.clone())?;
        let names: Vec<&str> = order.iter().map(|&v| u.name(v)).collect();
        if let Err(t) = is_imap(&dsep_model(&p.compile()?)?, m)? {
            return Ok(Some(format!(
                "order: {}\nprotocol:\n{}separated but not in the model: {}\n",
                names.join(" "),
                text::write_protocol(&p),
                t.display(u)
            )));
        }
        if let Some(msg) = non_minimal_boundary(m, &p)? {
            return Ok(Some(format!("order: {}\n{msg}", names.join(" "))));
        }
    }
    Ok(None)
}

/// Some member of some boundary can be dropped while the oracle still
/// affirms the statement.
pub fn non_minimal_boundary<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    p: &StratifiedProtocol,
) -> Result<Option<String>, Error> {
    let u = p.universe();
    let mut before = VarSet::EMPTY;
    for &v in p.order() {
        let b = p.boundary(v);
        for w in b {
            let smaller = b.without(w);
            let t = Triplet::new(VarSet::singleton(v), smaller, before - smaller)?;
            if oracle.affirms(&t)? {
                return Ok(Some(format!(
                    "boundary of {} is not minimal: {} can be removed\n",
                    u.name(v),
                    u.name(w)
                )));
            }
        }
        before.insert(v);
    }
    Ok(None)
}

/// Every member of `m` is d-separated in the DAG of its witness protocol.
pub fn witnesses_separate(m: &DependencyModel) -> Result<Option<String>, Error> {
    for t in m {
        let fail = |why: String| Some(format!("triplet: {}\n{why}", t.display(m.universe())));
        match witness_protocol(m, t) {
            Ok(p) => {
                if !dsep(&p.compile()?, t)? {
                    return Ok(fail(format!("witness:\n{}", text::write_protocol(&p))));
                }
            }
            Err(e @ Error::WitnessFailed(_)) => return Ok(fail(format!("{e}\n"))),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// All orderings of `0..n`, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<VarId>> {
    fn go(prefix: &mut Vec<VarId>, left: VarSet, out: &mut Vec<Vec<VarId>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for v in left {
            prefix.push(v);
            go(prefix, left.without(v), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), VarSet::full(n), &mut out);
    out
}

fn nonempty_proper_subsets(s: VarSet) -> impl Iterator<Item = VarSet> {
    s.subsets().filter(move |&p| !p.is_empty() && p != s)
}

fn need(m: &DependencyModel, rule: &str, t: Triplet, from: &[Triplet]) -> Result<(), String> {
    if m.contains(&t) {
        return Ok(());
    }
    let u = m.universe();
    let from: Vec<String> = from.iter().map(|f| f.display(u)).collect();
    Err(format!("{rule}: {} does not yield {}", from.join(" and "), t.display(u)))
}

fn triplet(x: VarSet, z: VarSet, y: VarSet) -> Triplet {
    Triplet::new(x, z, y).expect("disjoint by construction")
}

/// First violation of symmetry, decomposition, weak union or contraction,
/// checked pattern by pattern against the definitions.
pub fn semigraphoid_violation(m: &DependencyModel) -> Option<String> {
    let check = || -> Result<(), String> {
        for &stored in m {
            for t in [stored, stored.flip()] {
                need(m, "symmetry", t.flip(), &[t])?;
                let (x, z, yw) = (t.x(), t.z(), t.y());
                for y in nonempty_proper_subsets(yw) {
                    need(m, "decomposition", triplet(x, z, y), &[t])?;
                    need(m, "weak union", triplet(x, z | y, yw - y), &[t])?;
                }
                // t as I(X, ZY, W)
                let w = yw;
                for y in t.z().subsets().filter(|s| !s.is_empty()) {
                    let zz = t.z() - y;
                    let second = triplet(x, zz, y);
                    if m.contains(&second) {
                        need(m, "contraction", triplet(x, zz, y | w), &[t, second])?;
                    }
                }
            }
        }
        Ok(())
    };
    check().err()
}

/// First violation of symmetry, decomposition, strong union, intersection or
/// transitivity (with the extra variable outside the triplet).
pub fn undirected_axiom_violation(m: &DependencyModel) -> Option<String> {
    let all = m.universe().all();
    let check = || -> Result<(), String> {
        for &stored in m {
            for t in [stored, stored.flip()] {
                need(m, "symmetry", t.flip(), &[t])?;
                let (x, z, y) = (t.x(), t.z(), t.y());
                let free = all - t.vars();
                for part in nonempty_proper_subsets(y) {
                    need(m, "decomposition", triplet(x, z, part), &[t])?;
                }
                for w in free.subsets().filter(|s| !s.is_empty()) {
                    need(m, "strong union", triplet(x, z | w, y), &[t])?;
                }
                // t as I(X, ZY, W) with partner I(X, ZW, Y)
                for yy in z.subsets().filter(|s| !s.is_empty()) {
                    let zz = z - yy;
                    let partner = triplet(x, zz | y, yy);
                    if m.contains(&partner) {
                        need(m, "intersection", triplet(x, zz, yy | y), &[t, partner])?;
                    }
                }
                for g in free {
                    let gamma = VarSet::singleton(g);
                    let left = triplet(x, z, gamma);
                    let right = triplet(gamma, z, y);
                    if !m.contains(&left) && !m.contains(&right) {
                        let u = m.universe();
                        return Err(format!(
                            "transitivity: {} yields neither {} nor {}",
                            t.display(u),
                            left.display(u),
                            right.display(u)
                        ));
                    }
                }
            }
        }
        Ok(())
    };
    check().err()
}
