//! Semi-graphoid and graphoid inference.
//!
//! The five inference rules, written for disjoint sets:
//!
//! | rule          | premises                             | conclusion     |
//! |---------------|--------------------------------------|----------------|
//! | symmetry      | `I(X,Z,Y)`                           | `I(Y,Z,X)`     |
//! | decomposition | `I(X,Z,YW)`                          | `I(X,Z,Y)`     |
//! | weak union    | `I(X,Z,YW)`                          | `I(X,ZY,W)`    |
//! | contraction   | `I(X,ZY,W)`, `I(X,Z,Y)`              | `I(X,Z,YW)`    |
//! | intersection  | `I(X,ZY,W)`, `I(X,ZW,Y)`             | `I(X,Z,YW)`    |
//!
//! The first four define semi-graphoids; adding intersection gives graphoids.
//! Symmetry is never applied explicitly: models store canonical triplets and
//! every rule is tried against both orientations of its premises.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::DependencyModel;
use crate::triplet::Triplet;
use crate::var::{Universe, VarSet};

/// Default universe-size limit for exhaustive closure.
pub const DEFAULT_CLOSURE_LIMIT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomName {
    Symmetry,
    Decomposition,
    WeakUnion,
    Contraction,
    Intersection,
}

impl AxiomName {
    pub const ALL: [AxiomName; 5] = [
        AxiomName::Symmetry,
        AxiomName::Decomposition,
        AxiomName::WeakUnion,
        AxiomName::Contraction,
        AxiomName::Intersection,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomName::Symmetry => "symmetry",
            AxiomName::Decomposition => "decomposition",
            AxiomName::WeakUnion => "weak-union",
            AxiomName::Contraction => "contraction",
            AxiomName::Intersection => "intersection",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            AxiomName::Contraction | AxiomName::Intersection => 2,
            _ => 1,
        }
    }

    pub fn allowed_in(self, mode: Mode) -> bool {
        self != AxiomName::Intersection || mode == Mode::Graphoid
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        AxiomName::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

/// Which rule set a closure uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    SemiGraphoid,
    Graphoid,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::SemiGraphoid => "semigraphoid",
            Mode::Graphoid => "graphoid",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "semigraphoid" => Ok(Mode::SemiGraphoid),
            "graphoid" => Ok(Mode::Graphoid),
            _ => Err(format!("unknown mode {s:?} (expected semigraphoid or graphoid)")),
        }
    }
}

/// All one-step consequences of `name` applied to the given premises, in
/// canonical form. Premises that do not fit the rule's pattern yield an empty
/// set.
///
/// Unary rules are applied to both orientations of `t1`. For the binary rules
/// `t1` plays the first premise (`I(X,ZY,W)`) and `t2` the second; each may
/// be matched in either orientation.
pub fn apply_axiom(name: AxiomName, t1: &Triplet, t2: Option<&Triplet>) -> Result<BTreeSet<Triplet>> {
    let arity_error = Error::Arity {
        axiom: name.as_str(),
        expected: name.arity(),
    };
    let mut out = BTreeSet::new();
    match (name, t2) {
        (AxiomName::Symmetry, None) => {
            out.insert(t1.flip().canonical());
        }
        (AxiomName::Decomposition, None) => {
            for t in t1.orientations() {
                decompositions(t, |r| {
                    out.insert(r);
                });
            }
        }
        (AxiomName::WeakUnion, None) => {
            for t in t1.orientations() {
                weak_unions(t, |r| {
                    out.insert(r);
                });
            }
        }
        (AxiomName::Contraction, Some(t2)) => {
            for a in t1.orientations() {
                for b in t2.orientations() {
                    // a = (X, ZY, W), b = (X, Z, Y)
                    if a.x() == b.x() && (b.z() | b.y()) == a.z() {
                        out.extend(Triplet::try_canonical(a.x(), b.z(), b.y() | a.y()));
                    }
                }
            }
        }
        (AxiomName::Intersection, Some(t2)) => {
            for a in t1.orientations() {
                for b in t2.orientations() {
                    // a = (X, ZY, W), b = (X, ZW, Y)
                    if a.x() == b.x()
                        && b.y().is_subset(a.z())
                        && a.y().is_subset(b.z())
                        && a.z() - b.y() == b.z() - a.y()
                    {
                        out.extend(Triplet::try_canonical(a.x(), a.z() - b.y(), a.y() | b.y()));
                    }
                }
            }
        }
        _ => return Err(arity_error),
    }
    Ok(out)
}

/// `(X, Z, S)` for every nonempty proper subset `S` of `t.y`.
fn decompositions(t: Triplet, mut emit: impl FnMut(Triplet)) {
    for s in t.y().subsets() {
        if s.is_empty() || s == t.y() {
            continue;
        }
        emit(Triplet::try_canonical(t.x(), t.z(), s).expect("sub-triplet is valid"));
    }
}

/// `(X, Z ∪ (YW ∖ W), W)` for every nonempty proper subset `W` of `t.y`.
fn weak_unions(t: Triplet, mut emit: impl FnMut(Triplet)) {
    for w in t.y().subsets() {
        if w.is_empty() || w == t.y() {
            continue;
        }
        emit(Triplet::try_canonical(t.x(), t.z() | (t.y() - w), w).expect("sub-triplet is valid"));
    }
}

/// One derivation step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub axiom: AxiomName,
    pub premises: Vec<Triplet>,
    pub result: Triplet,
}

impl Step {
    pub fn display(&self, universe: &Universe) -> String {
        let premises: Vec<String> = self.premises.iter().map(|p| p.display(universe)).collect();
        format!(
            "{}: {} => {}",
            self.axiom,
            premises.join(" ; "),
            self.result.display(universe)
        )
    }
}

/// A proof of `conclusion` from a model's triplets. Steps are ordered so that
/// every premise is an input triplet or the result of an earlier step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub conclusion: Triplet,
    pub steps: Vec<Step>,
}

impl DerivationTrace {
    /// Re-checks every step through [`apply_axiom`] against `inputs`.
    pub fn replay(&self, inputs: &DependencyModel, mode: Mode) -> Result<(), String> {
        let mut known: BTreeSet<Triplet> = inputs.iter().copied().collect();
        for (i, step) in self.steps.iter().enumerate() {
            if !step.axiom.allowed_in(mode) {
                return Err(format!("step {}: {} not allowed in {mode} mode", i + 1, step.axiom));
            }
            if let Some(p) = step.premises.iter().find(|p| !known.contains(&p.canonical())) {
                return Err(format!("step {}: premise {p:?} not yet established", i + 1));
            }
            let produced = apply_axiom(step.axiom, &step.premises[0], step.premises.get(1))
                .map_err(|e| e.to_string())?;
            if !produced.contains(&step.result) {
                return Err(format!("step {}: {} does not produce {:?}", i + 1, step.axiom, step.result));
            }
            known.insert(step.result);
        }
        let last = self.steps.last().map(|s| s.result);
        if !known.contains(&self.conclusion.canonical()) || last.is_some_and(|r| r != self.conclusion.canonical()) {
            return Err("trace does not end in its conclusion".into());
        }
        Ok(())
    }
}

/// Least fixpoint of `m` under `mode`, refusing universes above the default
/// limit.
pub fn closure(m: &DependencyModel, mode: Mode) -> Result<DependencyModel> {
    closure_with_limit(m, mode, DEFAULT_CLOSURE_LIMIT)
}

pub fn closure_with_limit(m: &DependencyModel, mode: Mode, limit: usize) -> Result<DependencyModel> {
    let engine = Engine::run(m, mode, limit, false)?;
    let mut out = DependencyModel::new(m.universe().clone());
    for t in engine.known.into_keys() {
        out.insert_unchecked(t);
    }
    Ok(out)
}

/// A derivation of `target` from `m`, or `None` when it is not in the closure.
pub fn derive(m: &DependencyModel, target: &Triplet, mode: Mode) -> Result<Option<DerivationTrace>> {
    derive_with_limit(m, target, mode, DEFAULT_CLOSURE_LIMIT)
}

pub fn derive_with_limit(
    m: &DependencyModel,
    target: &Triplet,
    mode: Mode,
    limit: usize,
) -> Result<Option<DerivationTrace>> {
    if !m.universe().contains_set(target.vars()) {
        return Err(Error::Query("target mentions variables outside the universe".into()));
    }
    let engine = Engine::run(m, mode, limit, true)?;
    let target = target.canonical();
    if !engine.known.contains_key(&target) {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut emitted = BTreeSet::new();
    engine.unwind(target, &mut emitted, &mut steps);
    Ok(Some(DerivationTrace {
        conclusion: target,
        steps,
    }))
}

pub fn is_closed(m: &DependencyModel, mode: Mode) -> Result<bool> {
    is_closed_with_limit(m, mode, DEFAULT_CLOSURE_LIMIT)
}

pub fn is_closed_with_limit(m: &DependencyModel, mode: Mode, limit: usize) -> Result<bool> {
    Ok(closure_with_limit(m, mode, limit)?.len() == m.len())
}

type Provenance = Option<(AxiomName, Vec<Triplet>)>;

/// Worklist fixpoint. Each triplet is expanded once, against everything known
/// at that moment; a pair of premises is therefore examined when the later of
/// the two is popped.
struct Engine {
    universe_all: VarSet,
    mode: Mode,
    record: bool,
    /// Known triplets with the first rule application that produced them
    /// (`None` for inputs, and for everything when not recording).
    known: HashMap<Triplet, Provenance>,
    queue: VecDeque<Triplet>,
}

impl Engine {
    fn run(m: &DependencyModel, mode: Mode, limit: usize, record: bool) -> Result<Engine> {
        let size = m.universe().len();
        if size > limit {
            return Err(Error::LimitExceeded {
                what: "closure",
                size,
                limit,
            });
        }
        let mut engine = Engine {
            universe_all: m.universe().all(),
            mode,
            record,
            known: HashMap::new(),
            queue: VecDeque::new(),
        };
        for &t in m {
            if engine.known.insert(t, None).is_none() {
                engine.queue.push_back(t);
            }
        }
        while let Some(t) = engine.queue.pop_front() {
            engine.expand(t);
        }
        Ok(engine)
    }

    fn add(&mut self, t: Triplet, axiom: AxiomName, premises: &[Triplet]) {
        if self.known.contains_key(&t) {
            return;
        }
        let prov = self.record.then(|| (axiom, premises.to_vec()));
        self.known.insert(t, prov);
        self.queue.push_back(t);
    }

    fn expand(&mut self, t: Triplet) {
        let mut fresh: Vec<(Triplet, AxiomName, [Triplet; 2], usize)> = Vec::new();
        for o in t.orientations() {
            let (x, c, b) = (o.x(), o.z(), o.y());

            decompositions(o, |r| fresh.push((r, AxiomName::Decomposition, [t, t], 1)));
            weak_unions(o, |r| fresh.push((r, AxiomName::WeakUnion, [t, t], 1)));

            // o as I(X, ZY, W): partner I(X, Z, Y) for each split of c
            for z in c.subsets() {
                if z == c {
                    continue;
                }
                let y = c - z;
                let partner = Triplet::try_canonical(x, z, y).expect("valid split");
                if self.known.contains_key(&partner) {
                    let r = Triplet::try_canonical(x, z, y | b).expect("valid union");
                    fresh.push((r, AxiomName::Contraction, [t, partner], 2));
                }
            }

            // o as I(X, Z, Y): partner I(X, ZY, W) for each free W
            let free = self.universe_all - o.vars();
            for w in free.subsets() {
                if w.is_empty() {
                    continue;
                }
                let partner = Triplet::try_canonical(x, c | b, w).expect("valid extension");
                if self.known.contains_key(&partner) {
                    let r = Triplet::try_canonical(x, c, b | w).expect("valid union");
                    fresh.push((r, AxiomName::Contraction, [partner, t], 2));
                }
            }

            // o as I(X, ZY, W); the rule is symmetric in its two premises so
            // this also covers o in the second position.
            if self.mode == Mode::Graphoid {
                for y in c.subsets() {
                    if y.is_empty() {
                        continue;
                    }
                    let z = c - y;
                    let partner = Triplet::try_canonical(x, z | b, y).expect("valid split");
                    if self.known.contains_key(&partner) {
                        let r = Triplet::try_canonical(x, z, y | b).expect("valid union");
                        fresh.push((r, AxiomName::Intersection, [t, partner], 2));
                    }
                }
            }
        }
        for (r, axiom, premises, arity) in fresh {
            self.add(r, axiom, &premises[..arity]);
        }
    }

    fn unwind(&self, t: Triplet, emitted: &mut BTreeSet<Triplet>, steps: &mut Vec<Step>) {
        if !emitted.insert(t) {
            return;
        }
        let Some((axiom, premises)) = &self.known[&t] else {
            return;
        };
        for &p in premises {
            self.unwind(p, emitted, steps);
        }
        steps.push(Step {
            axiom: *axiom,
            premises: premises.clone(),
            result: t,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::VarId;
    use std::sync::Arc;

    // x=0, z=1, y=2, w=3
    fn universe() -> Arc<Universe> {
        Arc::new(Universe::new(["x", "z", "y", "w"]).unwrap())
    }

    fn s(ids: &[usize]) -> VarSet {
        ids.iter().map(|&i| VarId::new(i)).collect()
    }

    fn t(x: &[usize], z: &[usize], y: &[usize]) -> Triplet {
        Triplet::new(s(x), s(z), s(y)).unwrap().canonical()
    }

    const X: usize = 0;
    const Z: usize = 1;
    const Y: usize = 2;
    const W: usize = 3;

    fn set_of(ts: &[Triplet]) -> BTreeSet<Triplet> {
        ts.iter().copied().collect()
    }

    #[test]
    fn decomposition_example() {
        let got = apply_axiom(AxiomName::Decomposition, &t(&[X], &[Z], &[Y, W]), None).unwrap();
        assert_eq!(got, set_of(&[t(&[X], &[Z], &[Y]), t(&[X], &[Z], &[W])]));
    }

    #[test]
    fn weak_union_example() {
        let got = apply_axiom(AxiomName::WeakUnion, &t(&[X], &[Z], &[Y, W]), None).unwrap();
        assert_eq!(got, set_of(&[t(&[X], &[Z, Y], &[W]), t(&[X], &[Z, W], &[Y])]));
    }

    #[test]
    fn contraction_example() {
        let got = apply_axiom(
            AxiomName::Contraction,
            &t(&[X], &[Z, Y], &[W]),
            Some(&t(&[X], &[Z], &[Y])),
        )
        .unwrap();
        assert_eq!(got, set_of(&[t(&[X], &[Z], &[Y, W])]));
    }

    #[test]
    fn contraction_without_match_is_empty() {
        // a=y, b=z, c=w from the x,z,y,w universe; pattern cannot match
        let got = apply_axiom(
            AxiomName::Contraction,
            &t(&[X], &[Z], &[W]),
            Some(&t(&[Y], &[Z], &[W])),
        )
        .unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn contraction_matches_flipped_premises() {
        let got = apply_axiom(
            AxiomName::Contraction,
            &t(&[X], &[Z, Y], &[W]).flip(),
            Some(&t(&[X], &[Z], &[Y]).flip()),
        )
        .unwrap();
        assert_eq!(got, set_of(&[t(&[X], &[Z], &[Y, W])]));
    }

    #[test]
    fn intersection_example() {
        let got = apply_axiom(
            AxiomName::Intersection,
            &t(&[X], &[Z, Y], &[W]),
            Some(&t(&[X], &[Z, W], &[Y])),
        )
        .unwrap();
        assert_eq!(got, set_of(&[t(&[X], &[Z], &[Y, W])]));
    }

    #[test]
    fn arity_is_checked() {
        let a = t(&[X], &[Z], &[Y]);
        assert!(matches!(
            apply_axiom(AxiomName::Contraction, &a, None),
            Err(Error::Arity { expected: 2, .. })
        ));
        assert!(matches!(
            apply_axiom(AxiomName::WeakUnion, &a, Some(&a)),
            Err(Error::Arity { expected: 1, .. })
        ));
    }

    #[test]
    fn closure_of_single_statement() {
        let m = DependencyModel::from_triplets(universe(), [t(&[X], &[Z], &[Y, W])]).unwrap();
        let c = closure(&m, Mode::SemiGraphoid).unwrap();
        let expected = set_of(&[
            t(&[X], &[Z], &[Y, W]),
            t(&[X], &[Z], &[Y]),
            t(&[X], &[Z], &[W]),
            t(&[X], &[Z, Y], &[W]),
            t(&[X], &[Z, W], &[Y]),
        ]);
        assert_eq!(c.iter().copied().collect::<BTreeSet<_>>(), expected);
        assert!(is_closed(&c, Mode::SemiGraphoid).unwrap());
        assert!(!is_closed(&m, Mode::SemiGraphoid).unwrap());
    }

    #[test]
    fn closure_of_empty_model_is_empty() {
        let m = DependencyModel::new(universe());
        assert!(closure(&m, Mode::Graphoid).unwrap().is_empty());
        assert!(is_closed(&m, Mode::SemiGraphoid).unwrap());
    }

    #[test]
    fn closure_applies_contraction() {
        let m = DependencyModel::from_triplets(
            universe(),
            [t(&[X], &[Z, Y], &[W]), t(&[X], &[Z], &[Y])],
        )
        .unwrap();
        let c = closure(&m, Mode::SemiGraphoid).unwrap();
        assert!(c.contains(&t(&[X], &[Z], &[Y, W])));
    }

    #[test]
    fn intersection_only_in_graphoid_mode() {
        let m = DependencyModel::from_triplets(
            universe(),
            [t(&[X], &[Z, Y], &[W]), t(&[X], &[Z, W], &[Y])],
        )
        .unwrap();
        let target = t(&[X], &[Z], &[Y, W]);
        assert!(!closure(&m, Mode::SemiGraphoid).unwrap().contains(&target));
        assert!(closure(&m, Mode::Graphoid).unwrap().contains(&target));
    }

    #[test]
    fn closure_limit_is_enforced() {
        let names: Vec<String> = (0..8).map(|i| format!("v{i}")).collect();
        let m = DependencyModel::new(Arc::new(Universe::new(names).unwrap()));
        let err = closure(&m, Mode::SemiGraphoid).unwrap_err();
        assert_eq!(
            err,
            Error::LimitExceeded {
                what: "closure",
                size: 8,
                limit: 7
            }
        );
        assert!(closure_with_limit(&m, Mode::SemiGraphoid, 8).is_ok());
    }

    #[test]
    fn derive_weak_union_in_one_step() {
        let m = DependencyModel::from_triplets(universe(), [t(&[X], &[Z], &[Y, W])]).unwrap();
        let target = t(&[X], &[Z, Y], &[W]);
        let trace = derive(&m, &target, Mode::SemiGraphoid).unwrap().unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].axiom, AxiomName::WeakUnion);
        assert_eq!(trace.conclusion, target);
        trace.replay(&m, Mode::SemiGraphoid).unwrap();
    }

    #[test]
    fn derive_premise_has_no_steps() {
        let premise = t(&[X], &[Z], &[Y, W]);
        let m = DependencyModel::from_triplets(universe(), [premise]).unwrap();
        let trace = derive(&m, &premise.flip(), Mode::SemiGraphoid).unwrap().unwrap();
        assert!(trace.steps.is_empty());
        trace.replay(&m, Mode::SemiGraphoid).unwrap();
    }

    #[test]
    fn derive_from_nothing_fails() {
        let m = DependencyModel::new(universe());
        assert_eq!(derive(&m, &t(&[X], &[Z], &[Y]), Mode::SemiGraphoid).unwrap(), None);
    }

    #[test]
    fn multi_step_trace_replays() {
        // x ⊥ y | z and x ⊥ w | z,y contract to x ⊥ y,w | z, then decompose/weak-union
        let m = DependencyModel::from_triplets(
            universe(),
            [t(&[X], &[Z, Y], &[W]), t(&[X], &[Z], &[Y])],
        )
        .unwrap();
        let target = t(&[X], &[Z, W], &[Y]);
        let trace = derive(&m, &target, Mode::SemiGraphoid).unwrap().unwrap();
        assert!(trace.steps.len() >= 2);
        trace.replay(&m, Mode::SemiGraphoid).unwrap();
    }
}
