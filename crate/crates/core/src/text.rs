//! Line-oriented text formats.
//!
//! All formats share the same lexical rules: `#` starts a comment, blank
//! lines are ignored, and each remaining line is one directive.
//!
//! Graphs:
//!
//! ```text
//! node a
//! node d det        # deterministic node
//! edge a d          # directed edge a -> d
//! link a b          # undirected link (undirected graphs only)
//! ```
//!
//! Models:
//!
//! ```text
//! var x z y w
//! indep x | z | y,w
//! indep a , b | - | c   # `-` is the empty set
//! ```
//!
//! Protocols:
//!
//! ```text
//! order a b c
//! bnd a : -
//! bnd b : a
//! bnd c : a, b
//! ```

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Dag, UndirectedGraph};
use crate::model::DependencyModel;
use crate::protocol::StratifiedProtocol;
use crate::triplet::Triplet;
use crate::var::{Universe, VarId, VarSet};

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn directives(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_error(line: usize, directive: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        directive: directive.to_string(),
        message: message.into(),
    }
}

/// Attaches line context to errors raised while handling one directive.
fn at(line: usize, directive: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        e @ Error::Parse { .. } => e,
        other => parse_error(line, directive, other.to_string()),
    }
}

/// A parsed graph file of either flavor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph {
    Directed(Dag),
    Undirected(UndirectedGraph),
}

/// Parses a graph file. Files with `link` directives are undirected; all
/// others, including edgeless ones, are DAGs.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, VarId> = HashMap::new();
    let mut det = VarSet::EMPTY;
    let mut edges: Vec<(VarId, VarId)> = Vec::new();
    let mut links: Vec<(VarId, VarId)> = Vec::new();
    // first line of each flavor, for mixed-file errors
    let mut first_edge: Option<(usize, String)> = None;
    let mut first_link: Option<(usize, String)> = None;

    for (line, directive) in directives(text) {
        let tokens: Vec<&str> = directive.split_whitespace().collect();
        let lookup = |name: &str| {
            ids.get(name)
                .copied()
                .ok_or_else(|| parse_error(line, directive, format!("undeclared node {name}")))
        };
        match tokens.as_slice() {
            ["node", name, rest @ ..] => {
                let flag = match rest {
                    [] => false,
                    ["det"] => true,
                    _ => return Err(parse_error(line, directive, "expected `node <name> [det]`")),
                };
                if ids.contains_key(*name) {
                    return Err(parse_error(line, directive, format!("node {name} declared twice")));
                }
                let id = VarId::new(names.len().min(63));
                if names.len() >= 64 {
                    return Err(parse_error(line, directive, "more than 64 nodes"));
                }
                // validates the name
                Universe::new([*name]).map_err(at(line, directive))?;
                names.push(name.to_string());
                ids.insert(name.to_string(), id);
                if flag {
                    det.insert(id);
                }
            }
            ["edge", p, c] => {
                let (p, c) = (lookup(p)?, lookup(c)?);
                if edges.contains(&(p, c)) {
                    return Err(parse_error(line, directive, "duplicate edge"));
                }
                edges.push((p, c));
                first_edge.get_or_insert((line, directive.to_string()));
            }
            ["link", a, b] => {
                let (a, b) = (lookup(a)?, lookup(b)?);
                if a == b {
                    return Err(parse_error(line, directive, "self-loop"));
                }
                if links.contains(&(a, b)) || links.contains(&(b, a)) {
                    return Err(parse_error(line, directive, "duplicate link"));
                }
                links.push((a, b));
                first_link.get_or_insert((line, directive.to_string()));
            }
            ["node" | "edge" | "link", ..] => {
                let expected = match tokens[0] {
                    "node" => "expected `node <name> [det]`",
                    "edge" => "expected `edge <parent> <child>`",
                    _ => "expected `link <a> <b>`",
                };
                return Err(parse_error(line, directive, expected));
            }
            [other, ..] => return Err(parse_error(line, directive, format!("unknown directive {other}"))),
            [] => unreachable!("blank lines are skipped"),
        }
    }

    let universe = Arc::new(Universe::new(names)?);
    match (first_edge, first_link) {
        (Some(_), Some((line, directive))) => Err(parse_error(
            line,
            &directive,
            "graph mixes directed edges and undirected links",
        )),
        (_, Some((line, directive))) => {
            if !det.is_empty() {
                return Err(parse_error(line, &directive, "undirected graphs cannot have deterministic nodes"));
            }
            Ok(Graph::Undirected(UndirectedGraph::from_links(universe, &links)?))
        }
        _ => Ok(Graph::Directed(Dag::from_edges(universe, &edges, det)?)),
    }
}

pub fn parse_dag(text: &str) -> Result<Dag> {
    match parse_graph(text)? {
        Graph::Directed(g) => Ok(g),
        Graph::Undirected(_) => Err(Error::Query("expected a directed graph, found links".into())),
    }
}

/// Parses an undirected graph. A file with only `node` lines is accepted as
/// an edgeless graph.
pub fn parse_undirected(text: &str) -> Result<UndirectedGraph> {
    match parse_graph(text)? {
        Graph::Undirected(g) => Ok(g),
        Graph::Directed(g) if g.edges().is_empty() && g.deterministic().is_empty() => {
            Ok(UndirectedGraph::empty(g.universe().clone()))
        }
        Graph::Directed(_) => Err(Error::Query("expected an undirected graph, found directed edges".into())),
    }
}

/// Comma-separated names, or `-` for the empty set.
fn parse_set(universe: &Universe, list: &str) -> Result<VarSet> {
    let list = list.trim();
    if list == "-" {
        return Ok(VarSet::EMPTY);
    }
    let mut out = VarSet::EMPTY;
    for name in list.split(',') {
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Query(format!("empty name in list `{list}`")));
        }
        let v = universe.id(name)?;
        if out.contains(v) {
            return Err(Error::Query(format!("{name} listed twice")));
        }
        out.insert(v);
    }
    Ok(out)
}

/// Parses `x-list | z-list | y-list`; the result is not canonicalized.
pub fn parse_triplet(universe: &Universe, literal: &str) -> Result<Triplet> {
    let parts: Vec<&str> = literal.split('|').collect();
    let [x, z, y] = parts.as_slice() else {
        return Err(Error::Query(format!(
            "expected `x | z | y`, got `{}`",
            literal.trim()
        )));
    };
    let x = parse_set(universe, x)?;
    let z = parse_set(universe, z)?;
    let y = parse_set(universe, y)?;
    Triplet::new(x, z, y)
}

pub fn parse_model(text: &str) -> Result<DependencyModel> {
    let mut names: Vec<String> = Vec::new();
    let mut statements: Vec<(usize, &str, &str)> = Vec::new();
    for (line, directive) in directives(text) {
        let (head, rest) = directive.split_once(char::is_whitespace).unwrap_or((directive, ""));
        match head {
            "var" => {
                if !statements.is_empty() {
                    return Err(parse_error(line, directive, "var declarations must precede indep lines"));
                }
                let new: Vec<&str> = rest.split_whitespace().collect();
                if new.is_empty() {
                    return Err(parse_error(line, directive, "expected `var <name> ...`"));
                }
                for name in new {
                    if names.iter().any(|n| n == name) {
                        return Err(parse_error(line, directive, format!("variable {name} declared twice")));
                    }
                    Universe::new([name]).map_err(at(line, directive))?;
                    names.push(name.to_string());
                }
            }
            "indep" => statements.push((line, directive, rest)),
            other => return Err(parse_error(line, directive, format!("unknown directive {other}"))),
        }
    }
    if names.len() > 64 {
        return Err(Error::UniverseTooLarge(names.len()));
    }
    let universe = Arc::new(Universe::new(names)?);
    let mut m = DependencyModel::new(universe.clone());
    for (line, directive, body) in statements {
        let t = parse_triplet(&universe, body).map_err(at(line, directive))?;
        m.insert(t).map_err(at(line, directive))?;
    }
    Ok(m)
}

pub fn parse_protocol(text: &str) -> Result<StratifiedProtocol> {
    let mut universe: Option<(usize, String, Arc<Universe>, Vec<VarId>)> = None;
    let mut boundary: Vec<Option<VarSet>> = Vec::new();
    for (line, directive) in directives(text) {
        let (head, rest) = directive.split_once(char::is_whitespace).unwrap_or((directive, ""));
        match head {
            "order" => {
                if universe.is_some() {
                    return Err(parse_error(line, directive, "second order line"));
                }
                let listed: Vec<&str> = rest.split_whitespace().collect();
                if listed.is_empty() {
                    return Err(parse_error(line, directive, "expected `order <name> ...`"));
                }
                let mut distinct: Vec<&str> = Vec::new();
                for name in &listed {
                    if !distinct.contains(name) {
                        distinct.push(name);
                    }
                }
                let u = Arc::new(Universe::new(distinct).map_err(at(line, directive))?);
                let order = listed.iter().map(|n| u.id(n)).collect::<Result<Vec<_>>>()?;
                boundary = vec![None; u.len()];
                universe = Some((line, directive.to_string(), u, order));
            }
            "bnd" => {
                let Some((_, _, u, _)) = &universe else {
                    return Err(parse_error(line, directive, "bnd before order"));
                };
                let Some((name, list)) = rest.split_once(':') else {
                    return Err(parse_error(line, directive, "expected `bnd <name> : <list>`"));
                };
                let v = u.id(name.trim()).map_err(at(line, directive))?;
                if boundary[v.index()].is_some() {
                    return Err(parse_error(line, directive, format!("second bnd line for {}", name.trim())));
                }
                boundary[v.index()] = Some(parse_set(u, list).map_err(at(line, directive))?);
            }
            other => return Err(parse_error(line, directive, format!("unknown directive {other}"))),
        }
    }
    let Some((line, directive, u, order)) = universe else {
        return Err(parse_error(0, "", "missing order line"));
    };
    let mut sets = Vec::with_capacity(u.len());
    for (i, b) in boundary.into_iter().enumerate() {
        match b {
            Some(b) => sets.push(b),
            None => {
                return Err(parse_error(
                    line,
                    &directive,
                    format!("no bnd line for {}", u.names()[i]),
                ))
            }
        }
    }
    StratifiedProtocol::new(u, order, sets)
}

pub fn write_dag(g: &Dag) -> String {
    let u = g.universe();
    let mut out = String::new();
    for v in u.ids() {
        if g.deterministic().contains(v) {
            writeln!(out, "node {} det", u.name(v)).unwrap();
        } else {
            writeln!(out, "node {}", u.name(v)).unwrap();
        }
    }
    for (p, c) in g.edges() {
        writeln!(out, "edge {} {}", u.name(p), u.name(c)).unwrap();
    }
    out
}

pub fn write_undirected(g: &UndirectedGraph) -> String {
    let u = g.universe();
    let mut out = String::new();
    for v in u.ids() {
        writeln!(out, "node {}", u.name(v)).unwrap();
    }
    for (a, b) in g.links() {
        writeln!(out, "link {} {}", u.name(a), u.name(b)).unwrap();
    }
    out
}

pub fn write_triplets<'a>(universe: &Universe, triplets: impl IntoIterator<Item = &'a Triplet>) -> String {
    let mut out = String::new();
    if !universe.is_empty() {
        writeln!(out, "var {}", universe.names().join(" ")).unwrap();
    }
    for t in triplets {
        writeln!(out, "indep {}", t.display(universe)).unwrap();
    }
    out
}

/// `var` header then one `indep` line per triplet, in canonical order.
pub fn write_model(m: &DependencyModel) -> String {
    write_triplets(m.universe(), m.iter())
}

/// `order` line then one `bnd` line per variable. Boundary members are
/// listed in protocol order. Assumes `p` has no duplicate order entries.
pub fn write_protocol(p: &StratifiedProtocol) -> String {
    let u = p.universe();
    let mut out = String::new();
    let order: Vec<&str> = p.order().iter().map(|&v| u.name(v)).collect();
    writeln!(out, "order {}", order.join(" ")).unwrap();
    for &v in p.order() {
        // members listed in protocol order
        let b = p.boundary(v);
        let members: Vec<&str> = p.order().iter().filter(|&&m| b.contains(m)).map(|&m| u.name(m)).collect();
        let list = if members.is_empty() { "-".to_string() } else { members.join(",") };
        writeln!(out, "bnd {} : {}", u.name(v), list).unwrap();
    }
    out
}
