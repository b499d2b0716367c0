//! Graphviz DOT export. Nodes appear in declaration order, edges sorted by
//! endpoint index, so output is byte-stable.

use std::fmt::Write;

use crate::graph::{Dag, UndirectedGraph};

/// Attribute drawn on deterministic nodes.
pub const DETERMINISTIC_ATTR: &str = "[peripheries=2]";

/// Names that are not plain DOT identifiers are quoted.
fn id(name: &str) -> String {
    let plain = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

pub fn dag_to_dot(g: &Dag) -> String {
    let u = g.universe();
    let mut out = String::from("digraph {\n");
    for v in u.ids() {
        if g.deterministic().contains(v) {
            writeln!(out, "  {} {};", id(u.name(v)), DETERMINISTIC_ATTR).unwrap();
        } else {
            writeln!(out, "  {};", id(u.name(v))).unwrap();
        }
    }
    for (p, c) in g.edges() {
        writeln!(out, "  {} -> {};", id(u.name(p)), id(u.name(c))).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn undirected_to_dot(g: &UndirectedGraph) -> String {
    let u = g.universe();
    let mut out = String::from("graph {\n");
    for v in u.ids() {
        writeln!(out, "  {};", id(u.name(v))).unwrap();
    }
    for (a, b) in g.links() {
        writeln!(out, "  {} -- {};", id(u.name(a)), id(u.name(b))).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::var::{VarId, VarSet};

    #[test]
    fn chain_export() {
        let u = random::universe(3);
        let g = Dag::from_edges(u, &[(VarId::new(0), VarId::new(1)), (VarId::new(1), VarId::new(2))], VarSet::EMPTY)
            .unwrap();
        assert_eq!(dag_to_dot(&g), "digraph {\n  a;\n  b;\n  c;\n  a -> b;\n  b -> c;\n}\n");
    }

    #[test]
    fn odd_names_are_quoted() {
        assert_eq!(id("x1"), "x1");
        assert_eq!(id("1x"), "\"1x\"");
        assert_eq!(id("a-b"), "\"a-b\"");
        assert_eq!(id("q\""), "\"q\\\"\"");
    }
}
