//! Graphviz output. Nodes and edges are emitted in index order so the text
//! is stable across runs.

use std::fmt::Write;

use crate::poset_space::SpecSpace;
use crate::spectrum::SpectrumSpace;
use crate::thick_lattice::ThickLattice;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn graph(name: &str, nodes: &[(String, bool)], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, (label, marked)) in nodes.iter().enumerate() {
        let style = if *marked {
            ", style=filled, fillcolor=lightgray"
        } else {
            ""
        };
        writeln!(out, "  n{i} [label={}{style}];", quote(label)).unwrap();
    }
    for &(a, b) in edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the specialization order, closed points at the bottom.
pub fn space_dot(space: &SpecSpace) -> String {
    let nodes: Vec<(String, bool)> = space.points().iter().map(|p| (p.clone(), false)).collect();
    graph(space.name().unwrap_or("space"), &nodes, &space.covers())
}

/// Hasse diagram of a lattice with objects shaded.
pub fn lattice_dot(lat: &ThickLattice, name: &str) -> String {
    let nodes: Vec<(String, bool)> = (0..lat.len())
        .map(|a| (lat.id(a).to_string(), lat.is_object(a)))
        .collect();
    graph(name, &nodes, &lat.covers())
}

/// Inclusion order of the primes of a spectrum.
pub fn spectrum_dot(spec: &SpectrumSpace, name: &str) -> String {
    let sp = spec.specialization_space();
    let nodes: Vec<(String, bool)> = spec.labels().iter().map(|p| (p.clone(), false)).collect();
    graph(name, &nodes, &sp.covers())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski_dot() {
        let dot = space_dot(&SpecSpace::sierpinski());
        assert_eq!(
            dot,
            "digraph \"sierpinski\" {\n  rankdir=BT;\n  n0 [label=\"a\"];\n  n1 [label=\"b\"];\n  n0 -> n1;\n}\n"
        );
    }

    #[test]
    fn lattice_marks_objects() {
        let dot = lattice_dot(&ThickLattice::pentagon(), "n5");
        assert!(dot.contains("n4 [label=\"1\", style=filled"));
        assert_eq!(dot.matches("fillcolor").count(), 5);
        assert_eq!(dot.matches("->").count(), 5);
    }

    #[test]
    fn escapes_quotes() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
