//! Graphviz output. Nodes are emitted in index order, edges in cover order.

use std::fmt::Write;

use lmkit_core::{ConLattice, LmAlgebra, LnPSpace, Poset};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn hasse(out: &mut String, p: &Poset, labels: &[String]) {
    for (k, label) in labels.iter().enumerate() {
        writeln!(out, "  n{k} [label=\"{}\"];", escape(label)).unwrap();
    }
    for (x, y) in p.covers() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
}

fn header(name: &str) -> String {
    format!("digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=box];\n", escape(name))
}

/// Hasse diagram of the lattice order.
pub fn algebra_dot(a: &LmAlgebra, name: &str) -> String {
    let mut out = header(name);
    hasse(&mut out, a.poset(), a.poset().names());
    out.push_str("}\n");
    out
}

/// Order covers as solid edges, `f_i` as dashed labelled edges. Fixed
/// points of `f_i` are not drawn.
pub fn space_dot(x: &LnPSpace, name: &str) -> String {
    let mut out = header(name);
    hasse(&mut out, x.poset(), x.poset().names());
    for i in x.indices() {
        for p in 0..x.len() {
            let q = x.f(i, p);
            if q != p {
                writeln!(out, "  n{p} -> n{q} [style=dashed, label=\"f{i}\"];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a congruence lattice; labels list the classes.
pub fn congruence_dot(con: &ConLattice, a: &LmAlgebra, name: &str) -> String {
    let labels: Vec<String> = con
        .congruences()
        .iter()
        .zip(con.order().names())
        .map(|(c, n)| format!("{n}: {}", c.describe(a)))
        .collect();
    let mut out = header(name);
    hasse(&mut out, con.order(), &labels);
    out.push_str("}\n");
    out
}
