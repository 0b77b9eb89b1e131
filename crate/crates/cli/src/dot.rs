//! Graphviz output: spine on one rank, pendant leaves underneath.

use std::fmt::Write;

use caterpillar_broadcast::{Broadcast, Caterpillar, Tree};

fn node_label(name: &str, b: Option<&Broadcast>, v: usize) -> String {
    match b {
        Some(b) => b.get(v).to_string(),
        None => name.to_string(),
    }
}

pub fn caterpillar_dot(ct: &Caterpillar, b: Option<&Broadcast>) -> String {
    let k = ct.length();
    let spine = |i: usize| format!("v_{i}");
    let leaf = |i: usize, j: usize| format!("l_{i}_{j}");
    let mut out = String::new();
    writeln!(out, "graph caterpillar {{").unwrap();
    writeln!(out, "  // {ct}").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    let ranks: Vec<String> = (0..=k).map(spine).collect();
    writeln!(out, "  {{ rank=same; {}; }}", ranks.join("; ")).unwrap();
    for i in 0..=k {
        let v = ct.spine_vertex(i);
        let shape = if ct.is_trunk(i) { ", style=dashed" } else { "" };
        writeln!(
            out,
            "  {} [label=\"{}\"{shape}];",
            spine(i),
            node_label(&format!("v{i}"), b, v)
        )
        .unwrap();
    }
    for i in 0..=k {
        for j in 1..=ct.lambda(i) as usize {
            let v = ct.leaf_vertex(i, j);
            writeln!(
                out,
                "  {} [label=\"{}\"];",
                leaf(i, j),
                node_label(&format!("l{i}_{j}"), b, v)
            )
            .unwrap();
        }
    }
    for i in 1..=k {
        writeln!(out, "  {} -- {} [weight=10];", spine(i - 1), spine(i)).unwrap();
    }
    for i in 0..=k {
        for j in 1..=ct.lambda(i) as usize {
            writeln!(out, "  {} -- {};", spine(i), leaf(i, j)).unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

/// Any tree, with vertices `n_0, n_1, ...` and edges in sorted order.
pub fn tree_dot(t: &Tree, b: Option<&Broadcast>) -> String {
    let mut out = String::new();
    writeln!(out, "graph tree {{").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for v in 0..t.vertex_count() {
        writeln!(
            out,
            "  n_{v} [label=\"{}\"];",
            node_label(&v.to_string(), b, v)
        )
        .unwrap();
    }
    for (u, v) in t.edges() {
        writeln!(out, "  n_{u} -- n_{v};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
