//! Text exports. Iteration is by vertex index, so output is deterministic.

use std::fmt::Write as _;

use super::{stats, OrthGraph};

/// One `u v` line per edge with `u <= v` (loops appear as `u u`).
pub fn edge_list(g: &OrthGraph) -> String {
    let mut s = String::new();
    let adj = g.adjacency();
    for u in 0..g.vertex_count() {
        for v in adj.row(u).iter().filter(|&v| v >= u) {
            let _ = writeln!(s, "{u} {v}");
        }
    }
    s
}

/// Sidecar for [`edge_list`]: `index<TAB>RREF basis` per vertex.
pub fn vertex_table(g: &OrthGraph) -> String {
    let mut s = String::new();
    for (i, x) in g.vertices().iter().enumerate() {
        let _ = writeln!(s, "{i}\t{}", x.display(g.field()));
    }
    s
}

/// Undirected DOT graph; vertices are labelled with their RREF bases.
pub fn dot(g: &OrthGraph) -> String {
    let mut s = format!(
        "graph \"{}_n{}_k{}_q{}\" {{\n",
        g.kind(),
        g.n(),
        g.k(),
        g.q()
    );
    for (i, x) in g.vertices().iter().enumerate() {
        let _ = writeln!(s, "  {i} [label=\"{}\"];", x.display(g.field()));
    }
    let adj = g.adjacency();
    for u in 0..g.vertex_count() {
        for v in adj.row(u).iter().filter(|&v| v >= u) {
            let _ = writeln!(s, "  {u} -- {v};");
        }
    }
    s.push_str("}\n");
    s
}

/// Pretty-printed JSON of [`stats`].
pub fn stats_json(g: &OrthGraph) -> String {
    serde_json::to_string_pretty(&stats(g)).expect("stats serialize") + "\n"
}
