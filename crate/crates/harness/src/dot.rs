//! Graphviz export of Hasse diagrams.

use std::fmt::Write;

use crate::io::Loaded;

/// Bottom-to-top layered digraph; elements of equal height share a rank group.
pub fn to_dot(l: &Loaded) -> String {
    let p = &l.poset;
    let heights = p.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    for x in 0..p.len() {
        let label = l.label(x).replace('\\', "\\\\").replace('"', "\\\"");
        writeln!(s, "  n{x} [label=\"{label}\"];").unwrap();
    }
    if !p.is_empty() {
        for h in 0..=top {
            let group: Vec<String> = (0..p.len())
                .filter(|&x| heights[x] == h)
                .map(|x| format!("n{x};"))
                .collect();
            writeln!(s, "  {{ rank=same; {} }}", group.join(" ")).unwrap();
        }
    }
    for (u, v) in p.covers() {
        writeln!(s, "  n{u} -> n{v};").unwrap();
    }
    s.push_str("}\n");
    s
}
