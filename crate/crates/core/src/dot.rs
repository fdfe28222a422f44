//! Graphviz rendering of instances: S-edges bold, T-edges thin and directed.

use std::fmt::Write;

use crate::bitset::EdgeSet;
use crate::instance::Instance;

pub fn to_dot(inst: &Instance) -> String {
    render(inst, None)
}

/// As [`to_dot`], with the S-edges of `a` blue and the others red.
pub fn to_dot_partition(inst: &Instance, a: &EdgeSet) -> String {
    render(inst, Some(a))
}

fn render(inst: &Instance, a: Option<&EdgeSet>) -> String {
    let mut out = String::from("digraph instance {\n  node [shape=circle];\n");
    for v in 0..inst.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    let mut s = inst.s_edges().to_vec();
    s.sort_by_key(|e| e.id);
    for e in s {
        let color = match a {
            Some(a) if a.contains(e.id) => ", color=blue",
            Some(_) => ", color=red",
            None => "",
        };
        let _ = match e.head {
            Some(h) => {
                let t = if h == e.v { e.u } else { e.v };
                writeln!(out, "  {t} -> {h} [penwidth=3{color}, label=\"{}\"];", e.id)
            }
            None => writeln!(out, "  {} -> {} [penwidth=3, dir=none{color}, label=\"{}\"];", e.u, e.v, e.id),
        };
    }
    let mut t = inst.t_edges().to_vec();
    t.sort_by_key(|e| e.id);
    for e in t {
        let _ = writeln!(out, "  {} -> {} [penwidth=1, label=\"{}\"];", e.tail, e.head, e.id);
    }
    out.push_str("}\n");
    out
}
