//! Graphviz output. Vertices are emitted in index order, then one edge per
//! vertex; fixed points appear as self-loops.

use std::fmt::Write;

use padic_lift::graph::FunctionalGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(name: &str, g: &FunctionalGraph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  label={};", quote(name)).unwrap();
    for v in 0..g.size() {
        match labels.and_then(|l| l.get(v)) {
            Some(label) => writeln!(out, "  {v} [label={}];", quote(label)).unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for v in 0..g.size() {
        writeln!(out, "  {v} -> {};", g.successor(v)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Index over a tower: one node per level file, with reduction edges from
/// each level to the one below.
pub fn tower_index(p: u32, files: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"tower\" {{").unwrap();
    writeln!(out, "  label={};", quote(&format!("tower over Z/{p}^n"))).unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, file) in files.iter().enumerate() {
        writeln!(out, "  level_{} [label={}];", i + 1, quote(file)).unwrap();
    }
    for i in 1..files.len() {
        writeln!(out, "  level_{} -> level_{} [label=\"mod {p}^{i}\"];", i + 1, i).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_and_self_loop() {
        let g = FunctionalGraph::from_successors(vec![1, 0, 2]).unwrap();
        let dot = graph_to_dot("g", &g, None);
        assert!(dot.starts_with("digraph \"g\" {"));
        assert!(dot.contains("  0 -> 1;\n  1 -> 0;\n  2 -> 2;\n"));
        let labelled = graph_to_dot("g", &g, Some(&["a\"b".to_string()]));
        assert!(labelled.contains("0 [label=\"a\\\"b\"];"));
    }

    #[test]
    fn index_links_levels() {
        let idx = tower_index(2, &["level_1.dot".into(), "level_2.dot".into()]);
        assert!(idx.contains("level_2 -> level_1"));
    }
}
