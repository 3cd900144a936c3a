//! Hasse diagrams in Graphviz DOT, edges pointing from lower to upper covers.

use std::fmt::Write;

use crate::lattice::ConceptLattice;
use crate::poset::{FiniteLattice, FinitePoset};
use crate::reduction::Partition;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Distinct fill colours, evenly spaced in hue.
fn block_colour(b: usize, blocks: usize) -> String {
    format!("{:.3} 0.350 0.950", b as f64 / blocks.max(1) as f64)
}

fn render(poset: &FinitePoset, labels: &[String], blocks: Option<&Partition>) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, label) in labels.iter().enumerate() {
        write!(out, "  n{i} [label=\"{}\"", escape(label)).unwrap();
        if let Some(p) = blocks {
            let b = p.block_of(i);
            write!(out, ", style=filled, fillcolor=\"{}\"", block_colour(b, p.len())).unwrap();
        }
        out.push_str("];\n");
    }
    for (lo, hi) in poset.cover_edges() {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Any finite poset, nodes labelled by the poset's own labels.
pub fn export_dot(poset: &FinitePoset, blocks: Option<&Partition>) -> String {
    render(poset, poset.labels(), blocks)
}

/// A concept lattice with id, extent and intent on each node.
pub fn export_lattice_dot(lat: &ConceptLattice, blocks: Option<&Partition>) -> String {
    let ctx = lat.context();
    let labels: Vec<String> = (0..lat.len())
        .map(|i| {
            let c = lat.concept(i);
            format!(
                "{}\n{{{}}}\n{{{}}}",
                lat.id(i),
                ctx.object_names(&c.extent).join(","),
                ctx.attribute_names(&c.intent).join(",")
            )
        })
        .collect();
    render(lat.poset(), &labels, blocks)
}
