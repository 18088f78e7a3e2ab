//! Graphviz output.
//!
//! A corelation renders as a wire diagram: one terminal per domain and
//! codomain element, one junction per block, one edge per terminal. A term
//! renders as its string diagram, one vertex per generator occurrence.
//! Output order depends only on the input, so renders are byte-stable.

use std::fmt::Write;

use crate::arrows::{Corelation, Prop};
use crate::theory::{Signature, Term, TypeError, DELTA, EPSILON, ETA, MU};

pub fn corelation_dot(c: &Corelation) -> String {
    let (n, m) = (c.dom(), c.cod());
    let mut out = String::from("digraph corelation {\n");
    if n + m == 0 {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=LR;\n");
    out.push_str("  edge [arrowhead=none];\n");
    terminals(&mut out, "in", n, "source");
    terminals(&mut out, "out", m, "sink");
    for b in 0..c.blocks().len() {
        writeln!(out, "  j{b} [shape=point, width=0.15];").unwrap();
    }
    for (b, block) in c.blocks().iter().enumerate() {
        for &x in block {
            if x < n {
                writeln!(out, "  in{x} -> j{b};").unwrap();
            } else {
                writeln!(out, "  j{b} -> out{};", x - n).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

fn terminals(out: &mut String, prefix: &str, count: usize, rank: &str) {
    if count == 0 {
        return;
    }
    writeln!(out, "  subgraph {prefix} {{").unwrap();
    writeln!(out, "    rank={rank};").unwrap();
    for i in 0..count {
        writeln!(out, "    {prefix}{i} [shape=circle, label=\"{i}\"];").unwrap();
    }
    out.push_str("  }\n");
}

/// The string diagram of a term. Frobenius generators are drawn as dots,
/// anything else as a labelled box.
pub fn term_dot(t: &Term, sig: &Signature) -> Result<String, TypeError> {
    let (n, m) = t.typecheck(sig)?;
    let mut diagram = Diagram {
        sig,
        nodes: String::new(),
        edges: String::new(),
        count: 0,
    };
    let inputs: Vec<String> = (0..n).map(|i| format!("in{i}")).collect();
    let outputs = diagram.walk(t, inputs)?;
    for (j, src) in outputs.iter().enumerate() {
        writeln!(diagram.edges, "  {src} -> out{j};").unwrap();
    }

    let mut out = String::from("digraph term {\n");
    if n + m + diagram.count == 0 {
        out.push_str("}\n");
        return Ok(out);
    }
    out.push_str("  rankdir=LR;\n");
    out.push_str("  edge [arrowhead=none];\n");
    terminals(&mut out, "in", n, "source");
    terminals(&mut out, "out", m, "sink");
    out.push_str(&diagram.nodes);
    out.push_str(&diagram.edges);
    out.push_str("}\n");
    Ok(out)
}

struct Diagram<'a> {
    sig: &'a Signature,
    nodes: String,
    edges: String,
    count: usize,
}

impl Diagram<'_> {
    /// Threads the wire sources `inputs` through `t`, returning the sources
    /// of its output wires.
    fn walk(&mut self, t: &Term, inputs: Vec<String>) -> Result<Vec<String>, TypeError> {
        Ok(match t {
            Term::Empty | Term::Id(_) => inputs,
            Term::Sym(n, _) => {
                let mut wires = inputs;
                wires.rotate_left(*n);
                wires
            }
            Term::Gen(name) => {
                let k = self.count;
                self.count += 1;
                let coarity = self.sig.get(name).map_or(0, |g| g.coarity);
                let style = if [MU, ETA, DELTA, EPSILON].contains(&name.as_str()) {
                    format!("shape=point, width=0.15, xlabel=\"{name}\"")
                } else {
                    format!("shape=box, label=\"{name}\"")
                };
                writeln!(self.nodes, "  g{k} [{style}];").unwrap();
                for src in inputs {
                    writeln!(self.edges, "  {src} -> g{k};").unwrap();
                }
                vec![format!("g{k}"); coarity]
            }
            Term::Seq(a, b) => {
                let mid = self.walk(a, inputs)?;
                self.walk(b, mid)?
            }
            Term::Tensor(a, b) => {
                let (split, _) = a.typecheck(self.sig)?;
                let mut top = inputs;
                let bottom = top.split_off(split);
                let mut out = self.walk(a, top)?;
                out.extend(self.walk(b, bottom)?);
                out
            }
        })
    }
}
