//! NNF circuit text format.
//!
//! Header `nnf <node-count> <wire-count> <var-count>`, then one line per
//! node in index order:
//!
//! * `L <lit>` — literal, 1-based signed variable index
//! * `T` / `F` — constants
//! * `A <c> <id...>` — AND with `c` children (indices of earlier lines)
//! * `O <d> <c> <id...>` — OR; `d` is the 1-based decision variable for
//!   decision-shaped nodes, `0` otherwise
//!
//! The last node is the root. Emission is canonical: parse followed by emit
//! reproduces the bytes.

use crate::CliError;
use nesykc_core::circuit::CircuitBuilder;
use nesykc_core::structure::or_decision_vars;
use nesykc_core::{Circuit, Node, NodeId, VariableSet};
use std::fmt::Write as _;

pub fn emit_nnf(c: &Circuit) -> String {
    let decisions = or_decision_vars(c);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "nnf {} {} {}",
        c.node_count(),
        c.wire_count(),
        c.vars().len()
    );
    for (i, n) in c.nodes().iter().enumerate() {
        match n {
            Node::True => out.push('T'),
            Node::False => out.push('F'),
            Node::Lit { var, positive } => {
                let lit = (*var as i64 + 1) * if *positive { 1 } else { -1 };
                let _ = write!(out, "L {lit}");
            }
            Node::And(cs) => {
                let _ = write!(out, "A {}", cs.len());
                for ch in cs {
                    let _ = write!(out, " {}", ch.index());
                }
            }
            Node::Or(cs) => {
                let d = decisions[i].map_or(0, |m| m as u64 + 1);
                let _ = write!(out, "O {d} {}", cs.len());
                for ch in cs {
                    let _ = write!(out, " {}", ch.index());
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Parse the text format; variables are named `Y1..Yk`.
pub fn parse_nnf(text: &str) -> Result<Circuit, CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::input("empty circuit file"))?;
    let mut hp = header.split_whitespace();
    if hp.next() != Some("nnf") {
        return Err(CliError::input(
            "circuit file must start with an `nnf` header",
        ));
    }
    let node_count: usize = parse_num(hp.next(), "node count")?;
    let wire_count: usize = parse_num(hp.next(), "wire count")?;
    let var_count: usize = parse_num(hp.next(), "variable count")?;
    if hp.next().is_some() {
        return Err(CliError::input("trailing tokens in the nnf header"));
    }
    if var_count == 0 || node_count == 0 {
        return Err(CliError::input(
            "circuit needs at least one variable and one node",
        ));
    }

    let vars = VariableSet::numbered(var_count).expect("non-zero count");
    let mut nodes: Vec<Node> = Vec::with_capacity(node_count);
    let mut wires = 0usize;
    for (i, line) in lines.enumerate() {
        if i >= node_count {
            if line.trim().is_empty() {
                continue;
            }
            return Err(CliError::input("more node lines than the header declares"));
        }
        let mut parts = line.split_whitespace();
        let node = match parts.next() {
            Some("T") => Node::True,
            Some("F") => Node::False,
            Some("L") => {
                let lit: i64 = parse_num(parts.next(), "literal")?;
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > var_count {
                    return Err(CliError::input(format!("literal {lit} out of range")));
                }
                Node::Lit {
                    var: (var - 1) as u32,
                    positive: lit > 0,
                }
            }
            Some("A") => {
                let c: usize = parse_num(parts.next(), "child count")?;
                Node::And(read_children(&mut parts, c, i)?)
            }
            Some("O") => {
                let _decision: usize = parse_num(parts.next(), "decision variable")?;
                let c: usize = parse_num(parts.next(), "child count")?;
                Node::Or(read_children(&mut parts, c, i)?)
            }
            other => return Err(CliError::input(format!("unknown node line {other:?}"))),
        };
        if parts.next().is_some() {
            return Err(CliError::input(format!("trailing tokens on node line {i}")));
        }
        wires += node.children().len();
        nodes.push(node);
    }
    if nodes.len() != node_count {
        return Err(CliError::input(format!(
            "header declares {node_count} nodes, found {}",
            nodes.len()
        )));
    }
    if wires != wire_count {
        return Err(CliError::input(format!(
            "header declares {wire_count} wires, found {wires}"
        )));
    }
    let root = NodeId::new(nodes.len() - 1);
    Ok(CircuitBuilder::from_parts(vars, nodes, root))
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T, CliError> {
    tok.ok_or_else(|| CliError::input(format!("missing {what}")))?
        .parse()
        .map_err(|_| CliError::input(format!("malformed {what}")))
}

fn read_children(
    parts: &mut std::str::SplitWhitespace<'_>,
    count: usize,
    line: usize,
) -> Result<Vec<NodeId>, CliError> {
    if count == 0 {
        return Err(CliError::input(format!("node line {line} has no children")));
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let id: usize = parse_num(parts.next(), "child id")?;
        if id >= line {
            return Err(CliError::input(format!(
                "node line {line} references child {id}; children must come first"
            )));
        }
        out.push(NodeId::new(id));
    }
    Ok(out)
}
