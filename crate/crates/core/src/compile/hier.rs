//! Tractable hierarchical fragments.
//!
//! Tree hierarchies compile by a bottom-up decision per vertex (select the
//! vertex and leave the child subtrees free, or deselect it and zero the
//! whole subtree). Tree hierarchies with assumed exclusions have exactly
//! `|V| + 1` models — the null state and one root chain per vertex — and
//! compile as a chain-sharing disjunction over them. DAG hierarchies and
//! exclusion graphs emit a 2-Horn CNF instead (their counting queries are
//! not tractable; MPE goes through the closure solver).

use crate::circuit::{Circuit, CircuitBuilder, NodeId};
use crate::compile::CompileError;
use crate::theory::{DirectedGraphPayload, Labeling, Language, Theory};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

fn tree_parts(
    t: &Theory,
    expected: Language,
) -> Result<(&DirectedGraphPayload, &[usize]), CompileError> {
    if t.language() != expected {
        return Err(CompileError::WrongLanguage {
            expected: expected.as_str(),
            got: t.language(),
        });
    }
    let g = t.digraph().expect("tree payload");
    let vars = match &g.labeling {
        Labeling::Vertex(vs) => vs.as_slice(),
        Labeling::Edge(_) => unreachable!("validated at construction"),
    };
    Ok((g, vars))
}

struct TreeShape {
    root: usize,
    children: Vec<Vec<usize>>,
    /// Vertices in post-order (children before parents).
    postorder: Vec<usize>,
}

fn tree_shape(g: &DirectedGraphPayload) -> TreeShape {
    let nv = g.vertices.len();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut indeg = vec![0usize; nv];
    for &(u, v) in &g.edges {
        children[u].push(v);
        indeg[v] += 1;
    }
    let root = (0..nv)
        .find(|&v| indeg[v] == 0)
        .expect("validated tree has a root");
    // Iterative post-order.
    let mut postorder = Vec::with_capacity(nv);
    let mut stack = vec![(root, false)];
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            postorder.push(v);
        } else {
            stack.push((v, true));
            for &c in children[v].iter().rev() {
                stack.push((c, false));
            }
        }
    }
    TreeShape {
        root,
        children,
        postorder,
    }
}

/// Compile a tree hierarchy: models are exactly the closures of the tree.
pub fn compile_tree_hier(t: &Theory) -> Result<Circuit, CompileError> {
    let (g, vertex_vars) = tree_parts(t, Language::TreeHier)?;
    let shape = tree_shape(g);
    let mut b = CircuitBuilder::new(t.vars().clone());
    let nv = g.vertices.len();
    let mut zero: Vec<Option<NodeId>> = vec![None; nv]; // subtree all unselected
    let mut free: Vec<Option<NodeId>> = vec![None; nv]; // subtree unconstrained from above

    for &v in &shape.postorder {
        let var = vertex_vars[v];
        let neg = b.lit(var, false);
        let mut z_parts = vec![neg];
        z_parts.extend(shape.children[v].iter().map(|&c| zero[c].unwrap()));
        let z = b.and(z_parts);

        let pos = b.lit(var, true);
        let mut f_parts = vec![pos];
        f_parts.extend(shape.children[v].iter().map(|&c| free[c].unwrap()));
        let selected = b.and(f_parts);
        let f = b.or(vec![selected, z]);

        zero[v] = Some(z);
        free[v] = Some(f);
    }
    Ok(b.finish(free[shape.root].unwrap()))
}

/// Compile a tree hierarchy with assumed exclusions: the null state plus,
/// for each vertex, the state selecting exactly that vertex and its
/// ancestors. Chains share their ancestor prefix through one node per
/// vertex.
pub fn compile_te_hier(t: &Theory) -> Result<Circuit, CompileError> {
    let (g, vertex_vars) = tree_parts(t, Language::TeHier)?;
    let shape = tree_shape(g);
    let mut b = CircuitBuilder::new(t.vars().clone());
    let nv = g.vertices.len();
    let mut zero: Vec<Option<NodeId>> = vec![None; nv];
    // chain[v]: v selected, plus at most one child chain below, everything
    // else unselected.
    let mut chain: Vec<Option<NodeId>> = vec![None; nv];

    for &v in &shape.postorder {
        let var = vertex_vars[v];
        let neg = b.lit(var, false);
        let mut z_parts = vec![neg];
        z_parts.extend(shape.children[v].iter().map(|&c| zero[c].unwrap()));
        let z = b.and(z_parts);
        zero[v] = Some(z);

        let pos = b.lit(var, true);
        let kids = &shape.children[v];
        let below = if kids.is_empty() {
            None
        } else {
            // Suffix products of zeroed subtrees, then a decision chain:
            // descend into child i, or zero it and look further right.
            let mut zero_suffix: Vec<Option<NodeId>> = vec![None; kids.len() + 1];
            for i in (0..kids.len()).rev() {
                let z_i = zero[kids[i]].unwrap();
                zero_suffix[i] = Some(match zero_suffix[i + 1] {
                    None => z_i,
                    Some(rest) => b.and(vec![z_i, rest]),
                });
            }
            let mut g_next: Option<NodeId> = None;
            for i in (0..kids.len()).rev() {
                let descend = match zero_suffix[i + 1] {
                    None => chain[kids[i]].unwrap(),
                    Some(rest) => {
                        let d = chain[kids[i]].unwrap();
                        b.and(vec![d, rest])
                    }
                };
                let skip = match g_next {
                    None => zero[kids[i]].unwrap(),
                    Some(g) => {
                        let z = zero[kids[i]].unwrap();
                        b.and(vec![z, g])
                    }
                };
                g_next = Some(b.or(vec![descend, skip]));
            }
            g_next
        };
        let c = match below {
            None => pos,
            Some(below) => b.and(vec![pos, below]),
        };
        chain[v] = Some(c);
    }
    let d = chain[shape.root].unwrap();
    let z = zero[shape.root].unwrap();
    let root = b.or(vec![d, z]);
    Ok(b.finish(root))
}

/// Emit the 2-Horn CNF of a hierarchy/exclusion theory in DIMACS form:
/// `parent or not child` per hierarchy edge, `not a or not b` per exclusion.
/// Variables are numbered 1..k in variable-set order.
pub fn emit_hex_2horn(t: &Theory) -> Result<String, CompileError> {
    let clauses: Vec<(isize, isize)> = match t.language() {
        Language::Hex => {
            let h = t.hex().expect("hex payload");
            let lit = |v: usize| h.vertex_vars[v] as isize + 1;
            h.hierarchy_edges
                .iter()
                .map(|&(u, v)| (lit(u), -lit(v)))
                .chain(h.exclusion_edges.iter().map(|&(u, v)| (-lit(u), -lit(v))))
                .collect()
        }
        Language::Hier | Language::TreeHier => {
            let g = t.digraph().expect("hier payload");
            let vars = match &g.labeling {
                Labeling::Vertex(vs) => vs.as_slice(),
                Labeling::Edge(_) => unreachable!("validated at construction"),
            };
            g.edges
                .iter()
                .map(|&(u, v)| (vars[u] as isize + 1, -(vars[v] as isize + 1)))
                .collect()
        }
        other => {
            return Err(CompileError::WrongLanguage {
                expected: "hex or hier",
                got: other,
            })
        }
    };
    let mut out = format!("p cnf {} {}\n", t.vars().len(), clauses.len());
    for (a, b) in clauses {
        out.push_str(&format!("{a} {b} 0\n"));
    }
    Ok(out)
}
