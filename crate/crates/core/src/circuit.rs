//! NNF circuit arena.
//!
//! Circuits are append-only node arrays in which every child index is
//! strictly smaller than its parent, so a single forward pass visits nodes
//! bottom-up and a single backward pass top-down. Negation exists only
//! inside literals.

use crate::bits::Bits;
use crate::vars::{State, VariableSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(i: usize) -> NodeId {
        NodeId(i as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    True,
    False,
    Lit { var: u32, positive: bool },
    And(Vec<NodeId>),
    Or(Vec<NodeId>),
}

impl Node {
    pub fn children(&self) -> &[NodeId] {
        match self {
            Node::And(cs) | Node::Or(cs) => cs,
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitError {
    DimensionMismatch { expected: usize, got: usize },
    VarOutOfRange(usize),
}

impl fmt::Display for CircuitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitError::DimensionMismatch { expected, got } => {
                write!(f, "state has {got} bits, circuit has {expected} variables")
            }
            CircuitError::VarOutOfRange(v) => write!(f, "variable index {v} out of range"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CircuitError {}

/// A rooted NNF circuit over a named variable set.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    nodes: Vec<Node>,
    root: NodeId,
    vars: VariableSet,
}

impl Circuit {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Circuit size as the total number of child links.
    pub fn wire_count(&self) -> usize {
        self.nodes.iter().map(|n| n.children().len()).sum()
    }

    /// Bottom-up evaluation of a total assignment.
    pub fn evaluate(&self, y: &State) -> Result<bool, CircuitError> {
        if y.len() != self.vars.len() {
            return Err(CircuitError::DimensionMismatch {
                expected: self.vars.len(),
                got: y.len(),
            });
        }
        let mut val = vec![false; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            val[i] = match n {
                Node::True => true,
                Node::False => false,
                Node::Lit { var, positive } => y.get(*var as usize) == *positive,
                Node::And(cs) => cs.iter().all(|c| val[c.index()]),
                Node::Or(cs) => cs.iter().any(|c| val[c.index()]),
            };
        }
        Ok(val[self.root.index()])
    }

    /// Nodes reachable from the root.
    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut reach = vec![false; self.nodes.len()];
        reach[self.root.index()] = true;
        for i in (0..self.nodes.len()).rev() {
            if reach[i] {
                for c in self.nodes[i].children() {
                    reach[c.index()] = true;
                }
            }
        }
        reach
    }

    /// Fix one variable to a constant. The resulting circuit no longer
    /// mentions `var`; its models are the models of `self` that agree with
    /// the fixed value, projected onto the remaining mentions. Preserves
    /// decomposability and determinism.
    pub fn condition(&self, var: usize, value: bool) -> Result<Circuit, CircuitError> {
        if var >= self.vars.len() {
            return Err(CircuitError::VarOutOfRange(var));
        }
        Ok(self.rebuild(|v, positive| (v as usize == var).then_some(positive == value)))
    }

    /// Remove `FALSE`-equivalent and unreachable nodes, propagating constant
    /// simplifications; the model set is unchanged.
    pub fn trim(&self) -> Circuit {
        self.rebuild(|_, _| None)
    }

    fn rebuild(&self, lit_map: impl Fn(u32, bool) -> Option<bool>) -> Circuit {
        let reach = self.reachable();
        let mut b = CircuitBuilder::new(self.vars.clone());
        let mut memo: Vec<Option<NodeId>> = vec![None; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if !reach[i] {
                continue;
            }
            let id = match n {
                Node::True => b.t(),
                Node::False => b.f(),
                Node::Lit { var, positive } => match lit_map(*var, *positive) {
                    Some(true) => b.t(),
                    Some(false) => b.f(),
                    None => b.lit(*var as usize, *positive),
                },
                Node::And(cs) => {
                    let mapped = cs.iter().map(|c| memo[c.index()].unwrap()).collect();
                    b.and(mapped)
                }
                Node::Or(cs) => {
                    let mapped = cs.iter().map(|c| memo[c.index()].unwrap()).collect();
                    b.or(mapped)
                }
            };
            memo[i] = Some(id);
        }
        b.finish(memo[self.root.index()].unwrap())
    }

    /// Smooth the circuit: every OR child is extended with `(Y or not Y)`
    /// gadgets for the variables its siblings mention but it does not, and
    /// the root is extended the same way so that it mentions the full
    /// variable set. The model set is unchanged. Requires decomposability
    /// for the result to stay a DNNF.
    pub fn smooth(&self) -> Circuit {
        let reach = self.reachable();
        let var_sets = node_var_sets_for(self, &reach);
        let k = self.vars.len();

        let mut b = CircuitBuilder::new(self.vars.clone());
        let mut memo: Vec<Option<NodeId>> = vec![None; self.nodes.len()];
        let mut gadgets: Vec<Option<NodeId>> = vec![None; k];
        // (Y or not Y), shared per variable.
        fn gadget(b: &mut CircuitBuilder, gadgets: &mut [Option<NodeId>], v: usize) -> NodeId {
            if let Some(g) = gadgets[v] {
                return g;
            }
            let pos = b.lit(v, true);
            let neg = b.lit(v, false);
            let g = b.or(vec![pos, neg]);
            gadgets[v] = Some(g);
            g
        }
        let pad = |b: &mut CircuitBuilder,
                   gadgets: &mut [Option<NodeId>],
                   child: NodeId,
                   have: &Bits,
                   want: &Bits| {
            let mut parts = vec![child];
            for v in want.iter_ones() {
                if !have.get(v) {
                    parts.push(gadget(b, gadgets, v));
                }
            }
            if parts.len() == 1 {
                child
            } else {
                b.and(parts)
            }
        };

        for (i, n) in self.nodes.iter().enumerate() {
            if !reach[i] {
                continue;
            }
            let id = match n {
                Node::True => b.t(),
                Node::False => b.f(),
                Node::Lit { var, positive } => b.lit(*var as usize, *positive),
                Node::And(cs) => {
                    let mapped = cs.iter().map(|c| memo[c.index()].unwrap()).collect();
                    b.and(mapped)
                }
                Node::Or(cs) => {
                    let want = &var_sets[i];
                    let mapped = cs
                        .iter()
                        .map(|c| {
                            let mc = memo[c.index()].unwrap();
                            pad(&mut b, &mut gadgets, mc, &var_sets[c.index()], want)
                        })
                        .collect();
                    b.or(mapped)
                }
            };
            memo[i] = Some(id);
        }
        let mut full = Bits::new(k);
        for v in 0..k {
            full.set(v);
        }
        let root = pad(
            &mut b,
            &mut gadgets,
            memo[self.root.index()].unwrap(),
            &var_sets[self.root.index()],
            &full,
        );
        b.finish(root)
    }
}

/// Variable set of every reachable node (full materialisation; callers on a
/// memory budget should use the streaming walk in [`crate::structure`]).
pub(crate) fn node_var_sets_for(c: &Circuit, reach: &[bool]) -> Vec<Bits> {
    let k = c.vars.len();
    let mut sets: Vec<Bits> = Vec::with_capacity(c.nodes.len());
    for (i, n) in c.nodes.iter().enumerate() {
        let mut s = Bits::new(k);
        if reach[i] {
            match n {
                Node::Lit { var, .. } => s.set(*var as usize),
                Node::And(cs) | Node::Or(cs) => {
                    for ch in cs {
                        s.union_with(&sets[ch.index()]);
                    }
                }
                _ => {}
            }
        }
        sets.push(s);
    }
    sets
}

/// Append-only circuit constructor.
///
/// In folding mode (the default) constants are propagated eagerly — an AND
/// absorbs `TRUE` children and collapses on `FALSE`, an OR symmetrically —
/// and one-child connectives collapse to the child, so no trivial nodes
/// survive. Raw mode materialises every requested node verbatim, which is
/// what the untrimmed compilation templates want.
pub struct CircuitBuilder {
    nodes: Vec<Node>,
    vars: VariableSet,
    fold: bool,
    true_id: Option<NodeId>,
    false_id: Option<NodeId>,
    lits: Vec<[Option<NodeId>; 2]>,
}

impl CircuitBuilder {
    pub fn new(vars: VariableSet) -> CircuitBuilder {
        CircuitBuilder::with_mode(vars, true)
    }

    pub fn raw(vars: VariableSet) -> CircuitBuilder {
        CircuitBuilder::with_mode(vars, false)
    }

    fn with_mode(vars: VariableSet, fold: bool) -> CircuitBuilder {
        let k = vars.len();
        CircuitBuilder {
            nodes: Vec::new(),
            vars,
            fold,
            true_id: None,
            false_id: None,
            lits: vec![[None, None]; k],
        }
    }

    fn push(&mut self, n: Node) -> NodeId {
        let id = NodeId::new(self.nodes.len());
        self.nodes.push(n);
        id
    }

    pub fn t(&mut self) -> NodeId {
        if let Some(id) = self.true_id {
            return id;
        }
        let id = self.push(Node::True);
        self.true_id = Some(id);
        id
    }

    pub fn f(&mut self) -> NodeId {
        if let Some(id) = self.false_id {
            return id;
        }
        let id = self.push(Node::False);
        self.false_id = Some(id);
        id
    }

    pub fn lit(&mut self, var: usize, positive: bool) -> NodeId {
        assert!(var < self.vars.len(), "literal variable out of range");
        if let Some(id) = self.lits[var][positive as usize] {
            return id;
        }
        let id = self.push(Node::Lit {
            var: var as u32,
            positive,
        });
        self.lits[var][positive as usize] = Some(id);
        id
    }

    pub fn and(&mut self, children: Vec<NodeId>) -> NodeId {
        if !self.fold {
            assert!(!children.is_empty());
            return self.push(Node::And(children));
        }
        let mut kept = Vec::with_capacity(children.len());
        for c in children {
            if Some(c) == self.true_id {
                continue;
            }
            if Some(c) == self.false_id {
                return self.f();
            }
            kept.push(c);
        }
        match kept.len() {
            0 => self.t(),
            1 => kept[0],
            _ => self.push(Node::And(kept)),
        }
    }

    pub fn or(&mut self, children: Vec<NodeId>) -> NodeId {
        if !self.fold {
            assert!(!children.is_empty());
            return self.push(Node::Or(children));
        }
        let mut kept = Vec::with_capacity(children.len());
        for c in children {
            if Some(c) == self.false_id {
                continue;
            }
            if Some(c) == self.true_id {
                return self.t();
            }
            kept.push(c);
        }
        match kept.len() {
            0 => self.f(),
            1 => kept[0],
            _ => self.push(Node::Or(kept)),
        }
    }

    /// Decision node `(var and hi) or (not var and lo)`; six wires when
    /// nothing folds.
    pub fn decision(&mut self, var: usize, hi: NodeId, lo: NodeId) -> NodeId {
        let pos = self.lit(var, true);
        let neg = self.lit(var, false);
        let a = self.and(vec![pos, hi]);
        let b = self.and(vec![neg, lo]);
        self.or(vec![a, b])
    }

    pub fn finish(self, root: NodeId) -> Circuit {
        assert!(root.index() < self.nodes.len());
        // Folding can leave orphaned constants behind; compact so the arena
        // holds exactly the nodes reachable from the root.
        let mut keep = vec![false; self.nodes.len()];
        keep[root.index()] = true;
        for i in (0..self.nodes.len()).rev() {
            if keep[i] {
                for c in self.nodes[i].children() {
                    keep[c.index()] = true;
                }
            }
        }
        let mut remap = vec![NodeId::new(0); self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.into_iter().enumerate() {
            if !keep[i] {
                continue;
            }
            let n = match n {
                Node::And(cs) => Node::And(cs.iter().map(|c| remap[c.index()]).collect()),
                Node::Or(cs) => Node::Or(cs.iter().map(|c| remap[c.index()]).collect()),
                other => other,
            };
            remap[i] = NodeId::new(nodes.len());
            nodes.push(n);
        }
        Circuit {
            nodes,
            root: remap[root.index()],
            vars: self.vars,
        }
    }

    /// Assemble a circuit from pre-validated parts (parser use).
    pub fn from_parts(vars: VariableSet, nodes: Vec<Node>, root: NodeId) -> Circuit {
        debug_assert!(nodes
            .iter()
            .enumerate()
            .all(|(i, n)| n.children().iter().all(|c| c.index() < i)));
        Circuit { nodes, root, vars }
    }
}
