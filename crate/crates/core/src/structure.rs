//! Structural validation of circuits: NNF/decomposability/determinism/
//! smoothness flags, OBDD order detection, and size accounting.

use crate::bits::Bits;
use crate::circuit::{Circuit, Node, NodeId};
use alloc::collections::BTreeSet;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Verdicts that may be undecidable at reasonable cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tristate {
    True,
    False,
    Unknown,
}

impl Tristate {
    pub fn as_str(self) -> &'static str {
        match self {
            Tristate::True => "true",
            Tristate::False => "false",
            Tristate::Unknown => "unknown",
        }
    }

    pub fn is_true(self) -> bool {
        self == Tristate::True
    }
}

impl fmt::Display for Tristate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub nnf: bool,
    pub decomposable: bool,
    pub deterministic: Tristate,
    pub smooth: bool,
    /// Global decision-variable order (root to leaf) when every OR node is a
    /// decision node and one order fits all paths.
    pub obdd_order: Option<Vec<usize>>,
    pub node_count: usize,
    /// Total child-link count; the size measure for every bound in the
    /// crate.
    pub wires: usize,
}

/// Determinism of a non-decision OR node is only brute-forced when the node
/// mentions at most this many variables.
const BRUTE_VAR_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OrClass {
    /// Two satisfiable children entailing `Y_m` and `not Y_m` respectively.
    Decision(u32),
    /// At most one satisfiable child; deterministic for free, no decision
    /// variable.
    Trivial,
    NonDecision,
}

struct Analysis {
    decomposable: bool,
    smooth: bool,
    or_class: Vec<Option<OrClass>>,
    /// Non-decision OR nodes kept for the brute-force determinism pass,
    /// with their variable sets.
    brute: Vec<(usize, Rc<Bits>)>,
}

/// Reference counts from reachable parents, plus one for the root so its
/// entry survives the walk.
pub(crate) fn fragment_parent_counts(c: &Circuit, reach: &[bool]) -> Vec<u32> {
    parent_counts(c, reach)
}

fn parent_counts(c: &Circuit, reach: &[bool]) -> Vec<u32> {
    let mut counts = vec![0u32; c.node_count()];
    for (i, n) in c.nodes().iter().enumerate() {
        if reach[i] {
            for ch in n.children() {
                counts[ch.index()] += 1;
            }
        }
    }
    counts[c.root().index()] += 1;
    counts
}

struct Store<T> {
    slots: Vec<Option<T>>,
    remaining: Vec<u32>,
}

impl<T> Store<T> {
    fn new(remaining: Vec<u32>) -> Store<T> {
        let n = remaining.len();
        Store {
            slots: (0..n).map(|_| None).collect(),
            remaining,
        }
    }

    fn put(&mut self, i: usize, v: T) {
        self.slots[i] = Some(v);
    }

    fn get(&self, id: NodeId) -> &T {
        self.slots[id.index()]
            .as_ref()
            .expect("child processed before parent")
    }

    fn consume(&mut self, children: &[NodeId]) {
        for ch in children {
            let i = ch.index();
            self.remaining[i] -= 1;
            if self.remaining[i] == 0 {
                self.slots[i] = None;
            }
        }
    }
}

/// Forced-literal sets: variables entailed positively / negatively by every
/// model of the node. `None` means the node is unsatisfiable.
type Forced = Option<Rc<(Bits, Bits)>>;

fn analyze(c: &Circuit, reach: &[bool]) -> Analysis {
    let k = c.vars().len();
    let counts = parent_counts(c, reach);
    let mut var_sets: Store<Rc<Bits>> = Store::new(counts.clone());
    let mut forced: Store<Forced> = Store::new(counts);

    let mut decomposable = true;
    let mut smooth = true;
    let mut or_class = vec![None; c.node_count()];
    let mut brute = Vec::new();

    for (i, n) in c.nodes().iter().enumerate() {
        if !reach[i] {
            continue;
        }
        let (vs, fs): (Rc<Bits>, Forced) = match n {
            Node::True => (
                Rc::new(Bits::new(k)),
                Some(Rc::new((Bits::new(k), Bits::new(k)))),
            ),
            Node::False => (Rc::new(Bits::new(k)), None),
            Node::Lit { var, positive } => {
                let mut b = Bits::new(k);
                b.set(*var as usize);
                let mut pos = Bits::new(k);
                let mut neg = Bits::new(k);
                if *positive {
                    pos.set(*var as usize);
                } else {
                    neg.set(*var as usize);
                }
                (Rc::new(b), Some(Rc::new((pos, neg))))
            }
            Node::And(cs) => {
                let vs = union_sets(&var_sets, cs);
                let child_sum: usize = cs.iter().map(|ch| var_sets.get(*ch).count_ones()).sum();
                if child_sum != vs.count_ones() {
                    decomposable = false;
                }
                let mut dead = false;
                let mut pos = Bits::new(k);
                let mut neg = Bits::new(k);
                for ch in cs {
                    match forced.get(*ch) {
                        None => dead = true,
                        Some(f) => {
                            pos.union_with(&f.0);
                            neg.union_with(&f.1);
                        }
                    }
                }
                // Contradictory entailments make the conjunction
                // unsatisfiable.
                let fs = if dead || pos.intersects(&neg) {
                    None
                } else {
                    Some(Rc::new((pos, neg)))
                };
                (vs, fs)
            }
            Node::Or(cs) => {
                let vs = union_sets(&var_sets, cs);
                if cs.iter().any(|ch| **var_sets.get(*ch) != *vs) {
                    smooth = false;
                }
                let sat: Vec<NodeId> = cs
                    .iter()
                    .copied()
                    .filter(|ch| forced.get(*ch).is_some())
                    .collect();
                let class = match sat.len() {
                    0 | 1 => OrClass::Trivial,
                    2 => {
                        // Prefer the shape the compilers emit: each child is
                        // a literal or an AND led by one, with opposite
                        // polarities of the same variable. Several variables
                        // can be entailed oppositely at once, so the leading
                        // literal disambiguates which one is the decision.
                        match structural_decision_var(c, sat[0], sat[1]) {
                            Some(m) => OrClass::Decision(m),
                            None => {
                                let a = forced.get(sat[0]).clone().unwrap();
                                let b = forced.get(sat[1]).clone().unwrap();
                                match decision_var(&a, &b) {
                                    Some(m) => OrClass::Decision(m),
                                    None => OrClass::NonDecision,
                                }
                            }
                        }
                    }
                    _ => OrClass::NonDecision,
                };
                if class == OrClass::NonDecision {
                    brute.push((i, vs.clone()));
                }
                or_class[i] = Some(class);
                let mut fs: Forced = None;
                for ch in &sat {
                    let f = forced.get(*ch).clone().unwrap();
                    fs = Some(match fs {
                        None => f,
                        Some(acc) => {
                            let mut pos = acc.0.clone();
                            let mut neg = acc.1.clone();
                            pos.intersect_with(&f.0);
                            neg.intersect_with(&f.1);
                            Rc::new((pos, neg))
                        }
                    });
                }
                (vs, fs)
            }
        };
        var_sets.put(i, vs);
        forced.put(i, fs);
        var_sets.consume(n.children());
        forced.consume(n.children());
    }

    Analysis {
        decomposable,
        smooth,
        or_class,
        brute,
    }
}

fn union_sets(store: &Store<Rc<Bits>>, cs: &[NodeId]) -> Rc<Bits> {
    if cs.len() == 1 {
        return store.get(cs[0]).clone();
    }
    let mut u = (**store.get(cs[0])).clone();
    for ch in &cs[1..] {
        u.union_with(store.get(*ch));
    }
    Rc::new(u)
}

/// The literal a child starts with: the child itself, or the first child of
/// an AND node.
fn leading_literal(c: &Circuit, id: NodeId) -> Option<(u32, bool)> {
    match c.node(id) {
        Node::Lit { var, positive } => Some((*var, *positive)),
        Node::And(cs) => match c.node(*cs.first()?) {
            Node::Lit { var, positive } => Some((*var, *positive)),
            _ => None,
        },
        _ => None,
    }
}

fn structural_decision_var(c: &Circuit, a: NodeId, b: NodeId) -> Option<u32> {
    let (va, pa) = leading_literal(c, a)?;
    let (vb, pb) = leading_literal(c, b)?;
    (va == vb && pa != pb).then_some(va)
}

/// A variable entailed positively on one side and negatively on the other.
/// Picks the smallest such index so reports are deterministic.
fn decision_var(a: &(Bits, Bits), b: &(Bits, Bits)) -> Option<u32> {
    let mut ab = a.0.clone();
    ab.intersect_with(&b.1);
    let mut ba = b.0.clone();
    ba.intersect_with(&a.1);
    let x = ab.iter_ones().next();
    let y = ba.iter_ones().next();
    match (x, y) {
        (Some(x), Some(y)) => Some(x.min(y) as u32),
        (Some(x), None) => Some(x as u32),
        (None, Some(y)) => Some(y as u32),
        (None, None) => None,
    }
}

fn eval_all(c: &Circuit, assignment: &Bits) -> Vec<bool> {
    let mut val = vec![false; c.node_count()];
    for (i, n) in c.nodes().iter().enumerate() {
        val[i] = match n {
            Node::True => true,
            Node::False => false,
            Node::Lit { var, positive } => assignment.get(*var as usize) == *positive,
            Node::And(cs) => cs.iter().all(|ch| val[ch.index()]),
            Node::Or(cs) => cs.iter().any(|ch| val[ch.index()]),
        };
    }
    val
}

/// Exhaustively check whether two children of an OR node share a satisfying
/// assignment over the node's variables.
fn brute_force_deterministic(c: &Circuit, or_idx: usize, vars: &Bits) -> bool {
    let vs: Vec<usize> = vars.iter_ones().collect();
    let k = c.vars().len();
    for m in 0..(1usize << vs.len()) {
        let mut assignment = Bits::new(k);
        for (bit, &v) in vs.iter().enumerate() {
            if m >> bit & 1 == 1 {
                assignment.set(v);
            }
        }
        let val = eval_all(c, &assignment);
        let sat = c.nodes()[or_idx]
            .children()
            .iter()
            .filter(|ch| val[ch.index()])
            .count();
        if sat > 1 {
            return false;
        }
    }
    true
}

pub fn check_structure(c: &Circuit) -> StructureReport {
    let reach = c.reachable();
    let analysis = analyze(c, &reach);

    let mut deterministic = Tristate::True;
    for (idx, vars) in &analysis.brute {
        if vars.count_ones() <= BRUTE_VAR_LIMIT {
            if !brute_force_deterministic(c, *idx, vars) {
                deterministic = Tristate::False;
                break;
            }
        } else if deterministic == Tristate::True {
            deterministic = Tristate::Unknown;
        }
    }

    let obdd_order = if deterministic == Tristate::True {
        obdd_order(c, &reach, &analysis.or_class)
    } else {
        None
    };

    StructureReport {
        nnf: true,
        decomposable: analysis.decomposable,
        deterministic,
        smooth: analysis.smooth,
        obdd_order,
        node_count: c.node_count(),
        wires: c.wire_count(),
    }
}

/// Decision variable per node for decision-shaped OR nodes (`None` for
/// everything else); what the circuit file emitter writes in OR headers.
pub fn or_decision_vars(c: &Circuit) -> Vec<Option<u32>> {
    let reach = c.reachable();
    let analysis = analyze(c, &reach);
    analysis
        .or_class
        .iter()
        .map(|cl| match cl {
            Some(OrClass::Decision(m)) => Some(*m),
            _ => None,
        })
        .collect()
}

/// One global order must place every decision variable before all decision
/// variables reachable below it. Returns that order (root to leaf) or
/// `None` when some OR is not a decision node or the precedence relation has
/// a cycle.
fn obdd_order(c: &Circuit, reach: &[bool], or_class: &[Option<OrClass>]) -> Option<Vec<usize>> {
    let counts = parent_counts(c, reach);
    let mut top: Store<Rc<Vec<u32>>> = Store::new(counts);
    let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut decided: BTreeSet<u32> = BTreeSet::new();

    for (i, n) in c.nodes().iter().enumerate() {
        if !reach[i] {
            continue;
        }
        let t: Rc<Vec<u32>> = match n {
            Node::True | Node::False | Node::Lit { .. } => Rc::new(Vec::new()),
            Node::And(cs) => merge_topvars(&top, cs),
            Node::Or(cs) => match or_class[i] {
                Some(OrClass::Decision(m)) => {
                    decided.insert(m);
                    for ch in cs {
                        for &x in top.get(*ch).iter() {
                            if x == m {
                                // The same variable decided again beneath
                                // itself rules out any order.
                                return None;
                            }
                            edges.insert((m, x));
                        }
                    }
                    Rc::new(vec![m])
                }
                Some(OrClass::Trivial) => merge_topvars(&top, cs),
                _ => return None,
            },
        };
        top.put(i, t);
        top.consume(n.children());
    }

    // Deterministic Kahn: smallest variable index first.
    let verts: Vec<u32> = decided
        .iter()
        .copied()
        .chain(edges.iter().flat_map(|&(a, b)| [a, b]))
        .collect::<BTreeSet<u32>>()
        .into_iter()
        .collect();
    let mut indeg: alloc::collections::BTreeMap<u32, usize> =
        verts.iter().map(|&v| (v, 0)).collect();
    for &(_, b) in &edges {
        *indeg.get_mut(&b).unwrap() += 1;
    }
    let mut ready: BTreeSet<u32> = indeg
        .iter()
        .filter_map(|(&v, &d)| (d == 0).then_some(v))
        .collect();
    let mut order = Vec::new();
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v as usize);
        for &(a, b) in &edges {
            if a == v {
                let d = indeg.get_mut(&b).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(b);
                }
            }
        }
    }
    if order.len() != verts.len() {
        return None; // precedence cycle
    }
    Some(order)
}

fn merge_topvars(store: &Store<Rc<Vec<u32>>>, cs: &[NodeId]) -> Rc<Vec<u32>> {
    if cs.len() == 1 {
        return store.get(cs[0]).clone();
    }
    let mut merged: Vec<u32> = Vec::new();
    for ch in cs {
        merged.extend(store.get(*ch).iter().copied());
    }
    merged.sort_unstable();
    merged.dedup();
    Rc::new(merged)
}
