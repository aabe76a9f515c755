//! Constraint theories: instances of the eight supported languages over a
//! shared variable universe, with exact satisfaction semantics per language.

use crate::bits::Bits;
use crate::vars::{State, VariableSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// The supported constraint languages.
///
/// `Card`, `AsPath`, `TreeHier` and `TeHier` compile to d-DNNF; `Hier` and
/// `Match` are served by direct combinatorial solvers (MPE and enumeration
/// only); `Hex` and `SPath` are carried for the brute-force oracle and the
/// 2-Horn emitter, every other query on them being intractable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Language {
    Card,
    Hier,
    TreeHier,
    TeHier,
    Hex,
    AsPath,
    SPath,
    Match,
}

impl Language {
    pub fn as_str(self) -> &'static str {
        match self {
            Language::Card => "card",
            Language::Hier => "hier",
            Language::TreeHier => "tree-hier",
            Language::TeHier => "te-hier",
            Language::Hex => "hex",
            Language::AsPath => "aspath",
            Language::SPath => "spath",
            Language::Match => "match",
        }
    }

    pub const ALL: [Language; 8] = [
        Language::Card,
        Language::Hier,
        Language::TreeHier,
        Language::TeHier,
        Language::Hex,
        Language::AsPath,
        Language::SPath,
        Language::Match,
    ];
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Language {
    type Err = ();

    fn from_str(s: &str) -> Result<Language, ()> {
        Ok(match s {
            "card" => Language::Card,
            "hier" => Language::Hier,
            "tree-hier" => Language::TreeHier,
            "te-hier" => Language::TeHier,
            "hex" => Language::Hex,
            "aspath" => Language::AsPath,
            "spath" => Language::SPath,
            "match" => Language::Match,
            _ => return Err(()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CardOp {
    Le,
    Ge,
    Eq,
}

impl CardOp {
    pub fn as_str(self) -> &'static str {
        match self {
            CardOp::Le => "le",
            CardOp::Ge => "ge",
            CardOp::Eq => "eq",
        }
    }

    pub fn holds(self, count: usize, bound: usize) -> bool {
        match self {
            CardOp::Le => count <= bound,
            CardOp::Ge => count >= bound,
            CardOp::Eq => count == bound,
        }
    }
}

impl core::str::FromStr for CardOp {
    type Err = ();

    fn from_str(s: &str) -> Result<CardOp, ()> {
        Ok(match s {
            "le" => CardOp::Le,
            "ge" => CardOp::Ge,
            "eq" => CardOp::Eq,
            _ => return Err(()),
        })
    }
}

/// A single linear constraint `<Y, 1> op l` over all `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardPayload {
    pub n: usize,
    pub op: CardOp,
    pub bound: usize,
}

/// Directed graph with either an edge-to-variable or a vertex-to-variable
/// bijection. Edges are ordered `(tail, head)` pairs of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraphPayload {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub labeling: Labeling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Labeling {
    /// `Edge(vs)`: edge `e` carries variable index `vs[e]`.
    Edge(Vec<usize>),
    /// `Vertex(vs)`: vertex `v` carries variable index `vs[v]`.
    Vertex(Vec<usize>),
}

/// Hierarchy-plus-exclusions graph: an acyclic hierarchy `(V, E_h)` and an
/// undirected exclusion relation `E_e` over the same vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexPayload {
    pub vertices: Vec<String>,
    pub hierarchy_edges: Vec<(usize, usize)>,
    pub exclusion_edges: Vec<(usize, usize)>,
    pub vertex_vars: Vec<usize>,
}

/// Undirected graph with an edge-to-variable bijection (matching theories).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraphPayload {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub edge_vars: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Card(CardPayload),
    Digraph(DirectedGraphPayload),
    Hex(HexPayload),
    Ugraph(UndirectedGraphPayload),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryError {
    PayloadMismatch(Language),
    CardArity { n: usize, vars: usize },
    CardBound { bound: usize, n: usize },
    VertexOutOfRange(usize),
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    LabelingNotBijective,
    Cyclic,
    NotATree,
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for TheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryError::PayloadMismatch(l) => {
                write!(f, "payload shape does not match language {l}")
            }
            TheoryError::CardArity { n, vars } => {
                write!(
                    f,
                    "cardinality constraint over n={n} variables but the variable set has {vars}"
                )
            }
            TheoryError::CardBound { bound, n } => {
                write!(f, "cardinality bound {bound} is outside 0..={n}")
            }
            TheoryError::VertexOutOfRange(v) => write!(f, "vertex index {v} out of range"),
            TheoryError::SelfLoop(v) => write!(f, "self-loop on vertex {v}"),
            TheoryError::DuplicateEdge(u, v) => write!(f, "duplicate edge ({u}, {v})"),
            TheoryError::LabelingNotBijective => {
                write!(f, "labeling is not a bijection onto the variable set")
            }
            TheoryError::Cyclic => write!(f, "graph must be acyclic for this language"),
            TheoryError::NotATree => write!(f, "graph must be a rooted tree for this language"),
            TheoryError::DimensionMismatch { expected, got } => {
                write!(f, "state has {got} bits, theory has {expected} variables")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TheoryError {}

/// A constraint instance: a language, a variable set and a matching payload.
/// Immutable once constructed; [`Theory::new`] enforces every structural
/// invariant of the language.
#[derive(Clone, Debug, PartialEq)]
pub struct Theory {
    language: Language,
    vars: VariableSet,
    payload: Payload,
}

impl Theory {
    pub fn new(
        language: Language,
        vars: VariableSet,
        payload: Payload,
    ) -> Result<Theory, TheoryError> {
        let k = vars.len();
        match (&language, &payload) {
            (Language::Card, Payload::Card(c)) => {
                if c.n != k {
                    return Err(TheoryError::CardArity { n: c.n, vars: k });
                }
                if c.bound > c.n {
                    return Err(TheoryError::CardBound {
                        bound: c.bound,
                        n: c.n,
                    });
                }
            }
            (Language::Hier | Language::TreeHier | Language::TeHier, Payload::Digraph(g)) => {
                let vertex_vars = match &g.labeling {
                    Labeling::Vertex(vs) => vs,
                    Labeling::Edge(_) => return Err(TheoryError::PayloadMismatch(language)),
                };
                validate_edges(g.vertices.len(), &g.edges, true)?;
                validate_bijection(vertex_vars, g.vertices.len(), k)?;
                if !is_acyclic(g.vertices.len(), &g.edges) {
                    return Err(TheoryError::Cyclic);
                }
                if matches!(language, Language::TreeHier | Language::TeHier)
                    && !is_rooted_tree(g.vertices.len(), &g.edges)
                {
                    return Err(TheoryError::NotATree);
                }
            }
            (Language::Hex, Payload::Hex(h)) => {
                validate_edges(h.vertices.len(), &h.hierarchy_edges, true)?;
                validate_bijection(&h.vertex_vars, h.vertices.len(), k)?;
                if !is_acyclic(h.vertices.len(), &h.hierarchy_edges) {
                    return Err(TheoryError::Cyclic);
                }
                // Exclusions are unordered pairs; reject loops and duplicates
                // up to symmetry.
                let mut seen: Vec<(usize, usize)> = Vec::new();
                for &(u, v) in &h.exclusion_edges {
                    if u >= h.vertices.len() || v >= h.vertices.len() {
                        return Err(TheoryError::VertexOutOfRange(u.max(v)));
                    }
                    if u == v {
                        return Err(TheoryError::SelfLoop(u));
                    }
                    let key = (u.min(v), u.max(v));
                    if seen.contains(&key) {
                        return Err(TheoryError::DuplicateEdge(key.0, key.1));
                    }
                    seen.push(key);
                }
            }
            (Language::AsPath | Language::SPath, Payload::Digraph(g)) => {
                let edge_vars = match &g.labeling {
                    Labeling::Edge(vs) => vs,
                    Labeling::Vertex(_) => return Err(TheoryError::PayloadMismatch(language)),
                };
                validate_edges(g.vertices.len(), &g.edges, true)?;
                validate_bijection(edge_vars, g.edges.len(), k)?;
                if language == Language::AsPath && !is_acyclic(g.vertices.len(), &g.edges) {
                    return Err(TheoryError::Cyclic);
                }
            }
            (Language::Match, Payload::Ugraph(g)) => {
                let mut seen: Vec<(usize, usize)> = Vec::new();
                for &(u, v) in &g.edges {
                    if u >= g.vertices.len() || v >= g.vertices.len() {
                        return Err(TheoryError::VertexOutOfRange(u.max(v)));
                    }
                    if u == v {
                        return Err(TheoryError::SelfLoop(u));
                    }
                    let key = (u.min(v), u.max(v));
                    if seen.contains(&key) {
                        return Err(TheoryError::DuplicateEdge(key.0, key.1));
                    }
                    seen.push(key);
                }
                validate_bijection(&g.edge_vars, g.edges.len(), k)?;
            }
            _ => return Err(TheoryError::PayloadMismatch(language)),
        }
        Ok(Theory {
            language,
            vars,
            payload,
        })
    }

    /// Construction bypassing the duplicate-edge check; used by source/sink
    /// merging, which may legitimately create parallel edges.
    pub(crate) fn new_merged(language: Language, vars: VariableSet, payload: Payload) -> Theory {
        Theory {
            language,
            vars,
            payload,
        }
    }

    /// `CARD(n, op, l)` over variables `Y1..Yn`.
    pub fn card_numbered(n: usize, op: CardOp, bound: usize) -> Result<Theory, TheoryError> {
        let vars = VariableSet::numbered(n).map_err(|_| TheoryError::CardArity { n, vars: 0 })?;
        Theory::new(
            Language::Card,
            vars,
            Payload::Card(CardPayload { n, op, bound }),
        )
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn card(&self) -> Option<&CardPayload> {
        match &self.payload {
            Payload::Card(c) => Some(c),
            _ => None,
        }
    }

    pub fn digraph(&self) -> Option<&DirectedGraphPayload> {
        match &self.payload {
            Payload::Digraph(g) => Some(g),
            _ => None,
        }
    }

    pub fn hex(&self) -> Option<&HexPayload> {
        match &self.payload {
            Payload::Hex(h) => Some(h),
            _ => None,
        }
    }

    pub fn ugraph(&self) -> Option<&UndirectedGraphPayload> {
        match &self.payload {
            Payload::Ugraph(g) => Some(g),
            _ => None,
        }
    }

    /// True iff `state` is a model of this theory under the language's
    /// semantics.
    pub fn satisfies(&self, state: &State) -> Result<bool, TheoryError> {
        if state.len() != self.vars.len() {
            return Err(TheoryError::DimensionMismatch {
                expected: self.vars.len(),
                got: state.len(),
            });
        }
        Ok(SatChecker::new(self).check(state))
    }
}

fn validate_edges(
    nv: usize,
    edges: &[(usize, usize)],
    reject_duplicates: bool,
) -> Result<(), TheoryError> {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in edges {
        if u >= nv || v >= nv {
            return Err(TheoryError::VertexOutOfRange(u.max(v)));
        }
        if u == v {
            return Err(TheoryError::SelfLoop(u));
        }
        if reject_duplicates {
            if seen.contains(&(u, v)) {
                return Err(TheoryError::DuplicateEdge(u, v));
            }
            seen.push((u, v));
        }
    }
    Ok(())
}

fn validate_bijection(labels: &[usize], carriers: usize, k: usize) -> Result<(), TheoryError> {
    if labels.len() != carriers || carriers != k {
        return Err(TheoryError::LabelingNotBijective);
    }
    let mut used = vec![false; k];
    for &v in labels {
        if v >= k || used[v] {
            return Err(TheoryError::LabelingNotBijective);
        }
        used[v] = true;
    }
    Ok(())
}

pub(crate) fn is_acyclic(nv: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; nv];
    for &(_, v) in edges {
        indeg[v] += 1;
    }
    let mut queue: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(u) = queue.pop() {
        removed += 1;
        for &(a, b) in edges {
            if a == u {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push(b);
                }
            }
        }
    }
    removed == nv
}

/// Single source, every other vertex with in-degree exactly one. Together
/// with acyclicity this gives a unique root-to-vertex path for every vertex.
fn is_rooted_tree(nv: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; nv];
    for &(_, v) in edges {
        indeg[v] += 1;
    }
    let roots = indeg.iter().filter(|&&d| d == 0).count();
    roots == 1 && indeg.iter().all(|&d| d <= 1)
}

/// Descendant bitsets (including the vertex itself) along directed edges.
pub(crate) fn descendant_sets(nv: usize, edges: &[(usize, usize)]) -> Vec<Bits> {
    let mut out_adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &(u, v) in edges {
        out_adj[u].push(v);
    }
    let mut sets = Vec::with_capacity(nv);
    for start in 0..nv {
        let mut b = Bits::new(nv);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            if b.get(u) {
                continue;
            }
            b.set(u);
            stack.extend(out_adj[u].iter().copied());
        }
        sets.push(b);
    }
    sets
}

/// Precomputed per-theory satisfaction test; building it once lets the
/// oracle sweep all `2^k` states without re-deriving graph structure.
pub(crate) enum SatChecker {
    Card {
        op: CardOp,
        bound: usize,
    },
    Closure {
        /// `(parent_var, child_var)` per hierarchy edge.
        implications: Vec<(usize, usize)>,
        /// Variable pairs that may not be selected together.
        exclusions: Vec<(usize, usize)>,
    },
    Path {
        /// `(tail, head)` of the edge carrying each variable.
        edge_of_var: Vec<(usize, usize)>,
        n_vertices: usize,
        is_source: Bits,
        is_sink: Bits,
    },
    Matching {
        endpoints_of_var: Vec<(usize, usize)>,
        n_vertices: usize,
    },
}

impl SatChecker {
    pub(crate) fn new(t: &Theory) -> SatChecker {
        match (&t.language, &t.payload) {
            (Language::Card, Payload::Card(c)) => SatChecker::Card {
                op: c.op,
                bound: c.bound,
            },
            (Language::Hier | Language::TreeHier, Payload::Digraph(g)) => {
                let vv = vertex_vars(g);
                SatChecker::Closure {
                    implications: g.edges.iter().map(|&(u, v)| (vv[u], vv[v])).collect(),
                    exclusions: Vec::new(),
                }
            }
            (Language::TeHier, Payload::Digraph(g)) => {
                let vv = vertex_vars(g);
                let desc = descendant_sets(g.vertices.len(), &g.edges);
                let mut exclusions = Vec::new();
                for u in 0..g.vertices.len() {
                    for v in u + 1..g.vertices.len() {
                        if !desc[u].intersects(&desc[v]) {
                            exclusions.push((vv[u], vv[v]));
                        }
                    }
                }
                SatChecker::Closure {
                    implications: g.edges.iter().map(|&(u, v)| (vv[u], vv[v])).collect(),
                    exclusions,
                }
            }
            (Language::Hex, Payload::Hex(h)) => SatChecker::Closure {
                implications: h
                    .hierarchy_edges
                    .iter()
                    .map(|&(u, v)| (h.vertex_vars[u], h.vertex_vars[v]))
                    .collect(),
                exclusions: h
                    .exclusion_edges
                    .iter()
                    .map(|&(u, v)| (h.vertex_vars[u], h.vertex_vars[v]))
                    .collect(),
            },
            (Language::AsPath | Language::SPath, Payload::Digraph(g)) => {
                let ev = match &g.labeling {
                    Labeling::Edge(vs) => vs,
                    Labeling::Vertex(_) => unreachable!("validated at construction"),
                };
                let nv = g.vertices.len();
                let mut edge_of_var = vec![(0, 0); ev.len()];
                for (e, &var) in ev.iter().enumerate() {
                    edge_of_var[var] = g.edges[e];
                }
                let mut is_source = Bits::new(nv);
                let mut is_sink = Bits::new(nv);
                let mut has_in = vec![false; nv];
                let mut has_out = vec![false; nv];
                for &(u, v) in &g.edges {
                    has_out[u] = true;
                    has_in[v] = true;
                }
                for v in 0..nv {
                    if !has_in[v] {
                        is_source.set(v);
                    }
                    if !has_out[v] {
                        is_sink.set(v);
                    }
                }
                SatChecker::Path {
                    edge_of_var,
                    n_vertices: nv,
                    is_source,
                    is_sink,
                }
            }
            (Language::Match, Payload::Ugraph(g)) => {
                let mut endpoints_of_var = vec![(0, 0); g.edge_vars.len()];
                for (e, &var) in g.edge_vars.iter().enumerate() {
                    endpoints_of_var[var] = g.edges[e];
                }
                SatChecker::Matching {
                    endpoints_of_var,
                    n_vertices: g.vertices.len(),
                }
            }
            _ => unreachable!("payload validated at construction"),
        }
    }

    pub(crate) fn check(&self, y: &State) -> bool {
        match self {
            SatChecker::Card { op, bound } => op.holds(y.weight(), *bound),
            SatChecker::Closure {
                implications,
                exclusions,
            } => {
                implications.iter().all(|&(p, c)| !y.get(c) || y.get(p))
                    && exclusions.iter().all(|&(a, b)| !(y.get(a) && y.get(b)))
            }
            SatChecker::Path {
                edge_of_var,
                n_vertices,
                is_source,
                is_sink,
            } => check_total_simple_path(y, edge_of_var, *n_vertices, is_source, is_sink),
            SatChecker::Matching {
                endpoints_of_var,
                n_vertices,
            } => {
                let mut used = vec![false; *n_vertices];
                for i in y.selected() {
                    let (u, v) = endpoints_of_var[i];
                    if used[u] || used[v] {
                        return false;
                    }
                    used[u] = true;
                    used[v] = true;
                }
                true
            }
        }
    }
}

fn vertex_vars(g: &DirectedGraphPayload) -> &[usize] {
    match &g.labeling {
        Labeling::Vertex(vs) => vs,
        Labeling::Edge(_) => unreachable!("validated at construction"),
    }
}

/// The selected edges must form a single simple path from a source of the
/// graph to a sink of the graph, using every selected edge.
fn check_total_simple_path(
    y: &State,
    edge_of_var: &[(usize, usize)],
    nv: usize,
    is_source: &Bits,
    is_sink: &Bits,
) -> bool {
    let mut out_edge: Vec<Option<usize>> = vec![None; nv];
    let mut in_count = vec![0u8; nv];
    let mut m = 0usize;
    for i in y.selected() {
        let (u, v) = edge_of_var[i];
        if out_edge[u].is_some() || in_count[v] > 0 {
            return false;
        }
        out_edge[u] = Some(v);
        in_count[v] = 1;
        m += 1;
    }
    if m == 0 {
        // A total path runs from a source to a sink, so it has at least one
        // edge; the null state is never a model.
        return false;
    }
    // Unique walk start: a tail that is not a head of any selected edge.
    let mut start = None;
    for u in 0..nv {
        if out_edge[u].is_some() && in_count[u] == 0 {
            if start.is_some() {
                return false;
            }
            start = Some(u);
        }
    }
    let Some(start) = start else { return false };
    let mut cur = start;
    let mut steps = 0usize;
    while let Some(next) = out_edge[cur] {
        cur = next;
        steps += 1;
    }
    // All selected edges must lie on the walk (anything left over is a
    // vertex-disjoint cycle).
    steps == m && is_source.get(start) && is_sink.get(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figd() -> Theory {
        // Vertices s, a, b, c, t; edges Y1=(s,a), Y2=(s,b), Y3=(a,b),
        // Y4=(a,t), Y5=(b,c), Y6=(c,t).
        let vars = VariableSet::numbered(6).unwrap();
        let payload = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["s".into(), "a".into(), "b".into(), "c".into(), "t".into()],
            edges: vec![(0, 1), (0, 2), (1, 2), (1, 4), (2, 3), (3, 4)],
            labeling: Labeling::Edge(vec![0, 1, 2, 3, 4, 5]),
        });
        Theory::new(Language::AsPath, vars, payload).unwrap()
    }

    #[test]
    fn figd_path_semantics() {
        let t = figd();
        let y14 = State::from_selected(6, &[0, 3]);
        let y12 = State::from_selected(6, &[0, 1]);
        assert!(t.satisfies(&y14).unwrap());
        assert!(!t.satisfies(&y12).unwrap());
        assert!(!t.satisfies(&State::zeros(6)).unwrap());
    }

    #[test]
    fn card_eq_zero_only_empty() {
        let t = Theory::card_numbered(3, CardOp::Eq, 0).unwrap();
        assert!(t.satisfies(&State::zeros(3)).unwrap());
        for m in 1..8u32 {
            let bits = (0..3).map(|i| m >> (2 - i) & 1 == 1).collect();
            assert!(!t.satisfies(&State::new(bits)).unwrap());
        }
    }

    #[test]
    fn card_bound_validated() {
        assert_eq!(
            Theory::card_numbered(2, CardOp::Eq, 3),
            Err(TheoryError::CardBound { bound: 3, n: 2 })
        );
    }

    #[test]
    fn closure_semantics_single_edge() {
        let vars = VariableSet::new(["u", "v"]).unwrap();
        let payload = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["u".into(), "v".into()],
            edges: vec![(0, 1)],
            labeling: Labeling::Vertex(vec![0, 1]),
        });
        let t = Theory::new(Language::Hier, vars, payload).unwrap();
        assert!(t.satisfies(&State::new(vec![false, false])).unwrap());
        assert!(t.satisfies(&State::new(vec![true, false])).unwrap());
        assert!(t.satisfies(&State::new(vec![true, true])).unwrap());
        assert!(!t.satisfies(&State::new(vec![false, true])).unwrap());
    }

    #[test]
    fn te_hier_excludes_separate_branches() {
        // root -> a, root -> b: a and b have no common descendant.
        let vars = VariableSet::new(["r", "a", "b"]).unwrap();
        let payload = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["r".into(), "a".into(), "b".into()],
            edges: vec![(0, 1), (0, 2)],
            labeling: Labeling::Vertex(vec![0, 1, 2]),
        });
        let t = Theory::new(Language::TeHier, vars, payload).unwrap();
        assert!(t.satisfies(&State::new(vec![true, true, false])).unwrap());
        assert!(!t.satisfies(&State::new(vec![true, true, true])).unwrap());
    }

    #[test]
    fn aspath_rejects_cycles_match_rejects_duplicates() {
        let vars = VariableSet::numbered(2).unwrap();
        let cyclic = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![(0, 1), (1, 0)],
            labeling: Labeling::Edge(vec![0, 1]),
        });
        assert_eq!(
            Theory::new(Language::AsPath, vars.clone(), cyclic.clone()),
            Err(TheoryError::Cyclic)
        );
        // The same payload is a fine SPath theory.
        assert!(Theory::new(Language::SPath, vars.clone(), cyclic).is_ok());

        let dup = Payload::Ugraph(UndirectedGraphPayload {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![(0, 1), (1, 0)],
            edge_vars: vec![0, 1],
        });
        assert_eq!(
            Theory::new(Language::Match, vars, dup),
            Err(TheoryError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn tree_languages_reject_forests_and_dags() {
        let vars = VariableSet::numbered(3).unwrap();
        // Two roots.
        let forest = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![(0, 2)],
            labeling: Labeling::Vertex(vec![0, 1, 2]),
        });
        assert_eq!(
            Theory::new(Language::TreeHier, vars.clone(), forest),
            Err(TheoryError::NotATree)
        );
        // Diamond: c has two parents.
        let dag = Payload::Digraph(DirectedGraphPayload {
            vertices: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![(0, 1), (0, 2), (1, 2)],
            labeling: Labeling::Vertex(vec![0, 1, 2]),
        });
        assert!(Theory::new(Language::Hier, vars.clone(), dag.clone()).is_ok());
        assert_eq!(
            Theory::new(Language::TeHier, vars, dag),
            Err(TheoryError::NotATree)
        );
    }

    #[test]
    fn dimension_mismatch_reported() {
        let t = Theory::card_numbered(3, CardOp::Eq, 1).unwrap();
        assert_eq!(
            t.satisfies(&State::zeros(2)),
            Err(TheoryError::DimensionMismatch {
                expected: 3,
                got: 2
            })
        );
    }
}
