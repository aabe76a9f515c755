//! PQE / EQE / MPE / threshold and top-k enumeration on compiled circuits.
//!
//! Every counting pass is a single bottom-up sweep over the arena, so work
//! is linear in the wire count. EQE and MPE require smooth circuits; they
//! smooth a working copy on the fly when handed a non-smooth one.

use crate::bits::Bits;
use crate::circuit::{Circuit, Node, NodeId};
use crate::math::{self, KahanSum};
use crate::oracle::{cmp_ranked, RankedState};
use crate::prob::ProbabilityVector;
use crate::solve::lawler::{self, StopRule};
use crate::structure::{check_structure, Tristate};
use crate::vars::State;
use alloc::borrow::Cow;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum QueryError {
    NotDecomposable,
    NotDeterministic,
    DeterminismUnknown,
    Unsatisfiable,
    DimensionMismatch { expected: usize, got: usize },
    BadThreshold(f64),
}

impl fmt::Display for QueryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryError::NotDecomposable => write!(f, "circuit is not decomposable"),
            QueryError::NotDeterministic => write!(f, "circuit is not deterministic"),
            QueryError::DeterminismUnknown => {
                write!(f, "determinism of the circuit could not be established")
            }
            QueryError::Unsatisfiable => write!(f, "circuit is unsatisfiable"),
            QueryError::DimensionMismatch { expected, got } => {
                write!(
                    f,
                    "probability vector has {got} entries, circuit has {expected} variables"
                )
            }
            QueryError::BadThreshold(t) => write!(f, "threshold {t} must be positive"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for QueryError {}

/// Work counters for the single-pass guarantee.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub node_visits: u64,
    pub arith_ops: u64,
}

fn check_dims(c: &Circuit, p: &ProbabilityVector) -> Result<(), QueryError> {
    if p.len() != c.vars().len() {
        return Err(QueryError::DimensionMismatch {
            expected: c.vars().len(),
            got: p.len(),
        });
    }
    Ok(())
}

fn require_decomposable(c: &Circuit) -> Result<(), QueryError> {
    if !check_structure(c).decomposable {
        return Err(QueryError::NotDecomposable);
    }
    Ok(())
}

fn require_ddnnf(c: &Circuit) -> Result<(), QueryError> {
    let r = check_structure(c);
    if !r.decomposable {
        return Err(QueryError::NotDecomposable);
    }
    match r.deterministic {
        Tristate::True => Ok(()),
        Tristate::False => Err(QueryError::NotDeterministic),
        Tristate::Unknown => Err(QueryError::DeterminismUnknown),
    }
}

/// Smooth in the strong sense needed by the EQE/MPE recurrences: every OR
/// node's children mention the same variables and the root mentions all of
/// them.
fn is_fully_smooth(c: &Circuit) -> bool {
    if !check_structure(c).smooth {
        return false;
    }
    let reach = c.reachable();
    let mut mentioned = Bits::new(c.vars().len());
    for (i, n) in c.nodes().iter().enumerate() {
        if reach[i] {
            if let Node::Lit { var, .. } = n {
                mentioned.set(*var as usize);
            }
        }
    }
    mentioned.count_ones() == c.vars().len()
}

fn ensure_fully_smooth(c: &Circuit) -> Cow<'_, Circuit> {
    if is_fully_smooth(c) {
        Cow::Borrowed(c)
    } else {
        Cow::Owned(c.smooth())
    }
}

/// Probability that a random state satisfies the circuit: literals score
/// `p` / `1 - p`, AND multiplies, OR adds. Requires a d-DNNF; smoothness is
/// unnecessary because `p + (1 - p) = 1` for unmentioned variables.
pub fn pqe(c: &Circuit, p: &ProbabilityVector) -> Result<f64, QueryError> {
    pqe_counted(c, p).map(|(v, _)| v)
}

pub fn pqe_counted(c: &Circuit, p: &ProbabilityVector) -> Result<(f64, QueryStats), QueryError> {
    check_dims(c, p)?;
    require_ddnnf(c)?;
    let mut stats = QueryStats::default();
    let reach = c.reachable();
    let mut val = vec![0.0f64; c.node_count()];
    for (i, n) in c.nodes().iter().enumerate() {
        if !reach[i] {
            continue;
        }
        stats.node_visits += 1;
        val[i] = match n {
            Node::True => 1.0,
            Node::False => 0.0,
            Node::Lit { var, positive } => {
                stats.arith_ops += 1;
                let pv = p.get(*var as usize);
                if *positive {
                    pv
                } else {
                    1.0 - pv
                }
            }
            Node::And(cs) => {
                stats.arith_ops += cs.len() as u64;
                cs.iter().map(|ch| val[ch.index()]).product()
            }
            Node::Or(cs) => {
                stats.arith_ops += cs.len() as u64;
                let mut sum = KahanSum::default();
                for ch in cs {
                    sum.add(val[ch.index()]);
                }
                sum.value()
            }
        };
    }
    Ok((val[c.root().index()], stats))
}

/// Entropy (in nats) of the product distribution conditioned on the
/// circuit, over `(Z, S)` pairs with `S = sum w ln w`.
pub fn eqe(c: &Circuit, p: &ProbabilityVector) -> Result<f64, QueryError> {
    eqe_counted(c, p).map(|(v, _)| v)
}

pub fn eqe_counted(c: &Circuit, p: &ProbabilityVector) -> Result<(f64, QueryStats), QueryError> {
    check_dims(c, p)?;
    require_ddnnf(c)?;
    let smoothed = ensure_fully_smooth(c);
    let c = smoothed.as_ref();
    let mut stats = QueryStats::default();
    let reach = c.reachable();
    let mut zs: Vec<(f64, f64)> = vec![(0.0, 0.0); c.node_count()];
    for (i, n) in c.nodes().iter().enumerate() {
        if !reach[i] {
            continue;
        }
        stats.node_visits += 1;
        zs[i] = match n {
            Node::True => (1.0, 0.0),
            Node::False => (0.0, 0.0),
            Node::Lit { var, positive } => {
                stats.arith_ops += 1;
                let pv = p.get(*var as usize);
                let w = if *positive { pv } else { 1.0 - pv };
                (w, w * math::ln(w))
            }
            Node::And(cs) => {
                stats.arith_ops += cs.len() as u64;
                let mut z = 1.0;
                let mut s = 0.0;
                for ch in cs {
                    let (zc, sc) = zs[ch.index()];
                    s = s * zc + z * sc;
                    z *= zc;
                }
                (z, s)
            }
            Node::Or(cs) => {
                stats.arith_ops += cs.len() as u64;
                let mut z = KahanSum::default();
                let mut s = KahanSum::default();
                for ch in cs {
                    let (zc, sc) = zs[ch.index()];
                    z.add(zc);
                    s.add(sc);
                }
                (z.value(), s.value())
            }
        };
    }
    let (z, s) = zs[c.root().index()];
    if z <= 0.0 {
        return Err(QueryError::Unsatisfiable);
    }
    Ok((math::ln(z) - s / z, stats))
}

struct LogWeights {
    pos: Vec<f64>,
    neg: Vec<f64>,
}

impl LogWeights {
    fn new(p: &ProbabilityVector) -> LogWeights {
        LogWeights {
            pos: p.values().iter().map(|&x| math::ln(x)).collect(),
            neg: p.values().iter().map(|&x| math::ln(1.0 - x)).collect(),
        }
    }

    fn get(&self, var: usize, positive: bool, forced: Option<&[Option<bool>]>) -> f64 {
        if let Some(fs) = forced {
            if let Some(required) = fs[var] {
                if required != positive {
                    return f64::NEG_INFINITY;
                }
            }
        }
        if positive {
            self.pos[var]
        } else {
            self.neg[var]
        }
    }
}

/// Max log-weight completion per node; the bound source for threshold
/// enumeration.
fn score_pass(c: &Circuit, lw: &LogWeights, forced: Option<&[Option<bool>]>) -> Vec<f64> {
    let reach = c.reachable();
    let mut m = vec![f64::NEG_INFINITY; c.node_count()];
    for (i, n) in c.nodes().iter().enumerate() {
        if !reach[i] {
            continue;
        }
        m[i] = match n {
            Node::True => 0.0,
            Node::False => f64::NEG_INFINITY,
            Node::Lit { var, positive } => lw.get(*var as usize, *positive, forced),
            Node::And(cs) => cs.iter().map(|ch| m[ch.index()]).sum(),
            Node::Or(cs) => cs
                .iter()
                .map(|ch| m[ch.index()])
                .fold(f64::NEG_INFINITY, f64::max),
        };
    }
    m
}

/// Max-sum pass with argmax fragments. On a fully smooth DNNF the root
/// fragment is a complete best state; ties at OR nodes resolve toward the
/// lexicographically smallest fragment, so the returned state is the
/// lexicographically smallest optimum.
fn mpe_pass(
    c: &Circuit,
    lw: &LogWeights,
    forced: Option<&[Option<bool>]>,
    stats: &mut QueryStats,
) -> Option<State> {
    let k = c.vars().len();
    let reach = c.reachable();
    let counts = crate::structure::fragment_parent_counts(c, &reach);
    let mut frag: Vec<Option<Rc<Bits>>> = vec![None; c.node_count()];
    let mut remaining = counts;
    let mut score = vec![f64::NEG_INFINITY; c.node_count()];

    for (i, n) in c.nodes().iter().enumerate() {
        if !reach[i] {
            continue;
        }
        stats.node_visits += 1;
        let (s, fr): (f64, Rc<Bits>) = match n {
            Node::True => (0.0, Rc::new(Bits::new(k))),
            Node::False => (f64::NEG_INFINITY, Rc::new(Bits::new(k))),
            Node::Lit { var, positive } => {
                stats.arith_ops += 1;
                let mut b = Bits::new(k);
                if *positive {
                    b.set(*var as usize);
                }
                (lw.get(*var as usize, *positive, forced), Rc::new(b))
            }
            Node::And(cs) => {
                stats.arith_ops += cs.len() as u64;
                let s: f64 = cs.iter().map(|ch| score[ch.index()]).sum();
                if s == f64::NEG_INFINITY {
                    (s, Rc::new(Bits::new(k)))
                } else if cs.len() == 1 {
                    (s, frag[cs[0].index()].clone().unwrap())
                } else {
                    let mut b = (*frag[cs[0].index()].as_ref().unwrap().clone()).clone();
                    for ch in &cs[1..] {
                        b.union_with(frag[ch.index()].as_ref().unwrap());
                    }
                    (s, Rc::new(b))
                }
            }
            Node::Or(cs) => {
                stats.arith_ops += cs.len() as u64;
                let mut best: Option<(f64, Rc<Bits>)> = None;
                for ch in cs {
                    let s = score[ch.index()];
                    if s == f64::NEG_INFINITY {
                        continue;
                    }
                    let f = frag[ch.index()].clone().unwrap();
                    best = Some(match best {
                        None => (s, f),
                        Some((bs, bf)) => {
                            if s > bs || (s == bs && lex_less(&f, &bf)) {
                                (s, f)
                            } else {
                                (bs, bf)
                            }
                        }
                    });
                }
                match best {
                    None => (f64::NEG_INFINITY, Rc::new(Bits::new(k))),
                    Some((s, f)) => (s, f),
                }
            }
        };
        score[i] = s;
        frag[i] = Some(fr);
        for ch in n.children() {
            let j = ch.index();
            remaining[j] -= 1;
            if remaining[j] == 0 {
                frag[j] = None;
            }
        }
    }

    let root = c.root().index();
    if score[root] == f64::NEG_INFINITY {
        return None;
    }
    let bits = frag[root].as_ref().unwrap();
    Some(State::new((0..k).map(|v| bits.get(v)).collect()))
}

/// `a` strictly before `b` in bit-string order (`0` before `1` at the first
/// differing index). Fragments compared this way always share a variable
/// domain.
fn lex_less(a: &Bits, b: &Bits) -> bool {
    match a.first_difference(b) {
        None => false,
        Some(i) => !a.get(i),
    }
}

/// Most probable satisfying state with its probability; requires a smooth
/// DNNF (determinism is unnecessary for maximisation). Ties break toward
/// the lexicographically smallest state.
pub fn mpe(c: &Circuit, p: &ProbabilityVector) -> Result<(State, f64), QueryError> {
    mpe_counted(c, p).map(|(s, v, _)| (s, v))
}

pub fn mpe_counted(
    c: &Circuit,
    p: &ProbabilityVector,
) -> Result<(State, f64, QueryStats), QueryError> {
    check_dims(c, p)?;
    require_decomposable(c)?;
    let smoothed = ensure_fully_smooth(c);
    let c = smoothed.as_ref();
    let lw = LogWeights::new(p);
    let mut stats = QueryStats::default();
    match mpe_pass(c, &lw, None, &mut stats) {
        None => Err(QueryError::Unsatisfiable),
        Some(state) => {
            let prob = p.state_probability(&state);
            Ok((state, prob, stats))
        }
    }
}

/// Pruning slack on the log scale; branches are cut only when they are
/// below the threshold by more than this, and exact membership is
/// re-checked on every complete state.
const LOG_SLACK: f64 = 1e-9;

/// All satisfying states with probability at least `t`, by decreasing
/// probability then lexicographic order. Restricted to deterministic
/// circuits: on a plain DNNF the same state can be derived twice and
/// deduplication would break the output-polynomial guarantee.
pub fn thresh_enum(
    c: &Circuit,
    p: &ProbabilityVector,
    t: f64,
) -> Result<Vec<RankedState>, QueryError> {
    check_dims(c, p)?;
    require_ddnnf(c)?;
    if t.is_nan() || t <= 0.0 {
        return Err(QueryError::BadThreshold(t));
    }
    let smoothed = ensure_fully_smooth(c);
    let c = smoothed.as_ref();
    let lw = LogWeights::new(p);
    let bound = score_pass(c, &lw, None);
    let ln_t = math::ln(t);

    let mut out: Vec<RankedState> = Vec::new();
    let root = c.root();
    if bound[root.index()] >= ln_t - LOG_SLACK {
        let k = c.vars().len();
        let assign = vec![0i8; k];
        dfs_collect(
            c,
            &lw,
            &bound,
            ln_t,
            vec![root],
            bound[root.index()],
            0.0,
            assign,
            p,
            t,
            &mut out,
        );
    }
    out.sort_by(cmp_ranked);
    Ok(out)
}

/// Depth-first expansion carrying `score` (log-weight of fixed literals)
/// and `rest` (sum of best completions of still-pending nodes); a branch is
/// viable while `score + rest` clears the threshold.
#[allow(clippy::too_many_arguments)]
fn dfs_collect(
    c: &Circuit,
    lw: &LogWeights,
    bound: &[f64],
    ln_t: f64,
    mut pending: Vec<NodeId>,
    mut rest: f64,
    mut score: f64,
    mut assign: Vec<i8>,
    p: &ProbabilityVector,
    t: f64,
    out: &mut Vec<RankedState>,
) {
    loop {
        let Some(id) = pending.pop() else {
            debug_assert!(
                assign.iter().all(|&a| a != 0),
                "smooth circuits assign every variable"
            );
            let state = State::new(assign.iter().map(|&a| a > 0).collect());
            let probability = p.state_probability(&state);
            if probability >= t {
                out.push(RankedState { state, probability });
            }
            return;
        };
        rest -= bound[id.index()];
        match c.node(id) {
            Node::True => {}
            Node::False => return,
            Node::Lit { var, positive } => {
                let w = lw.get(*var as usize, *positive, None);
                if w == f64::NEG_INFINITY {
                    return;
                }
                assign[*var as usize] = if *positive { 1 } else { -1 };
                score += w;
            }
            Node::And(cs) => {
                for ch in cs {
                    rest += bound[ch.index()];
                    pending.push(*ch);
                }
            }
            Node::Or(cs) => {
                for ch in cs {
                    if score + bound[ch.index()] + rest >= ln_t - LOG_SLACK {
                        let mut p2 = pending.clone();
                        p2.push(*ch);
                        dfs_collect(
                            c,
                            lw,
                            bound,
                            ln_t,
                            p2,
                            rest + bound[ch.index()],
                            score,
                            assign.clone(),
                            p,
                            t,
                            out,
                        );
                    }
                }
                return;
            }
        }
    }
}

/// First `min(k, model count)` states by decreasing probability, realised
/// by ranked enumeration: repeatedly solve MPE on the space partitioned by
/// agreements/disagreements with already-emitted states.
pub fn top_k(c: &Circuit, p: &ProbabilityVector, k: usize) -> Result<Vec<RankedState>, QueryError> {
    check_dims(c, p)?;
    require_ddnnf(c)?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let smoothed = ensure_fully_smooth(c);
    let c = smoothed.as_ref();
    let lw = LogWeights::new(p);
    let n_vars = c.vars().len();
    let mut stats = QueryStats::default();
    let ranked = lawler::enumerate(
        n_vars,
        |forced| {
            mpe_pass(c, &lw, Some(forced), &mut stats).map(|state| {
                let probability = p.state_probability(&state);
                (state, probability)
            })
        },
        StopRule::Count(k),
    );
    Ok(ranked)
}
