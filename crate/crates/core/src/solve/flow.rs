//! Max-flow / min-cut on small real-capacity networks.
//!
//! Edmonds–Karp with an epsilon floor on residual capacities; networks here
//! come from closure reductions, so a few hundred nodes is the expected
//! scale.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

const EPS: f64 = 1e-12;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: f64,
}

/// Directed flow network with a designated source and sink. Arcs keep their
/// residual capacity; the original capacity is remembered separately for
/// cut evaluation.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    original_cap: Vec<f64>,
    adj: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> FlowNetwork {
        assert!(source < node_count && sink < node_count && source != sink);
        FlowNetwork {
            arcs: Vec::new(),
            original_cap: Vec::new(),
            adj: vec![Vec::new(); node_count],
            source,
            sink,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: f64) {
        assert!(cap >= 0.0);
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0.0 });
        self.original_cap.push(cap);
        self.original_cap.push(0.0);
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
    }

    /// Capacity of the cut `(side, complement)` under the original
    /// capacities; `side` must contain the source and not the sink.
    pub fn cut_capacity(&self, side: &[bool]) -> f64 {
        let mut total = 0.0;
        for (id, arc) in self.arcs.iter().enumerate() {
            if id % 2 == 0 {
                let from = self.arcs[id ^ 1].to;
                if side[from] && !side[arc.to] {
                    total += self.original_cap[id];
                }
            }
        }
        total
    }

    /// Runs max-flow to completion and returns the flow value.
    pub fn max_flow(&mut self) -> f64 {
        let n = self.adj.len();
        let mut total = 0.0;
        loop {
            // BFS for a shortest augmenting path.
            let mut pred: Vec<Option<usize>> = vec![None; n];
            let mut seen = vec![false; n];
            seen[self.source] = true;
            let mut queue = VecDeque::new();
            queue.push_back(self.source);
            'bfs: while let Some(u) = queue.pop_front() {
                for &id in &self.adj[u] {
                    let arc = &self.arcs[id];
                    if arc.cap > EPS && !seen[arc.to] {
                        seen[arc.to] = true;
                        pred[arc.to] = Some(id);
                        if arc.to == self.sink {
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[self.sink] {
                return total;
            }
            // Bottleneck along the path.
            let mut bottleneck = f64::INFINITY;
            let mut v = self.sink;
            while v != self.source {
                let id = pred[v].unwrap();
                bottleneck = bottleneck.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = self.sink;
            while v != self.source {
                let id = pred[v].unwrap();
                self.arcs[id].cap -= bottleneck;
                if self.arcs[id].cap < EPS {
                    self.arcs[id].cap = 0.0;
                }
                self.arcs[id ^ 1].cap += bottleneck;
                v = self.arcs[id ^ 1].to;
            }
            total += bottleneck;
        }
    }

    /// Source side of the minimum cut: nodes reachable in the residual
    /// graph. Call after [`FlowNetwork::max_flow`]; this is the unique
    /// minimal source side among all minimum cuts.
    pub fn source_side(&self) -> Vec<bool> {
        let mut side = vec![false; self.adj.len()];
        side[self.source] = true;
        let mut queue = VecDeque::new();
        queue.push_back(self.source);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let arc = &self.arcs[id];
                if arc.cap > EPS && !side[arc.to] {
                    side[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        side
    }

    /// Max-flow value together with the minimal min-cut source side.
    pub fn min_cut(&mut self) -> (f64, Vec<bool>) {
        let value = self.max_flow();
        let side = self.source_side();
        debug_assert!(
            (self.cut_capacity(&side) - value).abs() <= 1e-6 * value.abs().max(1.0),
            "max-flow and min-cut disagree"
        );
        (value, side)
    }
}
