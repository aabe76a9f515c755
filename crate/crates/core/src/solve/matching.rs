//! MPE and ranked enumeration for matching theories via maximum weight
//! matching on general graphs.
//!
//! The matching routine follows the classic primal-dual blossom method
//! (Galil's survey; structure after van Rantwijk's reference
//! implementation): labels grow alternating trees from free vertices,
//! odd cycles collapse into blossoms, and dual adjustments drive every
//! stage to an augmenting path or to optimality.

use crate::oracle::{cmp_ranked, RankedState};
use crate::prob::ProbabilityVector;
use crate::solve::lawler::{self, StopRule};
use crate::solve::SolveError;
use crate::theory::{Language, Theory, UndirectedGraphPayload};
use crate::vars::State;
use alloc::vec;
use alloc::vec::Vec;

const SENTINEL: usize = usize::MAX;

/// Maximum weight matching; returns `mate`, where `mate[v]` is the remote
/// endpoint of the matched edge at `v` (edge `k` has endpoints `2k` and
/// `2k + 1`) or `SENTINEL` when `v` is single. Only positive-gain edges end
/// up matched; all-negative inputs yield the empty matching.
pub fn max_weight_matching(n_vertices: usize, edges: &[(usize, usize, f64)]) -> Vec<usize> {
    if edges.is_empty() {
        return vec![SENTINEL; n_vertices];
    }
    Blossom::new(n_vertices, edges).run()
}

/// Edge indices selected by a `mate` array produced from `edges`.
pub fn matched_edges(mate: &[usize], edges: &[(usize, usize, f64)]) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, &(i, _, _)) in edges.iter().enumerate() {
        if mate.get(i).copied() == Some(2 * k + 1) {
            out.push(k);
        }
    }
    out
}

struct Blossom<'a> {
    nvertex: usize,
    nedge: usize,
    edges: &'a [(usize, usize, f64)],
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Vec<usize>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<f64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(nvertex: usize, edges: &'a [(usize, usize, f64)]) -> Blossom<'a> {
        let nedge = edges.len();
        let maxweight = edges.iter().map(|e| e.2).fold(0.0f64, f64::max);
        let endpoint: Vec<usize> = (0..2 * nedge)
            .map(|p| {
                if p % 2 == 0 {
                    edges[p / 2].0
                } else {
                    edges[p / 2].1
                }
            })
            .collect();
        let mut neighbend = vec![Vec::new(); nvertex];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            debug_assert!(i != j && i < nvertex && j < nvertex);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut dualvar = vec![maxweight; nvertex];
        dualvar.resize(2 * nvertex, 0.0);
        let mut blossombase: Vec<usize> = (0..nvertex).collect();
        blossombase.resize(2 * nvertex, SENTINEL);
        Blossom {
            nvertex,
            nedge,
            edges,
            endpoint,
            neighbend,
            mate: vec![SENTINEL; nvertex],
            label: vec![0; 2 * nvertex],
            labelend: vec![SENTINEL; 2 * nvertex],
            inblossom: (0..nvertex).collect(),
            blossomparent: vec![SENTINEL; 2 * nvertex],
            blossomchilds: vec![Vec::new(); 2 * nvertex],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * nvertex],
            bestedge: vec![SENTINEL; 2 * nvertex],
            blossombestedges: vec![Vec::new(); 2 * nvertex],
            unusedblossoms: (nvertex..2 * nvertex).collect(),
            dualvar,
            allowedge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    fn slack(&self, k: usize) -> f64 {
        let (i, j, wt) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2.0 * wt
    }

    fn blossom_leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.nvertex {
            out.push(b);
        } else {
            for &c in &self.blossomchilds[b] {
                self.blossom_leaves(c, out);
            }
        }
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.blossom_leaves(b, &mut out);
        out
    }

    /// Label the top-level blossom of `w`; S-blossoms feed the scan queue,
    /// T-blossoms immediately label their mate S.
    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = SENTINEL;
        self.bestedge[b] = SENTINEL;
        if t == 1 {
            let ls = self.leaves(b);
            self.queue.extend(ls);
        } else if t == 2 {
            let base = self.blossombase[b];
            let mate_base = self.mate[base];
            debug_assert!(mate_base != SENTINEL);
            self.assign_label(self.endpoint[mate_base], 1, mate_base ^ 1);
        }
    }

    /// Trace back from both ends of an allowable S-S edge to find the
    /// common ancestor blossom (base of a new blossom), or `SENTINEL` when
    /// the trees are rooted at different free vertices (augmenting path).
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = SENTINEL;
        while v != SENTINEL || w != SENTINEL {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], 1);
            path.push(b);
            self.label[b] = 5;
            debug_assert_eq!(self.labelend[b], self.mate[self.blossombase[b]]);
            if self.labelend[b] == SENTINEL {
                v = SENTINEL;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], 2);
                debug_assert!(self.labelend[b] != SENTINEL);
                v = self.endpoint[self.labelend[b]];
            }
            if w != SENTINEL {
                core::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    /// Collapse the odd cycle through edge `k` and base `base` into a new
    /// blossom.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom pool exhausted");
        self.blossombase[b] = base;
        self.blossomparent[b] = SENTINEL;
        self.blossomparent[bb] = b;

        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            debug_assert!(
                self.label[bv] == 2
                    || (self.label[bv] == 1
                        && self.labelend[bv] == self.mate[self.blossombase[bv]])
            );
            debug_assert!(self.labelend[bv] != SENTINEL);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            debug_assert!(
                self.label[bw] == 2
                    || (self.label[bw] == 1
                        && self.labelend[bw] == self.mate[self.blossombase[bw]])
            );
            debug_assert!(self.labelend[bw] != SENTINEL);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }

        // The children list must be in place before leaves(b) walks it.
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;

        debug_assert_eq!(self.label[bb], 1);
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0.0;
        for leaf in self.leaves(b) {
            if self.label[self.inblossom[leaf]] == 2 {
                self.queue.push(leaf);
            }
            self.inblossom[leaf] = b;
        }

        // Recompute best-edge lists for the new blossom.
        let mut bestedgeto = vec![SENTINEL; 2 * self.nvertex];
        for &bv in &path {
            let nblists: Vec<Vec<usize>> = if self.blossombestedges[bv].is_empty() {
                self.leaves(bv)
                    .into_iter()
                    .map(|leaf| self.neighbend[leaf].iter().map(|p| p / 2).collect())
                    .collect()
            } else {
                vec![self.blossombestedges[bv].clone()]
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        core::mem::swap(&mut i, &mut j);
                    }
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == SENTINEL
                            || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.blossombestedges[bv] = Vec::new();
            self.bestedge[bv] = SENTINEL;
        }
        self.blossombestedges[b] = bestedgeto.into_iter().filter(|&k| k != SENTINEL).collect();
        self.bestedge[b] = SENTINEL;
        for idx in 0..self.blossombestedges[b].len() {
            let k = self.blossombestedges[b][idx];
            if self.bestedge[b] == SENTINEL || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
    }

    /// Expand a blossom whose dual reached zero (or unconditionally at the
    /// end of a stage).
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = SENTINEL;
            if s < self.nvertex {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0.0 {
                self.expand_blossom(s, endstage);
            } else {
                for leaf in self.leaves(s) {
                    self.inblossom[leaf] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            // Relabel the even-length half of the cycle between the entry
            // child and the base; the rest becomes free.
            debug_assert!(self.labelend[b] != SENTINEL);
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let len = self.blossomchilds[b].len() as i64;
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&c| c == entrychild)
                .expect("entry child in blossom") as i64;
            let (jstep, endptrick): (i64, i64) = if j & 1 != 0 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let idx = |x: i64| x.rem_euclid(len) as usize;
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let ep = self.blossomendps[b][idx(j - endptrick)] ^ (endptrick as usize) ^ 1;
                self.label[self.endpoint[ep]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                self.allowedge[(self.blossomendps[b][idx(j - endptrick)]) / 2] = true;
                j += jstep;
                p = self.blossomendps[b][idx(j - endptrick)] ^ (endptrick as usize);
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = self.blossomchilds[b][idx(j)];
            self.label[self.endpoint[p ^ 1]] = 2;
            self.label[bv] = 2;
            self.labelend[self.endpoint[p ^ 1]] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = SENTINEL;
            j += jstep;
            while self.blossomchilds[b][idx(j)] != entrychild {
                let bv = self.blossomchilds[b][idx(j)];
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let mut labelled = SENTINEL;
                for leaf in self.leaves(bv) {
                    if self.label[leaf] != 0 {
                        labelled = leaf;
                        break;
                    }
                }
                if labelled != SENTINEL {
                    debug_assert_eq!(self.label[labelled], 2);
                    debug_assert_eq!(self.inblossom[labelled], bv);
                    self.label[labelled] = 0;
                    self.label[self.endpoint[self.mate[self.blossombase[bv]]]] = 0;
                    let le = self.labelend[labelled];
                    self.assign_label(labelled, 2, le);
                }
                j += jstep;
            }
        }
        self.label[b] = 0;
        self.labelend[b] = SENTINEL;
        self.blossomchilds[b] = Vec::new();
        self.blossomendps[b] = Vec::new();
        self.blossombase[b] = SENTINEL;
        self.blossombestedges[b] = Vec::new();
        self.bestedge[b] = SENTINEL;
        self.unusedblossoms.push(b);
    }

    /// Swap matched/unmatched edges over the even-length alternating path
    /// through blossom `b` between vertex `v` and the base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nvertex {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len() as i64;
        let i = self.blossomchilds[b].iter().position(|&c| c == t).unwrap() as i64;
        let mut j = i;
        let (jstep, endptrick): (i64, i64) = if i & 1 != 0 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        let idx = |x: i64| x.rem_euclid(len) as usize;
        while j != 0 {
            j += jstep;
            let t = self.blossomchilds[b][idx(j)];
            let p = self.blossomendps[b][idx(j - endptrick)] ^ (endptrick as usize);
            if t >= self.nvertex {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.blossomchilds[b][idx(j)];
            if t >= self.nvertex {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(idx(i));
        self.blossomendps[b].rotate_left(idx(i));
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], self.blossombase[t]);
    }

    /// Swap matched/unmatched along the augmenting path through edge `k`.
    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], 1);
                debug_assert_eq!(self.labelend[bs], self.mate[self.blossombase[bs]]);
                if bs >= self.nvertex {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == SENTINEL {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], 2);
                debug_assert!(self.labelend[bt] != SENTINEL);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn run(mut self) -> Vec<usize> {
        for _stage in 0..self.nvertex {
            self.label = vec![0; 2 * self.nvertex];
            self.bestedge = vec![SENTINEL; 2 * self.nvertex];
            for b in self.nvertex..2 * self.nvertex {
                self.blossombestedges[b] = Vec::new();
            }
            self.allowedge = vec![false; self.nedge];
            self.queue.clear();
            for v in 0..self.nvertex {
                if self.mate[v] == SENTINEL && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, SENTINEL);
                }
            }
            let mut augmented = false;
            loop {
                while let Some(v) = self.queue.pop() {
                    debug_assert_eq!(self.label[self.inblossom[v]], 1);
                    let neighbors = self.neighbend[v].clone();
                    for p in neighbors {
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        if !self.allowedge[k] {
                            let kslack = self.slack(k);
                            if kslack <= 0.0 {
                                self.allowedge[k] = true;
                            } else if self.label[self.inblossom[w]] == 1 {
                                let b = self.inblossom[v];
                                if self.bestedge[b] == SENTINEL
                                    || kslack < self.slack(self.bestedge[b])
                                {
                                    self.bestedge[b] = k;
                                }
                            } else if self.label[w] == 0
                                && (self.bestedge[w] == SENTINEL
                                    || kslack < self.slack(self.bestedge[w]))
                            {
                                self.bestedge[w] = k;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != SENTINEL {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                debug_assert_eq!(self.label[self.inblossom[w]], 2);
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        }
                    }
                    if augmented {
                        break;
                    }
                }
                if augmented {
                    break;
                }

                // Dual adjustment: the tightest of (1) free-vertex duals,
                // (2) S-to-free edges, (3) S-to-S edges, (4) T-blossom
                // duals.
                let mut deltatype = 1;
                let mut delta: f64 = self.dualvar[..self.nvertex]
                    .iter()
                    .fold(f64::INFINITY, |a, &b| a.min(b))
                    .max(0.0);
                let mut deltaedge = SENTINEL;
                let mut deltablossom = SENTINEL;
                for v in 0..self.nvertex {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != SENTINEL {
                        let d = self.slack(self.bestedge[v]);
                        if d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * self.nvertex {
                    if self.blossomparent[b] == SENTINEL
                        && self.label[b] == 1
                        && self.bestedge[b] != SENTINEL
                    {
                        let d = self.slack(self.bestedge[b]) / 2.0;
                        if d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != SENTINEL
                        && self.blossomparent[b] == SENTINEL
                        && self.label[b] == 2
                        && self.dualvar[b] < delta
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for v in 0..self.nvertex {
                    match self.label[self.inblossom[v]] {
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != SENTINEL && self.blossomparent[b] == SENTINEL {
                        match self.label[b] {
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }

                match deltatype {
                    1 => break, // optimum reached
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    _ => {
                        self.expand_blossom(deltablossom, false);
                    }
                }
            }
            if !augmented {
                break;
            }
            for b in self.nvertex..2 * self.nvertex {
                if self.blossomparent[b] == SENTINEL
                    && self.blossombase[b] != SENTINEL
                    && self.label[b] == 2
                    && self.dualvar[b] == 0.0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
        self.mate
    }
}

struct MatchInstance<'a> {
    graph: &'a UndirectedGraphPayload,
    /// `(u, v)` endpoints of the edge carrying each variable.
    endpoints_of_var: Vec<(usize, usize)>,
    /// Perturbed logit per variable; the `-(i + 1) * eps` term makes
    /// tie-breaking deterministic and drops exactly-zero logits from the
    /// optimum.
    weights: Vec<f64>,
}

fn instance<'a>(t: &'a Theory, p: &ProbabilityVector) -> Result<MatchInstance<'a>, SolveError> {
    if t.language() != Language::Match {
        return Err(SolveError::WrongLanguage {
            expected: "match",
            got: t.language(),
        });
    }
    let graph = t.ugraph().expect("match payload is an undirected graph");
    if p.len() != t.vars().len() {
        return Err(SolveError::DimensionMismatch {
            expected: t.vars().len(),
            got: p.len(),
        });
    }
    let k = t.vars().len();
    let mut endpoints_of_var = vec![(0, 0); k];
    for (e, &var) in graph.edge_vars.iter().enumerate() {
        endpoints_of_var[var] = graph.edges[e];
    }
    let eps = 1e-9 / (k as f64 + 1.0);
    let weights = (0..k)
        .map(|i| p.logit_of(i) - (i as f64 + 1.0) * eps)
        .collect();
    Ok(MatchInstance {
        graph,
        endpoints_of_var,
        weights,
    })
}

/// Forced-in edges are fixed (and must be vertex-disjoint), forced-out
/// edges and everything touching a fixed endpoint are dropped, negative
/// perturbed weights are filtered, and the rest goes to the blossom solver.
fn solve_matching(
    inst: &MatchInstance<'_>,
    forced: &[Option<bool>],
) -> Option<(State, Vec<usize>)> {
    let nv = inst.graph.vertices.len();
    let k = forced.len();
    let mut blocked = vec![false; nv];
    let mut chosen: Vec<usize> = Vec::new();
    for (i, f) in forced.iter().enumerate() {
        if *f == Some(true) {
            let (u, v) = inst.endpoints_of_var[i];
            if blocked[u] || blocked[v] {
                return None;
            }
            blocked[u] = true;
            blocked[v] = true;
            chosen.push(i);
        }
    }
    let mut solver_edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut solver_vars: Vec<usize> = Vec::new();
    for (i, f) in forced.iter().enumerate() {
        if f.is_some() {
            continue;
        }
        let (u, v) = inst.endpoints_of_var[i];
        if blocked[u] || blocked[v] || inst.weights[i] <= 0.0 {
            continue;
        }
        solver_edges.push((u, v, inst.weights[i]));
        solver_vars.push(i);
    }
    let mate = max_weight_matching(nv, &solver_edges);
    for e in matched_edges(&mate, &solver_edges) {
        chosen.push(solver_vars[e]);
    }
    let state = State::from_selected(k, &chosen);
    // Structural post-check: the result must be a matching.
    let mut used = vec![false; nv];
    for &i in &chosen {
        let (u, v) = inst.endpoints_of_var[i];
        assert!(!used[u] && !used[v], "solver output is not a matching");
        used[u] = true;
        used[v] = true;
    }
    Some((state, chosen))
}

/// Most probable matching containing every forced-in edge and no forced-out
/// edge, with its probability. Ties resolve through the fixed index
/// perturbation of the weights.
pub fn match_mpe(
    t: &Theory,
    p: &ProbabilityVector,
    forced: &[Option<bool>],
) -> Result<(State, f64), SolveError> {
    let inst = instance(t, p)?;
    if forced.len() != t.vars().len() {
        return Err(SolveError::DimensionMismatch {
            expected: t.vars().len(),
            got: forced.len(),
        });
    }
    match solve_matching(&inst, forced) {
        None => Err(SolveError::ForcedEdgesShareVertex),
        Some((state, _)) => {
            let prob = p.state_probability(&state);
            Ok((state, prob))
        }
    }
}

/// All matchings with probability at least `threshold`, by decreasing
/// probability then lexicographic order.
pub fn match_thresh_enum(
    t: &Theory,
    p: &ProbabilityVector,
    threshold: f64,
) -> Result<Vec<RankedState>, SolveError> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(SolveError::BadThreshold(threshold));
    }
    let inst = instance(t, p)?;
    let mut out = lawler::enumerate(
        t.vars().len(),
        |forced| {
            solve_matching(&inst, forced).map(|(s, _)| {
                let prob = p.state_probability(&s);
                (s, prob)
            })
        },
        StopRule::Threshold(threshold),
    );
    out.sort_by(cmp_ranked);
    Ok(out)
}

/// First `k` matchings by decreasing probability.
pub fn match_top_k(
    t: &Theory,
    p: &ProbabilityVector,
    k: usize,
) -> Result<Vec<RankedState>, SolveError> {
    let inst = instance(t, p)?;
    Ok(lawler::enumerate(
        t.vars().len(),
        |forced| {
            solve_matching(&inst, forced).map(|(s, _)| {
                let prob = p.state_probability(&s);
                (s, prob)
            })
        },
        StopRule::Count(k),
    ))
}
