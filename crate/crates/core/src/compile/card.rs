//! Cardinality constraints to OBDD-shaped d-DNNF.
//!
//! A grid of shared decision nodes: cell `(k, l)` decides variable `Y_k`
//! and constrains the count among `Y_1..Y_k` to `l` (exactly / at most /
//! at least, per the operator). Cell `(k, l)` branches to `(k-1, l-1)` on
//! the positive side and `(k-1, l)` on the negative side, so at most
//! `(l + 1) * n` cells of six wires each are ever materialised.

use crate::circuit::{Circuit, CircuitBuilder, NodeId};
use crate::compile::CompileError;
use crate::theory::{CardOp, Language, Theory};
use alloc::vec::Vec;

pub fn compile_card(t: &Theory) -> Result<Circuit, CompileError> {
    build(t, true)
}

/// Same template without constant folding; `FALSE` branches survive for the
/// trim pass to remove.
pub fn compile_card_untrimmed(t: &Theory) -> Result<Circuit, CompileError> {
    build(t, false)
}

fn build(t: &Theory, fold: bool) -> Result<Circuit, CompileError> {
    if t.language() != Language::Card {
        return Err(CompileError::WrongLanguage {
            expected: "card",
            got: t.language(),
        });
    }
    let payload = t.card().expect("card payload");
    let (n, op, bound) = (payload.n, payload.op, payload.bound);
    let mut b = if fold {
        CircuitBuilder::new(t.vars().clone())
    } else {
        CircuitBuilder::raw(t.vars().clone())
    };

    // cells[k][l - lo(k)] where only counts reachable from (n, bound) are
    // materialised.
    let lo = |k: usize| bound.saturating_sub(n - k);
    let mut cells: Vec<Vec<NodeId>> = Vec::with_capacity(n + 1);
    cells.push(Vec::new());

    // Constant short-circuits per operator.
    let fetch = |b: &mut CircuitBuilder, cells: &[Vec<NodeId>], k: usize, l: isize| -> NodeId {
        match op {
            CardOp::Eq => {
                if l < 0 || l as usize > k {
                    return b.f();
                }
            }
            CardOp::Le => {
                if l < 0 {
                    return b.f();
                }
                if l as usize >= k {
                    return b.t();
                }
            }
            CardOp::Ge => {
                if l <= 0 {
                    return b.t();
                }
                if l as usize > k {
                    return b.f();
                }
            }
        }
        let l = l as usize;
        if k == 0 {
            // Only Eq reaches here, with l == 0.
            return b.t();
        }
        cells[k][l - lo(k)]
    };

    for k in 1..=n {
        let lo_k = lo(k);
        let hi_k = match op {
            CardOp::Eq => bound.min(k),
            CardOp::Le => bound.min(k.saturating_sub(1)),
            CardOp::Ge => bound.min(k),
        };
        let mut row = Vec::new();
        for l in lo_k..=hi_k {
            if op == CardOp::Ge && l == 0 {
                // Ge cells with l = 0 short-circuit to TRUE via fetch; keep
                // a placeholder so row indexing stays aligned.
                let t_node = b.t();
                row.push(t_node);
                continue;
            }
            let hi = fetch(&mut b, &cells, k - 1, l as isize - 1);
            let lo_child = fetch(&mut b, &cells, k - 1, l as isize);
            row.push(b.decision(k - 1, hi, lo_child));
        }
        cells.push(row);
    }

    let root = fetch(&mut b, &cells, n, bound as isize);
    Ok(b.finish(root))
}
