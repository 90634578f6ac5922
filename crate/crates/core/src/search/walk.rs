//! Gray-code walk over orientations with incremental degree and index
//! updates. Each step flips one edge, so two vertices change.

use crate::graph::Graph;
use crate::index::{PowerTable, Weight};
use crate::par::{map_range, Parallelism};

/// Number of high free bits fixed per task.
const SPLIT_BITS: usize = 8;

/// The orientation currently visited.
pub(crate) struct Snapshot<'a, W> {
    pub mask: u64,
    pub out: &'a [usize],
    pub inn: &'a [usize],
    /// Doubled index.
    pub value: &'a W,
    /// Vertices with both an in-arc and an out-arc.
    pub mixed: usize,
}

/// Folds `step` over every orientation obtained from the all-forward mask
/// by flipping any subset of the `free` edges. Partial results are merged
/// in task order, so the outcome does not depend on scheduling.
pub(crate) fn fold_orientations<W, A, I, S, M>(
    g: &Graph,
    free: &[usize],
    table: &PowerTable<W>,
    par: Parallelism,
    init: I,
    step: S,
    merge: M,
) -> A
where
    W: Weight,
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &Snapshot<'_, W>) + Sync + Send,
    M: Fn(A, A) -> A,
{
    let split = free.len().min(SPLIT_BITS);
    let (low, high) = free.split_at(free.len() - split);
    let parts = map_range(1 << split, par, |task| {
        let mut acc = init();
        let prefix = high
            .iter()
            .enumerate()
            .filter(|(i, _)| task >> i & 1 == 1)
            .fold(0u64, |m, (_, &e)| m | 1 << e);
        walk_chunk(g, low, prefix, table, &mut acc, &step);
        acc
    });
    parts.into_iter().reduce(merge).unwrap_or_else(init)
}

fn is_mixed(out: &[usize], inn: &[usize], u: usize) -> bool {
    out[u] > 0 && inn[u] > 0
}

fn walk_chunk<W, A, S>(g: &Graph, low: &[usize], start: u64, table: &PowerTable<W>, acc: &mut A, step: &S)
where
    W: Weight,
    S: Fn(&mut A, &Snapshot<'_, W>),
{
    let n = g.n();
    let edges = g.edges();
    let mut out = vec![0usize; n];
    let mut inn = vec![0usize; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        let (x, y) = if start >> i & 1 == 0 { (u, v) } else { (v, u) };
        out[x] += 1;
        inn[y] += 1;
    }
    let mut mask = start;
    let mut value = table.vertex_sum(&out, &inn);
    let mut mixed = (0..n).filter(|&u| is_mixed(&out, &inn, u)).count();
    let steps = 1u64 << low.len();
    for i in 0..steps {
        if i > 0 {
            let e = low[i.trailing_zeros() as usize];
            let (u, v) = edges[e];
            let (x, y) = if mask >> e & 1 == 0 { (u, v) } else { (v, u) };
            mixed -= usize::from(is_mixed(&out, &inn, x)) + usize::from(is_mixed(&out, &inn, y));
            if W::EXACT {
                let old = table.vertex[out[x]]
                    .add(&table.vertex[inn[x]])
                    .add(&table.vertex[out[y]])
                    .add(&table.vertex[inn[y]]);
                value = value.sub(&old);
            }
            out[x] -= 1;
            inn[y] -= 1;
            out[y] += 1;
            inn[x] += 1;
            if W::EXACT {
                let new = table.vertex[out[x]]
                    .add(&table.vertex[inn[x]])
                    .add(&table.vertex[out[y]])
                    .add(&table.vertex[inn[y]]);
                value = value.add(&new);
            } else {
                // Recomputed so rounding error does not accumulate.
                value = table.vertex_sum(&out, &inn);
            }
            mixed += usize::from(is_mixed(&out, &inn, x)) + usize::from(is_mixed(&out, &inn, y));
            mask ^= 1 << e;
        }
        step(
            acc,
            &Snapshot {
                mask,
                out: &out,
                inn: &inn,
                value: &value,
                mixed,
            },
        );
    }
}
