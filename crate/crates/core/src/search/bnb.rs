//! Branch and bound over edge directions.
//!
//! Caps: a vertex's final out-degree is at most its decided out-degree
//! plus its undecided incident edges, and likewise for in-degree. Bounding
//! every arc term by these caps gives an admissible bound on the doubled
//! index of any completion.

use std::cmp::Ordering;

use super::{build_result, check_edges, full_mask, sink_source_masks, Best, ExtremalResult, SearchOptions};
use crate::error::Result;
use crate::graph::Graph;
use crate::index::{tables, with_tables, Exponent, PowerTable, Weight};
use crate::par::map_range;

use super::ENUMERATION_EDGE_CAP;

/// Decisions fixed per parallel task.
const SPLIT_DEPTH: usize = 6;

/// Maximum by branch and bound. Same value and witness classes as the
/// exhaustive search; `pruned` counts the orientations skipped.
pub fn max_orientation_bnb_with(g: &Graph, a: &Exponent, opts: &SearchOptions) -> Result<ExtremalResult> {
    check_edges(g, ENUMERATION_EDGE_CAP)?;
    with_tables!(tables(a, g.max_degree(), 2 * g.n() + 2 * g.m()), t => run(g, &t, opts))
}

fn run<W: Weight>(g: &Graph, table: &PowerTable<W>, opts: &SearchOptions) -> Result<ExtremalResult> {
    let m = g.m();
    let deg = g.degrees();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| {
        let (u, v) = g.edges()[i];
        (std::cmp::Reverse(deg[u] + deg[v]), (u, v))
    });

    let mut seeds = sink_source_masks(g);
    if seeds.is_empty() {
        seeds = vec![0, full_mask(m)];
    }
    let incumbent = seeds
        .iter()
        .map(|&mask| leaf_value(g, table, mask))
        .reduce(|x, y| if y.cmp_w(&x) == Ordering::Greater { y } else { x })
        .expect("two seeds");

    let split = m.min(SPLIT_DEPTH);
    let parts = map_range(1 << split, opts.parallelism, |task| {
        let mut state = State::new(g, table, &order, incumbent.clone());
        state.forced = (0..split).map(|i| task >> i & 1 == 1).collect();
        state.share = 1u64 << (m - split);
        state.dfs(0);
        (state.best, state.searched, state.pruned)
    });

    let mut best = Best::new();
    let (mut searched, mut pruned) = (0, 0);
    for (b, s, p) in parts {
        best = best.merge(b);
        searched += s;
        pruned += p;
    }
    let (value, masks) = best.finish();
    build_result(g, value, masks, searched, pruned)
}

fn leaf_value<W: Weight>(g: &Graph, table: &PowerTable<W>, mask: u64) -> W {
    let mut out = vec![0; g.n()];
    let mut inn = vec![0; g.n()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let (x, y) = if mask >> i & 1 == 0 { (u, v) } else { (v, u) };
        out[x] += 1;
        inn[y] += 1;
    }
    table.vertex_sum(&out, &inn)
}

struct State<'a, W> {
    g: &'a Graph,
    table: &'a PowerTable<W>,
    order: &'a [usize],
    out: Vec<usize>,
    inn: Vec<usize>,
    undecided: Vec<usize>,
    /// Direction chosen for each edge, by edge index; `None` if open.
    dir: Vec<Option<bool>>,
    incumbent: W,
    best: Best<W>,
    /// Directions of the first decisions, fixed for this task.
    forced: Vec<bool>,
    /// Leaves below one forced prefix.
    share: u64,
    searched: u64,
    pruned: u64,
}

impl<'a, W: Weight> State<'a, W> {
    fn new(g: &'a Graph, table: &'a PowerTable<W>, order: &'a [usize], incumbent: W) -> Self {
        State {
            g,
            table,
            order,
            out: vec![0; g.n()],
            inn: vec![0; g.n()],
            undecided: g.degrees(),
            dir: vec![None; g.m()],
            incumbent,
            best: Best::new(),
            forced: Vec::new(),
            share: 0,
            searched: 0,
            pruned: 0,
        }
    }

    fn bound(&self) -> W {
        let arc = &self.table.arc;
        let cap_out = |u: usize| self.out[u] + self.undecided[u];
        let cap_in = |u: usize| self.inn[u] + self.undecided[u];
        let mut total = W::zero();
        for (i, &(u, v)) in self.g.edges().iter().enumerate() {
            let term = match self.dir[i] {
                Some(false) => arc[cap_out(u)].add(&arc[cap_in(v)]),
                Some(true) => arc[cap_out(v)].add(&arc[cap_in(u)]),
                None => {
                    let fwd = arc[cap_out(u)].add(&arc[cap_in(v)]);
                    let bwd = arc[cap_out(v)].add(&arc[cap_in(u)]);
                    if bwd.raw_gt(&fwd) {
                        bwd
                    } else {
                        fwd
                    }
                }
            };
            total = total.add(&term);
        }
        total
    }

    fn set(&mut self, e: usize, backward: bool) {
        let (u, v) = self.g.edges()[e];
        let (x, y) = if backward { (v, u) } else { (u, v) };
        self.out[x] += 1;
        self.inn[y] += 1;
        self.undecided[u] -= 1;
        self.undecided[v] -= 1;
        self.dir[e] = Some(backward);
    }

    fn unset(&mut self, e: usize) {
        let (u, v) = self.g.edges()[e];
        let backward = self.dir[e].take().expect("edge decided");
        let (x, y) = if backward { (v, u) } else { (u, v) };
        self.out[x] -= 1;
        self.inn[y] -= 1;
        self.undecided[u] += 1;
        self.undecided[v] += 1;
    }

    fn dfs(&mut self, depth: usize) {
        let m = self.order.len();
        if self.bound().cmp_w(&self.incumbent) == Ordering::Less {
            self.pruned += if depth <= self.forced.len() {
                self.share
            } else {
                1u64 << (m - depth)
            };
            return;
        }
        if depth == m {
            self.searched += 1;
            let value = self.table.vertex_sum(&self.out, &self.inn);
            let mask = self
                .dir
                .iter()
                .enumerate()
                .filter(|(_, d)| **d == Some(true))
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            if value.cmp_w(&self.incumbent) == Ordering::Greater {
                self.incumbent = value.clone();
            }
            self.best.offer(mask, &value);
            return;
        }
        let e = self.order[depth];
        let choices: &[bool] = match self.forced.get(depth) {
            Some(false) => &[false],
            Some(true) => &[true],
            None => &[false, true],
        };
        for &backward in choices {
            self.set(e, backward);
            self.dfs(depth + 1);
            self.unset(e);
        }
    }
}
