//! Search over the `2^m` orientations of a graph.

mod bnb;
mod walk;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bipartition, canonical_label_with_cap, orient_mask, CanonicalLabel, Digraph, Graph};
use crate::index::{tables, with_tables, Exponent, IndexValue, PowerTable, Weight};
use crate::par::Parallelism;

pub use bnb::max_orientation_bnb_with;
pub(crate) use walk::{fold_orientations, Snapshot};

/// Edge cap for plain enumeration and branch and bound.
pub const ENUMERATION_EDGE_CAP: usize = 30;
/// Edge cap for the exhaustive maximum.
pub const EXHAUSTIVE_EDGE_CAP: usize = 24;
/// Vertex cap used when labelling witnesses.
const WITNESS_LABEL_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Fix the direction of the first edge and recover the other half of
    /// the space by arc reversal, which preserves the index.
    pub halve_by_reversal: bool,
    pub parallelism: Parallelism,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            halve_by_reversal: false,
            parallelism: Parallelism::Parallel,
        }
    }
}

/// One maximiser up to isomorphism.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub label: CanonicalLabel,
    #[serde(serialize_with = "serialize_display")]
    pub digraph: Digraph,
    /// Number of labelled orientations in this isomorphism class.
    pub labeled_count: u64,
}

fn serialize_display<S: serde::Serializer, T: std::fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub max_value: IndexValue,
    /// Pairwise non-isomorphic maximisers, sorted by label.
    pub witnesses: Vec<Witness>,
    /// Number of labelled maximising orientations.
    pub raw_witnesses: u64,
    /// Orientations whose index was evaluated.
    pub searched: u64,
    /// Orientations skipped by bounding or by reversal symmetry.
    pub pruned: u64,
}

impl ExtremalResult {
    pub fn witness_labels(&self) -> BTreeSet<CanonicalLabel> {
        self.witnesses.iter().map(|w| w.label.clone()).collect()
    }
}

fn check_edges(g: &Graph, cap: usize) -> Result<()> {
    if g.m() > cap {
        return Err(Error::CapExceeded {
            what: "edge count",
            actual: g.m(),
            cap,
        });
    }
    Ok(())
}

/// All orientations of `g` in direction-mask order; with halving, only
/// those that keep the first edge in canonical direction.
pub fn enumerate_orientations(g: &Graph, halve_by_reversal: bool) -> Result<impl Iterator<Item = Digraph> + '_> {
    check_edges(g, ENUMERATION_EDGE_CAP)?;
    let (count, shift) = if halve_by_reversal && g.m() > 0 {
        (1u64 << (g.m() - 1), 1)
    } else {
        (1u64 << g.m(), 0)
    };
    Ok((0..count).map(move |k| orient_mask(g, k << shift)))
}

/// Both sink-source orientations when `g` is bipartite (parts taken from
/// [`bipartition`], first part as sources first), otherwise none.
pub fn sink_source_orientations(g: &Graph) -> Vec<Digraph> {
    sink_source_masks(g)
        .into_iter()
        .map(|mask| orient_mask(g, mask))
        .collect()
}

pub(crate) fn sink_source_masks(g: &Graph) -> Vec<u64> {
    let Some((left, _)) = bipartition(g) else {
        return Vec::new();
    };
    let mut is_left = vec![false; g.n()];
    for u in left {
        is_left[u] = true;
    }
    let forward = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, _))| !is_left[u])
        .fold(0u64, |m, (i, _)| m | 1 << i);
    vec![forward, forward ^ full_mask(g.m())]
}

pub(crate) fn full_mask(m: usize) -> u64 {
    if m == 0 {
        0
    } else {
        u64::MAX >> (64 - m)
    }
}

pub fn max_orientation_exhaustive(g: &Graph, a: &Exponent) -> Result<ExtremalResult> {
    max_orientation_exhaustive_with(g, a, &SearchOptions::default())
}

pub fn max_orientation_bnb(g: &Graph, a: &Exponent) -> Result<ExtremalResult> {
    max_orientation_bnb_with(g, a, &SearchOptions::default())
}

/// Running maximum with the masks that attain it.
#[derive(Clone, Debug)]
pub(crate) struct Best<W> {
    pub value: Option<W>,
    pub masks: Vec<(u64, W)>,
}

impl<W: Weight> Best<W> {
    pub fn new() -> Self {
        Best {
            value: None,
            masks: Vec::new(),
        }
    }

    pub fn offer(&mut self, mask: u64, value: &W) {
        match self.value.as_ref().map(|b| value.cmp_w(b)) {
            None | Some(std::cmp::Ordering::Greater) => {
                self.value = Some(value.clone());
                self.masks.clear();
                self.masks.push((mask, value.clone()));
            }
            Some(std::cmp::Ordering::Equal) => {
                // Within a tolerance class keep the largest representative,
                // so the final filter is relative to the true maximum.
                if self.value.as_ref().is_some_and(|b| value.raw_gt(b)) {
                    self.value = Some(value.clone());
                }
                self.masks.push((mask, value.clone()));
            }
            Some(std::cmp::Ordering::Less) => {}
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        if let Some(v) = &other.value {
            for (mask, w) in other.masks {
                self.offer(mask, &w);
            }
            if self.value.is_none() {
                self.value = Some(v.clone());
            }
        }
        self
    }

    /// Maximising masks that are within tolerance of the final maximum.
    pub fn finish(self) -> (Option<W>, Vec<u64>) {
        let Some(best) = self.value else {
            return (None, Vec::new());
        };
        let mut masks: Vec<u64> = self
            .masks
            .into_iter()
            .filter(|(_, w)| w.cmp_w(&best) == std::cmp::Ordering::Equal)
            .map(|(m, _)| m)
            .collect();
        masks.sort_unstable();
        masks.dedup();
        (Some(best), masks)
    }
}

pub(crate) fn build_result<W: Weight>(
    g: &Graph,
    best: Option<W>,
    masks: Vec<u64>,
    searched: u64,
    pruned: u64,
) -> Result<ExtremalResult> {
    let best = best.expect("at least one orientation is evaluated");
    let mut classes: BTreeMap<CanonicalLabel, (Digraph, u64)> = BTreeMap::new();
    for &mask in &masks {
        let d = orient_mask(g, mask);
        let label = canonical_label_with_cap(&d, WITNESS_LABEL_CAP)?;
        classes.entry(label).or_insert((d, 0)).1 += 1;
    }
    let witnesses = classes
        .into_iter()
        .map(|(label, (digraph, labeled_count))| Witness {
            label,
            digraph,
            labeled_count,
        })
        .collect();
    Ok(ExtremalResult {
        max_value: best.to_index(),
        witnesses,
        raw_witnesses: masks.len() as u64,
        searched,
        pruned,
    })
}

/// Exhaustive maximum of the index over every orientation of `g`.
pub fn max_orientation_exhaustive_with(g: &Graph, a: &Exponent, opts: &SearchOptions) -> Result<ExtremalResult> {
    check_edges(g, EXHAUSTIVE_EDGE_CAP)?;
    with_tables!(tables(a, g.max_degree(), 2 * g.n()), t => exhaustive(g, &t, opts))
}

fn exhaustive<W: Weight>(g: &Graph, table: &PowerTable<W>, opts: &SearchOptions) -> Result<ExtremalResult> {
    let halve = opts.halve_by_reversal && g.m() > 0;
    let free: Vec<usize> = (usize::from(halve)..g.m()).collect();
    let best = fold_orientations(
        g,
        &free,
        table,
        opts.parallelism,
        Best::new,
        |acc, s: &Snapshot<'_, W>| acc.offer(s.mask, s.value),
        Best::merge,
    );
    let (value, mut masks) = best.finish();
    let searched = 1u64 << free.len();
    let pruned = (1u64 << g.m()) - searched;
    if halve {
        let full = full_mask(g.m());
        let reversed: Vec<u64> = masks.iter().map(|m| m ^ full).collect();
        masks.extend(reversed);
        masks.sort_unstable();
        masks.dedup();
    }
    build_result(g, value, masks, searched, pruned)
}
