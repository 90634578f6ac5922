//! Canonical labels for small graphs and digraphs.
//!
//! The label is the lexicographically smallest adjacency encoding over a
//! set of vertex orderings that is itself invariant under relabeling:
//! orderings are produced by individualisation and colour refinement
//! starting from the (out, in)-degree partition, and branches that differ
//! only by swapping two twin vertices are explored once. Two inputs get the
//! same label exactly when they are isomorphic.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{Digraph, Graph};
use crate::error::{Error, Result};

/// Default vertex cap for [`canonical_label`].
pub const CANON_CAP: usize = 12;

/// Largest `n` the bitset representation supports.
const HARD_LIMIT: usize = 64;

const TAG_GRAPH: u8 = b'G';
const TAG_DIGRAPH: u8 = b'D';

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabel(Vec<u8>);

impl CanonicalLabel {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({self})")
    }
}

impl Serialize for CanonicalLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub trait Canonical {
    fn canonical_label_with_cap(&self, cap: usize) -> Result<CanonicalLabel>;
}

impl Canonical for Graph {
    fn canonical_label_with_cap(&self, cap: usize) -> Result<CanonicalLabel> {
        check_cap(self.n(), cap)?;
        let mut adj = vec![0u64; self.n()];
        for &(u, v) in self.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Search::new(TAG_GRAPH, adj.clone(), adj, false).run())
    }
}

impl Canonical for Digraph {
    fn canonical_label_with_cap(&self, cap: usize) -> Result<CanonicalLabel> {
        check_cap(self.n(), cap)?;
        let mut out = vec![0u64; self.n()];
        let mut inn = vec![0u64; self.n()];
        for &(u, v) in self.arcs() {
            out[u] |= 1 << v;
            inn[v] |= 1 << u;
        }
        Ok(Search::new(TAG_DIGRAPH, out, inn, true).run())
    }
}

pub fn canonical_label<X: Canonical + ?Sized>(x: &X) -> Result<CanonicalLabel> {
    x.canonical_label_with_cap(CANON_CAP)
}

pub fn canonical_label_with_cap<X: Canonical + ?Sized>(x: &X, cap: usize) -> Result<CanonicalLabel> {
    x.canonical_label_with_cap(cap)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_LIMIT);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "vertex count",
            actual: n,
            cap,
        });
    }
    Ok(())
}

struct Search {
    tag: u8,
    n: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
    directed: bool,
    twins: Vec<u64>,
    best: Option<Vec<u64>>,
}

impl Search {
    fn new(tag: u8, out: Vec<u64>, inn: Vec<u64>, directed: bool) -> Self {
        let n = out.len();
        let mut twins = vec![0u64; n];
        for u in 0..n {
            for v in u + 1..n {
                let strip = |row: u64| row & !(1 << u) & !(1 << v);
                let same_out = strip(out[u]) == strip(out[v]);
                let same_in = strip(inn[u]) == strip(inn[v]);
                let symmetric = (out[u] >> v & 1) == (out[v] >> u & 1);
                if same_out && same_in && symmetric {
                    twins[u] |= 1 << v;
                    twins[v] |= 1 << u;
                }
            }
        }
        Search {
            tag,
            n,
            out,
            inn,
            directed,
            twins,
            best: None,
        }
    }

    fn run(mut self) -> CanonicalLabel {
        if self.n > 0 {
            let colors = self.refine(vec![0; self.n]);
            self.descend(colors);
        }
        let mut bytes = vec![self.tag, self.n as u8];
        for word in self.best.unwrap_or_default() {
            bytes.extend_from_slice(&word.to_be_bytes());
        }
        CanonicalLabel(bytes)
    }

    fn neighbor_colors(&self, row: u64, colors: &[u32]) -> Vec<u32> {
        let mut cs: Vec<u32> = (0..self.n).filter(|&w| row >> w & 1 == 1).map(|w| colors[w]).collect();
        cs.sort_unstable();
        cs
    }

    /// Colour refinement to the coarsest equitable partition below
    /// `colors`. New colours are ranks of sorted signatures, and the old
    /// colour leads each signature, so the cell order is preserved.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..self.n)
                .map(|v| {
                    let outs = self.neighbor_colors(self.out[v], &colors);
                    let ins = if self.directed {
                        self.neighbor_colors(self.inn[v], &colors)
                    } else {
                        Vec::new()
                    };
                    (colors[v], outs, ins)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<u32>, Vec<u32>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            let next: Vec<u32> = sigs
                .iter()
                .map(|s| distinct.binary_search(&s).expect("signature present") as u32)
                .collect();
            let next_classes = distinct.len();
            colors = next;
            if next_classes == classes {
                return colors;
            }
            classes = next_classes;
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        if count_classes(&colors) == self.n {
            self.leaf(&colors);
            return;
        }
        let target = first_nontrivial_cell(&colors);
        let mut tried: u64 = 0;
        for c in (0..self.n).filter(|&v| colors[v] == target) {
            if self.twins[c] & tried != 0 {
                continue;
            }
            tried |= 1 << c;
            let individualised: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(v, &col)| 2 * col + u32::from(v != c))
                .collect();
            let refined = self.refine(individualised);
            self.descend(refined);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let mut order = vec![0usize; self.n];
        for (v, &c) in colors.iter().enumerate() {
            order[c as usize] = v;
        }
        let mut code = BitWriter::default();
        for k in 0..self.n {
            let pk = order[k];
            for &pi in &order[..k] {
                code.push(self.out[pi] >> pk & 1 == 1);
                if self.directed {
                    code.push(self.out[pk] >> pi & 1 == 1);
                }
            }
        }
        let code = code.finish();
        if self.best.as_ref().is_none_or(|b| code < *b) {
            self.best = Some(code);
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn first_nontrivial_cell(colors: &[u32]) -> u32 {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted
        .windows(2)
        .find(|w| w[0] == w[1])
        .map(|w| w[0])
        .expect("partition is not discrete")
}

/// Packs bits most-significant first so that word-wise comparison equals
/// bit-sequence comparison.
#[derive(Default)]
struct BitWriter {
    words: Vec<u64>,
    len: usize,
}

impl BitWriter {
    fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            let last = self.words.last_mut().expect("word allocated");
            *last |= 1 << (63 - self.len % 64);
        }
        self.len += 1;
    }

    fn finish(self) -> Vec<u64> {
        self.words
    }
}
