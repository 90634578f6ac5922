//! Named cacti, the extremal oriented cacti, and cactus enumeration.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{canonical_label, reverse, CanonicalLabel, Digraph, Graph};
use crate::index::{check_feasible, Exponent};
use crate::par::{map, Parallelism};
use crate::search::sink_source_orientations;

/// Largest order [`enumerate_cacti`] accepts.
pub const CACTUS_CAP: usize = 10;

/// The bundle cactus: hub 0 adjacent to every other vertex, triangles
/// closed by the edges `(1,2), (3,4), ..., (2r-1,2r)`, and pendants
/// `2r+1..n`.
pub fn build_g0(n: usize, r: usize) -> Result<Graph> {
    check_feasible(n, r)?;
    let spokes = (1..n).map(|v| (0, v));
    let outer = (0..r).map(|k| (2 * k + 1, 2 * k + 2));
    Graph::new(n, spokes.chain(outer))
}

/// Hub-source orientation of the bundle cactus (outer triangle edges from
/// the smaller to the larger id) and its reversal, the hub-sink one.
pub fn build_extremal_orientations(n: usize, r: usize) -> Result<(Digraph, Digraph)> {
    let g = build_g0(n, r)?;
    let source = Digraph::new(n, g.edges().iter().copied())?;
    let sink = reverse(&source);
    Ok((source, sink))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalFamily {
    pub n: usize,
    pub r: usize,
    pub a: Exponent,
    /// Underlying graphs of the members, without repeats.
    #[serde(serialize_with = "display_list")]
    pub graphs: Vec<Graph>,
    #[serde(serialize_with = "display_list")]
    pub digraphs: Vec<Digraph>,
}

fn display_list<S: serde::Serializer, T: std::fmt::Display>(
    items: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(items.iter().map(|x| x.to_string()))
}

impl ExtremalFamily {
    /// Labels of the members, one per isomorphism class.
    pub fn labels(&self) -> Result<Vec<CanonicalLabel>> {
        let mut labels = self
            .digraphs
            .iter()
            .map(canonical_label)
            .collect::<Result<Vec<_>>>()?;
        labels.sort();
        labels.dedup();
        Ok(labels)
    }
}

/// The set of maximisers: the two bundle orientations, joined by the two
/// sink-source orientations of C4 exactly when `a = 1` and `(n, r) = (4, 1)`.
pub fn extremal_set(n: usize, r: usize, a: &Exponent) -> Result<ExtremalFamily> {
    let (source, sink) = build_extremal_orientations(n, r)?;
    let mut graphs = vec![build_g0(n, r)?];
    let mut digraphs = vec![source, sink];
    if a.is_one() && (n, r) == (4, 1) {
        let c4 = Graph::cycle(4);
        digraphs.extend(sink_source_orientations(&c4));
        graphs.push(c4);
    }
    Ok(ExtremalFamily {
        n,
        r,
        a: *a,
        graphs,
        digraphs,
    })
}

/// Named fixtures: `G1` is the triangle `{0,1,2}` with pendant 3 on 0,
/// `G2` the triangles `{0,1,2}` and `{0,3,4}`.
pub fn fixtures() -> BTreeMap<&'static str, Graph> {
    BTreeMap::from([
        ("G1", build_g0(4, 1).expect("feasible")),
        ("G2", build_g0(5, 2).expect("feasible")),
    ])
}

/// Memoised cactus generator. Every cactus on two or more vertices has an
/// end block (a pendant edge, or a cycle with at most one cut vertex);
/// deleting its other vertices leaves a smaller cactus, so attaching
/// pendants and cycles to every vertex of smaller cacti reaches them all.
#[derive(Debug, Default)]
pub struct CactusGenerator {
    cache: HashMap<(usize, usize), Vec<Graph>>,
    parallelism: Parallelism,
}

impl CactusGenerator {
    pub fn new(parallelism: Parallelism) -> Self {
        CactusGenerator {
            cache: HashMap::new(),
            parallelism,
        }
    }

    /// Cacti of order `n` with `r` cycles, one per isomorphism class,
    /// ordered by canonical label.
    pub fn cacti(&mut self, n: usize, r: usize) -> Result<&[Graph]> {
        if n > CACTUS_CAP {
            return Err(Error::CapExceeded {
                what: "vertex count",
                actual: n,
                cap: CACTUS_CAP,
            });
        }
        if !self.cache.contains_key(&(n, r)) {
            let level = self.build(n, r)?;
            self.cache.insert((n, r), level);
        }
        Ok(&self.cache[&(n, r)])
    }

    fn build(&mut self, n: usize, r: usize) -> Result<Vec<Graph>> {
        if n == 0 || (n == 1 && r > 0) || n < 2 * r + 1 {
            return Ok(Vec::new());
        }
        if n == 1 {
            return Ok(vec![Graph::new(1, [])?]);
        }
        // (parent, cycle length to attach; 2 stands for a pendant edge)
        let mut jobs: Vec<(Graph, usize)> = Vec::new();
        for g in self.cacti(n - 1, r)? {
            jobs.push((g.clone(), 2));
        }
        if r > 0 {
            for len in 3..=n {
                for g in self.cacti(n + 1 - len, r - 1)? {
                    jobs.push((g.clone(), len));
                }
            }
        }
        let children = map(&jobs, self.parallelism, |(g, len)| -> Result<Vec<(CanonicalLabel, Graph)>> {
            (0..g.n())
                .map(|v| {
                    let h = attach(g, v, *len);
                    Ok((canonical_label(&h)?, h))
                })
                .collect()
        });
        let mut level = BTreeMap::new();
        for batch in children {
            for (label, h) in batch? {
                level.entry(label).or_insert(h);
            }
        }
        Ok(level.into_values().collect())
    }
}

/// Attaches at `v` a pendant edge (`len == 2`) or a cycle through `v` of
/// length `len` on fresh vertices.
fn attach(g: &Graph, v: usize, len: usize) -> Graph {
    let n = g.n();
    let fresh = n..n + len - 1;
    let mut path: Vec<usize> = std::iter::once(v).chain(fresh).collect();
    if len > 2 {
        path.push(v);
    }
    let extra = path.windows(2).map(|w| (w[0], w[1]));
    Graph::new(n + len - 1, g.edges().iter().copied().chain(extra)).expect("attachment uses fresh vertices")
}

pub fn enumerate_cacti(n: usize, r: usize) -> Result<Vec<Graph>> {
    Ok(CactusGenerator::new(Parallelism::default()).cacti(n, r)?.to_vec())
}

/// Writes each graph to `dir/cactus_n{n}_r{r}_{index}.txt` in edge-list
/// format and returns the paths written.
pub fn export_catalog(dir: &Path, n: usize, r: usize, graphs: &[Graph]) -> Result<Vec<PathBuf>> {
    let io = |path: &Path, e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let path = dir.join(format!("cactus_n{n}_r{r}_{i}.txt"));
            std::fs::write(&path, g.to_edge_list()).map_err(|e| io(&path, e))?;
            Ok(path)
        })
        .collect()
}
