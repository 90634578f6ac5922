use std::collections::BTreeMap;

use super::{canonical_label_with_cap, Graph};
use crate::error::{Error, Result};

const GENERATION_CAP: usize = 8;

/// All connected simple graphs on `n` vertices up to isomorphism, ordered
/// by canonical label.
///
/// Every connected graph has a vertex whose removal leaves it connected
/// (a leaf of a spanning tree), so extending each connected graph on
/// `n - 1` vertices by a new vertex with every non-empty neighbourhood
/// reaches all of them.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > GENERATION_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count",
            actual: n,
            cap: GENERATION_CAP,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::new(1, []).expect("single vertex")];
    for k in 1..n {
        let mut next = BTreeMap::new();
        for g in &level {
            for subset in 1u32..(1 << k) {
                let extra = (0..k).filter(|&u| subset >> u & 1 == 1).map(|u| (u, k));
                let h = Graph::new(k + 1, g.edges().iter().copied().chain(extra))
                    .expect("new vertex adds fresh edges");
                let label = canonical_label_with_cap(&h, GENERATION_CAP)?;
                next.entry(label).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_label;
    use std::collections::BTreeSet;

    /// Independent route: filter all edge subsets of K_n for connectivity
    /// and deduplicate by label.
    fn by_edge_subsets(n: usize) -> BTreeSet<crate::graph::CanonicalLabel> {
        let all: Vec<(usize, usize)> = Graph::complete(n).edges().to_vec();
        (0..1u32 << all.len())
            .filter_map(|mask| {
                let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e);
                let g = Graph::new(n, edges).unwrap();
                g.is_connected().then(|| canonical_label(&g).unwrap())
            })
            .collect()
    }

    #[test]
    fn counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn agrees_with_edge_subset_filtering() {
        for n in 1..=5 {
            let generated: BTreeSet<_> = connected_graphs(n)
                .unwrap()
                .iter()
                .map(|g| canonical_label(g).unwrap())
                .collect();
            assert_eq!(generated, by_edge_subsets(n), "n = {n}");
        }
    }
}
