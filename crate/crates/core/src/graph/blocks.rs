use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Edge,
    Cycle { length: usize },
    /// 2-connected but not a cycle; its presence rules out a cactus.
    Other,
}

/// A biconnected component: its vertices (sorted) and edges (canonical).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockProfile {
    pub blocks: Vec<Block>,
    pub cycle_count: usize,
}

struct Lowpoint<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<Vec<(usize, usize)>>,
}

impl Lowpoint<'_> {
    fn dfs(&mut self, u: usize, parent: Option<usize>) {
        self.timer += 1;
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        for &v in self.g.neighbors(u) {
            if Some(v) == parent {
                continue;
            }
            if self.disc[v] == 0 {
                self.stack.push((u, v));
                self.dfs(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = self.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[v] < self.disc[u] {
                self.stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }
}

/// Biconnected components by the lowpoint method. Blocks are listed in
/// ascending order of their edge lists.
pub fn block_decomposition(g: &Graph) -> Vec<Block> {
    let mut state = Lowpoint {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for s in 0..g.n() {
        if state.disc[s] == 0 {
            state.dfs(s, None);
        }
    }
    let mut blocks: Vec<Block> = state
        .blocks
        .into_iter()
        .map(|raw| {
            let mut edges: Vec<_> = raw.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
            edges.sort_unstable();
            let mut vertices: Vec<_> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let kind = match (edges.len(), vertices.len()) {
                (1, _) => BlockKind::Edge,
                (e, v) if e == v => BlockKind::Cycle { length: v },
                _ => BlockKind::Other,
            };
            Block {
                vertices,
                edges,
                kind,
            }
        })
        .collect();
    blocks.sort_by(|a, b| a.edges.cmp(&b.edges));
    blocks
}

/// Block profile of a connected graph; fails with [`Error::NotCactus`] on
/// the first block that is neither an edge nor a cycle.
pub fn cactus_profile(g: &Graph) -> Result<BlockProfile> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let blocks = block_decomposition(g);
    if let Some(bad) = blocks.iter().find(|b| b.kind == BlockKind::Other) {
        return Err(Error::NotCactus {
            vertices: bad.vertices.len(),
            edges: bad.edges.len(),
        });
    }
    let cycle_count = blocks
        .iter()
        .filter(|b| matches!(b.kind, BlockKind::Cycle { .. }))
        .count();
    Ok(BlockProfile {
        blocks,
        cycle_count,
    })
}
