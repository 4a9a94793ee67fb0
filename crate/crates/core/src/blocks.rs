//! Blocks, articulation points and the block-cut tree.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BlockCutNode {
    Block(usize),
    Cut(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, sorted.
    pub blocks: Vec<BTreeSet<Vertex>>,
    pub articulation_points: BTreeSet<Vertex>,
    /// Edges of the bipartite block-cut tree.
    pub tree: Vec<(BlockCutNode, BlockCutNode)>,
}

impl BlockDecomposition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Indices of the blocks containing `v`.
    pub fn blocks_of(&self, v: Vertex) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.blocks[i].contains(&v))
            .collect()
    }

    /// Index of the unique block holding the edge `(u, v)`.
    pub fn block_of_edge(&self, u: Vertex, v: Vertex) -> Option<usize> {
        (0..self.blocks.len()).find(|&i| self.blocks[i].contains(&u) && self.blocks[i].contains(&v))
    }
}

/// Splits a connected graph into its blocks.
pub fn blocks(g: &Multigraph) -> Result<BlockDecomposition> {
    if g.order() == 0 {
        return Err(Error::argument("blocks of the empty graph"));
    }
    g.require_connected()?;

    let ids: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| g.neighbors(v).map(|(w, _)| index[&w]).collect())
        .collect();

    let n = ids.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut comps: Vec<BTreeSet<Vertex>> = Vec::new();
    let mut timer = 0;

    // Iterative Hopcroft-Tarjan over the simple underlying graph.
    let root = 0;
    disc[root] = timer;
    low[root] = timer;
    timer += 1;
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
        if *next < adj[v].len() {
            let w = adj[v][*next];
            *next += 1;
            if w == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                edge_stack.push((v, w));
                stack.push((w, v, 0));
            } else if disc[w] < disc[v] {
                low[v] = low[v].min(disc[w]);
                edge_stack.push((v, w));
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut comp = BTreeSet::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        comp.insert(ids[a]);
                        comp.insert(ids[b]);
                        if (a, b) == (p, v) {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    if n == 1 {
        comps.push(BTreeSet::from([ids[0]]));
    }
    comps.sort();

    let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
    for c in &comps {
        for &v in c {
            *count.entry(v).or_insert(0) += 1;
        }
    }
    let articulation_points: BTreeSet<Vertex> = count
        .into_iter()
        .filter(|&(_, c)| c > 1)
        .map(|(v, _)| v)
        .collect();
    let mut tree = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        for &v in c.intersection(&articulation_points) {
            tree.push((BlockCutNode::Block(i), BlockCutNode::Cut(v)));
        }
    }
    Ok(BlockDecomposition {
        blocks: comps,
        articulation_points,
        tree,
    })
}

pub fn is_biconnected(g: &Multigraph) -> bool {
    g.order() > 0 && blocks(g).is_ok_and(|b| b.block_count() == 1)
}
