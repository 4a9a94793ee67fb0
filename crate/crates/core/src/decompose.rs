//! Collapsible cycles and the reduction of an exactly 3-edge-connected graph
//! to a synthesis script.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::blocks::{blocks, BlockCutNode};
use crate::canon::{canonical_code, is_isomorphic};
use crate::checks::assertions_enabled;
use crate::connectivity::is_exactly_k;
use crate::cycles::chordless_cycles;
use crate::error::{Error, Result};
use crate::graph::{Cycle, Multigraph, Vertex};
use crate::ops::{assert_exact, cycle_contract_traced, CycleExpansionSpec};
use crate::script::{ScriptOp, SynthesisScript};

/// A cycle together with the components of the graph with the cycle removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CPartition {
    pub cycle: Cycle,
    pub components: Vec<BTreeSet<Vertex>>,
}

impl CPartition {
    pub fn size(&self) -> usize {
        self.components.len()
    }

    pub fn is_articulation(&self) -> bool {
        self.size() > 1
    }
}

pub fn c_partition(g: &Multigraph, c: &Cycle) -> Result<CPartition> {
    c.check_in(g)?;
    Ok(CPartition {
        cycle: c.clone(),
        components: g.components_without(&c.vertex_set()),
    })
}

/// A cycle whose vertices are coloured red when adjacent to `block`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoredCycle {
    pub cycle: Cycle,
    pub block: BTreeSet<Vertex>,
    pub red: Vec<bool>,
}

impl ColoredCycle {
    pub fn new(g: &Multigraph, c: &Cycle, block: &BTreeSet<Vertex>) -> Self {
        let red = c
            .vertices()
            .iter()
            .map(|&x| g.neighbors(x).any(|(w, _)| block.contains(&w)))
            .collect();
        ColoredCycle {
            cycle: c.clone(),
            block: block.clone(),
            red,
        }
    }

    /// Cycle edges joining a red vertex to a blue one.
    pub fn bicolored_edges(&self) -> usize {
        let n = self.red.len();
        (0..n).filter(|&i| self.red[i] != self.red[(i + 1) % n]).count()
    }
}

fn require_biconnected_exact(g: &Multigraph) -> Result<()> {
    if g.order() < 2 || blocks(g)?.block_count() != 1 {
        return Err(Error::domain("graph must be biconnected of order at least 2"));
    }
    is_exactly_k(g, 3)?.into_result()
}

/// The four conditions of collapsibility, the last one by performing the contraction.
pub fn is_collapsible(g: &Multigraph, c: &Cycle) -> Result<bool> {
    require_biconnected_exact(g)?;
    c.check_in(g)?;
    Ok(collapsible_unchecked(g, c))
}

fn collapsible_unchecked(g: &Multigraph, c: &Cycle) -> bool {
    if !c.is_chordless_in(g) {
        return false;
    }
    if c.vertices().iter().filter(|&&x| g.degree(x) != 3).count() > 1 {
        return false;
    }
    if g.components_without(&c.vertex_set()).len() > 1 {
        return false;
    }
    match cycle_contract_traced(g, c) {
        Ok(done) => {
            done.graph.order() >= 2
                && is_exactly_k(&done.graph, 3).is_ok_and(|r| r.exact)
                && done.inverse.is_some()
        }
        Err(_) => false,
    }
}

/// The first collapsible cycle avoiding `avoid`, shortest first.
pub fn find_collapsible_cycle(g: &Multigraph, avoid: Vertex) -> Result<Cycle> {
    require_biconnected_exact(g)?;
    if g.order() < 3 {
        return Err(Error::domain("collapsible cycles need order at least 3"));
    }
    if g.degree(avoid) != 3 {
        return Err(Error::domain(format!("avoided vertex {avoid} must have degree 3")));
    }
    search(g, avoid)
}

fn search(g: &Multigraph, avoid: Vertex) -> Result<Cycle> {
    chordless_cycles(g, None, Some(avoid))?
        .find(|c| collapsible_unchecked(g, c))
        .ok_or_else(|| {
            Error::invariant(format!("no collapsible cycle avoiding {avoid} in {g:?}"))
        })
}

/// A script together with the isomorphism from the source graph onto its replay.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub script: SynthesisScript,
    pub map: BTreeMap<Vertex, Vertex>,
}

/// Reduces `g` to dumbbells, block gluings and cycle expansions.
pub fn decompose(g: &Multigraph) -> Result<SynthesisScript> {
    Ok(decompose_mapped(g)?.script)
}

pub fn decompose_mapped(g: &Multigraph) -> Result<Decomposition> {
    if g.order() < 2 {
        return Err(Error::domain("decomposition needs order at least 2"));
    }
    g.require_connected()?;
    is_exactly_k(g, 3)?.into_result()?;

    let dec = blocks(g)?;
    let mut ops = Vec::new();
    let mut parts = Vec::new();
    for (slot, b) in dec.blocks.iter().enumerate() {
        let (block_ops, map) = decompose_block(&g.induced(b), slot)?;
        ops.extend(block_ops);
        parts.push(map);
    }

    // Glue the finished blocks along a breadth-first walk of the block-cut tree.
    let mut state = crate::script::Replayer::default();
    for op in &ops {
        state.apply(op)?;
    }
    let mut map = parts[0].clone();
    let mut placed = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        for &(bn, cn) in &dec.tree {
            let (BlockCutNode::Block(x), BlockCutNode::Cut(v)) = (bn, cn) else {
                continue;
            };
            if x != b {
                continue;
            }
            for &(bn2, cn2) in &dec.tree {
                let (BlockCutNode::Block(y), BlockCutNode::Cut(w)) = (bn2, cn2) else {
                    continue;
                };
                if w != v || placed.contains(&y) {
                    continue;
                }
                let ua = map[&v];
                let ub = parts[y][&v];
                let shift = state.graph(0)?.next_id();
                let op = ScriptOp::Glue {
                    left: 0,
                    u1: ua,
                    right: y,
                    u2: ub,
                    result: 0,
                };
                state.apply(&op)?;
                ops.push(op);
                for (&orig, &local) in &parts[y] {
                    if orig != v {
                        map.insert(orig, Vertex(local.0 + shift));
                    }
                }
                placed.insert(y);
                queue.push_back(y);
            }
        }
    }

    let script = SynthesisScript {
        ops,
        provenance: Some(canonical_code(g)),
    };
    if assertions_enabled() {
        let built = state.result()?;
        if !is_isomorphic(&built, g) {
            return Err(Error::invariant("decomposition does not replay to its source"));
        }
    }
    Ok(Decomposition { script, map })
}

/// Decomposes a biconnected exactly 3-edge-connected graph into slot `slot`.
/// Returns the ops and the map from `g`'s vertices to the replayed ids.
fn decompose_block(g: &Multigraph, slot: usize) -> Result<(Vec<ScriptOp>, BTreeMap<Vertex, Vertex>)> {
    let mut steps: Vec<(CycleExpansionSpec, Vec<Vertex>)> = Vec::new();
    let mut cur = g.clone();
    while cur.order() > 2 {
        let avoid = cur
            .vertices()
            .find(|&x| cur.degree(x) == 3)
            .ok_or_else(|| Error::invariant("biconnected exactly 3 graph without a degree-3 vertex"))?;
        let c = search(&cur, avoid)?;
        let done = cycle_contract_traced(&cur, &c)?;
        let spec = done
            .inverse
            .ok_or_else(|| Error::invariant(format!("collapsible cycle {c} has no inverse")))?;
        steps.push((spec, done.cycle_order));
        cur = done.graph;
        if assertions_enabled() {
            assert_exact(&cur, 3, "decomposition step")?;
        }
    }
    let ends: Vec<Vertex> = cur.vertices().collect();
    if ends.len() != 2 || cur.multiplicity(ends[0], ends[1]) != 3 {
        return Err(Error::invariant("decomposition did not end at a dumbbell"));
    }

    let mut ops = vec![ScriptOp::Dumbbell { id: slot }];
    let mut map = BTreeMap::from([(ends[0], Vertex(0)), (ends[1], Vertex(1))]);
    let mut next = 2u32;
    for (spec, order) in steps.into_iter().rev() {
        let target = map[&spec.target];
        let assignment = spec.assignment.iter().map(|w| map[w]).collect();
        map.remove(&spec.target);
        let d = spec.cycle_size;
        for (i, &x) in order.iter().enumerate() {
            let id = if i + 1 == d {
                target
            } else {
                next += 1;
                Vertex(next - 1)
            };
            map.insert(x, id);
        }
        ops.push(ScriptOp::Expand {
            graph: slot,
            spec: CycleExpansionSpec::new(target, d, assignment),
            attach: Vec::new(),
        });
    }
    Ok((ops, map))
}
