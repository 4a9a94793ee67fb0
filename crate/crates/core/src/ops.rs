//! The synthesis operations: block gluing, k-bridge addition, vertex gluing
//! and splitting, cycle expansion and contraction, contraction-expansion.
//!
//! Every operation returns a new graph. When assertions are enabled (see
//! [`crate::checks`]) each one re-verifies the exactness guarantee it carries.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::blocks::blocks;
use crate::checks::assertions_enabled;
use crate::connectivity::{edge_connectivity, is_exactly_k, EdgeCut};
use crate::error::{Error, Result};
use crate::graph::{Cycle, Multigraph, Vertex};

/// Replaces `target` (degree d) by a cycle `u_1 .. u_{d'}`. Cycle vertex `i < d'`
/// receives dart `i` of `assignment`; `u_{d'}` receives the rest. Darts are
/// named by their far endpoint, one entry per parallel copy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleExpansionSpec {
    pub target: Vertex,
    pub cycle_size: usize,
    pub assignment: Vec<Vertex>,
}

impl CycleExpansionSpec {
    pub fn new(target: Vertex, cycle_size: usize, assignment: Vec<Vertex>) -> Self {
        CycleExpansionSpec {
            target,
            cycle_size,
            assignment,
        }
    }

    /// Darts received by cycle vertex `i` (1-based).
    pub fn darts_of(&self, i: usize) -> &[Vertex] {
        let d = self.cycle_size;
        if i < d {
            &self.assignment[i - 1..i]
        } else {
            &self.assignment[d - 1..]
        }
    }

    /// Checks the spec against the darts `u` has in `available`.
    fn validate(&self, mut available: Vec<Vertex>) -> Result<()> {
        let d = available.len();
        if self.cycle_size < 2 || self.cycle_size > d {
            return Err(Error::argument(format!(
                "cycle size {} outside 2..={d} for vertex {}",
                self.cycle_size, self.target
            )));
        }
        let mut given = self.assignment.clone();
        given.sort();
        available.sort();
        if given != available {
            return Err(Error::argument(format!(
                "assignment is not a permutation of the darts at {}",
                self.target
            )));
        }
        Ok(())
    }
}

/// Result of a cycle expansion: the new graph and the created cycle in
/// order `u_1 .. u_{d'}`.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub graph: Multigraph,
    pub cycle: Vec<Vertex>,
}

/// Pairs the darts of `u1` in the first graph with the darts of `u2` in the
/// second. Each entry `(v1, v2)` becomes an edge after gluing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexGluingSpec {
    pub u1: Vertex,
    pub u2: Vertex,
    pub pairing: Vec<(Vertex, Vertex)>,
}

impl VertexGluingSpec {
    /// Pairs the darts of `u1` and `u2` in sorted order.
    pub fn sorted(g1: &Multigraph, u1: Vertex, g2: &Multigraph, u2: Vertex) -> Self {
        VertexGluingSpec {
            u1,
            u2,
            pairing: g1.darts(u1).into_iter().zip(g2.darts(u2)).collect(),
        }
    }
}

/// The two sides of a vertex splitting and the gluing that undoes it.
#[derive(Debug, Clone)]
pub struct VertexSplit {
    pub left: Multigraph,
    pub right: Multigraph,
    pub gluing: VertexGluingSpec,
}

fn require_vertex(g: &Multigraph, v: Vertex) -> Result<()> {
    if g.contains(v) {
        Ok(())
    } else {
        Err(Error::argument(format!("vertex {v} not in graph")))
    }
}

/// `Some(k)` when `g` is exactly k-edge-connected for some k.
fn exact_level(g: &Multigraph) -> Option<u32> {
    if g.order() < 2 {
        return None;
    }
    let k = edge_connectivity(g).ok()?;
    is_exactly_k(g, k).ok()?.exact.then_some(k)
}

pub(crate) fn assert_exact(g: &Multigraph, k: u32, what: &str) -> Result<()> {
    let report = is_exactly_k(g, k)?;
    match report.witness {
        None => Ok(()),
        Some(w) => Err(Error::invariant(format!(
            "{what}: result is not exactly {k}-edge-connected, lambda({}, {}) = {}",
            w.u, w.v, w.lambda
        ))),
    }
}

/// Identifies `u1` of `g1` with `u2` of `g2`. The second graph is shifted by
/// `g1.next_id()` and the glued vertex keeps the id of `u1`.
pub fn block_glue(g1: &Multigraph, u1: Vertex, g2: &Multigraph, u2: Vertex) -> Result<Multigraph> {
    require_vertex(g1, u1)?;
    require_vertex(g2, u2)?;
    let shift = g1.next_id();
    let h = g2.offset(shift);
    let moved = Vertex(u2.0 + shift);
    let mut out = g1.clone();
    for v in h.vertices().filter(|&v| v != moved) {
        out.insert_vertex(v);
    }
    for (a, b, r) in h.edges() {
        let a = if a == moved { u1 } else { a };
        let b = if b == moved { u1 } else { b };
        out.add_edge(a, b, r)?;
    }
    out.set_next_id(h.next_id());
    if assertions_enabled() {
        if let (Some(k1), Some(k2)) = (exact_level(g1), exact_level(g2)) {
            if k1 == k2 {
                assert_exact(&out, k1, "block gluing")?;
            }
        }
    }
    Ok(out)
}

/// Attaches a fresh vertex to `v` by `k` parallel edges.
pub fn k_bridge_add(g: &Multigraph, v: Vertex, k: u32) -> Result<Multigraph> {
    require_vertex(g, v)?;
    if k == 0 {
        return Err(Error::argument("k must be positive"));
    }
    let mut out = g.clone();
    let u = out.add_vertex();
    out.add_edge(v, u, k)?;
    if assertions_enabled() && exact_level(g) == Some(k) {
        assert_exact(&out, k, "k-bridge addition")?;
    }
    Ok(out)
}

fn check_dart_multiset(g: &Multigraph, u: Vertex, mut given: Vec<Vertex>) -> Result<()> {
    given.sort();
    if given != g.darts(u) {
        return Err(Error::argument(format!(
            "pairing does not list every dart at {u} exactly once"
        )));
    }
    Ok(())
}

/// Deletes `u1` and `u2` and joins their darts according to the pairing. The
/// second graph is shifted by `g1.next_id()`.
pub fn vertex_glue(g1: &Multigraph, g2: &Multigraph, spec: &VertexGluingSpec) -> Result<Multigraph> {
    require_vertex(g1, spec.u1)?;
    require_vertex(g2, spec.u2)?;
    let k = spec.pairing.len() as u32;
    let (d1, d2) = (g1.degree(spec.u1), g2.degree(spec.u2));
    if d1 != k || d2 != k {
        return Err(Error::domain(format!(
            "vertex gluing needs two vertices of degree {k}, found {d1} and {d2}"
        )));
    }
    check_dart_multiset(g1, spec.u1, spec.pairing.iter().map(|p| p.0).collect())?;
    check_dart_multiset(g2, spec.u2, spec.pairing.iter().map(|p| p.1).collect())?;

    let shift = g1.next_id();
    let mut right = g2.offset(shift);
    right.remove_vertex(Vertex(spec.u2.0 + shift))?;
    let mut out = g1.clone();
    out.remove_vertex(spec.u1)?;
    for v in right.vertices() {
        out.insert_vertex(v);
    }
    for (a, b, r) in right.edges() {
        out.add_edge(a, b, r)?;
    }
    for &(a, b) in &spec.pairing {
        out.add_edge(a, Vertex(b.0 + shift), 1)?;
    }
    out.set_next_id(right.next_id());
    if assertions_enabled() && exact_level(g1) == Some(k) && exact_level(g2) == Some(k) {
        assert_exact(&out, k, "vertex gluing")?;
    }
    Ok(out)
}

/// Cuts `g` along a non-trivial minimum cut. Both sides keep their vertex ids
/// and get a fresh cap vertex `g.next_id()`.
pub fn vertex_split(g: &Multigraph, cut: &EdgeCut) -> Result<VertexSplit> {
    let actual = EdgeCut::from_side(g, cut.side_a.clone())?;
    if actual.side_b != cut.side_b || actual.crossing != cut.crossing {
        return Err(Error::argument("cut does not describe a bipartition of this graph"));
    }
    if actual.trivial {
        return Err(Error::domain("vertex splitting needs a non-trivial cut"));
    }
    let lambda = edge_connectivity(g)?;
    let k = actual.cardinality();
    if k != lambda {
        return Err(Error::domain(format!(
            "cut of size {k} is not minimum (edge connectivity is {lambda})"
        )));
    }
    let x = Vertex(g.next_id());
    let cap = |side: &BTreeSet<Vertex>, pick: &dyn Fn(&(Vertex, Vertex, u32)) -> Vertex| {
        let mut h = g.induced(side);
        h.insert_vertex(x);
        for e in &actual.crossing {
            h.add_edge(x, pick(e), e.2).unwrap();
        }
        h
    };
    let left = cap(&actual.side_a, &|e| e.0);
    let right = cap(&actual.side_b, &|e| e.1);
    let pairing = actual
        .crossing
        .iter()
        .flat_map(|&(a, b, r)| std::iter::repeat((a, b)).take(r as usize))
        .collect();
    if assertions_enabled() && exact_level(g) == Some(k) {
        assert_exact(&left, k, "vertex splitting")?;
        assert_exact(&right, k, "vertex splitting")?;
    }
    Ok(VertexSplit {
        left,
        right,
        gluing: VertexGluingSpec {
            u1: x,
            u2: x,
            pairing,
        },
    })
}

/// Core of every expansion variant: replaces the darts of `spec.target`
/// listed in the assignment by a cycle. `u_{d'}` keeps the target's id and
/// any darts not in the assignment; the other cycle vertices are fresh.
fn expand_unchecked(g: &Multigraph, spec: &CycleExpansionSpec) -> Expansion {
    let u = spec.target;
    let d = spec.cycle_size;
    let mut out = g.clone();
    let mut cycle: Vec<Vertex> = (1..d).map(|_| out.add_vertex()).collect();
    cycle.push(u);
    for (i, &c) in cycle.iter().enumerate().take(d - 1) {
        let w = spec.assignment[i];
        out.remove_edge(u, w, 1).unwrap();
        out.add_edge(c, w, 1).unwrap();
    }
    for i in 0..d {
        out.add_edge(cycle[i], cycle[(i + 1) % d], 1).unwrap();
    }
    Expansion { graph: out, cycle }
}

fn post_expand_check(out: &Multigraph, what: &str) -> Result<()> {
    if assertions_enabled() {
        assert_exact(out, 3, what)?;
    }
    Ok(())
}

/// Cycle expansion on a biconnected graph.
pub fn cycle_expand(g: &Multigraph, spec: &CycleExpansionSpec) -> Result<Multigraph> {
    Ok(cycle_expand_traced(g, spec)?.graph)
}

/// [`cycle_expand`] that also reports the created cycle.
pub fn cycle_expand_traced(g: &Multigraph, spec: &CycleExpansionSpec) -> Result<Expansion> {
    require_vertex(g, spec.target)?;
    spec.validate(g.darts(spec.target))?;
    if g.order() > 1 && blocks(g)?.block_count() != 1 {
        return Err(Error::domain(
            "cycle expansion needs a biconnected graph; use the block-respecting variant",
        ));
    }
    if assertions_enabled() {
        assert_exact(g, 3, "cycle expansion input")?;
    }
    let e = expand_unchecked(g, spec);
    post_expand_check(&e.graph, "cycle expansion")?;
    Ok(e)
}

/// Cycle expansion confined to the block holding the assigned darts. Blocks
/// hanging off the target stay on `u_{d'}` unless `attach` moves them:
/// an entry `(v, i)` moves the block containing the edge `(target, v)` onto
/// cycle vertex `i` (1-based).
pub fn block_respecting_cycle_expand(
    g: &Multigraph,
    spec: &CycleExpansionSpec,
    attach: &[(Vertex, usize)],
) -> Result<Expansion> {
    let u = spec.target;
    require_vertex(g, u)?;
    let dec = blocks(g)?;
    let first = spec
        .assignment
        .first()
        .copied()
        .ok_or_else(|| Error::argument("empty assignment"))?;
    let home = dec
        .block_of_edge(u, first)
        .ok_or_else(|| Error::argument(format!("{first} is not a neighbour of {u}")))?;
    let block = &dec.blocks[home];
    let inside: Vec<Vertex> = g.darts(u).into_iter().filter(|w| block.contains(w)).collect();
    if spec.assignment.iter().any(|w| !block.contains(w)) {
        return Err(Error::domain(format!(
            "assignment darts at {u} span more than one block"
        )));
    }
    spec.validate(inside)?;
    if assertions_enabled() {
        assert_exact(g, 3, "cycle expansion input")?;
    }

    let mut moves: BTreeMap<usize, usize> = BTreeMap::new();
    for &(v, i) in attach {
        let b = dec
            .block_of_edge(u, v)
            .filter(|_| g.multiplicity(u, v) > 0)
            .ok_or_else(|| Error::argument(format!("{v} is not a neighbour of {u}")))?;
        if b == home {
            return Err(Error::argument(format!(
                "attach names {v}, which lies in the expanded block"
            )));
        }
        if i == 0 || i > spec.cycle_size {
            return Err(Error::argument(format!("attach index {i} outside the cycle")));
        }
        if moves.insert(b, i).is_some_and(|old| old != i) {
            return Err(Error::argument("attach sends one block to two cycle vertices"));
        }
    }

    let mut e = expand_unchecked(g, spec);
    for (b, i) in moves {
        let to = e.cycle[i - 1];
        if to == u {
            continue;
        }
        for w in dec.blocks[b].iter().copied().filter(|&w| w != u) {
            let r = e.graph.multiplicity(u, w);
            if r > 0 {
                e.graph.remove_edge(u, w, r)?;
                e.graph.add_edge(to, w, r)?;
            }
        }
    }
    post_expand_check(&e.graph, "block-respecting cycle expansion")?;
    Ok(e)
}

/// Result of a contraction: the new graph, the fresh vertex and, when the
/// cycle could have come from an expansion, the spec that recreates it.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Multigraph,
    pub vertex: Vertex,
    pub inverse: Option<CycleExpansionSpec>,
    /// Cycle vertices as `u_1 .. u_{d'}` of the inverse spec (empty without one).
    pub cycle_order: Vec<Vertex>,
}

/// Collapses a chordless cycle into a fresh vertex.
pub fn cycle_contract(g: &Multigraph, c: &Cycle) -> Result<Multigraph> {
    Ok(cycle_contract_traced(g, c)?.graph)
}

pub fn cycle_contract_traced(g: &Multigraph, c: &Cycle) -> Result<Contraction> {
    c.check_in(g)?;
    if let Some((a, b)) = c.chord_in(g) {
        return Err(Error::domain(format!("cycle {c} has a chord ({a}, {b})")));
    }
    let members = c.vertex_set();
    let outward = |x: Vertex| -> Vec<Vertex> {
        g.darts(x).into_iter().filter(|w| !members.contains(w)).collect()
    };
    let mut out = g.clone();
    let fresh = Vertex(g.next_id());
    out.merge_into(&members, fresh);

    // An inverse exists when every cycle vertex but one has exactly one
    // outward dart and the cycle edges are single (or exactly doubled for length 2).
    let cyc = c.vertices();
    let len = cyc.len();
    let heavy: Vec<usize> = (0..len).filter(|&i| outward(cyc[i]).len() != 1).collect();
    let edges_ok = if len == 2 {
        g.multiplicity(cyc[0], cyc[1]) == 2
    } else {
        true
    };
    let heavy = match heavy.as_slice() {
        _ if !edges_ok => None,
        [] => Some(len - 1),
        [h] if !outward(cyc[*h]).is_empty() => Some(*h),
        _ => None,
    };
    let cycle_order: Vec<Vertex> = heavy
        .map(|h| (1..=len).map(|s| cyc[(h + s) % len]).collect())
        .unwrap_or_default();
    let inverse = heavy.map(|_| {
        let assignment = cycle_order.iter().flat_map(|&x| outward(x)).collect();
        CycleExpansionSpec::new(fresh, len, assignment)
    });

    if assertions_enabled() && g.is_quasi_regular(3) && g.order() > 1 {
        let high = g.irregular_vertices(3);
        let claimed = high.iter().all(|h| members.contains(h))
            && blocks(g)?.block_count() == 1
            && is_exactly_k(g, 3)?.exact;
        if claimed && out.order() > 1 {
            assert_exact(&out, 3, "cycle contraction")?;
            if !out.is_quasi_regular(3) {
                return Err(Error::invariant("cycle contraction broke quasi 3-regularity"));
            }
        }
    }
    Ok(Contraction {
        graph: out,
        vertex: fresh,
        inverse,
        cycle_order,
    })
}

/// Restricts `g` to `block` plus the cycle and smooths the degree-2 vertices.
pub fn contraction_expansion(
    g: &Multigraph,
    c: &Cycle,
    block: &BTreeSet<Vertex>,
) -> Result<Multigraph> {
    c.check_in(g)?;
    if let Some((a, b)) = c.chord_in(g) {
        return Err(Error::domain(format!("cycle {c} has a chord ({a}, {b})")));
    }
    let members = c.vertex_set();
    let comps = g.components_without(&members);
    if !comps.contains(block) {
        return Err(Error::domain("vertex set is not a component of the C-partition"));
    }
    let mut keep = block.clone();
    keep.extend(members);
    let out = g.induced(&keep).smooth_degree2();
    if assertions_enabled() && out.order() > 1 && is_exactly_k(g, 3)?.exact {
        assert_exact(&out, 3, "contraction-expansion")?;
    }
    Ok(out)
}
