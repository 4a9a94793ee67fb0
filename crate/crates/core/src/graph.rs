//! Loopless undirected multigraphs with integer edge multiplicities.
//!
//! Edges are stored as a symmetric `pair -> multiplicity` map. Operations that
//! need to tell parallel copies apart (vertex gluing, rotation systems) refer to
//! a copy by its position among the copies of its pair.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque vertex identifier.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Vertex(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for Vertex {
    fn from(v: u32) -> Self {
        Vertex(v)
    }
}

#[derive(Clone, Default)]
pub struct Multigraph {
    adj: BTreeMap<Vertex, BTreeMap<Vertex, u32>>,
    next_id: u32,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Multigraph {}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph {{ V: [")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "], E: [")?;
        for (i, (u, v, r)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if r == 1 {
                write!(f, "{u}-{v}")?;
            } else {
                write!(f, "{u}-{v}^{r}")?;
            }
        }
        write!(f, "] }}")
    }
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_order(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.insert_vertex(Vertex(i as u32));
        }
        g
    }

    /// Builds a graph on `0..n` from `(u, v, multiplicity)` triples; repeated pairs add up.
    pub fn from_edges(n: usize, edges: &[(u32, u32, u32)]) -> Result<Self> {
        let mut g = Self::with_order(n);
        for &(u, v, r) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::argument(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            g.add_edge(Vertex(u), Vertex(v), r)?;
        }
        Ok(g)
    }

    /// Smallest identifier never handed out by this graph.
    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    pub(crate) fn set_next_id(&mut self, id: u32) {
        self.next_id = self.next_id.max(id);
    }

    pub fn add_vertex(&mut self) -> Vertex {
        let v = Vertex(self.next_id);
        self.insert_vertex(v);
        v
    }

    pub fn insert_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
        self.next_id = self.next_id.max(v.0 + 1);
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, r: u32) -> Result<()> {
        if u == v {
            return Err(Error::argument(format!("self-loop at {u}")));
        }
        if !self.contains(u) || !self.contains(v) {
            return Err(Error::argument(format!("edge ({u}, {v}) has a missing endpoint")));
        }
        if r == 0 {
            return Ok(());
        }
        *self.adj.get_mut(&u).unwrap().entry(v).or_insert(0) += r;
        *self.adj.get_mut(&v).unwrap().entry(u).or_insert(0) += r;
        Ok(())
    }

    /// Removes `r` copies of `(u, v)`; fails if fewer are present.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex, r: u32) -> Result<()> {
        let have = self.multiplicity(u, v);
        if have < r {
            return Err(Error::argument(format!(
                "cannot remove {r} copies of ({u}, {v}); only {have} present"
            )));
        }
        for (a, b) in [(u, v), (v, u)] {
            let row = self.adj.get_mut(&a).unwrap();
            if have == r {
                row.remove(&b);
            } else {
                *row.get_mut(&b).unwrap() -= r;
            }
        }
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> Result<()> {
        let row = self
            .adj
            .remove(&v)
            .ok_or_else(|| Error::argument(format!("vertex {v} not in graph")))?;
        for w in row.keys() {
            self.adj.get_mut(w).unwrap().remove(&v);
        }
        Ok(())
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        self.adj
            .get(&u)
            .and_then(|row| row.get(&v))
            .copied()
            .unwrap_or(0)
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        self.adj.get(&v).map_or(0, |row| row.values().sum())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn size(&self) -> u32 {
        self.edges().map(|(_, _, r)| r).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.adj
            .get(&v)
            .into_iter()
            .flat_map(|row| row.iter().map(|(&w, &r)| (w, r)))
    }

    /// Every stored pair once, as `(u, v, r)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.adj.iter().flat_map(|(&u, row)| {
            row.iter()
                .filter(move |(&v, _)| u < v)
                .map(move |(&v, &r)| (u, v, r))
        })
    }

    /// Far endpoints of the darts at `v`, one entry per parallel copy, sorted.
    pub fn darts(&self, v: Vertex) -> Vec<Vertex> {
        self.neighbors(v)
            .flat_map(|(w, r)| std::iter::repeat(w).take(r as usize))
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.edges().all(|(_, _, r)| r == 1)
    }

    pub fn max_degree(&self) -> u32 {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Returns a pair of mutually unreachable vertices, if any.
    pub fn disconnected_pair(&self) -> Option<(Vertex, Vertex)> {
        let start = self.vertices().next()?;
        let seen = self.reachable_from(start, &BTreeSet::new());
        self.vertices()
            .find(|v| !seen.contains(v))
            .map(|v| (start, v))
    }

    pub fn is_connected(&self) -> bool {
        self.disconnected_pair().is_none()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        match self.disconnected_pair() {
            Some((a, b)) => Err(Error::Disconnected(a, b)),
            None => Ok(()),
        }
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn reachable_from(&self, start: Vertex, blocked: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (y, _) in self.neighbors(x) {
                if !blocked.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Connected components of the graph with `removed` deleted, ordered by least vertex.
    pub fn components_without(&self, removed: &BTreeSet<Vertex>) -> Vec<BTreeSet<Vertex>> {
        let mut out = Vec::new();
        let mut assigned: BTreeSet<Vertex> = BTreeSet::new();
        for v in self.vertices() {
            if removed.contains(&v) || assigned.contains(&v) {
                continue;
            }
            let comp = self.reachable_from(v, removed);
            assigned.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `keep`; identifiers and the id counter are preserved.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Multigraph {
        let mut g = Multigraph {
            adj: BTreeMap::new(),
            next_id: self.next_id,
        };
        for &v in keep {
            if let Some(row) = self.adj.get(&v) {
                let row = row
                    .iter()
                    .filter(|(w, _)| keep.contains(w))
                    .map(|(&w, &r)| (w, r))
                    .collect();
                g.adj.insert(v, row);
            }
        }
        g
    }

    /// Applies an injective renaming. Vertices missing from `map` keep their id.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Multigraph {
        let f = |v: Vertex| map.get(&v).copied().unwrap_or(v);
        let mut g = Multigraph::new();
        for v in self.vertices() {
            g.insert_vertex(f(v));
        }
        for (u, v, r) in self.edges() {
            g.add_edge(f(u), f(v), r).expect("relabel must be injective");
        }
        g.next_id = g.next_id.max(self.next_id);
        g
    }

    /// Copy with every identifier shifted by `offset`.
    pub fn offset(&self, offset: u32) -> Multigraph {
        let map = self.vertices().map(|v| (v, Vertex(v.0 + offset))).collect();
        let mut g = self.relabel(&map);
        g.next_id = self.next_id + offset;
        g
    }

    /// Copy relabelled onto `0..n` in increasing id order.
    pub fn compacted(&self) -> Multigraph {
        let map = self
            .vertices()
            .enumerate()
            .map(|(i, v)| (v, Vertex(i as u32)))
            .collect();
        let mut g = self.relabel(&map);
        g.next_id = self.order() as u32;
        g
    }

    /// Merges every vertex of `class` into `into` (which need not exist yet),
    /// dropping edges inside the class and summing parallel multiplicities.
    pub(crate) fn merge_into(&mut self, class: &BTreeSet<Vertex>, into: Vertex) {
        let mut outside: BTreeMap<Vertex, u32> = BTreeMap::new();
        for &v in class {
            for (w, r) in self.neighbors(v) {
                if !class.contains(&w) {
                    *outside.entry(w).or_insert(0) += r;
                }
            }
        }
        for &v in class {
            let _ = self.remove_vertex(v);
        }
        self.insert_vertex(into);
        for (w, r) in outside {
            self.add_edge(into, w, r).expect("merge endpoints exist");
        }
    }

    /// Degree sum check: sum of degrees equals twice the edge count.
    pub fn handshake_holds(&self) -> bool {
        let total: u32 = self.vertices().map(|v| self.degree(v)).sum();
        total == 2 * self.size()
    }

    /// Vertices whose degree differs from `k`.
    pub fn irregular_vertices(&self, k: u32) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) != k).collect()
    }

    /// At most one vertex has degree other than `k`.
    pub fn is_quasi_regular(&self, k: u32) -> bool {
        self.irregular_vertices(k).len() <= 1
    }

    /// Quasi k-regular with maximum degree at most `k + 1`.
    pub fn is_almost_regular(&self, k: u32) -> bool {
        self.is_quasi_regular(k) && self.max_degree() <= k + 1
    }

    /// Repeatedly smooths degree-2 vertices, least id first. A degree-2 vertex
    /// whose two darts reach the same neighbour is deleted together with its
    /// double edge. A bare double edge (both ends of degree 2) is irreducible
    /// and left in place.
    pub fn smooth_degree2(&self) -> Multigraph {
        let mut g = self.clone();
        loop {
            let next = g.vertices().find(|&x| {
                g.degree(x) == 2 && {
                    let d = g.darts(x);
                    d[0] != d[1] || g.degree(d[0]) > 2
                }
            });
            let Some(x) = next else { break };
            let darts = g.darts(x);
            g.remove_vertex(x).unwrap();
            if darts[0] != darts[1] {
                g.add_edge(darts[0], darts[1], 1).unwrap();
            }
        }
        g
    }

    pub(crate) fn dense(&self) -> (Vec<Vertex>, DenseGraph) {
        let ids: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut d = DenseGraph::new(ids.len());
        for (u, v, r) in self.edges() {
            d.set(index[&u], index[&v], r);
        }
        (ids, d)
    }
}

/// Row-major adjacency matrix of multiplicities, used by the hot loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseGraph {
    n: usize,
    m: Vec<u32>,
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        DenseGraph {
            n,
            m: vec![0; n * n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.m[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, r: u32) {
        self.m[i * self.n + j] = r;
        self.m[j * self.n + i] = r;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, r: u32) {
        let cur = self.get(i, j);
        self.set(i, j, cur + r);
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.m[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.m[i * self.n..(i + 1) * self.n]
    }

    pub fn size(&self) -> u32 {
        let mut s = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                s += self.get(i, j);
            }
        }
        s
    }

    pub fn is_simple(&self) -> bool {
        self.m.iter().all(|&r| r <= 1)
    }

    /// Appends an isolated vertex and returns its index.
    pub fn push_vertex(&mut self) -> usize {
        let n = self.n + 1;
        let mut m = vec![0; n * n];
        for i in 0..self.n {
            m[i * n..i * n + self.n].copy_from_slice(self.row(i));
        }
        self.n = n;
        self.m = m;
        n - 1
    }

    /// Removes vertex `i`; later indices shift down by one.
    pub fn remove_vertex(&mut self, i: usize) {
        let n = self.n - 1;
        let mut m = Vec::with_capacity(n * n);
        for a in (0..self.n).filter(|&a| a != i) {
            for b in (0..self.n).filter(|&b| b != i) {
                m.push(self.get(a, b));
            }
        }
        self.n = n;
        self.m = m;
    }

    pub fn to_multigraph(&self) -> Multigraph {
        let mut g = Multigraph::with_order(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let r = self.get(i, j);
                if r > 0 {
                    g.add_edge(Vertex(i as u32), Vertex(j as u32), r).unwrap();
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in 0..self.n {
                if !seen[y] && self.get(x, y) > 0 {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    /// True when connected and no single vertex removal disconnects it.
    pub fn is_biconnected(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        if self.n <= 2 {
            return true;
        }
        (0..self.n).all(|cut| {
            let start = if cut == 0 { 1 } else { 0 };
            let mut seen = vec![false; self.n];
            seen[cut] = true;
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for y in 0..self.n {
                    if !seen[y] && self.get(x, y) > 0 {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            count == self.n - 1
        })
    }
}

/// A cycle of at least two distinct vertices, stored in normal form: it starts
/// at its least vertex and continues towards the lesser of that vertex's two
/// cycle neighbours. A length-2 cycle denotes a double edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cycle {
    vertices: Vec<Vertex>,
}

impl Cycle {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::argument("a cycle needs at least two vertices"));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::argument("cycle vertices must be distinct"));
        }
        Ok(Cycle {
            vertices: normalize_rotation(vertices),
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices.iter().copied().collect()
    }

    /// Consecutive pairs, closing the cycle. A length-2 cycle yields its pair twice.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Checks that every consecutive pair is an edge of `g` (multiplicity >= 2
    /// for a length-2 cycle).
    pub fn check_in(&self, g: &Multigraph) -> Result<()> {
        for &v in &self.vertices {
            if !g.contains(v) {
                return Err(Error::argument(format!("cycle vertex {v} not in graph")));
            }
        }
        if self.len() == 2 {
            let (a, b) = (self.vertices[0], self.vertices[1]);
            if g.multiplicity(a, b) < 2 {
                return Err(Error::argument(format!(
                    "length-2 cycle needs a double edge on ({a}, {b})"
                )));
            }
            return Ok(());
        }
        for (a, b) in self.edges() {
            if g.multiplicity(a, b) == 0 {
                return Err(Error::argument(format!("cycle edge ({a}, {b}) missing")));
            }
        }
        Ok(())
    }

    /// Returns a chord of this cycle in `g`, if any. For cycles of length at
    /// least 3 a doubled cycle edge counts as a chord.
    pub fn chord_in(&self, g: &Multigraph) -> Option<(Vertex, Vertex)> {
        let n = self.len();
        if n == 2 {
            return None;
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (self.vertices[i], self.vertices[j]);
                let r = g.multiplicity(a, b);
                let consecutive = j == i + 1 || (i == 0 && j == n - 1);
                if (consecutive && r >= 2) || (!consecutive && r >= 1) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_chordless_in(&self, g: &Multigraph) -> bool {
        self.check_in(g).is_ok() && self.chord_in(g).is_none()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

fn normalize_rotation(mut vs: Vec<Vertex>) -> Vec<Vertex> {
    let start = vs
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map(|(i, _)| i)
        .unwrap();
    vs.rotate_left(start);
    let n = vs.len();
    if n > 2 && vs[n - 1] < vs[1] {
        vs[1..].reverse();
    }
    vs
}

/// Small named graphs used as seeds, fixtures and reference instances.
pub mod families {
    use super::*;

    /// Two vertices joined by three parallel edges.
    pub fn dumbbell() -> Multigraph {
        thick_edge(3)
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn thick_edge(k: u32) -> Multigraph {
        Multigraph::from_edges(2, &[(0, 1, k)]).unwrap()
    }

    pub fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n as u32).map(|i| (i, (i + 1) % n as u32, 1)).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                edges.push((i, j, 1));
            }
        }
        Multigraph::from_edges(n, &edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..a as u32 {
            for j in 0..b as u32 {
                edges.push((i, a as u32 + j, 1));
            }
        }
        Multigraph::from_edges(a + b, &edges).unwrap()
    }

    /// The Harary graph `H_{k,n}`: the classical k-connected graph on `n`
    /// vertices with `ceil(kn/2)` edges. Requires `2 <= k < n`.
    pub fn harary(k: usize, n: usize) -> Multigraph {
        assert!(k >= 2 && k < n, "harary graph needs 2 <= k < n");
        let mut g = Multigraph::with_order(n);
        let r = k / 2;
        let link = |g: &mut Multigraph, a: usize, b: usize| {
            let (a, b) = (Vertex((a % n) as u32), Vertex((b % n) as u32));
            if g.multiplicity(a, b) == 0 {
                g.add_edge(a, b, 1).unwrap();
            }
        };
        for i in 0..n {
            for s in 1..=r {
                link(&mut g, i, i + s);
            }
        }
        if k % 2 == 1 {
            if n % 2 == 0 {
                for i in 0..n / 2 {
                    link(&mut g, i, i + n / 2);
                }
            } else {
                for i in 0..=(n - 1) / 2 {
                    link(&mut g, i, i + (n + 1) / 2);
                }
            }
        }
        g
    }

    /// Path of `blocks` dumbbells glued end to end.
    pub fn thick_path(blocks: usize) -> Multigraph {
        let edges: Vec<_> = (0..blocks as u32).map(|i| (i, i + 1, 3)).collect();
        Multigraph::from_edges(blocks + 1, &edges).unwrap()
    }

    pub fn petersen() -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5, 1));
            edges.push((i, i + 5, 1));
            edges.push((i + 5, (i + 2) % 5 + 5, 1));
        }
        Multigraph::from_edges(10, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    #[test]
    fn loops_are_rejected() {
        let mut g = Multigraph::with_order(2);
        assert!(matches!(g.add_edge(v(0), v(0), 1), Err(Error::Argument(_))));
    }

    #[test]
    fn degrees_count_multiplicity() {
        let g = dumbbell();
        assert_eq!(g.degree(v(0)), 3);
        assert_eq!(g.size(), 3);
        assert!(g.handshake_holds());
        assert_eq!(g.darts(v(1)), vec![v(0); 3]);
    }

    #[test]
    fn removal_drops_zero_multiplicities() {
        let mut g = dumbbell();
        g.remove_edge(v(0), v(1), 3).unwrap();
        assert_eq!(g.edges().count(), 0);
        assert!(g.remove_edge(v(0), v(1), 1).is_err());
    }

    #[test]
    fn cycle_normal_form() {
        let c = Cycle::new(vec![v(3), v(1), v(2), v(5)]).unwrap();
        assert_eq!(c.vertices(), &[v(1), v(2), v(5), v(3)]);
        let d = Cycle::new(vec![v(5), v(2), v(1), v(3)]).unwrap();
        assert_eq!(c, d);
        assert!(Cycle::new(vec![v(1)]).is_err());
        assert!(Cycle::new(vec![v(1), v(2), v(1)]).is_err());
    }

    #[test]
    fn chords_include_doubled_cycle_edges() {
        let g = Multigraph::from_edges(3, &[(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap();
        let c = Cycle::new(vec![v(0), v(1), v(2)]).unwrap();
        assert_eq!(c.chord_in(&g), Some((v(0), v(1))));
        let two = Cycle::new(vec![v(0), v(1)]).unwrap();
        assert!(two.is_chordless_in(&g));
        assert!(!Cycle::new(vec![v(1), v(2)]).unwrap().is_chordless_in(&g));
    }

    #[test]
    fn smoothing_examples() {
        // path a-x-b plus (a,b)^2
        let g = Multigraph::from_edges(3, &[(0, 2, 1), (2, 1, 1), (0, 1, 2)]).unwrap();
        let s = g.smooth_degree2();
        assert_eq!(s.order(), 2);
        assert_eq!(s.multiplicity(v(0), v(1)), 3);

        let k4 = complete(4);
        assert_eq!(k4.smooth_degree2(), k4);

        // 4-cycle a-x-b-y-a
        let c4 = Multigraph::from_edges(4, &[(0, 2, 1), (2, 1, 1), (1, 3, 1), (3, 0, 1)]).unwrap();
        let s = c4.smooth_degree2();
        assert_eq!(s.order(), 2);
        assert_eq!(s.edges().collect::<Vec<_>>().len(), 1);
        let (_, _, r) = s.edges().next().unwrap();
        assert_eq!(r, 2);
    }

    #[test]
    fn smoothing_removes_vertices_that_would_loop() {
        // x hangs off a by a double edge: smoothing deletes x entirely.
        let g = Multigraph::from_edges(3, &[(0, 1, 3), (0, 2, 2)]).unwrap();
        let s = g.smooth_degree2();
        assert_eq!(s.order(), 2);
        assert_eq!(s.multiplicity(v(0), v(1)), 3);
    }

    #[test]
    fn harary_sizes() {
        for n in 4..=12 {
            let h = harary(3, n);
            assert_eq!(h.size() as usize, (3 * n).div_ceil(2), "n = {n}");
            assert!(h.min_degree() >= 3);
        }
    }

    #[test]
    fn dense_biconnectivity() {
        assert!(dumbbell().dense().1.is_biconnected());
        assert!(!thick_path(2).dense().1.is_biconnected());
        assert!(complete(4).dense().1.is_biconnected());
    }

    #[test]
    fn dense_vertex_edits() {
        let (_, mut d) = complete(3).dense();
        let x = d.push_vertex();
        d.set(x, 0, 2);
        assert_eq!(d.degree(0), 4);
        d.remove_vertex(1);
        assert_eq!(d.n(), 3);
        assert_eq!(d.get(2, 0), 2);
        assert_eq!(d.get(0, 1), 1);
    }
}
