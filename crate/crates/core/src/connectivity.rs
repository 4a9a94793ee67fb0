//! Local edge-connectivity, exact-k verification, minimum cuts and supernode
//! collapse. Every edge carries capacity equal to its multiplicity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DenseGraph, Multigraph, Vertex};
use crate::par::{self, Exec};

/// Maximum `s`-`t` flow on the dense capacity matrix. Stops early once the
/// flow reaches `limit`. Also returns the source side of a minimum cut when
/// the flow is maximal.
pub(crate) fn max_flow(d: &DenseGraph, s: usize, t: usize, limit: u32) -> (u32, Vec<bool>) {
    let n = d.n();
    let mut residual: Vec<u32> = (0..n * n).map(|i| d.get(i / n, i % n)).collect();
    let mut flow = 0;
    let mut pred = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    loop {
        pred.iter_mut().for_each(|p| *p = usize::MAX);
        pred[s] = s;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for y in 0..n {
                if pred[y] == usize::MAX && residual[x * n + y] > 0 {
                    pred[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if pred[t] == usize::MAX {
            let side = pred.iter().map(|&p| p != usize::MAX).collect();
            return (flow, side);
        }
        let mut bottleneck = u32::MAX;
        let mut y = t;
        while y != s {
            let x = pred[y];
            bottleneck = bottleneck.min(residual[x * n + y]);
            y = x;
        }
        let mut y = t;
        while y != s {
            let x = pred[y];
            residual[x * n + y] -= bottleneck;
            residual[y * n + x] += bottleneck;
            y = x;
        }
        flow += bottleneck;
        if flow >= limit {
            return (flow, Vec::new());
        }
    }
}

/// lambda(u, v): the maximum number of pairwise edge-disjoint u-v paths.
pub fn local_connectivity(g: &Multigraph, u: Vertex, v: Vertex) -> Result<u32> {
    if u == v {
        return Err(Error::argument("local connectivity needs two distinct vertices"));
    }
    for x in [u, v] {
        if !g.contains(x) {
            return Err(Error::argument(format!("vertex {x} not in graph")));
        }
    }
    let (ids, d) = g.dense();
    let pos = |x: Vertex| ids.binary_search(&x).unwrap();
    Ok(max_flow(&d, pos(u), pos(v), u32::MAX).0)
}

/// Flow-equivalent tree (Gusfield): `parent[i]` and `weight[i]` for every
/// non-root `i`, such that lambda(a, b) is the least weight on the tree path.
pub(crate) struct FlowTree {
    parent: Vec<usize>,
    weight: Vec<u32>,
}

impl FlowTree {
    pub(crate) fn build(d: &DenseGraph) -> Self {
        let n = d.n();
        let mut parent = vec![0; n];
        let mut weight = vec![0; n];
        for s in 1..n {
            let t = parent[s];
            let (f, side) = max_flow(d, s, t, u32::MAX);
            weight[s] = f;
            for i in s + 1..n {
                if side[i] && parent[i] == t {
                    parent[i] = s;
                }
            }
        }
        FlowTree { parent, weight }
    }

    /// lambda for every ordered pair, as a row-major matrix.
    pub(crate) fn all_pairs(&self) -> Vec<u32> {
        let n = self.parent.len();
        let mut out = vec![u32::MAX; n * n];
        // Walk the tree from every vertex, tracking the path minimum.
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for i in 1..n {
            adj[i].push((self.parent[i], self.weight[i]));
            adj[self.parent[i]].push((i, self.weight[i]));
        }
        for s in 0..n {
            let mut stack = vec![(s, usize::MAX, u32::MAX)];
            while let Some((x, from, m)) = stack.pop() {
                out[s * n + x] = m;
                for &(y, w) in &adj[x] {
                    if y != from {
                        stack.push((y, x, m.min(w)));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn min_weight(&self) -> Option<u32> {
        self.weight.iter().skip(1).copied().min()
    }

    pub(crate) fn all_weights_equal(&self, k: u32) -> bool {
        self.weight.iter().skip(1).all(|&w| w == k)
    }
}

/// A vertex pair whose local connectivity differs from the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: Vertex,
    pub v: Vertex,
    pub lambda: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub k: u32,
    pub exact: bool,
    pub witness: Option<Witness>,
}

impl ConnectivityReport {
    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some(w) => Err(Error::NotExact {
                k: self.k,
                u: w.u,
                v: w.v,
                lambda: w.lambda,
            }),
        }
    }
}

/// Decides whether every pair of distinct vertices has lambda exactly `k`.
/// On failure the witness is the lexicographically first offending pair.
pub fn is_exactly_k(g: &Multigraph, k: u32) -> Result<ConnectivityReport> {
    if g.order() < 2 {
        return Err(Error::domain("exactness is defined for graphs of order at least 2"));
    }
    let (ids, d) = g.dense();
    Ok(exactness_dense(&d, k, &ids))
}

pub(crate) fn exactness_dense(d: &DenseGraph, k: u32, ids: &[Vertex]) -> ConnectivityReport {
    let tree = FlowTree::build(d);
    if tree.all_weights_equal(k) {
        return ConnectivityReport {
            k,
            exact: true,
            witness: None,
        };
    }
    let n = d.n();
    let lambda = tree.all_pairs();
    for a in 0..n {
        for b in a + 1..n {
            if lambda[a * n + b] != k {
                return ConnectivityReport {
                    k,
                    exact: false,
                    witness: Some(Witness {
                        u: ids[a],
                        v: ids[b],
                        lambda: lambda[a * n + b],
                    }),
                };
            }
        }
    }
    unreachable!("a flow tree weight differs from k, so some pair does")
}

/// Fast yes/no exactness test on a dense matrix; stops at the first flow that
/// exceeds `k`.
pub(crate) fn is_exact_dense(d: &DenseGraph, k: u32) -> bool {
    let n = d.n();
    if n < 2 {
        return false;
    }
    if (0..n).any(|i| d.degree(i) < k) {
        return false;
    }
    let mut parent = vec![0; n];
    for s in 1..n {
        let t = parent[s];
        let (f, side) = max_flow(d, s, t, k + 1);
        if f != k {
            return false;
        }
        for i in s + 1..n {
            if side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
    }
    true
}

/// lambda for every unordered pair by independent flows, `(u, v, lambda)` with `u < v`.
pub fn all_pairs_connectivity(g: &Multigraph, exec: Exec) -> Vec<(Vertex, Vertex, u32)> {
    let (ids, d) = g.dense();
    let n = ids.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    par::map(exec, &pairs, |&(a, b)| (ids[a], ids[b], max_flow(&d, a, b, u32::MAX).0))
}

/// All-pairs exactness by brute force over every pair (no flow tree).
pub fn is_exactly_k_all_pairs(g: &Multigraph, k: u32, exec: Exec) -> Result<ConnectivityReport> {
    if g.order() < 2 {
        return Err(Error::domain("exactness is defined for graphs of order at least 2"));
    }
    let witness = all_pairs_connectivity(g, exec)
        .into_iter()
        .find(|&(_, _, l)| l != k)
        .map(|(u, v, lambda)| Witness { u, v, lambda });
    Ok(ConnectivityReport {
        k,
        exact: witness.is_none(),
        witness,
    })
}

/// Global edge-connectivity (minimum over all pairs).
pub fn edge_connectivity(g: &Multigraph) -> Result<u32> {
    if g.order() < 2 {
        return Err(Error::domain("edge connectivity needs at least 2 vertices"));
    }
    let (_, d) = g.dense();
    Ok(FlowTree::build(&d).min_weight().unwrap())
}

/// A bipartition of the vertex set with the edges that straddle it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCut {
    pub side_a: BTreeSet<Vertex>,
    pub side_b: BTreeSet<Vertex>,
    /// Straddling pairs `(a, b, r)` with `a` in `side_a`.
    pub crossing: Vec<(Vertex, Vertex, u32)>,
    pub trivial: bool,
}

impl EdgeCut {
    /// The cut of `g` induced by `side_a`; fails unless both sides are non-empty.
    pub fn from_side(g: &Multigraph, side_a: BTreeSet<Vertex>) -> Result<Self> {
        if side_a.iter().any(|v| !g.contains(*v)) {
            return Err(Error::argument("cut side names a vertex outside the graph"));
        }
        let side_b: BTreeSet<Vertex> = g.vertices().filter(|v| !side_a.contains(v)).collect();
        if side_a.is_empty() || side_b.is_empty() {
            return Err(Error::argument("both sides of a cut must be non-empty"));
        }
        let mut crossing = Vec::new();
        for &a in &side_a {
            for (b, r) in g.neighbors(a) {
                if side_b.contains(&b) {
                    crossing.push((a, b, r));
                }
            }
        }
        let trivial = side_a.len() == 1 || side_b.len() == 1;
        Ok(EdgeCut {
            side_a,
            side_b,
            crossing,
            trivial,
        })
    }

    /// Number of crossing edges counted with multiplicity.
    pub fn cardinality(&self) -> u32 {
        self.crossing.iter().map(|&(_, _, r)| r).sum()
    }
}

/// Every minimum edge cut, ordered by `side_a` (the side holding the least vertex).
pub fn minimum_cuts(g: &Multigraph, nontrivial_only: bool) -> Result<Vec<EdgeCut>> {
    if g.order() < 2 {
        return Err(Error::domain("cuts need at least 2 vertices"));
    }
    g.require_connected()?;
    let n = g.order();
    if n > 26 {
        return Err(Error::domain(format!(
            "exhaustive cut enumeration supports at most 26 vertices, got {n}"
        )));
    }
    let (ids, d) = g.dense();
    let target = FlowTree::build(&d).min_weight().unwrap();
    let mut out = Vec::new();
    // Vertex 0 always sits in side_a.
    for mask in 0u64..(1u64 << (n - 1)) {
        let in_a = |i: usize| i == 0 || (mask >> (i - 1)) & 1 == 0;
        let size_a = (0..n).filter(|&i| in_a(i)).count();
        if size_a == n {
            continue;
        }
        if nontrivial_only && (size_a == 1 || size_a == n - 1) {
            continue;
        }
        let mut cut = 0;
        'outer: for i in 0..n {
            if !in_a(i) {
                continue;
            }
            for j in 0..n {
                if !in_a(j) {
                    cut += d.get(i, j);
                    if cut > target {
                        break 'outer;
                    }
                }
            }
        }
        if cut == target {
            let side: BTreeSet<Vertex> = (0..n).filter(|&i| in_a(i)).map(|i| ids[i]).collect();
            out.push(EdgeCut::from_side(g, side)?);
        }
    }
    out.sort_by(|a, b| a.side_a.cmp(&b.side_a));
    Ok(out)
}

/// Merges every class of vertices joined pairwise by more than `k`
/// edge-disjoint paths. The result is a single vertex or exactly k-edge-connected.
pub fn collapse_supernodes(g: &Multigraph, k: u32) -> Result<Multigraph> {
    if g.order() == 0 {
        return Err(Error::argument("collapse of the empty graph"));
    }
    if g.order() == 1 {
        return Ok(g.clone());
    }
    g.require_connected()?;
    let (ids, d) = g.dense();
    let n = ids.len();
    let lambda = FlowTree::build(&d).all_pairs();
    for a in 0..n {
        for b in a + 1..n {
            if lambda[a * n + b] < k {
                return Err(Error::domain(format!(
                    "graph is not {k}-edge-connected: lambda({}, {}) = {}",
                    ids[a],
                    ids[b],
                    lambda[a * n + b]
                )));
            }
        }
    }
    // Classes are components of the relation lambda > k.
    let mut class = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if class[s] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![s];
        class[s] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for y in 0..n {
                if class[y] == usize::MAX && lambda[x * n + y] > k {
                    class[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        classes.push(members);
    }
    for members in &classes {
        for &a in members {
            for &b in members {
                if a != b && lambda[a * n + b] <= k {
                    return Err(Error::invariant("supernode relation is not transitive"));
                }
            }
        }
    }
    let mut out = g.clone();
    for members in &classes {
        if members.len() > 1 {
            let set: BTreeSet<Vertex> = members.iter().map(|&i| ids[i]).collect();
            let keep = *set.iter().next().unwrap();
            out.merge_into(&set, keep);
        }
    }
    if out.order() > 1 && !is_exactly_k(&out, k)?.exact {
        return Err(Error::invariant("collapsed graph is not exactly k-edge-connected"));
    }
    Ok(out)
}

/// Vertices joined to `v` by more than `k` edge-disjoint paths.
pub fn supernode_classes(g: &Multigraph, k: u32) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
    let (ids, d) = g.dense();
    let n = ids.len();
    let lambda = FlowTree::build(&d).all_pairs();
    (0..n)
        .map(|a| {
            let set = (0..n)
                .filter(|&b| b == a || lambda[a * n + b] > k)
                .map(|b| ids[b])
                .collect();
            (ids[a], set)
        })
        .collect()
}
