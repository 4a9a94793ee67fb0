//! Exhaustive generation of exactly 3-edge-connected graphs by breadth-first
//! closure from the dumbbell, with canonical deduplication.
//!
//! The biconnected classes are produced order by order: every child of a
//! cycle expansion is strictly larger than its parent, so once all graphs of
//! order `k` have been expanded, the set of order `k + 1` is final. Graphs
//! with articulation points are then produced by block gluing, again order by
//! order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::canon::{canonical_form, canonical_form_with_orbits, CanonicalCode};
use crate::connectivity::{is_exact_dense, max_flow};
use crate::error::{Error, Result};
use crate::graph::{DenseGraph, Multigraph};
use crate::ops::CycleExpansionSpec;
use crate::par::{self, Exec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Emit {
    #[default]
    CountOnly,
    Stream,
}

/// Stops an enumeration that grows past a class count or a wall-clock limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub max_classes: Option<usize>,
    pub time_limit: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub max_vertices: usize,
    pub require_simple: bool,
    pub require_biconnected: bool,
    pub require_minimum: bool,
    pub require_planar: bool,
    /// Restrict expansions to those passing [`minimum_filter_admits`] when
    /// `require_minimum` is set. This loses graphs such as the Petersen graph
    /// whose every contraction leaves two vertices of degree above 3, so it
    /// is off by default.
    pub prune_minimum: bool,
    pub emit: Emit,
    pub budget: Budget,
    pub exec: Exec,
}

impl EnumerationQuery {
    pub fn new(max_vertices: usize) -> Self {
        EnumerationQuery {
            max_vertices,
            require_simple: false,
            require_biconnected: false,
            require_minimum: false,
            require_planar: false,
            prune_minimum: false,
            emit: Emit::CountOnly,
            budget: Budget::default(),
            exec: Exec::default(),
        }
    }

    pub fn simple(mut self) -> Self {
        self.require_simple = true;
        self
    }

    pub fn biconnected(mut self) -> Self {
        self.require_biconnected = true;
        self
    }

    pub fn minimum(mut self) -> Self {
        self.require_minimum = true;
        self
    }

    pub fn planar(mut self) -> Self {
        self.require_planar = true;
        self
    }

    pub fn stream(mut self) -> Self {
        self.emit = Emit::Stream;
        self
    }

    pub fn exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_vertices < 2 {
            return Err(Error::argument("max_vertices must be at least 2"));
        }
        if self.max_vertices > 64 {
            return Err(Error::argument("max_vertices above 64 is out of reach"));
        }
        Ok(())
    }

    fn admits(&self, d: &DenseGraph) -> bool {
        (!self.require_simple || d.is_simple())
            && (!self.require_minimum || is_minimum_dense(d, 3))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EnumeratedGraph {
    pub order: usize,
    pub code: CanonicalCode,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct EnumerationResult {
    /// Class count for every order from 2 to the bound, zeros included.
    pub counts_by_order: BTreeMap<usize, usize>,
    /// Emitted graphs sorted by order then code; empty for count-only runs.
    pub graphs: Vec<EnumeratedGraph>,
}

impl EnumerationResult {
    pub fn total(&self) -> usize {
        self.counts_by_order.values().sum()
    }
}

/// A family of biconnected graphs closed under the generating expansions.
/// Keys may carry more than the graph (an embedding, say); `graph` forgets it.
pub(crate) trait Stratum: Sync {
    type Key: Clone + Eq + Ord + std::hash::Hash + Send + Sync;

    fn seed(&self) -> Self::Key;
    fn order(&self, key: &Self::Key) -> usize;
    fn graph(&self, key: &Self::Key) -> CanonicalCode;
    fn children(&self, key: &Self::Key, max_vertices: usize) -> Vec<Self::Key>;
}

/// All cycle expansions of abstract graphs.
pub(crate) struct Expansions {
    pub simple_target: bool,
    pub prune_minimum: bool,
}

impl Stratum for Expansions {
    type Key = CanonicalCode;

    fn seed(&self) -> CanonicalCode {
        let mut d = DenseGraph::new(2);
        d.set(0, 1, 3);
        canonical_form(&d).0
    }

    fn order(&self, key: &CanonicalCode) -> usize {
        key.order()
    }

    fn graph(&self, key: &CanonicalCode) -> CanonicalCode {
        key.clone()
    }

    fn children(&self, key: &CanonicalCode, max_vertices: usize) -> Vec<CanonicalCode> {
        let d = key.to_dense();
        let (_, _, orbit) = canonical_form_with_orbits(&d);
        let mut out = HashSet::new();
        for u in (0..d.n()).filter(|&u| orbit[u] == u) {
            for_each_expansion(&d, u, max_vertices, |child, cycle_size| {
                if self.prune_minimum && !admits_minimum(&d, cycle_size) {
                    return;
                }
                if self.simple_target && !can_become_simple(child, max_vertices) {
                    return;
                }
                out.insert(canonical_form(child).0);
            });
        }
        let mut out: Vec<_> = out.into_iter().collect();
        out.sort();
        out
    }
}

fn admits_minimum(d: &DenseGraph, cycle_size: usize) -> bool {
    let n = d.n() + cycle_size - 1;
    2 * d.size() as usize + 2 * cycle_size <= 3 * n + 1
}

/// Calls `f` on every cycle expansion of vertex `u` whose result has at most
/// `max_vertices` vertices, up to reversal of the cycle.
///
/// The child keeps `u` as the last cycle vertex, which takes the "heavy"
/// darts; the other cycle vertices are appended in cycle order.
pub(crate) fn for_each_expansion(
    d: &DenseGraph,
    u: usize,
    max_vertices: usize,
    mut f: impl FnMut(&DenseGraph, usize),
) {
    let n = d.n();
    let darts: Vec<usize> = (0..n)
        .flat_map(|w| std::iter::repeat(w).take(d.get(u, w) as usize))
        .collect();
    let deg = darts.len();
    let mut base = d.clone();
    for w in 0..n {
        base.set(u, w, 0);
    }
    for size in 2..=deg {
        if n + size - 1 > max_vertices {
            break;
        }
        let heavy_len = deg - size + 1;
        for_each_submultiset(&darts, heavy_len, |heavy, rest| {
            for_each_arrangement(rest, |seq| {
                let mut child = base.clone();
                for _ in 0..size - 1 {
                    child.push_vertex();
                }
                for &w in heavy {
                    child.add(u, w, 1);
                }
                let cyc: Vec<usize> = (0..size - 1).map(|i| n + i).chain([u]).collect();
                for (i, &w) in seq.iter().enumerate() {
                    child.add(cyc[i], w, 1);
                }
                for i in 0..size {
                    child.add(cyc[i], cyc[(i + 1) % size], 1);
                }
                f(&child, size);
            });
        });
    }
}

/// Sub-multisets of the sorted slice `items` of length `len`, each with its complement.
fn for_each_submultiset(items: &[usize], len: usize, mut f: impl FnMut(&[usize], &[usize])) {
    fn go(
        items: &[usize],
        i: usize,
        len: usize,
        pick: &mut Vec<usize>,
        rest: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize], &[usize]),
    ) {
        if pick.len() == len {
            let before = rest.len();
            rest.extend_from_slice(&items[i..]);
            f(pick, rest);
            rest.truncate(before);
            return;
        }
        if i == items.len() {
            return;
        }
        // Run of equal values starting at i: take t of them.
        let mut j = i;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        let run = j - i;
        for t in (0..=run.min(len - pick.len())).rev() {
            pick.extend(std::iter::repeat(items[i]).take(t));
            rest.extend(std::iter::repeat(items[i]).take(run - t));
            go(items, j, len, pick, rest, f);
            pick.truncate(pick.len() - t);
            rest.truncate(rest.len() - (run - t));
        }
    }
    go(items, 0, len, &mut Vec::new(), &mut Vec::new(), &mut f);
}

/// Distinct permutations of the sorted multiset `items`, keeping one of each
/// sequence and its reversal.
fn for_each_arrangement(items: &[usize], mut f: impl FnMut(&[usize])) {
    let mut seq = items.to_vec();
    loop {
        if seq.iter().le(seq.iter().rev()) {
            f(&seq);
        }
        if !next_permutation(&mut seq) {
            break;
        }
    }
}

fn next_permutation(s: &mut [usize]) -> bool {
    let n = s.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}

/// A graph with a matching of `t` disjoint parallel pairs needs at least `t`
/// expansions on cycles of length 3 or more before it is simple, each adding
/// two vertices: an expansion on a 2-cycle creates a parallel pair of its own.
pub(crate) fn can_become_simple(d: &DenseGraph, max_vertices: usize) -> bool {
    let n = d.n();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| d.get(i, j) > 1)
        .collect();
    if pairs.is_empty() {
        return true;
    }
    let slack = max_vertices.saturating_sub(n) / 2;
    if pairs.len() <= slack {
        return true;
    }
    matching_at_most(&pairs, &mut vec![false; n], 0, slack)
}

/// True when no matching in `pairs[i..]` avoiding `used` exceeds `cap` edges.
fn matching_at_most(pairs: &[(usize, usize)], used: &mut [bool], i: usize, cap: usize) -> bool {
    fn best(pairs: &[(usize, usize)], used: &mut [bool], i: usize, cap: usize) -> usize {
        if i == pairs.len() {
            return 0;
        }
        let skip = best(pairs, used, i + 1, cap);
        if skip > cap {
            return skip;
        }
        let (a, b) = pairs[i];
        if used[a] || used[b] {
            return skip;
        }
        used[a] = true;
        used[b] = true;
        let take = 1 + best(pairs, used, i + 1, cap.saturating_sub(1));
        used[a] = false;
        used[b] = false;
        skip.max(take)
    }
    best(pairs, used, i, cap) <= cap
}

fn is_minimum_dense(d: &DenseGraph, k: u32) -> bool {
    let n = d.n() as u32;
    d.size() == (k * n).div_ceil(2)
}

/// Orbit representatives of a canonical code's vertices.
fn orbit_reps(code: &CanonicalCode) -> (DenseGraph, Vec<usize>) {
    let d = code.to_dense();
    let (_, _, orbit) = canonical_form_with_orbits(&d);
    let reps = (0..d.n()).filter(|&i| orbit[i] == i).collect();
    (d, reps)
}

/// Every way of identifying a vertex of `a` with a vertex of `b`.
fn glue_all(a: &CanonicalCode, b: &CanonicalCode) -> Vec<CanonicalCode> {
    let (da, ra) = orbit_reps(a);
    let (db, rb) = orbit_reps(b);
    let mut out = Vec::new();
    for &x in &ra {
        for &y in &rb {
            out.push(canonical_form(&glue_dense(&da, x, &db, y)).0);
        }
    }
    out
}

fn glue_dense(a: &DenseGraph, x: usize, b: &DenseGraph, y: usize) -> DenseGraph {
    let (na, nb) = (a.n(), b.n());
    let mut d = DenseGraph::new(na + nb - 1);
    for i in 0..na {
        for j in i + 1..na {
            d.set(i, j, a.get(i, j));
        }
    }
    let place = |j: usize| match j.cmp(&y) {
        std::cmp::Ordering::Equal => x,
        std::cmp::Ordering::Less => na + j,
        std::cmp::Ordering::Greater => na + j - 1,
    };
    for i in 0..nb {
        for j in i + 1..nb {
            let r = b.get(i, j);
            if r > 0 {
                d.set(place(i), place(j), r);
            }
        }
    }
    d
}

struct Run<'a> {
    query: &'a EnumerationQuery,
    start: Instant,
    classes: usize,
    counts: BTreeMap<usize, usize>,
    graphs: Vec<EnumeratedGraph>,
}

impl Run<'_> {
    fn over_budget(&self) -> bool {
        let b = &self.query.budget;
        b.max_classes.is_some_and(|m| self.classes > m)
            || b.time_limit.is_some_and(|t| self.start.elapsed() > t)
    }

    fn budget_error(&self) -> Error {
        Error::Budget {
            completed: self.counts.clone(),
        }
    }

    fn emit(&mut self, order: usize, codes: &BTreeSet<CanonicalCode>) {
        for c in codes {
            if self.query.admits(&c.to_dense()) {
                *self.counts.entry(order).or_default() += 1;
                if self.query.emit == Emit::Stream {
                    self.graphs.push(EnumeratedGraph {
                        order,
                        code: c.clone(),
                    });
                }
            }
        }
    }
}

pub fn enumerate(query: &EnumerationQuery) -> Result<EnumerationResult> {
    query.validate()?;
    if query.require_planar {
        let stratum = crate::planar::EmbeddedExpansions {
            simple_target: query.require_simple,
            prune_minimum: query.require_minimum && query.prune_minimum,
        };
        run(query, &stratum)
    } else {
        let stratum = Expansions {
            simple_target: query.require_simple,
            prune_minimum: query.require_minimum && query.prune_minimum,
        };
        run(query, &stratum)
    }
}

pub(crate) fn run<S: Stratum>(query: &EnumerationQuery, stratum: &S) -> Result<EnumerationResult> {
    let max = query.max_vertices;
    let mut run = Run {
        query,
        start: Instant::now(),
        classes: 0,
        counts: BTreeMap::new(),
        graphs: Vec::new(),
    };

    // keys[k]: stratum keys of order k found so far.
    let mut keys: Vec<HashSet<S::Key>> = vec![HashSet::new(); max + 1];
    keys[2].insert(stratum.seed());
    let glue = !query.require_biconnected && !query.require_minimum;
    // Biconnected pieces and glued graphs by order, used by the glue closure.
    let mut pieces: Vec<Vec<CanonicalCode>> = vec![Vec::new(); max + 1];
    let mut glued: Vec<HashSet<CanonicalCode>> = vec![HashSet::new(); max + 1];
    let mut all: Vec<Vec<CanonicalCode>> = vec![Vec::new(); max + 1];

    for k in 2..=max {
        let mut frontier: Vec<S::Key> = std::mem::take(&mut keys[k]).into_iter().collect();
        frontier.sort();
        run.classes += frontier.len();
        if run.over_budget() {
            return Err(run.budget_error());
        }

        let bic: BTreeSet<CanonicalCode> = frontier.iter().map(|x| stratum.graph(x)).collect();
        let glued_k: BTreeSet<CanonicalCode> = std::mem::take(&mut glued[k]).into_iter().collect();
        let mut emitted: BTreeSet<CanonicalCode> = bic.clone();
        emitted.extend(glued_k.iter().cloned());
        run.emit(k, &emitted);
        run.counts.entry(k).or_default();

        // Cycle expansions of order k, merged in frontier order.
        let children = par::map(query.exec, &frontier, |key| stratum.children(key, max));
        for list in children {
            for child in list {
                let o = stratum.order(&child);
                keys[o].insert(child);
            }
        }

        if glue {
            let usable = |c: &CanonicalCode| !query.require_simple || c.to_dense().is_simple();
            pieces[k] = bic.iter().filter(|c| usable(c)).cloned().collect();
            let new: Vec<CanonicalCode> = pieces[k]
                .iter()
                .chain(glued_k.iter().filter(|c| usable(c)))
                .cloned()
                .collect();
            let mut pairs: Vec<(CanonicalCode, CanonicalCode)> = Vec::new();
            for x in &new {
                for j in 2..=k.min(max + 1 - k) {
                    pairs.extend(pieces[j].iter().map(|b| (x.clone(), b.clone())));
                }
            }
            for b in &pieces[k] {
                for (i, older) in all.iter().enumerate().take(k).skip(2) {
                    if i + k - 1 <= max {
                        pairs.extend(older.iter().map(|x| (x.clone(), b.clone())));
                    }
                }
            }
            all[k] = new;
            let results = par::map(query.exec, &pairs, |(a, b)| glue_all(a, b));
            for list in results {
                for c in list {
                    let o = c.order();
                    glued[o].insert(c);
                }
            }
        }
    }

    Ok(EnumerationResult {
        counts_by_order: run.counts,
        graphs: run.graphs,
    })
}

/// Every simple graph on `1..=max_vertices` vertices up to isomorphism, by
/// order. Built by adding one vertex with every possible neighbourhood to
/// each class of the previous order.
pub fn simple_graph_classes(max_vertices: usize) -> Result<Vec<Vec<CanonicalCode>>> {
    if max_vertices > 8 {
        return Err(Error::argument("simple graph classes are generated up to order 8"));
    }
    let mut by_order = vec![Vec::new(); max_vertices + 1];
    if max_vertices == 0 {
        return Ok(by_order);
    }
    by_order[1] = vec![canonical_form(&DenseGraph::new(1)).0];
    for n in 2..=max_vertices {
        let mut seen = HashSet::new();
        for c in &by_order[n - 1] {
            let d = c.to_dense();
            for mask in 0u32..(1 << (n - 1)) {
                let mut e = d.clone();
                let v = e.push_vertex();
                for i in 0..n - 1 {
                    if mask >> i & 1 == 1 {
                        e.set(i, v, 1);
                    }
                }
                seen.insert(canonical_form(&e).0);
            }
        }
        let mut list: Vec<_> = seen.into_iter().collect();
        list.sort();
        by_order[n] = list;
    }
    Ok(by_order)
}

/// Exhaustive census of simple, biconnected, exactly 3-edge-connected graphs
/// of order at most 7, checked pair by pair with independent flows.
pub fn brute_force_census(max_vertices: usize) -> Result<EnumerationResult> {
    brute_force_census_with(max_vertices, Exec::default())
}

/// [`brute_force_census`] with the per-class checks run under `exec`.
pub fn brute_force_census_with(max_vertices: usize, exec: Exec) -> Result<EnumerationResult> {
    if max_vertices > 7 {
        return Err(Error::argument("the brute-force census is limited to order 7"));
    }
    let classes = simple_graph_classes(max_vertices)?;
    let mut result = EnumerationResult::default();
    for (n, codes) in classes.iter().enumerate().skip(2) {
        let keep = par::map(exec, codes, |c| {
            let d = c.to_dense();
            d.is_biconnected() && every_pair_exactly(&d, 3)
        });
        let mut count = 0;
        for (c, _) in codes.iter().zip(keep).filter(|x| x.1) {
            count += 1;
            result.graphs.push(EnumeratedGraph {
                order: n,
                code: c.clone(),
            });
        }
        result.counts_by_order.insert(n, count);
    }
    Ok(result)
}

fn every_pair_exactly(d: &DenseGraph, k: u32) -> bool {
    let n = d.n();
    (0..n).all(|i| d.degree(i) >= k)
        && (0..n).all(|u| (u + 1..n).all(|v| max_flow(d, u, v, k + 1).0 == k))
}

/// The three assertions on a k-edge-connected graph whose equivalence is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinimumAssertions {
    pub minimum: bool,
    pub almost_regular: bool,
    pub exact_and_almost_regular: bool,
}

impl MinimumAssertions {
    pub fn agree(&self) -> bool {
        self.minimum == self.almost_regular && self.almost_regular == self.exact_and_almost_regular
    }
}

pub fn minimum_assertions(g: &Multigraph, k: u32) -> Result<MinimumAssertions> {
    if k == 0 {
        return Err(Error::argument("k must be positive"));
    }
    if g.order() < 2 {
        return Err(Error::domain("k-edge-connectivity needs order at least 2"));
    }
    let (_, d) = g.dense();
    let lambda = crate::connectivity::edge_connectivity(g)?;
    if lambda < k {
        return Err(Error::domain(format!("graph is only {lambda}-edge-connected, not {k}")));
    }
    let almost = g.is_almost_regular(k);
    Ok(MinimumAssertions {
        minimum: is_minimum_dense(&d, k),
        almost_regular: almost,
        exact_and_almost_regular: almost && is_exact_dense(&d, k),
    })
}

pub fn check_minimum_equivalence(g: &Multigraph, k: u32) -> Result<bool> {
    Ok(minimum_assertions(g, k)?.agree())
}

/// Whether expanding by `spec` keeps the degree sum at most `3n' + 1`.
pub fn minimum_filter_admits(g: &Multigraph, spec: &CycleExpansionSpec) -> bool {
    let n = g.order() + spec.cycle_size - 1;
    2 * g.size() as usize + 2 * spec.cycle_size <= 3 * n + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::Vertex;

    fn counts(q: &EnumerationQuery) -> Vec<usize> {
        enumerate(q).unwrap().counts_by_order.values().copied().collect()
    }

    #[test]
    fn smallest_cases() {
        assert_eq!(counts(&EnumerationQuery::new(2)), vec![1]);
        assert_eq!(counts(&EnumerationQuery::new(4).simple().biconnected()), vec![0, 0, 1]);
        assert!(enumerate(&EnumerationQuery::new(1)).is_err());
    }

    #[test]
    fn arrangements_up_to_reversal() {
        let mut seen = Vec::new();
        for_each_arrangement(&[0, 1, 2], |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 3);
        let mut seen = Vec::new();
        for_each_arrangement(&[0, 0, 1], |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 0, 1], vec![0, 1, 0]]);
    }

    #[test]
    fn submultisets() {
        let mut seen = Vec::new();
        for_each_submultiset(&[0, 0, 1], 2, |a, b| seen.push((a.to_vec(), b.to_vec())));
        assert_eq!(seen, vec![(vec![0, 0], vec![1]), (vec![0, 1], vec![0])]);
    }

    #[test]
    fn every_expansion_is_exact() {
        let k4 = canonical_form(&complete(4).dense().1).0.to_dense();
        let mut count = 0;
        for u in 0..4 {
            for_each_expansion(&k4, u, 6, |child, _| {
                assert!(is_exact_dense(child, 3));
                assert!(child.is_biconnected());
                count += 1;
            });
        }
        assert!(count > 0);
    }

    #[test]
    fn simple_classes_match_known_counts() {
        let classes = simple_graph_classes(7).unwrap();
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![0, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn census_matches_enumeration() {
        let census = brute_force_census(7).unwrap();
        let q = EnumerationQuery::new(7).simple().biconnected().stream();
        let found = enumerate(&q).unwrap();
        assert_eq!(census.counts_by_order, found.counts_by_order);
        assert_eq!(census.graphs, found.graphs);
        assert!(brute_force_census(8).is_err());
    }

    #[test]
    fn pruning_keeps_every_simple_graph() {
        let q = EnumerationQuery::new(8).biconnected();
        let all = enumerate(&q.clone().stream()).unwrap();
        let simple: BTreeMap<usize, usize> = all.graphs.iter().fold(BTreeMap::new(), |mut m, g| {
            if g.code.to_dense().is_simple() {
                *m.entry(g.order).or_default() += 1;
            }
            m
        });
        let pruned = enumerate(&q.simple()).unwrap().counts_by_order;
        for (k, c) in pruned {
            assert_eq!(simple.get(&k).copied().unwrap_or(0), c, "order {k}");
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let q = EnumerationQuery::new(7).stream();
        let a = enumerate(&q.clone().exec(Exec::Sequential)).unwrap();
        let b = enumerate(&q.exec(Exec::Parallel)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn glued_graphs_are_exact_and_separable() {
        let r = enumerate(&EnumerationQuery::new(6).stream()).unwrap();
        let bic = enumerate(&EnumerationQuery::new(6).biconnected().stream()).unwrap();
        assert!(r.total() > bic.total());
        for g in &r.graphs {
            let d = g.code.to_dense();
            assert!(is_exact_dense(&d, 3));
            let in_bic = bic.graphs.contains(g);
            assert_eq!(in_bic, d.is_biconnected());
        }
        // Thick paths of every length up to the bound appear.
        let codes: HashSet<_> = r.graphs.iter().map(|g| g.code.clone()).collect();
        for b in 1..=5 {
            assert!(codes.contains(&crate::canon::canonical_code(&thick_path(b))));
        }
    }

    #[test]
    fn budget_reports_completed_orders() {
        let mut q = EnumerationQuery::new(9);
        q.budget.max_classes = Some(5);
        match enumerate(&q) {
            Err(Error::Budget { completed }) => {
                assert!(!completed.is_empty());
                assert!(completed.keys().all(|&k| k < 9));
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn minimum_equivalence_examples() {
        let h = harary(3, 8);
        let a = minimum_assertions(&h, 3).unwrap();
        assert!(a.minimum && a.almost_regular && a.exact_and_almost_regular);

        let mut g = complete(4);
        let x = g.add_vertex();
        g.add_edge(x, Vertex(0), 3).unwrap();
        let a = minimum_assertions(&g, 3).unwrap();
        assert!(!a.minimum && !a.almost_regular && !a.exact_and_almost_regular);
        assert!(check_minimum_equivalence(&g, 3).unwrap());

        assert!(matches!(check_minimum_equivalence(&cycle(5), 3), Err(Error::Domain(_))));
    }

    #[test]
    fn minimum_filter_arithmetic() {
        let d = dumbbell();
        let (a, b) = (Vertex(0), Vertex(1));
        assert!(minimum_filter_admits(&d, &CycleExpansionSpec::new(a, 3, vec![b, b, b])));
        assert!(minimum_filter_admits(&d, &CycleExpansionSpec::new(a, 2, vec![b, b, b])));
        // K4 expanded at a vertex into a 2-cycle already has one degree-4
        // vertex; another 2-cycle adds a second.
        let k4 = complete(4);
        let g = crate::ops::cycle_expand(&k4, &CycleExpansionSpec::new(Vertex(0), 2, vec![Vertex(1), Vertex(2), Vertex(3)])).unwrap();
        let spec = CycleExpansionSpec::new(Vertex(1), 2, vec![Vertex(0), Vertex(2), Vertex(3)]);
        assert!(!minimum_filter_admits(&g, &spec));
    }

    #[test]
    fn minimum_graphs_are_almost_regular() {
        let r = enumerate(&EnumerationQuery::new(8).minimum().stream()).unwrap();
        assert!(r.total() > 0);
        for g in &r.graphs {
            let m = g.code.to_multigraph();
            assert!(m.is_almost_regular(3));
            assert!(check_minimum_equivalence(&m, 3).unwrap());
        }
    }

    #[test]
    fn filter_misses_petersen() {
        let mut q = EnumerationQuery::new(10).simple().biconnected().minimum().stream();
        let pet = crate::canon::canonical_code(&petersen());
        let full = enumerate(&q).unwrap();
        assert!(full.graphs.iter().any(|g| g.code == pet));
        q.prune_minimum = true;
        let pruned = enumerate(&q).unwrap();
        assert!(!pruned.graphs.iter().any(|g| g.code == pet));
    }
}
