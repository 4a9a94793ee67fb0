//! Exact canonical labelling of multigraphs.
//!
//! Individualisation-refinement search: the vertex partition is refined to
//! equitability using multiplicity-weighted neighbour counts, then a vertex of
//! the first smallest non-singleton cell is individualised and the search
//! recurses. Every leaf induces a relabelling; the canonical form is the least
//! `(path invariant, relabelled matrix)` over all leaves. Subtrees are cut when
//! their path invariant already exceeds the best one, and children lying in a
//! common orbit of automorphisms found so far are explored only once.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{DenseGraph, Multigraph, Vertex};

/// Canonical byte string: vertex count followed by the canonically relabelled
/// edge list `(i, j, r)` with `i < j`, every number LEB128-encoded.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(Box<[u8]>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let bytes = hex::decode(s).ok()?;
        let code = CanonicalCode(bytes.into_boxed_slice());
        code.decode()?;
        Some(code)
    }

    /// Order of the encoded graph.
    pub fn order(&self) -> usize {
        read_varint(&self.0, &mut 0).unwrap_or(0) as usize
    }

    /// Rebuilds the canonical representative on vertices `0..n`.
    pub fn to_dense(&self) -> DenseGraph {
        self.decode().expect("canonical codes are well formed")
    }

    pub fn to_multigraph(&self) -> Multigraph {
        self.to_dense().to_multigraph()
    }

    fn decode(&self) -> Option<DenseGraph> {
        let mut pos = 0;
        let n = read_varint(&self.0, &mut pos)? as usize;
        let mut d = DenseGraph::new(n);
        while pos < self.0.len() {
            let i = read_varint(&self.0, &mut pos)? as usize;
            let j = read_varint(&self.0, &mut pos)? as usize;
            let r = read_varint(&self.0, &mut pos)?;
            if i >= n || j >= n || i == j || r == 0 {
                return None;
            }
            d.set(i, j, r);
        }
        Some(d)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

fn write_varint(out: &mut Vec<u8>, mut x: u32) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn read_varint(bytes: &[u8], pos: &mut usize) -> Option<u32> {
    let mut x: u32 = 0;
    let mut shift = 0;
    loop {
        let b = *bytes.get(*pos)?;
        *pos += 1;
        x |= ((b & 0x7f) as u32).checked_shl(shift)?;
        if b & 0x80 == 0 {
            return Some(x);
        }
        shift += 7;
        if shift > 28 {
            return None;
        }
    }
}

pub fn canonical_code(g: &Multigraph) -> CanonicalCode {
    let (_, d) = g.dense();
    canonical_form(&d).0
}

pub fn is_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
    g.order() == h.order() && g.size() == h.size() && canonical_code(g) == canonical_code(h)
}

/// Canonical code of a dense graph together with the canonical order:
/// `order[p]` is the original index placed at canonical position `p`.
pub fn canonical_form(d: &DenseGraph) -> (CanonicalCode, Vec<usize>) {
    let order = canonical_order(d);
    (encode(d, &order), order)
}

/// [`canonical_form`] plus vertex orbits under the automorphisms met during
/// the search: `orbit[i]` is the least index in the orbit of `i`. The orbits
/// may be finer than those of the full automorphism group, never coarser.
pub fn canonical_form_with_orbits(d: &DenseGraph) -> (CanonicalCode, Vec<usize>, Vec<usize>) {
    let (order, automorphisms) = search(d);
    let n = d.n();
    let mut orbit: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for aut in &automorphisms {
        for (i, &j) in aut.iter().enumerate() {
            let (a, b) = (root(&mut orbit, i), root(&mut orbit, j));
            if a != b {
                orbit[a.max(b)] = a.min(b);
            }
        }
    }
    let orbit = (0..n).map(|i| root(&mut orbit, i)).collect();
    (encode(d, &order), order, orbit)
}

/// Canonical labelling of `g`: original vertex -> canonical position.
pub fn canonical_labeling(g: &Multigraph) -> Vec<(Vertex, usize)> {
    let (ids, d) = g.dense();
    let order = canonical_order(&d);
    order.iter().enumerate().map(|(p, &i)| (ids[i], p)).collect()
}

fn encode(d: &DenseGraph, order: &[usize]) -> CanonicalCode {
    let n = d.n();
    let mut out = Vec::with_capacity(1 + 3 * n * 2);
    write_varint(&mut out, n as u32);
    for i in 0..n {
        for j in i + 1..n {
            let r = d.get(order[i], order[j]);
            if r > 0 {
                write_varint(&mut out, i as u32);
                write_varint(&mut out, j as u32);
                write_varint(&mut out, r);
            }
        }
    }
    CanonicalCode(out.into_boxed_slice())
}

type Partition = Vec<Vec<usize>>;

struct Leaf {
    invariant: Vec<Vec<u32>>,
    matrix: Vec<u32>,
    order: Vec<usize>,
}

struct Search<'a> {
    d: &'a DenseGraph,
    first: Option<(Vec<u32>, Vec<usize>)>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

fn canonical_order(d: &DenseGraph) -> Vec<usize> {
    search(d).0
}

fn search(d: &DenseGraph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = d.n();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut search = Search {
        d,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let root = vec![(0..n).collect::<Vec<_>>()];
    search.descend(root, &[], &mut Vec::new());
    let order = search.best.expect("search visits at least one leaf").order;
    (order, search.automorphisms)
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Partition, prefix: &[usize], path: &mut Vec<Vec<u32>>) {
        refine(self.d, &mut cells);
        path.push(quotient(self.d, &cells));

        // Compare the path invariant against the best leaf seen so far.
        if let Some(best) = &self.best {
            let depth = path.len();
            let ord = path[..]
                .iter()
                .zip(best.invariant.iter())
                .map(|(a, b)| a.cmp(b))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or_else(|| {
                    if best.invariant.len() < depth {
                        Ordering::Greater
                    } else {
                        Ordering::Equal
                    }
                });
            if ord == Ordering::Greater {
                path.pop();
                return;
            }
        }

        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);

        let Some(t) = target else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            self.visit_leaf(order, path);
            path.pop();
            return;
        };

        let candidates = cells[t].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[t].iter().copied().filter(|&x| x != v).collect();
            child[t] = vec![v];
            child.insert(t + 1, rest);
            let mut next_prefix = prefix.to_vec();
            next_prefix.push(v);
            self.descend(child, &next_prefix, path);
        }
        path.pop();
    }

    fn visit_leaf(&mut self, order: Vec<usize>, path: &[Vec<u32>]) {
        let matrix = relabelled(self.d, &order);
        match &self.first {
            None => self.first = Some((matrix.clone(), order.clone())),
            Some((fm, fo)) => {
                if *fm == matrix {
                    self.record_automorphism(fo.clone(), &order);
                }
            }
        }
        let replace = match &self.best {
            None => true,
            Some(best) => match path.cmp(&best.invariant[..]) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match matrix.cmp(&best.matrix) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        let bo = best.order.clone();
                        self.record_automorphism(bo, &order);
                        false
                    }
                },
            },
        };
        if replace {
            self.best = Some(Leaf {
                invariant: path.to_vec(),
                matrix,
                order,
            });
        }
    }

    /// Two leaves with equal matrices give the automorphism `a[i] -> b[i]`.
    fn record_automorphism(&mut self, a: Vec<usize>, b: &[usize]) {
        let n = a.len();
        let mut perm = vec![0; n];
        for i in 0..n {
            perm[a[i]] = b[i];
        }
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            self.automorphisms.push(perm);
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the known
    /// automorphisms that fix the individualised prefix pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.d.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let mut any = false;
        for aut in &self.automorphisms {
            if prefix.iter().all(|&x| aut[x] == x) {
                any = true;
                for (i, &j) in aut.iter().enumerate() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }
}

fn relabelled(d: &DenseGraph, order: &[usize]) -> Vec<u32> {
    let n = d.n();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(d.get(order[i], order[j]));
        }
    }
    out
}

/// Cell sizes followed by the multiplicity count from each cell into each cell.
fn quotient(d: &DenseGraph, cells: &Partition) -> Vec<u32> {
    let mut out = Vec::with_capacity(cells.len() * (cells.len() + 1));
    out.extend(cells.iter().map(|c| c.len() as u32));
    for a in cells {
        let rep = a[0];
        for b in cells {
            out.push(b.iter().map(|&w| d.get(rep, w)).sum());
        }
    }
    out
}

/// Refines an ordered partition until equitable. Each cell is split by the
/// vector of weighted neighbour counts into every cell; sub-cells are ordered
/// by that vector, so the result is isomorphism-equivariant.
fn refine(d: &DenseGraph, cells: &mut Partition) {
    loop {
        let mut changed = false;
        let mut next: Partition = Vec::with_capacity(d.n());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = cells
                        .iter()
                        .map(|c| c.iter().map(|&w| d.get(v, w)).sum())
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
            if keyed[0].0 != keyed[keyed.len() - 1].0 {
                changed = true;
            }
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}
