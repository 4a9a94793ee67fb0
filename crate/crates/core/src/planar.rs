//! Rotation systems, order-preserving cycle expansion and embedded synthesis.
//!
//! A rotation system lists, for every vertex, the darts leaving it in
//! clockwise order. Each copy of a parallel edge has its own pair of darts,
//! told apart by a copy index. Faces are traced by `next(d) = succ(rev(d))`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::blocks::blocks;
use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{Cycle, DenseGraph, Multigraph, Vertex};
use crate::ops::{block_respecting_cycle_expand, cycle_contract, CycleExpansionSpec};
use crate::script::{ScriptOp, SynthesisScript};

/// One end of one copy of an edge, seen from `tail`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dart {
    pub tail: Vertex,
    pub head: Vertex,
    pub copy: u32,
}

impl Dart {
    pub fn new(tail: Vertex, head: Vertex, copy: u32) -> Self {
        Dart { tail, head, copy }
    }

    pub fn reverse(self) -> Dart {
        Dart::new(self.head, self.tail, self.copy)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{}#{}", self.tail.0, self.head.0, self.copy)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RotationSystem {
    rot: BTreeMap<Vertex, Vec<Dart>>,
}

impl RotationSystem {
    pub fn new(rot: BTreeMap<Vertex, Vec<Dart>>) -> Self {
        RotationSystem { rot }
    }

    /// The embedding of the dumbbell on `a`, `b` with three faces.
    pub fn dumbbell(a: Vertex, b: Vertex) -> Self {
        let at_a = (0..3).map(|c| Dart::new(a, b, c)).collect();
        let at_b = [0, 2, 1].iter().map(|&c| Dart::new(b, a, c)).collect();
        RotationSystem::new(BTreeMap::from([(a, at_a), (b, at_b)]))
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        self.rot.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rot.keys().copied()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.rot.values().flatten().copied()
    }

    /// Checks that the darts are exactly those of `g`, each listed once.
    pub fn check(&self, g: &Multigraph) -> Result<()> {
        if !self.rot.keys().copied().eq(g.vertices()) {
            return Err(Error::format("rotation vertices differ from the graph's"));
        }
        let mut seen = HashSet::new();
        for (&v, darts) in &self.rot {
            for d in darts {
                if d.tail != v {
                    return Err(Error::format(format!("dart {d} listed at {v}")));
                }
                if d.copy >= g.multiplicity(d.tail, d.head) {
                    return Err(Error::format(format!("dart {d} names a missing edge copy")));
                }
                if !seen.insert(*d) {
                    return Err(Error::format(format!("dart {d} listed twice")));
                }
            }
            if darts.len() as u32 != g.degree(v) {
                return Err(Error::format(format!("rotation at {v} misses darts")));
            }
        }
        Ok(())
    }

    fn successor(&self, d: Dart) -> Dart {
        let r = &self.rot[&d.tail];
        let i = r.iter().position(|&x| x == d).expect("dart in its tail's rotation");
        r[(i + 1) % r.len()]
    }

    /// The rotation restricted to darts between vertices of `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> RotationSystem {
        let rot = keep
            .iter()
            .map(|&v| {
                let ds = self
                    .rotation(v)
                    .iter()
                    .filter(|d| keep.contains(&d.head))
                    .copied()
                    .collect();
                (v, ds)
            })
            .collect();
        RotationSystem { rot }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rot = BTreeMap::new();
        for (i, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (v, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(i, "expected \"v: darts\""))?;
            let v = Vertex(v.trim().parse().map_err(|_| Error::parse(i, "bad vertex"))?);
            let darts = rest
                .split_whitespace()
                .map(|t| parse_dart(t).ok_or_else(|| Error::parse(i, format!("bad dart {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if rot.insert(v, darts).is_some() {
                return Err(Error::parse(i, format!("vertex {v} listed twice")));
            }
        }
        Ok(RotationSystem { rot })
    }
}

fn parse_dart(t: &str) -> Option<Dart> {
    let (tail, rest) = t.split_once('~')?;
    let (head, copy) = rest.split_once('#')?;
    Some(Dart::new(
        Vertex(tail.parse().ok()?),
        Vertex(head.parse().ok()?),
        copy.parse().ok()?,
    ))
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, ds) in &self.rot {
            write!(f, "{}:", v.0)?;
            for d in ds {
                write!(f, " {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Faces as dart cycles, each started at its least unvisited dart.
pub fn faces(g: &Multigraph, rot: &RotationSystem) -> Result<Vec<Vec<Dart>>> {
    rot.check(g)?;
    Ok(faces_unchecked(rot))
}

fn faces_unchecked(rot: &RotationSystem) -> Vec<Vec<Dart>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for start in rot.darts() {
        if seen.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while seen.insert(d) {
            face.push(d);
            d = rot.successor(d.reverse());
        }
        out.push(face);
    }
    out
}

/// `V - E + F` of the embedding, edges counted with multiplicity.
pub fn euler_characteristic(g: &Multigraph, rot: &RotationSystem) -> Result<i64> {
    let f = faces(g, rot)?.len() as i64;
    Ok(g.order() as i64 - g.size() as i64 + f)
}

/// Whether every block satisfies `V - E + F = 2` under the induced rotation.
/// A block that is a single edge bundle counts like any other.
pub fn euler_per_block(g: &Multigraph, rot: &RotationSystem) -> Result<bool> {
    rot.check(g)?;
    for b in blocks(g)?.blocks {
        let h = g.induced(&b);
        let r = rot.restrict(&b);
        let f = faces_unchecked(&r).len() as i64;
        if h.order() as i64 - h.size() as i64 + f != 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A connected graph with an embedding of Euler characteristic 2 everywhere.
pub fn is_planar_embedding(g: &Multigraph, rot: &RotationSystem) -> Result<bool> {
    Ok(g.is_connected() && euler_characteristic(g, rot)? == 2 && euler_per_block(g, rot)?)
}

/// Identity of an edge copy that survives relabelling: old edges by their
/// endpoints and copy, new ones by a serial number.
type EdgeKey = (u8, u32, u32, u32);

fn key_of(d: Dart) -> EdgeKey {
    let (a, b) = if d.tail < d.head { (d.tail, d.head) } else { (d.head, d.tail) };
    (0, a.0, b.0, d.copy)
}

/// Rotations keyed by edge identity, turned into copy indices at the end by
/// ranking the keys of each vertex pair.
fn finish(work: BTreeMap<Vertex, Vec<(Vertex, EdgeKey)>>) -> RotationSystem {
    let mut by_pair: BTreeMap<(Vertex, Vertex), BTreeSet<EdgeKey>> = BTreeMap::new();
    for (&v, ds) in &work {
        for &(h, k) in ds {
            by_pair.entry((v.min(h), v.max(h))).or_default().insert(k);
        }
    }
    let rank: HashMap<((Vertex, Vertex), EdgeKey), u32> = by_pair
        .into_iter()
        .flat_map(|(p, ks)| ks.into_iter().enumerate().map(move |(i, k)| ((p, k), i as u32)))
        .collect();
    let rot = work
        .into_iter()
        .map(|(v, ds)| {
            let ds = ds
                .into_iter()
                .map(|(h, k)| Dart::new(v, h, rank[&((v.min(h), v.max(h)), k)]))
                .collect();
            (v, ds)
        })
        .collect();
    RotationSystem { rot }
}

/// Order-preserving cycle expansion of a biconnected embedded graph.
pub fn order_preserving_expand(
    g: &Multigraph,
    rot: &RotationSystem,
    spec: &CycleExpansionSpec,
) -> Result<(Multigraph, RotationSystem)> {
    embedded_expand(g, rot, spec, &[])
}

/// Expansion that keeps the rotation: block darts go round the new cycle in
/// rotation order, other blocks' darts move as contiguous runs to the cycle
/// vertex named by `attach` (default the last one).
fn embedded_expand(
    g: &Multigraph,
    rot: &RotationSystem,
    spec: &CycleExpansionSpec,
    attach: &[(Vertex, usize)],
) -> Result<(Multigraph, RotationSystem)> {
    rot.check(g)?;
    let u = spec.target;
    let e = block_respecting_cycle_expand(g, spec, attach)?;
    let dec = blocks(g)?;
    let home = dec
        .block_of_edge(u, spec.assignment[0])
        .ok_or_else(|| Error::argument("assignment names a non-neighbour"))?;
    let at_u = rot.rotation(u);
    let in_block: Vec<Dart> = at_u
        .iter()
        .filter(|d| dec.block_of_edge(u, d.head) == Some(home))
        .copied()
        .collect();
    let deg = in_block.len();
    let offset = (0..deg)
        .find(|&s| (0..deg).all(|j| in_block[(s + j) % deg].head == spec.assignment[j]))
        .ok_or_else(|| {
            Error::domain(format!("assignment at {u} does not follow the rotation"))
        })?;

    let size = spec.cycle_size;
    let cyc = &e.cycle;
    // Where each dart at u goes.
    let mut dest: HashMap<Dart, Vertex> = HashMap::new();
    for j in 0..deg {
        dest.insert(in_block[(offset + j) % deg], cyc[j.min(size - 1)]);
    }
    let mut moved_block: BTreeMap<usize, usize> = BTreeMap::new();
    for &(v, i) in attach {
        if let Some(b) = dec.block_of_edge(u, v) {
            moved_block.insert(b, i);
        }
    }
    for &d in at_u {
        if !dest.contains_key(&d) {
            let b = dec.block_of_edge(u, d.head).expect("every dart lies in a block");
            let i = moved_block.get(&b).copied().unwrap_or(size);
            dest.insert(d, cyc[i - 1]);
        }
    }

    let mut work: BTreeMap<Vertex, Vec<(Vertex, EdgeKey)>> = BTreeMap::new();
    for (&v, ds) in &rot.rot {
        if v == u {
            continue;
        }
        let list = ds
            .iter()
            .map(|&d| {
                let h = if d.head == u { dest[&d.reverse()] } else { d.head };
                (h, key_of(d))
            })
            .collect();
        work.insert(v, list);
    }
    // Cycle edge i joins cyc[i] and cyc[i + 1].
    let cycle_key = |i: usize| -> EdgeKey { (1, (i % size) as u32, 0, 0) };
    let start = at_u
        .iter()
        .position(|&d| d == in_block[(offset + size - 1) % deg])
        .expect("heavy dart at u");
    for (i, &x) in cyc.iter().enumerate() {
        let mut list: Vec<(Vertex, EdgeKey)> = (0..at_u.len())
            .map(|t| at_u[(start + t) % at_u.len()])
            .filter(|d| dest[d] == x)
            .map(|d| (d.head, key_of(d)))
            .collect();
        if i + 1 < size {
            // Own block dart first, then runs of attached blocks in rotation order.
            let own = in_block[(offset + i) % deg];
            list.retain(|&(_, k)| k != key_of(own));
            list.insert(0, (own.head, key_of(own)));
        }
        list.push((cyc[(i + 1) % size], cycle_key(i)));
        list.push((cyc[(i + size - 1) % size], cycle_key(i + size - 1)));
        work.insert(x, list);
    }
    let out = finish(work);
    out.check(&e.graph)
        .map_err(|err| Error::invariant(format!("expanded rotation inconsistent: {err}")))?;
    if !euler_per_block(&e.graph, &out)? {
        return Err(Error::invariant("order-preserving expansion broke planarity"));
    }
    Ok((e.graph, out))
}

/// Contracts a chordless cycle that bounds a face, merging the outward darts
/// of the cycle vertices into the rotation of the fresh vertex.
pub fn order_preserving_contract(
    g: &Multigraph,
    rot: &RotationSystem,
    c: &Cycle,
) -> Result<(Multigraph, RotationSystem)> {
    rot.check(g)?;
    let h = cycle_contract(g, c)?;
    let fresh = Vertex(g.next_id());
    let on: BTreeSet<Vertex> = c.vertex_set();
    // Outward darts of each cycle vertex, starting after its run of cycle darts.
    let mut outward: Vec<Vec<Dart>> = Vec::new();
    for &x in c.vertices() {
        let r = rot.rotation(x);
        let inner: Vec<bool> = r.iter().map(|d| on.contains(&d.head)).collect();
        let len = r.len();
        let starts: Vec<usize> = (0..len).filter(|&i| inner[i] && !inner[(i + 1) % len]).collect();
        if starts.len() != 1 {
            return Err(Error::domain(format!("cycle {c} does not bound a face at {x}")));
        }
        let s = starts[0] + 1;
        outward.push((0..len).map(|t| r[(s + t) % len]).filter(|d| !on.contains(&d.head)).collect());
    }

    let build = |order: &[usize]| -> RotationSystem {
        let mut work: BTreeMap<Vertex, Vec<(Vertex, EdgeKey)>> = BTreeMap::new();
        for (&v, ds) in &rot.rot {
            if on.contains(&v) {
                continue;
            }
            let list = ds
                .iter()
                .map(|&d| (if on.contains(&d.head) { fresh } else { d.head }, key_of(d)))
                .collect();
            work.insert(v, list);
        }
        let merged = order
            .iter()
            .flat_map(|&i| outward[i].iter().map(|&d| (d.head, key_of(d))))
            .collect();
        work.insert(fresh, merged);
        finish(work)
    };
    // The expansion leaves each cycle vertex with its outward darts followed by
    // the dart to its successor, which fixes the direction of the merge.
    let len = c.len();
    let x0 = c.vertices()[0];
    let r0 = rot.rotation(x0);
    let after = r0
        .iter()
        .position(|d| d.head == c.vertices()[1])
        .map(|_| {
            let k = r0.len();
            let last_out = (0..k)
                .find(|&i| !on.contains(&r0[i].head) && on.contains(&r0[(i + 1) % k].head))
                .expect("outward run ends");
            r0[(last_out + 1) % k].head
        })
        .expect("cycle successor is adjacent");
    let order: Vec<usize> = if len == 2 || after == c.vertices()[1] {
        (0..len).collect()
    } else {
        (0..len).rev().collect()
    };
    let r = build(&order);
    r.check(&h)
        .map_err(|err| Error::invariant(format!("contracted rotation inconsistent: {err}")))?;
    if !euler_per_block(&h, &r)? {
        return Err(Error::domain(format!("contracting {c} leaves no planar rotation")));
    }
    Ok((h, r))
}

/// Replays a script while maintaining a planar embedding.
pub fn planar_synthesize(script: &SynthesisScript) -> Result<(Multigraph, RotationSystem)> {
    let mut slots: BTreeMap<usize, (Multigraph, RotationSystem)> = BTreeMap::new();
    let mut last = None;
    for (i, op) in script.ops.iter().enumerate() {
        let at = |e: Error| match e {
            Error::Domain(m) => Error::domain(format!("record {}: {m}", i + 1)),
            Error::Argument(m) => Error::format(format!("record {}: {m}", i + 1)),
            other => other,
        };
        let take = |slots: &BTreeMap<usize, (Multigraph, RotationSystem)>, s: usize| {
            slots
                .get(&s)
                .cloned()
                .ok_or_else(|| Error::format(format!("record {}: slot {s} is empty", i + 1)))
        };
        match op {
            ScriptOp::Dumbbell { id } => {
                let g = crate::graph::families::dumbbell();
                slots.insert(*id, (g, RotationSystem::dumbbell(Vertex(0), Vertex(1))));
                last = Some(*id);
            }
            ScriptOp::Glue {
                left,
                u1,
                right,
                u2,
                result,
            } => {
                let (g1, r1) = take(&slots, *left)?;
                let (g2, r2) = take(&slots, *right)?;
                let glued = splice(&g1, &r1, *u1, &g2, &r2, *u2).map_err(at)?;
                slots.remove(left);
                slots.remove(right);
                slots.insert(*result, glued);
                last = Some(*result);
            }
            ScriptOp::Expand {
                graph,
                spec,
                attach,
            } => {
                let (g, r) = take(&slots, *graph)?;
                let out = embedded_expand(&g, &r, spec, attach).map_err(at)?;
                slots.insert(*graph, out);
                last = Some(*graph);
            }
        }
    }
    let last = last.ok_or_else(|| Error::format("empty script"))?;
    let (g, r) = slots.remove(&last).expect("last slot is filled");
    if !euler_per_block(&g, &r)? {
        return Err(Error::invariant("synthesised embedding fails the Euler check"));
    }
    Ok((g, r))
}

/// Block gluing of embeddings: `u2`'s darts are inserted before `u1`'s first.
fn splice(
    g1: &Multigraph,
    r1: &RotationSystem,
    u1: Vertex,
    g2: &Multigraph,
    r2: &RotationSystem,
    u2: Vertex,
) -> Result<(Multigraph, RotationSystem)> {
    let g = crate::ops::block_glue(g1, u1, g2, u2)?;
    let shift = g1.next_id();
    let map = |v: Vertex| if v == u2 { u1 } else { Vertex(v.0 + shift) };
    let mut rot = r1.rot.clone();
    for (&v, ds) in &r2.rot {
        let moved: Vec<Dart> = ds.iter().map(|d| Dart::new(map(d.tail), map(d.head), d.copy)).collect();
        if v == u2 {
            let at = rot.get_mut(&u1).expect("glue vertex has a rotation");
            at.splice(0..0, moved);
        } else {
            rot.insert(map(v), moved);
        }
    }
    let out = RotationSystem { rot };
    out.check(&g)?;
    Ok((g, out))
}

/// Rotation systems as dart arrays: darts are numbered, `tail[d]` is the
/// vertex a dart leaves and `twin[d]` its reverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Map {
    rot: Vec<Vec<usize>>,
    tail: Vec<usize>,
    twin: Vec<usize>,
}

/// An embedding up to orientation-preserving or reversing homeomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmbeddingCode(Box<[u32]>);

/// Canonical code of a connected embedding; equal codes mean the embeddings
/// agree after renaming vertices and edge copies, possibly mirrored.
pub fn embedding_code(rot: &RotationSystem) -> Result<EmbeddingCode> {
    if rot.darts().next().is_none() {
        return Err(Error::domain("an embedding code needs at least one edge"));
    }
    let darts: HashSet<Dart> = rot.darts().collect();
    if let Some(d) = darts.iter().find(|d| !darts.contains(&d.reverse())) {
        return Err(Error::format(format!("dart {d} has no reverse")));
    }
    Ok(Map::from_rotation(rot).code())
}

impl Map {
    fn dumbbell() -> Map {
        // Darts 0, 1, 2 at vertex 0; 3, 4, 5 their twins at vertex 1.
        Map {
            rot: vec![vec![0, 1, 2], vec![3, 5, 4]],
            tail: vec![0, 0, 0, 1, 1, 1],
            twin: vec![3, 4, 5, 0, 1, 2],
        }
    }

    pub(crate) fn from_rotation(rot: &RotationSystem) -> Map {
        let ids: BTreeMap<Vertex, usize> = rot.vertices().enumerate().map(|(i, v)| (v, i)).collect();
        let darts: Vec<Dart> = rot.darts().collect();
        let index: HashMap<Dart, usize> = darts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        Map {
            rot: rot.rot.values().map(|ds| ds.iter().map(|d| index[d]).collect()).collect(),
            tail: darts.iter().map(|d| ids[&d.tail]).collect(),
            twin: darts.iter().map(|d| index[&d.reverse()]).collect(),
        }
    }

    fn head(&self, d: usize) -> usize {
        self.tail[self.twin[d]]
    }

    fn new_edge(&mut self, a: usize, b: usize) -> (usize, usize) {
        let (x, y) = (self.tail.len(), self.tail.len() + 1);
        self.tail.extend([a, b]);
        self.twin.extend([y, x]);
        (x, y)
    }

    fn dense(&self) -> DenseGraph {
        let mut d = DenseGraph::new(self.rot.len());
        for (x, &t) in self.tail.iter().enumerate() {
            let h = self.head(x);
            if t < h {
                d.add(t, h, 1);
            }
        }
        d
    }

    /// Expands `u` into a cycle of `size` vertices, the first cycle vertex
    /// taking the dart at rotation position `offset`.
    fn expand(&self, u: usize, size: usize, offset: usize) -> Map {
        let mut m = self.clone();
        let at_u = &self.rot[u];
        let deg = at_u.len();
        let n = self.rot.len();
        let darts: Vec<usize> = (0..deg).map(|j| at_u[(offset + j) % deg]).collect();
        let cyc: Vec<usize> = (0..size - 1).map(|i| n + i).chain([u]).collect();
        m.rot.resize(n + size - 1, Vec::new());
        // Cycle edge i runs from cyc[i] to cyc[i + 1].
        let edges: Vec<(usize, usize)> = (0..size).map(|i| m.new_edge(cyc[i], cyc[(i + 1) % size])).collect();
        for i in 0..size {
            let to_next = edges[i].0;
            let to_prev = edges[(i + size - 1) % size].1;
            let mut list: Vec<usize> = if i + 1 < size {
                vec![darts[i]]
            } else {
                darts[size - 1..].to_vec()
            };
            for &d in &list {
                m.tail[d] = cyc[i];
            }
            list.extend([to_next, to_prev]);
            m.rot[cyc[i]] = list;
        }
        m
    }

    /// Least code over all start darts and both orientations. The code lists
    /// vertices in breadth-first order, each dart as the label of its head
    /// and the position of its twin counted from the head's entry dart.
    fn code(&self) -> EmbeddingCode {
        let n = self.rot.len();
        let mut pos = vec![0; self.tail.len()];
        for ds in &self.rot {
            for (i, &d) in ds.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut best: Option<Vec<u32>> = None;
        for start in 0..self.tail.len() {
            for reverse in [false, true] {
                let code = self.code_from(start, reverse, &pos, n, best.as_deref());
                if let Some(c) = code {
                    best = Some(c);
                }
            }
        }
        EmbeddingCode(best.expect("a map has darts").into_boxed_slice())
    }

    /// The code from one start, or `None` once it exceeds `bound`.
    fn code_from(&self, start: usize, reverse: bool, pos: &[usize], n: usize, bound: Option<&[u32]>) -> Option<Vec<u32>> {
        let mut label = vec![u32::MAX; n];
        let mut entry = vec![0; n];
        let mut queue = std::collections::VecDeque::new();
        label[self.tail[start]] = 0;
        entry[self.tail[start]] = start;
        queue.push_back(self.tail[start]);
        let mut next = 1;
        let mut out = vec![n as u32];
        let mut tight = bound.is_some();
        let push = |out: &mut Vec<u32>, x: u32, tight: &mut bool| -> bool {
            out.push(x);
            if *tight {
                let b = bound.expect("tight implies a bound")[out.len() - 1];
                if x > b {
                    return false;
                }
                if x < b {
                    *tight = false;
                }
            }
            true
        };
        while let Some(v) = queue.pop_front() {
            let r = &self.rot[v];
            let deg = r.len();
            if !push(&mut out, deg as u32, &mut tight) {
                return None;
            }
            let p0 = pos[entry[v]];
            for t in 0..deg {
                let p = if reverse { (p0 + deg - t) % deg } else { (p0 + t) % deg };
                let d = r[p];
                let h = self.head(d);
                if label[h] == u32::MAX {
                    label[h] = next;
                    next += 1;
                    entry[h] = self.twin[d];
                    queue.push_back(h);
                }
                let hd = self.rot[h].len();
                let q = pos[self.twin[d]];
                let e = pos[entry[h]];
                let rel = if reverse { (e + hd - q) % hd } else { (q + hd - e) % hd };
                if !push(&mut out, label[h], &mut tight) || !push(&mut out, rel as u32, &mut tight) {
                    return None;
                }
            }
        }
        if tight {
            // Equal to the bound: nothing new.
            return None;
        }
        Some(out)
    }

    fn from_code(code: &EmbeddingCode) -> Map {
        let c = &code.0;
        let n = c[0] as usize;
        let mut rot = Vec::with_capacity(n);
        let mut entries = Vec::with_capacity(n);
        let mut i = 1;
        let mut count = 0;
        for _ in 0..n {
            let deg = c[i] as usize;
            i += 1;
            rot.push((count..count + deg).collect::<Vec<_>>());
            entries.push(c[i..i + 2 * deg].to_vec());
            i += 2 * deg;
            count += deg;
        }
        let mut tail = vec![0; count];
        let mut twin = vec![0; count];
        for v in 0..n {
            for (p, &d) in rot[v].iter().enumerate() {
                tail[d] = v;
                let h = entries[v][2 * p] as usize;
                let q = entries[v][2 * p + 1] as usize;
                twin[d] = rot[h][q];
            }
        }
        Map { rot, tail, twin }
    }
}

/// Order-preserving expansions of embedded biconnected graphs, keyed by
/// embedding. A collapsible cycle bounds a face in every embedding, so each
/// embedding of a planar graph is reached from an embedding of a contraction.
pub(crate) struct EmbeddedExpansions {
    pub simple_target: bool,
    pub prune_minimum: bool,
}

impl crate::enumerate::Stratum for EmbeddedExpansions {
    type Key = EmbeddingCode;

    fn seed(&self) -> EmbeddingCode {
        Map::dumbbell().code()
    }

    fn order(&self, key: &EmbeddingCode) -> usize {
        key.0[0] as usize
    }

    fn graph(&self, key: &EmbeddingCode) -> CanonicalCode {
        canonical_form(&Map::from_code(key).dense()).0
    }

    fn children(&self, key: &EmbeddingCode, max_vertices: usize) -> Vec<EmbeddingCode> {
        let m = Map::from_code(key);
        let n = m.rot.len();
        let edges = m.tail.len() / 2;
        let mut out = HashSet::new();
        for u in 0..n {
            let deg = m.rot[u].len();
            for size in 2..=deg {
                if n + size - 1 > max_vertices {
                    break;
                }
                let n2 = n + size - 1;
                if self.prune_minimum && 2 * (edges + size) > 3 * n2 + 1 {
                    continue;
                }
                for offset in 0..deg {
                    let child = m.expand(u, size, offset);
                    if self.simple_target && !crate::enumerate::can_become_simple(&child.dense(), max_vertices) {
                        continue;
                    }
                    out.insert(child.code());
                }
            }
        }
        let mut out: Vec<_> = out.into_iter().collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::families::*;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    fn embedded_k4() -> (Multigraph, RotationSystem) {
        let d = dumbbell();
        let r = RotationSystem::dumbbell(v(0), v(1));
        order_preserving_expand(&d, &r, &CycleExpansionSpec::new(v(0), 3, vec![v(1), v(1), v(1)])).unwrap()
    }

    #[test]
    fn dumbbell_faces() {
        let d = dumbbell();
        let r = RotationSystem::dumbbell(v(0), v(1));
        assert_eq!(faces(&d, &r).unwrap().len(), 3);
        assert_eq!(euler_characteristic(&d, &r).unwrap(), 2);
    }

    #[test]
    fn k4_embedding() {
        let (g, r) = embedded_k4();
        assert!(is_isomorphic(&g, &complete(4)));
        assert_eq!(faces(&g, &r).unwrap().len(), 4);

        // Swapping two darts at one vertex of K4 gives a torus embedding.
        let mut bad = r.clone();
        let at = bad.rot.get_mut(&v(0)).unwrap();
        at.swap(0, 1);
        assert_ne!(faces(&g, &bad).unwrap().len(), 4);
        assert!(!is_planar_embedding(&g, &bad).unwrap());
    }

    #[test]
    fn k4_to_prism() {
        let (g, r) = embedded_k4();
        let at0: Vec<Vertex> = r.rotation(v(0)).iter().map(|d| d.head).collect();
        let (h, s) = order_preserving_expand(&g, &r, &CycleExpansionSpec::new(v(0), 3, at0.clone())).unwrap();
        assert_eq!(h.order(), 6);
        assert!(is_planar_embedding(&h, &s).unwrap());
        assert!(crate::connectivity::is_exactly_k(&h, 3).unwrap().exact);

        let swapped = vec![at0[1], at0[0], at0[2]];
        let err = order_preserving_expand(&g, &r, &CycleExpansionSpec::new(v(0), 3, swapped));
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn double_edge_expansion() {
        let (g, r) = embedded_k4();
        let at: Vec<Vertex> = r.rotation(v(1)).iter().map(|d| d.head).collect();
        let (h, s) = order_preserving_expand(&g, &r, &CycleExpansionSpec::new(v(1), 2, at)).unwrap();
        assert!(is_planar_embedding(&h, &s).unwrap());
        assert_eq!(h.order(), 5);
    }

    #[test]
    fn contraction_restores_embedding() {
        let (g, r) = embedded_k4();
        for target in g.vertices().collect::<Vec<_>>() {
            let at: Vec<Vertex> = r.rotation(target).iter().map(|d| d.head).collect();
            for size in 2..=3 {
                let spec = CycleExpansionSpec::new(target, size, at.clone());
                let (h, s) = order_preserving_expand(&g, &r, &spec).unwrap();
                let fresh: Vec<Vertex> = (g.next_id()..g.next_id() + size as u32 - 1).map(Vertex).chain([target]).collect();
                let (back, br) = order_preserving_contract(&h, &s, &Cycle::new(fresh).unwrap()).unwrap();
                assert!(is_isomorphic(&back, &g));
                assert_eq!(Map::from_rotation(&br).code(), Map::from_rotation(&r).code());
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        let (_, r) = embedded_k4();
        let text = r.to_string();
        assert_eq!(RotationSystem::parse(&text).unwrap(), r);
        assert!(text.contains("~"));
        assert!(RotationSystem::parse("0 1~0#0").is_err());
    }

    #[test]
    fn synthesis_with_glue() {
        let text = "DUMBBELL 0\nEXPAND 0 0 3 1,1,1\nDUMBBELL 1\nGLUE 0 0 1 0 0\n";
        let s = SynthesisScript::parse(text).unwrap();
        let (g, r) = planar_synthesize(&s).unwrap();
        assert_eq!(g.order(), 5);
        assert!(is_planar_embedding(&g, &r).unwrap());
    }

    #[test]
    fn map_expansion_matches_rotation_expansion() {
        let (g, r) = embedded_k4();
        let m = Map::from_rotation(&r);
        let at: Vec<Vertex> = r.rotation(v(2)).iter().map(|d| d.head).collect();
        for offset in 0..3 {
            let spec = CycleExpansionSpec::new(v(2), 3, (0..3).map(|j| at[(offset + j) % 3]).collect());
            let (_, s) = order_preserving_expand(&g, &r, &spec).unwrap();
            let idx = g.vertices().position(|x| x == v(2)).unwrap();
            assert_eq!(m.expand(idx, 3, offset).code(), Map::from_rotation(&s).code());
        }
    }

    #[test]
    fn embedding_codes_are_invariant() {
        let (g, r) = embedded_k4();
        let map: BTreeMap<Vertex, Vertex> = g.vertices().map(|x| (x, Vertex(10 - x.0))).collect();
        let rot = r
            .rot
            .iter()
            .map(|(k, ds)| (map[k], ds.iter().map(|d| Dart::new(map[&d.tail], map[&d.head], d.copy)).collect()))
            .collect();
        let relabelled = RotationSystem::new(rot);
        assert_eq!(Map::from_rotation(&relabelled).code(), Map::from_rotation(&r).code());
        let m = Map::from_rotation(&r);
        assert_eq!(Map::from_code(&m.code()).code(), m.code());
    }
}
