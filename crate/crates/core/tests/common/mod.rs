#![allow(dead_code)]

use std::collections::BTreeMap;

use exact3::blocks::blocks;
use exact3::graph::families::dumbbell;
use exact3::planar::{order_preserving_expand, planar_synthesize, Dart, RotationSystem};
use exact3::*;
use rand::Rng;

/// Every exactly 3-edge-connected class of order at most `max`.
pub fn corpus(max: usize) -> Vec<Multigraph> {
    enumerate(&EnumerationQuery::new(max).stream())
        .unwrap()
        .graphs
        .into_iter()
        .map(|g| g.code.to_multigraph())
        .collect()
}

/// Whether some rotation system of `g` has Euler characteristic 2. Tries
/// every cyclic order at every vertex; `None` when there are more than `cap`.
pub fn planar_by_rotations(g: &Multigraph, cap: u64) -> Option<bool> {
    let vs: Vec<Vertex> = g.vertices().collect();
    let darts: Vec<Vec<Dart>> = vs
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .flat_map(|(w, r)| (0..r).map(move |c| Dart::new(v, w, c)))
                .collect()
        })
        .collect();
    let total: u64 = darts.iter().map(|d| (1..d.len() as u64).product::<u64>()).product();
    if total > cap {
        return None;
    }
    let perms: Vec<Vec<Vec<Dart>>> = darts.iter().map(|d| cyclic_orders(d)).collect();
    let mut idx = vec![0; vs.len()];
    loop {
        let rot: BTreeMap<Vertex, Vec<Dart>> =
            vs.iter().enumerate().map(|(i, &v)| (v, perms[i][idx[i]].clone())).collect();
        let rot = RotationSystem::new(rot);
        if exact3::planar::euler_characteristic(g, &rot).unwrap() == 2 {
            return Some(true);
        }
        let mut i = 0;
        loop {
            if i == vs.len() {
                return Some(false);
            }
            idx[i] += 1;
            if idx[i] < perms[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// All cyclic orders of `items`, each starting with the first item.
fn cyclic_orders(items: &[Dart]) -> Vec<Vec<Dart>> {
    if items.len() <= 2 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest: Vec<Dart> = items[1..].to_vec();
    permute(&mut rest, 0, &mut |p| {
        let mut v = vec![items[0]];
        v.extend_from_slice(p);
        out.push(v);
    });
    out
}

fn permute(xs: &mut Vec<Dart>, k: usize, f: &mut impl FnMut(&[Dart])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// A random order-preserving script together with the embedding just before
/// its final expansion and that expansion's spec.
pub struct PlanarCase {
    pub script: SynthesisScript,
    pub before: (Multigraph, RotationSystem),
    pub last: CycleExpansionSpec,
}

fn random_expansion(
    rng: &mut impl Rng,
    g: &Multigraph,
    r: &RotationSystem,
    room: usize,
    avoid_cuts: bool,
) -> Option<CycleExpansionSpec> {
    let dec = blocks(g).unwrap();
    let candidates: Vec<Vertex> = g
        .vertices()
        .filter(|v| !avoid_cuts || !dec.articulation_points.contains(v))
        .collect();
    let u = candidates[rng.gen_range(0..candidates.len())];
    let homes = dec.blocks_of(u);
    let home = homes[rng.gen_range(0..homes.len())];
    let block = &dec.blocks[home];
    let ring: Vec<Vertex> = r
        .rotation(u)
        .iter()
        .map(|d| d.head)
        .filter(|w| block.contains(w))
        .collect();
    let d = ring.len();
    let max_size = d.min(room + 1);
    if max_size < 2 {
        return None;
    }
    let size = rng.gen_range(2..=max_size);
    let offset = rng.gen_range(0..d);
    let assignment = (0..d).map(|j| ring[(offset + j) % d]).collect();
    Some(CycleExpansionSpec::new(u, size, assignment))
}

pub fn random_planar_case(rng: &mut impl Rng, max_order: usize) -> PlanarCase {
    let pieces = rng.gen_range(1..=3usize);
    let mut ops = Vec::new();
    let mut states = Vec::new();
    // Orders add up as sum(o_i - 1) + 1; keep one vertex for the final expansion.
    let mut budget = max_order - 2;
    for slot in 0..pieces {
        ops.push(ScriptOp::Dumbbell { id: slot });
        let mut g = dumbbell();
        let mut r = RotationSystem::dumbbell(Vertex(0), Vertex(1));
        let share = budget.saturating_sub(pieces - slot - 1).max(1);
        let target = 1 + rng.gen_range(1..=share);
        while g.order() < target {
            let Some(spec) = random_expansion(rng, &g, &r, target - g.order(), false) else { break };
            let (g2, r2) = order_preserving_expand(&g, &r, &spec).unwrap();
            ops.push(ScriptOp::Expand { graph: slot, spec, attach: Vec::new() });
            g = g2;
            r = r2;
        }
        budget = budget.saturating_sub(g.order() - 1);
        states.push((g, r));
    }
    for slot in 1..pieces {
        let u1 = pick(rng, &states[0].0);
        let u2 = pick(rng, &states[slot].0);
        ops.push(ScriptOp::Glue { left: 0, u1, right: slot, u2, result: 0 });
        let partial = SynthesisScript { ops: ops.clone(), provenance: None };
        states[0] = planar_synthesize(&partial).unwrap();
    }
    let (mut g, mut r) = states.swap_remove(0);
    let order = g.order();
    let target = if order + 1 < max_order { rng.gen_range(order..max_order) } else { order };
    while g.order() < target {
        let Some(spec) = random_expansion(rng, &g, &r, target - g.order(), false) else { break };
        let (g2, r2) = order_preserving_expand(&g, &r, &spec).unwrap();
        ops.push(ScriptOp::Expand { graph: 0, spec, attach: Vec::new() });
        g = g2;
        r = r2;
    }
    // A final expansion away from articulation points, undone by the caller.
    let room = max_order - g.order();
    let last = loop {
        if let Some(s) = random_expansion(rng, &g, &r, room, true) {
            break s;
        }
    };
    ops.push(ScriptOp::Expand { graph: 0, spec: last.clone(), attach: Vec::new() });
    PlanarCase {
        script: SynthesisScript { ops, provenance: None },
        before: (g, r),
        last,
    }
}

fn pick(rng: &mut impl Rng, g: &Multigraph) -> Vertex {
    let vs: Vec<Vertex> = g.vertices().collect();
    vs[rng.gen_range(0..vs.len())]
}

/// Whether `a` and `b` list the same heads around every vertex up to a
/// cyclic shift, after renaming `b`'s vertices by `rename`.
pub fn same_up_to_shift(a: &RotationSystem, b: &RotationSystem, rename: &dyn Fn(Vertex) -> Vertex) -> bool {
    let heads = |r: &RotationSystem, v: Vertex, f: &dyn Fn(Vertex) -> Vertex| -> Vec<Vertex> {
        r.rotation(v).iter().map(|d| f(d.head)).collect()
    };
    let av: Vec<Vertex> = a.vertices().collect();
    let mut bv: Vec<Vertex> = b.vertices().map(rename).collect();
    bv.sort();
    if av != bv {
        return false;
    }
    b.vertices().all(|v| {
        let x = heads(b, v, rename);
        let y = heads(a, rename(v), &|w| w);
        x.len() == y.len() && (x.is_empty() || (0..x.len()).any(|s| (0..x.len()).all(|j| x[(s + j) % x.len()] == y[j])))
    })
}
