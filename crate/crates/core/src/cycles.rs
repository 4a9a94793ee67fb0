//! Chordless cycle enumeration.
//!
//! A double edge counts as a chordless cycle of length 2 (reported once per
//! pair whatever its multiplicity). For length at least 3 a cycle is chordless
//! when no two non-consecutive vertices are adjacent and no cycle edge is
//! doubled. Cycles come out shortest first, each length in normal-form order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Cycle, Multigraph, Vertex};

/// Lazily yields chordless cycles of increasing length.
pub struct ChordlessCycles<'a> {
    g: &'a Multigraph,
    through: Option<Vertex>,
    avoiding: Option<Vertex>,
    length: usize,
    pending: std::vec::IntoIter<Cycle>,
}

pub fn chordless_cycles(
    g: &Multigraph,
    through: Option<Vertex>,
    avoiding: Option<Vertex>,
) -> Result<ChordlessCycles<'_>> {
    if through.is_some() && through == avoiding {
        return Err(Error::argument("through and avoiding name the same vertex"));
    }
    Ok(ChordlessCycles {
        g,
        through,
        avoiding,
        length: 2,
        pending: Vec::new().into_iter(),
    })
}

impl Iterator for ChordlessCycles<'_> {
    type Item = Cycle;

    fn next(&mut self) -> Option<Cycle> {
        loop {
            if let Some(c) = self.pending.next() {
                return Some(c);
            }
            if self.length > self.g.order() {
                return None;
            }
            let mut batch = of_length(self.g, self.length, self.avoiding);
            if let Some(t) = self.through {
                batch.retain(|c| c.contains(t));
            }
            batch.sort();
            self.length += 1;
            self.pending = batch.into_iter();
        }
    }
}

/// All chordless cycles of exactly `len` vertices.
fn of_length(g: &Multigraph, len: usize, avoiding: Option<Vertex>) -> Vec<Cycle> {
    let usable = |v: Vertex| Some(v) != avoiding;
    if len == 2 {
        return g
            .edges()
            .filter(|&(u, v, r)| r >= 2 && usable(u) && usable(v))
            .map(|(u, v, _)| Cycle::new(vec![u, v]).unwrap())
            .collect();
    }
    // Simple neighbourhoods; doubled pairs can never be cycle edges here.
    let single: BTreeMap<Vertex, Vec<Vertex>> = g
        .vertices()
        .map(|v| {
            let ns = g
                .neighbors(v)
                .filter(|&(w, r)| r == 1 && usable(w))
                .map(|(w, _)| w)
                .collect();
            (v, ns)
        })
        .collect();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(len);
    for s in g.vertices().filter(|&s| usable(s)) {
        path.clear();
        path.push(s);
        extend(g, &single, len, &mut path, &mut out);
    }
    out
}

fn extend(
    g: &Multigraph,
    single: &BTreeMap<Vertex, Vec<Vertex>>,
    len: usize,
    path: &mut Vec<Vertex>,
    out: &mut Vec<Cycle>,
) {
    let s = path[0];
    let last = *path.last().unwrap();
    let i = path.len();
    for &w in &single[&last] {
        if w <= s || path.contains(&w) {
            continue;
        }
        // No edge from w back into the interior of the path.
        if path.get(1..i - 1).unwrap_or(&[]).iter().any(|&p| g.multiplicity(p, w) > 0) {
            continue;
        }
        let to_start = g.multiplicity(s, w);
        if i + 1 < len {
            if i > 1 && to_start > 0 {
                continue;
            }
            path.push(w);
            extend(g, single, len, path, out);
            path.pop();
        } else if to_start == 1 && path[1] < w {
            path.push(w);
            out.push(Cycle::new(path.clone()).unwrap());
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use std::collections::BTreeSet;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    /// Brute force: every vertex subset, every cyclic order, keep chordless ones.
    fn brute_force(g: &Multigraph) -> BTreeSet<Cycle> {
        let vs: Vec<Vertex> = g.vertices().collect();
        let n = vs.len();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << n) {
            let subset: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            if subset.len() < 2 {
                continue;
            }
            permute(&subset[1..].to_vec(), &mut Vec::new(), &mut |rest| {
                let mut cyc = vec![subset[0]];
                cyc.extend_from_slice(rest);
                let c = Cycle::new(cyc).unwrap();
                if c.is_chordless_in(g) {
                    out.insert(c);
                }
            });
        }
        out
    }

    fn permute(items: &[Vertex], acc: &mut Vec<Vertex>, f: &mut dyn FnMut(&[Vertex])) {
        if items.is_empty() {
            f(acc);
            return;
        }
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            acc.push(x);
            permute(&rest, acc, f);
            acc.pop();
        }
    }

    #[test]
    fn dumbbell_has_one_cycle() {
        let cs: Vec<_> = chordless_cycles(&dumbbell(), None, None).unwrap().collect();
        assert_eq!(cs, vec![Cycle::new(vec![v(0), v(1)]).unwrap()]);
    }

    #[test]
    fn k4_triangles_only() {
        let cs: Vec<_> = chordless_cycles(&complete(4), None, None).unwrap().collect();
        assert_eq!(cs.len(), 4);
        assert!(cs.iter().all(|c| c.len() == 3));
        let avoid: Vec<_> = chordless_cycles(&complete(4), None, Some(v(0))).unwrap().collect();
        assert_eq!(avoid, vec![Cycle::new(vec![v(1), v(2), v(3)]).unwrap()]);
    }

    #[test]
    fn through_equal_to_avoiding_is_rejected() {
        assert!(chordless_cycles(&complete(4), Some(v(1)), Some(v(1))).is_err());
    }

    #[test]
    fn shortest_first() {
        let cs: Vec<_> = chordless_cycles(&complete_bipartite(3, 3), None, None).unwrap().collect();
        assert_eq!(cs.len(), 9);
        assert!(cs.windows(2).all(|w| w[0].len() <= w[1].len()));
        let p: Vec<_> = chordless_cycles(&petersen(), None, None).unwrap().collect();
        assert_eq!(p.iter().filter(|c| c.len() == 5).count(), 12);
        assert_eq!(p.iter().filter(|c| c.len() == 6).count(), 10);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rng.gen_range(2..=7);
            let mut g = Multigraph::with_order(n);
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if rng.gen_bool(0.45) {
                        g.add_edge(v(a), v(b), rng.gen_range(1..=3)).unwrap();
                    }
                }
            }
            let fast: BTreeSet<Cycle> = chordless_cycles(&g, None, None).unwrap().collect();
            assert_eq!(fast, brute_force(&g), "{g:?}");
            let through: BTreeSet<Cycle> = chordless_cycles(&g, Some(v(0)), None).unwrap().collect();
            assert!(through.iter().all(|c| c.contains(v(0))));
            assert_eq!(through.len(), fast.iter().filter(|c| c.contains(v(0))).count());
        }
    }
}
