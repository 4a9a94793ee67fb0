//! Synthesis scripts: a replayable text record of dumbbells, block gluings
//! and cycle expansions.
//!
//! ```text
//! # provenance <canonical code hex>
//! DUMBBELL <id>
//! GLUE <ga> <ua> <gb> <ub> <result-id>
//! EXPAND <g> <u> <d'> <v1>,<v2>,...,<vd> [attach=<v>:<i>,...]
//! ```
//!
//! Graph ids name slots. `GLUE` consumes both inputs and stores the result
//! (second graph shifted by the first one's id counter, glued vertex keeping
//! `ua`). `EXPAND` works in place and is always block-respecting; the optional
//! `attach` list moves the block holding edge `(u, v)` onto cycle vertex `i`.
//! The result of a script is the graph written by its last record.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::blocks::blocks;
use crate::canon::CanonicalCode;
use crate::checks::assertions_enabled;
use crate::decompose::decompose_mapped;
use crate::error::{Error, Result};
use crate::graph::{families, Multigraph, Vertex};
use crate::ops::{assert_exact, block_glue, block_respecting_cycle_expand, CycleExpansionSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptOp {
    Dumbbell {
        id: usize,
    },
    Glue {
        left: usize,
        u1: Vertex,
        right: usize,
        u2: Vertex,
        result: usize,
    },
    Expand {
        graph: usize,
        spec: CycleExpansionSpec,
        attach: Vec<(Vertex, usize)>,
    },
}

impl ScriptOp {
    fn output(&self) -> usize {
        match *self {
            ScriptOp::Dumbbell { id } => id,
            ScriptOp::Glue { result, .. } => result,
            ScriptOp::Expand { graph, .. } => graph,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynthesisScript {
    pub ops: Vec<ScriptOp>,
    pub provenance: Option<CanonicalCode>,
}

impl SynthesisScript {
    pub fn dumbbell_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, ScriptOp::Dumbbell { .. }))
            .count()
    }

    pub fn glue_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, ScriptOp::Glue { .. }))
            .count()
    }

    pub fn expansion_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, ScriptOp::Expand { .. }))
            .count()
    }

    /// Checks `m = n + 2B + E - 1` and `N = m - n - B` against `g`, the
    /// graph this script builds.
    pub fn check_counting(&self, g: &Multigraph) -> Result<()> {
        let m = g.size() as i64;
        let n = g.order() as i64;
        let b = blocks(g)?.block_count() as i64;
        let e = self.expansion_count() as i64;
        let ops = (self.glue_count() + self.expansion_count()) as i64;
        if m != n + 2 * b + e - 1 {
            return Err(Error::invariant(format!(
                "m = {m} but n + 2B + E - 1 = {}",
                n + 2 * b + e - 1
            )));
        }
        if ops != m - n - b {
            return Err(Error::invariant(format!(
                "{ops} operations but m - n - B = {}",
                m - n - b
            )));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut script = SynthesisScript::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if let Some(rest) = l.strip_prefix('#') {
                let mut toks = rest.split_whitespace();
                if toks.next() == Some("provenance") {
                    let hex = toks.next().unwrap_or("");
                    let code = CanonicalCode::from_hex(hex)
                        .ok_or_else(|| Error::parse(line, "malformed provenance code"))?;
                    script.provenance = Some(code);
                }
                continue;
            }
            if l.is_empty() {
                continue;
            }
            script.ops.push(parse_op(line, l)?);
        }
        Ok(script)
    }
}

fn parse_op(line: usize, l: &str) -> Result<ScriptOp> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    let num = |t: &str| -> Result<u32> {
        t.parse()
            .map_err(|_| Error::parse(line, format!("{t:?} is not a non-negative integer")))
    };
    let arity = |n: usize| -> Result<()> {
        if toks.len() == n {
            Ok(())
        } else {
            Err(Error::parse(line, format!("{} takes {} fields", toks[0], n - 1)))
        }
    };
    match toks[0] {
        "DUMBBELL" => {
            arity(2)?;
            Ok(ScriptOp::Dumbbell {
                id: num(toks[1])? as usize,
            })
        }
        "GLUE" => {
            arity(6)?;
            Ok(ScriptOp::Glue {
                left: num(toks[1])? as usize,
                u1: Vertex(num(toks[2])?),
                right: num(toks[3])? as usize,
                u2: Vertex(num(toks[4])?),
                result: num(toks[5])? as usize,
            })
        }
        "EXPAND" => {
            if toks.len() != 5 && toks.len() != 6 {
                return Err(Error::parse(line, "EXPAND takes 4 fields and an optional attach list"));
            }
            let assignment = toks[4]
                .split(',')
                .map(|t| num(t).map(Vertex))
                .collect::<Result<Vec<_>>>()?;
            let mut attach = Vec::new();
            if let Some(extra) = toks.get(5) {
                let list = extra
                    .strip_prefix("attach=")
                    .ok_or_else(|| Error::parse(line, format!("unexpected field {extra:?}")))?;
                for item in list.split(',') {
                    let (v, i) = item
                        .split_once(':')
                        .ok_or_else(|| Error::parse(line, format!("attach entry {item:?} is not v:i")))?;
                    attach.push((Vertex(num(v)?), num(i)? as usize));
                }
            }
            Ok(ScriptOp::Expand {
                graph: num(toks[1])? as usize,
                spec: CycleExpansionSpec::new(Vertex(num(toks[2])?), num(toks[3])? as usize, assignment),
                attach,
            })
        }
        other => Err(Error::parse(line, format!("unknown record {other:?}"))),
    }
}

impl fmt::Display for ScriptOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptOp::Dumbbell { id } => write!(f, "DUMBBELL {id}"),
            ScriptOp::Glue {
                left,
                u1,
                right,
                u2,
                result,
            } => write!(f, "GLUE {left} {u1} {right} {u2} {result}"),
            ScriptOp::Expand {
                graph,
                spec,
                attach,
            } => {
                let darts: Vec<String> = spec.assignment.iter().map(|v| v.to_string()).collect();
                write!(
                    f,
                    "EXPAND {graph} {} {} {}",
                    spec.target,
                    spec.cycle_size,
                    darts.join(",")
                )?;
                if !attach.is_empty() {
                    let items: Vec<String> = attach.iter().map(|(v, i)| format!("{v}:{i}")).collect();
                    write!(f, " attach={}", items.join(","))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for SynthesisScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(code) = &self.provenance {
            writeln!(f, "# provenance {}", code.to_hex())?;
        }
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Live slots of a replay in progress.
#[derive(Debug, Default)]
pub(crate) struct Replayer {
    slots: BTreeMap<usize, Multigraph>,
    last: Option<usize>,
    step: usize,
}

impl Replayer {
    pub(crate) fn graph(&self, id: usize) -> Result<&Multigraph> {
        self.slots.get(&id).ok_or_else(|| {
            Error::format(format!("record {}: graph {id} does not exist", self.step + 1))
        })
    }

    fn take(&mut self, id: usize) -> Result<Multigraph> {
        self.graph(id)?;
        Ok(self.slots.remove(&id).unwrap())
    }

    pub(crate) fn apply(&mut self, op: &ScriptOp) -> Result<()> {
        let at = self.step + 1;
        let wrap = |e: Error| match e {
            Error::Format(m) => Error::Format(m),
            other => Error::format(format!("record {at}: {other}")),
        };
        match op {
            ScriptOp::Dumbbell { id } => {
                if self.slots.contains_key(id) {
                    return Err(Error::format(format!("record {at}: graph {id} already exists")));
                }
                self.slots.insert(*id, families::dumbbell());
            }
            ScriptOp::Glue {
                left,
                u1,
                right,
                u2,
                result,
            } => {
                if left == right {
                    return Err(Error::format(format!("record {at}: a graph cannot be glued to itself")));
                }
                let a = self.take(*left)?;
                let b = self.take(*right)?;
                if self.slots.contains_key(result) {
                    return Err(Error::format(format!("record {at}: graph {result} already exists")));
                }
                let g = block_glue(&a, *u1, &b, *u2).map_err(wrap)?;
                self.slots.insert(*result, g);
            }
            ScriptOp::Expand {
                graph,
                spec,
                attach,
            } => {
                let g = self.graph(*graph)?;
                let e = block_respecting_cycle_expand(g, spec, attach).map_err(wrap)?;
                self.slots.insert(*graph, e.graph);
            }
        }
        self.last = Some(op.output());
        self.step += 1;
        Ok(())
    }

    pub(crate) fn result(&self) -> Result<Multigraph> {
        let id = self.last.ok_or_else(|| Error::format("empty script"))?;
        self.graph(id).cloned()
    }
}

/// Rebuilds the graph a script describes.
pub fn replay(script: &SynthesisScript) -> Result<Multigraph> {
    let mut r = Replayer::default();
    for op in &script.ops {
        r.apply(op)?;
    }
    let g = r.result()?;
    if assertions_enabled() {
        assert_exact(&g, 3, "replay")?;
    }
    Ok(g)
}

/// An equivalent script in which every gluing precedes every expansion: a
/// 3-thick tree of dumbbells followed by block-respecting expansions.
pub fn thick_tree_factor(script: &SynthesisScript) -> Result<SynthesisScript> {
    let first_expand = script
        .ops
        .iter()
        .position(|op| matches!(op, ScriptOp::Expand { .. }));
    let last_glue = script
        .ops
        .iter()
        .rposition(|op| matches!(op, ScriptOp::Glue { .. }));
    let already = match (first_expand, last_glue) {
        (Some(e), Some(g)) => g < e,
        _ => true,
    };
    if already {
        return Ok(script.clone());
    }

    let g = replay(script)?;
    let dec = blocks(&g)?;
    let nb = dec.block_count();

    // Per block: its biconnected script and, for each expansion step, where
    // each block vertex's ancestor sits.
    struct Piece {
        ops: Vec<ScriptOp>,
        map: BTreeMap<Vertex, Vertex>,
        /// `parent[fresh] = (target, i)`: fresh cycle vertex `u_i` of an expansion of `target`.
        parent: BTreeMap<Vertex, (Vertex, usize)>,
    }
    let mut pieces = Vec::new();
    for b in &dec.blocks {
        let d = decompose_mapped(&g.induced(b))?;
        let mut parent = BTreeMap::new();
        let mut next = 2u32;
        for op in &d.script.ops {
            if let ScriptOp::Expand { spec, .. } = op {
                for i in 1..spec.cycle_size {
                    parent.insert(Vertex(next), (spec.target, i));
                    next += 1;
                }
            }
        }
        pieces.push(Piece {
            ops: d.script.ops,
            map: d.map,
            parent,
        });
    }
    // Ancestor of local vertex `x` once `steps` fresh ids have been handed out.
    let ancestor = |p: &Piece, mut x: Vertex, limit: u32| -> Vertex {
        while x.0 >= limit {
            x = p.parent[&x].0;
        }
        x
    };

    // Block adjacency: (block, neighbour block, shared vertex).
    let mut shared: Vec<Vec<(usize, Vertex)>> = vec![Vec::new(); nb];
    for &v in &dec.articulation_points {
        let holders = dec.blocks_of(v);
        for &a in &holders {
            for &b in &holders {
                if a != b {
                    shared[a].push((b, v));
                }
            }
        }
    }

    // `via[a][b]`: the vertex of block `a` through which block `b` hangs off it.
    let mut via = vec![vec![Vertex(0); nb]; nb];
    for a in 0..nb {
        let own = &dec.blocks[a];
        for comp in g.components_without(own) {
            let Some(v) = own
                .iter()
                .copied()
                .find(|&v| g.neighbors(v).any(|(w, _)| comp.contains(&w)))
            else {
                continue;
            };
            for b in 0..nb {
                if b != a && dec.blocks[b].iter().any(|y| comp.contains(y)) {
                    via[a][b] = v;
                }
            }
        }
    }

    // Thick tree: glue dumbbell ancestors along a breadth-first walk.
    let mut out = Vec::new();
    let mut state = Replayer::default();
    // Map (block, local id) -> id in slot 0.
    let mut place: Vec<BTreeMap<Vertex, Vertex>> = vec![BTreeMap::new(); nb];
    let emit = |state: &mut Replayer, out: &mut Vec<ScriptOp>, op: ScriptOp| -> Result<()> {
        state.apply(&op)?;
        out.push(op);
        Ok(())
    };
    for slot in 0..nb {
        emit(&mut state, &mut out, ScriptOp::Dumbbell { id: slot })?;
    }
    place[0] = BTreeMap::from([(Vertex(0), Vertex(0)), (Vertex(1), Vertex(1))]);
    let mut placed = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    let mut order = vec![0usize];
    while let Some(a) = queue.pop_front() {
        for &(b, v) in &shared[a] {
            if placed.contains(&b) {
                continue;
            }
            let ua = place[a][&ancestor(&pieces[a], pieces[a].map[&v], 2)];
            let ub = ancestor(&pieces[b], pieces[b].map[&v], 2);
            let shift = state.graph(0)?.next_id();
            emit(
                &mut state,
                &mut out,
                ScriptOp::Glue {
                    left: 0,
                    u1: ua,
                    right: b,
                    u2: ub,
                    result: 0,
                },
            )?;
            for x in [Vertex(0), Vertex(1)] {
                let id = if x == ub { ua } else { Vertex(x.0 + shift) };
                place[b].insert(x, id);
            }
            placed.insert(b);
            queue.push_back(b);
            order.push(b);
        }
    }

    // Replay every block's expansions inside slot 0, moving neighbouring
    // blocks to the cycle vertex that inherits the shared vertex.
    for &a in &order {
        let piece = &pieces[a];
        let mut issued = 2u32;
        for op in &piece.ops {
            let ScriptOp::Expand { spec, .. } = op else {
                continue;
            };
            let d = spec.cycle_size;
            let fresh_from = issued;
            issued += d as u32 - 1;
            let target = place[a][&spec.target];
            let mut attach = Vec::new();
            let mut moved = Vec::new();
            for b in 0..nb {
                if b == a || !place[b].values().any(|&x| x == target) {
                    continue;
                }
                let local = piece.map[&via[a][b]];
                let before = ancestor(piece, local, fresh_from);
                if before != spec.target {
                    continue;
                }
                let after = ancestor(piece, local, issued);
                let i = if after == spec.target {
                    d
                } else {
                    (after.0 - fresh_from) as usize + 1
                };
                if i == d {
                    continue;
                }
                let g0 = state.graph(0)?;
                let w = place[b]
                    .values()
                    .copied()
                    .find(|&w| g0.multiplicity(target, w) > 0)
                    .ok_or_else(|| Error::invariant("neighbouring block lost contact"))?;
                attach.push((w, i));
                moved.push((b, i));
            }
            let mapped = CycleExpansionSpec::new(
                target,
                d,
                spec.assignment.iter().map(|w| place[a][w]).collect(),
            );
            let before_next = state.graph(0)?.next_id();
            emit(
                &mut state,
                &mut out,
                ScriptOp::Expand {
                    graph: 0,
                    spec: mapped,
                    attach,
                },
            )?;
            for k in 0..d as u32 - 1 {
                place[a].insert(Vertex(fresh_from + k), Vertex(before_next + k));
            }
            // A moved neighbour now meets this block at the new cycle vertex.
            for (b, i) in moved {
                let to = Vertex(before_next + i as u32 - 1);
                for id in place[b].values_mut() {
                    if *id == target {
                        *id = to;
                    }
                }
            }
        }
    }

    Ok(SynthesisScript {
        ops: out,
        provenance: script.provenance.clone(),
    })
}
