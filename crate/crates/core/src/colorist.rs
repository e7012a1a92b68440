//! Coloring of the edges of a two-level instance.
//!
//! Uncrossed edges are black unless they are pre-cluster edges. Each crossing
//! pair is colored from the number of outer vertices on its kite.

use std::collections::HashMap;

use serde::Serialize;

use crate::blocks::BlockForest;
use crate::graph_model::{Color, EdgeId, VertexId, NONE};
use crate::leveler::{kite_faces, LevelDecomposition, TwoLevelGraph};
use crate::normalizer::NormalizedMultigraph;

/// Rule that decided the color of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ColorCase {
    Skeleton,
    PreCluster,
    FourOuter,
    ThreeOuter,
    OppositeOuter,
    AdjacentOuterLastEdge,
    AdjacentOuter,
    BindingOverInnerChord,
    SameBlock,
    FirstEdge,
    CoveredShortcut,
    Purple,
    Unmatched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PurpleKind {
    Handle,
    Connector,
    Bridge,
    Hook,
    Unclassified,
}

#[derive(Debug, Clone, Default)]
pub struct EdgeColoring {
    pub color: HashMap<EdgeId, Color>,
    pub case: HashMap<EdgeId, ColorCase>,
    /// Block whose last-edge face holds each purple edge.
    pub assigned_block: HashMap<EdgeId, usize>,
    pub purple_kind: HashMap<EdgeId, PurpleKind>,
    pub diagnostics: Vec<String>,
}

impl EdgeColoring {
    fn set(&mut self, e: EdgeId, c: Color, why: ColorCase) {
        self.color.insert(e, c);
        self.case.insert(e, why);
    }

    pub fn of(&self, e: EdgeId) -> Color {
        self.color.get(&e).copied().unwrap_or(Color::Uncolored)
    }
}

/// Colors the edges `owned` by instance `h`.
pub fn color_edges(
    g: &NormalizedMultigraph,
    dec: &LevelDecomposition,
    h: &TwoLevelGraph,
    f: &BlockForest,
    owned: &[EdgeId],
    crossing_of: &[usize],
) -> EdgeColoring {
    let mut out = EdgeColoring::default();
    let kites = kite_faces(dec);
    let mut crossing = HashMap::new();
    let mut incident: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    for &e in owned {
        if g.is_crossed(e) {
            let i = crossing_of[e];
            crossing.entry(i).or_insert(g.crossing_pairs()[i]);
        } else {
            out.set(e, Color::Black, ColorCase::Skeleton);
            let ed = g.edges()[e];
            incident.entry(ed.u).or_default().push(e);
            incident.entry(ed.v).or_default().push(e);
        }
    }
    // Pre-cluster edges.
    for c in &f.clusters {
        for &e in incident.get(&c.leader).map(|x| x.as_slice()).unwrap_or(&[]) {
            let ed = g.edges()[e];
            if let Some(i) = h.oidx(ed.other(c.leader)) {
                if i < c.cover {
                    out.set(e, Color::Red, ColorCase::PreCluster);
                }
            }
        }
    }
    let mut keys: Vec<usize> = crossing.keys().copied().collect();
    keys.sort_unstable();
    for i in keys {
        let (a, b) = crossing[&i];
        let q = kites[i];
        color_pair(g, dec, h, f, q, a, b, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn color_pair(
    g: &NormalizedMultigraph,
    dec: &LevelDecomposition,
    h: &TwoLevelGraph,
    f: &BlockForest,
    q: usize,
    a: EdgeId,
    b: EdgeId,
    out: &mut EdgeColoring,
) {
    let quad = dec.face_vertices(q);
    let outer_pos: Vec<usize> = (0..quad.len()).filter(|&j| h.is_outer(quad[j])).collect();
    let ends = |e: EdgeId| [g.edges()[e].u, g.edges()[e].v];
    let least_outer = |e: EdgeId| ends(e).iter().filter_map(|&v| h.oidx(v)).min().unwrap_or(NONE);
    let n_outer = |e: EdgeId| ends(e).iter().filter(|&&v| h.is_outer(v)).count();
    // A last edge in the kite makes both binding edges green when the leader's
    // diagonal ends at the outer vertex that comes second on the kite walk.
    let second = second_outer(dec, h, q);
    let has_last = f.last_face.get(&q).is_some_and(|l| {
        l.iter().any(|&blk| {
            let lam = f.blocks[blk].leader();
            [a, b].iter().any(|&e| ends(e).contains(&lam) && ends(e).contains(&second))
        })
    });
    match outer_pos.len() {
        4 => {
            let key = |e: EdgeId| {
                let mut x: Vec<usize> = ends(e).iter().filter_map(|&v| h.oidx(v)).collect();
                x.sort_unstable();
                x
            };
            let (gr, rd) = if key(a) <= key(b) { (a, b) } else { (b, a) };
            out.set(gr, Color::Green, ColorCase::FourOuter);
            out.set(rd, Color::Red, ColorCase::FourOuter);
        }
        3 => {
            out.set(a, Color::Green, ColorCase::ThreeOuter);
            out.set(b, Color::Green, ColorCase::ThreeOuter);
        }
        2 => {
            let gap = outer_pos[1] - outer_pos[0];
            if gap == 2 {
                out.set(a, Color::Green, ColorCase::OppositeOuter);
                out.set(b, Color::Green, ColorCase::OppositeOuter);
            } else if has_last {
                out.set(a, Color::Green, ColorCase::AdjacentOuterLastEdge);
                out.set(b, Color::Green, ColorCase::AdjacentOuterLastEdge);
            } else {
                let (gr, rd) = if least_outer(a) <= least_outer(b) { (a, b) } else { (b, a) };
                out.set(gr, Color::Green, ColorCase::AdjacentOuter);
                out.set(rd, Color::Red, ColorCase::AdjacentOuter);
            }
        }
        1 => {
            let (gb, hc) = if n_outer(a) == 1 { (a, b) } else { (b, a) };
            out.set(gb, Color::Green, ColorCase::BindingOverInnerChord);
            let [x, y] = ends(hc);
            let bx = f.block_of_vertex.get(&x).copied();
            let by = f.block_of_vertex.get(&y).copied();
            let uncovered = |b: Option<usize>| b.is_some_and(|b| !f.blocks[b].covered);
            let first_uncovered = f
                .first_face
                .get(&q)
                .is_some_and(|l| l.iter().any(|&b| !f.blocks[b].covered && f.blocks[b].q() >= 2));
            let shortcut = [bx, by].into_iter().flatten().any(|b| {
                let blk = &f.blocks[b];
                let qq = blk.q();
                blk.covered
                    && qq >= 2
                    && (same_pair([x, y], [blk.verts[0], blk.verts[2]])
                        || same_pair([x, y], [blk.verts[0], blk.verts[qq - 1]]))
            });
            let last_block = f.last_face.get(&q).and_then(|l| {
                l.iter().copied().find(|&b| !f.blocks[b].covered && !f.blocks[b].elementary)
            });
            if bx.is_some() && bx == by {
                out.set(hc, Color::Red, ColorCase::SameBlock);
            } else if first_uncovered {
                out.set(hc, Color::Red, ColorCase::FirstEdge);
            } else if shortcut {
                out.set(hc, Color::Red, ColorCase::CoveredShortcut);
            } else if let (true, true, Some(lb)) = (uncovered(bx), uncovered(by), last_block) {
                out.set(hc, Color::Purple, ColorCase::Purple);
                out.assigned_block.insert(hc, lb);
                let kind = purple_kind(h, f, lb, [x, y]);
                if kind == PurpleKind::Hook || kind == PurpleKind::Unclassified {
                    out.diagnostics.push(format!("purple edge {hc} classified as {kind:?}"));
                }
                out.purple_kind.insert(hc, kind);
            } else {
                out.set(hc, Color::Red, ColorCase::Unmatched);
                out.diagnostics.push(format!(
                    "crossing ({a},{b}) in instance {} matches no case; edge {hc} colored red",
                    h.id
                ));
            }
        }
        _ => {
            let (gr, rd) = (a.min(b), a.max(b));
            out.set(gr, Color::Green, ColorCase::Unmatched);
            out.set(rd, Color::Red, ColorCase::Unmatched);
            out.diagnostics.push(format!(
                "crossing ({a},{b}) in instance {} has no outer vertex on its kite",
                h.id
            ));
        }
    }
}

/// Second vertex of the consecutive outer pair on the oriented walk of a
/// kite with two adjacent outer vertices.
fn second_outer(dec: &LevelDecomposition, h: &TwoLevelGraph, q: usize) -> VertexId {
    let seq: Vec<VertexId> = match h.face_info.get(&q) {
        Some(fi) if fi.sweep_dart != NONE => {
            h.oriented_face(dec, fi.sweep_dart).iter().map(|&d| dec.sk.emb.tail(d)).collect()
        }
        _ => dec.face_vertices(q),
    };
    let k = seq.len();
    (0..k)
        .find(|&j| h.is_outer(seq[j]) && h.is_outer(seq[(j + 1) % k]))
        .map_or(NONE, |j| seq[(j + 1) % k])
}

fn same_pair(a: [VertexId; 2], b: [VertexId; 2]) -> bool {
    (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0])
}

/// Kind of a purple edge with endpoints `e` assigned to block `b`.
pub fn purple_kind(h: &TwoLevelGraph, f: &BlockForest, b: usize, e: [VertexId; 2]) -> PurpleKind {
    let blk = &f.blocks[b];
    let q = blk.q();
    let bq = blk.last();
    if q >= 2 && same_pair(e, [blk.verts[0], blk.verts[q - 1]]) {
        return PurpleKind::Handle;
    }
    if let Some(p) = blk.parent {
        let a = &f.blocks[p];
        if let Some(j) = a.verts.iter().position(|&v| v == blk.leader()) {
            if same_pair(e, [bq, a.verts[(j + 1) % a.verts.len()]]) {
                return PurpleKind::Connector;
            }
        }
        let sibs: Vec<usize> = a
            .children
            .iter()
            .copied()
            .filter(|&c| f.blocks[c].leader() == blk.leader())
            .collect();
        if let Some(k) = sibs.iter().position(|&c| c == b) {
            if k > 0 {
                let s = &f.blocks[sibs[k - 1]];
                if s.verts.len() > 1 && same_pair(e, [s.verts[1], bq]) {
                    return PurpleKind::Bridge;
                }
            }
        }
    }
    let tree = &f.trees[blk.tree];
    if tree.omega != NONE && tree.omega < h.outer.len() && same_pair(e, [bq, h.outer[tree.omega]]) {
        return PurpleKind::Hook;
    }
    PurpleKind::Unclassified
}

/// Kinds of all purple edges of a coloring.
pub fn classify_purple(c: &EdgeColoring) -> HashMap<PurpleKind, usize> {
    let mut out = HashMap::new();
    for k in c.purple_kind.values() {
        *out.entry(*k).or_insert(0) += 1;
    }
    out
}
