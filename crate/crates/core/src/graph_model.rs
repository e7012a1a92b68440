//! Multigraphs with a combinatorial embedding.
//!
//! Every edge `e` owns two darts: `2e` runs from `ends[e][0]` to `ends[e][1]`
//! and `2e + 1` runs back. Rotations are clockwise and stored as a doubly
//! linked ring per vertex, so edges can be inserted and removed in O(1).
//! The face of a dart lies on its left; `next(u->v)` is the dart leaving `v`
//! clockwise after `v->u`. Bounded faces therefore run counterclockwise and
//! the outer face runs clockwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Dart = usize;

pub const NONE: usize = usize::MAX;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> EdgeId {
    d >> 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    Original,
    Augmented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Black,
    Green,
    Red,
    Purple,
    Uncolored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    /// 0 for the edge itself, k for the k-th parallel copy.
    pub copy_index: u32,
    pub origin: Origin,
}

impl Edge {
    pub fn original(u: VertexId, v: VertexId) -> Self {
        Edge { u, v, copy_index: 0, origin: Origin::Original }
    }

    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Rotation system of a plane multigraph.
#[derive(Debug, Clone)]
pub struct Embedding {
    ends: Vec<[VertexId; 2]>,
    cw: Vec<Dart>,
    ccw: Vec<Dart>,
    first: Vec<Dart>,
    deg: Vec<usize>,
    alive: Vec<bool>,
    /// A dart whose left face is the outer face, or `NONE` for an edgeless graph.
    pub outer: Dart,
}

impl Embedding {
    pub fn with_vertices(n: usize) -> Self {
        Embedding {
            ends: Vec::new(),
            cw: Vec::new(),
            ccw: Vec::new(),
            first: vec![NONE; n],
            deg: vec![0; n],
            alive: Vec::new(),
            outer: NONE,
        }
    }

    /// Builds an embedding from clockwise dart lists; every live dart must
    /// appear exactly once, at its tail.
    pub fn from_rotations(
        n: usize,
        ends: Vec<[VertexId; 2]>,
        rot: &[Vec<Dart>],
        outer: Dart,
    ) -> Result<Self> {
        if rot.len() != n {
            return Err(Error::NotAnEmbedding(format!(
                "{} rotation lists for {} vertices",
                rot.len(),
                n
            )));
        }
        let m = ends.len();
        let mut emb = Embedding {
            ends,
            cw: vec![NONE; 2 * m],
            ccw: vec![NONE; 2 * m],
            first: vec![NONE; n],
            deg: vec![0; n],
            alive: vec![true; m],
            outer,
        };
        let mut seen = vec![false; 2 * m];
        for (v, list) in rot.iter().enumerate() {
            for (i, &d) in list.iter().enumerate() {
                if d >= 2 * m {
                    return Err(Error::NotAnEmbedding(format!("dart {d} out of range")));
                }
                if seen[d] {
                    return Err(Error::NotAnEmbedding(format!("dart {d} listed twice")));
                }
                if emb.tail(d) != v {
                    return Err(Error::NotAnEmbedding(format!(
                        "dart {d} listed at vertex {v} but leaves {}",
                        emb.tail(d)
                    )));
                }
                seen[d] = true;
                let nx = list[(i + 1) % list.len()];
                emb.cw[d] = nx;
                emb.ccw[nx] = d;
            }
            emb.deg[v] = list.len();
            emb.first[v] = list.first().copied().unwrap_or(NONE);
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::NotAnEmbedding(format!("dart {d} missing from rotations")));
        }
        if m > 0 && outer >= 2 * m {
            return Err(Error::NotAnEmbedding("outer dart out of range".into()));
        }
        Ok(emb)
    }

    pub fn n(&self) -> usize {
        self.first.len()
    }

    /// Number of edge slots, including removed ones.
    pub fn edge_slots(&self) -> usize {
        self.ends.len()
    }

    pub fn edge_alive(&self, e: EdgeId) -> bool {
        self.alive[e]
    }

    pub fn live_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.ends.len()).filter(move |&e| self.alive[e])
    }

    pub fn live_edge_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    pub fn ends(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e]
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> VertexId {
        self.ends[d >> 1][d & 1]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> VertexId {
        self.ends[d >> 1][1 - (d & 1)]
    }

    /// Clockwise successor of `d` around its tail.
    #[inline]
    pub fn cw(&self, d: Dart) -> Dart {
        self.cw[d]
    }

    /// Counterclockwise successor of `d` around its tail.
    #[inline]
    pub fn ccw(&self, d: Dart) -> Dart {
        self.ccw[d]
    }

    /// Successor of `d` along its (left) face.
    #[inline]
    pub fn next(&self, d: Dart) -> Dart {
        self.cw[twin(d)]
    }

    /// Predecessor of `d` along its (left) face.
    #[inline]
    pub fn prev(&self, d: Dart) -> Dart {
        twin(self.ccw[d])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.deg[v]
    }

    pub fn first_dart(&self, v: VertexId) -> Option<Dart> {
        (self.first[v] != NONE).then_some(self.first[v])
    }

    /// Darts leaving `v` in clockwise order, starting anywhere.
    pub fn rotation(&self, v: VertexId) -> Vec<Dart> {
        let mut out = Vec::with_capacity(self.deg[v]);
        if let Some(s) = self.first_dart(v) {
            let mut d = s;
            loop {
                out.push(d);
                d = self.cw[d];
                if d == s {
                    break;
                }
            }
        }
        out
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.first.push(NONE);
        self.deg.push(0);
        self.first.len() - 1
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        self.ends.push([u, v]);
        self.cw.extend([NONE, NONE]);
        self.ccw.extend([NONE, NONE]);
        self.alive.push(true);
        self.ends.len() - 1
    }

    /// Places the new dart `d` at its tail, clockwise before `before`
    /// (or alone if `before` is `NONE`).
    fn link_before(&mut self, d: Dart, before: Dart) {
        let v = self.tail(d);
        if before == NONE {
            self.cw[d] = d;
            self.ccw[d] = d;
            self.first[v] = d;
        } else {
            let p = self.ccw[before];
            self.cw[p] = d;
            self.ccw[d] = p;
            self.cw[d] = before;
            self.ccw[before] = d;
        }
        self.deg[v] += 1;
    }

    fn unlink(&mut self, d: Dart) {
        let v = self.tail(d);
        if self.cw[d] == d {
            self.first[v] = NONE;
        } else {
            let (p, s) = (self.ccw[d], self.cw[d]);
            self.cw[p] = s;
            self.ccw[s] = p;
            if self.first[v] == d {
                self.first[v] = s;
            }
        }
        self.deg[v] -= 1;
        self.cw[d] = NONE;
        self.ccw[d] = NONE;
    }

    /// Inserts an edge through the face shared by the corners that precede the
    /// darts `cu` (at `u`) and `cv` (at `v`). On the faces, `u->v` (dart `2e`)
    /// is followed by `cv` and `v->u` by `cu`.
    pub fn insert_edge(&mut self, cu: Dart, cv: Dart) -> EdgeId {
        let (u, v) = (self.tail(cu), self.tail(cv));
        let e = self.push_edge(u, v);
        self.link_before(2 * e, cu);
        self.link_before(2 * e + 1, cv);
        e
    }

    /// Inserts an edge `u - v` where `u` is isolated; the dart at `v` goes
    /// clockwise before `cv`.
    pub fn attach_pendant(&mut self, u: VertexId, cv: Dart) -> EdgeId {
        let v = self.tail(cv);
        let e = self.push_edge(u, v);
        self.link_before(2 * e, NONE);
        self.link_before(2 * e + 1, cv);
        e
    }

    /// Adds the first edge of an edgeless graph.
    pub fn add_lone_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let e = self.push_edge(u, v);
        self.link_before(2 * e, NONE);
        self.link_before(2 * e + 1, NONE);
        self.outer = 2 * e;
        e
    }

    pub fn remove_edge(&mut self, e: EdgeId) {
        if !self.alive[e] {
            return;
        }
        if edge_of(self.outer) == e {
            let alt = [self.next(self.outer), self.prev(self.outer)]
                .into_iter()
                .find(|&d| edge_of(d) != e);
            self.outer = alt.unwrap_or(NONE);
        }
        self.unlink(2 * e);
        self.unlink(2 * e + 1);
        self.alive[e] = false;
    }

    /// Splits edge `e = u - v` by a new vertex `x`; `e` becomes `u - x` and the
    /// returned edge is `x - v`. Dart directions are preserved.
    pub fn subdivide(&mut self, e: EdgeId) -> (VertexId, EdgeId) {
        let [_, v] = self.ends[e];
        let x = self.add_vertex();
        let f = self.push_edge(x, v);
        let old = 2 * e + 1;
        let (p, s) = (self.ccw[old], self.cw[old]);
        let nv = 2 * f + 1;
        if s == old {
            self.cw[nv] = nv;
            self.ccw[nv] = nv;
        } else {
            self.cw[p] = nv;
            self.ccw[nv] = p;
            self.cw[nv] = s;
            self.ccw[s] = nv;
        }
        if self.first[v] == old {
            self.first[v] = nv;
        }
        self.ends[e][1] = x;
        self.cw[old] = NONE;
        self.ccw[old] = NONE;
        self.link_before(old, NONE);
        self.link_before(2 * f, old);
        if self.outer == old {
            self.outer = nv;
        }
        (x, f)
    }

    /// Computes all faces as `next`-cycles.
    pub fn faces(&self) -> FaceSet {
        let nd = 2 * self.ends.len();
        let mut of_dart = vec![NONE; nd];
        let mut start = Vec::new();
        let mut len = Vec::new();
        for d0 in 0..nd {
            if !self.alive[d0 >> 1] || of_dart[d0] != NONE {
                continue;
            }
            let f = start.len();
            let mut d = d0;
            let mut k = 0;
            loop {
                of_dart[d] = f;
                k += 1;
                d = self.next(d);
                if d == d0 {
                    break;
                }
            }
            start.push(d0);
            len.push(k);
        }
        let outer = if self.outer == NONE { NONE } else { of_dart[self.outer] };
        FaceSet { of_dart, start, len, outer }
    }

    /// Darts of the face containing `d`, starting at `d`.
    pub fn face_darts(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.next(d);
        while x != d {
            out.push(x);
            x = self.next(x);
        }
        out
    }

    /// Connected components over vertices that have at least one edge.
    pub fn component_count(&self) -> (usize, usize) {
        let n = self.n();
        let mut comp = vec![NONE; n];
        let mut count = 0;
        let mut isolated = 0;
        for s in 0..n {
            if comp[s] != NONE {
                continue;
            }
            if self.deg[s] == 0 {
                isolated += 1;
                comp[s] = 0;
                continue;
            }
            count += 1;
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for d in self.rotation(v) {
                    let w = self.head(d);
                    if comp[w] == NONE {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
        }
        (count, isolated)
    }

    /// Checks Euler's formula for the rotation system (genus zero).
    pub fn is_planar_rotation(&self) -> bool {
        let (c, iso) = self.component_count();
        let v = (self.n() - iso) as i64;
        let e = self.live_edge_count() as i64;
        let f = self.faces().count() as i64;
        v - e + f == 2 * c as i64
    }
}

/// Faces of an embedding.
#[derive(Debug, Clone)]
pub struct FaceSet {
    pub of_dart: Vec<usize>,
    pub start: Vec<Dart>,
    pub len: Vec<usize>,
    pub outer: usize,
}

impl FaceSet {
    pub fn count(&self) -> usize {
        self.start.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceKind {
    Triangle,
    XQuadrangle,
    Other,
    Outer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<Dart>,
    pub kind: FaceKind,
}

/// Half of an edge as referenced by the file format: `end` 0 is the `u` end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfRef(pub EdgeId, pub u8);

/// Plain description of a drawing: real edges, clockwise rotations at real
/// vertices, and for every crossing the clockwise order of its four halves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingSpec {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    pub rotations: Vec<Vec<HalfRef>>,
    #[serde(default)]
    pub crossings: Vec<[EdgeId; 2]>,
    /// Parallel to `crossings`; half `(e, end)` is the piece of `e` towards
    /// its endpoint `end`.
    #[serde(default)]
    pub crossing_rotations: Vec<[HalfRef; 4]>,
    /// The dart leaving endpoint `end` of the edge, with the outer face on its left.
    pub outer: HalfRef,
    /// Origin flags; absent means all original.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augmented: Option<Vec<bool>>,
}

/// A 1-planar drawing given by its planarization.
#[derive(Debug, Clone)]
pub struct PlanarizedDrawing {
    pub n_real: usize,
    pub edges: Vec<Edge>,
    pub crossing_pairs: Vec<(EdgeId, EdgeId)>,
    /// Planarization: vertices `0..n_real` are real, the rest are crossing dummies.
    pub plan: Embedding,
    /// Real edge owning each planarization edge.
    pub seg_owner: Vec<EdgeId>,
}

impl PlanarizedDrawing {
    pub fn is_dummy(&self, v: VertexId) -> bool {
        v >= self.n_real
    }

    pub fn dummies(&self) -> std::ops::Range<VertexId> {
        self.n_real..self.plan.n()
    }

    /// Converts back to the plain description.
    pub fn to_spec(&self) -> DrawingSpec {
        to_spec(self.n_real, &self.edges, &self.plan, &self.seg_owner)
    }
}

/// Describes a planarization as a `DrawingSpec`.
pub(crate) fn to_spec(
    n_real: usize,
    edges: &[Edge],
    plan: &Embedding,
    seg_owner: &[EdgeId],
) -> DrawingSpec {
    let end_at = |e: EdgeId, w: VertexId| -> u8 { u8::from(edges[e].u != w) };
    let rotations = (0..n_real)
        .map(|v| {
            plan.rotation(v)
                .into_iter()
                .map(|d| {
                    let e = seg_owner[edge_of(d)];
                    HalfRef(e, end_at(e, v))
                })
                .collect()
        })
        .collect();
    // A dart leaving a dummy ends at a real vertex.
    let half = |d: Dart| -> HalfRef {
        let e = seg_owner[edge_of(d)];
        HalfRef(e, end_at(e, plan.head(d)))
    };
    let mut crossings = Vec::new();
    let mut crossing_rotations = Vec::new();
    for x in n_real..plan.n() {
        let rot = plan.rotation(x);
        if rot.len() != 4 {
            continue;
        }
        let e1 = seg_owner[edge_of(rot[0])];
        let e2 = seg_owner[edge_of(rot[1])];
        crossings.push([e1, e2]);
        crossing_rotations.push([half(rot[0]), half(rot[1]), half(rot[2]), half(rot[3])]);
    }
    let outer = if plan.outer == NONE {
        HalfRef(0, 0)
    } else {
        // Walk back along the outer face to a dart leaving a real vertex.
        let mut d = plan.outer;
        while plan.tail(d) >= n_real {
            d = plan.prev(d);
        }
        let e = seg_owner[edge_of(d)];
        let end = if plan.tail(d) == edges[e].u { 0 } else { 1 };
        HalfRef(e, end)
    };
    let any_aug = edges.iter().any(|e| e.origin == Origin::Augmented);
    DrawingSpec {
        n: n_real,
        edges: edges.iter().map(|e| [e.u, e.v]).collect(),
        rotations,
        crossings,
        crossing_rotations,
        outer,
        augmented: any_aug
            .then(|| edges.iter().map(|e| e.origin == Origin::Augmented).collect()),
    }
}

/// Validates a drawing description and builds its planarization.
pub fn build_drawing(spec: &DrawingSpec) -> Result<PlanarizedDrawing> {
    let n = spec.n;
    let m = spec.edges.len();
    for (i, &[u, v]) in spec.edges.iter().enumerate() {
        if u >= n || v >= n {
            return Err(Error::NotAnEmbedding(format!("edge {i} has an endpoint out of range")));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
    }
    if spec.rotations.len() != n {
        return Err(Error::NotAnEmbedding(format!(
            "{} rotation lists for {} vertices",
            spec.rotations.len(),
            n
        )));
    }
    if spec.crossing_rotations.len() != spec.crossings.len() {
        return Err(Error::NotAnEmbedding(
            "every crossing needs its clockwise rotation".into(),
        ));
    }
    let mut crossed = vec![NONE; m];
    for (i, &[a, b]) in spec.crossings.iter().enumerate() {
        if a >= m || b >= m || a == b {
            return Err(Error::NotOnePlanar(format!("crossing {i} references bad edges")));
        }
        for e in [a, b] {
            if crossed[e] != NONE {
                return Err(Error::NotOnePlanar(format!("edge {e} is crossed more than once")));
            }
            crossed[e] = i;
        }
    }
    // Planarization edges: an uncrossed edge keeps id e; a crossed edge e is
    // split into e (u side) and an extra segment (v side).
    let n_cross = spec.crossings.len();
    let mut ends: Vec<[VertexId; 2]> = Vec::with_capacity(m + n_cross * 2);
    let mut seg_owner = Vec::with_capacity(m + 2 * n_cross);
    let mut v_seg = vec![NONE; m];
    for (e, &[u, v]) in spec.edges.iter().enumerate() {
        if crossed[e] == NONE {
            ends.push([u, v]);
        } else {
            ends.push([u, n + crossed[e]]);
        }
        seg_owner.push(e);
    }
    for (e, &[_, v]) in spec.edges.iter().enumerate() {
        if crossed[e] != NONE {
            v_seg[e] = ends.len();
            ends.push([n + crossed[e], v]);
            seg_owner.push(e);
        }
    }
    let total = n + n_cross;
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); total];
    let real_half = |h: HalfRef, at: VertexId| -> Result<Dart> {
        let HalfRef(e, end) = h;
        if e >= m || end > 1 {
            return Err(Error::NotAnEmbedding(format!("bad half reference ({e}, {end})")));
        }
        let [u, v] = spec.edges[e];
        let here = if end == 0 { u } else { v };
        if here != at {
            return Err(Error::NotAnEmbedding(format!(
                "half ({e}, {end}) listed at vertex {at} but belongs to {here}"
            )));
        }
        Ok(if end == 0 { 2 * e } else if crossed[e] == NONE { 2 * e + 1 } else { 2 * v_seg[e] + 1 })
    };
    for v in 0..n {
        for &h in &spec.rotations[v] {
            rot[v].push(real_half(h, v)?);
        }
    }
    for (i, cr) in spec.crossing_rotations.iter().enumerate() {
        let x = n + i;
        let [a, b] = spec.crossings[i];
        let mut seen = [false; 4];
        for &HalfRef(e, end) in cr {
            let slot = if e == a { 0 } else if e == b { 2 } else { NONE };
            if slot == NONE || end > 1 {
                return Err(Error::NotOnePlanar(format!(
                    "crossing {i} rotation names edge {e} outside the pair"
                )));
            }
            let s = slot + end as usize;
            if seen[s] {
                return Err(Error::NotOnePlanar(format!("crossing {i} repeats a half")));
            }
            seen[s] = true;
            // Dart leaving x toward the named endpoint.
            let d = if end == 0 { 2 * e + 1 } else { 2 * v_seg[e] };
            rot[x].push(d);
        }
        // The two pieces of each crossed edge must be opposite at the dummy.
        let own = |d: Dart| seg_owner[edge_of(d)];
        if own(rot[x][0]) != own(rot[x][2]) || own(rot[x][1]) != own(rot[x][3]) {
            return Err(Error::NotOnePlanar(format!(
                "crossing {i}: pieces of a crossed edge are not opposite"
            )));
        }
    }
    let outer = {
        let HalfRef(e, end) = spec.outer;
        if m == 0 {
            NONE
        } else if e >= m || end > 1 {
            return Err(Error::NotAnEmbedding("bad outer half reference".into()));
        } else if end == 0 {
            2 * e
        } else if crossed[e] == NONE {
            2 * e + 1
        } else {
            2 * v_seg[e] + 1
        }
    };
    let plan = Embedding::from_rotations(total, ends, &rot, outer)?;
    if !plan.is_planar_rotation() {
        return Err(Error::NotAnEmbedding("Euler's formula fails for the planarization".into()));
    }
    let edges = spec
        .edges
        .iter()
        .enumerate()
        .map(|(i, &[u, v])| {
            let aug = spec.augmented.as_ref().map(|a| a.get(i).copied().unwrap_or(false));
            Edge {
                u,
                v,
                copy_index: 0,
                origin: if aug == Some(true) { Origin::Augmented } else { Origin::Original },
            }
        })
        .collect::<Vec<_>>();
    let mut edges = edges;
    assign_copy_indices(&mut edges);
    Ok(PlanarizedDrawing {
        n_real: n,
        edges,
        crossing_pairs: spec.crossings.iter().map(|&[a, b]| (a, b)).collect(),
        plan,
        seg_owner,
    })
}

/// Numbers parallel edges 0, 1, 2, ... in order of appearance.
pub(crate) fn assign_copy_indices(edges: &mut [Edge]) {
    let mut count = std::collections::HashMap::new();
    for e in edges.iter_mut() {
        let c = count.entry(e.key()).or_insert(0u32);
        e.copy_index = *c;
        *c += 1;
    }
}

/// Faces of the planarization, classified by length.
pub fn faces(d: &PlanarizedDrawing) -> Vec<Face> {
    let fs = d.plan.faces();
    (0..fs.count())
        .map(|f| {
            let boundary = d.plan.face_darts(fs.start[f]);
            let kind = if f == fs.outer {
                FaceKind::Outer
            } else if boundary.len() == 3 {
                FaceKind::Triangle
            } else {
                FaceKind::Other
            };
            Face { boundary, kind }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::specials::generators::planar_k4;

    #[test]
    fn planar_k4_has_four_triangles() {
        let d = build_drawing(&planar_k4()).unwrap();
        let fs = faces(&d);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|f| f.boundary.len() == 3));
        assert_eq!(fs.iter().filter(|f| f.kind == FaceKind::Outer).count(), 1);
        assert!(d.crossing_pairs.is_empty());
    }

    #[test]
    fn single_edge_has_one_face() {
        let spec = DrawingSpec {
            n: 2,
            edges: vec![[0, 1]],
            rotations: vec![vec![HalfRef(0, 0)], vec![HalfRef(0, 1)]],
            crossings: vec![],
            crossing_rotations: vec![],
            outer: HalfRef(0, 0),
            augmented: None,
        };
        let d = build_drawing(&spec).unwrap();
        assert_eq!(faces(&d).len(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        let mut s = planar_k4();
        s.edges[0] = [1, 1];
        assert_eq!(build_drawing(&s).unwrap_err(), Error::SelfLoop(1));
    }

    #[test]
    fn wrong_rotation_rejected() {
        let mut s = planar_k4();
        s.rotations[3].swap(1, 2);
        assert!(matches!(build_drawing(&s), Err(Error::NotAnEmbedding(_))));
    }

    #[test]
    fn degree_three_dummy_rejected() {
        let mut s = crate::specials::generators::k4_with_crossing();
        s.crossing_rotations[0][3] = s.crossing_rotations[0][2];
        assert!(matches!(build_drawing(&s), Err(Error::NotOnePlanar(_))));
    }

    #[test]
    fn c4_with_crossed_diagonals() {
        let d = build_drawing(&crate::specials::generators::k4_with_crossing()).unwrap();
        assert_eq!(d.crossing_pairs, vec![(4, 5)]);
        let fs = faces(&d);
        assert_eq!(fs.len(), 5);
        let outer = fs.iter().find(|f| f.kind == FaceKind::Outer).unwrap();
        assert_eq!(outer.boundary.len(), 4);
        assert_eq!(fs.iter().filter(|f| f.kind == FaceKind::Triangle).count(), 4);
    }

    #[test]
    fn spec_round_trip() {
        let s = crate::specials::generators::k4_with_crossing();
        let d = build_drawing(&s).unwrap();
        let back = build_drawing(&d.to_spec()).unwrap();
        assert_eq!(back.edges, d.edges);
        assert_eq!(faces(&back).len(), faces(&d).len());
    }

    #[test]
    fn insert_and_remove_keep_faces_consistent() {
        let mut emb = build_drawing(&planar_k4()).unwrap().plan;
        let fs = emb.faces();
        let outer = fs.start[fs.outer];
        // Chord from 0 to itself is not allowed, so add a parallel outer edge 0-1.
        let d01 = outer;
        let at1 = emb.next(d01);
        let e = emb.insert_edge(at1, d01);
        assert!(emb.is_planar_rotation());
        assert_eq!(emb.faces().count(), 5);
        emb.remove_edge(e);
        assert!(emb.is_planar_rotation());
        assert_eq!(emb.faces().count(), 4);
    }

    #[test]
    fn subdivide_keeps_planarity() {
        let mut emb = build_drawing(&planar_k4()).unwrap().plan;
        let (x, _) = emb.subdivide(3);
        assert_eq!(emb.degree(x), 2);
        assert!(emb.is_planar_rotation());
        assert_eq!(emb.faces().count(), 4);
    }
}
