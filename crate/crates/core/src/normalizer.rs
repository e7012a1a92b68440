//! Brings a 1-planar drawing into normal form.
//!
//! The result satisfies: every bounded face of the planarization is a
//! triangle, the four endpoints of each crossing span a kite, the outer face
//! is a simple cycle free of crossings, and every parallel copy of an edge is
//! uncrossed.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_model::{
    build_drawing, edge_of, to_spec, twin, Color, Dart, DrawingSpec, Edge, EdgeId, Embedding,
    Face, FaceKind, Origin, PlanarizedDrawing, VertexId, NONE,
};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NormalizeStats {
    pub rerouted: usize,
    pub reroute_iterations: usize,
    pub outer_copies: usize,
    pub kite_edges: usize,
    pub kite_outer_copies: usize,
    pub triangulation_chords: usize,
    pub triangulation_copies: usize,
    pub outer_chords: usize,
}

impl NormalizeStats {
    pub fn added(&self) -> usize {
        self.outer_copies
            + self.kite_edges
            + self.kite_outer_copies
            + self.triangulation_chords
            + self.triangulation_copies
            + self.outer_chords
    }
}

/// A drawing together with its crossing bookkeeping.
#[derive(Debug, Clone)]
pub struct NormalizedMultigraph {
    pub drawing: PlanarizedDrawing,
    /// Edge crossing each edge, if any.
    pub partner: Vec<Option<EdgeId>>,
    /// Planarization edges of each real edge; the second is `NONE` when uncrossed.
    pub segments: Vec<[usize; 2]>,
    pub color: Vec<Color>,
    pub stats: NormalizeStats,
}

impl NormalizedMultigraph {
    /// Wraps a drawing without changing it.
    pub fn from_drawing(drawing: PlanarizedDrawing) -> Self {
        let m = drawing.edges.len();
        let mut partner = vec![None; m];
        for &(a, b) in &drawing.crossing_pairs {
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        let mut segments = vec![[NONE, NONE]; m];
        for s in drawing.plan.live_edges() {
            let e = drawing.seg_owner[s];
            if segments[e][0] == NONE {
                segments[e][0] = s;
            } else {
                segments[e][1] = s;
            }
        }
        let color = partner
            .iter()
            .map(|p| if p.is_some() { Color::Uncolored } else { Color::Black })
            .collect();
        NormalizedMultigraph { drawing, partner, segments, color, stats: NormalizeStats::default() }
    }

    pub fn n(&self) -> usize {
        self.drawing.n_real
    }

    pub fn edges(&self) -> &[Edge] {
        &self.drawing.edges
    }

    pub fn m(&self) -> usize {
        self.drawing.edges.len()
    }

    pub fn crossing_pairs(&self) -> &[(EdgeId, EdgeId)] {
        &self.drawing.crossing_pairs
    }

    pub fn plan(&self) -> &Embedding {
        &self.drawing.plan
    }

    pub fn is_crossed(&self, e: EdgeId) -> bool {
        self.partner[e].is_some()
    }

    /// Dummy vertex of crossing `i`.
    pub fn dummy(&self, i: usize) -> VertexId {
        self.drawing.n_real + i
    }

    pub fn to_spec(&self) -> DrawingSpec {
        self.drawing.to_spec()
    }

    pub fn faces(&self) -> Vec<Face> {
        crate::graph_model::faces(&self.drawing)
    }
}

/// Normalizes a drawing. Drawings with fewer than three vertices are returned unchanged.
pub fn normalize(spec: &DrawingSpec) -> Result<NormalizedMultigraph> {
    let d = build_drawing(spec)?;
    let n = d.n_real;
    if n < 3 {
        if n == 2 && d.edges.is_empty() {
            return Err(Error::Disconnected(2));
        }
        return Ok(NormalizedMultigraph::from_drawing(d));
    }
    let (comps, isolated) = d.plan.component_count();
    if comps + isolated > 1 {
        return Err(Error::Disconnected(comps + isolated));
    }
    let mut w = Work::new(d);
    w.reroute_pass();
    w.outer_copy_pass();
    w.kite_pass();
    w.triangulate_pass();
    w.outer_cycle_pass();
    w.finish()
}

struct Work {
    n: usize,
    plan: Embedding,
    owner: Vec<EdgeId>,
    edges: Vec<Edge>,
    /// Dummy of each real edge, `NONE` if uncrossed.
    dummy: Vec<VertexId>,
    mult: HashMap<(VertexId, VertexId), usize>,
    stats: NormalizeStats,
}

impl Work {
    fn new(d: PlanarizedDrawing) -> Self {
        let mut dummy = vec![NONE; d.edges.len()];
        for s in d.plan.live_edges() {
            for v in d.plan.ends(s) {
                if v >= d.n_real {
                    dummy[d.seg_owner[s]] = v;
                }
            }
        }
        let mut mult = HashMap::new();
        for e in &d.edges {
            *mult.entry(e.key()).or_insert(0) += 1;
        }
        Work {
            n: d.n_real,
            plan: d.plan,
            owner: d.seg_owner,
            edges: d.edges,
            dummy,
            mult,
            stats: NormalizeStats::default(),
        }
    }

    fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.mult.get(&(a.min(b), a.max(b))).copied().unwrap_or(0) > 0
    }

    /// Adds a real uncrossed edge through the corners before `cu` and `cv`.
    fn add_edge(&mut self, cu: Dart, cv: Dart) -> EdgeId {
        let s = self.plan.insert_edge(cu, cv);
        let [u, v] = self.plan.ends(s);
        let e = self.edges.len();
        self.edges.push(Edge { u, v, copy_index: 0, origin: Origin::Augmented });
        self.dummy.push(NONE);
        *self.mult.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        debug_assert_eq!(self.owner.len(), s);
        self.owner.push(e);
        e
    }

    /// Crossings ordered by their smaller edge id, as `(dummy, [smaller, larger])`.
    fn crossings(&self) -> Vec<(VertexId, [EdgeId; 2])> {
        let mut out = Vec::new();
        for x in self.n..self.plan.n() {
            if self.plan.degree(x) != 4 {
                continue;
            }
            let r = self.plan.rotation(x);
            let a = self.owner[edge_of(r[0])];
            let b = self.owner[edge_of(r[1])];
            out.push((x, [a.min(b), a.max(b)]));
        }
        out.sort_by_key(|c| c.1);
        out
    }

    fn faces_at(&self, v: VertexId, of_dart: &[usize]) -> HashSet<usize> {
        self.plan.rotation(v).into_iter().map(|d| of_dart[d]).collect()
    }

    fn reroute_pass(&mut self) {
        loop {
            self.stats.reroute_iterations += 1;
            let fs = self.plan.faces();
            let at: Vec<HashSet<usize>> = (0..self.n).map(|v| self.faces_at(v, &fs.of_dart)).collect();
            let mut target = None;
            'scan: for (_, pair) in self.crossings() {
                for e in pair {
                    let Edge { u, v, .. } = self.edges[e];
                    if self.mult[&self.edges[e].key()] > 1 {
                        continue;
                    }
                    let (small, big) =
                        if at[u].len() <= at[v].len() { (&at[u], &at[v]) } else { (&at[v], &at[u]) };
                    if small.iter().any(|f| *f != fs.outer && big.contains(f)) {
                        target = Some(e);
                        break 'scan;
                    }
                }
            }
            match target {
                Some(e) => {
                    self.reroute(e);
                    self.stats.rerouted += 1;
                }
                None => break,
            }
        }
    }

    /// Removes the crossing of `e` and redraws `e` through a face holding both ends.
    fn reroute(&mut self, e: EdgeId) {
        let x = self.dummy[e];
        for d in self.plan.rotation(x) {
            if self.owner[edge_of(d)] == e {
                self.plan.remove_edge(edge_of(d));
            }
        }
        let rest = self.plan.rotation(x);
        debug_assert_eq!(rest.len(), 2);
        let f = self.owner[edge_of(rest[0])];
        self.smooth(x, f);
        self.dummy[e] = NONE;
        self.dummy[f] = NONE;

        let Edge { u, v, .. } = self.edges[e];
        let fs = self.plan.faces();
        let pick = |w: VertexId, face: usize| {
            self.plan.rotation(w).into_iter().find(|&d| fs.of_dart[d] == face)
        };
        let fu = self.faces_at(u, &fs.of_dart);
        let fv = self.faces_at(v, &fs.of_dart);
        let mut common: Vec<usize> = fu.intersection(&fv).copied().collect();
        common.sort_by_key(|&f| (f == fs.outer, f));
        let s = if let Some(&face) = common.first() {
            let (cu, cv) = (pick(u, face).unwrap(), pick(v, face).unwrap());
            self.plan.insert_edge(cu, cv)
        } else if self.plan.degree(u) == 0 {
            let cv = self.plan.first_dart(v).unwrap();
            self.plan.attach_pendant(u, cv)
        } else {
            let cu = self.plan.first_dart(u).unwrap();
            self.plan.attach_pendant(v, cu)
        };
        self.owner.push(e);
        debug_assert_eq!(self.owner.len(), s + 1);
    }

    /// Replaces the two segments of `f` at the degree-2 dummy `x` by one edge.
    fn smooth(&mut self, x: VertexId, f: EdgeId) {
        let r = self.plan.rotation(x);
        let (b, d) = (self.plan.head(r[0]), self.plan.head(r[1]));
        let corner = |p: &Embedding, dart: Dart| {
            let c = p.cw(twin(dart));
            (c != twin(dart)).then_some(c)
        };
        let cb = corner(&self.plan, r[0]);
        let cd = corner(&self.plan, r[1]);
        self.plan.remove_edge(edge_of(r[0]));
        self.plan.remove_edge(edge_of(r[1]));
        let s = match (cb, cd) {
            (Some(cb), Some(cd)) => {
                if self.edges[f].u == b {
                    self.plan.insert_edge(cb, cd)
                } else {
                    self.plan.insert_edge(cd, cb)
                }
            }
            (None, Some(cd)) => self.plan.attach_pendant(b, cd),
            (Some(cb), None) => self.plan.attach_pendant(d, cb),
            (None, None) => self.plan.add_lone_edge(b, d),
        };
        self.owner.push(f);
        debug_assert_eq!(self.owner.len(), s + 1);
    }

    /// A crossed edge whose endpoints meet only on the outer face gets an
    /// uncrossed copy drawn there.
    fn outer_copy_pass(&mut self) {
        let corners = |p: &Embedding| {
            let mut first: HashMap<VertexId, Dart> = HashMap::new();
            for d in p.face_darts(p.outer) {
                first.entry(p.tail(d)).or_insert(d);
            }
            first
        };
        let mut outer = corners(&self.plan);
        for (_, pair) in self.crossings() {
            for e in pair {
                if self.mult[&self.edges[e].key()] > 1 {
                    continue;
                }
                let Edge { u, v, .. } = self.edges[e];
                if let (Some(&cu), Some(&cv)) = (outer.get(&u), outer.get(&v)) {
                    self.add_edge(cu, cv);
                    outer = corners(&self.plan);
                    self.stats.outer_copies += 1;
                    break;
                }
            }
        }
    }

    /// Closes every sector at a crossing into a triangle.
    fn kite_pass(&mut self) {
        for x in self.n..self.plan.n() {
            if self.plan.degree(x) != 4 {
                continue;
            }
            let r = self.plan.rotation(x);
            for i in 0..4 {
                let (ri, rp) = (r[i], r[(i + 3) % 4]);
                let (a, b) = (self.plan.head(ri), self.plan.head(rp));
                if a == b {
                    continue;
                }
                let face = self.plan.face_darts(ri);
                let on_outer = face.contains(&self.plan.outer);
                if face.len() == 3 && !on_outer {
                    continue;
                }
                let e = self.add_edge(self.plan.next(ri), twin(rp));
                if on_outer {
                    self.plan.outer = 2 * self.segment_of_new(e) + 1;
                    self.stats.kite_outer_copies += 1;
                } else {
                    self.stats.kite_edges += 1;
                }
            }
        }
    }

    fn segment_of_new(&self, e: EdgeId) -> usize {
        let s = self.owner.len() - 1;
        debug_assert_eq!(self.owner[s], e);
        s
    }

    fn triangulate_pass(&mut self) {
        let fs = self.plan.faces();
        let mut work: Vec<Vec<Dart>> = (0..fs.count())
            .filter(|&f| f != fs.outer && fs.len[f] > 3)
            .map(|f| {
                let mut ds = self.plan.face_darts(fs.start[f]);
                let k = ds.iter().enumerate().min_by_key(|(_, d)| **d).unwrap().0;
                ds.rotate_left(k);
                ds
            })
            .filter(|ds| ds.iter().all(|&d| self.plan.tail(d) < self.n))
            .collect();
        while let Some(face) = work.pop() {
            let k = face.len();
            if k <= 3 {
                continue;
            }
            let vs: Vec<VertexId> = face.iter().map(|&d| self.plan.tail(d)).collect();
            let candidates = |allow_copy: bool| {
                for i in 0..k {
                    for j in i + 2..k {
                        if i == 0 && j == k - 1 {
                            continue;
                        }
                        if vs[i] != vs[j] && (allow_copy || !self.adjacent(vs[i], vs[j])) {
                            return Some((i, j));
                        }
                    }
                }
                None
            };
            let (i, j, copy) = match candidates(false) {
                Some((i, j)) => (i, j, false),
                None => match candidates(true) {
                    Some((i, j)) => (i, j, true),
                    None => continue,
                },
            };
            let e = self.add_edge(face[i], face[j]);
            let s = self.segment_of_new(e);
            if copy {
                self.stats.triangulation_copies += 1;
            } else {
                self.stats.triangulation_chords += 1;
            }
            let mut a = vec![2 * s];
            a.extend_from_slice(&face[j..]);
            a.extend_from_slice(&face[..i]);
            let mut b = vec![2 * s + 1];
            b.extend_from_slice(&face[i..j]);
            work.push(a);
            work.push(b);
        }
    }

    /// Cuts repeated vertices off the outer face until it is a simple cycle.
    fn outer_cycle_pass(&mut self) {
        loop {
            let outer = self.plan.face_darts(self.plan.outer);
            let k = outer.len();
            let vs: Vec<VertexId> = outer.iter().map(|&d| self.plan.tail(d)).collect();
            let mut count: HashMap<VertexId, usize> = HashMap::new();
            for &v in &vs {
                *count.entry(v).or_insert(0) += 1;
            }
            let pos = (0..k).find(|&i| {
                count[&vs[i]] > 1 && vs[(i + k - 1) % k] != vs[(i + 1) % k]
            });
            let Some(i) = pos else { break };
            let before = outer[(i + k - 1) % k];
            let after = outer[(i + 1) % k];
            let e = self.add_edge(before, after);
            let s = self.segment_of_new(e);
            self.plan.outer = 2 * s;
            self.stats.outer_chords += 1;
        }
    }

    fn finish(self) -> Result<NormalizedMultigraph> {
        let spec = to_spec(self.n, &self.edges, &self.plan, &self.owner);
        let mut d = build_drawing(&spec)?;
        for p in d.crossing_pairs.iter_mut() {
            *p = (p.0.min(p.1), p.0.max(p.1));
        }
        nesting_copy_indices(&mut d);
        let mut g = NormalizedMultigraph::from_drawing(d);
        g.stats = self.stats;
        Ok(g)
    }
}

/// Numbers the copies of each multi-edge in clockwise order around the
/// smaller endpoint, starting from the least original copy.
fn nesting_copy_indices(d: &mut PlanarizedDrawing) {
    let mut groups: HashMap<(VertexId, VertexId), Vec<EdgeId>> = HashMap::new();
    for u in 0..d.n_real {
        for dart in d.plan.rotation(u) {
            let e = d.seg_owner[edge_of(dart)];
            let key = d.edges[e].key();
            if key.0 == u {
                groups.entry(key).or_default().push(e);
            }
        }
    }
    for (_, mut list) in groups {
        let start = list
            .iter()
            .enumerate()
            .min_by_key(|(_, &e)| (d.edges[e].origin != Origin::Original, e))
            .map(|(i, _)| i)
            .unwrap_or(0);
        list.rotate_left(start);
        for (i, e) in list.into_iter().enumerate() {
            d.edges[e].copy_index = i as u32;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    FaceSize { first_dart: Dart, len: usize },
    EmptyLens { first_dart: Dart },
    CrossedCopy(EdgeId),
    CrossingOnOuterFace(VertexId),
    OuterNotSimple(VertexId),
    AdjacentCrossing(VertexId),
    TooManyEdges { m: usize, bound: usize },
    Disconnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FaceSize { first_dart, len } => {
                write!(f, "face of size {len} at dart {first_dart}")
            }
            Violation::EmptyLens { first_dart } => write!(f, "empty lens at dart {first_dart}"),
            Violation::CrossedCopy(e) => write!(f, "crossed copy: edge {e}"),
            Violation::CrossingOnOuterFace(x) => write!(f, "crossing {x} on the outer face"),
            Violation::OuterNotSimple(v) => write!(f, "outer face repeats vertex {v}"),
            Violation::AdjacentCrossing(x) => write!(f, "crossing {x} joins adjacent edges"),
            Violation::TooManyEdges { m, bound } => {
                write!(f, "{m} edges exceed the bound {bound}")
            }
            Violation::Disconnected => write!(f, "disconnected"),
        }
    }
}

/// Lists every way the drawing falls short of normal form.
pub fn check_normal_form(g: &NormalizedMultigraph) -> Vec<Violation> {
    let d = &g.drawing;
    let n = d.n_real;
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let (c, iso) = d.plan.component_count();
    if c + iso > 1 {
        out.push(Violation::Disconnected);
    }
    let fs = d.plan.faces();
    for f in 0..fs.count() {
        let start = fs.start[f];
        let darts = d.plan.face_darts(start);
        if f == fs.outer {
            let mut seen = HashSet::new();
            for &x in &darts {
                let v = d.plan.tail(x);
                if v >= n {
                    out.push(Violation::CrossingOnOuterFace(v));
                } else if !seen.insert(v) {
                    out.push(Violation::OuterNotSimple(v));
                }
            }
        } else if fs.len[f] == 2 {
            out.push(Violation::EmptyLens { first_dart: start });
        } else if fs.len[f] != 3 {
            out.push(Violation::FaceSize { first_dart: start, len: fs.len[f] });
        }
    }
    for x in d.dummies() {
        if d.plan.degree(x) != 4 {
            continue;
        }
        let r = d.plan.rotation(x);
        let ends: HashSet<VertexId> = r.iter().map(|&y| d.plan.head(y)).collect();
        if ends.len() < 4 {
            out.push(Violation::AdjacentCrossing(x));
        }
    }
    for (e, edge) in d.edges.iter().enumerate() {
        if edge.copy_index > 0 && g.partner[e].is_some() {
            out.push(Violation::CrossedCopy(e));
        }
    }
    let bound = 4 * n - 7;
    if d.edges.len() > bound {
        out.push(Violation::TooManyEdges { m: d.edges.len(), bound });
    }
    out
}

/// Planar skeleton: the uncrossed edges with the induced embedding.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub emb: Embedding,
    /// Real edge of each skeleton edge.
    pub real_edge: Vec<EdgeId>,
    /// Skeleton edge of each real edge, `NONE` for crossed edges.
    pub skel_edge: Vec<usize>,
    /// Per crossing, a skeleton dart whose left face is the kite around it.
    pub kite: Vec<Dart>,
}

impl Skeleton {
    pub fn n(&self) -> usize {
        self.emb.n()
    }

    /// Kind of every skeleton face, indexed like `emb.faces()`.
    pub fn face_kinds(&self) -> Vec<FaceKind> {
        let fs = self.emb.faces();
        let kites: HashSet<usize> = self.kite.iter().map(|&d| fs.of_dart[d]).collect();
        (0..fs.count())
            .map(|f| {
                if f == fs.outer {
                    FaceKind::Outer
                } else if kites.contains(&f) {
                    FaceKind::XQuadrangle
                } else if fs.len[f] == 3 {
                    FaceKind::Triangle
                } else {
                    FaceKind::Other
                }
            })
            .collect()
    }
}

/// Extracts the skeleton of a normalized drawing.
pub fn planar_skeleton(g: &NormalizedMultigraph) -> Result<Skeleton> {
    let bad = check_normal_form(g);
    if let Some(v) = bad.first() {
        return Err(Error::NotNormalized(v.to_string()));
    }
    let d = &g.drawing;
    let n = d.n_real;
    let m = d.edges.len();
    let mut skel_edge = vec![NONE; m];
    let mut real_edge = Vec::new();
    let mut ends = Vec::new();
    for e in 0..m {
        if g.partner[e].is_none() {
            skel_edge[e] = real_edge.len();
            real_edge.push(e);
            ends.push(d.plan.ends(g.segments[e][0]));
        }
    }
    let map = |x: Dart| -> Dart { 2 * skel_edge[d.seg_owner[edge_of(x)]] + (x & 1) };
    let rot: Vec<Vec<Dart>> = (0..n)
        .map(|v| {
            d.plan
                .rotation(v)
                .into_iter()
                .filter(|&x| g.partner[d.seg_owner[edge_of(x)]].is_none())
                .map(map)
                .collect()
        })
        .collect();
    let outer = if d.plan.outer == NONE { NONE } else { map(d.plan.outer) };
    let emb = Embedding::from_rotations(n, ends, &rot, outer)?;
    let kite = d
        .dummies()
        .map(|x| {
            let r0 = d.plan.rotation(x)[0];
            map(d.plan.next(r0))
        })
        .collect();
    Ok(Skeleton { emb, real_edge, skel_edge, kite })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specials::generators::{
        gen_normalized_1planar, gen_planar_triangulation, gen_xw, k4_with_crossing, octahedron,
        planar_k4,
    };

    fn assert_normal(g: &NormalizedMultigraph) {
        let v = check_normal_form(g);
        assert!(v.is_empty(), "{:?}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }

    #[test]
    fn c4_with_crossed_diagonals_gains_outer_copy() {
        let g = normalize(&k4_with_crossing()).unwrap();
        assert_eq!(g.m(), 7);
        assert_eq!(g.stats.outer_copies, 1);
        assert_eq!(g.crossing_pairs().len(), 1);
        assert_normal(&g);
        let sk = planar_skeleton(&g).unwrap();
        assert_eq!(sk.emb.live_edge_count(), 5);
    }

    #[test]
    fn planar_k4_is_already_normal() {
        let g = normalize(&planar_k4()).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(g.stats.added(), 0);
        assert_normal(&g);
    }

    #[test]
    fn xw6_gains_one_outer_copy() {
        let g = normalize(&gen_xw(3).unwrap()).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 25);
        assert_eq!(g.m(), 4 * g.n() - 7);
        assert_eq!(g.stats.kite_outer_copies, 1);
        assert_normal(&g);
        let outer = g.plan().face_darts(g.plan().outer);
        assert_eq!(outer.len(), 2);
        let sk = planar_skeleton(&g).unwrap();
        assert_eq!(sk.emb.live_edge_count(), 13);
    }

    #[test]
    fn octahedron_unchanged() {
        let g = normalize(&octahedron()).unwrap();
        assert_eq!(g.m(), 12);
        assert_normal(&g);
    }

    #[test]
    fn single_crossing_rerouted_through_interior_face() {
        // Square 0..3 with crossing diagonals inside a triangle 5, 6, 7; the
        // face left of the square holds both ends of diagonal 0-2.
        let pts = [
            (0.0, 0.0),
            (4.0, 0.0),
            (4.0, 4.0),
            (0.0, 4.0),
            (2.0, 6.0),
            (-10.0, -5.0),
            (14.0, -5.0),
            (2.0, 20.0),
        ];
        let edges = [
            [0, 1],
            [1, 2],
            [3, 0],
            [0, 2],
            [1, 3],
            [2, 4],
            [4, 3],
            [5, 6],
            [6, 7],
            [7, 5],
            [7, 4],
            [5, 3],
            [6, 2],
        ];
        let spec = crate::specials::generators::straight_line(&pts, &edges);
        assert_eq!(spec.crossings.len(), 1);
        let g = normalize(&spec).unwrap();
        assert_normal(&g);
        assert_eq!(g.stats.rerouted, 1);
        assert!(g.crossing_pairs().is_empty());
        assert!(g.m() <= 4 * g.n() - 7);
    }

    #[test]
    fn skeleton_kites_are_quadrangles() {
        let g = normalize(&gen_xw(4).unwrap()).unwrap();
        let sk = planar_skeleton(&g).unwrap();
        let fs = sk.emb.faces();
        for &k in &sk.kite {
            assert_eq!(fs.len[fs.of_dart[k]], 4);
        }
        let kinds = sk.face_kinds();
        assert_eq!(kinds.iter().filter(|k| **k == FaceKind::XQuadrangle).count(), 8);
    }

    #[test]
    fn disconnected_rejected() {
        let spec = crate::specials::generators::straight_line(
            &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (5.0, 5.0)],
            &[[0, 1], [1, 2], [2, 0]],
        );
        assert!(matches!(normalize(&spec), Err(Error::Disconnected(2))));
    }

    #[test]
    fn skeleton_rejects_unnormalized() {
        let square = crate::specials::generators::straight_line(
            &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
            &[[0, 1], [1, 2], [2, 3], [3, 0]],
        );
        let g = NormalizedMultigraph::from_drawing(build_drawing(&square).unwrap());
        assert!(matches!(planar_skeleton(&g), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn path_is_completed() {
        let spec = crate::specials::generators::straight_line(
            &[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 1.0)],
            &[[0, 1], [1, 2], [2, 3]],
        );
        let g = normalize(&spec).unwrap();
        assert_normal(&g);
        assert!(g.plan().is_planar_rotation());
    }

    #[test]
    fn random_inputs_normalize_idempotently() {
        for seed in 0..8 {
            let spec = gen_normalized_1planar(20, seed).unwrap();
            let g = normalize(&spec).unwrap();
            assert_normal(&g);
            assert!(g.m() <= 4 * g.n() - 7);
            let again = normalize(&g.to_spec()).unwrap();
            assert_eq!(again.m(), g.m());
            assert_eq!(again.stats.added() + again.stats.rerouted, 0);
        }
        for seed in 0..4 {
            let g = normalize(&gen_planar_triangulation(15, seed).unwrap()).unwrap();
            assert_eq!(g.stats.added(), 0);
        }
    }
}
