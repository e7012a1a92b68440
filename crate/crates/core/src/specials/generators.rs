//! Instance generators: extended wheels, fixed fixtures, random planar
//! triangulations and random normalized 1-planar drawings.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_model::{
    build_drawing, edge_of, to_spec, twin, DrawingSpec, Edge, Embedding, HalfRef,
    PlanarizedDrawing,
};

/// Drawing from straight-line coordinates. Every edge may cross at most one
/// other edge; crossing points become dummies.
pub fn straight_line(points: &[(f64, f64)], edges: &[[usize; 2]]) -> DrawingSpec {
    let n = points.len();
    let m = edges.len();
    let mut crossings = Vec::new();
    let mut cross_point = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if let Some(p) = segment_cross(points, edges[i], edges[j]) {
                crossings.push([i, j]);
                cross_point.push(p);
            }
        }
    }
    let angle = |from: (f64, f64), to: (f64, f64)| (to.1 - from.1).atan2(to.0 - from.0);
    let mut rotations: Vec<Vec<(f64, HalfRef)>> = vec![Vec::new(); n];
    for (e, &[u, v]) in edges.iter().enumerate() {
        rotations[u].push((angle(points[u], points[v]), HalfRef(e, 0)));
        rotations[v].push((angle(points[v], points[u]), HalfRef(e, 1)));
    }
    let by_angle_desc =
        |a: &(f64, HalfRef), b: &(f64, HalfRef)| b.0.partial_cmp(&a.0).expect("finite angle");
    for r in &mut rotations {
        r.sort_by(by_angle_desc);
    }
    let crossing_rotations = crossings
        .iter()
        .zip(&cross_point)
        .map(|(&[a, b], &p)| {
            let mut r: Vec<(f64, HalfRef)> = [(a, 0u8), (a, 1), (b, 0), (b, 1)]
                .into_iter()
                .map(|(e, end)| (angle(p, points[edges[e][end as usize]]), HalfRef(e, end)))
                .collect();
            r.sort_by(by_angle_desc);
            [r[0].1, r[1].1, r[2].1, r[3].1]
        })
        .collect();
    let left = (0..n)
        .filter(|&v| !rotations[v].is_empty())
        .min_by(|&a, &b| {
            (points[a].0, points[a].1).partial_cmp(&(points[b].0, points[b].1)).expect("finite")
        })
        .unwrap_or(0);
    let outer = rotations[left].first().map(|x| x.1).unwrap_or(HalfRef(0, 0));
    DrawingSpec {
        n,
        edges: edges.to_vec(),
        rotations: rotations.into_iter().map(|r| r.into_iter().map(|x| x.1).collect()).collect(),
        crossings,
        crossing_rotations,
        outer,
        augmented: None,
    }
}

fn segment_cross(p: &[(f64, f64)], a: [usize; 2], b: [usize; 2]) -> Option<(f64, f64)> {
    if a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1] {
        return None;
    }
    let (p1, p2, p3, p4) = (p[a[0]], p[a[1]], p[b[0]], p[b[1]]);
    let d = (p2.0 - p1.0) * (p4.1 - p3.1) - (p2.1 - p1.1) * (p4.0 - p3.0);
    if d.abs() < 1e-12 {
        return None;
    }
    let t = ((p3.0 - p1.0) * (p4.1 - p3.1) - (p3.1 - p1.1) * (p4.0 - p3.0)) / d;
    let s = ((p3.0 - p1.0) * (p2.1 - p1.1) - (p3.1 - p1.1) * (p2.0 - p1.0)) / d;
    let eps = 1e-9;
    (t > eps && t < 1.0 - eps && s > eps && s < 1.0 - eps)
        .then(|| (p1.0 + t * (p2.0 - p1.0), p1.1 + t * (p2.1 - p1.1)))
}

fn polar(r: f64, deg: f64) -> (f64, f64) {
    let a = deg.to_radians();
    (r * a.cos(), r * a.sin())
}

/// K4 drawn planar: outer triangle 0, 1, 2 clockwise with centre 3.
pub fn planar_k4() -> DrawingSpec {
    let pts = [polar(10.0, 90.0), polar(10.0, -30.0), polar(10.0, 210.0), (0.0, 0.0)];
    straight_line(&pts, &[[0, 1], [1, 2], [2, 0], [3, 0], [3, 1], [3, 2]])
}

/// The 4-cycle 0, 1, 2, 3 (clockwise) with crossing diagonals 0-2 and 1-3.
pub fn k4_with_crossing() -> DrawingSpec {
    let pts = [(-1.0, 1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)];
    straight_line(&pts, &[[0, 1], [1, 2], [2, 3], [3, 0], [0, 2], [1, 3]])
}

/// Octahedron: outer triangle 0, 1, 2 clockwise, inner triangle 3, 4, 5.
pub fn octahedron() -> DrawingSpec {
    let pts = [
        polar(10.0, 90.0),
        polar(10.0, -30.0),
        polar(10.0, 210.0),
        polar(3.0, 150.0),
        polar(3.0, 270.0),
        polar(3.0, 30.0),
    ];
    let edges = [
        [0, 1],
        [1, 2],
        [2, 0],
        [3, 4],
        [4, 5],
        [5, 3],
        [0, 3],
        [0, 5],
        [1, 5],
        [1, 4],
        [2, 4],
        [2, 3],
    ];
    straight_line(&pts, &edges)
}

/// Icosahedron drawn as three nested layers (3, 6, 3 vertices).
pub fn icosahedron() -> DrawingSpec {
    let mut pts = vec![polar(10.0, 90.0), polar(10.0, -30.0), polar(10.0, 210.0)];
    // Middle ring m0..m5 at 90, 150, 210, 270, 330, 30 degrees.
    for j in 0..6 {
        pts.push(polar(4.0, 90.0 + 60.0 * j as f64));
    }
    // Inner triangle at 30, 150, 270 degrees.
    for deg in [30.0, 150.0, 270.0] {
        pts.push(polar(1.5, deg));
    }
    let m = |j: usize| 3 + (j % 6);
    let (oa, ob, oc) = (0, 2, 1);
    let (i0, i1, i2) = (9, 10, 11);
    let mut edges = vec![[0, 1], [1, 2], [2, 0]];
    for j in 0..6 {
        edges.push([m(j), m(j + 1)]);
    }
    edges.extend([
        [oa, m(5)],
        [oa, m(0)],
        [oa, m(1)],
        [ob, m(1)],
        [ob, m(2)],
        [ob, m(3)],
        [oc, m(3)],
        [oc, m(4)],
        [oc, m(5)],
        [i0, i1],
        [i1, i2],
        [i2, i0],
        [i0, m(5)],
        [i0, m(0)],
        [i0, m(4)],
        [i1, m(1)],
        [i1, m(0)],
        [i1, m(2)],
        [i2, m(3)],
        [i2, m(2)],
        [i2, m(4)],
    ]);
    straight_line(&pts, &edges)
}

/// Vertex ids of the extended wheel: poles first, then the rim.
pub fn xw_pole_p() -> usize {
    0
}

pub fn xw_pole_q() -> usize {
    1
}

/// Rim vertex `v_i` for `i` in `1..=2k`.
pub fn xw_rim(k: usize, i: usize) -> usize {
    1 + ((i + 2 * k - 1) % (2 * k)) + 1
}

/// Extended wheel graph with rim `v_1..v_2k` and poles `p`, `q`. Chord
/// `v_i v_{i+2}` runs inside the rim for even `i` and outside for odd `i`.
pub fn gen_xw(k: usize) -> Result<DrawingSpec> {
    if k < 3 {
        return Err(Error::BadParameter(format!("extended wheel needs k >= 3, got {k}")));
    }
    let r = 2 * k;
    let v = |i: usize| xw_rim(k, i);
    let (p, q) = (xw_pole_p(), xw_pole_q());
    let mut edges: Vec<[usize; 2]> = Vec::with_capacity(4 * r);
    // Rim edge v_i v_{i+1} has id i-1.
    for i in 1..=r {
        edges.push([v(i), v(i + 1)]);
    }
    // Spoke p v_i has id r + i - 1; spoke q v_i has id 2r + i - 1.
    for i in 1..=r {
        edges.push([p, v(i)]);
    }
    for i in 1..=r {
        edges.push([q, v(i)]);
    }
    // Chord v_i v_{i+2} has id 3r + i - 1.
    for i in 1..=r {
        edges.push([v(i), v(i + 2)]);
    }
    let idx = |i: usize| (i + r - 1) % r + 1;
    let rim = |i: usize| idx(i) - 1;
    let sp = |i: usize| r + idx(i) - 1;
    let sq = |i: usize| 2 * r + idx(i) - 1;
    let ch = |i: usize| 3 * r + idx(i) - 1;
    let n = r + 2;
    let mut rotations = vec![Vec::new(); n];
    rotations[p] = (1..=r).map(|i| HalfRef(sp(i), 0)).collect();
    rotations[q] = std::iter::once(1)
        .chain((2..=r).rev())
        .map(|i| HalfRef(sq(i), 0))
        .collect();
    for j in 1..=r {
        let next = HalfRef(rim(j), 0);
        let prev = HalfRef(rim(j + r - 1), 1);
        let rot = if j % 2 == 0 {
            vec![
                HalfRef(sq(j), 1),
                next,
                HalfRef(ch(j), 0),
                HalfRef(sp(j), 1),
                HalfRef(ch(j + r - 2), 1),
                prev,
            ]
        } else {
            vec![
                HalfRef(sq(j), 1),
                HalfRef(ch(j), 0),
                next,
                HalfRef(sp(j), 1),
                prev,
                HalfRef(ch(j + r - 2), 1),
            ]
        };
        rotations[v(j)] = rot;
    }
    let mut crossings = Vec::with_capacity(r);
    let mut crossing_rotations = Vec::with_capacity(r);
    for j in 1..=r {
        // The chord from v_{j-1} to v_{j+1} is chord j-1.
        let c = ch(j + r - 1);
        if j % 2 == 1 {
            crossings.push([sp(j), c]);
            crossing_rotations.push([
                HalfRef(sp(j), 1),
                HalfRef(c, 1),
                HalfRef(sp(j), 0),
                HalfRef(c, 0),
            ]);
        } else {
            crossings.push([sq(j), c]);
            crossing_rotations.push([
                HalfRef(sq(j), 0),
                HalfRef(c, 1),
                HalfRef(sq(j), 1),
                HalfRef(c, 0),
            ]);
        }
    }
    Ok(DrawingSpec {
        n,
        edges,
        rotations,
        crossings,
        crossing_rotations,
        outer: HalfRef(sq(1), 0),
        augmented: None,
    })
}

/// The crossed cube, i.e. the extended wheel on six rim vertices.
pub fn gen_crossed_cube() -> DrawingSpec {
    gen_xw(3).expect("k = 3 is valid")
}

/// Edge list of the complete graph on `n` vertices.
pub fn gen_kn(n: usize) -> Result<Vec<[usize; 2]>> {
    if n < 1 {
        return Err(Error::BadParameter("K_n needs n >= 1".into()));
    }
    Ok((0..n).flat_map(|u| (u + 1..n).map(move |v| [u, v])).collect())
}

/// The cycle on `n` vertices.
pub fn gen_cycle(n: usize) -> Vec<[usize; 2]> {
    (0..n).map(|i| [i, (i + 1) % n]).collect()
}

struct TriBuilder {
    emb: Embedding,
    adj: HashSet<(usize, usize)>,
}

impl TriBuilder {
    fn key(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    fn triangle() -> Self {
        let rot = vec![vec![0, 5], vec![1, 2], vec![3, 4]];
        let emb = Embedding::from_rotations(3, vec![[0, 1], [1, 2], [2, 0]], &rot, 1)
            .expect("triangle rotation is valid");
        let adj = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
        TriBuilder { emb, adj }
    }

    /// Puts a new vertex into the triangle left of `d1`; returns the three
    /// new triangle representatives.
    fn stack(&mut self, d1: usize) -> [usize; 3] {
        let d2 = self.emb.next(d1);
        let d3 = self.emb.next(d2);
        let (a, b, c) = (self.emb.tail(d1), self.emb.tail(d2), self.emb.tail(d3));
        let w = self.emb.add_vertex();
        let e = self.emb.attach_pendant(w, d1);
        self.emb.insert_edge(2 * e, d2);
        let wb = self.emb.rotation(w).into_iter().find(|&d| self.emb.head(d) == b);
        self.emb.insert_edge(wb.expect("edge w-b was just added"), d3);
        for x in [a, b, c] {
            self.adj.insert(Self::key(w, x));
        }
        [d1, d2, d3]
    }

    /// Flips edge `e` if both sides are triangles off the outer face and the
    /// new diagonal is not yet present.
    fn try_flip(&mut self, e: usize, outer_face: &HashSet<usize>) -> bool {
        if !self.emb.edge_alive(e) || outer_face.contains(&e) {
            return false;
        }
        let (d, t) = (2 * e, 2 * e + 1);
        let ca = self.emb.next(self.emb.next(d));
        let db = self.emb.next(self.emb.next(t));
        if self.emb.next(ca) != d || self.emb.next(db) != t {
            return false;
        }
        let (a, b) = (self.emb.tail(d), self.emb.head(d));
        let (c, dd) = (self.emb.tail(ca), self.emb.tail(db));
        if c == dd || self.adj.contains(&Self::key(c, dd)) {
            return false;
        }
        if self.emb.degree(a) <= 3 || self.emb.degree(b) <= 3 {
            return false;
        }
        self.emb.remove_edge(e);
        self.adj.remove(&Self::key(a, b));
        self.emb.insert_edge(ca, db);
        self.adj.insert(Self::key(c, dd));
        true
    }
}

fn outer_edges(emb: &Embedding) -> HashSet<usize> {
    emb.face_darts(emb.outer).into_iter().map(edge_of).collect()
}

fn random_triangulation_embedding(n: usize, rng: &mut ChaCha8Rng) -> Embedding {
    let mut b = TriBuilder::triangle();
    let mut reps = vec![0usize];
    for _ in 3..n {
        let i = rng.gen_range(0..reps.len());
        let [d1, d2, d3] = b.stack(reps[i]);
        reps[i] = d1;
        reps.push(d2);
        reps.push(d3);
    }
    let outer = outer_edges(&b.emb);
    let m = b.emb.edge_slots();
    for _ in 0..n {
        let e = rng.gen_range(0..m);
        b.try_flip(e, &outer);
    }
    compact(b.emb)
}

/// Renumbers live edges densely, keeping vertex ids.
fn compact(emb: Embedding) -> Embedding {
    let live: Vec<usize> = emb.live_edges().collect();
    let mut new_id = vec![usize::MAX; emb.edge_slots()];
    for (i, &e) in live.iter().enumerate() {
        new_id[e] = i;
    }
    let map = |d: usize| 2 * new_id[edge_of(d)] + (d & 1);
    let ends = live.iter().map(|&e| emb.ends(e)).collect();
    let rot: Vec<Vec<usize>> =
        (0..emb.n()).map(|v| emb.rotation(v).into_iter().map(map).collect()).collect();
    Embedding::from_rotations(emb.n(), ends, &rot, map(emb.outer)).expect("compaction is valid")
}

/// Random maximal planar graph on `n` vertices: random stacking followed by
/// random edge flips, reproducible from `seed`.
pub fn gen_planar_triangulation(n: usize, seed: u64) -> Result<DrawingSpec> {
    if n < 4 {
        return Err(Error::BadParameter(format!("triangulation needs n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let emb = random_triangulation_embedding(n, &mut rng);
    let edges: Vec<Edge> =
        (0..emb.edge_slots()).map(|e| Edge::original(emb.ends(e)[0], emb.ends(e)[1])).collect();
    let owner: Vec<usize> = (0..edges.len()).collect();
    Ok(to_spec(n, &edges, &emb, &owner))
}

/// Random normalized 1-planar drawing: a random triangulation in which a
/// random set of interior edges, with disjoint incident triangles, receive
/// a crossing diagonal.
pub fn gen_normalized_1planar(n: usize, seed: u64) -> Result<DrawingSpec> {
    if n < 5 {
        return Err(Error::BadParameter(format!("1-planar generator needs n >= 5, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut emb = random_triangulation_embedding(n, &mut rng);
    let mut adj: HashSet<(usize, usize)> =
        emb.live_edges().map(|e| TriBuilder::key(emb.ends(e)[0], emb.ends(e)[1])).collect();
    let fs = emb.faces();
    let mut used = vec![false; fs.count()];
    used[fs.outer] = true;
    let mut order: Vec<usize> = emb.live_edges().collect();
    order.shuffle(&mut rng);
    let mut chosen = Vec::new();
    for e in order {
        let (d, t) = (2 * e, 2 * e + 1);
        let (fa, fb) = (fs.of_dart[d], fs.of_dart[t]);
        if used[fa] || used[fb] {
            continue;
        }
        let ca = emb.next(emb.next(d));
        let db = emb.next(emb.next(t));
        let (c, dd) = (emb.tail(ca), emb.tail(db));
        if c == dd || adj.contains(&TriBuilder::key(c, dd)) {
            continue;
        }
        if rng.gen_bool(0.5) {
            used[fa] = true;
            used[fb] = true;
            adj.insert(TriBuilder::key(c, dd));
            chosen.push((e, ca, db));
        }
    }
    let mut edges: Vec<Edge> =
        (0..emb.edge_slots()).map(|e| Edge::original(emb.ends(e)[0], emb.ends(e)[1])).collect();
    let mut owner: Vec<usize> = (0..edges.len()).collect();
    for (e, ca, db) in chosen {
        let (c, dd) = (emb.tail(ca), emb.tail(db));
        let real = edges.len();
        edges.push(Edge::original(c, dd));
        let (_, f) = emb.subdivide(e);
        owner.push(owner[e]);
        let g = emb.insert_edge(2 * f, ca);
        let h = emb.insert_edge(twin(2 * e), db);
        debug_assert_eq!(g + 1, h);
        owner.push(real);
        owner.push(real);
    }
    Ok(to_spec(n, &edges, &emb, &owner))
}

/// Removes the listed real edges from a drawing, dropping their crossings.
pub fn delete_edges(spec: &DrawingSpec, drop: &[usize]) -> Result<DrawingSpec> {
    let d = build_drawing(spec)?;
    let dropset: HashSet<usize> = drop.iter().copied().collect();
    let mut emb = d.plan.clone();
    for s in 0..emb.edge_slots() {
        if dropset.contains(&d.seg_owner[s]) {
            emb.remove_edge(s);
        }
    }
    // Smooth dummies whose crossing vanished: reconnect the surviving edge.
    let mut owner = d.seg_owner.clone();
    for x in d.dummies() {
        if emb.degree(x) != 2 {
            continue;
        }
        let r = emb.rotation(x);
        let (d1, d2) = (r[0], r[1]);
        let e = owner[edge_of(d1)];
        // Corner darts at both far ends, right after the segments towards x.
        let ca = emb.cw(twin(d1));
        let cb = emb.cw(twin(d2));
        if edge_of(ca) == edge_of(d1) || edge_of(cb) == edge_of(d2) {
            return Err(Error::BadParameter("deletion isolates a vertex".into()));
        }
        emb.remove_edge(edge_of(d1));
        emb.remove_edge(edge_of(d2));
        emb.insert_edge(ca, cb);
        owner.push(e);
    }
    let mut keep_new = vec![usize::MAX; d.edges.len()];
    let mut edges = Vec::new();
    for (i, e) in d.edges.iter().enumerate() {
        if !dropset.contains(&i) {
            keep_new[i] = edges.len();
            edges.push(*e);
        }
    }
    let live: Vec<usize> = emb.live_edges().collect();
    let emb = compact(emb);
    let owner: Vec<usize> = live.iter().map(|&s| keep_new[owner[s]]).collect();
    let n_real = d.n_real;
    let emb = drop_isolated_dummies(emb, n_real);
    Ok(to_spec(n_real, &edges, &emb, &owner))
}

/// Renumbers dummies so that the ones still of degree 4 stay above `n_real`
/// and isolated ones disappear.
fn drop_isolated_dummies(emb: Embedding, n_real: usize) -> Embedding {
    let mut new_v = vec![usize::MAX; emb.n()];
    let mut k = 0;
    for v in 0..emb.n() {
        if v < n_real || emb.degree(v) > 0 {
            new_v[v] = k;
            k += 1;
        }
    }
    let ends = (0..emb.edge_slots())
        .map(|e| {
            let [a, b] = emb.ends(e);
            [new_v[a], new_v[b]]
        })
        .collect();
    let mut rot = vec![Vec::new(); k];
    for v in 0..emb.n() {
        if new_v[v] != usize::MAX {
            rot[new_v[v]] = emb.rotation(v);
        }
    }
    Embedding::from_rotations(k, ends, &rot, emb.outer).expect("relabelling is valid")
}

/// Checks a drawing built by one of the generators.
pub fn realize(spec: &DrawingSpec) -> PlanarizedDrawing {
    build_drawing(spec).expect("generator output is a valid drawing")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_model::faces;

    #[test]
    fn fixtures_are_valid() {
        for (spec, n, m, x) in [
            (planar_k4(), 4, 6, 0),
            (k4_with_crossing(), 4, 6, 1),
            (octahedron(), 6, 12, 0),
            (icosahedron(), 12, 30, 0),
        ] {
            let d = realize(&spec);
            assert_eq!(d.n_real, n);
            assert_eq!(d.edges.len(), m);
            assert_eq!(d.crossing_pairs.len(), x);
        }
    }

    #[test]
    fn icosahedron_is_five_regular() {
        let d = realize(&icosahedron());
        for v in 0..12 {
            assert_eq!(d.plan.degree(v), 5, "vertex {v}");
        }
        assert!(faces(&d).iter().all(|f| f.boundary.len() == 3));
    }

    #[test]
    fn xw_counts() {
        for k in 3..8 {
            let d = realize(&gen_xw(k).unwrap());
            assert_eq!(d.n_real, 2 * k + 2);
            assert_eq!(d.edges.len(), 8 * k);
            assert_eq!(d.crossing_pairs.len(), 2 * k);
            assert!(faces(&d).iter().all(|f| f.boundary.len() == 3));
        }
        assert!(matches!(gen_xw(2), Err(Error::BadParameter(_))));
    }

    #[test]
    fn xw_outer_face_is_a_pole_triangle() {
        let d = realize(&gen_xw(4).unwrap());
        let outer = d.plan.face_darts(d.plan.outer);
        assert_eq!(outer.len(), 3);
        assert!(outer.iter().any(|&x| d.plan.tail(x) == xw_pole_q()));
    }

    #[test]
    fn triangulation_counts() {
        for seed in 0..5 {
            let d = realize(&gen_planar_triangulation(50, seed).unwrap());
            assert_eq!(d.edges.len(), 3 * 50 - 6);
            assert!(faces(&d).iter().all(|f| f.boundary.len() == 3));
            let mut keys: Vec<_> = d.edges.iter().map(|e| e.key()).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), d.edges.len());
        }
    }

    #[test]
    fn triangulation_is_reproducible() {
        assert_eq!(gen_planar_triangulation(30, 7).unwrap(), gen_planar_triangulation(30, 7).unwrap());
    }

    #[test]
    fn random_1planar_is_kite_faced() {
        for seed in 0..5 {
            let d = realize(&gen_normalized_1planar(40, seed).unwrap());
            assert!(faces(&d).iter().all(|f| f.boundary.len() == 3));
            assert_eq!(d.edges.len(), 3 * 40 - 6 + d.crossing_pairs.len());
        }
    }

    #[test]
    fn deleting_a_crossed_edge_smooths_its_dummy() {
        let spec = k4_with_crossing();
        let smaller = delete_edges(&spec, &[4]).unwrap();
        let d = realize(&smaller);
        assert_eq!(d.edges.len(), 5);
        assert!(d.crossing_pairs.is_empty());
    }

    #[test]
    fn kn_sizes() {
        assert_eq!(gen_kn(7).unwrap().len(), 21);
        assert_eq!(gen_cycle(6).len(), 6);
    }
}
