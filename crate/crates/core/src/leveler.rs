//! Peeling of the planar skeleton into levels and two-level instances.
//!
//! An instance is an outer cycle `O` together with the faces it encloses up
//! to the next level of blocks. Instances below level zero are mirror images:
//! their outer cycle is a block traversed counterclockwise, so every
//! orientation-dependent step goes through `pccw`, `drawn_left` and
//! `drawn_right`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::Result;
use crate::graph_model::{edge_of, twin, Dart, FaceSet, VertexId, NONE};
use crate::normalizer::{planar_skeleton, NormalizedMultigraph, Skeleton};

/// Levels of all vertices plus the skeleton they were computed on.
#[derive(Debug, Clone)]
pub struct LevelDecomposition {
    pub sk: Skeleton,
    pub fs: FaceSet,
    pub level: Vec<usize>,
}

impl LevelDecomposition {
    pub fn max_level(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Vertices of skeleton face `f` in walk order.
    pub fn face_vertices(&self, f: usize) -> Vec<VertexId> {
        self.sk.emb.face_darts(self.fs.start[f]).into_iter().map(|d| self.sk.emb.tail(d)).collect()
    }
}

/// Levels by breadth-first search over vertex-face incidences.
pub fn compute_levels(g: &NormalizedMultigraph) -> Result<LevelDecomposition> {
    let sk = planar_skeleton(g)?;
    let fs = sk.emb.faces();
    let n = sk.n();
    let mut level = vec![NONE; n];
    let mut seen = vec![false; fs.count()];
    let mut queue = VecDeque::new();
    if fs.outer != NONE {
        seen[fs.outer] = true;
        for d in sk.emb.face_darts(fs.start[fs.outer]) {
            let v = sk.emb.tail(d);
            if level[v] == NONE {
                level[v] = 0;
                queue.push_back(v);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        for d in sk.emb.rotation(v) {
            let f = fs.of_dart[d];
            if seen[f] {
                continue;
            }
            seen[f] = true;
            for x in sk.emb.face_darts(d) {
                let w = sk.emb.tail(x);
                if level[w] == NONE {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    for l in level.iter_mut() {
        if *l == NONE {
            *l = 0;
        }
    }
    Ok(LevelDecomposition { sk, fs, level })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceInfo {
    /// Least outer index on the face.
    pub alpha: usize,
    /// Greatest outer index on the face.
    pub omega: usize,
    /// Position in the face order of the instance.
    pub rank: usize,
    /// Dart leaving the outer vertex `alpha` whose drawn-left sector is the face.
    pub sweep_dart: Dart,
}

/// An outer cycle and the region it encloses.
#[derive(Debug, Clone)]
pub struct TwoLevelGraph {
    pub id: usize,
    pub level: usize,
    pub mirror: bool,
    /// Parent instance and the block of its forest that is this outer cycle.
    pub parent: Option<(usize, usize)>,
    pub outer: Vec<VertexId>,
    /// `outer_darts[i]` runs from `outer[i]` to `outer[i + 1]`.
    pub outer_darts: Vec<Dart>,
    pub outer_index: HashMap<VertexId, usize>,
    /// Region faces in increasing order.
    pub faces: Vec<usize>,
    pub face_info: HashMap<usize, FaceInfo>,
    pub inner: Vec<VertexId>,
    pub inner_set: HashSet<VertexId>,
    pub o_edges: HashSet<usize>,
}

impl TwoLevelGraph {
    pub fn t(&self) -> usize {
        self.outer.len() - 1
    }

    pub fn pccw(&self, dec: &LevelDecomposition, x: Dart) -> Dart {
        if self.mirror {
            dec.sk.emb.cw(x)
        } else {
            dec.sk.emb.ccw(x)
        }
    }

    pub fn pcw(&self, dec: &LevelDecomposition, x: Dart) -> Dart {
        if self.mirror {
            dec.sk.emb.ccw(x)
        } else {
            dec.sk.emb.cw(x)
        }
    }

    /// Face on the drawn-left of `x`; also the sector between `x` and `pccw(x)`.
    pub fn drawn_left(&self, dec: &LevelDecomposition, x: Dart) -> usize {
        if self.mirror {
            dec.fs.of_dart[twin(x)]
        } else {
            dec.fs.of_dart[x]
        }
    }

    pub fn drawn_right(&self, dec: &LevelDecomposition, x: Dart) -> usize {
        if self.mirror {
            dec.fs.of_dart[x]
        } else {
            dec.fs.of_dart[twin(x)]
        }
    }

    pub fn is_outer(&self, v: VertexId) -> bool {
        self.outer_index.contains_key(&v)
    }

    pub fn oidx(&self, v: VertexId) -> Option<usize> {
        self.outer_index.get(&v).copied()
    }

    /// Face darts of `f` oriented so that the face is on their drawn-left,
    /// starting with `from`.
    pub fn oriented_face(&self, dec: &LevelDecomposition, from: Dart) -> Vec<Dart> {
        let emb = &dec.sk.emb;
        if self.mirror {
            let walk = emb.face_darts(twin(from));
            let mut out = vec![from];
            out.extend(walk[1..].iter().rev().map(|&d| twin(d)));
            out
        } else {
            emb.face_darts(from)
        }
    }

    /// True if `e` separates the region from something else at this level.
    pub fn is_wall(&self, dec: &LevelDecomposition, e: usize) -> bool {
        if self.o_edges.contains(&e) {
            return true;
        }
        let [u, v] = dec.sk.emb.ends(e);
        dec.level[u] == self.level + 1 && dec.level[v] == self.level + 1
    }
}

/// Builds the instance bounded by `outer_darts`. Faces already owned by an
/// instance are never claimed again.
pub fn extract_two_level(
    dec: &LevelDecomposition,
    id: usize,
    level: usize,
    mirror: bool,
    parent: Option<(usize, usize)>,
    outer_darts: Vec<Dart>,
    face_owner: &mut [usize],
) -> TwoLevelGraph {
    let emb = &dec.sk.emb;
    let outer: Vec<VertexId> = outer_darts.iter().map(|&d| emb.tail(d)).collect();
    let outer_index: HashMap<VertexId, usize> =
        outer.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let o_edges: HashSet<usize> = outer_darts.iter().map(|&d| edge_of(d)).collect();
    let mut h = TwoLevelGraph {
        id,
        level,
        mirror,
        parent,
        outer,
        outer_darts,
        outer_index,
        faces: Vec::new(),
        face_info: HashMap::new(),
        inner: Vec::new(),
        inner_set: HashSet::new(),
        o_edges,
    };
    // Region: flood from the inner side of O without crossing walls.
    let mut region = Vec::new();
    let mut queue = VecDeque::new();
    for &d in &h.outer_darts {
        let f = h.drawn_right(dec, d);
        if f != dec.fs.outer && face_owner[f] == NONE {
            face_owner[f] = id;
            queue.push_back(f);
        }
    }
    while let Some(f) = queue.pop_front() {
        region.push(f);
        for x in emb.face_darts(dec.fs.start[f]) {
            if h.is_wall(dec, edge_of(x)) {
                continue;
            }
            let nf = dec.fs.of_dart[twin(x)];
            if nf != dec.fs.outer && face_owner[nf] == NONE {
                face_owner[nf] = id;
                queue.push_back(nf);
            }
        }
    }
    let region_set: HashSet<usize> = region.iter().copied().collect();
    // Face order: by first outer vertex, counterclockwise at that vertex.
    let t = h.t();
    for i in 0..=t {
        let start = twin(h.outer_darts[(i + t) % (t + 1)]);
        let stop = h.outer_darts[i];
        let mut x = start;
        let mut guard = 0;
        loop {
            let f = h.drawn_left(dec, x);
            if region_set.contains(&f) && !h.face_info.contains_key(&f) {
                let idx: Vec<usize> =
                    dec.face_vertices(f).iter().filter_map(|v| h.oidx(*v)).collect();
                let alpha = idx.iter().copied().min().unwrap_or(NONE);
                if alpha == i {
                    let omega = idx.iter().copied().max().unwrap();
                    let rank = h.faces.len();
                    h.faces.push(f);
                    h.face_info.insert(f, FaceInfo { alpha, omega, rank, sweep_dart: x });
                }
            }
            x = h.pccw(dec, x);
            guard += 1;
            if x == stop || x == start || guard > emb.degree(h.outer[i]) {
                break;
            }
        }
    }
    for &f in &region {
        if !h.face_info.contains_key(&f) {
            let rank = h.faces.len();
            h.faces.push(f);
            h.face_info.insert(f, FaceInfo { alpha: NONE, omega: NONE, rank, sweep_dart: NONE });
        }
    }
    for &f in &h.faces {
        for v in dec.face_vertices(f) {
            if dec.level[v] == level + 1 && !h.is_outer(v) && h.inner_set.insert(v) {
                h.inner.push(v);
            }
        }
    }
    h
}

/// The level-zero instance: the outer face walked clockwise from its least vertex.
pub fn root_instance(dec: &LevelDecomposition, face_owner: &mut [usize]) -> TwoLevelGraph {
    let emb = &dec.sk.emb;
    let mut darts = emb.face_darts(dec.fs.start[dec.fs.outer]);
    let k = (0..darts.len()).min_by_key(|&i| emb.tail(darts[i])).unwrap_or(0);
    darts.rotate_left(k);
    extract_two_level(dec, 0, 0, false, None, darts, face_owner)
}

/// Part an edge plays inside the instance that owns it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum EdgeRole {
    OuterEdge,
    OuterChord,
    Binding,
    InnerEdge,
    InnerChord,
    Foreign,
}

/// Kite face of every crossing, indexed like `g.crossing_pairs()`.
pub fn kite_faces(dec: &LevelDecomposition) -> Vec<usize> {
    dec.sk.kite.iter().map(|&d| dec.fs.of_dart[d]).collect()
}

/// Crossing of every edge, `NONE` for uncrossed edges.
pub fn crossing_index(g: &NormalizedMultigraph) -> Vec<usize> {
    let mut crossing = vec![NONE; g.m()];
    for (i, &(a, b)) in g.crossing_pairs().iter().enumerate() {
        crossing[a] = i;
        crossing[b] = i;
    }
    crossing
}

/// Owning instance of every edge of `g`. An uncrossed edge between two
/// instances belongs to the one of lower level; a crossed edge to the owner
/// of its kite.
pub fn edge_owners(
    g: &NormalizedMultigraph,
    dec: &LevelDecomposition,
    face_owner: &[usize],
    instance_level: &[usize],
) -> Vec<usize> {
    let kites = kite_faces(dec);
    let crossing = crossing_index(g);
    (0..g.m())
        .map(|e| {
            let s = dec.sk.skel_edge[e];
            if s == NONE {
                return face_owner[kites[crossing[e]]];
            }
            [face_owner[dec.fs.of_dart[2 * s]], face_owner[dec.fs.of_dart[2 * s + 1]]]
                .into_iter()
                .filter(|&o| o != NONE)
                .min_by_key(|&o| (instance_level[o], o))
                .unwrap_or(NONE)
        })
        .collect()
}

/// Role of edge `e` of `g` inside `h`.
pub fn edge_role(g: &NormalizedMultigraph, dec: &LevelDecomposition, h: &TwoLevelGraph, e: usize) -> EdgeRole {
    let ed = g.edges()[e];
    let outer = [h.is_outer(ed.u), h.is_outer(ed.v)];
    let inner = [h.inner_set.contains(&ed.u), h.inner_set.contains(&ed.v)];
    let crossed = g.is_crossed(e);
    match (outer, inner) {
        ([true, true], _) => {
            let s = dec.sk.skel_edge[e];
            if !crossed && h.o_edges.contains(&s) {
                EdgeRole::OuterEdge
            } else {
                EdgeRole::OuterChord
            }
        }
        ([true, false], [_, true]) | ([false, true], [true, _]) => EdgeRole::Binding,
        (_, [true, true]) if crossed => EdgeRole::InnerChord,
        (_, [true, true]) => EdgeRole::InnerEdge,
        _ => EdgeRole::Foreign,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalizer::normalize;
    use crate::specials::generators::{gen_xw, octahedron, planar_k4};

    #[test]
    fn octahedron_levels() {
        let g = normalize(&octahedron()).unwrap();
        let dec = compute_levels(&g).unwrap();
        assert_eq!(dec.level, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn k4_levels_and_instance() {
        let g = normalize(&planar_k4()).unwrap();
        let dec = compute_levels(&g).unwrap();
        assert_eq!(dec.level.iter().filter(|&&l| l == 0).count(), 3);
        assert_eq!(dec.max_level(), 1);
        let mut owner = vec![NONE; dec.fs.count()];
        let h = root_instance(&dec, &mut owner);
        assert_eq!(h.outer.len(), 3);
        assert_eq!(h.inner.len(), 1);
        assert_eq!(h.faces.len(), 3);
        let ranks: Vec<usize> = h.faces.iter().map(|f| h.face_info[f].alpha).collect();
        assert_eq!(ranks, vec![0, 0, 1]);
    }

    #[test]
    fn xw_levels_respect_edges() {
        let g = normalize(&gen_xw(5).unwrap()).unwrap();
        let dec = compute_levels(&g).unwrap();
        for e in g.edges() {
            let (a, b) = (dec.level[e.u], dec.level[e.v]);
            assert!(a.abs_diff(b) <= 1);
        }
    }
}
