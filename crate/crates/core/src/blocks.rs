//! Block-trees of the inner vertices of an instance, their landmarks,
//! clusters, super-blocks and the separation partitions built from them.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph_model::{edge_of, twin, Dart, VertexId, NONE};
use crate::leveler::{LevelDecomposition, TwoLevelGraph};

#[derive(Debug, Clone)]
pub struct Block {
    pub id: usize,
    pub tree: usize,
    /// `b_0 .. b_q`; `b_0` is the leader.
    pub verts: Vec<VertexId>,
    /// `darts[i]` runs from `verts[i]` to `verts[i + 1]`, the last one back to `b_0`.
    pub darts: Vec<Dart>,
    pub elementary: bool,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Outer index of the dominator.
    pub alpha: usize,
    pub omega: usize,
    pub covered: bool,
    pub f_first: usize,
    pub f_last: usize,
    /// Rank of the face that orders blocks at their dominator.
    pub rank: usize,
    pub assigned: Vec<VertexId>,
    open_step: usize,
}

impl Block {
    pub fn leader(&self) -> VertexId {
        self.verts[0]
    }

    pub fn last(&self) -> VertexId {
        *self.verts.last().unwrap()
    }

    pub fn q(&self) -> usize {
        self.verts.len() - 1
    }
}

#[derive(Debug, Clone)]
pub struct BlockTree {
    pub root: usize,
    pub lambda: VertexId,
    pub alpha: usize,
    pub omega: usize,
    pub f_t: usize,
    pub f_t_rank: usize,
    /// Vertices in order of first appearance on the boundary walk.
    pub order: Vec<VertexId>,
    pub blocks: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Cluster {
    pub leader: VertexId,
    /// Outer index of the covering vertex.
    pub cover: usize,
    pub tops: Vec<usize>,
    pub members: Vec<usize>,
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone)]
pub struct SuperBlock {
    pub root: usize,
    pub clusters: Vec<usize>,
    pub parent: Option<usize>,
    pub depth: usize,
    pub alpha: usize,
    pub rank: usize,
    /// Vertices in layout order.
    pub vertices: Vec<VertexId>,
    /// Leader of an uncovered tree root with its clusters, placed after the
    /// first outer vertex of the tree rather than after `alpha`.
    pub head: Vec<VertexId>,
    pub head_alpha: usize,
    pub head_rank: usize,
}

#[derive(Debug, Clone, Default)]
pub struct BlockForest {
    pub blocks: Vec<Block>,
    pub trees: Vec<BlockTree>,
    pub clusters: Vec<Cluster>,
    pub supers: Vec<SuperBlock>,
    pub block_of_vertex: HashMap<VertexId, usize>,
    pub super_of_block: Vec<usize>,
    pub cluster_of_block: Vec<Option<usize>>,
    /// Block owning each inner skeleton edge on a boundary walk.
    pub block_of_edge: HashMap<usize, usize>,
    /// Blocks whose last edge borders each face.
    pub last_face: HashMap<usize, Vec<usize>>,
    pub first_face: HashMap<usize, Vec<usize>>,
    pub first_seen: HashMap<VertexId, usize>,
}

impl BlockForest {
    pub fn super_of_vertex(&self, v: VertexId) -> Option<usize> {
        self.block_of_vertex.get(&v).map(|&b| self.super_of_block[b])
    }

    pub fn ancestors(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(Some(b), move |&x| self.blocks[x].parent)
    }
}

fn is_inner_edge(h: &TwoLevelGraph, dec: &LevelDecomposition, d: Dart) -> bool {
    let [u, v] = dec.sk.emb.ends(edge_of(d));
    h.inner_set.contains(&u) && h.inner_set.contains(&v)
}

/// First inner dart reached by rotating drawn-counterclockwise from `x`,
/// `x` itself last.
fn next_wall(h: &TwoLevelGraph, dec: &LevelDecomposition, x: Dart) -> Option<Dart> {
    let mut y = x;
    for _ in 0..dec.sk.emb.degree(dec.sk.emb.tail(x)) {
        y = h.pccw(dec, y);
        if is_inner_edge(h, dec, y) {
            return Some(y);
        }
    }
    None
}

/// Walks every inner component and splits it into blocks.
pub fn analyze_blocks(h: &TwoLevelGraph, dec: &LevelDecomposition) -> BlockForest {
    let emb = &dec.sk.emb;
    let mut f = BlockForest::default();
    // Components of the inner vertices.
    let mut comp: HashMap<VertexId, usize> = HashMap::new();
    let mut ncomp = 0;
    for &s in &h.inner {
        if comp.contains_key(&s) {
            continue;
        }
        comp.insert(s, ncomp);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for d in emb.rotation(v) {
                let w = emb.head(d);
                if h.inner_set.contains(&w) && !comp.contains_key(&w) {
                    comp.insert(w, ncomp);
                    stack.push(w);
                }
            }
        }
        ncomp += 1;
    }
    let mut f_t = vec![NONE; ncomp];
    let mut firsts = Vec::new();
    for &face in &h.faces {
        for v in dec.face_vertices(face) {
            if let Some(&c) = comp.get(&v) {
                if f_t[c] == NONE {
                    f_t[c] = face;
                    firsts.push(c);
                }
            }
        }
    }
    for c in firsts {
        walk_tree(h, dec, &comp, c, f_t[c], &mut f);
    }
    detect_clusters(&mut f);
    expand_super_blocks(&mut f);
    f
}

fn walk_tree(
    h: &TwoLevelGraph,
    dec: &LevelDecomposition,
    comp: &HashMap<VertexId, usize>,
    c: usize,
    face: usize,
    f: &mut BlockForest,
) {
    let emb = &dec.sk.emb;
    let info = h.face_info[&face];
    let tree_id = f.trees.len();
    // Locate the leader: the first tree vertex after the last outer vertex
    // on the face, read from the dominator.
    let seq = if info.sweep_dart != NONE {
        h.oriented_face(dec, info.sweep_dart)
    } else {
        emb.face_darts(dec.fs.start[face])
    };
    let mut lam_pos = NONE;
    let mut last_outer = NONE;
    for (j, &d) in seq.iter().enumerate().skip(1) {
        let v = emb.tail(d);
        if h.is_outer(v) {
            last_outer = j;
        } else if comp.get(&v) == Some(&c) && (lam_pos == NONE || lam_pos < last_outer) {
            lam_pos = j;
        }
    }
    if lam_pos == NONE {
        lam_pos = seq.iter().position(|&d| comp.get(&emb.tail(d)) == Some(&c)).unwrap();
    }
    let lambda = emb.tail(seq[lam_pos]);
    let into = seq[(lam_pos + seq.len() - 1) % seq.len()];
    let pre = emb.tail(into);
    let omega_t = h.oidx(pre).unwrap_or(info.omega);
    let first_block = f.blocks.len();
    let mut order = vec![lambda];
    let start = next_wall(h, dec, twin(into)).filter(|&d| is_inner_edge(h, dec, d));

    struct Entry {
        v: VertexId,
        out: Dart,
        open: usize,
    }
    let mut closed_at_zero = 0;
    if let Some(d0) = start {
        let mut stack = vec![Entry { v: lambda, out: d0, open: 0 }];
        let mut pos: HashMap<VertexId, usize> = HashMap::from([(lambda, 0)]);
        let mut d = d0;
        let mut step = 0;
        let limit = 2 * emb.edge_slots() + 2;
        loop {
            step += 1;
            let v = emb.head(d);
            let nd = next_wall(h, dec, twin(d)).expect("inner dart has an inner successor");
            let finish = v == lambda && nd == d0;
            if let Some(&p) = pos.get(&v) {
                let verts: Vec<VertexId> = stack[p..].iter().map(|e| e.v).collect();
                let darts: Vec<Dart> = stack[p..].iter().map(|e| e.out).collect();
                let open = stack[p].open;
                for e in stack.drain(p + 1..) {
                    pos.remove(&e.v);
                }
                if p == 0 {
                    closed_at_zero += 1;
                }
                f.blocks.push(Block {
                    id: f.blocks.len(),
                    tree: tree_id,
                    verts,
                    darts,
                    elementary: false,
                    parent: None,
                    children: Vec::new(),
                    alpha: NONE,
                    omega: NONE,
                    covered: false,
                    f_first: NONE,
                    f_last: NONE,
                    rank: NONE,
                    assigned: Vec::new(),
                    open_step: open,
                });
                stack[p].out = nd;
                stack[p].open = step;
            } else {
                pos.insert(v, stack.len());
                stack.push(Entry { v, out: nd, open: step });
                order.push(v);
            }
            if finish || step > limit {
                break;
            }
            d = nd;
        }
    }
    let root = if closed_at_zero == 1 {
        f.blocks.len() - 1
    } else {
        f.blocks.push(Block {
            id: f.blocks.len(),
            tree: tree_id,
            verts: vec![lambda],
            darts: Vec::new(),
            elementary: true,
            parent: None,
            children: Vec::new(),
            alpha: info.alpha,
            omega: omega_t,
            covered: info.alpha == omega_t,
            f_first: NONE,
            f_last: face,
            rank: info.rank,
            assigned: Vec::new(),
            open_step: 0,
        });
        f.blocks.len() - 1
    };
    let ids: Vec<usize> = (first_block..f.blocks.len()).collect();
    for &b in &ids {
        let blk = &mut f.blocks[b];
        blk.assigned = if b == root { blk.verts.clone() } else { blk.verts[1..].to_vec() };
        for &v in &blk.assigned {
            f.block_of_vertex.insert(v, b);
        }
        if !blk.elementary {
            let first = *blk.darts.first().unwrap();
            let last = *blk.darts.last().unwrap();
            blk.f_first = h.drawn_right(dec, first);
            blk.f_last = h.drawn_right(dec, last);
            let fi = h.face_info.get(&blk.f_first).map(|x| x.alpha).unwrap_or(NONE);
            let li = h.face_info.get(&blk.f_last).copied();
            blk.alpha = li.map(|x| x.alpha).unwrap_or(NONE);
            blk.omega = fi;
            blk.rank = li.map(|x| x.rank).unwrap_or(NONE);
            blk.covered = blk.alpha == blk.omega;
        }
    }
    for &b in &ids {
        if b == root {
            continue;
        }
        let p = f.block_of_vertex[&f.blocks[b].leader()];
        f.blocks[b].parent = Some(p);
        f.blocks[p].children.push(b);
    }
    for &b in &ids {
        let mut ch = std::mem::take(&mut f.blocks[b].children);
        ch.sort_by_key(|&x| f.blocks[x].open_step);
        f.blocks[b].children = ch;
        let blk = &f.blocks[b];
        for &d in &blk.darts {
            f.block_of_edge.insert(edge_of(d), b);
        }
        if !blk.elementary {
            f.last_face.entry(blk.f_last).or_default().push(b);
            f.first_face.entry(blk.f_first).or_default().push(b);
        }
    }
    for (i, &v) in order.iter().enumerate() {
        f.first_seen.insert(v, i);
    }
    f.trees.push(BlockTree {
        root,
        lambda,
        alpha: info.alpha,
        omega: omega_t,
        f_t: face,
        f_t_rank: info.rank,
        order,
        blocks: ids,
    });
}

/// Groups covered blocks below uncovered parents by leader and covering vertex.
pub fn detect_clusters(f: &mut BlockForest) {
    f.cluster_of_block = vec![None; f.blocks.len()];
    let mut key: HashMap<(VertexId, usize), usize> = HashMap::new();
    for b in 0..f.blocks.len() {
        let blk = &f.blocks[b];
        let Some(p) = blk.parent else { continue };
        if !blk.covered || f.blocks[p].covered {
            continue;
        }
        let k = (blk.leader(), blk.alpha);
        let c = *key.entry(k).or_insert_with(|| {
            f.clusters.push(Cluster {
                leader: k.0,
                cover: k.1,
                tops: Vec::new(),
                members: Vec::new(),
                vertices: Vec::new(),
            });
            f.clusters.len() - 1
        });
        f.clusters[c].tops.push(b);
    }
    for c in 0..f.clusters.len() {
        let mut queue: VecDeque<usize> = f.clusters[c].tops.iter().copied().collect();
        let mut verts = Vec::new();
        while let Some(b) = queue.pop_front() {
            f.cluster_of_block[b] = Some(c);
            f.clusters[c].members.push(b);
            verts.extend(f.blocks[b].assigned.iter().copied());
            queue.extend(f.blocks[b].children.iter().copied());
        }
        verts.sort_by_key(|v| f.first_seen[v]);
        f.clusters[c].vertices = verts;
    }
}

/// Builds super-blocks: every uncovered block with the clusters at its
/// vertices. A covered root forms a super-block with all its descendants.
pub fn expand_super_blocks(f: &mut BlockForest) {
    f.super_of_block = vec![NONE; f.blocks.len()];
    let mut by_leader: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for (c, cl) in f.clusters.iter().enumerate() {
        by_leader.entry(cl.leader).or_default().push(c);
    }
    for list in by_leader.values_mut() {
        list.sort_by(|&a, &b| f.clusters[b].cover.cmp(&f.clusters[a].cover));
    }
    for t in 0..f.trees.len() {
        let mut queue = VecDeque::from([f.trees[t].root]);
        while let Some(b) = queue.pop_front() {
            queue.extend(f.blocks[b].children.iter().copied());
            let blk = &f.blocks[b];
            if f.cluster_of_block[b].is_some() || f.super_of_block[b] != NONE {
                continue;
            }
            let sid = f.supers.len();
            let parent = blk.parent.map(|p| f.super_of_block[p]).filter(|&s| s != NONE);
            let depth = parent.map(|p| f.supers[p].depth + 1).unwrap_or(0);
            let mut vertices = Vec::new();
            let mut clusters = Vec::new();
            let mut head = Vec::new();
            let (head_alpha, head_rank) = (f.trees[blk.tree].alpha, f.trees[blk.tree].f_t_rank);
            if blk.covered && blk.parent.is_none() {
                let mut sub = VecDeque::from([b]);
                while let Some(x) = sub.pop_front() {
                    f.super_of_block[x] = sid;
                    vertices.extend(f.blocks[x].assigned.iter().copied());
                    sub.extend(f.blocks[x].children.iter().copied());
                }
                vertices.sort_by_key(|v| f.first_seen[v]);
            } else {
                f.super_of_block[b] = sid;
                let split = blk.parent.is_none() && !blk.elementary;
                for (j, &v) in blk.assigned.iter().enumerate() {
                    let out = if split && j == 0 { &mut head } else { &mut vertices };
                    out.push(v);
                    for &c in by_leader.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
                        clusters.push(c);
                        out.extend(f.clusters[c].vertices.iter().copied());
                    }
                }
            }
            for &c in &clusters {
                for &m in &f.clusters[c].members {
                    f.super_of_block[m] = sid;
                }
            }
            f.supers.push(SuperBlock {
                root: b,
                clusters,
                parent,
                depth,
                alpha: blk.alpha,
                rank: blk.rank,
                vertices,
                head,
                head_alpha,
                head_rank,
            });
        }
    }
    // Clusters whose leader sits in a covered super-block follow it.
    for b in 0..f.blocks.len() {
        if f.super_of_block[b] == NONE {
            let host = f.block_of_vertex[&f.blocks[b].leader()];
            f.super_of_block[b] = f.super_of_block[host];
        }
    }
}

/// The uncovered blocks of `tree` dominated by outer index `v`, from the
/// one nearest the root downward.
pub fn backbone(f: &BlockForest, tree: usize, v: usize) -> Result<Vec<usize>> {
    let dominated: Vec<usize> =
        f.trees[tree].blocks.iter().copied().filter(|&b| f.blocks[b].alpha == v).collect();
    if dominated.is_empty() {
        return Err(Error::NoBlocksDominated(v));
    }
    let mut path: Vec<usize> = dominated.into_iter().filter(|&b| !f.blocks[b].covered).collect();
    path.sort_by_key(|&b| f.ancestors(b).count());
    Ok(path)
}

/// What induces a separation of the instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inducer {
    SuperBlock(usize),
    /// An uncovered skeleton edge between two outer vertices.
    Chord(usize),
}

#[derive(Debug, Clone)]
pub struct Partition {
    pub vi: usize,
    pub vk: usize,
    pub lambda: Option<VertexId>,
    pub h1: Vec<VertexId>,
    pub h2: Vec<VertexId>,
    pub l: Vec<VertexId>,
}

impl Partition {
    pub fn side(&self, h: &TwoLevelGraph, v: VertexId) -> Side {
        if h.oidx(v) == Some(self.vi) || h.oidx(v) == Some(self.vk) || self.lambda == Some(v) {
            Side::Separator
        } else if self.h2.contains(&v) {
            Side::Inside
        } else if self.l.contains(&v) {
            Side::Left
        } else {
            Side::Outside
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Separator,
    Inside,
    Left,
    Outside,
}

/// Splits the instance at a super-block or an outer chord.
pub fn partition_by(
    h: &TwoLevelGraph,
    dec: &LevelDecomposition,
    f: &BlockForest,
    inducer: Inducer,
) -> Result<Partition> {
    let (vi, vk, lambda, mut h2): (usize, usize, Option<VertexId>, Vec<VertexId>) = match inducer {
        Inducer::SuperBlock(s) => {
            let b = &f.blocks[f.supers[s].root];
            if b.covered {
                return Err(Error::InducerCovered);
            }
            let (vi, vk, lam) = (b.alpha, b.omega, b.leader());
            let mut h2 = Vec::new();
            for x in &f.blocks {
                let sx = f.super_of_block[x.id];
                let inside = if x.alpha == vi {
                    // Super-blocks at one dominator follow their face order.
                    (f.supers[sx].rank, sx) >= (f.supers[s].rank, s)
                } else if x.alpha > vi && x.alpha < vk {
                    true
                } else if x.alpha == vk {
                    sx == s
                } else {
                    false
                };
                if inside {
                    h2.extend(x.assigned.iter().copied().filter(|&v| v != lam));
                }
            }
            (vi, vk, Some(lam), h2)
        }
        Inducer::Chord(e) => {
            let [a, c] = dec.sk.emb.ends(e);
            let (Some(ia), Some(ic)) = (h.oidx(a), h.oidx(c)) else {
                return Err(Error::BadParameter("chord endpoints must be outer".into()));
            };
            let (vi, vk) = (ia.min(ic), ia.max(ic));
            let seed = h.drawn_right(dec, h.outer_darts[vi]);
            let region: HashSet<usize> = h.faces.iter().copied().collect();
            let mut seen = HashSet::from([seed]);
            let mut queue = VecDeque::from([seed]);
            let mut verts = HashSet::new();
            while let Some(face) = queue.pop_front() {
                for x in dec.sk.emb.face_darts(dec.fs.start[face]) {
                    verts.insert(dec.sk.emb.tail(x));
                    let ex = edge_of(x);
                    if ex == e || h.o_edges.contains(&ex) {
                        continue;
                    }
                    let nf = dec.fs.of_dart[twin(x)];
                    if region.contains(&nf) && seen.insert(nf) {
                        queue.push_back(nf);
                    }
                }
            }
            let h2 = verts
                .into_iter()
                .filter(|&v| h.oidx(v) != Some(vi) && h.oidx(v) != Some(vk))
                .filter(|v| h.is_outer(*v) || h.inner_set.contains(v))
                .collect();
            (vi, vk, None, h2)
        }
    };
    for j in vi + 1..vk {
        h2.push(h.outer[j]);
    }
    h2.sort_unstable();
    h2.dedup();
    let h2set: HashSet<VertexId> = h2.iter().copied().collect();
    let sep = |v: VertexId| {
        h.oidx(v) == Some(vi) || h.oidx(v) == Some(vk) || lambda == Some(v) || h2set.contains(&v)
    };
    let h1: Vec<VertexId> =
        h.outer.iter().chain(h.inner.iter()).copied().filter(|&v| !sep(v)).collect();
    let h1set: HashSet<VertexId> = h1.iter().copied().collect();
    let mut l = Vec::new();
    for s in &f.supers {
        if s.alpha == vi {
            l.extend(s.vertices.iter().copied().filter(|v| h1set.contains(v)));
        }
        if s.head_alpha == vi {
            l.extend(s.head.iter().copied().filter(|v| h1set.contains(v)));
        }
    }
    l.sort_unstable();
    l.dedup();
    Ok(Partition { vi, vk, lambda, h1, h2, l })
}

/// Two edges are well separated if one lies in the inside part and the
/// other in the outside part without touching the left part.
pub fn well_separated(h: &TwoLevelGraph, p: &Partition, e1: [VertexId; 2], e2: [VertexId; 2]) -> bool {
    let s1 = [p.side(h, e1[0]), p.side(h, e1[1])];
    let s2 = [p.side(h, e2[0]), p.side(h, e2[1])];
    let within = |s: [Side; 2], want: Side| {
        s.iter().all(|&x| x == want || x == Side::Separator) && s.contains(&want)
    };
    let no_lambda = |e: [VertexId; 2]| p.lambda.is_none_or(|l| !e.contains(&l));
    no_lambda(e1)
        && no_lambda(e2)
        && (within(s1, Side::Outside) && within(s2, Side::Inside)
            || within(s2, Side::Outside) && within(s1, Side::Inside))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leveler::{compute_levels, root_instance};
    use crate::normalizer::normalize;
    use crate::specials::generators::{octahedron, planar_k4};

    fn forest_of(spec: &crate::graph_model::DrawingSpec) -> (LevelDecomposition, TwoLevelGraph, BlockForest) {
        let g = normalize(spec).unwrap();
        let dec = compute_levels(&g).unwrap();
        let mut owner = vec![NONE; dec.fs.count()];
        let h = root_instance(&dec, &mut owner);
        let f = analyze_blocks(&h, &dec);
        (dec, h, f)
    }

    #[test]
    fn k4_center_is_elementary() {
        let (_, h, f) = forest_of(&planar_k4());
        assert_eq!(f.blocks.len(), 1);
        let b = &f.blocks[0];
        assert!(b.elementary);
        assert_eq!((b.alpha, b.omega), (0, h.t()));
        assert_eq!(f.supers.len(), 1);
    }

    #[test]
    fn octahedron_inner_triangle() {
        let (_, h, f) = forest_of(&octahedron());
        assert_eq!(f.blocks.len(), 1);
        let b = &f.blocks[0];
        assert!(!b.elementary && !b.covered);
        assert_eq!(b.verts.len(), 3);
        assert_eq!(b.alpha, 0);
        assert_eq!(b.omega, h.t());
        assert!(backbone(&f, 0, 0).is_ok());
        assert!(matches!(backbone(&f, 0, 1), Err(Error::NoBlocksDominated(1))));
    }

    #[test]
    fn octahedron_partition_covers_inner_block() {
        let (dec, h, f) = forest_of(&octahedron());
        let p = partition_by(&h, &dec, &f, Inducer::SuperBlock(0)).unwrap();
        assert_eq!(p.h2.len(), 3);
        assert!(p.l.is_empty());
    }
}
