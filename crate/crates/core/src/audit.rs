//! Structural laws of blocks, backbones and partitions, checked against a
//! finished pipeline run.

use std::collections::HashSet;

use serde::Serialize;

use crate::blocks::{backbone, partition_by, well_separated, BlockForest, Inducer, Partition};
use crate::graph_model::VertexId;
use crate::leveler::{EdgeRole, TwoLevelGraph};
use crate::orderer::Layout;
use crate::paginator::Pipeline;
use crate::verifier_oracle::twist;

/// Violation counts per law; a run is clean when every count is zero.
#[derive(Debug, Clone, Default, Serialize)]
pub struct StructureReport {
    pub blocks: usize,
    pub partitions: usize,
    pub edge_pairs: usize,
    pub landmark: usize,
    pub enclosure: usize,
    pub nesting: usize,
    pub backbone: usize,
    pub dominated_inside: usize,
    pub right_of_last: usize,
    pub interval: usize,
    pub separated_twist: usize,
    pub samples: Vec<String>,
}

impl StructureReport {
    pub fn violations(&self) -> usize {
        self.landmark
            + self.enclosure
            + self.nesting
            + self.backbone
            + self.dominated_inside
            + self.right_of_last
            + self.interval
            + self.separated_twist
    }

    fn note(&mut self, msg: String) {
        if self.samples.len() < 20 {
            self.samples.push(msg);
        }
    }

    fn absorb(&mut self, o: StructureReport) {
        self.blocks += o.blocks;
        self.partitions += o.partitions;
        self.edge_pairs += o.edge_pairs;
        self.landmark += o.landmark;
        self.enclosure += o.enclosure;
        self.nesting += o.nesting;
        self.backbone += o.backbone;
        self.dominated_inside += o.dominated_inside;
        self.right_of_last += o.right_of_last;
        self.interval += o.interval;
        self.separated_twist += o.separated_twist;
        for s in o.samples {
            self.note(s);
        }
    }
}

/// Audits every instance of `p`.
pub fn audit_structure(p: &Pipeline) -> StructureReport {
    let mut out = StructureReport::default();
    for j in 0..p.instances.len() {
        let r = audit_instance(p, j);
        out.absorb(r);
    }
    out
}

fn audit_instance(p: &Pipeline, j: usize) -> StructureReport {
    let (h, f, lay, dec) = (&p.instances[j], &p.forests[j], &p.layouts[j], &p.dec);
    let mut r = StructureReport::default();
    landmark_laws(p, h, f, &mut r);
    backbone_laws(f, &mut r);
    let edges = instance_edges(p, h);
    let mut inducers: Vec<Inducer> = (0..f.supers.len())
        .filter(|&s| !f.blocks[f.supers[s].root].covered)
        .map(Inducer::SuperBlock)
        .collect();
    for &e in &p.owned[j] {
        if p.roles[j].get(&e) == Some(&EdgeRole::OuterChord) && !p.g.is_crossed(e) {
            inducers.push(Inducer::Chord(dec.sk.skel_edge[e]));
        }
    }
    for ind in inducers {
        let Ok(part) = partition_by(h, dec, f, ind) else {
            r.note(format!("instance {j}: partition by {ind:?} rejected"));
            r.interval += 1;
            continue;
        };
        r.partitions += 1;
        partition_laws(h, f, lay, &part, ind, j, &mut r);
        separation_law(h, &p.pos, &edges, &part, j, &mut r);
    }
    r
}

fn landmark_laws(p: &Pipeline, h: &TwoLevelGraph, f: &BlockForest, r: &mut StructureReport) {
    let uncrossed: HashSet<[VertexId; 2]> = p
        .g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| !p.g.is_crossed(e))
        .map(|(_, ed)| [ed.u.min(ed.v), ed.u.max(ed.v)])
        .collect();
    for b in &f.blocks {
        r.blocks += 1;
        if b.alpha > b.omega {
            r.landmark += 1;
            r.note(format!("instance {}: block {} has alpha {} > omega {}", h.id, b.id, b.alpha, b.omega));
        }
        if b.covered != (b.alpha == b.omega) {
            r.landmark += 1;
            r.note(format!("instance {}: block {} covered flag disagrees with landmarks", h.id, b.id));
        }
        if b.covered {
            let (l, a) = (b.leader(), h.outer[b.alpha]);
            if !uncrossed.contains(&[l.min(a), l.max(a)]) {
                r.enclosure += 1;
                r.note(format!("instance {}: covered block {} has no uncrossed leader edge", h.id, b.id));
            }
        }
        if let Some(pa) = b.parent {
            let a = &f.blocks[pa];
            if a.alpha > b.alpha || b.omega > a.omega {
                r.nesting += 1;
                r.note(format!("instance {}: block {} escapes the landmarks of parent {pa}", h.id, b.id));
            }
        }
        let t = &f.trees[b.tree];
        if t.alpha > b.alpha || t.omega < b.omega {
            r.nesting += 1;
            r.note(format!("instance {}: block {} escapes the landmarks of its tree", h.id, b.id));
        }
    }
}

fn backbone_laws(f: &BlockForest, r: &mut StructureReport) {
    for (t, tree) in f.trees.iter().enumerate() {
        let doms: HashSet<usize> = tree.blocks.iter().map(|&b| f.blocks[b].alpha).collect();
        for v in doms {
            let Ok(path) = backbone(f, t, v) else {
                r.backbone += 1;
                continue;
            };
            let ok_chain = path.windows(2).all(|w| f.blocks[w[1]].parent == Some(w[0]));
            let all_uncovered = path.iter().all(|&b| !f.blocks[b].covered);
            let rest_covered = tree
                .blocks
                .iter()
                .filter(|&&b| f.blocks[b].alpha == v && !path.contains(&b))
                .all(|&b| f.blocks[b].covered);
            if !(ok_chain && all_uncovered && rest_covered) {
                r.backbone += 1;
                r.note(format!("tree {t}: backbone under {v} is {path:?}"));
            }
        }
    }
}

fn partition_laws(
    h: &TwoLevelGraph,
    f: &BlockForest,
    lay: &Layout,
    part: &Partition,
    ind: Inducer,
    j: usize,
    r: &mut StructureReport,
) {
    let at = |v: VertexId| lay.position[&v];
    let (pi, pk) = (at(h.outer[part.vi]), at(h.outer[part.vk]));
    let h2: HashSet<VertexId> = part.h2.iter().copied().collect();
    for s in &f.supers {
        if s.alpha == part.vk && s.vertices.iter().any(|v| h2.contains(v)) {
            r.dominated_inside += 1;
            r.note(format!("instance {j}: {ind:?} has a super-block under its last vertex inside"));
        }
    }
    if part.h2.iter().any(|&v| at(v) > pk) {
        r.right_of_last += 1;
        r.note(format!("instance {j}: {ind:?} has an inside vertex right of its last vertex"));
    }
    let mut expect: HashSet<VertexId> = h2.clone();
    expect.extend(part.l.iter().copied());
    let between: HashSet<VertexId> = lay.order[pi + 1..pk]
        .iter()
        .copied()
        .filter(|&v| Some(v) != part.lambda)
        .collect();
    let left_before_inside = part
        .l
        .iter()
        .all(|&a| part.h2.iter().all(|&b| h.is_outer(b) || at(a) < at(b)));
    if between != expect || !left_before_inside {
        r.interval += 1;
        r.note(format!(
            "instance {j}: {ind:?} interval [{pi},{pk}] holds {} vertices, expected {}",
            between.len(),
            expect.len()
        ));
    }
}

fn separation_law(
    h: &TwoLevelGraph,
    pos: &[usize],
    edges: &[[VertexId; 2]],
    part: &Partition,
    j: usize,
    r: &mut StructureReport,
) {
    let h1: HashSet<VertexId> = part.h1.iter().copied().collect();
    let h2: HashSet<VertexId> = part.h2.iter().copied().collect();
    // Any well-separated pair has one edge touching the inside part and one
    // touching the outside part, so only those candidates are paired.
    let inside: Vec<[VertexId; 2]> =
        edges.iter().copied().filter(|e| e.iter().any(|v| h2.contains(v))).collect();
    let outside: Vec<[VertexId; 2]> =
        edges.iter().copied().filter(|e| e.iter().any(|v| h1.contains(v))).collect();
    for a in &inside {
        for b in &outside {
            if well_separated(h, part, *b, *a) {
                r.edge_pairs += 1;
                if twist(pos, *a, *b) {
                    r.separated_twist += 1;
                    r.note(format!("instance {j}: separated edges {a:?} and {b:?} twist"));
                }
            }
        }
    }
}

/// Endpoint pairs of every edge between vertices of `h`.
fn instance_edges(p: &Pipeline, h: &TwoLevelGraph) -> Vec<[VertexId; 2]> {
    let mine: HashSet<VertexId> = h.outer.iter().chain(h.inner.iter()).copied().collect();
    let mut out: Vec<[VertexId; 2]> = p
        .g
        .edges()
        .iter()
        .filter(|ed| ed.u != ed.v && mine.contains(&ed.u) && mine.contains(&ed.v))
        .map(|ed| [ed.u.min(ed.v), ed.u.max(ed.v)])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
