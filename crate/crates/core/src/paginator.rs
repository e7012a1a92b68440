//! Page assignment per instance and its composition into at most ten pages.
//!
//! Global page indices: 0 to 4 carry black and green edges, 5 and 6 red edges
//! by level parity, 7 to 9 purple edges. Any twist left after composition is
//! repaired by relocating single edges, first within the ten pages and then
//! onto overflow pages from 10 upward.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::blocks::{analyze_blocks, BlockForest};
use crate::colorist::{color_edges, ColorCase, EdgeColoring, PurpleKind};
use crate::error::Result;
use crate::graph_model::{Color, DrawingSpec, EdgeId, Origin, VertexId, NONE};
use crate::leveler::{
    compute_levels, crossing_index, edge_owners, edge_role, extract_two_level, root_instance,
    EdgeRole, LevelDecomposition, TwoLevelGraph,
};
use crate::normalizer::{normalize, NormalizeStats, NormalizedMultigraph};
use crate::orderer::{compose_order, order_two_level, Layout};
use crate::verifier_oracle::{positions, twist, verify, SimpleGraph};

pub const PAGE_LIMIT: usize = 10;
pub const RED_PAGES: [usize; 2] = [5, 6];
pub const CHI: usize = 7;
pub const CHI_BAR: [usize; 2] = [8, 9];

/// Logical page of an edge inside its instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LogicalPage {
    Eta,
    Pi,
    PiBar,
    Rho,
    Chi,
    ChiBar,
}

/// Global pages of one instance.
#[derive(Debug, Clone, Serialize)]
pub struct InstancePages {
    pub instance: usize,
    pub level: usize,
    pub eta: usize,
    /// `pair[d % 2]` is the page of inner edges of super-blocks at depth `d`.
    pub pair: [usize; 2],
    pub rho: usize,
    pub chi: usize,
    pub chi_bar: usize,
    /// Set when the parent moved a handle onto this block's page. Outer
    /// chords at the last outer vertex then leave `eta` for a page of `pair`.
    pub last_chords: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PageLedger {
    pub instances: Vec<InstancePages>,
    pub relocations: usize,
    pub overflow_pages: Vec<usize>,
    pub diagnostics: Vec<String>,
}

/// Logical roles used by one instance before composition.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceAudit {
    pub instance: usize,
    pub level: usize,
    pub roles: usize,
    pub skeleton_roles: usize,
    pub purple_roles: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct EmbedStats {
    pub n: usize,
    pub m: usize,
    pub pages_used: usize,
    pub edges_per_page: Vec<usize>,
    pub instances: usize,
    pub max_level: usize,
    pub normalize: NormalizeStats,
    pub audits: Vec<InstanceAudit>,
    pub colors: HashMap<String, usize>,
    pub purple_kinds: HashMap<String, usize>,
    pub hooks: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BookEmbedding {
    pub spine: Vec<VertexId>,
    /// Page of every edge of the input drawing.
    pub page: Vec<Option<usize>>,
    pub ledger: PageLedger,
    pub stats: EmbedStats,
}

impl BookEmbedding {
    pub fn pages_used(&self) -> usize {
        self.page.iter().flatten().collect::<HashSet<_>>().len()
    }

    pub fn overflow(&self) -> usize {
        self.page.iter().flatten().filter(|&&p| p >= PAGE_LIMIT).collect::<HashSet<_>>().len()
    }
}

/// Everything computed on the way to an embedding.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub g: NormalizedMultigraph,
    pub dec: LevelDecomposition,
    pub instances: Vec<TwoLevelGraph>,
    pub forests: Vec<BlockForest>,
    pub layouts: Vec<Layout>,
    pub spine: Vec<VertexId>,
    pub pos: Vec<usize>,
    pub owner: Vec<usize>,
    pub owned: Vec<Vec<EdgeId>>,
    pub colorings: Vec<EdgeColoring>,
    pub roles: Vec<HashMap<EdgeId, EdgeRole>>,
    /// Page of every edge of `g` before repair.
    pub page: Vec<usize>,
    pub ledger: PageLedger,
    pub audits: Vec<InstanceAudit>,
}

/// Peels, orders, colors and pages a normalized drawing.
pub fn run_pipeline(g: NormalizedMultigraph) -> Result<Pipeline> {
    let dec = compute_levels(&g)?;
    let mut face_owner = vec![NONE; dec.fs.count()];
    let mut instances = vec![root_instance(&dec, &mut face_owner)];
    let mut forests: Vec<BlockForest> = Vec::new();
    let mut child_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut i = 0;
    while i < instances.len() {
        let f = analyze_blocks(&instances[i], &dec);
        let mut children = Vec::new();
        {
            let h = &instances[i];
            for b in &f.blocks {
                if b.elementary {
                    continue;
                }
                let face = h.drawn_left(&dec, b.darts[0]);
                if face == dec.fs.outer || face_owner[face] != NONE {
                    continue;
                }
                let id = instances.len() + children.len();
                let child = extract_two_level(
                    &dec,
                    id,
                    h.level + 1,
                    !h.mirror,
                    Some((i, b.id)),
                    b.darts.clone(),
                    &mut face_owner,
                );
                child_of.insert((i, b.id), id);
                children.push(child);
            }
        }
        forests.push(f);
        instances.extend(children);
        i += 1;
    }
    let mut ledger = PageLedger::default();
    for (fc, &o) in face_owner.iter().enumerate() {
        if o == NONE && fc != dec.fs.outer {
            ledger.diagnostics.push(format!("face {fc} belongs to no instance"));
        }
    }
    let layouts: Vec<Layout> =
        instances.iter().zip(&forests).map(|(h, f)| order_two_level(h, f)).collect();
    let n = g.n();
    let spine = compose_order(n, &instances, &layouts);
    let pos = positions(&spine);
    let levels: Vec<usize> = instances.iter().map(|h| h.level).collect();
    let owner = edge_owners(&g, &dec, &face_owner, &levels);
    let mut owned = vec![Vec::new(); instances.len()];
    for (e, &o) in owner.iter().enumerate() {
        if o == NONE {
            ledger.diagnostics.push(format!("edge {e} belongs to no instance"));
        } else {
            owned[o].push(e);
        }
    }
    let crossing_of = crossing_index(&g);
    let colorings: Vec<EdgeColoring> = (0..instances.len())
        .map(|j| color_edges(&g, &dec, &instances[j], &forests[j], &owned[j], &crossing_of))
        .collect();
    for c in &colorings {
        ledger.diagnostics.extend(c.diagnostics.iter().cloned());
    }
    let roles: Vec<HashMap<EdgeId, EdgeRole>> = (0..instances.len())
        .map(|j| owned[j].iter().map(|&e| (e, edge_role(&g, &dec, &instances[j], e))).collect())
        .collect();
    // Page sets, parents first.
    let mut pages: Vec<InstancePages> = Vec::with_capacity(instances.len());
    let mut page = vec![NONE; g.m()];
    let mut audits = Vec::new();
    let mut last_chords: HashSet<usize> = HashSet::new();
    for j in 0..instances.len() {
        let h = &instances[j];
        let mut ip = match h.parent {
            None => InstancePages {
                instance: j,
                level: 0,
                eta: 0,
                pair: [1, 2],
                rho: RED_PAGES[0],
                chi: CHI,
                chi_bar: CHI_BAR[0],
                last_chords: false,
            },
            Some((p, b)) => {
                let pp = &pages[p];
                let s = forests[p].super_of_block[b];
                let depth = forests[p].supers[s].depth;
                let pi = pp.pair[depth % 2];
                let pibar = pp.pair[1 - depth % 2];
                let rest: Vec<usize> =
                    (0..5).filter(|&x| x != pp.eta && x != pi && x != pibar).collect();
                InstancePages {
                    instance: j,
                    level: h.level,
                    eta: pi,
                    pair: [rest[0], rest[1]],
                    rho: RED_PAGES[h.level % 2],
                    chi: CHI,
                    chi_bar: CHI_BAR[h.level % 2],
                    last_chords: false,
                }
            }
        };
        ip.last_chords = last_chords.contains(&j);
        let (logical, moved) = assign_pages_two_level(
            &g, &dec, h, &forests[j], &colorings[j], &roles[j], &owned[j], &pos, &ip, &mut page,
        );
        for b in moved {
            if let Some(&c) = child_of.get(&(j, b)) {
                last_chords.insert(c);
            }
        }
        audits.push(audit_roles(j, h.level, &logical, &colorings[j]));
        pages.push(ip);
    }
    ledger.instances = pages;
    Ok(Pipeline {
        g,
        dec,
        instances,
        forests,
        layouts,
        spine,
        pos,
        owner,
        owned,
        colorings,
        roles,
        page,
        ledger,
        audits,
    })
}

fn audit_roles(
    j: usize,
    level: usize,
    logical: &HashMap<EdgeId, LogicalPage>,
    c: &EdgeColoring,
) -> InstanceAudit {
    let mut skel = HashSet::new();
    let mut purple = HashSet::new();
    for (&e, &l) in logical {
        if c.of(e) == Color::Purple {
            purple.insert(l);
        } else {
            skel.insert(l);
        }
    }
    InstanceAudit {
        instance: j,
        level,
        roles: skel.union(&purple).count(),
        skeleton_roles: skel.len(),
        purple_roles: purple.len(),
    }
}

/// Assigns the pages of the edges owned by `h`. Returns the logical page of
/// every edge and the blocks whose handle moved onto their inner page.
#[allow(clippy::too_many_arguments)]
pub fn assign_pages_two_level(
    g: &NormalizedMultigraph,
    dec: &LevelDecomposition,
    h: &TwoLevelGraph,
    f: &BlockForest,
    c: &EdgeColoring,
    roles: &HashMap<EdgeId, EdgeRole>,
    owned: &[EdgeId],
    pos: &[usize],
    ip: &InstancePages,
    page: &mut [usize],
) -> (HashMap<EdgeId, LogicalPage>, Vec<usize>) {
    let mut logical = HashMap::new();
    let mut moved = Vec::new();
    let pi_of = |s: usize| ip.pair[f.supers[s].depth % 2];
    let pibar_of = |s: usize| ip.pair[1 - f.supers[s].depth % 2];
    let super_of = |v: VertexId| f.super_of_vertex(v).unwrap_or(0);
    let mut purple = Vec::new();
    let t = h.t();
    for &e in owned {
        let ed = g.edges()[e];
        let role = roles[&e];
        let col = c.of(e);
        let (l, p) = match col {
            Color::Red => (LogicalPage::Rho, ip.rho),
            Color::Purple => {
                if c.purple_kind.get(&e) == Some(&PurpleKind::Handle) {
                    let b = c.assigned_block[&e];
                    moved.push(b);
                    page[e] = pi_of(f.super_of_block[b]);
                } else {
                    purple.push(e);
                }
                logical.insert(e, LogicalPage::Chi);
                continue;
            }
            _ => match role {
                EdgeRole::OuterEdge => (LogicalPage::Eta, ip.eta),
                EdgeRole::OuterChord => {
                    let (iu, iv) = (h.oidx(ed.u).unwrap_or(0), h.oidx(ed.v).unwrap_or(0));
                    if ip.last_chords && t > 0 && iu.max(iv) == t {
                        (LogicalPage::PiBar, last_chord_page(f, ip, iu.min(iv)))
                    } else {
                        (LogicalPage::Eta, ip.eta)
                    }
                }
                EdgeRole::Binding => {
                    let (x, u) = if h.is_outer(ed.u) { (ed.v, ed.u) } else { (ed.u, ed.v) };
                    if pos[u] < pos[x] {
                        (LogicalPage::Eta, ip.eta)
                    } else {
                        (LogicalPage::PiBar, pibar_of(super_of(x)))
                    }
                }
                EdgeRole::InnerEdge => {
                    let s = f
                        .block_of_edge
                        .get(&dec.sk.skel_edge[e])
                        .map(|&b| f.super_of_block[b])
                        .unwrap_or_else(|| super_of(ed.u));
                    (LogicalPage::Pi, pi_of(s))
                }
                EdgeRole::InnerChord => {
                    let x = if pos[ed.u] < pos[ed.v] { ed.u } else { ed.v };
                    (LogicalPage::PiBar, pibar_of(super_of(x)))
                }
                EdgeRole::Foreign => (LogicalPage::Eta, ip.eta),
            },
        };
        logical.insert(e, l);
        page[e] = p;
    }
    // Remaining purple edges: two-color their twist graph.
    let k = purple.len();
    let ends: Vec<[VertexId; 2]> = purple.iter().map(|&e| [g.edges()[e].u, g.edges()[e].v]).collect();
    let mut side = vec![NONE; k];
    for s in 0..k {
        if side[s] != NONE {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for b in 0..k {
                if b != a && twist(pos, ends[a], ends[b]) && side[b] == NONE {
                    side[b] = 1 - side[a];
                    queue.push_back(b);
                }
            }
        }
    }
    for (j, &e) in purple.iter().enumerate() {
        if side[j] == 0 {
            page[e] = ip.chi;
        } else {
            page[e] = ip.chi_bar;
            logical.insert(e, LogicalPage::ChiBar);
        }
    }
    (logical, moved)
}

/// Page for an outer chord from outer index `i` to the last outer vertex:
/// the opposite page of the least super-block dominated by `i`.
fn last_chord_page(f: &BlockForest, ip: &InstancePages, i: usize) -> usize {
    let least = (0..f.supers.len()).filter(|&s| f.supers[s].alpha == i).min_by_key(|&s| f.supers[s].rank);
    match least {
        Some(s) => ip.pair[1 - f.supers[s].depth % 2],
        None => ip.pair[1],
    }
}

/// Restricts the pipeline's pages to the input edges and repairs twists.
pub fn compose_pages(p: &Pipeline, m_input: usize) -> Result<BookEmbedding> {
    let g = &p.g;
    let mut ledger = p.ledger.clone();
    let edges: Vec<[VertexId; 2]> = (0..m_input).map(|e| [g.edges()[e].u, g.edges()[e].v]).collect();
    let mut page: Vec<usize> = (0..m_input)
        .map(|e| if p.page[e] == NONE { 0 } else { p.page[e] })
        .collect();
    let relocations = repair(g.n(), &p.spine, &edges, &mut page, &mut ledger)?;
    ledger.relocations = relocations;
    let mut stats = EmbedStats {
        n: g.n(),
        m: m_input,
        instances: p.instances.len(),
        max_level: p.dec.max_level(),
        normalize: g.stats.clone(),
        audits: p.audits.clone(),
        ..Default::default()
    };
    let top = page.iter().copied().max().map_or(0, |x| x + 1);
    stats.edges_per_page = vec![0; top];
    for &x in &page {
        stats.edges_per_page[x] += 1;
    }
    stats.pages_used = stats.edges_per_page.iter().filter(|&&c| c > 0).count();
    ledger.overflow_pages =
        (PAGE_LIMIT..top).filter(|&x| stats.edges_per_page[x] > 0).collect();
    for c in &p.colorings {
        for (&e, &col) in &c.color {
            if e < m_input {
                *stats.colors.entry(format!("{col:?}")).or_insert(0) += 1;
            }
        }
        for k in c.purple_kind.values() {
            *stats.purple_kinds.entry(format!("{k:?}")).or_insert(0) += 1;
            if *k == PurpleKind::Hook {
                stats.hooks += 1;
            }
        }
    }
    Ok(BookEmbedding {
        spine: p.spine.clone(),
        page: page.into_iter().map(Some).collect(),
        ledger,
        stats,
    })
}

/// Moves twisting edges to the first page where they twist nothing. Returns
/// the number of moves.
fn repair(
    n: usize,
    spine: &[VertexId],
    edges: &[[VertexId; 2]],
    page: &mut [usize],
    ledger: &mut PageLedger,
) -> Result<usize> {
    let g = SimpleGraph::new(n, edges.to_vec());
    let pos = positions(spine);
    let report = verify(&g, spine, &page.iter().map(|&p| Some(p)).collect::<Vec<_>>())?;
    if report.valid {
        return Ok(0);
    }
    let mut count: HashMap<usize, usize> = HashMap::new();
    for &(_, a, b) in &report.conflicts {
        *count.entry(a).or_insert(0) += 1;
        *count.entry(b).or_insert(0) += 1;
    }
    let mut suspects: Vec<usize> = count.keys().copied().collect();
    suspects.sort_by_key(|&e| (std::cmp::Reverse(count[&e]), e));
    let top = page.iter().copied().max().unwrap_or(0) + 1;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); top.max(PAGE_LIMIT)];
    for (e, &p) in page.iter().enumerate() {
        members[p].push(e);
    }
    let clashes = |members: &[Vec<usize>], p: usize, e: usize| {
        members.get(p).is_some_and(|m| m.iter().any(|&x| x != e && twist(&pos, edges[x], edges[e])))
    };
    let mut moves = 0;
    for e in suspects {
        let cur = page[e];
        if !clashes(&members, cur, e) {
            continue;
        }
        members[cur].retain(|&x| x != e);
        let mut target = 0;
        while clashes(&members, target, e) {
            target += 1;
        }
        if target >= members.len() {
            members.resize(target + 1, Vec::new());
        }
        if target >= PAGE_LIMIT {
            ledger.diagnostics.push(format!(
                "edge {e} ({}, {}) moved to overflow page {target}",
                edges[e][0], edges[e][1]
            ));
        }
        members[target].push(e);
        page[e] = target;
        moves += 1;
    }
    Ok(moves)
}

/// Full pipeline from a drawing to a verified embedding of its edges.
pub fn embed(spec: &DrawingSpec) -> Result<BookEmbedding> {
    let g = normalize(spec)?;
    let m_input = spec.edges.len();
    debug_assert!(g.edges()[..m_input].iter().all(|e| e.origin == Origin::Original));
    if g.n() < 3 {
        return Ok(BookEmbedding {
            spine: (0..g.n()).collect(),
            page: vec![Some(0); m_input],
            ledger: PageLedger::default(),
            stats: EmbedStats { n: g.n(), m: m_input, pages_used: usize::from(m_input > 0), ..Default::default() },
        });
    }
    let p = run_pipeline(g)?;
    compose_pages(&p, m_input)
}

/// Colors of the input edges, for rendering.
pub fn input_colors(p: &Pipeline, m_input: usize) -> Vec<Color> {
    let mut out = vec![Color::Uncolored; m_input];
    for (j, c) in p.colorings.iter().enumerate() {
        for &e in &p.owned[j] {
            if e < m_input {
                out[e] = c.of(e);
            }
        }
    }
    out
}

/// Count of edges per coloring rule, for diagnostics.
pub fn case_histogram(p: &Pipeline) -> HashMap<ColorCase, usize> {
    let mut out = HashMap::new();
    for c in &p.colorings {
        for k in c.case.values() {
            *out.entry(*k).or_insert(0) += 1;
        }
    }
    out
}
