//! Four-page embedding of a 1-planar drawing whose planar skeleton has a
//! Hamiltonian cycle.
//!
//! The cycle is the spine. Each crossing pair contributes its smaller edge to
//! the first subgraph and the other edge to the second; both subgraphs are
//! plane and contain the cycle, so each splits into the edges inside and
//! outside of it.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_model::{edge_of, VertexId, NONE};
use crate::normalizer::NormalizedMultigraph;
use crate::paginator::{BookEmbedding, EmbedStats, PageLedger};
use crate::specials::generators::{xw_pole_p, xw_pole_q, xw_rim};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateSource {
    Provided,
    XwClosedForm,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianCertificate {
    pub cycle: Vec<VertexId>,
    pub source: CertificateSource,
}

/// Search effort for the backtracking fallback, in extension steps.
pub const SEARCH_BUDGET: usize = 2_000_000;

/// Largest vertex count for which the backtracking search runs.
pub const SEARCH_MAX_N: usize = 30;

fn skeleton_adjacency(g: &NormalizedMultigraph) -> Vec<HashSet<VertexId>> {
    let mut adj = vec![HashSet::new(); g.n()];
    for (e, ed) in g.edges().iter().enumerate() {
        if !g.is_crossed(e) && ed.u != ed.v {
            adj[ed.u].insert(ed.v);
            adj[ed.v].insert(ed.u);
        }
    }
    adj
}

/// Checks that `cycle` visits every vertex once along uncrossed edges.
pub fn validate_certificate(g: &NormalizedMultigraph, cycle: &[VertexId]) -> Result<()> {
    let n = g.n();
    if cycle.len() != n || n < 3 {
        return Err(Error::InvalidCertificate(format!("cycle has {} vertices, graph has {n}", cycle.len())));
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidCertificate(format!("vertex {v} repeated or out of range")));
        }
    }
    let adj = skeleton_adjacency(g);
    for i in 0..n {
        let (u, v) = (cycle[i], cycle[(i + 1) % n]);
        if !adj[u].contains(&v) {
            return Err(Error::InvalidCertificate(format!("no uncrossed edge between {u} and {v}")));
        }
    }
    Ok(())
}

/// The cycle `(p, v2, v1, q, v3, v4, ..., v2k)` of an extended wheel in
/// generator numbering.
pub fn xw_closed_form(k: usize) -> Vec<VertexId> {
    let mut c = vec![xw_pole_p(), xw_rim(k, 2), xw_rim(k, 1), xw_pole_q()];
    c.extend((3..=2 * k).map(|i| xw_rim(k, i)));
    c
}

/// Finds a Hamiltonian cycle of the planar skeleton: the closed form for
/// extended wheels in generator numbering, else a bounded backtracking search.
pub fn find_skeleton_hamiltonian(g: &NormalizedMultigraph) -> Option<HamiltonianCertificate> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    if n % 2 == 0 && n >= 8 && g.m() == 4 * n - 8 {
        let c = xw_closed_form((n - 2) / 2);
        if validate_certificate(g, &c).is_ok() {
            return Some(HamiltonianCertificate { cycle: c, source: CertificateSource::XwClosedForm });
        }
    }
    if n > SEARCH_MAX_N {
        return None;
    }
    let adj: Vec<Vec<VertexId>> = skeleton_adjacency(g)
        .into_iter()
        .map(|s| {
            let mut v: Vec<_> = s.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect();
    if adj.iter().any(|a| a.len() < 2) {
        return None;
    }
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    let mut budget = SEARCH_BUDGET;
    if extend(&adj, &mut path, &mut used, &mut budget) {
        Some(HamiltonianCertificate { cycle: path, source: CertificateSource::Search })
    } else {
        None
    }
}

fn extend(adj: &[Vec<VertexId>], path: &mut Vec<VertexId>, used: &mut [bool], budget: &mut usize) -> bool {
    let n = adj.len();
    let last = *path.last().unwrap();
    if path.len() == n {
        return adj[last].contains(&path[0]);
    }
    for &w in &adj[last] {
        if used[w] {
            continue;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        used[w] = true;
        path.push(w);
        if extend(adj, path, used, budget) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

/// Embeds every edge of `g` in at most four pages along the certified cycle.
pub fn hamiltonian_embed(g: &NormalizedMultigraph, cert: &HamiltonianCertificate) -> Result<BookEmbedding> {
    validate_certificate(g, &cert.cycle)?;
    let n = g.n();
    let d = &g.drawing;
    let plan = &d.plan;
    // One planarization dart per cycle step, leaving cycle[i] toward cycle[i+1].
    let mut cycle_edge = vec![NONE; n];
    let mut on_cycle = vec![false; g.m()];
    for i in 0..n {
        let (u, v) = (cert.cycle[i], cert.cycle[(i + 1) % n]);
        let e = (0..g.m())
            .find(|&e| {
                let ed = g.edges()[e];
                !g.is_crossed(e) && !on_cycle[e] && ((ed.u == u && ed.v == v) || (ed.u == v && ed.v == u))
            })
            .expect("validated cycle edge");
        on_cycle[e] = true;
        let s = g.segments[e][0];
        cycle_edge[i] = if plan.tail(2 * s) == u { 2 * s } else { 2 * s + 1 };
    }
    // Darts strictly clockwise after the outgoing cycle dart and before the
    // incoming one lie on the inner side.
    let mut inside_dart = HashSet::new();
    for i in 0..n {
        let out = cycle_edge[i];
        let back = cycle_edge[(i + n - 1) % n] ^ 1;
        let mut x = plan.cw(out);
        while x != back {
            inside_dart.insert(x);
            x = plan.cw(x);
        }
    }
    let mut page = vec![Some(0); g.m()];
    for (e, ed) in g.edges().iter().enumerate() {
        if on_cycle[e] {
            continue;
        }
        let s = g.segments[e][0];
        let from_u = if plan.tail(2 * s) == ed.u { 2 * s } else { 2 * s + 1 };
        debug_assert_eq!(edge_of(from_u), s);
        let side = usize::from(!inside_dart.contains(&from_u));
        let second = g.partner[e].is_some_and(|p| p < e);
        page[e] = Some(side + if second { 2 } else { 0 });
    }
    // Used pages are renumbered densely.
    let mut used: Vec<usize> = page.iter().flatten().copied().collect::<HashSet<_>>().into_iter().collect();
    used.sort_unstable();
    for p in page.iter_mut().flatten() {
        *p = used.iter().position(|&x| x == *p).unwrap();
    }
    let mut stats = EmbedStats { n, m: g.m(), instances: 1, ..Default::default() };
    stats.pages_used = used.len();
    stats.edges_per_page = vec![0; used.len()];
    for p in page.iter().flatten() {
        stats.edges_per_page[*p] += 1;
    }
    Ok(BookEmbedding { spine: cert.cycle.clone(), page, ledger: PageLedger::default(), stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_model::build_drawing;
    use crate::specials::generators::{gen_cycle, gen_xw, planar_k4, straight_line};
    use crate::verifier_oracle::{verify, SimpleGraph};

    fn raw(spec: &crate::graph_model::DrawingSpec) -> NormalizedMultigraph {
        NormalizedMultigraph::from_drawing(build_drawing(spec).unwrap())
    }

    fn check(g: &NormalizedMultigraph, b: &BookEmbedding) -> usize {
        let sg = SimpleGraph::new(g.n(), g.edges().iter().map(|e| [e.u, e.v]).collect());
        assert!(verify(&sg, &b.spine, &b.page).unwrap().valid);
        b.stats.pages_used
    }

    #[test]
    fn xw_closed_form_gives_four_pages() {
        for k in 3..8 {
            let g = raw(&gen_xw(k).unwrap());
            let c = find_skeleton_hamiltonian(&g).unwrap();
            assert_eq!(c.source, CertificateSource::XwClosedForm);
            assert_eq!(check(&g, &hamiltonian_embed(&g, &c).unwrap()), 4);
        }
    }

    #[test]
    fn k4_search_finds_cycle() {
        let g = raw(&planar_k4());
        let c = find_skeleton_hamiltonian(&g).unwrap();
        assert_eq!(c.source, CertificateSource::Search);
        assert!(check(&g, &hamiltonian_embed(&g, &c).unwrap()) <= 2);
    }

    #[test]
    fn star_has_no_cycle() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (-1.0, 1.0), (-1.0, -1.0)];
        let g = raw(&straight_line(&pts, &[[0, 1], [0, 2], [0, 3]]));
        assert!(find_skeleton_hamiltonian(&g).is_none());
    }

    #[test]
    fn hexagon_uses_one_page() {
        let pts: Vec<(f64, f64)> = (0..6)
            .map(|i| {
                let a = std::f64::consts::PI * i as f64 / 3.0;
                (a.cos(), a.sin())
            })
            .collect();
        let g = raw(&straight_line(&pts, &gen_cycle(6)));
        let c = find_skeleton_hamiltonian(&g).unwrap();
        assert_eq!(check(&g, &hamiltonian_embed(&g, &c).unwrap()), 1);
    }

    #[test]
    fn bad_certificate_rejected() {
        let g = raw(&planar_k4());
        let c = HamiltonianCertificate { cycle: vec![0, 1, 2], source: CertificateSource::Provided };
        assert!(matches!(hamiltonian_embed(&g, &c), Err(Error::InvalidCertificate(_))));
    }
}
