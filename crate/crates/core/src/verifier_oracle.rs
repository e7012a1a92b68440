//! Independent checks for book embeddings and exact page numbers of tiny graphs.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_model::{EdgeId, VertexId};

/// A plain multigraph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<[VertexId; 2]>) -> Self {
        SimpleGraph { n, edges }
    }

    /// Distinct vertex pairs, self-loops dropped.
    pub fn simple_pairs(&self) -> Vec<[VertexId; 2]> {
        let set: BTreeSet<[VertexId; 2]> = self
            .edges
            .iter()
            .filter(|[u, v]| u != v)
            .map(|&[u, v]| [u.min(v), u.max(v)])
            .collect();
        set.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    /// `(page, e1, e2)` with `e1 < e2`, sorted.
    pub conflicts: Vec<(usize, EdgeId, EdgeId)>,
    pub pages_used: usize,
    pub unassigned_edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub orders_examined: u64,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub book_thickness: usize,
    pub spine: Vec<VertexId>,
    /// Page of each edge of the input graph.
    pub page: Vec<usize>,
    pub stats: SearchStats,
}

/// Spine position of every vertex.
pub fn positions(spine: &[VertexId]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; spine.len()];
    for (i, &v) in spine.iter().enumerate() {
        if v < pos.len() {
            pos[v] = i;
        }
    }
    pos
}

/// True iff the two edges interleave strictly on the spine.
pub fn twist(pos: &[usize], e1: [VertexId; 2], e2: [VertexId; 2]) -> bool {
    let (a, b) = span(pos, e1);
    let (c, d) = span(pos, e2);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn span(pos: &[usize], e: [VertexId; 2]) -> (usize, usize) {
    let (x, y) = (pos[e[0]], pos[e[1]]);
    (x.min(y), x.max(y))
}

fn check_spine(n: usize, spine: &[VertexId]) -> Result<Vec<usize>> {
    if spine.len() != n {
        return Err(Error::SpineMismatch(format!("spine has {} vertices, graph has {n}", spine.len())));
    }
    let pos = positions(spine);
    if pos.iter().any(|&p| p == usize::MAX) {
        return Err(Error::SpineMismatch("spine is not a permutation of the vertices".into()));
    }
    Ok(pos)
}

/// Checks every page for twisting edges with a stack sweep.
pub fn verify(g: &SimpleGraph, spine: &[VertexId], page: &[Option<usize>]) -> Result<VerifyReport> {
    let pos = check_spine(g.n, spine)?;
    if page.len() != g.edges.len() {
        return Err(Error::SpineMismatch(format!(
            "{} page entries for {} edges",
            page.len(),
            g.edges.len()
        )));
    }
    let unassigned: Vec<EdgeId> = (0..page.len()).filter(|&e| page[e].is_none()).collect();
    let pages: BTreeSet<usize> = page.iter().flatten().copied().collect();
    let mut conflicts = Vec::new();
    for &p in &pages {
        let members: Vec<EdgeId> = (0..page.len()).filter(|&e| page[e] == Some(p)).collect();
        for (a, b) in sweep_conflicts(&pos, &g.edges, &members) {
            conflicts.push((p, a.min(b), a.max(b)));
        }
    }
    conflicts.sort_unstable();
    if g.edges.len() <= 1000 {
        debug_assert_eq!(conflicts, quadratic_conflicts(&pos, &g.edges, page));
    }
    Ok(VerifyReport {
        valid: conflicts.is_empty() && unassigned.is_empty(),
        conflicts,
        pages_used: pages.len(),
        unassigned_edges: unassigned,
    })
}

/// All twisting pairs among `members`. An edge is popped when its right end
/// is reached; every edge still above it on the stack twists with it.
fn sweep_conflicts(
    pos: &[usize],
    edges: &[[VertexId; 2]],
    members: &[EdgeId],
) -> Vec<(EdgeId, EdgeId)> {
    let n = pos.len();
    let mut opens: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    let mut closes: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    let spans: Vec<(usize, usize)> = edges.iter().map(|&e| span(pos, e)).collect();
    for &e in members {
        let (l, r) = spans[e];
        if l == r {
            continue;
        }
        opens[l].push(e);
        closes[r].push(e);
    }
    let mut stack: Vec<EdgeId> = Vec::new();
    let mut pushed_at = vec![0usize; edges.len()];
    let mut out = Vec::new();
    let mut clock = 0;
    for p in 0..n {
        let mut cl = std::mem::take(&mut closes[p]);
        cl.sort_by_key(|&e| std::cmp::Reverse((spans[e].0, pushed_at[e])));
        for e in cl {
            let i = stack.iter().rposition(|&x| x == e).expect("closing edge is open");
            for &t in &stack[i + 1..] {
                out.push((e, t));
            }
            stack.remove(i);
        }
        let mut op = std::mem::take(&mut opens[p]);
        op.sort_by_key(|&e| std::cmp::Reverse(spans[e].1));
        for e in op {
            pushed_at[e] = clock;
            clock += 1;
            stack.push(e);
        }
    }
    out
}

/// Pairwise reference check.
pub fn quadratic_conflicts(
    pos: &[usize],
    edges: &[[VertexId; 2]],
    page: &[Option<usize>],
) -> Vec<(usize, EdgeId, EdgeId)> {
    let mut out = Vec::new();
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            if let (Some(p), Some(q)) = (page[a], page[b]) {
                if p == q && twist(pos, edges[a], edges[b]) {
                    out.push((p, a, b));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Bit rows of the twist graph among `pairs`.
fn twist_rows(pos: &[usize], pairs: &[[VertexId; 2]]) -> Vec<u128> {
    let m = pairs.len();
    let mut rows = vec![0u128; m];
    for a in 0..m {
        for b in a + 1..m {
            if twist(pos, pairs[a], pairs[b]) {
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
            }
        }
    }
    rows
}

/// Tries to colour the twist graph with `k` colours.
fn colour(rows: &[u128], k: usize, nodes: &mut u64, stop: &AtomicBool) -> Option<Vec<usize>> {
    let m = rows.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&e| std::cmp::Reverse(rows[e].count_ones()));
    let mut col = vec![usize::MAX; m];
    // class[c]: edges already given colour c.
    let mut class = vec![0u128; k];
    fn go(
        i: usize,
        used: usize,
        order: &[usize],
        rows: &[u128],
        col: &mut [usize],
        class: &mut [u128],
        nodes: &mut u64,
        stop: &AtomicBool,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        *nodes += 1;
        if *nodes & 0xfff == 0 && stop.load(Ordering::Relaxed) {
            return false;
        }
        let e = order[i];
        let k = class.len();
        for c in 0..k.min(used + 1) {
            if rows[e] & class[c] != 0 {
                continue;
            }
            col[e] = c;
            class[c] |= 1 << e;
            if go(i + 1, used.max(c + 1), order, rows, col, class, nodes, stop) {
                return true;
            }
            class[c] &= !(1 << e);
        }
        col[e] = usize::MAX;
        false
    }
    if m == 0 {
        return Some(col);
    }
    if k == 0 {
        return None;
    }
    go(0, 0, &order, rows, &mut col, &mut class, nodes, stop).then_some(col)
}

fn map_pages(g: &SimpleGraph, pairs: &[[VertexId; 2]], col: &[usize]) -> Vec<usize> {
    g.edges
        .iter()
        .map(|&[u, v]| {
            let key = [u.min(v), u.max(v)];
            pairs.binary_search(&key).map(|i| col[i]).unwrap_or(0)
        })
        .collect()
}

/// Fewest pages for a fixed spine order.
pub fn pages_for_fixed_order(g: &SimpleGraph, order: &[VertexId]) -> Result<usize> {
    if g.n > 12 {
        return Err(Error::TooLarge(format!("{} vertices, at most 12 allowed", g.n)));
    }
    let pos = check_spine(g.n, order)?;
    let pairs = g.simple_pairs();
    let rows = twist_rows(&pos, &pairs);
    let stop = AtomicBool::new(false);
    let mut nodes = 0;
    let mut k = usize::from(!pairs.is_empty());
    while colour(&rows, k, &mut nodes, &stop).is_none() {
        k += 1;
    }
    Ok(k)
}

/// Spine orders up to rotation and reflection: vertex 0 first and the second
/// vertex smaller than the last.
fn circular_orders_with_second(n: usize, second: VertexId) -> Vec<Vec<VertexId>> {
    let rest: Vec<VertexId> = (1..n).filter(|&v| v != second).collect();
    let mut out = Vec::new();
    let mut perm = rest.clone();
    permute(&mut perm, 0, &mut |p| {
        if p.last().map_or(true, |&l| second < l) {
            let mut o = Vec::with_capacity(n);
            o.push(0);
            o.push(second);
            o.extend_from_slice(p);
            out.push(o);
        }
    });
    out
}

fn permute(a: &mut Vec<VertexId>, k: usize, f: &mut dyn FnMut(&[VertexId])) {
    if k == a.len() {
        f(a);
        return;
    }
    for i in k..a.len() {
        a.swap(k, i);
        permute(a, k + 1, f);
        a.swap(k, i);
    }
}

/// Exact book thickness by exhaustive search over spine orders.
pub fn exact_book_thickness(g: &SimpleGraph) -> Result<OracleResult> {
    if g.n > 8 {
        return Err(Error::TooLarge(format!("{} vertices, at most 8 allowed", g.n)));
    }
    let n = g.n;
    let pairs = g.simple_pairs();
    let mut stats = SearchStats::default();
    if n <= 2 || pairs.is_empty() {
        return Ok(OracleResult {
            book_thickness: usize::from(!pairs.is_empty()),
            spine: (0..n).collect(),
            page: vec![0; g.edges.len()],
            stats,
        });
    }
    let prefixes: Vec<Vec<Vec<VertexId>>> =
        (1..n).map(|s| circular_orders_with_second(n, s)).collect();
    let mut k = 1;
    loop {
        let stop = AtomicBool::new(false);
        let results: Vec<(Option<(Vec<VertexId>, Vec<usize>)>, SearchStats)> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = prefixes
                    .iter()
                    .map(|orders| {
                        let (pairs, stop) = (&pairs, &stop);
                        scope.spawn(move || {
                            let mut st = SearchStats::default();
                            for o in orders {
                                if stop.load(Ordering::Relaxed) {
                                    break;
                                }
                                st.orders_examined += 1;
                                let rows = twist_rows(&positions(o), pairs);
                                if let Some(col) = colour(&rows, k, &mut st.nodes, stop) {
                                    stop.store(true, Ordering::Relaxed);
                                    return (Some((o.clone(), col)), st);
                                }
                            }
                            (None, st)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("oracle worker panicked")).collect()
            });
        let mut found = None;
        for (r, st) in results {
            stats.orders_examined += st.orders_examined;
            stats.nodes += st.nodes;
            if found.is_none() {
                found = r;
            }
        }
        if let Some((spine, col)) = found {
            let page = map_pages(g, &pairs, &col);
            return Ok(OracleResult { book_thickness: k, spine, page, stats });
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specials::generators::{gen_cycle, gen_kn};

    fn kn(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, gen_kn(n).unwrap())
    }

    #[test]
    fn twist_definition() {
        let pos = [0, 1, 2, 3, 4];
        assert!(twist(&pos, [1, 3], [2, 4]));
        assert!(twist(&pos, [2, 4], [1, 3]));
        assert!(!twist(&pos, [1, 4], [2, 3]));
        assert!(!twist(&pos, [1, 2], [2, 3]));
        assert!(!twist(&pos, [1, 3], [1, 4]));
    }

    #[test]
    fn k4_two_pages() {
        // a b c d = 0 1 2 3; edges ab bc cd ad bd ac.
        let g = SimpleGraph::new(4, vec![[0, 1], [1, 2], [2, 3], [0, 3], [1, 3], [0, 2]]);
        let mut page = vec![Some(0); 5];
        page.push(Some(1));
        let r = verify(&g, &[0, 1, 2, 3], &page).unwrap();
        assert!(r.valid);
        assert_eq!(r.pages_used, 2);
        page[5] = Some(0);
        let r = verify(&g, &[0, 1, 2, 3], &page).unwrap();
        assert!(!r.valid);
        assert_eq!(r.conflicts, vec![(0, 4, 5)]);
    }

    #[test]
    fn unassigned_and_mismatch() {
        let g = SimpleGraph::new(3, vec![[0, 1], [1, 2]]);
        let r = verify(&g, &[0, 1, 2], &[Some(0), None]).unwrap();
        assert!(!r.valid);
        assert_eq!(r.unassigned_edges, vec![1]);
        assert!(matches!(verify(&g, &[0, 1], &[Some(0), Some(0)]), Err(Error::SpineMismatch(_))));
        assert!(matches!(verify(&g, &[0, 1, 1], &[Some(0), Some(0)]), Err(Error::SpineMismatch(_))));
    }

    #[test]
    fn fixed_order_pages() {
        let c4 = SimpleGraph::new(4, gen_cycle(4));
        assert_eq!(pages_for_fixed_order(&c4, &[0, 1, 2, 3]).unwrap(), 1);
        let k4 = kn(4);
        assert_eq!(pages_for_fixed_order(&k4, &[0, 1, 2, 3]).unwrap(), 2);
        assert_eq!(pages_for_fixed_order(&k4, &[2, 0, 3, 1]).unwrap(), 2);
        assert_eq!(pages_for_fixed_order(&kn(6), &[0, 1, 2, 3, 4, 5]).unwrap(), 3);
        assert!(matches!(pages_for_fixed_order(&kn(13), &(0..13).collect::<Vec<_>>()), Err(Error::TooLarge(_))));
    }

    #[test]
    fn circle_symmetry() {
        let g = SimpleGraph::new(7, vec![[0, 3], [1, 5], [2, 6], [0, 4], [3, 6], [1, 2], [4, 5], [2, 5]]);
        let base: Vec<VertexId> = vec![3, 0, 6, 1, 5, 2, 4];
        let k = pages_for_fixed_order(&g, &base).unwrap();
        for r in 0..7 {
            let mut o = base.clone();
            o.rotate_left(r);
            assert_eq!(pages_for_fixed_order(&g, &o).unwrap(), k);
            o.reverse();
            assert_eq!(pages_for_fixed_order(&g, &o).unwrap(), k);
        }
    }

    #[test]
    fn canonical_orders_count() {
        let total: usize = (1..6).map(|s| circular_orders_with_second(6, s).len()).sum();
        assert_eq!(total, 60);
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(exact_book_thickness(&kn(5)).unwrap().book_thickness, 3);
        assert_eq!(exact_book_thickness(&kn(6)).unwrap().book_thickness, 3);
        assert_eq!(exact_book_thickness(&SimpleGraph::new(6, gen_cycle(6))).unwrap().book_thickness, 1);
        assert!(matches!(exact_book_thickness(&kn(9)), Err(Error::TooLarge(_))));
    }

    #[test]
    fn oracle_witness_verifies() {
        let g = kn(6);
        let r = exact_book_thickness(&g).unwrap();
        let page: Vec<Option<usize>> = r.page.iter().map(|&p| Some(p)).collect();
        let rep = verify(&g, &r.spine, &page).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.pages_used, r.book_thickness);
    }
}
