//! Vertex layout of a two-level instance and its composition into one spine.

use std::collections::HashMap;

use crate::blocks::BlockForest;
use crate::graph_model::{VertexId, NONE};
use crate::leveler::TwoLevelGraph;

#[derive(Debug, Clone, Default)]
pub struct Layout {
    pub order: Vec<VertexId>,
    pub position: HashMap<VertexId, usize>,
    /// Inner vertices dominated by each outer vertex, in layout order.
    pub content: Vec<Vec<VertexId>>,
    /// Half-open interval of every super-block in `order`.
    pub super_interval: Vec<(usize, usize)>,
}

/// Places the super-blocks dominated by each outer vertex right after it,
/// in the order of their first faces. The leader of an uncovered tree root
/// follows the first outer vertex of its tree.
pub fn order_two_level(h: &TwoLevelGraph, f: &BlockForest) -> Layout {
    let t = h.t();
    let clamp = |a: usize| if a == NONE { 0 } else { a.min(t) };
    // (rank, super-block, part) per dominator; part 0 is a split-off head.
    let mut by_dom: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); t + 1];
    for (s, sb) in f.supers.iter().enumerate() {
        if !sb.head.is_empty() {
            by_dom[clamp(sb.head_alpha)].push((sb.head_rank, s, 0));
        }
        by_dom[clamp(sb.alpha)].push((sb.rank, s, 1));
    }
    let mut out = Layout { content: vec![Vec::new(); t + 1], ..Default::default() };
    out.super_interval = vec![(0, 0); f.supers.len()];
    for (i, list) in by_dom.iter_mut().enumerate() {
        list.sort_unstable();
        out.order.push(h.outer[i]);
        for &(_, s, part) in list.iter() {
            let vs = if part == 0 { &f.supers[s].head } else { &f.supers[s].vertices };
            let lo = out.order.len();
            out.order.extend(vs.iter().copied());
            out.content[i].extend(vs.iter().copied());
            if part == 1 {
                out.super_interval[s] = (lo, out.order.len());
            }
        }
    }
    out.position = out.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    out
}

/// Splices every instance's inner content into the spine of its parent
/// levels. `instances` must list parents before children.
pub fn compose_order(n: usize, instances: &[TwoLevelGraph], layouts: &[Layout]) -> Vec<VertexId> {
    let mut next = vec![NONE; n];
    let mut prev = vec![NONE; n];
    let mut placed = vec![false; n];
    let mut head = NONE;
    let mut tail = NONE;
    let mut push_back = |v: VertexId, next: &mut [usize], prev: &mut [usize]| {
        if tail == NONE {
            head = v;
        } else {
            next[tail] = v;
            prev[v] = tail;
        }
        tail = v;
    };
    if let (Some(h0), Some(l0)) = (instances.first(), layouts.first()) {
        debug_assert_eq!(h0.level, 0);
        for &v in &l0.order {
            if !placed[v] {
                placed[v] = true;
                push_back(v, &mut next, &mut prev);
            }
        }
    }
    let mut idx = 1;
    while idx < instances.len() {
        let level = instances[idx].level;
        let mut end = idx;
        while end < instances.len() && instances[end].level == level {
            end += 1;
        }
        let mut pos = vec![NONE; n];
        let mut x = head;
        let mut k = 0;
        while x != NONE {
            pos[x] = k;
            k += 1;
            x = next[x];
        }
        // (anchor, before) -> [(key, content)]
        let mut groups: HashMap<(VertexId, bool), Vec<(usize, &[VertexId])>> = HashMap::new();
        for j in idx..end {
            let h = &instances[j];
            let t = h.t();
            for (i, c) in layouts[j].content.iter().enumerate() {
                if c.is_empty() {
                    continue;
                }
                if i == 0 && t >= 1 {
                    groups.entry((h.outer[1], true)).or_default().push((pos[h.outer[0]], c));
                } else {
                    let key = if i < t { pos[h.outer[i + 1]] } else { usize::MAX };
                    groups.entry((h.outer[i], false)).or_default().push((key, c));
                }
            }
        }
        let mut keys: Vec<(VertexId, bool)> = groups.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let mut list = groups.remove(&key).unwrap();
            list.sort_by(|a, b| b.0.cmp(&a.0));
            let seq: Vec<VertexId> = list
                .iter()
                .flat_map(|(_, c)| c.iter().copied())
                .filter(|&v| !std::mem::replace(&mut placed[v], true))
                .collect();
            if seq.is_empty() {
                continue;
            }
            let (anchor, before) = key;
            let (left, right) = if before { (prev[anchor], anchor) } else { (anchor, next[anchor]) };
            let mut last = left;
            for &v in &seq {
                if last == NONE {
                    head = v;
                } else {
                    next[last] = v;
                }
                prev[v] = last;
                last = v;
            }
            next[last] = right;
            if right != NONE {
                prev[right] = last;
            }
        }
        idx = end;
    }
    let mut spine = Vec::with_capacity(n);
    let mut x = head;
    while x != NONE {
        spine.push(x);
        x = next[x];
    }
    for v in 0..n {
        if !placed[v] {
            spine.push(v);
        }
    }
    spine
}
