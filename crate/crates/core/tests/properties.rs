use proptest::prelude::*;

use tenpage::audit::audit_structure;
use tenpage::cli_io::GraphFile;
use tenpage::graph_model::DrawingSpec;
use tenpage::normalizer::{check_normal_form, normalize};
use tenpage::paginator::{compose_pages, run_pipeline, PAGE_LIMIT};
use tenpage::specials::generators::{gen_kn, gen_normalized_1planar, gen_planar_triangulation};
use tenpage::verifier_oracle::{pages_for_fixed_order, positions, twist, verify, SimpleGraph};

fn drawing(one_planar: bool, n: usize, seed: u64) -> DrawingSpec {
    if one_planar {
        gen_normalized_1planar(n, seed).unwrap()
    } else {
        gen_planar_triangulation(n, seed).unwrap()
    }
}

fn check_pipeline(spec: &DrawingSpec) -> Result<(), TestCaseError> {
    let g = normalize(spec).unwrap();
    prop_assert!(g.m() <= 4 * g.n() - 7);
    prop_assert!(check_normal_form(&g).is_empty());
    let p = run_pipeline(g).unwrap();

    let mut sorted = p.spine.clone();
    sorted.sort_unstable();
    prop_assert_eq!(sorted, (0..spec.n).collect::<Vec<_>>());
    for (h, lay) in p.instances.iter().zip(&p.layouts) {
        // The global order restricted to an instance is its own layout.
        prop_assert!(lay.order.windows(2).all(|w| p.pos[w[0]] < p.pos[w[1]]));
        let outer_pos: Vec<usize> = h.outer.iter().map(|v| lay.position[v]).collect();
        prop_assert!(outer_pos.windows(2).all(|w| w[0] < w[1]));
        for &(a, b) in &lay.super_interval {
            prop_assert!(a <= b && b < lay.order.len());
        }
    }
    for (h, f) in p.instances.iter().zip(&p.forests) {
        let mut seen = std::collections::HashMap::new();
        for s in &f.supers {
            prop_assert!(!f.blocks[s.root].covered || f.blocks[s.root].parent.is_none());
            for &v in s.head.iter().chain(&s.vertices) {
                *seen.entry(v).or_insert(0) += 1;
            }
        }
        // Every inner vertex lies in exactly one super-block.
        prop_assert_eq!(seen.len(), h.inner.len());
        prop_assert!(h.inner.iter().all(|v| seen.get(v) == Some(&1)));
    }
    let rep = audit_structure(&p);
    prop_assert_eq!(rep.violations(), 0, "{:?}", rep.samples);

    let emb = compose_pages(&p, spec.edges.len()).unwrap();
    let sg = SimpleGraph::new(spec.n, spec.edges.clone());
    prop_assert!(verify(&sg, &emb.spine, &emb.page).unwrap().valid);
    prop_assert!(emb.pages_used() <= PAGE_LIMIT);
    prop_assert_eq!(emb.overflow(), 0);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pipeline_invariants(one_planar: bool, n in 5usize..60, seed in 1000u64..100_000) {
        check_pipeline(&drawing(one_planar, n, seed))?;
    }

    #[test]
    fn graph_file_round_trip(one_planar: bool, n in 5usize..40, seed: u64) {
        let spec = drawing(one_planar, n, seed);
        let f = GraphFile::from_drawing(&spec);
        let back = GraphFile::parse(&f.to_text()).unwrap();
        prop_assert_eq!(back.drawing().unwrap(), spec);
    }
}

proptest! {
    #[test]
    fn twist_is_symmetric_and_strict(order in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
                                     a in 0usize..8, b in 0usize..8, c in 0usize..8, d in 0usize..8) {
        prop_assume!(a != b && c != d);
        let pos = positions(&order);
        prop_assert_eq!(twist(&pos, [a, b], [c, d]), twist(&pos, [c, d], [a, b]));
        prop_assert_eq!(twist(&pos, [a, b], [c, d]), twist(&pos, [b, a], [c, d]));
        if a == c || a == d || b == c || b == d {
            prop_assert!(!twist(&pos, [a, b], [c, d]));
        }
    }

    #[test]
    fn verify_ignores_edge_listing_order(one_planar: bool, n in 5usize..30, seed: u64,
                                         perm_seed: u64) {
        let spec = drawing(one_planar, n, seed);
        let p = run_pipeline(normalize(&spec).unwrap()).unwrap();
        let emb = compose_pages(&p, spec.edges.len()).unwrap();
        let mut idx: Vec<usize> = (0..spec.edges.len()).collect();
        let k = idx.len();
        for i in 0..k {
            let j = (perm_seed as usize).wrapping_mul(31).wrapping_add(i * 17) % k;
            idx.swap(i, j);
        }
        let edges: Vec<[usize; 2]> = idx.iter().map(|&e| spec.edges[e]).collect();
        let page: Vec<Option<usize>> = idx.iter().map(|&e| emb.page[e]).collect();
        let a = verify(&SimpleGraph::new(spec.n, spec.edges.clone()), &emb.spine, &emb.page).unwrap();
        let b = verify(&SimpleGraph::new(spec.n, edges), &emb.spine, &page).unwrap();
        prop_assert_eq!(a.valid, b.valid);
        prop_assert_eq!(a.pages_used, b.pages_used);
    }

    #[test]
    fn fixed_order_pages_invariant_on_the_circle(n in 4usize..8, shift in 0usize..8, flip: bool,
                                                 keep in proptest::collection::vec(any::<bool>(), 28)) {
        let edges: Vec<[usize; 2]> =
            gen_kn(n).unwrap().into_iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| e).collect();
        prop_assume!(!edges.is_empty());
        let g = SimpleGraph::new(n, edges);
        let base: Vec<usize> = (0..n).collect();
        let mut moved = base.clone();
        moved.rotate_left(shift % n);
        if flip {
            moved.reverse();
        }
        prop_assert_eq!(pages_for_fixed_order(&g, &base).unwrap(), pages_for_fixed_order(&g, &moved).unwrap());
    }
}

#[test]
fn fixed_order_bound_below_embedding() {
    for seed in 0..20u64 {
        let spec = gen_normalized_1planar(8, seed).unwrap();
        let p = run_pipeline(normalize(&spec).unwrap()).unwrap();
        let emb = compose_pages(&p, spec.edges.len()).unwrap();
        let g = SimpleGraph::new(spec.n, spec.edges.clone());
        assert!(pages_for_fixed_order(&g, &emb.spine).unwrap() <= emb.pages_used());
    }
}
