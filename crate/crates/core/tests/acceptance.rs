mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use tenpage::audit::audit_structure;
use tenpage::cli_io::{bench_ks, bench_xw, linear_fit};
use tenpage::graph_model::{build_drawing, Color};
use tenpage::normalizer::{check_normal_form, normalize, NormalizedMultigraph};
use tenpage::paginator::{compose_pages, run_pipeline, BookEmbedding, Pipeline, PAGE_LIMIT};
use tenpage::specials::generators::{gen_crossed_cube, gen_cycle, gen_kn, gen_xw};
use tenpage::specials::hamiltonian::{find_skeleton_hamiltonian, hamiltonian_embed};
use tenpage::specials::lower_bound;
use tenpage::verifier_oracle::{exact_book_thickness, verify, SimpleGraph};

use common::{corpus, Case};

const CORPUS_BUDGET: Duration = Duration::from_secs(10);
const PLANAR_PAGES: usize = 5;
const TWO_LEVEL_ROLES: usize = 6;
const SKELETON_ROLES: usize = 4;
const PURPLE_ROLES: usize = 2;
const XW_PAGES: usize = 4;
const ORACLE_MAX_N: usize = 8;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const BENCH_MAX_K: usize = 10_000;
const BENCH_REPS: usize = 3;
const BENCH_RATIO: f64 = 2.0;
const BENCH_BUDGET: Duration = Duration::from_secs(30);

struct Run {
    case: Case,
    pipeline: Pipeline,
    emb: BookEmbedding,
    valid: bool,
}

fn run_corpus() -> Vec<Run> {
    corpus()
        .into_iter()
        .map(|case| {
            let g = normalize(&case.spec).unwrap();
            let pipeline = run_pipeline(g).unwrap();
            let emb = compose_pages(&pipeline, case.spec.edges.len()).unwrap();
            let sg = SimpleGraph::new(case.spec.n, case.spec.edges.clone());
            let valid = verify(&sg, &emb.spine, &emb.page).unwrap().valid;
            Run { case, pipeline, emb, valid }
        })
        .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn ten_page_bound(runs: &[Run], took: Duration) -> Outcome {
    let bad: Vec<&str> = runs
        .iter()
        .filter(|r| !r.valid || r.emb.pages_used() > PAGE_LIMIT || r.emb.overflow() > 0)
        .map(|r| r.case.name.as_str())
        .collect();
    let max = runs.iter().map(|r| r.emb.pages_used()).max().unwrap_or(0);
    let moved: usize = runs.iter().map(|r| r.emb.ledger.relocations).sum();
    outcome(
        bad.is_empty() && took < CORPUS_BUDGET,
        format!("{} instances in {took:.1?}, max {max} pages, {moved} relocations, failing {bad:?}", runs.len()),
    )
}

fn planar_regression(runs: &[Run]) -> Outcome {
    let planar: Vec<&Run> = runs.iter().filter(|r| r.case.crossing_free).collect();
    let bad: Vec<&str> = planar
        .iter()
        .filter(|r| {
            let colored = |c: Color| r.emb.stats.colors.get(&format!("{c:?}")).copied().unwrap_or(0);
            r.emb.pages_used() > PLANAR_PAGES
                || colored(Color::Red) > 0
                || colored(Color::Purple) > 0
                || r.emb.stats.audits.iter().any(|a| a.purple_roles > 0)
        })
        .map(|r| r.case.name.as_str())
        .collect();
    let max = planar.iter().map(|r| r.emb.pages_used()).max().unwrap_or(0);
    outcome(bad.is_empty(), format!("{} crossing-free instances, max {max} pages, failing {bad:?}", planar.len()))
}

fn two_level_bound(runs: &[Run]) -> Outcome {
    let mut instances = 0;
    let mut worst = (0, 0, 0);
    let mut bad = Vec::new();
    for r in runs {
        for a in &r.emb.stats.audits {
            instances += 1;
            worst = (worst.0.max(a.roles), worst.1.max(a.skeleton_roles), worst.2.max(a.purple_roles));
            if a.roles > TWO_LEVEL_ROLES || a.skeleton_roles > SKELETON_ROLES || a.purple_roles > PURPLE_ROLES {
                bad.push(format!("{}#{}", r.case.name, a.instance));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{instances} instances, max roles {} (skeleton {}, purple {}), failing {bad:?}",
            worst.0, worst.1, worst.2
        ),
    )
}

fn extended_wheels() -> Outcome {
    let mut bad = Vec::new();
    for k in 3..=12 {
        let spec = gen_xw(k).unwrap();
        let g = NormalizedMultigraph::from_drawing(build_drawing(&spec).unwrap());
        let sg = SimpleGraph::new(spec.n, spec.edges.clone());
        let ok = find_skeleton_hamiltonian(&g)
            .and_then(|c| hamiltonian_embed(&g, &c).ok())
            .is_some_and(|e| e.pages_used() == XW_PAGES && verify(&sg, &e.spine, &e.page).unwrap().valid);
        let lb = lower_bound(2 * k + 2, 8 * k).unwrap();
        if !ok || lb != XW_PAGES {
            bad.push(k);
        }
    }
    let t = Instant::now();
    let cube = gen_crossed_cube();
    let exact = exact_book_thickness(&SimpleGraph::new(cube.n, cube.edges.clone())).unwrap().book_thickness;
    let took = t.elapsed();
    outcome(
        bad.is_empty() && exact == XW_PAGES && took < ORACLE_BUDGET,
        format!("failing k {bad:?}, exact thickness of XW_6 {exact} in {took:.1?}"),
    )
}

fn normalization_bound(runs: &[Run]) -> Outcome {
    let mut bad = Vec::new();
    let mut tight = false;
    for r in runs {
        let g = &r.pipeline.g;
        let bound = 4 * g.n() - 7;
        if g.m() > bound || !check_normal_form(g).is_empty() {
            bad.push(r.case.name.clone());
        }
        if r.case.name == "crossed-cube" {
            tight = g.m() == bound;
        }
    }
    outcome(bad.is_empty() && tight, format!("crossed cube tight: {tight}, failing {bad:?}"))
}

fn oracle_calibration() -> Outcome {
    let cases: [(&str, usize, Vec<[usize; 2]>, usize); 4] = [
        ("K5", 5, gen_kn(5).unwrap(), 3),
        ("K6", 6, gen_kn(6).unwrap(), 3),
        ("K7", 7, gen_kn(7).unwrap(), 4),
        ("C6", 6, gen_cycle(6), 1),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, n, edges, want) in cases {
        let t = Instant::now();
        let got = exact_book_thickness(&SimpleGraph::new(n, edges)).unwrap().book_thickness;
        let took = t.elapsed();
        pass &= got == want && took < ORACLE_BUDGET;
        detail.push(format!("{name}={got} ({took:.1?})"));
    }
    outcome(pass, detail.join(", "))
}

fn sandwich(runs: &[Run]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in runs.iter().filter(|r| r.case.spec.n <= ORACLE_MAX_N) {
        checked += 1;
        let exact =
            exact_book_thickness(&SimpleGraph::new(r.case.spec.n, r.case.spec.edges.clone())).unwrap().book_thickness;
        let got = r.emb.pages_used();
        if exact > got || got > PAGE_LIMIT {
            bad.push(format!("{} ({exact} > {got})", r.case.name));
        }
    }
    outcome(bad.is_empty() && checked > 0, format!("{checked} instances with n <= {ORACLE_MAX_N}, failing {bad:?}"))
}

fn linear_time() -> Outcome {
    let t = Instant::now();
    let rows = bench_xw(&bench_ks(BENCH_MAX_K), BENCH_REPS).unwrap();
    let took = t.elapsed();
    let fit = linear_fit(&rows).unwrap();
    let largest = rows.last().unwrap();
    outcome(
        fit.worst_ratio <= BENCH_RATIO && took < BENCH_BUDGET,
        format!(
            "{} sizes up to n = {}, {:.3} us per vertex, worst ratio {:.2} over {} points, total {took:.1?}",
            rows.len(),
            largest.n,
            fit.micros_per_vertex,
            fit.worst_ratio,
            fit.points
        ),
    )
}

fn structural_laws(runs: &[Run]) -> Outcome {
    let mut total = (0, 0, 0, 0);
    let mut bad = Vec::new();
    for r in runs {
        let rep = audit_structure(&r.pipeline);
        total = (total.0 + rep.blocks, total.1 + rep.partitions, total.2 + rep.edge_pairs, total.3 + rep.violations());
        if rep.violations() > 0 {
            bad.push(format!("{}: {:?}", r.case.name, rep.samples.first()));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} blocks, {} partitions, {} separated edge pairs, {} violations {bad:?}",
            total.0, total.1, total.2, total.3
        ),
    )
}

#[test]
fn acceptance() {
    let t = Instant::now();
    let runs = run_corpus();
    let corpus_time = t.elapsed();
    let results = [
        ("10-page bound", ten_page_bound(&runs, corpus_time)),
        ("planar regression", planar_regression(&runs)),
        ("2-level bound", two_level_bound(&runs)),
        ("extended wheels", extended_wheels()),
        ("normalization bound", normalization_bound(&runs)),
        ("oracle calibration", oracle_calibration()),
        ("sandwich", sandwich(&runs)),
        ("linear time", linear_time()),
        ("structural laws", structural_laws(&runs)),
    ];
    // Written to stderr directly so the lines survive output capture.
    let mut err = std::io::stderr().lock();
    for (i, (name, o)) in results.iter().enumerate() {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        writeln!(err, "criterion {}: {verdict} [{name}] {}", i + 1, o.detail).unwrap();
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, r)| !r.1.pass).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
