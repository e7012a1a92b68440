#![allow(dead_code)]

use tenpage::graph_model::DrawingSpec;
use tenpage::specials::generators::{
    gen_crossed_cube, gen_normalized_1planar, gen_planar_triangulation, gen_xw, icosahedron, k4_with_crossing, octahedron,
    planar_k4,
};

pub struct Case {
    pub name: String,
    pub spec: DrawingSpec,
    pub crossing_free: bool,
}

fn case(name: impl Into<String>, spec: DrawingSpec) -> Case {
    let crossing_free = spec.crossings.is_empty();
    Case { name: name.into(), spec, crossing_free }
}

pub fn triangulation_size(seed: u64) -> usize {
    4 + (seed as usize * 7) % 197
}

pub fn one_planar_size(seed: u64) -> usize {
    5 + (seed as usize * 13) % 96
}

/// Fixed fixtures, extended wheels with k = 3..12, 200 seeded planar
/// triangulations with n <= 200 and 100 seeded normalized 1-planar drawings
/// with n <= 100.
pub fn corpus() -> Vec<Case> {
    let mut out = vec![
        case("planar-k4", planar_k4()),
        case("k4-crossing", k4_with_crossing()),
        case("octahedron", octahedron()),
        case("icosahedron", icosahedron()),
        case("crossed-cube", gen_crossed_cube()),
    ];
    for k in 3..=12 {
        out.push(case(format!("xw-{k}"), gen_xw(k).unwrap()));
    }
    for s in 0..200u64 {
        out.push(case(format!("triangulation-{s}"), gen_planar_triangulation(triangulation_size(s), s).unwrap()));
    }
    for s in 0..100u64 {
        out.push(case(format!("one-planar-{s}"), gen_normalized_1planar(one_planar_size(s), s).unwrap()));
    }
    out
}
