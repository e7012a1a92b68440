//! File formats, arc-diagram rendering and the linear-time benchmark.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph_model::{build_drawing, DrawingSpec, HalfRef, VertexId};
use crate::paginator::{embed, BookEmbedding};
use crate::specials::generators::gen_xw;
use crate::verifier_oracle::SimpleGraph;

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A graph, optionally with a 1-planar drawing. Without rotations only the
/// edge list is usable (verify, oracle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub version: u32,
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub crossings: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rotations: Vec<Vec<HalfRef>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub crossing_rotations: Vec<[HalfRef; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<HalfRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augmented: Option<Vec<bool>>,
}

impl GraphFile {
    pub fn from_drawing(d: &DrawingSpec) -> Self {
        GraphFile {
            version: FORMAT_VERSION,
            n: d.n,
            edges: d.edges.clone(),
            crossings: d.crossings.clone(),
            rotations: d.rotations.clone(),
            crossing_rotations: d.crossing_rotations.clone(),
            outer: Some(d.outer),
            augmented: d.augmented.clone(),
        }
    }

    pub fn from_edges(n: usize, edges: Vec<[VertexId; 2]>) -> Self {
        GraphFile {
            version: FORMAT_VERSION,
            n,
            edges,
            crossings: Vec::new(),
            rotations: Vec::new(),
            crossing_rotations: Vec::new(),
            outer: None,
            augmented: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: GraphFile = serde_json::from_str(text).map_err(json_error)?;
        if f.version != FORMAT_VERSION {
            return Err(Error::Parse { locus: "field `version`".into(), msg: format!("unsupported version {}", f.version) });
        }
        for (i, e) in f.edges.iter().enumerate() {
            if e[0] >= f.n || e[1] >= f.n {
                return Err(Error::Parse { locus: format!("field `edges[{i}]`"), msg: format!("endpoint out of range 0..{}", f.n) });
            }
        }
        Ok(f)
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph file serializes")
    }

    pub fn has_drawing(&self) -> bool {
        self.outer.is_some() && !self.rotations.is_empty()
    }

    /// The drawing, checked to be a valid planarization.
    pub fn drawing(&self) -> Result<DrawingSpec> {
        let Some(outer) = self.outer else {
            return Err(Error::Parse { locus: "field `outer`".into(), msg: "graph has no drawing".into() });
        };
        let d = DrawingSpec {
            n: self.n,
            edges: self.edges.clone(),
            rotations: self.rotations.clone(),
            crossings: self.crossings.clone(),
            crossing_rotations: self.crossing_rotations.clone(),
            outer,
            augmented: self.augmented.clone(),
        };
        build_drawing(&d)?;
        Ok(d)
    }

    pub fn graph(&self) -> SimpleGraph {
        SimpleGraph::new(self.n, self.edges.clone())
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { locus: format!("line {} column {}", e.line(), e.column()), msg: e.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub page_index: usize,
    pub edges: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSummary {
    pub pages_used: usize,
    pub relocations: usize,
    pub overflow_pages: Vec<usize>,
    pub diagnostics: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub input_sha256: String,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub version: u32,
    pub spine: Vec<VertexId>,
    pub pages: Vec<PageEntry>,
    pub summary: EmbeddingSummary,
    pub provenance: Provenance,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl EmbeddingFile {
    /// Groups the edges of `g` by their page in `emb`; `input` is hashed for provenance.
    pub fn from_embedding(g: &SimpleGraph, emb: &BookEmbedding, input: &[u8]) -> Self {
        let mut by_page: HashMap<usize, Vec<[VertexId; 2]>> = HashMap::new();
        for (e, p) in emb.page.iter().enumerate() {
            if let Some(p) = p {
                by_page.entry(*p).or_default().push(g.edges[e]);
            }
        }
        let mut pages: Vec<PageEntry> =
            by_page.into_iter().map(|(page_index, edges)| PageEntry { page_index, edges }).collect();
        pages.sort_by_key(|p| p.page_index);
        EmbeddingFile {
            version: FORMAT_VERSION,
            spine: emb.spine.clone(),
            pages,
            summary: EmbeddingSummary {
                pages_used: emb.pages_used(),
                relocations: emb.ledger.relocations,
                overflow_pages: emb.ledger.overflow_pages.clone(),
                diagnostics: emb.ledger.diagnostics.len(),
            },
            provenance: Provenance { input_sha256: sha256_hex(input), tool_version: TOOL_VERSION.into() },
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: EmbeddingFile = serde_json::from_str(text).map_err(json_error)?;
        if f.version != FORMAT_VERSION {
            return Err(Error::Parse { locus: "field `version`".into(), msg: format!("unsupported version {}", f.version) });
        }
        Ok(f)
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("embedding file serializes")
    }

    /// Page of every edge of `g`, matching listed edges by their endpoints.
    /// Listed edges that are not in `g` are an error; missing ones stay `None`.
    pub fn page_map(&self, g: &SimpleGraph) -> Result<Vec<Option<usize>>> {
        let mut slots: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
        for (e, &[u, v]) in g.edges.iter().enumerate().rev() {
            slots.entry((u.min(v), u.max(v))).or_default().push(e);
        }
        let mut page = vec![None; g.edges.len()];
        for p in &self.pages {
            for &[u, v] in &p.edges {
                let e = slots.get_mut(&(u.min(v), u.max(v))).and_then(|s| s.pop()).ok_or_else(|| {
                    Error::SpineMismatch(format!("page {} lists edge ({u}, {v}) not in the graph", p.page_index))
                })?;
                page[e] = Some(p.page_index);
            }
        }
        Ok(page)
    }
}

/// Stroke color of each of the ten pages.
const PALETTE: [&str; 10] = [
    "#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

/// Arc diagram: spine on a horizontal line, one semicircular arc per edge,
/// even pages above the spine and odd pages below.
pub fn render_svg(f: &EmbeddingFile) -> String {
    let step = 24.0;
    let margin = 20.0;
    let n = f.spine.len();
    let pos: HashMap<VertexId, usize> = f.spine.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let x = |v: VertexId| margin + step * pos.get(&v).copied().unwrap_or(0) as f64;
    let width = 2.0 * margin + step * n.saturating_sub(1) as f64;
    let half = step * n.max(1) as f64 / 2.0 + margin;
    let height = 2.0 * half;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(s, r##"<line x1="{margin}" y1="{half}" x2="{:.1}" y2="{half}" stroke="#000" stroke-width="1"/>"##, width - margin);
    for p in &f.pages {
        let color = PALETTE[p.page_index % PALETTE.len()];
        let sweep = if p.page_index % 2 == 0 { 1 } else { 0 };
        for &[u, v] in &p.edges {
            let (a, b) = if x(u) <= x(v) { (x(u), x(v)) } else { (x(v), x(u)) };
            let r = (b - a) / 2.0;
            let _ = writeln!(
                s,
                r#"<path d="M {a:.1} {half:.1} A {r:.1} {r:.1} 0 0 {sweep} {b:.1} {half:.1}" fill="none" stroke="{color}" stroke-width="1.2" data-page="{}"/>"#,
                p.page_index
            );
        }
    }
    for &v in &f.spine {
        let _ = writeln!(s, r##"<circle cx="{:.1}" cy="{half:.1}" r="3" fill="#000"/>"##, x(v));
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="8" text-anchor="middle">{v}</text>"#, x(v), half + 12.0);
    }
    s.push_str("</svg>\n");
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub pages: usize,
    pub micros: u128,
}

/// Extended-wheel parameters 3, 5, 10, 20, 50, … up to and including `max_k`.
pub fn bench_ks(max_k: usize) -> Vec<usize> {
    let mut ks = vec![3];
    let mut base = 1;
    'outer: loop {
        for mult in [1, 2, 5] {
            let k = base * mult;
            if k > max_k {
                break 'outer;
            }
            if k > 3 {
                ks.push(k);
            }
        }
        base *= 10;
    }
    if ks.last() != Some(&max_k) && max_k > 3 {
        ks.push(max_k);
    }
    ks
}

/// Times the full pipeline on each extended wheel; the best of `reps` runs is kept.
pub fn bench_xw(ks: &[usize], reps: usize) -> Result<Vec<BenchRow>> {
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let spec = gen_xw(k)?;
        let mut best = u128::MAX;
        let mut pages = 0;
        for _ in 0..reps.max(1) {
            let t = Instant::now();
            let emb = embed(&spec)?;
            best = best.min(t.elapsed().as_micros());
            pages = emb.pages_used();
        }
        out.push(BenchRow { k, n: spec.n, m: spec.edges.len(), pages, micros: best });
    }
    Ok(out)
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r).map_err(|e| Error::BadParameter(e.to_string()))?;
    }
    wr.flush().map_err(|e| Error::BadParameter(e.to_string()))
}

/// Least-squares fit of `micros = c * n` over the rows with `n` in the top
/// decade, and the worst ratio between a measured and a fitted time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub micros_per_vertex: f64,
    pub worst_ratio: f64,
    pub points: usize,
}

pub fn linear_fit(rows: &[BenchRow]) -> Option<LinearFit> {
    let top = rows.iter().map(|r| r.n).max()?;
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.n * 10 >= top).map(|r| (r.n as f64, r.micros.max(1) as f64)).collect();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let c = sxy / sxx;
    let worst = pts.iter().map(|&(n, t)| (t / (c * n)).max(c * n / t)).fold(1.0, f64::max);
    Some(LinearFit { micros_per_vertex: c, worst_ratio: worst, points: pts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specials::generators::{gen_crossed_cube, octahedron};
    use crate::verifier_oracle::verify;

    #[test]
    fn graph_file_round_trip() {
        for d in [octahedron(), gen_crossed_cube()] {
            let f = GraphFile::from_drawing(&d);
            let back = GraphFile::parse(&f.to_text()).unwrap();
            assert_eq!(back, f);
            assert_eq!(back.drawing().unwrap(), d);
        }
    }

    #[test]
    fn parse_error_has_locus() {
        let err = GraphFile::parse("{\n  \"version\": 1,\n  \"n\": 3,\n  \"edges\": [[0, 1], [1]]\n}").unwrap_err();
        match err {
            Error::Parse { locus, .. } => assert!(locus.starts_with("line 4"), "{locus}"),
            other => panic!("{other:?}"),
        }
        let err = GraphFile::parse(r#"{"version": 1, "n": 2, "edges": [[0, 5]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref locus, .. } if locus == "field `edges[0]`"));
    }

    #[test]
    fn edge_list_has_no_drawing() {
        let f = GraphFile::from_edges(3, vec![[0, 1], [1, 2]]);
        assert!(!f.has_drawing());
        assert!(f.drawing().is_err());
    }

    #[test]
    fn embedding_file_round_trip_and_verify() {
        let d = gen_crossed_cube();
        let emb = embed(&d).unwrap();
        let gf = GraphFile::from_drawing(&d);
        let text = gf.to_text();
        let ef = EmbeddingFile::from_embedding(&gf.graph(), &emb, text.as_bytes());
        let back = EmbeddingFile::parse(&ef.to_text()).unwrap();
        assert_eq!(back, ef);
        assert_eq!(back.provenance.input_sha256.len(), 64);
        let page = back.page_map(&gf.graph()).unwrap();
        assert!(verify(&gf.graph(), &back.spine, &page).unwrap().valid);
    }

    #[test]
    fn svg_has_one_path_per_edge() {
        let d = octahedron();
        let emb = embed(&d).unwrap();
        let gf = GraphFile::from_drawing(&d);
        let svg = render_svg(&EmbeddingFile::from_embedding(&gf.graph(), &emb, b""));
        assert_eq!(svg.matches("<path").count(), d.edges.len());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn sha256_known_value() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn bench_ks_sequence() {
        assert_eq!(bench_ks(100), vec![3, 5, 10, 20, 50, 100]);
        assert_eq!(bench_ks(30), vec![3, 5, 10, 20, 30]);
    }

    #[test]
    fn exact_line_fits_perfectly() {
        let rows: Vec<BenchRow> = [50, 100, 500, 1000]
            .iter()
            .map(|&n| BenchRow { k: n, n, m: 4 * n, pages: 5, micros: 3 * n as u128 })
            .collect();
        let fit = linear_fit(&rows).unwrap();
        assert!((fit.micros_per_vertex - 3.0).abs() < 1e-9);
        assert!((fit.worst_ratio - 1.0).abs() < 1e-9);
        assert_eq!(fit.points, 3);
    }
}
