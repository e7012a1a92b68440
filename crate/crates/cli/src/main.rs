use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use tenpage::cli_io::{bench_ks, bench_xw, linear_fit, render_svg, write_csv, EmbeddingFile, GraphFile};
use tenpage::graph_model::build_drawing;
use tenpage::normalizer::{check_normal_form, normalize, NormalizedMultigraph};
use tenpage::paginator::embed;
use tenpage::specials::generators::{gen_crossed_cube, gen_kn, gen_normalized_1planar, gen_planar_triangulation, gen_xw};
use tenpage::specials::hamiltonian::{find_skeleton_hamiltonian, hamiltonian_embed, CertificateSource, HamiltonianCertificate};
use tenpage::verifier_oracle::{exact_book_thickness, verify};

/// Exit code for input that fails validation.
const EXIT_INVALID: u8 = 2;
/// Exit code for an embedding that needed an overflow page.
const EXIT_OVERFLOW: u8 = 3;

#[derive(Parser)]
#[command(name = "tenpage", version, about = "Book embeddings of 1-planar graphs in at most ten pages")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normalize a drawing and report the edges added.
    Normalize {
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Embed a drawing and print the number of pages.
    Embed {
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Four-page embedding along a Hamiltonian cycle of the planar skeleton.
    Hamiltonian {
        input: String,
        /// Comma-separated cycle; searched for when absent.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an embedding file against a graph.
    Verify { input: String, embedding: PathBuf },
    /// Exact book thickness of a small graph.
    Oracle { input: String },
    /// Write a generated graph to stdout.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Draw an embedding file as an arc diagram.
    Render {
        embedding: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Time the pipeline on extended wheels and print CSV.
    Bench {
        #[arg(long, default_value = "xw")]
        family: String,
        #[arg(long, default_value_t = 1000)]
        max_k: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    Xw { k: usize },
    CrossedCube,
    Kn { n: usize },
    Triangulation {
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    OnePlanar {
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Failure that maps to the validation exit code.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn invalid(e: impl std::fmt::Display) -> anyhow::Error {
    anyhow!(Invalid(e.to_string()))
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_graph(path: &str) -> Result<(GraphFile, String)> {
    let text = read_input(path)?;
    let g = GraphFile::parse(&text).map_err(invalid)?;
    Ok((g, text))
}

fn default_seed() -> u64 {
    std::env::var("TENPAGE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Normalize { input, output } => {
            let (gf, _) = read_graph(&input)?;
            let g = normalize(&gf.drawing().map_err(invalid)?).map_err(invalid)?;
            let n = g.n();
            let bound = (4 * n).saturating_sub(7);
            let violations = check_normal_form(&g);
            eprintln!(
                "n: {n}\nedges: {} (added {})\nbound 4n-7: {bound} ({})\nnormal form violations: {}",
                g.m(),
                g.stats.added(),
                if g.m() <= bound { "ok" } else { "exceeded" },
                violations.len()
            );
            write_out(output.as_deref(), &GraphFile::from_drawing(&g.to_spec()).to_text())?;
            Ok(0)
        }
        Cmd::Embed { input, output, svg } => {
            let (gf, text) = read_graph(&input)?;
            let emb = embed(&gf.drawing().map_err(invalid)?).map_err(invalid)?;
            let ef = EmbeddingFile::from_embedding(&gf.graph(), &emb, text.as_bytes());
            println!("pages: {}", emb.pages_used());
            if emb.ledger.relocations > 0 {
                eprintln!("relocations: {}", emb.ledger.relocations);
            }
            if let Some(p) = output {
                write_out(Some(&p), &ef.to_text())?;
            }
            if let Some(p) = svg {
                write_out(Some(&p), &render_svg(&ef))?;
            }
            if emb.overflow() > 0 {
                eprintln!("overflow pages used: {:?}", emb.ledger.overflow_pages);
                return Ok(EXIT_OVERFLOW);
            }
            Ok(0)
        }
        Cmd::Hamiltonian { input, cycle, output } => {
            let (gf, text) = read_graph(&input)?;
            let d = build_drawing(&gf.drawing().map_err(invalid)?).map_err(invalid)?;
            let g = NormalizedMultigraph::from_drawing(d);
            let cert = match cycle {
                Some(cycle) => HamiltonianCertificate { cycle, source: CertificateSource::Provided },
                None => find_skeleton_hamiltonian(&g)
                    .ok_or_else(|| invalid("no Hamiltonian cycle of the planar skeleton found"))?,
            };
            let emb = hamiltonian_embed(&g, &cert).map_err(invalid)?;
            println!("pages: {}", emb.pages_used());
            if let Some(p) = output {
                write_out(Some(&p), &EmbeddingFile::from_embedding(&gf.graph(), &emb, text.as_bytes()).to_text())?;
            }
            Ok(0)
        }
        Cmd::Verify { input, embedding } => {
            let (gf, _) = read_graph(&input)?;
            let ef = EmbeddingFile::parse(&fs::read_to_string(&embedding)?).map_err(invalid)?;
            let g = gf.graph();
            let page = ef.page_map(&g).map_err(invalid)?;
            let r = verify(&g, &ef.spine, &page).map_err(invalid)?;
            if r.valid {
                println!("valid: {} pages", r.pages_used);
                Ok(0)
            } else {
                println!("invalid: {} conflicts, {} unassigned edges", r.conflicts.len(), r.unassigned_edges.len());
                for (p, a, b) in r.conflicts.iter().take(50) {
                    println!("  page {p}: {:?} twists {:?}", g.edges[*a], g.edges[*b]);
                }
                Ok(EXIT_INVALID)
            }
        }
        Cmd::Oracle { input } => {
            let (gf, _) = read_graph(&input)?;
            let r = exact_book_thickness(&gf.graph()).map_err(invalid)?;
            println!("book thickness: {}", r.book_thickness);
            println!("spine: {:?}", r.spine);
            Ok(0)
        }
        Cmd::Generate { family } => {
            let gf = match family {
                Family::Xw { k } => GraphFile::from_drawing(&gen_xw(k).map_err(invalid)?),
                Family::CrossedCube => GraphFile::from_drawing(&gen_crossed_cube()),
                Family::Kn { n } => GraphFile::from_edges(n, gen_kn(n).map_err(invalid)?),
                Family::Triangulation { n, seed } => GraphFile::from_drawing(
                    &gen_planar_triangulation(n, seed.unwrap_or_else(default_seed)).map_err(invalid)?,
                ),
                Family::OnePlanar { n, seed } => GraphFile::from_drawing(
                    &gen_normalized_1planar(n, seed.unwrap_or_else(default_seed)).map_err(invalid)?,
                ),
            };
            write_out(None, &gf.to_text())?;
            Ok(0)
        }
        Cmd::Render { embedding, output } => {
            let ef = EmbeddingFile::parse(&fs::read_to_string(&embedding)?).map_err(invalid)?;
            write_out(Some(&output), &render_svg(&ef))?;
            Ok(0)
        }
        Cmd::Bench { family, max_k, reps } => {
            if family != "xw" {
                bail!(Invalid(format!("unknown bench family `{family}`")));
            }
            let rows = bench_xw(&bench_ks(max_k), reps).map_err(invalid)?;
            write_csv(&rows, std::io::stdout())?;
            if let Some(fit) = linear_fit(&rows) {
                eprintln!(
                    "fit: {:.3} us per vertex, worst ratio {:.2} over {} points",
                    fit.micros_per_vertex, fit.worst_ratio, fit.points
                );
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Invalid>().is_some() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
