use std::io::{self, BufRead, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hoffman_core::canon::canonical_form;
use hoffman_core::enumeration::{all_slim_graphs, connected_slim_graphs, enumerate_sums, parse_graph6, write_graph6, KPart};
use hoffman_core::figures::{Figure, FigureSource};
use hoffman_core::recognition::{count_cover_classes, delete_vertex_from_cover, enumerate_strict_covers, is_h_line, StrictCover};
use hoffman_core::spectral::certify;
use hoffman_core::verify::{self, Claim, MfsCatalog, VerificationReport};
use hoffman_core::HoffmanGraph;

/// Largest order `gen` lists; the catalog build streams one order further.
const MAX_LISTED_ORDER: usize = 9;

#[derive(Parser)]
#[command(name = "hoffman", version, about = "Hoffman graphs and {H2, H3, H5}-line graphs")]
struct Cli {
    /// Indented JSON, one document per run instead of one record per line.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory of figure transcriptions (`h1.hg`, `f7.hg`, ...).
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List slim graphs on n vertices up to isomorphism.
    Gen {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
    },
    /// Decide membership for graphs read from stdin (graph6 lines or text blocks).
    Recognize,
    /// All strict covers up to equivalence for graphs read from stdin.
    Covers,
    /// Enumerate sums F ⊎ K for a fat graph F.
    Sums {
        /// Figure name (F1..F9) or path to a graph in text format.
        #[arg(long = "F")]
        f: String,
        #[arg(long)]
        slim_k: usize,
        /// Number of components of K.
        #[arg(long, default_value_t = 1)]
        ck: usize,
        /// Part classes allowed in K.
        #[arg(long, value_delimiter = ',', default_value = "H1,H2,H3,H5")]
        parts: Vec<String>,
    },
    /// Smallest eigenvalue and its position relative to -1-sqrt(2).
    Spectral,
    /// Build or inspect the catalog of minimal forbidden subgraphs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Screen graphs from stdin against the catalog.
    Screen {
        #[command(flatten)]
        catalog: CatalogArgs,
    },
    /// Run a reproduction check.
    Verify {
        #[arg(long)]
        claim: Claim,
        /// Order bound: catalog size, or graph order for `uniqueness`.
        #[arg(long)]
        nmax: Option<usize>,
        /// Random sample size for `uniqueness`.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        catalog: CatalogArgs,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    Build {
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print metadata and members of a stored catalog.
    Show {
        #[command(flatten)]
        catalog: CatalogArgs,
    },
}

#[derive(Args)]
struct CatalogArgs {
    /// Stored catalog directory; built in memory when absent.
    #[arg(long, env = "HOFFMAN_CATALOG")]
    catalog: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Json,
    Dot,
}

enum Failure {
    Usage(anyhow::Error),
    Refuted,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

/// Collects JSON records: streamed one per line, or gathered for `--pretty`.
struct Output {
    pretty: bool,
    held: Vec<Value>,
}

impl Output {
    fn emit(&mut self, v: Value) -> Result<()> {
        if self.pretty {
            self.held.push(v);
        } else {
            let mut out = io::stdout().lock();
            writeln!(out, "{v}")?;
        }
        Ok(())
    }

    fn finish(self) -> Result<()> {
        if self.pretty && !self.held.is_empty() {
            let doc = if self.held.len() == 1 { self.held.into_iter().next().unwrap() } else { Value::Array(self.held) };
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Output { pretty: cli.pretty, held: Vec::new() };
    let result = run(&cli, &mut out);
    let flushed = out.finish();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Refuted), _) => ExitCode::from(1),
        (Err(Failure::Usage(e)), _) | (Ok(()), Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut Output) -> Result<(), Failure> {
    let figures = match &cli.data {
        Some(d) => FigureSource::Dir(d.clone()),
        None => FigureSource::Builtin,
    };
    match &cli.command {
        Command::Gen { n, connected, format } => gen(*n, *connected, *format, out)?,
        Command::Recognize => {
            for g in read_graphs()? {
                out.emit(recognize(&g))?;
            }
        }
        Command::Covers => {
            for g in read_graphs()? {
                let covers = enumerate_strict_covers(&g);
                out.emit(json!({
                    "canonical_form": canonical_form(&g).to_hex(),
                    "classes": count_cover_classes(&g),
                    "covers": covers.iter().map(cover_json).collect::<Vec<_>>(),
                }))?;
            }
        }
        Command::Sums { f, slim_k, ck, parts } => {
            let fg = load_figure(f, &figures)?;
            let parts = parts.iter().map(|p| parse_part(p)).collect::<Result<Vec<_>>>()?;
            for g in enumerate_sums(&fg, *slim_k, &parts, *ck).iter() {
                let slim = g.slim_subgraph();
                out.emit(json!({
                    "graph": g.to_text(),
                    "canonical_form": canonical_form(g).to_hex(),
                    "slim_graph6": write_graph6(&slim).map_err(|e| anyhow!(e))?,
                }))?;
            }
        }
        Command::Spectral => {
            for g in read_graphs()? {
                let (e, t) = certify(&g).map_err(|e| anyhow!(e))?;
                out.emit(json!({
                    "canonical_form": canonical_form(&g).to_hex(),
                    "lambda_min_lo": e.lower.to_string(),
                    "lambda_min_hi": e.upper.to_string(),
                    "lambda_min": e.lower_f64(),
                    "exact": e.exact,
                    "vs_threshold": t.label(),
                    "char_poly": e.char_poly.to_string(),
                }))?;
            }
        }
        Command::Catalog { action: CatalogAction::Build { nmax, out: dir } } => {
            let cat = MfsCatalog::build(*nmax).map_err(|e| anyhow!(e))?;
            cat.save(dir).map_err(|e| anyhow!(e))?;
            out.emit(catalog_summary(&cat, Some(dir)))?;
        }
        Command::Catalog { action: CatalogAction::Show { catalog } } => {
            let path = catalog.catalog.as_deref().ok_or_else(|| anyhow!("no catalog given (--catalog or HOFFMAN_CATALOG)"))?;
            let cat = MfsCatalog::load(path).map_err(|e| anyhow!(e))?;
            out.emit(catalog_summary(&cat, Some(path)))?;
            for m in &cat.members {
                out.emit(json!({
                    "order": m.order,
                    "graph6": m.graph6(),
                    "canonical_form": m.canonical_form.to_hex(),
                    "lambda_min": m.eigen.lower_f64(),
                    "vs_threshold": m.threshold.label(),
                }))?;
            }
        }
        Command::Screen { catalog } => {
            let graphs = read_graphs()?;
            let need = graphs.iter().map(|g| g.order()).max().unwrap_or(1).clamp(1, verify::catalog::LARGEST_MEMBER_ORDER);
            let cat = open_catalog(catalog, need)?;
            for g in graphs {
                let is_line = cat.screen(&g).map_err(|e| anyhow!(e))?;
                let found: Vec<String> = cat.contained_in(&g).iter().map(|&i| cat.members[i].graph6()).collect();
                out.emit(json!({
                    "canonical_form": canonical_form(&g).to_hex(),
                    "is_line": is_line,
                    "forbidden": found,
                }))?;
            }
        }
        Command::Verify { claim, nmax, sample, seed, catalog } => {
            let reports = run_claim(*claim, *nmax, *sample, *seed, catalog, &figures)?;
            let refuted = reports.iter().any(|r| !r.confirmed());
            for r in &reports {
                eprintln!("{}", r.summary());
                out.emit(serde_json::to_value(r).map_err(|e| anyhow!(e))?)?;
            }
            if refuted {
                return Err(Failure::Refuted);
            }
        }
    }
    Ok(())
}

fn gen(n: usize, connected: bool, format: Format, out: &mut Output) -> Result<()> {
    if !(1..=MAX_LISTED_ORDER).contains(&n) {
        bail!("-n must be between 1 and {MAX_LISTED_ORDER}");
    }
    let graphs = if connected { connected_slim_graphs(n) } else { all_slim_graphs(n) };
    let stdout = io::stdout();
    let mut w = io::BufWriter::new(stdout.lock());
    for (i, g) in graphs.iter().enumerate() {
        match format {
            Format::Graph6 => writeln!(w, "{}", write_graph6(g).map_err(|e| anyhow!(e))?)?,
            Format::Dot => writeln!(w, "{}", g.to_dot(&format!("g{i}")))?,
            Format::Json => {
                let v = json!({
                    "graph6": write_graph6(g).map_err(|e| anyhow!(e))?,
                    "canonical_form": canonical_form(g).to_hex(),
                    "edges": g.edge_count(),
                });
                if out.pretty {
                    out.emit(v)?;
                } else {
                    writeln!(w, "{v}")?;
                }
            }
        }
    }
    Ok(())
}

fn recognize(g: &HoffmanGraph) -> Value {
    let cover = is_h_line(g);
    // what deleting each slim vertex does to the cover's parts
    let cases: Vec<Value> = match &cover {
        Some(c) => (0..g.slim_count())
            .filter_map(|x| delete_vertex_from_cover(&c.decomposition, x).ok().map(|(_, case)| json!({"vertex": x, "case": case})))
            .collect(),
        None => Vec::new(),
    };
    json!({
        "canonical_form": canonical_form(g).to_hex(),
        "is_line": cover.is_some(),
        "cover": cover.as_ref().map(cover_json),
        "cases": cases,
    })
}

fn cover_json(c: &StrictCover) -> Value {
    json!({
        "graph": c.cover.to_text(),
        "parts": c.decomposition.parts,
        "kinds": c.part_kinds(),
    })
}

fn catalog_summary(cat: &MfsCatalog, dir: Option<&Path>) -> Value {
    json!({
        "n_max": cat.n_max,
        "counts": cat.counts(),
        "total": cat.members.len(),
        "checksum": cat.checksum,
        "path": dir.map(|d| d.display().to_string()),
    })
}

fn open_catalog(args: &CatalogArgs, n_max: usize) -> Result<MfsCatalog> {
    match &args.catalog {
        Some(p) => MfsCatalog::load(p).with_context(|| format!("loading catalog from {}", p.display())),
        None => MfsCatalog::build(n_max).map_err(|e| anyhow!(e)),
    }
}

fn run_claim(
    claim: Claim,
    nmax: Option<usize>,
    sample: Option<usize>,
    seed: u64,
    catalog: &CatalogArgs,
    figures: &FigureSource,
) -> Result<Vec<VerificationReport>> {
    let fig = |e: hoffman_core::figures::FigureError| anyhow!(e);
    Ok(match claim {
        Claim::FiveVertex => vec![verify::verify_five_vertex()],
        Claim::CatalogCounts => vec![verify::verify_catalog_counts(&open_catalog(catalog, nmax.unwrap_or(8))?)],
        Claim::Eigen => vec![verify::verify_eigen_claims(&open_catalog(catalog, nmax.unwrap_or(8))?, 7)],
        Claim::ScreenOracle => {
            let n = nmax.unwrap_or(7);
            vec![verify::verify_screen_oracle(&open_catalog(catalog, n.min(verify::catalog::LARGEST_MEMBER_ORDER))?, n)]
        }
        Claim::SumTable => verify::verify_table(&open_catalog(catalog, nmax.unwrap_or(7))?, figures).map_err(fig)?,
        Claim::TwoSlimFat | Claim::ApexFat | Claim::SingleFat => vec![verify::verify_fat_classification(claim, figures).map_err(fig)?],
        Claim::CoverUniqueness => {
            let n = nmax.unwrap_or(8);
            if !(1..=MAX_LISTED_ORDER).contains(&n) {
                bail!("--nmax must be between 1 and {MAX_LISTED_ORDER} for uniqueness");
            }
            vec![verify::verify_cover_uniqueness(n, sample, seed)]
        }
    })
}

fn load_figure(name: &str, source: &FigureSource) -> Result<HoffmanGraph> {
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
        return text.parse::<HoffmanGraph>().map_err(|e| anyhow!("{name}: {e}"));
    }
    let fig: Figure = name.parse().map_err(|e| anyhow!("{e}"))?;
    source.get(fig).map_err(|e| anyhow!(e))
}

fn parse_part(s: &str) -> Result<KPart> {
    Ok(match s.trim().to_ascii_uppercase().as_str() {
        "H1" => KPart::H1,
        "H2" => KPart::H2,
        "H3" => KPart::H3,
        "H5" => KPart::H5,
        other => bail!("unknown part class {other:?}; expected H1, H2, H3 or H5"),
    })
}

/// Reads graphs from stdin: graph6 lines, or text-format blocks each
/// starting with an `s=` header.
fn read_graphs() -> Result<Vec<HoffmanGraph>> {
    let mut text = String::new();
    io::stdin().lock().read_to_string(&mut text)?;
    parse_input(&text)
}

fn parse_input(text: &str) -> Result<Vec<HoffmanGraph>> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    if first.is_some_and(|l| l.starts_with("s=")) {
        let mut blocks: Vec<String> = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if line.starts_with("s=") {
                blocks.push(String::new());
            }
            let b = blocks.last_mut().expect("first line is a header");
            b.push_str(line);
            b.push('\n');
        }
        return blocks.iter().enumerate().map(|(i, b)| b.parse().map_err(|e| anyhow!("graph {}: {e}", i + 1))).collect();
    }
    io::Cursor::new(text)
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|(i, l)| {
            let l = l?;
            parse_graph6(l.trim()).map_err(|e| anyhow!("line {}: {e}", i + 1))
        })
        .collect()
}
