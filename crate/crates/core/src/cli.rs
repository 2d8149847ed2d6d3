//! Batch driver behind the `momentsheaf` binary.
//!
//! Every command builds (or loads) a moment graph, optionally runs the
//! canonical-sheaf construction, and writes one artifact to `--out` or
//! stdout. Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
//! 3 resource cap.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::coxeter::{CartanDatum, WeylGroup};
use crate::hecke::{format_qpoly, KlTable};
use crate::moment_graph::{schubert_moment_graph, MomentGraph};
use crate::sheaf::{
    boundary_image, canonical_sheaf, global_hilbert, monotonicity_check, poincare_csv, sheaf_json, stalk_poincare,
    structure_sheaf, verify_pure, GammaSheaf, ImageAlgorithm, SheafOptions,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "momentsheaf", version, about = "Canonical sheaves on moment graphs and Kazhdan-Lusztig polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Graph,
    Sheaf,
    Kl,
    Hilbert,
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the moment graph as JSON (and DOT with --dot).
    Graph(RunArgs),
    /// Emit the canonical sheaf as JSON.
    Sheaf(RunArgs),
    /// CSV of stalk Poincaré polynomials at every vertex.
    Kl(RunArgs),
    /// Graded dimensions of global sections modulo t*.
    Hilbert(RunArgs),
    /// Oracle comparison, purity, monotonicity and planar-vs-sections checks.
    Verify(RunArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// Root system type, e.g. A3, or a family letter together with --rank.
    #[arg(long = "type")]
    pub type_name: Option<String>,
    /// Rank, when --type gives only the family.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Reduced word such as 2132, "e", or "longest".
    #[arg(long, default_value = "longest")]
    pub word: String,
    /// Parabolic subgroup as 1-based simple reflections, e.g. "1,3".
    #[arg(long)]
    pub parabolic: Option<String>,
    /// Moment graph JSON file instead of a group.
    #[arg(long, conflicts_with_all = ["type_name", "rank", "parabolic"])]
    pub graph: Option<PathBuf>,
    /// Degree bound for the construction; required with --graph.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// sections, planar or polygon.
    #[arg(long, default_value = "sections")]
    pub algorithm: String,
    /// Acknowledges that the polygon algorithm is an approximation.
    #[arg(long)]
    pub accept_approximation: bool,
    /// Artifact path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// DOT export of the graph.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Worker threads for the construction.
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Where the graph comes from.
#[derive(Clone, Debug)]
pub enum Source {
    Group { cartan: String, word: String, parabolic: Vec<usize> },
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub source: Source,
    pub max_degree: Option<usize>,
    pub algorithm: ImageAlgorithm,
    pub out: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Result of a run: the artifact text and the exit code it implies.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub artifact: String,
    pub exit_code: i32,
}

impl Command {
    fn split(&self) -> (CommandKind, &RunArgs) {
        match self {
            Command::Graph(a) => (CommandKind::Graph, a),
            Command::Sheaf(a) => (CommandKind::Sheaf, a),
            Command::Kl(a) => (CommandKind::Kl, a),
            Command::Hilbert(a) => (CommandKind::Hilbert, a),
            Command::Verify(a) => (CommandKind::Verify, a),
        }
    }
}

/// Parses "1,3" into 0-based indices.
pub fn parse_parabolic(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = t.parse().map_err(|_| Error::Validation(format!("bad parabolic index {t:?}")))?;
        if i == 0 {
            return Err(Error::Validation("parabolic indices are 1-based".into()));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl RunConfig {
    pub fn from_args(command: CommandKind, args: &RunArgs) -> Result<Self> {
        let algorithm: ImageAlgorithm = args.algorithm.parse()?;
        if algorithm == ImageAlgorithm::Polygon && !args.accept_approximation {
            return Err(Error::Validation(
                "the polygon algorithm is an approximation in general; pass --accept-approximation".into(),
            ));
        }
        let source = match (&args.graph, &args.type_name) {
            (Some(p), None) => Source::File(p.clone()),
            (None, Some(t)) => {
                let has_rank = t.chars().any(|c| c.is_ascii_digit());
                let cartan = match (has_rank, args.rank) {
                    (true, None) => t.clone(),
                    (false, Some(r)) => format!("{t}{r}"),
                    (true, Some(_)) => return Err(Error::Validation("give the rank in --type or --rank, not both".into())),
                    (false, None) => return Err(Error::Validation(format!("type {t:?} needs --rank"))),
                };
                let parabolic = args.parabolic.as_deref().map(parse_parabolic).transpose()?.unwrap_or_default();
                Source::Group { cartan, word: args.word.clone(), parabolic }
            }
            (None, None) => return Err(Error::Validation("give either --type or --graph".into())),
            (Some(_), Some(_)) => return Err(Error::Validation("--type and --graph are exclusive".into())),
        };
        if args.threads == Some(0) {
            return Err(Error::Validation("--threads must be positive".into()));
        }
        Ok(RunConfig {
            command,
            source,
            max_degree: args.max_degree,
            algorithm,
            out: args.out.clone(),
            dot: args.dot.clone(),
            threads: args.threads,
        })
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Size { .. } => EXIT_CAP,
        Error::Inconsistent(_) => EXIT_MISMATCH,
        Error::Validation(_) | Error::Domain(_) | Error::Io(_) | Error::Json(_) => EXIT_INVALID,
    }
}

/// A graph together with the group it came from, if any.
struct Input {
    group: Option<(WeylGroup, Vec<usize>, usize)>,
    graph: MomentGraph,
}

fn load_input(source: &Source) -> Result<Input> {
    match source {
        Source::File(path) => {
            let text = fs::read_to_string(path)?;
            Ok(Input { group: None, graph: MomentGraph::load_json(&text)? })
        }
        Source::Group { cartan, word, parabolic } => {
            let w = WeylGroup::build(CartanDatum::parse(cartan)?)?;
            if let Some(&s) = parabolic.iter().find(|&&s| s >= w.rank()) {
                return Err(Error::Validation(format!("parabolic index {} out of range", s + 1)));
            }
            let mut top = w.parse_word(word)?;
            if word.trim().eq_ignore_ascii_case("longest") {
                top = w.minimal_rep(top, parabolic);
            }
            let graph = schubert_moment_graph(&w, top, parabolic)?;
            Ok(Input { group: Some((w, parabolic.clone(), top)), graph })
        }
    }
}

fn build_sheaf(config: &RunConfig, g: &MomentGraph) -> Result<GammaSheaf> {
    if config.algorithm == ImageAlgorithm::Planar && !g.is_schubert() {
        log::warn!("the planar algorithm is a heuristic on loaded graphs");
    }
    let opts = SheafOptions { algorithm: config.algorithm, max_degree: config.max_degree, check_extra_degree: false };
    canonical_sheaf(g, &opts)
}

/// Largest degree of the global Hilbert table: the top rank plus the largest
/// stalk degree bound.
fn hilbert_degree(sheaf: &GammaSheaf) -> Result<usize> {
    let g = sheaf.graph();
    let top = g.unique_maximal()?;
    let height = g.poset_ranks()[top] as usize;
    let bound = (0..g.num_vertices()).map(|x| sheaf.degree_bound(x)).max().unwrap_or(0);
    Ok(height + bound)
}

fn hilbert_table(sheaf: &GammaSheaf) -> Result<String> {
    let d_max = hilbert_degree(sheaf)?;
    let ih = global_hilbert(sheaf, d_max)?;
    let h = global_hilbert(&structure_sheaf(sheaf.graph()), d_max)?;
    let mut s = String::from("d,intersection,ordinary\n");
    for d in 0..=d_max {
        writeln!(s, "{d},{},{}", ih[d], h[d]).unwrap();
    }
    Ok(s)
}

/// Text report of the verification suites and whether they all passed.
fn verify_report(config: &RunConfig, input: &Input) -> Result<(String, bool)> {
    let g = &input.graph;
    let sheaf = build_sheaf(config, g)?;
    let mut report = String::new();
    let mut ok = true;

    if let Some((w, j, _)) = &input.group {
        // Each vertex y spans its own Schubert graph; compare all x <= y.
        let mut table = KlTable::new(w);
        let (mut matched, mut total) = (0usize, 0usize);
        for y in 0..g.num_vertices() {
            let yw = w.parse_word(g.label(y))?;
            let sub = schubert_moment_graph(w, yw, j)?;
            let sub_sheaf = build_sheaf(config, &sub)?;
            for x in 0..sub.num_vertices() {
                let xw = w.parse_word(sub.label(x))?;
                let expected = table.parabolic_kl(j, xw, yw)?;
                let ours = stalk_poincare(&sub_sheaf, x);
                let ours_q: Vec<i64> = ours.coefficients().iter().map(|&c| c as i64).collect();
                total += 1;
                if ours_q == expected {
                    matched += 1;
                } else {
                    writeln!(report, "mismatch P[{},{}]: sheaf {ours}, oracle {}", sub.label(x), g.label(y), format_qpoly(&expected))
                        .unwrap();
                }
            }
        }
        ok &= matched == total;
        writeln!(report, "{matched}/{total} KL values match").unwrap();
    } else {
        writeln!(report, "no oracle for loaded graphs; KL comparison skipped").unwrap();
    }

    let purity = verify_pure(&sheaf);
    for v in &purity.violations {
        writeln!(report, "purity: {v}").unwrap();
    }
    ok &= purity.is_pure();
    writeln!(report, "purity: {} ({} image comparisons)", if purity.is_pure() { "pass" } else { "FAIL" }, purity.comparisons)
        .unwrap();

    let (mut pairs, mut failures) = (0usize, 0usize);
    for x in 0..g.num_vertices() {
        for y in 0..g.num_vertices() {
            if x == y || !g.leq(x, y) {
                continue;
            }
            pairs += 1;
            let (px, py) = (stalk_poincare(&sheaf, x), stalk_poincare(&sheaf, y));
            let surjective = monotonicity_check(&sheaf, x, y)?;
            if !px.dominates(&py) || !surjective.iter().all(|&b| b) {
                failures += 1;
                writeln!(report, "monotonicity fails for {} <= {}: {px} vs {py}", g.label(x), g.label(y)).unwrap();
            }
        }
    }
    ok &= failures == 0;
    writeln!(report, "monotonicity: {}/{pairs} comparable pairs pass", pairs - failures).unwrap();

    let (mut compared, mut differ) = (0usize, 0usize);
    for x in 0..g.num_vertices() {
        for d in 0..=sheaf.degree_bound(x) + 1 {
            compared += 1;
            let a = boundary_image(&sheaf, x, d, ImageAlgorithm::Sections);
            let b = boundary_image(&sheaf, x, d, ImageAlgorithm::Planar);
            if a.basis() != b.basis() {
                differ += 1;
                writeln!(report, "planar image differs at {} in degree {d}: {} vs {}", g.label(x), b.rank(), a.rank())
                    .unwrap();
            }
        }
    }
    if g.is_schubert() {
        ok &= differ == 0;
    }
    writeln!(
        report,
        "planar vs sections: {}/{compared} images agree{}",
        compared - differ,
        if g.is_schubert() { "" } else { " (heuristic, not counted)" }
    )
    .unwrap();
    writeln!(report, "{}", if ok { "verify: PASS" } else { "verify: FAIL" }).unwrap();
    Ok((report, ok))
}

fn execute(config: &RunConfig) -> Result<Outcome> {
    let input = load_input(&config.source)?;
    let g = &input.graph;
    if let Some(path) = &config.dot {
        fs::write(path, g.to_dot())?;
    }
    let (artifact, exit_code) = match config.command {
        CommandKind::Graph => (g.save_json(), EXIT_OK),
        CommandKind::Sheaf => (sheaf_json(&build_sheaf(config, g)?)?, EXIT_OK),
        CommandKind::Kl => (poincare_csv(&build_sheaf(config, g)?)?, EXIT_OK),
        CommandKind::Hilbert => (hilbert_table(&build_sheaf(config, g)?)?, EXIT_OK),
        CommandKind::Verify => {
            let (text, ok) = verify_report(config, &input)?;
            (text, if ok { EXIT_OK } else { EXIT_MISMATCH })
        }
    };
    if let Some(path) = &config.out {
        fs::write(path, &artifact)?;
    }
    Ok(Outcome { artifact, exit_code })
}

/// Runs one command, inside a dedicated thread pool when `--threads` is set.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Validation(format!("thread pool: {e}")))?
            .install(|| execute(config)),
        None => execute(config),
    }
}

/// Entry point for the binary: prints the artifact (unless written to
/// `--out`) and returns the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
    let (kind, args) = cli.command.split();
    let outcome = RunConfig::from_args(kind, args).and_then(|config| {
        let outcome = run(&config)?;
        if config.out.is_none() || kind == CommandKind::Verify {
            print!("{}", outcome.artifact);
        }
        Ok(outcome)
    });
    match outcome {
        Ok(o) => o.exit_code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
