//! Batch front end: generate, analyze, extract, query cycles, verify, and
//! print bounds.
//!
//! Exit status: 0 success, 2 usage or input error, 3 no witness where the
//! density hypothesis fails, 4 verification or internal failure, 5 budget
//! exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use plane_turan::bounds::bounds_profile;
use plane_turan::connectivity::{is_circuit_graph, is_two_connected};
use plane_turan::cycles::{
    cycle_of_length_exactly, longest_cycle, two_disjoint_k_cycles_within, Budget, Circumference,
};
use plane_turan::extractor::{extract_near_triangulation, Extraction};
use plane_turan::generators::{
    glued_construction, moon_moser, random_near_triangulation, random_two_connected, MoonMoserSpec,
};
use plane_turan::holes::{hole_report, is_near_triangulation};
use plane_turan::io::{read_graphs, write_graphs, Format};
use plane_turan::plane::PlaneGraph;
use plane_turan::verify::{
    extraction_cases, verify_extraction, verify_glued, verify_lemma_suite, Mutant, Outcome,
    VerificationReport,
};
use plane_turan::Error;

const USAGE: u8 = 2;
const NOT_FOUND: u8 = 3;
const FAILED: u8 = 4;
const BUDGET: u8 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "plane-turan",
    version,
    about = "Plane graphs, near-triangulations and cycle oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Opts {
    /// Graph file format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Seed for every randomized step; required where randomness is used.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Time budget per check in milliseconds.
    #[arg(long = "budget-ms", global = true, default_value_t = 60_000)]
    budget_ms: u64,
    #[arg(long, global = true)]
    t: Option<usize>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    level: Option<usize>,
    #[arg(long = "target-m", global = true)]
    target_m: Option<usize>,
    /// Worker threads for `verify`; 0 lets the pool decide.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Output path; standard output when absent or `-`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum FormatArg {
    #[value(name = "planar_code")]
    PlanarCode,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::PlanarCode => Format::PlanarCode,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Write generated graphs.
    Gen {
        #[arg(value_enum)]
        generator: Generator,
    },
    /// Report faces, holes and connectivity of every input graph.
    Analyze {
        #[arg(default_value = "-")]
        input: String,
        /// Re-emit the parsed graphs here, in `--format`.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Extract a near-triangulation of order at least `--t` and print its
    /// certificate.
    Extract {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Cycle queries.
    Cycles {
        #[arg(value_enum)]
        query: CycleQuery,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Instances per parameter value.
        #[arg(long)]
        trials: Option<usize>,
        /// Emit JSON lines instead of a table.
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, hide = true)]
        mutant: Option<MutantArg>,
    },
    /// Print the bound profile for `--n`, `--t`, `--k`.
    Bounds,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Generator {
    MoonMoser,
    Glued,
    #[value(name = "random-2c")]
    #[serde(rename = "random-2c")]
    Random2c,
    NearTri,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CycleQuery {
    Longest,
    ExactK,
    TwoK,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Suite {
    Extraction,
    Lemmas,
    Glued,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum MutantArg {
    JoinableOffByOne,
}

/// Everything needed to repeat a run.
#[derive(Serialize)]
struct RunConfig<'a> {
    command: &'a Command,
    #[serde(flatten)]
    opts: &'a Opts,
}

/// An error with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::BudgetExceeded) => BUDGET,
            Some(Error::Invariant(_)) => FAILED,
            _ => USAGE,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        error: anyhow!(msg.into()),
    }
}

type Run = std::result::Result<u8, Failure>;

struct Ctx {
    opts: Opts,
    /// Commentary goes here; it is stderr when stdout carries the graphs.
    log: Box<dyn Write>,
    out: Box<dyn Write>,
}

impl Ctx {
    fn need(&self, value: Option<usize>, flag: &str) -> std::result::Result<usize, Failure> {
        value.ok_or_else(|| usage(format!("--{flag} is required")))
    }

    fn seed(&self) -> std::result::Result<u64, Failure> {
        self.opts
            .seed
            .ok_or_else(|| usage("--seed is required for randomized runs"))
    }

    fn budget(&self) -> Budget {
        Budget::millis(self.opts.budget_ms)
    }

    fn read_input(&self, input: &str) -> std::result::Result<Vec<PlaneGraph>, Failure> {
        let mut bytes = Vec::new();
        if input == "-" {
            io::stdin()
                .read_to_end(&mut bytes)
                .context("reading standard input")?;
        } else {
            bytes = fs::read(input).with_context(|| format!("reading {input}"))?;
        }
        Ok(read_graphs(&bytes, self.opts.format.into())
            .with_context(|| format!("parsing {input}"))?)
    }
}

fn open_out(path: &Option<PathBuf>) -> anyhow::Result<Option<Box<dyn Write>>> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let f = fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
            Ok(Some(Box::new(io::BufWriter::new(f))))
        }
        _ => Ok(None),
    }
}

fn one_based(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_gen(ctx: &mut Ctx, generator: Generator) -> Run {
    let (graph, spec) = match generator {
        Generator::MoonMoser => {
            let level = ctx.need(ctx.opts.level, "level")?;
            let spec = MoonMoserSpec::new(level)?;
            (
                moon_moser(level)?,
                format!("moon-moser level={} order={}", spec.level, spec.order),
            )
        }
        Generator::Glued => {
            let (k, n) = (ctx.need(ctx.opts.k, "k")?, ctx.need(ctx.opts.n, "n")?);
            let (g, s) = glued_construction(n, k)?;
            let lobes = s
                .lobe_orders
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let line = format!(
                "glued k={} n={} m={} t={} n'={} lobes={lobes}",
                s.k, s.n, s.m, s.t_copies, s.remainder
            );
            (g, line)
        }
        Generator::Random2c => {
            let (n, seed) = (ctx.need(ctx.opts.n, "n")?, ctx.seed()?);
            let target = ctx.opts.target_m.unwrap_or(0);
            let (g, m) = random_two_connected(n, target, seed)?;
            (
                g,
                format!("random-2c n={n} target_m={target} m={m} seed={seed}"),
            )
        }
        Generator::NearTri => {
            let (n, seed) = (ctx.need(ctx.opts.n, "n")?, ctx.seed()?);
            (
                random_near_triangulation(n, seed)?,
                format!("near-tri n={n} seed={seed}"),
            )
        }
    };
    writeln!(ctx.log, "{spec}").context("writing")?;
    let bytes = write_graphs(&[graph], ctx.opts.format.into())?;
    ctx.out.write_all(&bytes).context("writing graph")?;
    Ok(0)
}

fn analyze_one(out: &mut dyn Write, i: usize, g: &PlaneGraph) -> anyhow::Result<()> {
    let (n, e, f) = (g.vertex_count(), g.edge_count(), g.face_count());
    writeln!(out, "graph {}", i + 1)?;
    writeln!(out, "  n {n} e {e} f {f}")?;
    let mut hist = std::collections::BTreeMap::new();
    for face in g.inner_faces() {
        *hist.entry(face.len()).or_insert(0usize) += 1;
    }
    let hist: Vec<String> = hist.iter().map(|(len, c)| format!("{len}:{c}")).collect();
    writeln!(out, "  inner face lengths {}", hist.join(" "))?;
    writeln!(out, "  outer face length {}", g.outer_face().len())?;
    if !is_two_connected(g) {
        writeln!(out, "  two-connected false")?;
        writeln!(
            out,
            "  partial: not 2-connected, so m(G), circuit-graph and near-triangulation are false"
        )?;
        writeln!(out, "  circuit-graph false")?;
        writeln!(out, "  near-triangulation false")?;
        return Ok(());
    }
    let report = hole_report(g);
    writeln!(out, "  two-connected true")?;
    writeln!(out, "  m {}", report.missing_edge_count)?;
    writeln!(out, "  circuit-graph {}", is_circuit_graph(g)?)?;
    writeln!(out, "  near-triangulation {}", is_near_triangulation(g))?;
    for &h in &report.holes {
        let face = &g.faces()[h];
        writeln!(
            out,
            "  hole {} length {}: {}",
            h,
            face.len(),
            one_based(&face.walk)
        )?;
    }
    Ok(())
}

fn cmd_analyze(ctx: &mut Ctx, input: &str, emit: &Option<PathBuf>) -> Run {
    let graphs = ctx.read_input(input)?;
    for (i, g) in graphs.iter().enumerate() {
        analyze_one(&mut ctx.out, i, g)?;
    }
    if let Some(path) = emit {
        let bytes = write_graphs(&graphs, ctx.opts.format.into())?;
        if path.as_os_str() == "-" {
            ctx.out.write_all(&bytes).context("writing")?;
        } else {
            fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(0)
}

fn cmd_extract(ctx: &mut Ctx, input: &str) -> Run {
    let t = ctx.need(ctx.opts.t, "t")?;
    let graphs = ctx.read_input(input)?;
    let mut code = 0;
    for (i, g) in graphs.iter().enumerate() {
        match extract_near_triangulation(g, t)? {
            Extraction::Found { witness, route } => {
                writeln!(
                    ctx.log,
                    "graph {}: order {} via {route:?}",
                    i + 1,
                    witness.order
                )
                .context("writing")?;
                ctx.out
                    .write_all(witness.to_certificate(t).as_bytes())
                    .context("writing")?;
            }
            Extraction::NotFound {
                hypothesis_holds: false,
            } => {
                writeln!(
                    ctx.log,
                    "graph {}: no witness; the density hypothesis fails",
                    i + 1
                )
                .context("writing")?;
                code = code.max(NOT_FOUND);
            }
            Extraction::NotFound {
                hypothesis_holds: true,
            } => {
                writeln!(
                    ctx.log,
                    "graph {}: no witness although the hypothesis holds (bug)",
                    i + 1
                )
                .context("writing")?;
                code = code.max(FAILED);
            }
        }
    }
    Ok(code)
}

fn cmd_cycles(ctx: &mut Ctx, query: CycleQuery, input: &str) -> Run {
    let graphs = ctx.read_input(input)?;
    let mut code = 0;
    for (i, g) in graphs.iter().enumerate() {
        let line = match query {
            CycleQuery::Longest => match longest_cycle(g, ctx.budget()) {
                Circumference::Exact { length, witness } => format!(
                    "longest exact {length}: {}",
                    witness.map_or(String::new(), |w| one_based(&w.vertices))
                ),
                Circumference::BudgetExceeded { best, upper_bound } => {
                    code = BUDGET;
                    format!(
                        "longest budget best {} upper {upper_bound}: {}",
                        best.as_ref().map_or(0, |w| w.len()),
                        best.map_or(String::new(), |w| one_based(&w.vertices))
                    )
                }
            },
            CycleQuery::ExactK => {
                let k = ctx.need(ctx.opts.k, "k")?;
                match cycle_of_length_exactly(g, k) {
                    Some(w) => format!("cycle {k}: {}", one_based(&w.vertices)),
                    None => format!("cycle {k}: none"),
                }
            }
            CycleQuery::TwoK => {
                let k = ctx.need(ctx.opts.k, "k")?;
                match two_disjoint_k_cycles_within(g, k, ctx.budget()) {
                    Ok(Some(p)) => format!(
                        "two {k}-cycles: {} | {}",
                        one_based(&p.first.vertices),
                        one_based(&p.second.vertices)
                    ),
                    Ok(None) => format!("two {k}-cycles: none"),
                    Err(Error::BudgetExceeded) => {
                        code = BUDGET;
                        format!("two {k}-cycles: budget exceeded")
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        };
        writeln!(ctx.out, "graph {}: {line}", i + 1).context("writing")?;
    }
    Ok(code)
}

fn cmd_verify(
    ctx: &mut Ctx,
    suite: Suite,
    trials: Option<usize>,
    json: bool,
    mutant: Option<MutantArg>,
) -> Run {
    let seed = ctx.seed()?;
    let w = ctx.opts.workers;
    let mut parts = Vec::new();
    if matches!(suite, Suite::Extraction | Suite::All) {
        let max_n = ctx.opts.n.unwrap_or(64);
        let cases = match ctx.opts.t {
            Some(t) => extraction_cases(seed, t..=t, trials.unwrap_or(500), max_n)?,
            None => extraction_cases(seed, 4..=8, trials.unwrap_or(500), max_n)?,
        };
        parts.push(verify_extraction(&cases, w));
    }
    if matches!(suite, Suite::Lemmas | Suite::All) {
        let mutant = mutant.map(|MutantArg::JoinableOffByOne| Mutant::JoinableOffByOne);
        parts.push(verify_lemma_suite(seed, trials.unwrap_or(200), mutant, w));
    }
    if matches!(suite, Suite::Glued | Suite::All) {
        let ks = ctx.opts.k.map_or(vec![7, 14], |k| vec![k]);
        let ns: Vec<usize> = (1..=ctx.opts.n.unwrap_or(40)).collect();
        parts.push(verify_glued(&ks, &ns, ctx.budget(), w));
    }
    let report = if parts.len() == 1 {
        parts.pop().expect("one part")
    } else {
        VerificationReport::merged("all", parts)
    };
    let text = if json {
        report.to_json_lines()
    } else {
        report.to_table()
    };
    ctx.out
        .write_all(text.as_bytes())
        .context("writing report")?;
    writeln!(ctx.log, "{}", report.summary()).context("writing")?;
    Ok(if !report.passed() {
        FAILED
    } else if report.count(Outcome::Budget) > 0 {
        BUDGET
    } else {
        0
    })
}

fn cmd_bounds(ctx: &mut Ctx) -> Run {
    let (n, t, k) = (
        ctx.need(ctx.opts.n, "n")?,
        ctx.need(ctx.opts.t, "t")?,
        ctx.need(ctx.opts.k, "k")?,
    );
    let p = bounds_profile(n, t, k)?;
    let th = p.extraction_threshold;
    let out = &mut ctx.out;
    (|| -> io::Result<()> {
        writeln!(out, "n {} t {} k {}", p.n, p.t, p.k)?;
        writeln!(
            out,
            "extraction_threshold {}/{} = {:.9}",
            th.num,
            th.den,
            th.to_f64()
        )?;
        writeln!(out, "ck_upper {:.9}", p.ck_upper)?;
        writeln!(out, "two_ck_upper {:.9}", p.two_ck_upper)?;
        match p.two_ck_lower {
            Some(x) => writeln!(out, "two_ck_lower {x:.9}")?,
            None => writeln!(out, "two_ck_lower not instantiable")?,
        }
        writeln!(out, "chen_yu_order {:.9}", p.chen_yu_order)
    })()
    .context("writing")?;
    Ok(0)
}

fn run(cli: Cli) -> Run {
    let file = open_out(&cli.opts.out)?;
    let graphs_on_stdout = file.is_none() && matches!(cli.command, Command::Gen { .. });
    let config = serde_json::to_string(&RunConfig {
        command: &cli.command,
        opts: &cli.opts,
    })
    .context("serializing config")?;
    let mut ctx = Ctx {
        opts: cli.opts.clone(),
        log: if graphs_on_stdout || matches!(cli.command, Command::Extract { .. }) {
            Box::new(io::stderr())
        } else {
            Box::new(io::stdout())
        },
        out: file.unwrap_or_else(|| Box::new(io::stdout())),
    };
    writeln!(ctx.log, "# config {config}").context("writing")?;
    let code = match &cli.command {
        Command::Gen { generator } => cmd_gen(&mut ctx, *generator),
        Command::Analyze { input, emit } => cmd_analyze(&mut ctx, input, emit),
        Command::Extract { input } => cmd_extract(&mut ctx, input),
        Command::Cycles { query, input } => cmd_cycles(&mut ctx, *query, input),
        Command::Verify {
            suite,
            trials,
            json,
            mutant,
        } => cmd_verify(&mut ctx, *suite, *trials, *json, *mutant),
        Command::Bounds => cmd_bounds(&mut ctx),
    }?;
    ctx.out.flush().context("flushing output")?;
    ctx.log.flush().context("flushing output")?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
