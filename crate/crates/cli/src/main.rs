use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chromax::color::{acyclic_orientations, chromatic_polynomial, count_cliques, count_colorings};
use chromax::graph::{self, BipartitionSpec, CenterSide, GraphFormat};
use chromax::opt::{self, Method, OptResult, SizePartition};
use chromax::search::{self, Objective, Tag};
use chromax::{verify, Graph, SubsetVector};

mod output;

use output::{OutputKind, Report};

#[derive(Parser, Debug)]
#[command(name = "chromax", version, about = "Coloring counts, extremal graphs and their optimization programs")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputKind::Text)]
    output: OutputKind,

    /// Worker threads for searches and sweeps (0 = all cores).
    #[arg(long, global = true, env = "CHROMAX_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count proper q-colorings (or t-cliques with --t) of a graph.
    Count {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, required_unless_present = "t", conflicts_with = "t")]
        q: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Chromatic polynomial and acyclic orientation count.
    Chromatic {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Build a graph from one of the named families.
    Construct(ConstructArgs),
    /// Optimum of Problem 1 at density γ.
    Opt {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_enum, default_value_t = OptMethod::Auto)]
        method: OptMethod,
    },
    /// Optimum of Problem 2, or its restriction to one support partition.
    Opt2 {
        #[arg(long)]
        q: usize,
        /// Part sizes, e.g. 2,2,3.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Problem 2 on every support partition of [q].
    Sweep {
        #[arg(long)]
        q: usize,
    },
    /// Exhaustive extremal search over graphs with n vertices and m edges.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: Option<usize>,
        /// Clique size for --mode cliques.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Max)]
        mode: Mode,
        /// Search isomorphism classes instead of labelled graphs.
        #[arg(long)]
        dedup: bool,
    },
    /// Structural tags of a graph.
    Classify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        q: usize,
    },
    /// Run the inequality checks and counting cross-checks.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file (`-` for standard input).
    #[arg(long)]
    graph: PathBuf,
    /// Input format; by default taken from the file extension.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Side holding the missing star's center.
    #[arg(long, value_enum, default_value_t = Side::Larger)]
    center: Side,
    /// Subset vector, e.g. "{1}=0.4,{2,3}=0.6".
    #[arg(long)]
    alpha: Option<String>,
    /// Output format for the graph.
    #[arg(long, value_enum, default_value_t = FormatArg::El)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    El,
    G6,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::El => GraphFormat::EdgeList,
            FormatArg::G6 => GraphFormat::Graph6,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Turan,
    Semicomplete,
    Galpha,
    Sparse,
    Linial,
    Pendant,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Larger,
    Smaller,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum OptMethod {
    Auto,
    Closed,
    Numeric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Max,
    Min,
    Cliques,
}

/// Domain failure: reported on stderr, exit status 1.
struct Failure(String);

impl From<chromax::Error> for Failure {
    fn from(e: chromax::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure(s)
    }
}

type Outcome = Result<Report, Failure>;

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure(format!("construct {family} needs --{flag}")))
}

fn read_graph(input: &GraphInput) -> Result<Graph, Failure> {
    let format = match input.format {
        Some(f) => f.into(),
        None => {
            let ext = input.graph.extension().and_then(|e| e.to_str()).unwrap_or("");
            GraphFormat::from_extension(ext).unwrap_or(GraphFormat::EdgeList)
        }
    };
    let bytes = if input.graph == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read(&input.graph).map_err(|e| Failure(format!("reading {}: {e}", input.graph.display())))?
    };
    Ok(graph::decode(&bytes, format)?)
}

#[derive(Serialize)]
struct CountReport {
    graph: String,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    count: chromax::BigCount,
}

#[derive(Serialize)]
struct ChromaticReport {
    graph: String,
    n: usize,
    m: usize,
    polynomial: String,
    coefficients: chromax::color::ChromaticPolynomial,
    acyclic_orientations: chromax::BigCount,
}

#[derive(Serialize)]
struct ConstructReport {
    family: String,
    n: usize,
    m: usize,
    graph6: String,
    edges: Vec<Edge>,
}

#[derive(Serialize)]
struct Edge {
    u: usize,
    v: usize,
}

#[derive(Serialize)]
struct ClassifyReport {
    graph: String,
    n: usize,
    m: usize,
    q: usize,
    tags: Vec<Tag>,
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Count { input, q, t } => {
            let g = read_graph(&input)?;
            let count = match (q, t) {
                (Some(q), _) => count_colorings(&g, q),
                (None, Some(t)) => count_cliques(&g, t)?,
                (None, None) => return Err(Failure("count needs --q or --t".into())),
            };
            let text = count.value().to_string();
            let rep = CountReport { graph: graph::to_graph6(&g), n: g.n(), m: g.edge_count(), q, t, count };
            Ok(Report::new(&rep, text, None)?)
        }
        Command::Chromatic { input } => {
            let g = read_graph(&input)?;
            let p = chromatic_polynomial(&g)?;
            let acyclic = acyclic_orientations(&g)?;
            let text = format!("P(q) = {p}\nacyclic orientations: {}", acyclic.value());
            let rep = ChromaticReport {
                graph: graph::to_graph6(&g),
                n: g.n(),
                m: g.edge_count(),
                polynomial: p.to_string(),
                coefficients: p,
                acyclic_orientations: acyclic,
            };
            Ok(Report::new(&rep, text, None)?)
        }
        Command::Construct(args) => construct(args),
        Command::Opt { q, gamma, method } => {
            let r = solve_opt(q, gamma, method)?;
            Ok(Report::new(&r, opt_text(&r), None)?)
        }
        Command::Opt2 { q, partition } => {
            let r = match partition {
                Some(p) => {
                    let p: SizePartition = p.parse()?;
                    opt::solve_opt2_partition(q, &p)?
                }
                None => opt::opt2_closed_form(q)?,
            };
            Ok(Report::new(&r, opt_text(&r), None)?)
        }
        Command::Sweep { q } => {
            let s = opt::solve_opt2_all_partitions(q)?;
            let mut text = format!("q = {q}: argmax {} value {:.9}, margin {:.3e}\n", s.argmax, s.argmax_value, s.margin);
            for row in &s.rows {
                text.push_str(&format!(
                    "{:<16} {:>14.9}  residual {:.1e}{}\n",
                    row.partition.to_string(),
                    row.value,
                    row.kkt_residual,
                    if row.is_argmax { "  *" } else { "" }
                ));
            }
            for w in &s.warnings {
                text.push_str(&format!("warning: {w}\n"));
            }
            Ok(Report::new(&s, text, Some("rows"))?)
        }
        Command::Search { n, m, q, t, mode, dedup } => {
            let (objective, param) = match mode {
                Mode::Max => (Objective::MaxColorings, q.ok_or_else(|| Failure("--mode max needs --q".into()))?),
                Mode::Min => (Objective::MinColorings, q.ok_or_else(|| Failure("--mode min needs --q".into()))?),
                Mode::Cliques => (Objective::MaxCliques, t.ok_or_else(|| Failure("--mode cliques needs --t".into()))?),
            };
            let r = search::search_extremal(n, m, objective, param, dedup)?;
            let mut text = format!(
                "extremal value {} over {} graphs ({} witness{})\n",
                r.extremal_value.value(),
                r.graphs_examined,
                r.witnesses.len(),
                if r.witnesses.len() == 1 { "" } else { "es" }
            );
            for (w, tags) in r.witnesses.iter().zip(&r.tags) {
                let tags: Vec<String> = tags.iter().map(Tag::to_string).collect();
                text.push_str(&format!("{}  {}\n", graph::to_graph6(w), tags.join(" ")));
            }
            Ok(Report::new(&r, text, None)?)
        }
        Command::Classify { input, q } => {
            let g = read_graph(&input)?;
            let tags = search::classify_extremal(&g, q);
            let text = tags.iter().map(Tag::to_string).collect::<Vec<_>>().join("\n");
            let rep = ClassifyReport { graph: graph::to_graph6(&g), n: g.n(), m: g.edge_count(), q, tags };
            Ok(Report::new(&rep, text, None)?)
        }
        Command::Verify { seed } => {
            let r = verify::run_all(seed);
            let text = r.to_table();
            let report = Report::new(&r, text, Some("checks"))?;
            if r.passed {
                Ok(report)
            } else {
                Err(Failure(format!("verification failed\n{}", r.to_table())))
            }
        }
    }
}

fn solve_opt(q: usize, gamma: f64, method: OptMethod) -> Result<OptResult, Failure> {
    let closed = || -> chromax::Result<Option<OptResult>> {
        if q == 3 {
            return opt::opt_closed_form_q3(gamma).map(Some);
        }
        if q >= 2 && gamma <= opt::kappa(q)? {
            return opt::opt_closed_form_sparse(q, gamma).map(Some);
        }
        Ok(None)
    };
    Ok(match method {
        OptMethod::Numeric => opt::solve_opt1_numeric(q, gamma)?,
        OptMethod::Closed => closed()?.ok_or_else(|| {
            Failure(format!("no closed form for q = {q} at γ = {gamma}; use --method numeric"))
        })?,
        OptMethod::Auto => match closed()? {
            Some(r) => r,
            None => opt::solve_opt1_numeric(q, gamma)?,
        },
    })
}

fn opt_text(r: &OptResult) -> String {
    let mut s = format!("value {:.12}\nargmax {}\n", r.value, r.argmax);
    if let Some(reg) = &r.regime {
        s.push_str(&format!("regime ({reg})\n"));
    }
    let note = match (r.method, r.converged) {
        (Method::ClosedForm, _) => "closed form",
        (Method::Numeric, true) => "numeric",
        (Method::Numeric, false) => "numeric, not converged",
    };
    s.push_str(&format!("kkt residual {:.3e} ({note})\n", r.kkt_residual));
    s
}

fn construct(args: ConstructArgs) -> Outcome {
    let name = format!("{:?}", args.family).to_lowercase();
    let f = name.as_str();
    let g = match args.family {
        Family::Turan => graph::turan(need(args.n, "n", f)?, need(args.r, "r", f)?)?,
        Family::Semicomplete => {
            let center = match args.center {
                Side::Larger => CenterSide::Larger,
                Side::Smaller => CenterSide::Smaller,
            };
            let spec = BipartitionSpec::new(need(args.a, "a", f)?, need(args.b, "b", f)?, need(args.r, "r", f)?, center)?;
            graph::semi_complete(spec)?
        }
        Family::Galpha => {
            let q = need(args.q, "q", f)?;
            let n = need(args.n, "n", f)?;
            let text = args.alpha.as_deref().ok_or_else(|| Failure("construct galpha needs --alpha".into()))?;
            let alpha = SubsetVector::parse(q, text)?;
            match args.m {
                Some(m) => graph::g_alpha_prime(n, m, &alpha, q)?,
                None => graph::g_alpha(n, &alpha, q)?,
            }
        }
        Family::Sparse => graph::sparse_optimal(need(args.n, "n", f)?, need(args.m, "m", f)?, need(args.q, "q", f)?)?,
        Family::Linial => graph::linial_graph(need(args.n, "n", f)?, need(args.m, "m", f)?)?,
        Family::Pendant => graph::pendant_graph(need(args.a, "a", f)?, need(args.b, "b", f)?)?,
    };
    let encoded = graph::encode(&g, args.format.into());
    let text = String::from_utf8(encoded).map_err(|e| Failure(format!("encoding: {e}")))?;
    let rep = ConstructReport {
        family: name.clone(),
        n: g.n(),
        m: g.edge_count(),
        graph6: graph::to_graph6(&g),
        edges: g.edges().into_iter().map(|(u, v)| Edge { u, v }).collect(),
    };
    Ok(Report::new(&rep, text, Some("edges"))?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: could not configure {t} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(report) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match report.write(cli.output, &mut lock) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: writing output: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
