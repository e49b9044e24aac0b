use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cayiso::cayley::CayleyDigraph;
use cayiso::ci::{self, Method};
use cayiso::formats;
use cayiso::group::{ConnectionSet, FiniteAbelianGroup};
use cayiso::hat::{self, HatConstruction, WitnessMode};
use cayiso::lemma::{self, CliqueMode};
use cayiso::{Error, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Cayley digraphs of finite abelian groups: CI/DCI tests, the hat
/// construction and its structural checks.
///
/// Exit status: 0 pass or CI, 1 I/O or parse error, 2 hypothesis or check
/// failure, 3 non-CI (witness printed), 4 infeasible under the caps.
#[derive(Parser, Debug)]
#[command(name = "cayiso", version)]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "CAYISO_WORKERS", default_value_t = 0)]
    workers: usize,

    #[command(flatten)]
    caps: Caps,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Caps {
    /// Largest group order enumerated element by element.
    #[arg(long, global = true, env = "CAYISO_ENUMERATION_ORDER", default_value_t = Limits::default().enumeration_order)]
    enumeration_order: u64,
    /// Largest |GL(r, p)| enumerated.
    #[arg(long, global = true, env = "CAYISO_GL_ORDER", default_value_t = Limits::default().gl_order)]
    gl_order: u128,
    /// Largest non-elementary group order for automorphism search.
    #[arg(long, global = true, env = "CAYISO_BRUTE_FORCE_AUT_ORDER", default_value_t = Limits::default().brute_force_aut_order)]
    brute_force_aut_order: u64,
    /// Vertex cap for the X vs X⁻ isomorphism fallback.
    #[arg(long, global = true, env = "CAYISO_ISO_FALLBACK_VERTICES", default_value_t = Limits::default().iso_fallback_vertices)]
    iso_fallback_vertices: usize,
    /// Vertex cap for canonical labeling.
    #[arg(long, global = true, env = "CAYISO_CANON_VERTICES", default_value_t = Limits::default().canon_vertices)]
    canon_vertices: usize,
    /// Largest permutation group searched for regular subgroups.
    #[arg(long, global = true, env = "CAYISO_SUBGROUP_SEARCH_ORDER", default_value_t = Limits::default().subgroup_search_order)]
    subgroup_search_order: u128,
    /// Recursion-node budget for clique enumeration.
    #[arg(long, global = true, env = "CAYISO_CLIQUE_BUDGET", default_value_t = Limits::default().clique_budget)]
    clique_budget: u64,
    /// Largest group order for definitional CI scans.
    #[arg(long, global = true, env = "CAYISO_DEFINITIONAL_ORDER", default_value_t = Limits::default().definitional_order)]
    definitional_order: u64,
    /// Largest group order for whole-group scans.
    #[arg(long, global = true, env = "CAYISO_CI_GROUP_ORDER", default_value_t = Limits::default().ci_group_order)]
    ci_group_order: u64,
    /// Largest graph materialized as adjacency rows.
    #[arg(long, global = true, env = "CAYISO_MATERIALIZE_VERTICES", default_value_t = Limits::default().materialize_vertices)]
    materialize_vertices: usize,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            enumeration_order: self.enumeration_order,
            gl_order: self.gl_order,
            brute_force_aut_order: self.brute_force_aut_order,
            iso_fallback_vertices: self.iso_fallback_vertices,
            canon_vertices: self.canon_vertices,
            subgroup_search_order: self.subgroup_search_order,
            clique_budget: self.clique_budget,
            definitional_order: self.definitional_order,
            ci_group_order: self.ci_group_order,
            materialize_vertices: self.materialize_vertices,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the 760-element connection set in (Z_3)^8 and print its census.
    Spiga {
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the hat graph from a non-DCI digraph and check the hypotheses.
    Hat {
        #[arg(long)]
        set: PathBuf,
        #[arg(short, long)]
        n: u32,
        /// Write the hat graph as an edge list.
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Write the hat graph in graph6.
        #[arg(long)]
        graph6: Option<PathBuf>,
        /// Write the construction metadata record.
        #[arg(long)]
        metadata: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the (Z_p)^{r+2} or (Z_p)^{r+3} witness pipeline.
    Witness {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value = "r+2")]
        mode: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide whether an undirected Cayley graph is CI.
    CiTest(CiArgs),
    /// Decide whether a Cayley digraph is DCI.
    DciTest(CiArgs),
    /// Classify the maximal cliques of a hat graph.
    Cliques {
        #[arg(long)]
        set: PathBuf,
        #[arg(short, long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run one of the verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Connection set for the cliques and phi suites.
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(short, long)]
        n: Option<u32>,
        /// Group moduli for the outneighbour suite, e.g. `2,2,2`.
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<u32>,
        /// Largest group order for the babai-agreement suite.
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Export Cay(G; S) as an edge list or graph6.
    Export {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Export the bipartite double cover of Cay(G; S).
    DoubleCover {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CiArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Definitional)]
    method: MethodArg,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Definitional,
    Babai,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Full,
    Spot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Cliques,
    Outneighbour,
    Phi,
    BabaiAgreement,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edges,
    Graph6,
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_infeasible() => 4,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(s) => f.write_str(s),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

const PASS: u8 = 0;
const CHECK_FAILED: u8 = 2;
const NON_CI: u8 = 3;

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_to(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_to(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_set(path: &Path) -> Result<(FiniteAbelianGroup, ConnectionSet), Failure> {
    Ok(formats::read_connection_set(&read(path)?)?)
}

fn graph_text(g: &cayiso::digraph::Digraph, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Edges => formats::write_edge_list(g),
        Format::Graph6 => formats::to_graph6(g)? + "\n",
    })
}

fn cmd_spiga(out: &Option<PathBuf>) -> Outcome {
    let set = hat::spiga_connection_set();
    let parts = hat::spiga_parts();
    let census: Vec<String> = parts.iter().map(|p| format!("S_{{{},{},{}}} {}", p.label.0, p.label.1, p.label.2, p.set.len())).collect();
    let sizes: Vec<String> = parts.iter().map(|p| p.set.len().to_string()).collect();
    let summary = format!("{} = {}", sizes.join(" + "), set.len());
    match out {
        Some(p) => {
            write_to(p, &formats::write_connection_set(&set))?;
            println!("{}", census.join("\n"));
            println!("{summary}");
        }
        None => {
            print!("{}", formats::write_connection_set(&set));
            eprintln!("{}", census.join("\n"));
            eprintln!("{summary}");
        }
    }
    Ok(PASS)
}

fn export_hat(
    h: &HatConstruction,
    edges: &Option<PathBuf>,
    graph6: &Option<PathBuf>,
    metadata: &Option<PathBuf>,
    limits: &Limits,
) -> Result<(), Failure> {
    if let Some(p) = metadata {
        write_to(p, &(serde_json::to_string_pretty(&h.metadata()).expect("metadata serializes") + "\n"))?;
    }
    if edges.is_some() || graph6.is_some() {
        let g = h.hat_graph().to_digraph(limits)?;
        if let Some(p) = edges {
            write_to(p, &graph_text(&g, Format::Edges)?)?;
        }
        if let Some(p) = graph6 {
            write_to(p, &graph_text(&g, Format::Graph6)?)?;
        }
    }
    Ok(())
}

fn cmd_hat(
    set: &Path,
    n: u32,
    edges: &Option<PathBuf>,
    graph6: &Option<PathBuf>,
    metadata: &Option<PathBuf>,
    out: &Option<PathBuf>,
    limits: &Limits,
) -> Outcome {
    let (g, s) = load_set(set)?;
    let report = hat::check_hypotheses(&g, &s, n, limits)?;
    emit(out, &formats::write_report("hypotheses", &report.records))?;
    if !report.all_pass() {
        return Ok(CHECK_FAILED);
    }
    let h = hat::build_hat(&g, &s, n)?;
    export_hat(&h, edges, graph6, metadata, limits)?;
    eprintln!("hat graph: {} vertices, degree {}", h.vertex_count(), h.degree());
    Ok(PASS)
}

#[derive(Serialize)]
struct WitnessSummary<'a> {
    mode: WitnessMode,
    p: u32,
    r: usize,
    tricks: &'a [String],
    rejection: &'a Option<String>,
    hat_vertices: Option<usize>,
    hat_degree: Option<usize>,
}

fn cmd_witness(set: &Path, mode: &str, out: &Option<PathBuf>, limits: &Limits) -> Outcome {
    let (g, s) = load_set(set)?;
    let mode: WitnessMode = mode.parse()?;
    let p = g.elementary_prime().ok_or_else(|| Error::InvalidParameter("group is not elementary abelian".into()))?;
    let w = hat::build_non_ci_witness(p, g.rank(), &s, mode, limits)?;
    let summary = WitnessSummary {
        mode: w.mode,
        p: w.p,
        r: w.r,
        tricks: &w.tricks,
        rejection: &w.rejection,
        hat_vertices: w.hat.as_ref().map(HatConstruction::vertex_count),
        hat_degree: w.hat.as_ref().map(HatConstruction::degree),
    };
    let mut text = formats::write_report("witness", &[summary]);
    for r in &w.report.records {
        text.push_str(&serde_json::to_string(r).expect("record serializes"));
        text.push('\n');
    }
    emit(out, &text)?;
    Ok(if w.hat.is_some() { PASS } else { CHECK_FAILED })
}

fn cmd_ci(args: &CiArgs, directed: bool, limits: &Limits) -> Outcome {
    let (g, s) = load_set(&args.set)?;
    let method = match args.method {
        MethodArg::Definitional => Method::Definitional,
        MethodArg::Babai => Method::Babai,
    };
    let verdict = ci::is_ci(&g, &s, directed, method, limits)?;
    emit(&args.out, &formats::write_report(if directed { "dci-verdict" } else { "ci-verdict" }, &[&verdict]))?;
    Ok(if verdict.is_ci { PASS } else { NON_CI })
}

fn cmd_cliques(set: &Path, n: u32, mode: ModeArg, out: &Option<PathBuf>, limits: &Limits) -> Outcome {
    let (g, s) = load_set(set)?;
    let h = hat::build_hat(&g, &s, n)?;
    let mode = match mode {
        ModeArg::Full => CliqueMode::Full,
        ModeArg::Spot => CliqueMode::Spot,
    };
    let report = lemma::verify_clique_lemma(&h, mode, limits)?;
    emit(out, &formats::write_report("cliques", &[&report]))?;
    Ok(if report.passed() { PASS } else { CHECK_FAILED })
}

fn need_hat(set: &Option<PathBuf>, n: Option<u32>) -> Result<HatConstruction, Failure> {
    let (Some(set), Some(n)) = (set, n) else {
        return Err(Failure::Io("this suite needs --set and --n".into()));
    };
    let (g, s) = load_set(set)?;
    Ok(hat::build_hat(&g, &s, n)?)
}

#[derive(Serialize)]
struct SuiteResult<T: Serialize> {
    suite: &'static str,
    passed: bool,
    detail: T,
}

fn suite_text<T: Serialize>(suite: &'static str, passed: bool, detail: T) -> String {
    formats::write_report("verify", &[SuiteResult { suite, passed, detail }])
}

fn cmd_verify(
    suite: Suite,
    set: &Option<PathBuf>,
    n: Option<u32>,
    moduli: &[u32],
    max_order: usize,
    out: &Option<PathBuf>,
    limits: &Limits,
) -> Outcome {
    let (passed, text) = match suite {
        Suite::Cliques => {
            let h = need_hat(set, n)?;
            let r = lemma::verify_clique_lemma(&h, CliqueMode::Full, limits)?;
            (r.passed(), suite_text("cliques", r.passed(), &r))
        }
        Suite::Outneighbour => {
            let moduli = if moduli.is_empty() { &[6][..] } else { moduli };
            let g = FiniteAbelianGroup::new(moduli)?;
            let r = lemma::verify_outneighbour_lemma(&g, limits)?;
            (r.passed(), suite_text("outneighbour", r.passed(), &r))
        }
        Suite::Phi => {
            let h = need_hat(set, n)?;
            let phi = lemma::verify_phi_lemma(&h, limits)?;
            let lift = lemma::verify_lift_containment(&h, limits)?;
            let ok = phi.passed() && lift.failures == 0;
            (ok, suite_text("phi", ok, (&phi, &lift)))
        }
        Suite::BabaiAgreement => {
            let mut rows = Vec::new();
            for m in ci::abelian_groups_up_to(max_order) {
                rows.push(ci::method_agreement(&FiniteAbelianGroup::new(&m)?, limits)?);
            }
            let ok = rows.iter().all(|r| r.disagreements.is_empty());
            (ok, suite_text("babai-agreement", ok, &rows))
        }
    };
    emit(out, &text)?;
    Ok(if passed { PASS } else { CHECK_FAILED })
}

fn cmd_export(set: &Path, format: Format, double_cover: bool, out: &Option<PathBuf>, limits: &Limits) -> Outcome {
    let (g, s) = load_set(set)?;
    let x = CayleyDigraph::new(&g, &s)?;
    let x = if s.is_symmetric() && !double_cover { x.to_undirected()? } else { x };
    let graph = if double_cover { x.bipartite_double_cover(limits)? } else { x.to_digraph(limits)? };
    emit(out, &graph_text(&graph, format)?)?;
    Ok(PASS)
}

fn run(cli: &Cli) -> Outcome {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Spiga { out } => cmd_spiga(out),
        Command::Hat { set, n, edges, graph6, metadata, out } => cmd_hat(set, *n, edges, graph6, metadata, out, &limits),
        Command::Witness { set, mode, out } => cmd_witness(set, mode, out, &limits),
        Command::CiTest(args) => cmd_ci(args, false, &limits),
        Command::DciTest(args) => cmd_ci(args, true, &limits),
        Command::Cliques { set, n, mode, out } => cmd_cliques(set, *n, *mode, out, &limits),
        Command::Verify { suite, set, n, moduli, max_order, out } => {
            cmd_verify(*suite, set, *n, moduli, *max_order, out, &limits)
        }
        Command::Export { set, format, out } => cmd_export(set, *format, false, out, &limits),
        Command::DoubleCover { set, format, out } => cmd_export(set, *format, true, out, &limits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if cli.workers > 0 {
        // A global pool can only be installed once; failure leaves the default.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
