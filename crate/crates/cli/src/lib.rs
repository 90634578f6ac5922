//! Batch front end over `randic-core`. [`run_cli`] parses an argument
//! vector, runs one subcommand and returns the process exit code:
//! 0 on success, 1 when a verification found violations, 2 on usage or
//! input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use randic_core::cactus::{export_catalog, extremal_set, CactusGenerator};
use randic_core::report::{emit_reports, Format};
use randic_core::search::{max_orientation_bnb_with, max_orientation_exhaustive_with};
use randic_core::verify::{self, VerificationReport};
use randic_core::{
    canonical_label, index_digraph, index_graph, parse_digraph, parse_graph, validate, Error, Exponent, Graph,
    Mode, Parallelism, SearchOptions,
};

#[derive(Parser, Debug)]
#[command(name = "randic", version, about = "Zeroth-order general Randic index of oriented cacti")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index of a graph, or of a digraph with --directed.
    Index {
        #[arg(long)]
        graph: PathBuf,
        /// Read the file as an arc list.
        #[arg(long)]
        directed: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Maximum index over all orientations of a graph.
    OrientMax {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Search::Exhaustive)]
        search: Search,
        #[arg(long, action = clap::ArgAction::Set, default_value_t = false)]
        halve_reversal: bool,
        /// Write each witness as an arc-list file into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Count cacti up to isomorphism, optionally exporting them.
    GenCacti {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        /// Export every cactus as an edge-list file into this directory.
        #[arg(long)]
        export_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The extremal digraphs for (n, r, a).
    ConstructExtremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Write each member as an arc-list file into this directory.
        #[arg(long)]
        member_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive check of one claim.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        r_max: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        grid_points: usize,
        /// Report wall time as 0 so output bytes are reproducible.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Comma-separated exponents.
    #[arg(long, default_value = "1")]
    a: String,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Search {
    Exhaustive,
    Bnb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Claim {
    Bound,
    SinkSource,
    TransformA,
    TransformB,
    Pendant,
    Catalogs,
    Theorem,
    Appendix,
    All,
}

/// Failure that ends the run with exit code 2.
struct Usage(String);

impl Usage {
    fn flag(flag: &str, e: impl std::fmt::Display) -> Self {
        Usage(format!("{flag}: {e}"))
    }
}

type Outcome = Result<(String, bool), Usage>;

/// Runs the command line `args` (program name first) against the process
/// stdout and stderr.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (out, workers) = match &cli.command {
        Command::GenCacti { out, workers, .. } => (out.clone(), *workers),
        Command::Index { common, .. }
        | Command::OrientMax { common, .. }
        | Command::ConstructExtremal { common, .. }
        | Command::Verify { common, .. } => (common.out.clone(), common.workers),
    };
    match with_workers(workers, |par| dispatch(cli.command, par)) {
        Ok((doc, passed)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &doc).map_err(|e| Usage::flag("--out", format!("{}: {e}", path.display()))),
                None => stdout.write_all(doc.as_bytes()).map_err(|e| Usage(e.to_string())),
            };
            match written {
                Ok(()) if passed => 0,
                Ok(()) => 1,
                Err(Usage(msg)) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    2
                }
            }
        }
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

#[cfg(feature = "parallel")]
fn with_workers<R: Send>(workers: usize, f: impl FnOnce(Parallelism) -> Result<R, Usage> + Send) -> Result<R, Usage> {
    let par = Parallelism::from_workers(workers);
    if workers <= 1 {
        return f(par);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Usage::flag("--workers", e))?;
    pool.install(|| f(par))
}

#[cfg(not(feature = "parallel"))]
fn with_workers<R: Send>(_workers: usize, f: impl FnOnce(Parallelism) -> Result<R, Usage> + Send) -> Result<R, Usage> {
    f(Parallelism::Sequential)
}

fn dispatch(command: Command, par: Parallelism) -> Outcome {
    match command {
        Command::Index {
            graph,
            directed,
            common,
        } => index(&graph, directed, &common),
        Command::OrientMax {
            graph,
            search,
            halve_reversal,
            witness_dir,
            common,
        } => orient_max(&graph, search, halve_reversal, witness_dir.as_deref(), &common, par),
        Command::GenCacti {
            n_max,
            r_max,
            export_dir,
            ..
        } => gen_cacti(n_max, r_max, export_dir.as_deref(), par),
        Command::ConstructExtremal {
            n,
            r,
            member_dir,
            common,
        } => construct_extremal(n, r, member_dir.as_deref(), &common),
        Command::Verify {
            claim,
            n_max,
            r_max,
            grid_points,
            no_timing,
            common,
        } => run_verify(claim, n_max, r_max, grid_points, no_timing, &common, par),
    }
}

fn exponents(common: &Common) -> Result<Vec<Exponent>, Usage> {
    common
        .a
        .split(',')
        .map(|s| {
            let v: f64 = s.trim().parse().map_err(|_| Usage::flag("--a", format!("not a number: {s:?}")))?;
            Exponent::new(v, common.mode).map_err(|e| Usage::flag("--a", e))
        })
        .collect()
}

fn read(path: &Path) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage::flag("--graph", format!("{}: {e}", path.display())))
}

fn input_error(path: &Path, e: Error) -> Usage {
    Usage::flag("--graph", format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, Usage> {
    let g = parse_graph(&read(path)?).map_err(|e| input_error(path, e))?;
    if !validate(&g).passed() {
        return Err(input_error(path, Error::Disconnected));
    }
    Ok(g)
}

fn json(value: &impl serde::Serialize) -> Result<String, Usage> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn no_csv(cmd: &str) -> Result<String, Usage> {
    Err(Usage::flag("--format", format!("csv output is only available for verify, not {cmd}")))
}

fn index(path: &Path, directed: bool, common: &Common) -> Outcome {
    let a_list = exponents(common)?;
    let values: Vec<(String, String)> = if directed {
        let d = parse_digraph(&read(path)?).map_err(|e| input_error(path, e))?;
        a_list.iter().map(|a| (a.to_string(), index_digraph(&d, a).to_string())).collect()
    } else {
        let g = parse_graph(&read(path)?).map_err(|e| input_error(path, e))?;
        a_list.iter().map(|a| (a.to_string(), index_graph(&g, a).to_string())).collect()
    };
    let doc = match common.format {
        Format::Text if values.len() == 1 => format!("R = {}\n", values[0].1),
        Format::Text => values.iter().map(|(a, v)| format!("a = {a}: R = {v}\n")).collect(),
        Format::Json => json(
            &values
                .iter()
                .map(|(a, v)| serde_json::json!({ "a": a, "value": v }))
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => no_csv("index")?,
    };
    Ok((doc, true))
}

fn orient_max(
    path: &Path,
    search: Search,
    halve: bool,
    witness_dir: Option<&Path>,
    common: &Common,
    par: Parallelism,
) -> Outcome {
    let g = load_graph(path)?;
    let opts = SearchOptions {
        halve_by_reversal: halve,
        parallelism: par,
    };
    let mut results = Vec::new();
    for a in exponents(common)? {
        let res = match search {
            Search::Exhaustive => max_orientation_exhaustive_with(&g, &a, &opts),
            Search::Bnb => max_orientation_bnb_with(&g, &a, &opts),
        }
        .map_err(|e| input_error(path, e))?;
        results.push((a, res));
    }
    if let Some(dir) = witness_dir {
        let io = |e: std::io::Error| Usage::flag("--witness-dir", format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        for (a, res) in &results {
            for (i, w) in res.witnesses.iter().enumerate() {
                std::fs::write(dir.join(format!("witness_a{a}_{i}.txt")), w.digraph.to_edge_list()).map_err(io)?;
            }
        }
    }
    let doc = match common.format {
        Format::Text => {
            let mut s = String::new();
            for (a, res) in &results {
                if results.len() > 1 {
                    let _ = writeln!(s, "a = {a}");
                }
                let _ = writeln!(s, "max = {}, witnesses = {}", res.max_value, res.witnesses.len());
                for w in &res.witnesses {
                    let _ = writeln!(s, "  {} ({} labelled)", w.digraph, w.labeled_count);
                }
                let _ = writeln!(s, "searched = {}, pruned = {}", res.searched, res.pruned);
            }
            s
        }
        Format::Json => json(
            &results
                .iter()
                .map(|(a, res)| serde_json::json!({ "a": a, "result": res }))
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => no_csv("orient-max")?,
    };
    Ok((doc, true))
}

fn gen_cacti(n_max: usize, r_max: usize, export_dir: Option<&Path>, par: Parallelism) -> Outcome {
    let mut gen = CactusGenerator::new(par);
    let mut s = String::from("n r count\n");
    for n in 1..=n_max {
        for r in 0..=r_max.min(n.saturating_sub(1) / 2) {
            let graphs = gen.cacti(n, r).map_err(|e| Usage::flag("--n-max", e))?;
            let _ = writeln!(s, "{n} {r} {}", graphs.len());
            if let Some(dir) = export_dir {
                export_catalog(dir, n, r, graphs).map_err(|e| Usage::flag("--export-dir", e))?;
            }
        }
    }
    Ok((s, true))
}

fn construct_extremal(n: usize, r: usize, member_dir: Option<&Path>, common: &Common) -> Outcome {
    let mut families = Vec::new();
    for a in exponents(common)? {
        families.push(extremal_set(n, r, &a).map_err(|e| Usage::flag("--n/--r", e))?);
    }
    if let Some(dir) = member_dir {
        let io = |e: std::io::Error| Usage::flag("--member-dir", format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        for f in &families {
            for (i, d) in f.digraphs.iter().enumerate() {
                std::fs::write(dir.join(format!("extremal_n{n}_r{r}_a{}_{i}.txt", f.a)), d.to_edge_list())
                    .map_err(io)?;
            }
        }
    }
    let doc = match common.format {
        Format::Text => {
            let mut s = String::new();
            for f in &families {
                let classes = f.labels().map_err(|e| Usage(e.to_string()))?.len();
                let _ = writeln!(
                    s,
                    "n = {n}, r = {r}, a = {}: {} members, {classes} up to isomorphism",
                    f.a,
                    f.digraphs.len()
                );
                for d in &f.digraphs {
                    let label = canonical_label(d).map_err(|e| Usage(e.to_string()))?;
                    let _ = writeln!(s, "  {d}  value {}  label {label}", index_digraph(d, &f.a));
                }
            }
            s
        }
        Format::Json => json(&families)?,
        Format::Csv => no_csv("construct-extremal")?,
    };
    Ok((doc, true))
}

const CLAIMS: [Claim; 8] = [
    Claim::Bound,
    Claim::SinkSource,
    Claim::TransformA,
    Claim::TransformB,
    Claim::Pendant,
    Claim::Catalogs,
    Claim::Theorem,
    Claim::Appendix,
];

/// Default grid per claim: the largest order each check accepts.
fn default_n_max(claim: Claim) -> usize {
    match claim {
        Claim::Bound | Claim::Pendant => 6,
        Claim::SinkSource => 7,
        Claim::TransformA | Claim::TransformB | Claim::Theorem => 8,
        Claim::Catalogs | Claim::Appendix | Claim::All => 0,
    }
}

fn run_verify(
    claim: Claim,
    n_max: Option<usize>,
    r_max: Option<usize>,
    grid_points: usize,
    no_timing: bool,
    common: &Common,
    par: Parallelism,
) -> Outcome {
    let a_list = exponents(common)?;
    let claims: Vec<Claim> = if claim == Claim::All { CLAIMS.to_vec() } else { vec![claim] };
    let mut reports = Vec::new();
    for c in claims {
        let n = n_max.unwrap_or(default_n_max(c));
        let r = r_max.unwrap_or(3);
        let report = match c {
            Claim::Bound => verify::verify_orientation_bound(n, &a_list, par),
            Claim::SinkSource => verify::verify_sink_source_count(n, par),
            Claim::TransformA => verify::verify_transformation_a(n, &a_list, par),
            Claim::TransformB => verify::verify_transformation_b(n, &a_list, par),
            Claim::Pendant => verify::verify_pendant_deletion(n, &a_list, par),
            Claim::Catalogs => verify::verify_base_catalogs(&a_list, par),
            Claim::Theorem => verify::verify_theorem(n, r, &a_list, par),
            Claim::Appendix => verify::verify_appendix_positivity(grid_points),
            Claim::All => unreachable!("expanded above"),
        }
        .map_err(|e| match e {
            Error::GridTooCoarse { .. } => Usage::flag("--grid-points", e),
            Error::CapExceeded { what: "r_max", .. } => Usage::flag("--r-max", e),
            _ => Usage::flag("--n-max", e),
        })?;
        reports.push(report);
    }
    if no_timing {
        for r in &mut reports {
            r.wall_ms = 0;
        }
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let doc = if reports.len() == 1 {
        randic_core::report::emit_report(&reports[0], common.format)
    } else {
        emit_reports(&reports, common.format)
    }
    .map_err(|e| Usage::flag("--format", e))?;
    Ok((doc, passed))
}
