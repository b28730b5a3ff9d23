//! `lo-chroma` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage error, 2 generation
//! failure, 3 solver stall, 4 validity failure (including `verify` finding a
//! bad edge and `oracle` finding no coloring).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lo_chroma::combround::iteration_bound;
use lo_chroma::instances::{gen_balanced_tripartite, gen_planted};
use lo_chroma::io::{
    format_cert, format_coloring, format_h3, read_coloring, read_h3, write_text,
};
use lo_chroma::oracle::{brute_lo, brute_max_even_is, brute_max_odd_is};
use lo_chroma::pipeline::{lo_color, PipelineConfig, Report, Strategy};
use lo_chroma::sdp::{solve_feasibility, SdpConfig};
use lo_chroma::{Error, Hypergraph};

const SCHEMA: &str = "# schema=1";

#[derive(Parser)]
#[command(name = "lo-chroma", version, about = "LO coloring of 2-LO colorable 3-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance (.h3 plus a .planted or .cert sidecar).
    Gen(GenArgs),
    /// Solve the vector relaxation and write a .cert file.
    Solve(SolveArgs),
    /// Color an instance and print a report row.
    Color(ColorArgs),
    /// Check a coloring against an instance.
    Verify(VerifyArgs),
    /// Exhaustive search on small instances.
    Oracle(OracleArgs),
    /// Color planted instances over a size sweep and emit CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Planted,
    Balanced,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, env = "LO_CHROMA_SEED", default_value_t = 0)]
    seed: u64,
    /// Output .h3 path; the instance goes to stdout without sidecars if absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SolverFlags {
    #[arg(long, default_value_t = 1e-8)]
    sdp_tol: f64,
    /// Factorization rank (default `min(n+1, ⌈√(2m)⌉+2)`).
    #[arg(long)]
    sdp_rank: Option<usize>,
    #[arg(long, env = "LO_CHROMA_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct PipelineFlags {
    #[arg(long, default_value = "logn")]
    strategy: Strategy,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, default_value_t = 1e-9)]
    eps_prime: f64,
    /// Draws per odd round (default `16·⌈ln n⌉`).
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, default_value_t = 0.6)]
    delta_exponent: f64,
    #[arg(long, default_value_t = lo_chroma::pipeline::DEFAULT_RETRY_BUDGET)]
    retry_budget: usize,
    #[arg(long)]
    delta_override: Option<f64>,
    #[arg(long)]
    alpha_override: Option<f64>,
    #[command(flatten)]
    solver: SolverFlags,
}

impl PipelineFlags {
    fn config(&self, seed: u64) -> PipelineConfig {
        PipelineConfig {
            strategy: self.strategy,
            eps: self.eps,
            eps_prime: self.eps_prime,
            delta_exponent: self.delta_exponent,
            sdp: SdpConfig {
                rank: self.solver.sdp_rank,
                tol: self.solver.sdp_tol,
                ..SdpConfig::default()
            },
            reps: self.reps,
            retry_budget: self.retry_budget,
            delta_override: self.delta_override,
            alpha_override: self.alpha_override,
            seed,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    /// Output path (default: input with extension `.cert`).
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct ColorArgs {
    input: PathBuf,
    /// Output path (default: input with extension `.col`).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Append per-stage timings (milliseconds) to the report row.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    pipeline: PipelineFlags,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    coloring: PathBuf,
    /// Accept uncolored vertices and check only colored parts of edges.
    #[arg(long)]
    partial: bool,
}

#[derive(Args)]
struct OracleArgs {
    input: PathBuf,
    /// Number of colors to search with.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Also print maximum odd and even independent sets.
    #[arg(long)]
    sets: bool,
    /// Write the coloring found here.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    sizes: Vec<usize>,
    /// Seeds per size.
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    /// Edge count as a multiple of n.
    #[arg(long, default_value_t = 1.3)]
    m_ratio: f64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    timings: bool,
    /// Run rows on the rayon pool (output order is unchanged).
    #[arg(long)]
    parallel: bool,
    #[command(flatten)]
    pipeline: PipelineFlags,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            msg: e.to_string(),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Generation { .. } => 2,
        Error::Stalled { .. } => 3,
        Error::NotTwoLoColorable { .. }
        | Error::Unassigned { .. }
        | Error::InconsistentGammas { .. }
        | Error::NotIndependent { .. }
        | Error::RetryBudget { .. }
        | Error::Validity { .. }
        | Error::Stagnation { .. } => 4,
        _ => 1,
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

/// Prefixes the failing path to an error while keeping its exit code.
fn at(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure {
        code: exit_code(&e),
        msg: format!("{}: {e}", path.display()),
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let res = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Color(a) => cmd_color(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let (h, side, ext) = match a.kind {
        Kind::Planted => {
            let inst = gen_planted(a.n, a.m, a.seed)?;
            let text = format_coloring(&inst.planted);
            (inst.graph, text, "planted")
        }
        Kind::Balanced => {
            let (inst, cert) = gen_balanced_tripartite(a.n, a.m, a.seed)?;
            (inst.graph, format_cert(&cert.solution), "cert")
        }
    };
    let mut text = format!("c {} n={} m={} seed={}\n", kind_name(a.kind), a.n, a.m, a.seed);
    text.push_str(&format_h3(&h));
    match a.out {
        Some(out) => {
            write_text(&out, &text)?;
            write_text(sidecar(&out, ext), &side)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Planted => "planted",
        Kind::Balanced => "balanced",
    }
}

fn cmd_solve(a: SolveArgs) -> CmdResult {
    let h = read_h3(&a.input).map_err(at(&a.input))?;
    let cfg = SdpConfig {
        rank: a.solver.sdp_rank,
        tol: a.solver.sdp_tol,
        seed: a.solver.seed,
        ..SdpConfig::default()
    };
    let sol = solve_feasibility(&h, &cfg)?;
    let out = a.out.unwrap_or_else(|| sidecar(&a.input, "cert"));
    write_text(&out, &format_cert(&sol))?;
    println!(
        "iterations={} norm_residual={:.3e} edge_residual={:.3e} d={}",
        sol.iterations, sol.norm_residual, sol.edge_residual, sol.d
    );
    Ok(())
}

const HEADER: &str = "n,m,seed,strategy,status,colors,merged,balanced,unbalanced_colors,\
balanced_colors,balanced_rounds,degenerate_rounds,sdp_iters,norm_residual,edge_residual";
const TIMING_HEADER: &str = ",linearize_ms,solve_ms,unbalanced_ms,balanced_ms,finish_ms,total_ms";

fn header(timings: bool) -> String {
    let mut s = format!("{SCHEMA}\n{HEADER}");
    if timings {
        s.push_str(TIMING_HEADER);
    }
    s
}

fn report_row(r: &Report, timings: bool) -> String {
    let mut s = format!(
        "{},{},{},{},ok,{},{},{},{},{},{},{},{},{:.3e},{:.3e}",
        r.n,
        r.m,
        r.seed,
        r.strategy,
        r.colors,
        r.merged,
        r.balanced,
        r.unbalanced_colors,
        r.balanced_colors,
        r.balanced_rounds,
        r.degenerate_rounds,
        r.sdp_iters,
        r.norm_residual,
        r.edge_residual
    );
    if timings {
        let t = &r.timings;
        for d in [t.linearize, t.solve, t.unbalanced, t.balanced, t.finish, t.total()] {
            let _ = write!(s, ",{:.3}", d.as_secs_f64() * 1e3);
        }
    }
    s
}

fn error_row(n: usize, m: usize, seed: u64, strategy: Strategy, e: &Error, timings: bool) -> String {
    let status = match e {
        Error::Generation { .. } => "generation",
        Error::Stalled { .. } => "stalled",
        _ if exit_code(e) == 4 => "invalid",
        _ => "error",
    };
    let blanks = if timings { 16 } else { 10 };
    format!("{n},{m},{seed},{strategy},{status}{}", ",".repeat(blanks))
}

fn cmd_color(a: ColorArgs) -> CmdResult {
    let h = read_h3(&a.input).map_err(at(&a.input))?;
    let cfg = a.pipeline.config(a.pipeline.solver.seed);
    let (coloring, report) = lo_color(&h, &cfg)?;
    let out = a.out.unwrap_or_else(|| sidecar(&a.input, "col"));
    write_text(&out, &format_coloring(&coloring))?;
    println!("{}", header(a.timings));
    println!("{}", report_row(&report, a.timings));
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let h = read_h3(&a.input).map_err(at(&a.input))?;
    let c = read_coloring(&a.coloring, h.n()).map_err(at(&a.coloring))?;
    let bad = if a.partial {
        h.first_partial_lo_violation(&c)
    } else {
        h.first_lo_violation(&c)?
    };
    match bad {
        None => {
            let k = c.num_colors();
            let noun = if k == 1 { "color" } else { "colors" };
            println!("valid: {k} {noun} on {} vertices", c.domain().count());
            Ok(())
        }
        Some(e) => {
            let [x, y, z] = h.edge(e);
            let r = |v: usize| c.rank(v).map_or("-".to_string(), |r| r.to_string());
            println!(
                "invalid: edge {} ({} {} {}) has ranks {} {} {}",
                e + 1,
                x + 1,
                y + 1,
                z + 1,
                r(x),
                r(y),
                r(z)
            );
            Err(fail(4, format!("edge {} has no unique maximum", e + 1)))
        }
    }
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    let h = read_h3(&a.input).map_err(at(&a.input))?;
    if a.sets {
        let show = |s: Vec<usize>| s.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
        println!("max odd set: {}", show(brute_max_odd_is(&h)?));
        println!("max even set: {}", show(brute_max_even_is(&h)?));
    }
    match brute_lo(&h, a.k)? {
        Some(c) => {
            println!("{}-LO colorable", a.k);
            if let Some(out) = a.out {
                write_text(out, &format_coloring(&c))?;
            }
            Ok(())
        }
        None => {
            println!("not {}-LO colorable", a.k);
            Err(fail(4, format!("no LO coloring with {} colors", a.k)))
        }
    }
}

struct Row {
    n: usize,
    colors: Option<usize>,
    line: String,
}

fn bench_row(n: usize, m: usize, seed: u64, a: &BenchArgs) -> Row {
    let strategy = a.pipeline.strategy;
    let run = || -> Result<(Hypergraph, Report), Error> {
        let inst = gen_planted(n, m, seed)?;
        let (_, report) = lo_color(&inst.graph, &a.pipeline.config(seed))?;
        Ok((inst.graph, report))
    };
    match run() {
        Ok((_, r)) => Row {
            n,
            colors: Some(r.colors),
            line: report_row(&r, a.timings),
        },
        Err(e) => Row {
            n,
            colors: None,
            line: error_row(n, m, seed, strategy, &e, a.timings),
        },
    }
}

/// Least-squares slope of `ln colors` against `ln n`.
fn loglog_slope(points: &[(usize, usize)]) -> Option<f64> {
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| (p.1 as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if xs.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    a.pipeline.config(0).validate()?;
    if !(a.m_ratio > 0.0) {
        return Err(fail(1, "--m-ratio must be positive"));
    }
    let jobs: Vec<(usize, usize, u64)> = a
        .sizes
        .iter()
        .flat_map(|&n| {
            let m = (a.m_ratio * n as f64).round() as usize;
            (0..a.seeds).map(move |i| (n, m, i))
        })
        .map(|(n, m, i)| (n, m, a.pipeline.solver.seed + i))
        .collect();
    let clock = Instant::now();
    let rows: Vec<Row> = if a.parallel {
        jobs.par_iter().map(|&(n, m, s)| bench_row(n, m, s, &a)).collect()
    } else {
        jobs.iter().map(|&(n, m, s)| bench_row(n, m, s, &a)).collect()
    };

    let mut out = header(a.timings);
    out.push('\n');
    for r in &rows {
        out.push_str(&r.line);
        out.push('\n');
    }
    if !rows.is_empty() {
        let ok: Vec<(usize, usize)> = rows.iter().filter_map(|r| r.colors.map(|c| (r.n, c))).collect();
        let slope = loglog_slope(&ok).map_or("nan".to_string(), |s| format!("{s:.4}"));
        let _ = write!(
            out,
            "# summary rows={} failed={} max_colors={} slope={slope}",
            rows.len(),
            rows.len() - ok.len(),
            ok.iter().map(|p| p.1).max().unwrap_or(0)
        );
        if a.pipeline.strategy == Strategy::LogN {
            let _ = write!(out, " logn_bound={}", 2 * iteration_bound(a.pipeline.eps) + 2);
        }
        out.push('\n');
    }
    match &a.csv {
        Some(path) => write_text(path, &out)?,
        None => print!("{out}"),
    }
    if a.timings {
        eprintln!("bench finished in {:.1} s", clock.elapsed().as_secs_f64());
    }
    Ok(())
}
