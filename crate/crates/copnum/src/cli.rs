//! Command-line front end: solve, simulate, verify, and graph export.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{theorem_suite, SuiteConfig};
use crate::board::{BoardGraph, DirectionSet, Piece};
use crate::solver::{component_view, solve_view, SolveOptions, SolveResultJson, SolverError};
use crate::strategies::{make_cop_strategy, make_robber_strategy, simulate, Placements, SimError, Transcript};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Parser)]
#[command(name = "copnum", version, about = "Cops and robbers on chess, royal, and animal graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cap the worker-thread count; 1 forces sequential reference behavior.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print progress notes to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Args)]
struct BoardArgs {
    /// Piece preset: queen, rook, bishop, king, or knight.
    #[arg(long, conflicts_with_all = ["mode", "dirs"])]
    piece: Option<String>,
    /// Adjacency mode: royal (whole lines) or animal (single steps).
    #[arg(long, requires = "dirs")]
    mode: Option<String>,
    /// Direction set as semicolon-separated pairs, e.g. "1,0;0,1".
    #[arg(long, requires = "mode")]
    dirs: Option<String>,
    /// Board side length.
    #[arg(long)]
    n: u16,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SolveTuning {
    /// Disable the dihedral symmetry reduction.
    #[arg(long)]
    no_symmetry: bool,
    /// State budget; also settable via COPNUM_STATE_BUDGET (flag wins).
    #[arg(long)]
    state_budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Exact k-cop solve, reported per connected component.
    Solve {
        #[command(flatten)]
        board: BoardArgs,
        /// Cop count.
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        tuning: SolveTuning,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Play one cop strategy against one robber strategy.
    Simulate {
        #[command(flatten)]
        board: BoardArgs,
        /// Cop strategy as name:k, e.g. greedy:3.
        #[arg(long)]
        cops: String,
        /// Robber strategy name, e.g. greedy, oracle, octagon.
        #[arg(long)]
        robber: String,
        /// Turn cap.
        #[arg(long, default_value_t = 500)]
        cap: u32,
        #[command(flatten)]
        tuning: SolveTuning,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the reproduction report, optionally filtered to row groups.
    Verify {
        /// Comma-separated row-group filter, e.g. knights,octagon.
        #[arg(long, value_delimiter = ',')]
        rows: Vec<String>,
        /// Turn cap for the simulation-backed rows.
        #[arg(long, default_value_t = 500)]
        cap: u32,
        #[command(flatten)]
        tuning: SolveTuning,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Construct a board graph and export it.
    Graph {
        #[command(flatten)]
        board: BoardArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return code;
        }
    };
    run(cli)
}

fn run(cli: Cli) -> i32 {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return EXIT_INVALID;
        }
        // ignore the error if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match cli.command {
        Command::Solve { board, k, tuning, output } => cmd_solve(board, k, tuning, output, cli.verbose),
        Command::Simulate { board, cops, robber, cap, tuning, output } => {
            cmd_simulate(board, &cops, &robber, cap, tuning, output)
        }
        Command::Verify { rows, cap, tuning, output } => cmd_verify(rows, cap, tuning, output),
        Command::Graph { board, output } => cmd_graph(board, output),
    }
}

fn build_board(args: &BoardArgs) -> Result<BoardGraph, String> {
    if let Some(piece) = &args.piece {
        let piece: Piece = piece.parse().map_err(|e| format!("{e}"))?;
        return BoardGraph::preset(piece, args.n).map_err(|e| format!("{e}"));
    }
    let (Some(mode), Some(dirs)) = (&args.mode, &args.dirs) else {
        return Err("either --piece or both --mode and --dirs are required".into());
    };
    let pairs = parse_dirs(dirs)?;
    match mode.to_ascii_lowercase().as_str() {
        "royal" => {
            let set = DirectionSet::from_pairs(&pairs).map_err(|e| format!("{e}"))?;
            BoardGraph::build_royal(args.n, set).map_err(|e| format!("{e}"))
        }
        "animal" => BoardGraph::build_animal(args.n, &pairs).map_err(|e| format!("{e}")),
        other => Err(format!("unknown mode '{other}', expected royal or animal")),
    }
}

fn parse_dirs(s: &str) -> Result<Vec<(i32, i32)>, String> {
    s.split(';')
        .map(|pair| {
            let (dx, dy) = pair
                .split_once(',')
                .ok_or_else(|| format!("bad direction '{pair}', expected dx,dy"))?;
            Ok((
                dx.trim().parse().map_err(|_| format!("bad integer '{dx}'"))?,
                dy.trim().parse().map_err(|_| format!("bad integer '{dy}'"))?,
            ))
        })
        .collect()
}

fn resolve_opts(tuning: &SolveTuning) -> SolveOptions {
    let mut opts = SolveOptions {
        use_symmetry: !tuning.no_symmetry,
        ..SolveOptions::default()
    };
    if let Ok(env) = std::env::var("COPNUM_STATE_BUDGET") {
        if let Ok(budget) = env.parse() {
            opts.state_budget = budget;
        }
    }
    if let Some(budget) = tuning.state_budget {
        opts.state_budget = budget;
    }
    opts
}

fn write_output(out: &Option<PathBuf>, content: &str) -> i32 {
    let content = if content.ends_with('\n') {
        content.to_string()
    } else {
        format!("{content}\n")
    };
    match out {
        None => {
            print!("{content}");
            EXIT_OK
        }
        Some(path) => match std::fs::write(path, content) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_INVALID
            }
        },
    }
}

fn invalid(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_INVALID
}

fn solver_exit(e: &SolverError) -> i32 {
    let code = match e {
        SolverError::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INVALID,
    };
    eprintln!("error: {e}");
    code
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ComponentSolveJson {
    anchor: [u16; 2],
    size: usize,
    #[serde(flatten)]
    result: SolveResultJson,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SolveArtifact {
    graph: String,
    k: usize,
    use_symmetry: bool,
    /// True iff every component is a k-cop win.
    cops_win: bool,
    components: Vec<ComponentSolveJson>,
}

fn cmd_solve(board: BoardArgs, k: usize, tuning: SolveTuning, output: OutputArgs, verbose: u8) -> i32 {
    let g = match build_board(&board) {
        Ok(g) => g,
        Err(e) => return invalid(e),
    };
    let opts = resolve_opts(&tuning);
    let mut components = Vec::new();
    for comp in g.components() {
        let start = std::time::Instant::now();
        let res = match solve_view(component_view(&g, &comp), k, &opts) {
            Ok(r) => r,
            Err(e) => return solver_exit(&e),
        };
        if verbose > 0 {
            eprintln!(
                "component of {} vertices solved in {:?} ({} states)",
                comp.len(),
                start.elapsed(),
                res.state_count
            );
        }
        let anchor = g.coord(comp[0]);
        components.push(ComponentSolveJson {
            anchor: [anchor.x, anchor.y],
            size: comp.len(),
            result: SolveResultJson {
                k: res.k,
                cops_win: res.cops_win,
                optimal_start: res.optimal_start.as_ref().map(|s| {
                    s.iter()
                        .map(|&local| {
                            let c = g.coord(comp[local as usize]);
                            [c.x, c.y]
                        })
                        .collect()
                }),
                capture_time: res.capture_time,
                state_count: res.state_count,
            },
        });
    }
    let artifact = SolveArtifact {
        graph: g.descriptor(),
        k,
        use_symmetry: opts.use_symmetry,
        cops_win: components.iter().all(|c| c.result.cops_win),
        components,
    };
    match output.format {
        Format::Json => write_output(&output.out, &serde_json::to_string_pretty(&artifact).expect("solve artifact")),
        Format::Table => {
            let mut s = format!("{}  k={}\n", artifact.graph, artifact.k);
            for c in &artifact.components {
                s.push_str(&format!(
                    "component at ({},{}) size {}: cops win {} capture time {:?} states {}\n",
                    c.anchor[0], c.anchor[1], c.size, c.result.cops_win, c.result.capture_time, c.result.state_count
                ));
            }
            write_output(&output.out, &s)
        }
        _ => invalid("solve supports --format json or table"),
    }
}

fn sim_exit(e: &SimError) -> i32 {
    match e {
        SimError::Solver(err) => solver_exit(err),
        other => invalid(other),
    }
}

fn cmd_simulate(
    board: BoardArgs,
    cops: &str,
    robber: &str,
    cap: u32,
    tuning: SolveTuning,
    output: OutputArgs,
) -> i32 {
    let g = match build_board(&board) {
        Ok(g) => g,
        Err(e) => return invalid(e),
    };
    let opts = resolve_opts(&tuning);
    let (cop_name, cop_k) = match cops.split_once(':') {
        Some((name, k)) => match k.parse::<usize>() {
            Ok(k) => (name, Some(k)),
            Err(_) => return invalid(format!("bad cop count in '{cops}', expected name:k")),
        },
        None => (cops, None),
    };
    let mut cop_strategy = match make_cop_strategy(cop_name, cop_k, &g, &opts) {
        Ok(s) => s,
        Err(e) => return sim_exit(&e),
    };
    let k = cop_strategy.arity();
    let mut robber_strategy = match make_robber_strategy(robber, k, &g, &opts) {
        Ok(s) => s,
        Err(e) => return sim_exit(&e),
    };
    let transcript = match simulate(
        &g,
        cop_strategy.as_mut(),
        robber_strategy.as_mut(),
        &Placements::default(),
        cap,
    ) {
        Ok(t) => t,
        Err(e) => return sim_exit(&e),
    };
    match output.format {
        Format::Json => write_output(
            &output.out,
            &serde_json::to_string_pretty(&transcript.to_json(&g)).expect("transcript"),
        ),
        Format::Csv => write_output(
            &output.out,
            &format!("{}\n{}\n", Transcript::CSV_HEADER, transcript.csv_row()),
        ),
        _ => invalid("simulate supports --format json or csv"),
    }
}

fn cmd_verify(rows: Vec<String>, cap: u32, tuning: SolveTuning, output: OutputArgs) -> i32 {
    let opts = resolve_opts(&tuning);
    let config = SuiteConfig {
        rows: if rows.is_empty() { None } else { Some(rows) },
        state_budget: opts.state_budget,
        turn_cap: cap,
        use_symmetry: opts.use_symmetry,
    };
    let report = match theorem_suite(&config) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    let code = match output.format {
        Format::Json => write_output(
            &output.out,
            &serde_json::to_string_pretty(&report.to_json()).expect("report"),
        ),
        Format::Table => write_output(&output.out, &report.to_table()),
        _ => invalid("verify supports --format json or table"),
    };
    if code != EXIT_OK {
        return code;
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn cmd_graph(board: BoardArgs, output: OutputArgs) -> i32 {
    let g = match build_board(&board) {
        Ok(g) => g,
        Err(e) => return invalid(e),
    };
    match output.format {
        Format::Json => write_output(
            &output.out,
            &serde_json::to_string_pretty(&g.to_json()).expect("graph json"),
        ),
        Format::Dot => write_output(&output.out, &g.to_dot()),
        _ => invalid("graph supports --format json or dot"),
    }
}
