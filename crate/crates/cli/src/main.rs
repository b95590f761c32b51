//! `boxchrom`: generate box arrangements, color their contact graphs, and
//! certify chromatic numbers.

mod error;
mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use boxchrom::bounds::{color_by_level, color_by_own_dim, color_by_surface, color_by_volume, RunConfig};
use boxchrom::certify::{certify_z, check_claim1, check_claim2, Certificate, CertifyOptions};
use boxchrom::constructions::{
    build_figure1, build_gadget_x, build_gadget_y, build_z_abstract, build_z_geometric, floors,
    gen_random_guillotine, Gadget, GADGET_X_REGIONS, GADGET_Y_REGIONS,
};
use boxchrom::geometry::{Coord, Interval};
use boxchrom::solver::{
    chromatic_number, decode_model, export_cnf_seeded, k_colorable_par, run_external_sat, verify_coloring, Coloring,
    ColoringCheck, SatOutcome, Verdict,
};
use boxchrom::SearchLimits;
use clap::{Args, Parser, Subcommand, ValueEnum};

use error::{CliError, CliResult, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use io::{emit, read_input, read_text, say, write_file, Input};

#[derive(Parser)]
#[command(name = "boxchrom", version, about = "Box arrangements, contact graphs, and coloring certificates")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads for component-parallel coloring.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Use one worker thread.
    #[arg(long, global = true)]
    single_worker: bool,
    /// Wall-clock budget in seconds for each exhaustive search.
    #[arg(long, global = true)]
    timeout: Option<f64>,
}

impl Global {
    fn jobs(&self) -> usize {
        if self.single_worker {
            1
        } else {
            self.jobs
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        }
    }

    fn limits(&self) -> CliResult<SearchLimits> {
        match self.timeout {
            None => Ok(SearchLimits::UNLIMITED),
            Some(t) if t.is_finite() && t > 0.0 => Ok(SearchLimits::with_time_limit(Duration::from_secs_f64(t))),
            Some(t) => Err(CliError::Usage(format!("timeout must be positive, got {t}"))),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in or random arrangement as JSON.
    Gen(GenArgs),
    /// Export the conflict graph.
    Graph {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the exact chromatic number.
    Chromatic {
        #[arg(short, long)]
        input: PathBuf,
        /// Write an optimal coloring here.
        #[arg(short = 'c', long)]
        coloring: Option<PathBuf>,
    },
    /// Decide k-colorability (exit 0 if colorable, 1 if not).
    Kcolor {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Write the clique-seeded DIMACS encoding here.
        #[arg(long)]
        cnf: Option<PathBuf>,
        /// External solver run on the CNF, with the file path appended.
        #[arg(long)]
        sat_cmd: Option<String>,
        /// Write the coloring here when one exists.
        #[arg(short = 'c', long)]
        coloring: Option<PathBuf>,
    },
    /// Color with one of the bounded-measure strategies.
    Color(ColorArgs),
    /// Check that a coloring file is proper (exit 0) or not (exit 1).
    VerifyColoring {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short = 'c', long)]
        coloring: PathBuf,
    },
    /// Replay the signature lemma on a gadget (default: gadget X).
    CheckClaim1(ClaimArgs),
    /// Replay the capped-coloring lemma on a gadget (default: gadget Y).
    CheckClaim2(ClaimArgs),
    /// Certify that the two-floor arrangement has chromatic number 8.
    CertifyZ {
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the 7-colorability CNF of the abstract graph.
        #[arg(long)]
        cnf: Option<PathBuf>,
        /// Re-check an existing certificate against `--input` instead.
        #[arg(long, requires = "input")]
        replay: Option<PathBuf>,
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
    /// Summary statistics as JSON.
    Stats {
        #[arg(short, long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    X,
    Y,
    ZAbstract,
    ZGeometric,
    Figure1,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Seed for `random` (required there).
    #[arg(long)]
    seed: Option<u64>,
    /// Number of boxes for `random`.
    #[arg(long, default_value_t = 40)]
    count: usize,
    /// Bounding box side lengths `X,Y,Z` for `random`.
    #[arg(long, value_delimiter = ',', default_values_t = [16, 16, 16])]
    bbox: Vec<Coord>,
    #[arg(long, default_value_t = 1)]
    min_side: Coord,
    /// For `z-abstract`: also write the copy/demand structure here.
    #[arg(long)]
    structure: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Level,
    OwnDim,
    Surface,
    Volume,
}

#[derive(Args)]
struct ColorArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    strategy: Strategy,
    /// Side bound for `level` and `own-dim`.
    #[arg(long)]
    ell: Option<Coord>,
    /// Surface bound for `surface`.
    #[arg(long)]
    s: Option<Coord>,
    /// Volume bound for `volume`.
    #[arg(long)]
    v: Option<Coord>,
    /// Axis for `level` (default: the floor axis, else 2).
    #[arg(long)]
    axis: Option<usize>,
    /// Write the coloring here.
    #[arg(short = 'c', long)]
    coloring: Option<PathBuf>,
}

#[derive(Args)]
struct ClaimArgs {
    /// Arrangement with three named regions (default: the built-in gadget).
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Region names, comma separated.
    #[arg(long, value_delimiter = ',')]
    regions: Option<Vec<String>>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("value serializes")
}

fn gadget(args: &ClaimArgs, default: fn() -> Gadget, default_names: [&str; 3]) -> CliResult<Gadget> {
    let Some(path) = &args.input else {
        return Ok(default());
    };
    let input = read_input(path)?;
    let arr = input.arrangement()?;
    let names: Vec<&str> = match &args.regions {
        Some(r) => r.iter().map(String::as_str).collect(),
        None => default_names.to_vec(),
    };
    let [a, b, c] = names[..] else {
        return Err(CliError::Usage("--regions takes exactly three names".into()));
    };
    Ok(Gadget::from_arrangement(arr, [a, b, c])?)
}

fn run_gen(args: &GenArgs) -> CliResult<u8> {
    let text = match args.kind {
        GenKind::X => build_gadget_x().to_json_pretty(),
        GenKind::Y => build_gadget_y().to_json_pretty(),
        GenKind::Figure1 => build_figure1().to_json_pretty(),
        GenKind::ZGeometric => build_z_geometric()?.to_json_pretty(),
        GenKind::ZAbstract => {
            let (g, zs) = build_z_abstract()?;
            if let Some(path) = &args.structure {
                write_file(path, &zs.to_json())?;
            }
            g.to_edges_json()
        }
        GenKind::Random => {
            let seed = args
                .seed
                .ok_or_else(|| CliError::Usage("`gen random` requires --seed".into()))?;
            let [x, y, z] = args.bbox[..] else {
                return Err(CliError::Usage("--bbox takes exactly three lengths".into()));
            };
            let bounds = [x, y, z].map(|len| Interval::new(0, len));
            gen_random_guillotine(seed, args.count, bounds, args.min_side)?.to_json_pretty()
        }
    };
    emit(args.output.as_ref(), &text)?;
    Ok(EXIT_OK)
}

fn run_kcolor(
    g: &boxchrom::ConflictGraph,
    k: usize,
    cnf: Option<&PathBuf>,
    sat_cmd: Option<&str>,
    coloring: Option<&PathBuf>,
    global: &Global,
) -> CliResult<u8> {
    let limits = global.limits()?;
    let cnf_path = match (cnf, sat_cmd) {
        (Some(p), _) => {
            write_file(p, &export_cnf_seeded(g, k, limits)?)?;
            Some(p.clone())
        }
        (None, Some(_)) => {
            let p = std::env::temp_dir().join(format!("boxchrom-{}.cnf", std::process::id()));
            write_file(&p, &export_cnf_seeded(g, k, limits)?)?;
            Some(p)
        }
        (None, None) => None,
    };
    let found = match (sat_cmd, &cnf_path) {
        (Some(cmd), Some(path)) => {
            let outcome = run_external_sat(path, cmd);
            if cnf.is_none() {
                let _ = std::fs::remove_file(path);
            }
            match outcome? {
                SatOutcome::Sat(model) => {
                    let c = decode_model(g, k, &model)?;
                    if !verify_coloring(g, &c)?.is_proper() {
                        return Err(boxchrom::Error::Internal("external model is not a proper coloring".into()).into());
                    }
                    Some(c)
                }
                SatOutcome::Unsat => None,
            }
        }
        _ => match k_colorable_par(g, k, limits, global.jobs())? {
            Verdict::Sat(c) => Some(c),
            Verdict::Unsat => None,
        },
    };
    match found {
        Some(c) => {
            say("sat");
            if let Some(path) = coloring {
                write_file(path, &c.to_json(&g.content_hash()))?;
            }
            Ok(EXIT_OK)
        }
        None => {
            say("unsat");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn run_color(args: &ColorArgs, global: &Global) -> CliResult<u8> {
    let input = read_input(&args.input)?;
    let arr = input.arrangement()?;
    let cfg = RunConfig {
        limits: global.limits()?,
        jobs: global.jobs(),
    };
    let need = |v: Option<Coord>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("this strategy needs {flag}")));
    let (c, report) = match args.strategy {
        Strategy::Level => {
            let axis = args.axis.or(arr.floor_axis).unwrap_or(2);
            color_by_level(arr, axis, need(args.ell, "--ell")?, cfg)?
        }
        Strategy::OwnDim => color_by_own_dim(arr, need(args.ell, "--ell")?, cfg)?,
        Strategy::Surface => color_by_surface(arr, need(args.s, "--s")?, cfg)?,
        Strategy::Volume => color_by_volume(arr, need(args.v, "--v")?, cfg)?,
    };
    if let Some(path) = &args.coloring {
        write_file(path, &c.to_json(&input.graph()?.content_hash()))?;
    }
    say(to_json(&report));
    Ok(EXIT_OK)
}

fn run_verify(input: &Path, coloring: &Path) -> CliResult<u8> {
    let g = read_input(input)?.graph()?;
    let file = Coloring::from_json(&read_text(coloring)?)?;
    if file.graph_hash != g.content_hash() {
        eprintln!("note: coloring was recorded for a different graph hash");
    }
    match verify_coloring(&g, &file.colors)? {
        ColoringCheck::Proper => {
            say(format!("proper, {} colors", file.colors.distinct_colors()));
            Ok(EXIT_OK)
        }
        ColoringCheck::Conflict(a, b) => {
            say(format!("conflict: {a} -- {b}"));
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn run_certify(
    output: Option<&PathBuf>,
    cnf: Option<&PathBuf>,
    replay: Option<&PathBuf>,
    input: Option<&PathBuf>,
    global: &Global,
) -> CliResult<u8> {
    if let (Some(cert_path), Some(input)) = (replay, input) {
        let cert = Certificate::from_json(&read_text(cert_path)?)?;
        let g = read_input(input)?.graph()?;
        return match cert.replay(&g) {
            Ok(()) => {
                say(format!("replay ok: chi = {}", cert.conclusion.chi));
                Ok(EXIT_OK)
            }
            Err(e) => {
                say(format!("replay failed: {e}"));
                Ok(EXIT_NEGATIVE)
            }
        };
    }
    let cert = certify_z(&CertifyOptions {
        limits: global.limits()?,
        jobs: global.jobs(),
        cnf_path: cnf.cloned(),
    })?;
    match output {
        Some(path) => {
            write_file(path, &cert.to_json())?;
            say(format!("chi = {}", cert.conclusion.chi));
        }
        None => say(cert.to_json()),
    }
    Ok(EXIT_OK)
}

fn run_stats(path: &Path, global: &Global) -> CliResult<u8> {
    let input = read_input(path)?;
    let g = input.graph()?;
    let limits = global.limits()?;
    let mut stats = serde_json::json!({
        "vertices": g.len(),
        "edges": g.edge_count(),
        "components": g.components().len(),
        "max_degree": (0..g.len()).map(|v| g.degree(v)).max().unwrap_or(0),
        "degeneracy": g.degeneracy().value,
        "clique_number": g.clique_number(limits)?,
        "graph_hash": g.content_hash(),
    });
    if let Input::Arrangement(arr) = &input {
        stats["boxes"] = arr.len().into();
        stats["regions"] = arr.regions.keys().cloned().collect::<Vec<_>>().into();
        stats["arrangement_hash"] = arr.content_hash().into();
        if arr.floor_axis.is_some() {
            if let Ok(f) = floors(arr) {
                stats["floors"] = f.into_iter().collect::<Vec<_>>().into();
            }
        }
    }
    say(to_json(&stats));
    Ok(EXIT_OK)
}

fn run(cli: &Cli) -> CliResult<u8> {
    let global = &cli.global;
    match &cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Graph { input, format, output } => {
            let g = read_input(input)?.graph()?;
            let text = match format {
                GraphFormat::Json => g.to_edges_json(),
                GraphFormat::Dot => g.to_dot(),
            };
            emit(output.as_ref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Chromatic { input, coloring } => {
            let g = read_input(input)?.graph()?;
            let (chi, c) = chromatic_number(&g, global.limits()?)?;
            say(chi);
            if let Some(path) = coloring {
                write_file(path, &c.to_json(&g.content_hash()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Kcolor {
            input,
            k,
            cnf,
            sat_cmd,
            coloring,
        } => {
            let g = read_input(input)?.graph()?;
            run_kcolor(&g, *k, cnf.as_ref(), sat_cmd.as_deref(), coloring.as_ref(), global)
        }
        Command::Color(args) => run_color(args, global),
        Command::VerifyColoring { input, coloring } => run_verify(input, coloring),
        Command::CheckClaim1(args) => {
            let report = check_claim1(&gadget(args, Gadget::x, GADGET_X_REGIONS)?)?;
            emit(args.output.as_ref(), &to_json(&report))?;
            eprintln!("claim 1: {}", if report.pass { "pass" } else { "fail" });
            Ok(if report.pass { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::CheckClaim2(args) => {
            let report = check_claim2(&gadget(args, Gadget::y, GADGET_Y_REGIONS)?, global.limits()?)?;
            emit(args.output.as_ref(), &to_json(&report))?;
            eprintln!("claim 2: {}", if report.unsat { "pass" } else { "fail" });
            Ok(if report.unsat { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::CertifyZ {
            output,
            cnf,
            replay,
            input,
        } => run_certify(output.as_ref(), cnf.as_ref(), replay.as_ref(), input.as_ref(), global),
        Command::Stats { input } => run_stats(input, global),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
