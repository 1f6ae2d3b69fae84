use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;

use expoly::encoder::BlockKind;
use expoly::serialize::{to_document, DocumentError, LoadedSystem, OutputLevel, SystemDocument};
use expoly::torus::coordinate_names;
use expoly::verify::{self, BoxRegion, Level, ReturnSetReport};
use expoly::{compile_str, Compiled, EncodeOptions, Error};

const BOX_ENV: &str = "EXPOLY_BOX_DEFAULT";
const BOX_DEFAULT: u64 = 6;

/// Compile exponential-polynomial equations into torus dynamical systems and
/// check return sets against solution sets.
#[derive(Parser)]
#[command(name = "expoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a system file and write one level as JSON.
    Compile {
        input: PathBuf,
        /// ring, integer or torus
        #[arg(long, default_value = "torus")]
        level: OutputLevel,
        #[command(flatten)]
        encode: EncodeArgs,
        /// Write to this path instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compare return sets over a box. Accepts a system file or a JSON document.
    Verify {
        input: PathBuf,
        /// Box bound B; every coordinate ranges over 0..=B.
        #[arg(long = "box")]
        bound: Option<u64>,
        /// `all` or a comma-separated list of direct, ring, integer, torus, torus-rational.
        #[arg(long, default_value = "all")]
        levels: String,
        #[command(flatten)]
        encode: EncodeArgs,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Compare this serialized system against the direct solution set
        /// of INPUT instead of recompiling it.
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// Decide membership of one tuple at one level.
    Member {
        input: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "direct")]
        level: Level,
        #[command(flatten)]
        encode: EncodeArgs,
    },
    /// Evaluate every equation at one tuple.
    Eval {
        input: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Describe the normal forms, blocks and sizes of a compiled system.
    Info {
        input: PathBuf,
        #[command(flatten)]
        encode: EncodeArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct EncodeArgs {
    /// Use one weight vector for all exponential blocks.
    #[arg(long)]
    shared_weights: bool,
    /// Gather each equation's polynomial-linear terms into one 2x2 block.
    #[arg(long)]
    linear_blocks: bool,
}

impl From<EncodeArgs> for EncodeOptions {
    fn from(a: EncodeArgs) -> Self {
        EncodeOptions {
            shared_weights: a.shared_weights,
            linear_blocks: a.linear_blocks,
        }
    }
}

enum Failure {
    Usage(String),
    Parse(String),
    Disagreement,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Document(_) => Failure::Parse(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path, encode: EncodeArgs) -> CliResult<Compiled> {
    let text = read(path)?;
    compile_str(&text, encode.into()).map_err(|e| match e {
        Error::Parse(p) => Failure::Parse(format!("{}: {p}", path.display())),
        other => other.into(),
    })
}

fn parse_point(s: &str) -> CliResult<Vec<u64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("invalid point `{s}`: expected comma-separated naturals")))
        })
        .collect()
}

fn parse_levels(s: &str) -> CliResult<Vec<Level>> {
    if s == "all" {
        return Ok(Level::ALL.to_vec());
    }
    let mut levels: Vec<Level> = Vec::new();
    for part in s.split(',') {
        let level: Level = part.trim().parse().map_err(Failure::Usage)?;
        if !levels.contains(&level) {
            levels.push(level);
        }
    }
    Ok(levels)
}

fn box_bound(flag: Option<u64>) -> CliResult<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BOX_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{BOX_ENV}={v} is not a natural number"))),
        Err(_) => Ok(BOX_DEFAULT),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_json(report: &ReturnSetReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

struct VerifyArgs<'a> {
    input: &'a Path,
    bound: Option<u64>,
    levels: &'a str,
    encode: EncodeArgs,
    system: Option<&'a Path>,
}

fn load_document(path: &Path) -> CliResult<LoadedSystem> {
    let bad = |e: DocumentError| Failure::Parse(format!("{}: {e}", path.display()));
    SystemDocument::from_json(&read(path)?)
        .and_then(|d| d.load())
        .map_err(bad)
}

fn is_document(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn build_report(args: &VerifyArgs) -> CliResult<ReturnSetReport> {
    let bound = box_bound(args.bound)?;
    let levels = parse_levels(args.levels)?;
    if is_document(&read(args.input)?) {
        let sys = load_document(args.input)?;
        let region = BoxRegion::new(bound, sys.nvars());
        let set = sys.return_set(region)?;
        return Ok(ReturnSetReport::from_sets(region, vec![(sys.level(), set)]));
    }
    let compiled = load(args.input, args.encode)?;
    let region = BoxRegion::new(bound, compiled.nvars());
    let Some(doc) = args.system else {
        return Ok(verify::cross_check(&compiled, region, &levels)?);
    };
    let sys = load_document(doc)?;
    let sets = vec![
        (Level::Direct, verify::return_set_direct(&compiled.source, region)?),
        (sys.level(), sys.return_set(region)?),
    ];
    let mut report = ReturnSetReport::from_sets(region, sets);
    report.attach_witness(|i, p| match i {
        0 => verify::member_direct(&compiled.source, p),
        _ => sys.member(p),
    })?;
    Ok(report)
}

fn verify_cmd(args: VerifyArgs, json: bool, report_path: Option<&Path>) -> CliResult {
    let report = build_report(&args)?;
    if let Some(p) = report_path {
        write_output(Some(p), &report_json(&report))?;
    }
    if json {
        print!("{}", report_json(&report));
    } else {
        print!("{}", report.render_table());
    }
    if report.agreement {
        Ok(())
    } else {
        Err(Failure::Disagreement)
    }
}

fn info(c: &Compiled) {
    let src = &c.source;
    let ring = &src.ring;
    println!("ring: Z[{}]/({})", ring.generator_name(), ring.min_poly_display());
    println!("vars: {}", src.vars.join(" "));
    for (k, eq) in src.equations.iter().enumerate() {
        println!("equation {}: {} = 0", k + 1, eq.source);
        for t in &eq.binomial {
            let bases: Vec<String> = t.bases.iter().map(|b| ring.display(b).to_string()).collect();
            println!(
                "  term: coeff {}  j ({})  lambda ({})",
                ring.display(&t.coeff),
                join(&t.j),
                bases.join(", ")
            );
        }
    }
    println!("blocks:");
    for b in &c.ring.blocks {
        let kind = match &b.block.kind {
            BlockKind::Exponential { j, weights, .. } => {
                format!("exponential j ({}) weights ({})", join(j), join(&weights.weights))
            }
            BlockKind::Linear { .. } => "linear".to_string(),
        };
        println!(
            "  eq {}  rows {}..{}  size {}  {}  output x{} coeff {}",
            b.equation + 1,
            b.offset + 1,
            b.offset + b.block.size,
            b.block.size,
            kind,
            b.output_column() + 1,
            ring.display(&b.coeff)
        );
    }
    println!("ring rank: {}", c.ring.rank());
    println!("integer rank: {}", c.integer.rank());
    println!("torus dimension: {}", c.torus.dimension());
    let names = coordinate_names(c.torus.dimension(), ring.degree());
    let start: Vec<String> = c
        .torus
        .exponent_seed
        .iter()
        .zip(&names)
        .filter(|(e, _)| !e.is_zero())
        .map(|(e, n)| format!("{n}=2^{e}"))
        .collect();
    println!("start point: {} (all other coordinates 1)", start.join(" "));
    println!("target subgroup:");
    for r in c.torus.target.relations(&names) {
        println!("  {r}");
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Compile {
            input,
            level,
            encode,
            output,
        } => {
            let c = load(&input, encode)?;
            write_output(output.as_deref(), &to_document(&c, level).to_json())
        }
        Command::Verify {
            input,
            bound,
            levels,
            encode,
            json,
            report,
            system,
        } => {
            let args = VerifyArgs {
                input: &input,
                bound,
                levels: &levels,
                encode,
                system: system.as_deref(),
            };
            verify_cmd(args, json, report.as_deref())
        }
        Command::Member {
            input,
            point,
            level,
            encode,
        } => {
            let point = parse_point(&point)?;
            let c = load(&input, encode)?;
            let m = verify::member(&c, &point, level)?;
            println!("{}", m.member);
            for v in &m.evidence {
                println!("{v}");
            }
            Ok(())
        }
        Command::Eval { input, point } => {
            let point = parse_point(&point)?;
            let src = expoly::ExpPolySystem::parse(&read(&input)?)
                .map_err(|p| Failure::Parse(format!("{}: {p}", input.display())))?;
            let values = src.eval(&point).map_err(Error::from)?;
            for v in &values {
                println!("{}", src.ring.display(v));
            }
            Ok(())
        }
        Command::Info { input, encode } => {
            info(&load(&input, encode)?);
            Ok(())
        }
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Disagreement) => ExitCode::from(3),
    }
}
