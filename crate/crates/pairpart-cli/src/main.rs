use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pairpart::brackets::{build_bracket_from_pattern, classify_bracket, dual_bracket, pattern_of_bracket};
use pairpart::closure::{generate, ClosureConfig};
use pairpart::metrics::SemigroupSpec;
use pairpart::patterns::{
    category_of_monoid, format_set, infer_monoid, numerical_semigroup_data, pattern_closure, MonoidSpec,
};
use pairpart::suites::{classify_report, SUITES};
use pairpart::{verify_suite, BracketPattern, Color, Corner, Direction, Partition, Point, Report, SuiteParams};

#[derive(Parser)]
#[command(name = "pairpart", version, about = "Two-colored pair partitions and their categories")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Records, global = true)]
    format: Format,
    /// Include wall-clock times in reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a partition and print its canonical form.
    Parse { partition: String },
    /// Apply an operation to partitions.
    Op {
        #[command(subcommand)]
        op: Op,
    },
    /// Report pair, neutrality, S_0, crossing and I_D status.
    Classify {
        partition: String,
        /// Semigroup D, e.g. "D{gens=3,5; zero=1}".
        #[arg(long)]
        d: Option<String>,
    },
    Bracket {
        #[command(subcommand)]
        cmd: BracketCmd,
    },
    Pattern {
        #[command(subcommand)]
        cmd: PatternCmd,
    },
    /// Bounded generation from a file of generators.
    Closure {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = 12)]
        intermediate: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iterations: usize,
        /// Also extract the bracket patterns up to this frame.
        #[arg(long)]
        frame: Option<u32>,
        /// Write every member to this file, one per line.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long)]
        intermediate: Option<usize>,
        #[arg(long)]
        ceiling: Option<usize>,
        #[arg(long)]
        frame: Option<u32>,
        #[arg(long)]
        d: Option<String>,
    },
}

#[derive(Subcommand)]
enum Op {
    Tensor { p: String, q: String },
    /// Composition with `q` on top of `p`; prints the loop count as well.
    Compose { p: String, q: String },
    Involution { p: String },
    ColorInvert { p: String },
    Reflect { p: String },
    VerticolorReflect { p: String },
    Rotate {
        p: String,
        #[arg(long, value_enum)]
        corner: CornerArg,
    },
    CyclicRotate {
        p: String,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Erase points, e.g. `--points l1,l2`.
    Erase {
        p: String,
        #[arg(long)]
        points: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CornerArg {
    UpperLeftDown,
    UpperRightDown,
    LowerLeftUp,
    LowerRightUp,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Cw,
    Ccw,
}

#[derive(Subcommand)]
enum BracketCmd {
    /// Build Br_c(w).
    Build {
        #[arg(long)]
        color: String,
        #[arg(long)]
        pattern: String,
    },
    /// Print the bracket kind and, for Br_c(w), the pattern.
    Classify { partition: String },
    /// The dual of a dualizable bracket.
    Dual { partition: String },
}

#[derive(Subcommand)]
enum PatternCmd {
    Complete { pattern: String },
    Dual { pattern: String },
    /// The least pattern category containing the given patterns.
    Closure { patterns: Vec<String> },
    /// Patterns of a submonoid and the monoid recovered from them.
    Monoid {
        #[arg(long, value_delimiter = ',')]
        gens: Vec<u32>,
        #[arg(long, default_value_t = 6)]
        frame: u32,
    },
    /// Gap set, genus and Frobenius number of N_0 minus A(w).
    Semigroup { pattern: String },
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Usage(String),
    Verification,
}

impl From<pairpart::Error> for Failure {
    fn from(e: pairpart::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn partition(text: &str) -> Result<Partition, Failure> {
    Ok(Partition::parse(text)?)
}

fn color(text: &str) -> Result<Color, Failure> {
    let mut chars = text.chars();
    match (chars.next().and_then(Color::from_symbol), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Failure::Usage(format!("color must be 'w' or 'b', got '{}'", text))),
    }
}

fn points(text: &str) -> Result<BTreeSet<Point>, Failure> {
    let bad = || Failure::Usage(format!("bad point list '{}'", text));
    let mut out = BTreeSet::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (row, idx) = item.split_at(1);
        let i: usize = idx.parse().map_err(|_| bad())?;
        out.insert(match row {
            "l" => Point::lower(i),
            "u" => Point::upper(i),
            _ => return Err(bad()),
        });
    }
    Ok(out)
}

fn render(reports: &[Report], format: Format, timings: bool) -> String {
    reports
        .iter()
        .map(|r| match format {
            Format::Plain => r.to_plain(timings),
            Format::Records => r.to_records(timings),
        })
        .collect()
}

fn run_op(op: Op) -> Outcome {
    let line = |p: Partition| Ok(format!("{}\n", p));
    match op {
        Op::Tensor { p, q } => line(partition(&p)?.tensor(&partition(&q)?)),
        Op::Compose { p, q } => {
            let (r, loops) = partition(&p)?.compose(&partition(&q)?)?;
            Ok(format!("{}\nloops={}\n", r, loops))
        }
        Op::Involution { p } => line(partition(&p)?.involution()),
        Op::ColorInvert { p } => line(partition(&p)?.color_invert()),
        Op::Reflect { p } => line(partition(&p)?.reflect()),
        Op::VerticolorReflect { p } => line(partition(&p)?.verticolor_reflect()),
        Op::Rotate { p, corner } => {
            let c = match corner {
                CornerArg::UpperLeftDown => Corner::UpperLeftDown,
                CornerArg::UpperRightDown => Corner::UpperRightDown,
                CornerArg::LowerLeftUp => Corner::LowerLeftUp,
                CornerArg::LowerRightUp => Corner::LowerRightUp,
            };
            line(partition(&p)?.rotate(c)?)
        }
        Op::CyclicRotate { p, direction, steps } => {
            let d = match direction {
                DirectionArg::Cw => Direction::Clockwise,
                DirectionArg::Ccw => Direction::CounterClockwise,
            };
            line(partition(&p)?.cyclic_rotate(d, steps)?)
        }
        Op::Erase { p, points: pts } => line(partition(&p)?.erase(&points(&pts)?)?),
    }
}

fn run_bracket(cmd: BracketCmd) -> Outcome {
    match cmd {
        BracketCmd::Build { color: c, pattern } => {
            let w: BracketPattern = pattern.parse()?;
            Ok(format!("{}\n", build_bracket_from_pattern(color(&c)?, w)))
        }
        BracketCmd::Classify { partition: text } => {
            let p = partition(&text)?;
            let mut out = format!("{}\n", classify_bracket(&p));
            if let Some((c, w)) = pattern_of_bracket(&p) {
                out.push_str(&format!("pattern {} {}\n", c.symbol(), w));
            }
            Ok(out)
        }
        BracketCmd::Dual { partition: text } => Ok(format!("{}\n", dual_bracket(&partition(&text)?)?)),
    }
}

fn run_pattern(cmd: PatternCmd) -> Outcome {
    match cmd {
        PatternCmd::Complete { pattern } => Ok(format!("{}\n", pattern.parse::<BracketPattern>()?.completion())),
        PatternCmd::Dual { pattern } => Ok(format!("{}\n", pattern.parse::<BracketPattern>()?.dual())),
        PatternCmd::Closure { patterns } => {
            if patterns.is_empty() {
                return Err(Failure::Usage("at least one pattern is required".into()));
            }
            let ws = patterns.iter().map(|s| s.parse::<BracketPattern>()).collect::<pairpart::Result<Vec<_>>>()?;
            Ok(format!("{}\n", pattern_closure(ws)))
        }
        PatternCmd::Monoid { gens, frame } => {
            let m = MonoidSpec::new(gens.clone())?;
            let cat = category_of_monoid(&m, frame);
            let desc = infer_monoid(&cat)?;
            Ok(format!(
                "patterns={}\ngaps={}\ngenerators={}\n",
                cat.len(),
                format_set(&desc.gaps),
                format_set(&desc.minimal_generators()),
            ))
        }
        PatternCmd::Semigroup { pattern } => {
            let data = numerical_semigroup_data(pattern.parse()?);
            Ok(format!(
                "gaps={}\ngenus={}\nfrobenius={}\nverified={}\n",
                format_set(&data.gap_set),
                data.genus,
                data.frobenius,
                data.verified
            ))
        }
    }
}

fn read_generators(path: &PathBuf) -> Result<Vec<Partition>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = Partition::parse(line).map_err(|e| Failure::Usage(format!("{}:{}: {}", path.display(), i + 1, e)))?;
        out.push(p);
    }
    Ok(out)
}

fn run(cli: Cli) -> Outcome {
    let (format, timings) = (cli.format, cli.timings);
    match cli.command {
        Command::Parse { partition: text } => Ok(format!("{}\n", partition(&text)?)),
        Command::Op { op } => run_op(op),
        Command::Classify { partition: text, d } => {
            let d = d.map(|s| s.parse::<SemigroupSpec>()).transpose()?;
            Ok(render(&[classify_report(&partition(&text)?, d.as_ref())], format, false))
        }
        Command::Bracket { cmd } => run_bracket(cmd),
        Command::Pattern { cmd } => run_pattern(cmd),
        Command::Closure { gens, max_points, intermediate, max_iterations, frame, emit } => {
            let generators = read_generators(&gens)?;
            let cfg = ClosureConfig { max_points, intermediate_points: intermediate, max_iterations };
            let start = std::time::Instant::now();
            let cs = generate(&generators, &cfg)?;
            let members = cs.members();
            let mut r = Report::new("closure");
            r.param("generators", generators.len());
            r.param("max_points", max_points);
            r.param("intermediate", intermediate);
            r.param("max_iterations", max_iterations);
            r.note("classes", cs.classes().count());
            r.note("members", members.len());
            r.note("saturated", cs.saturated);
            r.note("iterations", cs.iterations);
            if let Some(f) = frame {
                r.param("frame", f);
                r.note("bracket_patterns", cs.bracket_patterns_of(f)?);
            }
            if let Some(path) = emit {
                let text: String = members.iter().map(|p| format!("{}\n", p)).collect();
                fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
            }
            r.checked = members.len() as u64;
            r.wall_ms = Some(start.elapsed().as_millis());
            Ok(render(&[r], format, timings))
        }
        Command::Verify { suite, max_points, intermediate, ceiling, frame, d } => {
            let params = SuiteParams {
                max_points,
                intermediate,
                ceiling,
                frame,
                d: d.map(|s| s.parse::<SemigroupSpec>()).transpose()?,
            };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let reports = names.iter().map(|n| verify_suite(n, &params)).collect::<pairpart::Result<Vec<_>>>()?;
            let text = render(&reports, format, timings);
            if reports.iter().all(|r| r.passed) {
                Ok(text)
            } else {
                print!("{}", text);
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{}", text);
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
