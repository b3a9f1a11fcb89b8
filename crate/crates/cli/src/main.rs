use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use groupoid_homology::complex::{
    homology_report, nerve_pair_groupoid, nerve_unit_cantor, nerve_unit_discrete,
    smith_normal_form, ComplexError, IntMatrix, PresentationDoc, SimplicialPresentation,
};
use groupoid_homology::maps::{standard, LocalHomeo, LocalHomeoDoc, MapError};
use groupoid_homology::realization::{compare_h0_for, realization_suite, Side, Verdict};
use groupoid_homology::sampling::DEFAULT_SEED;
use groupoid_homology::zfun::{EnumerationCursor, FunctionDoc, LocIntFun};

#[derive(Parser)]
#[command(
    name = "ghom",
    version,
    about = "Exact homology of ample groupoids over Cantor spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Homology ranks and torsion per level and depth
    Homology {
        #[command(flatten)]
        source: Source,
        /// Compute H_n for n below this level
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Cell depths, comma separated
        #[arg(long, value_delimiter = ',', default_value = "3")]
        depth: Vec<usize>,
    },
    /// Pushforward of a function along a local homeomorphism
    Pushforward {
        /// Map file: {"domain", "codomain", "charts"}
        #[arg(long)]
        map: PathBuf,
        /// Function file on the map's domain
        #[arg(long)]
        function: PathBuf,
    },
    /// First elements of the enumeration of C(X, Z)
    Enumerate {
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Sampled checks of the simplex and sequence-model identities
    RealizationCheck {
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Compare Moore H_0 with singular H_0 of the classifying space
    CompareH0 {
        #[command(flatten)]
        source: OptionalSource,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Smith normal form of a matrix in triplet format
    Snf {
        #[arg(long)]
        file: PathBuf,
        /// Include the transforms U, V and V^-1
        #[arg(long)]
        transforms: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in presentation: unit-cantor, unit-discrete:k or pair:k
    #[arg(long)]
    groupoid: Option<String>,
    /// Presentation file
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalSource {
    #[arg(long)]
    groupoid: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Unsupported(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Unsupported(m) => m,
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::NotDepthPreserving { .. } => Failure::Unsupported(e.to_string()),
            ComplexError::Face {
                source: MapError::Invalid(ref d),
                ..
            } => Failure::Input(format!(
                "{e}\n{}",
                serde_json::to_string(d).expect("diagnostics serialize")
            )),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn map_failure(e: MapError) -> Failure {
    match e {
        MapError::Invalid(d) => Failure::Input(format!(
            "invalid map\n{}",
            serde_json::to_string(&d).expect("diagnostics serialize")
        )),
        other => Failure::Input(other.to_string()),
    }
}

/// Successful output, possibly flagged as a property failure.
struct Output {
    text: String,
    failed: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: None }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn builtin(name: &str, levels: usize) -> Result<SimplicialPresentation, Failure> {
    let size = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| Failure::Input(format!("bad size in {name:?}")))
    };
    match name.split_once(':') {
        None if name == "unit-cantor" => Ok(nerve_unit_cantor(levels)),
        Some(("unit-discrete", k)) => Ok(nerve_unit_discrete(size(k)?, levels)?),
        Some(("pair", k)) => Ok(nerve_pair_groupoid(size(k)?, levels)?),
        _ => Err(Failure::Input(format!(
            "unknown groupoid {name:?}; expected unit-cantor, unit-discrete:k or pair:k"
        ))),
    }
}

fn load(
    groupoid: Option<&str>,
    file: Option<&Path>,
    levels: usize,
) -> Result<SimplicialPresentation, Failure> {
    match (groupoid, file) {
        (Some(name), _) => builtin(name, levels),
        (None, Some(path)) => {
            let doc: PresentationDoc = parse_json(path)?;
            Ok(SimplicialPresentation::from_doc(doc)?)
        }
        (None, None) => Ok(nerve_unit_cantor(levels)),
    }
}

fn cmd_homology(
    source: &Source,
    levels: usize,
    depths: &[usize],
    format: Format,
) -> Result<Output, Failure> {
    let p = load(source.groupoid.as_deref(), source.file.as_deref(), levels)?;
    let report = homology_report(&p, levels, depths)?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Table => {
            let mut t = format!("{:>5} {:>5} {:>8}  torsion\n", "n", "depth", "rank");
            for e in &report.entries {
                let tors: Vec<String> = e.torsion.iter().map(BigInt::to_string).collect();
                writeln!(
                    t,
                    "{:>5} {:>5} {:>8}  [{}]",
                    e.level,
                    e.depth,
                    e.rank,
                    tors.join(", ")
                )
                .unwrap();
            }
            for s in &report.stability {
                writeln!(t, "level {} stable: {}", s.level, s.stable).unwrap();
            }
            t
        }
    };
    Ok(Output::ok(text))
}

fn cmd_pushforward(map: &Path, function: &Path) -> Result<Output, Failure> {
    let doc: LocalHomeoDoc = parse_json(map)?;
    let p = LocalHomeo::from_doc(doc).map_err(map_failure)?;
    let fdoc: FunctionDoc = parse_json(function)?;
    let f = LocIntFun::from_doc(p.domain().clone(), &fdoc)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let g = p.pushforward(&f).map_err(map_failure)?;
    Ok(Output::ok(g.to_json() + "\n"))
}

fn cmd_enumerate(count: u64) -> Result<Output, Failure> {
    let mut text = String::new();
    for f in EnumerationCursor::at(0).take(count as usize) {
        text.push_str(&f.to_json());
        text.push('\n');
    }
    Ok(Output::ok(text))
}

fn cmd_realization_check(
    samples: u64,
    seed: u64,
    fault: bool,
    format: Format,
) -> Result<Output, Failure> {
    let suite = realization_suite(samples as usize, seed, fault);
    let text = match format {
        Format::Json => to_json(&suite),
        Format::Table => {
            let mut t = String::new();
            for p in &suite.properties {
                writeln!(
                    t,
                    "{:<26} passed {:>6} failed {:>6}",
                    p.name, p.passed, p.failed
                )
                .unwrap();
                if let Some(w) = &p.witness {
                    writeln!(t, "  witness: {w}").unwrap();
                }
            }
            t
        }
    };
    let failed = suite
        .properties
        .iter()
        .filter(|p| p.failed > 0)
        .map(|p| p.name.as_str())
        .collect::<Vec<_>>();
    Ok(Output {
        text,
        failed: (!failed.is_empty()).then(|| format!("failed properties: {}", failed.join(", "))),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare_h0(
    source: &OptionalSource,
    levels: usize,
    depth: usize,
    samples: u64,
    seed: u64,
    fault: bool,
    format: Format,
) -> Result<Output, Failure> {
    if levels < 2 {
        return Err(Failure::Input(format!(
            "--levels must be at least 2, got {levels}"
        )));
    }
    let mut p = load(source.groupoid.as_deref(), source.file.as_deref(), levels)?;
    if p.max_level() < 2 {
        return Err(Failure::Input(format!(
            "presentation needs levels up to 2, has {}",
            p.max_level()
        )));
    }
    if fault {
        p = p.with_face(2, 1, standard::bit_swap())?;
    }
    let report = compare_h0_for(&p, depth, samples as usize, seed)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Table => {
            let mut t = String::new();
            for w in &report.witnesses {
                let side = match w.side {
                    Side::Moore => "moore",
                    Side::Singular => "singular",
                };
                let mark = if w.passed { "pass" } else { "FAIL" };
                writeln!(t, "{mark} {side:<9} {:<28} {}", w.name, w.detail).unwrap();
            }
            writeln!(t, "verdict: {:?} ({})", report.verdict, report.reason).unwrap();
            t
        }
    };
    let failed = (report.verdict != Verdict::NotIsomorphic).then(|| report.diagnostics.join("; "));
    Ok(Output { text, failed })
}

#[derive(Serialize)]
struct SnfOutput {
    rows: usize,
    cols: usize,
    rank: usize,
    divisors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v_inv: Option<Vec<Vec<String>>>,
}

fn dense_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_dense()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect()
}

fn cmd_snf(file: &Path, transforms: bool, format: Format) -> Result<Output, Failure> {
    let m = IntMatrix::from_triplets(&read(file)?).map_err(|e| Failure::Input(e.to_string()))?;
    let s = smith_normal_form(&m);
    let out = SnfOutput {
        rows: m.rows(),
        cols: m.cols(),
        rank: s.rank(),
        divisors: s.divisors().iter().map(BigInt::to_string).collect(),
        u: transforms.then(|| dense_strings(&s.u)),
        v: transforms.then(|| dense_strings(&s.v)),
        v_inv: transforms.then(|| dense_strings(&s.v_inv)),
    };
    let text = match format {
        Format::Json => to_json(&out),
        Format::Table => format!(
            "{}x{} rank {} divisors [{}]\n",
            out.rows,
            out.cols,
            out.rank,
            out.divisors.join(", ")
        ),
    };
    Ok(Output::ok(text))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Homology {
            source,
            levels,
            depth,
        } => cmd_homology(source, *levels, depth, cli.format),
        Command::Pushforward { map, function } => cmd_pushforward(map, function),
        Command::Enumerate { count } => cmd_enumerate(*count),
        Command::RealizationCheck {
            samples,
            seed,
            inject_fault,
        } => cmd_realization_check(*samples, *seed, *inject_fault, cli.format),
        Command::CompareH0 {
            source,
            levels,
            depth,
            samples,
            seed,
            inject_fault,
        } => cmd_compare_h0(
            source,
            *levels,
            *depth,
            *samples,
            *seed,
            *inject_fault,
            cli.format,
        ),
        Command::Snf { file, transforms } => cmd_snf(file, *transforms, cli.format),
    }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match out.failed {
                Some(msg) => {
                    eprintln!("{msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
