//! The `heegaard` command line, as a library so it can be driven in-process.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 search or enumeration
//! stopped at `--max-members`, 4 internal error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use heegaard_core::boundary::SideSummary;
use heegaard_core::surface::{check_corner_rules, ribbon_graph_dot};
use heegaard_core::{
    analyze, analyze_one, decode, encode_canonical, orbit_partition, parse_presentation, search_closed, AnalysisReport,
    ClassMode, EncodingClass, PermutationDataSet, Presentation, SearchOptions, SearchResult, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ABORTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "heegaard", version, about = "Heegaard diagrams as permutation data sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical data set of a presentation.
    Encode {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        text: bool,
    },
    /// Presentation read off a data set.
    Decode {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        text: bool,
    },
    /// Surface and boundary report. A presentation is analyzed through its
    /// canonical data set; a non-transitive data set gives one report per
    /// connected-sum constituent.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        text: bool,
    },
    /// Search the data sets of a presentation for a closed 3-manifold.
    Search {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_name = "N", default_value_t = 1_000_000)]
        max_members: u64,
        #[arg(long, value_name = "N", default_value_t = 1)]
        jobs: usize,
        /// Stop at the first closed member.
        #[arg(long)]
        first_witness: bool,
        #[arg(long)]
        text: bool,
    },
    /// Stream the data sets of a presentation as JSON lines.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_name = "N")]
        max_members: Option<u64>,
    },
    /// Ribbon graph in DOT, or its boundary orbits as JSON.
    ExportDot {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        orbits: bool,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// `.pres` (presentation) or `.json` (data set or presentation); `-` for stdin.
    path: PathBuf,
    /// Override the format sniffed from the extension and contents.
    #[arg(long = "as", value_enum, value_name = "KIND")]
    kind: Option<Kind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Pres,
    Perm,
}

#[derive(Debug, Args)]
struct ClassArgs {
    /// First occurrence of each generator pinned (default).
    #[arg(long, conflicts_with = "full")]
    reduced: bool,
    /// Every bijection of occurrences onto block labels.
    #[arg(long)]
    full: bool,
}

impl ClassArgs {
    fn mode(&self) -> ClassMode {
        if self.full {
            ClassMode::Full
        } else {
            ClassMode::Reduced
        }
    }
}

enum Loaded {
    Pres(Presentation),
    Perm(PermutationDataSet),
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
    Internal(String),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Internal(_) | Failure::Io(_) => EXIT_INTERNAL,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn internal(e: impl ToString) -> Failure {
    Failure::Internal(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(internal)
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn sniff(path: &Path, text: &str) -> Result<Kind, Failure> {
    let trimmed = text.trim_start();
    match path.extension().and_then(|e| e.to_str()) {
        Some("pres") if !trimmed.starts_with('{') => return Ok(Kind::Pres),
        _ => {}
    }
    if trimmed.starts_with('<') {
        return Ok(Kind::Pres);
    }
    if trimmed.starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
        if value.get("alpha").is_some() {
            return Ok(Kind::Perm);
        }
        if value.get("generators").is_some() {
            return Ok(Kind::Pres);
        }
    }
    Err(Failure::Usage(format!(
        "cannot tell what {} contains; pass --as pres or --as perm",
        path.display()
    )))
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let text = read_input(&input.path)?;
    let kind = match input.kind {
        Some(k) => k,
        None => sniff(&input.path, &text)?,
    };
    let invalid = |e: &dyn std::fmt::Display| Failure::Invalid(format!("{}: {e}", input.path.display()));
    match kind {
        Kind::Pres if text.trim_start().starts_with('{') => {
            serde_json::from_str(&text).map(Loaded::Pres).map_err(|e| invalid(&e))
        }
        Kind::Pres => parse_presentation(&text).map(Loaded::Pres).map_err(|e| invalid(&e)),
        Kind::Perm => serde_json::from_str(&text).map(Loaded::Perm).map_err(|e| invalid(&e)),
    }
}

/// Trivially reduces (logging any change) and checks the presentation can be encoded.
fn prepare(p: Presentation, err: &mut dyn Write) -> Result<Presentation, Failure> {
    let reduced = p.trivially_reduce();
    if reduced != p {
        writeln!(err, "note: trivially reduced to {reduced}")?;
    }
    let diags = reduced.validate_for_encoding();
    if !diags.is_empty() {
        let list: Vec<String> = diags.iter().map(ToString::to_string).collect();
        return Err(Failure::Invalid(format!("cannot encode: {}", list.join("; "))));
    }
    Ok(reduced)
}

fn presentation(input: &Input, command: &str, err: &mut dyn Write) -> Result<Presentation, Failure> {
    match load(input)? {
        Loaded::Pres(p) => prepare(p, err),
        Loaded::Perm(_) => Err(Failure::Usage(format!(
            "{command} expects a presentation, got a data set"
        ))),
    }
}

fn data_set(input: &Input, err: &mut dyn Write) -> Result<PermutationDataSet, Failure> {
    match load(input)? {
        Loaded::Perm(ds) => Ok(ds),
        Loaded::Pres(p) => encode_canonical(&prepare(p, err)?).map_err(|e| Failure::Invalid(e.to_string())),
    }
}

fn side_line(out: &mut String, s: &SideSummary) {
    let genera: Vec<String> = s.components.iter().map(|c| c.genus.to_string()).collect();
    let _ = writeln!(
        out,
        "  {}: {} component(s), {} curve(s), boundary genus {} [{}]{}",
        s.side,
        s.component_count,
        s.curve_count,
        s.boundary_genus,
        genera.join(" "),
        if s.is_empty_boundary { ", empty" } else { "" }
    );
}

fn report_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let s = &r.surface;
    let _ = writeln!(out, "d={} b={} chi(S)={} g(S)={}", s.d, s.b, s.euler_s, s.genus_s);
    side_line(&mut out, &r.x_side);
    side_line(&mut out, &r.y_side);
    let _ = writeln!(out, "  closed={} presentsGroup={}", r.closed, r.presents_group);
    out
}

fn search_text(r: &SearchResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "presentation  {}", r.presentation);
    let _ = writeln!(out, "mode          {}", r.options.mode);
    let _ = writeln!(
        out,
        "class size    {} full, {} reduced",
        r.class_size_full, r.class_size_reduced
    );
    let _ = writeln!(out, "examined      {}", r.examined);
    let _ = writeln!(out, "witnesses     {}", r.witnesses.len());
    let verdict = serde_json::to_value(r.verdict)
        .ok()
        .and_then(|v| v.as_str().map(String::from));
    let _ = writeln!(out, "verdict       {}", verdict.unwrap_or_default());
    if let Some(w) = r.witnesses.first() {
        let _ = writeln!(out, "first witness #{}: {}", w.member, w.data_set);
    }
    out
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Encode { input, text } => {
            let p = presentation(&input, "encode", err)?;
            let ds = encode_canonical(&p).map_err(|e| Failure::Invalid(e.to_string()))?;
            if text {
                writeln!(out, "{ds}")?;
            } else {
                writeln!(out, "{}", to_json(&ds)?)?;
            }
        }
        Command::Decode { input, text } => {
            let ds = match load(&input)? {
                Loaded::Perm(ds) => ds,
                Loaded::Pres(_) => return Err(Failure::Usage("decode expects a data set, got a presentation".into())),
            };
            let p = decode(&ds);
            if text {
                writeln!(out, "{p}")?;
            } else {
                writeln!(out, "{}", to_json(&p)?)?;
            }
        }
        Command::Analyze { input, text } => {
            let ds = data_set(&input, err)?;
            let reports = if ds.is_transitive() {
                vec![analyze(&ds).map_err(internal)?]
            } else {
                writeln!(
                    err,
                    "note: not transitive; analyzing {} constituents",
                    ds.orbits().len()
                )?;
                analyze_one(&ds).map_err(internal)?
            };
            if text {
                for (i, r) in reports.iter().enumerate() {
                    if reports.len() > 1 {
                        writeln!(out, "constituent {}", i + 1)?;
                    }
                    write!(out, "{}", report_text(r))?;
                }
            } else if ds.is_transitive() {
                writeln!(out, "{}", to_json(&reports[0])?)?;
            } else {
                writeln!(out, "{}", to_json(&reports)?)?;
            }
        }
        Command::Search {
            input,
            class,
            max_members,
            jobs,
            first_witness,
            text,
        } => {
            if jobs == 0 {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            let p = presentation(&input, "search", err)?;
            let opts = SearchOptions {
                mode: class.mode(),
                max_members,
                parallelism: jobs,
                first_witness_only: first_witness,
            };
            let result = search_closed(&p, &opts).map_err(internal)?;
            writeln!(err, "searched {} member(s) in {:.3?}", result.examined, result.elapsed)?;
            if text {
                write!(out, "{}", search_text(&result))?;
            } else {
                writeln!(out, "{}", to_json(&result)?)?;
            }
            if result.verdict == Verdict::AbortedAtLimit {
                return Ok(EXIT_ABORTED);
            }
        }
        Command::Enumerate {
            input,
            class,
            max_members,
        } => {
            let p = presentation(&input, "enumerate", err)?;
            let class = EncodingClass::new(&p, class.mode()).map_err(|e| Failure::Invalid(e.to_string()))?;
            let limit = max_members.unwrap_or(u64::MAX);
            for (written, ds) in (0u64..).zip(class.iter()) {
                if written == limit {
                    writeln!(err, "stopped after {written} of {} member(s)", class.size())?;
                    return Ok(EXIT_ABORTED);
                }
                writeln!(out, "{}", serde_json::to_string(&ds).map_err(internal)?)?;
            }
        }
        Command::ExportDot { input, orbits } => {
            let ds = data_set(&input, err)?;
            if orbits {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&orbit_partition(&ds)).map_err(internal)?
                )?;
            } else {
                write!(out, "{}", ribbon_graph_dot(&ds))?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    if let Err(e) = check_corner_rules() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INTERNAL;
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        // a closed pipe (`| head`) is not an error
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Invalid(m) | Failure::Internal(m) => m.clone(),
                Failure::Io(e) => e.to_string(),
            };
            let _ = writeln!(err, "error: {msg}");
            f.code()
        }
    }
}
