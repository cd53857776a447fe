//! Command-line front end behind the `fclust` binary.
//!
//! Exit status: 0 on success, 1 when a probe reports violations, 2 on
//! usage errors (bad flags, unreadable files), 3 when an input fails
//! validation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::category::SearchLimits;
use crate::error::Error;
use crate::flat::{cluster_flat_with, motif_metric_transform_with, FlatScheme, MotifSet};
use crate::harness::{run_probe, ProbeConfig, ProbeId};
use crate::hierarchical::{agglomerative, rips_delta_m_with, trim_functor, Linkage, PersistentSet};
use crate::invariants::{evaluate_invariant_with, InvariantSpec};
use crate::io::{to_json, Length};
use crate::metric::FiniteMetricSpace;
use crate::partition::Partition;

pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fclust", version, about = "Functorial clustering of finite metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a flat scheme and write the partition.
    Cluster {
        /// Scheme as inline JSON or a path.
        #[arg(long)]
        scheme: String,
        #[command(flatten)]
        io: InputOutput,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Build a persistent set (single linkage unless told otherwise).
    Hclust {
        #[arg(long, value_enum, default_value_t = LinkageArg::Single)]
        linkage: LinkageArg,
        /// Trim chaining classes smaller than this.
        #[arg(long, conflicts_with_all = ["linkage", "rips_m"])]
        trim: Option<usize>,
        /// Single linkage after the clique transform with this motif size.
        #[arg(long, conflicts_with = "linkage")]
        rips_m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        io: InputOutput,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Apply the motif transform and write the new space.
    Transform {
        /// Motif set (or representable scheme) as inline JSON or a path.
        #[arg(long, alias = "motifs")]
        scheme: String,
        #[command(flatten)]
        io: InputOutput,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Evaluate an invariant and print its value.
    Invariant {
        /// Invariant as inline JSON or a path.
        #[arg(long, alias = "scheme")]
        spec: String,
        #[command(flatten)]
        io: InputOutput,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Run a probe and print its report.
    Check {
        /// Probe name, or `all`.
        #[arg(long)]
        probe: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        spaces: Option<usize>,
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long)]
        morphisms: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-emit a space, partition or persistent set canonically, or a
    /// persistent set as DOT.
    Convert {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        io: InputOutput,
    },
}

#[derive(Args, Debug)]
struct InputOutput {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Accept zero distances between distinct points.
    #[arg(long)]
    pseudometric: bool,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Lift the search-size guards.
    #[arg(long)]
    force: bool,
}

impl LimitArgs {
    fn limits(&self) -> SearchLimits {
        let mut l = SearchLimits::from_env();
        l.force = self.force;
        l
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LinkageArg {
    Single,
    Complete,
    Average,
}

impl From<LinkageArg> for Linkage {
    fn from(l: LinkageArg) -> Self {
        match l {
            LinkageArg::Single => Linkage::Single,
            LinkageArg::Complete => Linkage::Complete,
            LinkageArg::Average => Linkage::Average,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    Usage(String),
    Invalid(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_file(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Inline JSON when the argument starts with `{`, else a file path.
fn read_spec(arg: &str) -> Outcome<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read_file(Path::new(arg))
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Outcome<T> {
    Ok(crate::io::from_json(text)?)
}

fn parse_value(text: &str) -> Outcome<Value> {
    parse(text)
}

fn load_space(io: &InputOutput) -> Outcome<FiniteMetricSpace> {
    let mut v = parse_value(&read_file(&io.input)?)?;
    if io.pseudometric {
        if let Value::Object(m) = &mut v {
            m.insert("pseudometric".into(), Value::Bool(true));
        }
    }
    serde_json::from_value(v).map_err(|e| Failure::Invalid(Error::Parse(e.to_string())))
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Outcome<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn render_persistent(theta: &PersistentSet, format: Format) -> String {
    match format {
        Format::Json => to_json(theta),
        Format::Dot => theta.to_dot(),
    }
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Outcome<i32> {
    match cmd {
        Command::Cluster { scheme, io, limits } => {
            let scheme: FlatScheme = parse(&read_spec(&scheme)?)?;
            let x = load_space(&io)?;
            let p = cluster_flat_with(&scheme, &x, &limits.limits())?;
            emit(io.output.as_deref(), &to_json(&p), stdout)?;
        }
        Command::Hclust {
            linkage,
            trim,
            rips_m,
            format,
            io,
            limits,
        } => {
            let x = load_space(&io)?;
            let theta = match (trim, rips_m) {
                (Some(m), _) => trim_functor(&x, m)?,
                (None, Some(m)) => rips_delta_m_with(&x, m, &limits.limits())?,
                (None, None) => agglomerative(&x, linkage.into()),
            };
            emit(io.output.as_deref(), &render_persistent(&theta, format), stdout)?;
        }
        Command::Transform { scheme, io, limits } => {
            let text = read_spec(&scheme)?;
            let set = match parse::<MotifSet>(&text) {
                Ok(set) => set,
                Err(first) => match parse::<FlatScheme>(&text) {
                    Ok(FlatScheme::Representable(set)) => set,
                    _ => return Err(first),
                },
            };
            let x = load_space(&io)?;
            let t = motif_metric_transform_with(&x, &set, &limits.limits())?;
            emit(io.output.as_deref(), &to_json(&t), stdout)?;
        }
        Command::Invariant { spec, io, limits } => {
            let spec: InvariantSpec = parse(&read_spec(&spec)?)?;
            let x = load_space(&io)?;
            let v = evaluate_invariant_with(&spec, &x, &limits.limits())?;
            let text = serde_json::to_string(&Length(v)).expect("serializable");
            emit(io.output.as_deref(), &format!("{text}\n"), stdout)?;
        }
        Command::Check {
            probe,
            seed,
            spaces,
            max_points,
            morphisms,
            output,
        } => {
            let probes: Vec<ProbeId> = if probe.eq_ignore_ascii_case("all") {
                ProbeId::ALL.to_vec()
            } else {
                vec![probe.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?]
            };
            let defaults = ProbeConfig::with_seed(seed);
            let config = ProbeConfig {
                seed,
                spaces: spaces.unwrap_or(defaults.spaces),
                max_points: max_points.unwrap_or(defaults.max_points),
                morphisms: morphisms.unwrap_or(defaults.morphisms),
            };
            let reports = probes
                .into_iter()
                .map(|p| run_probe(p, &config))
                .collect::<crate::Result<Vec<_>>>()?;
            let failed = reports.iter().any(|r| !r.passed());
            let text = if reports.len() == 1 {
                to_json(&reports[0])
            } else {
                to_json(&reports)
            };
            emit(output.as_deref(), &text, stdout)?;
            return Ok(if failed { EXIT_VIOLATIONS } else { 0 });
        }
        Command::Convert { format, io } => {
            let mut v = parse_value(&read_file(&io.input)?)?;
            let obj = v
                .as_object_mut()
                .ok_or_else(|| Failure::Invalid(Error::Parse("expected a JSON object".into())))?;
            let text = if obj.contains_key("levels") {
                render_persistent(&serde_json::from_value::<PersistentSet>(v).map_err(json_err)?, format)
            } else if format == Format::Dot {
                return Err(Failure::Usage("dot output needs a persistent set".into()));
            } else if obj.contains_key("blocks") {
                to_json(&serde_json::from_value::<Partition>(v).map_err(json_err)?)
            } else {
                if io.pseudometric {
                    obj.insert("pseudometric".into(), Value::Bool(true));
                }
                to_json(&serde_json::from_value::<FiniteMetricSpace>(v).map_err(json_err)?)
            };
            emit(io.output.as_deref(), &text, stdout)?;
        }
    }
    Ok(0)
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure::Invalid(Error::Parse(e.to_string()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(stderr, "invalid input: {e}");
            EXIT_INVALID
        }
    }
}
