use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use endtrace_core::freegroup::{spanning_tree, trace_word, Word};
use endtrace_core::graph::{build_family, complement_components, GraphFamily, ParamValue, Params};
use endtrace_core::homology::{commutator_length_with_cap, nonnullhomologous_report, CommLengthResult, DEFAULT_PAIRING_CAP};
use endtrace_core::invlimit::{check_coherence, letter_multiplicity, psi_family};
use endtrace_core::linalg::{gf2_rank, int_det, ladder_matrix, Gf2Matrix};
use endtrace_core::truncation::{builtin_loop, theta_trace, truncate, validate_loop, LoopSpec};
use endtrace_core::Error;

const MAX_LEVEL: usize = 16;
const PAIRING_CAP_VAR: &str = "ENDTRACE_PAIRING_CAP";

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "endtrace", version, about = "Finite-level invariants of loops in infinite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the quotient graph at a level
    Truncate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Count complement components at a level
    Ends {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Chord word of a loop at a level
    Trace {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        looped: LoopArgs,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Coherent family of a loop up to a level, with diagnostics
    Psi {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        looped: LoopArgs,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Commutator length of a word given as a JSON array of signed generators
    Commlength {
        #[arg(long)]
        word: String,
        /// Alphabet size; defaults to the largest generator used
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Determinant, GF(2) rank and commutator length of the ladder matrices
    LadderTable {
        #[arg(long, default_value_t = 1)]
        min: usize,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Commutator length and cycle-space checks of a loop, level by level
    HomologyReport {
        /// Built-in loop name
        #[arg(value_name = "LOOP", required_unless_present = "loop_file")]
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        loop_file: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// Built-in family: ladder, line, tree
    #[arg(long, default_value = "ladder", conflicts_with = "family_file")]
    family: String,
    /// Family parameter as key=value
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Table family in JSON
    #[arg(long)]
    family_file: Option<PathBuf>,
}

#[derive(Args)]
struct LoopArgs {
    /// Built-in loop name
    #[arg(long = "loop", required_unless_present = "loop_file")]
    name: Option<String>,
    /// Loop specification in JSON
    #[arg(long, conflicts_with = "name")]
    loop_file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn family_of(args: &FamilyArgs) -> Result<GraphFamily, Failure> {
    if let Some(path) = &args.family_file {
        let params = Params::from([("path".to_string(), ParamValue::Str(path.display().to_string()))]);
        return Ok(build_family("table", params)?);
    }
    let mut params = Params::new();
    for p in &args.params {
        let (k, v) = p.split_once('=').ok_or_else(|| usage(format!("parameter `{p}` is not key=value")))?;
        let value = v.parse::<i64>().map_or_else(|_| ParamValue::Str(v.to_string()), ParamValue::Int);
        params.insert(k.to_string(), value);
    }
    Ok(build_family(&args.family, params)?)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Core(Error::Malformed(format!("cannot read `{}`: {e}", path.display()))))
}

fn loop_of(name: &Option<String>, file: &Option<PathBuf>, family: &GraphFamily) -> Result<(String, LoopSpec), Failure> {
    let (label, spec) = match (name, file) {
        (Some(n), None) => (n.clone(), builtin_loop(n, family)?),
        (None, Some(p)) => (p.display().to_string(), LoopSpec::from_json(&read(p)?)?),
        _ => return Err(usage("give exactly one of a loop name or --loop-file")),
    };
    validate_loop(&spec, family)?;
    Ok((label, spec))
}

fn check_level(name: &str, n: usize) -> Result<(), Failure> {
    if n > MAX_LEVEL {
        return Err(usage(format!("{name} {n} exceeds the cap of {MAX_LEVEL}")));
    }
    Ok(())
}

fn pairing_cap() -> Result<u64, Failure> {
    match std::env::var(PAIRING_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{PAIRING_CAP_VAR}=`{v}` is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_PAIRING_CAP),
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = match format {
        Format::Json => "json",
        Format::Text => "text",
        Format::Dot => "dot",
    };
    usage(format!("`{command}` has no {name} output"))
}

fn family_header(f: &GraphFamily) -> Value {
    json!({ "name": f.name(), "params": f.params() })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Truncate { family, level, format } => {
            check_level("level", level)?;
            let f = family_of(&family)?;
            let q = truncate(&f, level)?;
            match format {
                Format::Dot => Ok(q.to_dot()),
                Format::Json => Ok(to_json(&json!({ "family": family_header(&f), "quotient": q }))),
                Format::Text => Err(unsupported(format, "truncate")),
            }
        }
        Command::Ends { family, level, horizon, format } => {
            check_level("level", level)?;
            let f = family_of(&family)?;
            let comps = complement_components(&f, level, horizon)?;
            match format {
                Format::Text => Ok(format!("{}\n", comps.len())),
                Format::Json => Ok(to_json(&json!({
                    "family": family_header(&f),
                    "level": level,
                    "horizon": horizon,
                    "count": comps.len(),
                    "components": comps,
                }))),
                Format::Dot => Err(unsupported(format, "ends")),
            }
        }
        Command::Trace { family, looped, level, format } => {
            check_level("level", level)?;
            let f = family_of(&family)?;
            let (label, spec) = loop_of(&looped.name, &looped.loop_file, &f)?;
            let path = theta_trace(&spec, &f, level)?;
            let tree = spanning_tree(&truncate(&f, level)?.graph)?;
            let word = trace_word(&path, &tree)?;
            let reduced = word.reduce();
            match format {
                Format::Text => Ok(format!("{}\n", reduced.as_word())),
                Format::Json => Ok(to_json(&json!({
                    "family": family_header(&f),
                    "loop": label,
                    "level": level,
                    "chords": tree.chords().iter().map(|c| c.edge.clone()).collect::<Vec<_>>(),
                    "path": path.steps,
                    "word": word,
                    "reduced": reduced,
                }))),
                Format::Dot => Err(unsupported(format, "trace")),
            }
        }
        Command::Psi { family, looped, max, format } => {
            check_level("max", max)?;
            let f = family_of(&family)?;
            let (label, spec) = loop_of(&looped.name, &looped.loop_file, &f)?;
            let fam = psi_family(&spec, &f, max)?;
            let coherence = check_coherence(&fam);
            let multiplicity = letter_multiplicity(&fam);
            match format {
                Format::Json => Ok(to_json(&json!({
                    "family": family_header(&f),
                    "loop": label,
                    "max_level": max,
                    "levels": fam.levels,
                    "chords": fam.chords,
                    "homs": fam.homs,
                    "coherence": coherence,
                    "multiplicity": multiplicity.values().collect::<Vec<_>>(),
                }))),
                Format::Text => {
                    let mut out = String::new();
                    for (n, w) in &fam.levels {
                        let _ = writeln!(out, "{n:<6} {}", w.as_word());
                    }
                    let verdict = match &coherence {
                        c if c.passed() => "coherent".to_string(),
                        endtrace_core::CoherenceReport::Fail { m, n, .. } => format!("incoherent at ({m}, {n})"),
                        _ => unreachable!(),
                    };
                    let _ = writeln!(out, "{verdict}");
                    for m in multiplicity.values() {
                        let counts: Vec<String> = m.counts.iter().map(usize::to_string).collect();
                        let _ = writeln!(out, "{} from {}: {}", m.edge, m.first_level, counts.join(" "));
                    }
                    Ok(out)
                }
                Format::Dot => Err(unsupported(format, "psi")),
            }
        }
        Command::Commlength { word, rank, format } => {
            let letters: Vec<i64> = serde_json::from_str(&word)
                .map_err(|e| Failure::Core(Error::Malformed(format!("word must be a JSON array of nonzero integers: {e}"))))?;
            let w = Word::from_signed(&letters, rank)?;
            let result = commutator_length_with_cap(&w, pairing_cap()?)?;
            let value = match &result {
                CommLengthResult::Finite { word, cl, witness, pairings_considered } => json!({
                    "word": word,
                    "pairings_considered": pairings_considered,
                    "cl": cl,
                    "witness": witness.pairs,
                }),
                CommLengthResult::NotInCommutatorSubgroup { word, exponent_sums } => json!({
                    "word": word,
                    "pairings_considered": 0,
                    "cl": Value::Null,
                    "witness": Value::Null,
                    "exponent_sums": exponent_sums,
                }),
            };
            match format {
                Format::Json => Ok(to_json(&value)),
                Format::Text => Ok(match result.value() {
                    Some(cl) => format!("{cl}\n"),
                    None => "not in the commutator subgroup\n".to_string(),
                }),
                Format::Dot => Err(unsupported(format, "commlength")),
            }
        }
        Command::LadderTable { min, max, format } => {
            if min < 1 || min > max {
                return Err(usage(format!("need 1 <= min <= max, got {min}..{max}")));
            }
            check_level("max", max)?;
            #[derive(Serialize)]
            struct Row {
                n: usize,
                det: i128,
                rank: usize,
                cl: usize,
            }
            let rows = (min..=max)
                .map(|n| {
                    let m = ladder_matrix(n)?;
                    let rank = gf2_rank(&Gf2Matrix::from_int(&m));
                    Ok(Row { n, det: int_det(&m)?, rank, cl: rank / 2 })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            match format {
                Format::Json => Ok(to_json(&json!({ "rows": rows }))),
                Format::Text => {
                    let mut out = String::from("n      det    rank   cl\n");
                    for r in &rows {
                        let _ = writeln!(out, "{:<6} {:<6} {:<6} {}", r.n, r.det, r.rank, r.cl);
                    }
                    Ok(out)
                }
                Format::Dot => Err(unsupported(format, "ladder-table")),
            }
        }
        Command::HomologyReport { name, loop_file, family, max, format } => {
            check_level("max", max)?;
            let f = family_of(&family)?;
            let (label, spec) = loop_of(&name, &loop_file, &f)?;
            let report = nonnullhomologous_report(&spec, &f, max, pairing_cap()?)?;
            match format {
                Format::Text => Ok(report.to_text()),
                Format::Json => Ok(to_json(&json!({
                    "family": family_header(&f),
                    "loop": label,
                    "max_level": max,
                    "rows": report.rows,
                    "nonnullhomologous_evidence": report.nonnullhomologous_evidence,
                }))),
                Format::Dot => Err(unsupported(format, "homology-report")),
            }
        }
    }
}

fn error_object(kind: &str, message: String, details: BTreeMap<&str, Value>) -> String {
    to_json(&json!({ "error": { "kind": kind, "message": message, "details": details } }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string().trim().to_string();
            eprint!("{}", error_object("usage", message, BTreeMap::new()));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(message)) => {
            eprint!("{}", error_object("usage", message, BTreeMap::new()));
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e)) => {
            let mut details = BTreeMap::new();
            let code = if let Error::PairingCapExceeded { count, cap } = &e {
                details.insert("count", json!(count));
                details.insert("cap", json!(cap));
                EXIT_CAP
            } else {
                EXIT_FAILURE
            };
            eprint!("{}", error_object(e.kind(), e.to_string(), details));
            ExitCode::from(code)
        }
    }
}
