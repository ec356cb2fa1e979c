//! Command-line front end. Every command reads JSON objects in the
//! formats of the core library, writes canonical JSON (sorted keys,
//! reduced rationals) and follows one exit-code contract:
//!
//! * 0: success (and, for checks, the property holds),
//! * 1: a domain violation: invalid object, failed check, indices that
//!   do not bind against the object,
//! * 2: syntax: unreadable file, malformed JSON, schema mismatch, bad
//!   flag values.
//!
//! All randomness is derived from `--seed`, so identical invocations
//! produce identical bytes.

mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pervdisk::braid::{act, hurwitz_act, local_monodromies, total_monodromy, BraidWord};
use pervdisk::json::{to_canonical_pretty, to_canonical_string};
use pervdisk::plcalc::{pl_check, pl_triangle_k0, vanishing_total, ArcSpec};
use pervdisk::quiver::{hom_space, is_isomorphic, IsoVerdict, PervQuiver, QuiverMorphism};
use pervdisk::random::{random_cube, random_pair, random_quiver, random_word, rng_for};
use pervdisk::suite::run_all;
use pervdisk::sympair::{pair_to_quiver, quiver_to_pair};
use pervdisk::RatMatrix;

use input::{parse_word_letters, read_payload, ArcFile, Payload};

#[derive(Parser)]
#[command(name = "pervdisk", version, about = "Exact workbench for disk presentations")]
struct Cli {
    /// Master seed for every randomized command.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the JSON output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a file against the invariants of its kind.
    Validate { file: PathBuf },
    /// Apply a braid word to a quiver presentation.
    Act {
        file: PathBuf,
        /// Comma-separated letters, e.g. "1,-2,1".
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Local and total monodromy, ranks and twist determinants.
    Report { file: PathBuf },
    /// Check the wall-crossing identity for a crossing at --j.
    Plcheck {
        file: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        /// Coordinate change applied before reading off transitions.
        #[arg(long, default_value = "")]
        coords: String,
    },
    /// Transition matrix of an arc from --i to --k.
    Transition {
        file: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
        /// Detour the arc around this marked point.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value = "")]
        coords: String,
    },
    /// Dual presentation (quiver) or dual cube.
    Dual { file: PathBuf },
    /// Convert between the quiver and pair presentations.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Kind,
    },
    /// Basis of the space of maps between two presentations.
    Hom { left: PathBuf, right: PathBuf },
    /// Randomized isomorphism test between two presentations.
    Iso { left: PathBuf, right: PathBuf },
    /// Apply a braid word to a tuple of local monodromies.
    Hurwitz {
        file: PathBuf,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Check the edge shapes and face commutation of a double cube.
    CubeValidate { file: PathBuf },
    /// Emit a random valid object of the given kind.
    Rand {
        #[arg(long, value_enum)]
        kind: RandKind,
        /// Marked points (quiver), rank (cube), or strands (word).
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Upper bound for the space dimensions.
        #[arg(long, default_value_t = 3)]
        maxdim: usize,
        /// Word length (kind word only).
        #[arg(long, default_value_t = 6)]
        len: usize,
    },
    /// Run the randomized property suites and report pass/fail counts.
    Suite {
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Quiver,
    Pair,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandKind {
    Quiver,
    Pair,
    Cube,
    Word,
}

enum Failure {
    /// Exit 1: the object or the requested indices violate the domain.
    Domain(String),
    /// Exit 2: unreadable input, schema mismatch, malformed arguments.
    Schema(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Schema(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Schema(m) => m,
        }
    }
}

fn domain(e: impl ToString) -> Failure {
    Failure::Domain(e.to_string())
}

type Outcome = Result<(Value, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, code)) => {
            let body = if cli.pretty {
                to_canonical_pretty(&value)
            } else {
                to_canonical_string(&value)
            }
            .expect("output serializes");
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, body + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => println!("{body}"),
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Act { file, word } => cmd_act(file, word),
        Command::Report { file } => cmd_report(file),
        Command::Plcheck { file, i, j, k, coords } => cmd_plcheck(file, *i, *j, *k, coords),
        Command::Transition { file, i, k, j, coords } => cmd_transition(file, *i, *k, *j, coords),
        Command::Dual { file } => cmd_dual(file),
        Command::Convert { file, to } => cmd_convert(file, *to),
        Command::Hom { left, right } => cmd_hom(left, right),
        Command::Iso { left, right } => cmd_iso(left, right, cli.seed),
        Command::Hurwitz { file, word } => cmd_hurwitz(file, word),
        Command::CubeValidate { file } => cmd_cube_validate(file),
        Command::Rand { kind, n, maxdim, len } => cmd_rand(*kind, *n, *maxdim, *len, cli.seed),
        Command::Suite { trials } => cmd_suite(*trials, cli.seed),
    }
}

fn load(file: &Path) -> Result<Payload, Failure> {
    read_payload(file).map_err(Failure::Schema)
}

fn expect_quiver(payload: Payload, cmd: &str) -> Result<PervQuiver, Failure> {
    match payload {
        Payload::Quiver(q) => Ok(q),
        other => Err(Failure::Schema(format!(
            "{cmd} expects a quiver file, got a {} file",
            other.kind()
        ))),
    }
}

fn word_for(n: usize, letters: Vec<i32>) -> Result<BraidWord, Failure> {
    BraidWord::new(n, letters).map_err(domain)
}

fn letters_of(word: &str) -> Result<Vec<i32>, Failure> {
    parse_word_letters(word).map_err(Failure::Schema)
}

fn value_of<T: serde::Serialize>(object: &T) -> Value {
    serde_json::to_value(object).expect("object serializes")
}

fn verdict(kind: &str, violations: Vec<String>) -> (Value, u8) {
    if violations.is_empty() {
        (json!({"kind": kind, "valid": true}), 0)
    } else {
        (json!({"kind": kind, "valid": false, "violations": violations}), 1)
    }
}

fn arc_violations(arc: &ArcFile) -> Vec<String> {
    let mut out = Vec::new();
    for (name, idx) in [("i", Some(arc.i)), ("k", Some(arc.k)), ("detour", arc.detour)] {
        if idx == Some(0) {
            out.push(format!("index {name} must be 1-based"));
        }
    }
    if arc.i == arc.k || arc.detour == Some(arc.i) || arc.detour == Some(arc.k) {
        out.push("arc indices must be pairwise distinct".into());
    }
    if arc.coords.contains(&0) {
        out.push("coordinate word contains the letter 0".into());
    }
    out
}

fn cmd_validate(file: &Path) -> Outcome {
    let payload = load(file)?;
    let kind = payload.kind();
    let (value, code) = match payload {
        Payload::Quiver(q) => {
            verdict(kind, q.validate().iter().map(ToString::to_string).collect())
        }
        Payload::Pair(d) => verdict(kind, d.validate().iter().map(ToString::to_string).collect()),
        Payload::Cube(c) => verdict(kind, c.validate().iter().map(ToString::to_string).collect()),
        Payload::Braid(letters) => {
            let bad: Vec<String> = letters
                .iter()
                .enumerate()
                .filter(|(_, &k)| k == 0)
                .map(|(pos, _)| format!("letter {} is 0, not a generator", pos + 1))
                .collect();
            verdict(kind, bad)
        }
        Payload::Arc(arc) => verdict(kind, arc_violations(&arc)),
        Payload::Matrices(ms) => {
            let mut bad = Vec::new();
            for (pos, m) in ms.iter().enumerate() {
                if !m.is_square() {
                    bad.push(format!("entry {} is not square", pos + 1));
                } else if !m.is_invertible() {
                    bad.push(format!("entry {} is not invertible", pos + 1));
                }
            }
            verdict(kind, bad)
        }
    };
    Ok((value, code))
}

fn cmd_act(file: &Path, word: &str) -> Outcome {
    let q = expect_quiver(load(file)?, "act")?;
    let w = word_for(q.n(), letters_of(word)?)?;
    let moved = act(&q, &w).map_err(domain)?;
    Ok((value_of(&moved), 0))
}

fn cmd_report(file: &Path) -> Outcome {
    let q = expect_quiver(load(file)?, "report")?;
    q.require_valid().map_err(domain)?;
    let locals = local_monodromies(&q).map_err(domain)?;
    let total = total_monodromy(&q).map_err(domain)?;
    let dets: Vec<Value> = locals
        .iter()
        .map(|t| Ok(value_of(&t.det().map_err(domain)?)))
        .collect::<Result<_, Failure>>()?;
    Ok((
        json!({
            "local_monodromies": value_of(&locals),
            "total_monodromy": value_of(&total),
            "vanishing_total": vanishing_total(&q),
            "dets": dets,
        }),
        0,
    ))
}

fn cmd_plcheck(file: &Path, i: usize, j: usize, k: usize, coords: &str) -> Outcome {
    let q = expect_quiver(load(file)?, "plcheck")?;
    let w = word_for(q.n(), letters_of(coords)?)?;
    let tri = pl_triangle_k0(&q, i, j, k, &w).map_err(domain)?;
    let holds = tri.additivity_holds() && pl_check(&q, i, j, k, &w).map_err(domain)?;
    Ok((
        json!({
            "holds": holds,
            "direct": value_of(&tri.gamma_prime),
            "around": value_of(&tri.gamma),
            "through": value_of(&tri.composite),
        }),
        u8::from(!holds),
    ))
}

fn cmd_transition(file: &Path, i: usize, k: usize, j: Option<usize>, coords: &str) -> Outcome {
    let q = expect_quiver(load(file)?, "transition")?;
    let w = word_for(q.n(), letters_of(coords)?)?;
    let arc = match j {
        None => ArcSpec::direct(w, i, k),
        Some(j) => ArcSpec::around(w, i, j, k),
    };
    let m = pervdisk::plcalc::transition(&q, &arc).map_err(domain)?;
    Ok((value_of(&m), 0))
}

fn cmd_dual(file: &Path) -> Outcome {
    match load(file)? {
        Payload::Quiver(q) => {
            if !q.is_valid() {
                return Err(Failure::Domain("presentation is not valid; run validate".into()));
            }
            Ok((value_of(&q.verdier_dual()), 0))
        }
        Payload::Cube(c) => {
            if !c.is_valid() {
                return Err(Failure::Domain("cube is not valid; run cube-validate".into()));
            }
            Ok((value_of(&c.dual_cube()), 0))
        }
        other => Err(Failure::Schema(format!(
            "dual expects a quiver or cube file, got a {} file",
            other.kind()
        ))),
    }
}

fn cmd_convert(file: &Path, to: Kind) -> Outcome {
    let payload = load(file)?;
    match (payload, to) {
        (Payload::Quiver(q), Kind::Pair) => {
            Ok((value_of(&quiver_to_pair(&q).map_err(domain)?), 0))
        }
        (Payload::Pair(d), Kind::Quiver) => {
            Ok((value_of(&pair_to_quiver(&d).map_err(domain)?), 0))
        }
        (Payload::Quiver(q), Kind::Quiver) => Ok((value_of(&q), 0)),
        (Payload::Pair(d), Kind::Pair) => Ok((value_of(&d), 0)),
        (other, _) => Err(Failure::Schema(format!(
            "convert expects a quiver or pair file, got a {} file",
            other.kind()
        ))),
    }
}

fn morphism_value(m: &QuiverMorphism) -> Value {
    json!({
        "psi_map": value_of(&m.psi_map),
        "phi_maps": m.phi_maps.iter().map(value_of).collect::<Vec<_>>(),
    })
}

fn cmd_hom(left: &Path, right: &Path) -> Outcome {
    let q1 = expect_quiver(load(left)?, "hom")?;
    let q2 = expect_quiver(load(right)?, "hom")?;
    let basis = hom_space(&q1, &q2).map_err(domain)?;
    Ok((
        json!({
            "dim": basis.len(),
            "basis": basis.iter().map(morphism_value).collect::<Vec<_>>(),
        }),
        0,
    ))
}

fn cmd_iso(left: &Path, right: &Path, seed: u64) -> Outcome {
    let q1 = expect_quiver(load(left)?, "iso")?;
    let q2 = expect_quiver(load(right)?, "iso")?;
    match is_isomorphic(&q1, &q2, 32, seed).map_err(domain)? {
        IsoVerdict::Yes(m) => {
            Ok((json!({"verdict": "yes", "certificate": morphism_value(&m)}), 0))
        }
        IsoVerdict::No(reason) => Ok((json!({"verdict": "no", "reason": reason}), 1)),
        IsoVerdict::Unknown => Ok((json!({"verdict": "unknown"}), 1)),
    }
}

fn cmd_hurwitz(file: &Path, word: &str) -> Outcome {
    let ts: Vec<RatMatrix> = match load(file)? {
        Payload::Quiver(q) => {
            q.require_valid().map_err(domain)?;
            local_monodromies(&q).map_err(domain)?
        }
        Payload::Matrices(ms) => ms,
        other => Err(Failure::Schema(format!(
            "hurwitz expects a quiver or a matrix tuple, got a {} file",
            other.kind()
        )))?,
    };
    let w = word_for(ts.len(), letters_of(word)?)?;
    let moved = hurwitz_act(&ts, &w).map_err(domain)?;
    Ok((value_of(&moved), 0))
}

fn cmd_cube_validate(file: &Path) -> Outcome {
    match load(file)? {
        Payload::Cube(c) => {
            Ok(verdict("cube", c.validate().iter().map(ToString::to_string).collect()))
        }
        other => Err(Failure::Schema(format!(
            "cube-validate expects a cube file, got a {} file",
            other.kind()
        ))),
    }
}

fn cmd_rand(kind: RandKind, n: usize, maxdim: usize, len: usize, seed: u64) -> Outcome {
    if maxdim == 0 {
        return Err(Failure::Schema("--maxdim must be at least 1".into()));
    }
    match kind {
        RandKind::Quiver => {
            let q = random_quiver(&mut rng_for(seed, 1), n, maxdim, -3, 3);
            Ok((value_of(&q), 0))
        }
        RandKind::Pair => {
            let d = random_pair(&mut rng_for(seed, 2), maxdim, -2, 2);
            Ok((value_of(&d), 0))
        }
        RandKind::Cube => {
            if n > 8 {
                return Err(Failure::Schema(format!("cube rank {n} exceeds the supported 8")));
            }
            let c = random_cube(&mut rng_for(seed, 3), n, maxdim.min(3), -2, 2);
            Ok((value_of(&c), 0))
        }
        RandKind::Word => {
            if n < 2 {
                return Err(Failure::Schema("--kind word needs at least 2 strands".into()));
            }
            let w = random_word(&mut rng_for(seed, 4), n, len);
            // Words are emitted in the braid-file format (a bare letter
            // array), so the output can be fed back to other commands.
            Ok((json!(w.letters()), 0))
        }
    }
}

fn cmd_suite(trials: usize, seed: u64) -> Outcome {
    let reports = run_all(seed, trials);
    let failed = reports.iter().any(|r| !r.passed());
    Ok((value_of(&reports), u8::from(failed)))
}
