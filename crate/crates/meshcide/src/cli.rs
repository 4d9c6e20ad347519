use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use meshcide_core::{
    avoiders, classify_family, decide_coincidence_with, default_depth, enclosed_diagonals,
    mesh_occurrences, shadeable_pairs, shadeable_singles, ssl_closure, ssl_moves,
    CoincidenceVerdict, DecideOptions, MeshPattern, PartitionOptions, Permutation, ShadeOption,
    VerdictStatus,
};
use serde_json::{json, Value};

use crate::json;
use crate::render::{render, Format};
use crate::report::{self, Report};

/// Longest host length accepted by `avoiders`.
const MAX_AVOIDER_LEN: usize = 10;
const CLOSURE_BUDGET: usize = 20_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "meshcide",
    version,
    about = "Mesh pattern containment and coincidence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "MESHCIDE_THREADS")]
    threads: Option<usize>,
    /// Fingerprint and refutation depth.
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=10))]
    max_n: Option<u8>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Whether a permutation contains a pattern, with the occurrence count.
    Contains {
        #[arg(value_parser = parse_pattern)]
        pattern: MeshPattern,
        #[arg(value_parser = parse_perm)]
        perm: Permutation,
    },
    /// Every occurrence of a pattern, as 1-based positions.
    Occurrences {
        #[arg(value_parser = parse_pattern)]
        pattern: MeshPattern,
        #[arg(value_parser = parse_perm)]
        perm: Permutation,
    },
    /// Permutations of length N avoiding a pattern.
    Avoiders {
        #[arg(value_parser = parse_pattern)]
        pattern: MeshPattern,
        #[arg(value_parser = clap::value_parser!(u8).range(1..=MAX_AVOIDER_LEN as i64))]
        n: u8,
        /// List the avoiders, not just their number.
        #[arg(long)]
        list: bool,
    },
    /// Enclosed diagonals.
    Enc {
        #[arg(value_parser = parse_pattern)]
        pattern: MeshPattern,
    },
    /// Family membership.
    Classify {
        #[arg(value_parser = parse_pattern)]
        pattern: MeshPattern,
    },
    /// Shadeable squares and pairs, or the meshes reachable by shading.
    Shade {
        #[arg(value_parser = parse_pattern)]
        pattern: MeshPattern,
        /// List every mesh proven coincident by shading and closure.
        #[arg(long)]
        closure: bool,
    },
    /// Decide coincidence of two patterns.
    Coincident {
        #[arg(value_parser = parse_pattern)]
        first: MeshPattern,
        #[arg(value_parser = parse_pattern)]
        second: MeshPattern,
        /// Disable the direct-sum rule.
        #[arg(long)]
        no_gamma: bool,
    },
    /// A permutation containing exactly one of two patterns.
    Witness {
        #[arg(value_parser = parse_pattern)]
        first: MeshPattern,
        #[arg(value_parser = parse_pattern)]
        second: MeshPattern,
    },
    /// Classify every mesh over a short permutation.
    Partition {
        #[arg(value_parser = parse_perm)]
        perm: Permutation,
        /// Cache file; reused when it verifies, rewritten otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Disable the direct-sum rule.
        #[arg(long)]
        no_gamma: bool,
    },
    /// Draw a pattern.
    Render {
        #[arg(value_parser = parse_pattern)]
        pattern: MeshPattern,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
}

fn parse_pattern(s: &str) -> Result<MeshPattern, String> {
    if s.trim_start().starts_with('{') {
        json::parse_pattern(s)
    } else {
        s.parse().map_err(|e: meshcide_core::Error| e.to_string())
    }
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e: meshcide_core::Error| e.to_string())
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => Outcome::ok(text),
                code => Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => return Outcome::usage(format!("error: --threads: {e}\n")),
    };
    pool.install(|| dispatch(&cli))
}

fn emit(cli: &Cli, value: Value, text: String) -> Outcome {
    if cli.json {
        Outcome::ok(value.to_string() + "\n")
    } else {
        Outcome::ok(text)
    }
}

fn depth(cli: &Cli, k: usize) -> usize {
    cli.max_n.map_or(default_depth(k), usize::from)
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Contains { pattern, perm } => {
            let n = mesh_occurrences(pattern, perm).len();
            emit(
                cli,
                json!({"contains": n > 0, "occurrences": n}),
                format!("{}\noccurrences {n}\n", n > 0),
            )
        }
        Command::Occurrences { pattern, perm } => {
            let occ = mesh_occurrences(pattern, perm);
            let text = occ.iter().map(|o| format!("{o}\n")).collect();
            let list: Vec<&[usize]> = occ.iter().map(|o| o.positions()).collect();
            emit(cli, json!({ "occurrences": list }), text)
        }
        Command::Avoiders { pattern, n, list } => {
            let found = avoiders(pattern, usize::from(*n));
            let mut text = format!("count {}\n", found.len());
            let mut value = json!({"n": n, "count": found.len()});
            if *list {
                for w in &found {
                    let _ = writeln!(text, "{w}");
                }
                let words: Vec<&[usize]> = found.iter().map(|w| w.word()).collect();
                value["avoiders"] = json!(words);
            }
            emit(cli, value, text)
        }
        Command::Enc { pattern } => {
            let diagonals = enclosed_diagonals(pattern);
            let text = diagonals.iter().map(|d| format!("{d}\n")).collect();
            emit(
                cli,
                Value::Array(diagonals.iter().map(json::diagonal).collect()),
                text,
            )
        }
        Command::Classify { pattern } => {
            let tags = classify_family(pattern);
            let enc = enclosed_diagonals(pattern).len();
            let fields = [
                ("vincular", tags.vincular),
                ("bivincular", tags.bivincular),
                ("isolating", tags.isolating),
                ("sparse", tags.sparse),
                ("classical", enc == 0),
            ];
            let mut value = json!({ "enclosed_diagonals": enc });
            let mut text = String::new();
            for (name, on) in fields {
                value[name] = json!(on);
                let _ = writeln!(text, "{name} {on}");
            }
            let _ = writeln!(text, "enclosed-diagonals {enc}");
            emit(cli, value, text)
        }
        Command::Shade { pattern, closure } => {
            if *closure {
                shade_closure(cli, pattern)
            } else {
                shade_options(cli, pattern)
            }
        }
        Command::Coincident {
            first,
            second,
            no_gamma,
        } => {
            let opts = DecideOptions {
                n_max: depth(cli, first.len().max(second.len())),
                gamma_rule: !no_gamma,
                ..DecideOptions::default()
            };
            let v = decide_coincidence_with(first, second, &opts);
            emit(cli, verdict_json(&v), verdict_text(&v))
        }
        Command::Witness { first, second } => {
            let opts = DecideOptions {
                n_max: depth(cli, first.len().max(second.len())),
                ..DecideOptions::default()
            };
            let v = decide_coincidence_with(first, second, &opts);
            let value = json!({
                "status": v.status.tag(),
                "witness": v.witness.as_ref().map(witness_json),
            });
            let text = match &v.witness {
                Some(w) => format!("{}\n", w.perm),
                None => format!("none ({})\n", v.status),
            };
            emit(cli, value, text)
        }
        Command::Partition {
            perm,
            out,
            no_gamma,
        } => partition(cli, perm, out.as_deref(), !no_gamma),
        Command::Render { pattern, format } => {
            let format = if cli.json { Format::Json } else { *format };
            Outcome::ok(render(pattern, format))
        }
    }
}

fn option_json(o: &ShadeOption) -> Value {
    json!({
        "point": [o.point.0, o.point.1],
        "shape": o.shape.kind(),
        "dir": o.shape.tag(),
        "squares": json::squares(o.squares),
    })
}

fn shade_options(cli: &Cli, pattern: &MeshPattern) -> Outcome {
    let options: Vec<ShadeOption> = shadeable_singles(pattern)
        .into_iter()
        .chain(shadeable_pairs(pattern))
        .collect();
    let moves = ssl_moves(pattern).len();
    let mut text = String::new();
    for o in &options {
        let _ = write!(
            text,
            "({},{}) {} {}",
            o.point.0,
            o.point.1,
            o.shape.kind(),
            o.shape.tag()
        );
        for s in o.squares.squares() {
            let _ = write!(text, " {s}");
        }
        text.push('\n');
    }
    let _ = writeln!(text, "moves {moves}");
    let value = json!({
        "options": options.iter().map(option_json).collect::<Vec<_>>(),
        "moves": moves,
    });
    emit(cli, value, text)
}

fn shade_closure(cli: &Cli, pattern: &MeshPattern) -> Outcome {
    let result = ssl_closure(pattern.perm(), &[pattern.mesh()], CLOSURE_BUDGET);
    let mut class = result.class_of(pattern.mesh()).unwrap_or_default();
    class.sort_by_key(|m| (m.len(), m.bits()));
    let members: Vec<MeshPattern> = class.iter().map(|&m| pattern.with_mesh(m)).collect();
    let mut text: String = members.iter().map(|m| format!("{m}\n")).collect();
    if !result.is_complete() {
        text.push_str("incomplete: budget exhausted\n");
    }
    let value = json!({
        "meshes": members.iter().map(json::pattern).collect::<Vec<_>>(),
        "complete": result.is_complete(),
    });
    emit(cli, value, text)
}

fn witness_json(w: &meshcide_core::Witness) -> Value {
    json!({
        "perm": w.perm.word(),
        "contains": if w.contains_first { "first" } else { "second" },
    })
}

fn verdict_json(v: &CoincidenceVerdict) -> Value {
    json!({
        "status": v.status.tag(),
        "depth": v.depth,
        "witness": v.witness.as_ref().map(witness_json),
        "trace": v.trace.as_ref().map(json::trace),
    })
}

fn verdict_text(v: &CoincidenceVerdict) -> String {
    let mut text = format!("{}\n", v.status);
    match v.status {
        VerdictStatus::Refuted => {
            if let Some(w) = &v.witness {
                let side = if w.contains_first { "first" } else { "second" };
                let _ = writeln!(
                    text,
                    "witness {} (contains the {side} pattern only)",
                    w.perm
                );
            }
        }
        VerdictStatus::ProvenCoincident => {
            for step in v.trace.iter().flat_map(|t| t.steps()) {
                let _ = writeln!(text, "  {step}");
            }
        }
        VerdictStatus::Undecided => {
            let _ = writeln!(text, "fingerprints agree through length {}", v.depth);
        }
        VerdictStatus::ProvenEqual => {}
    }
    text
}

fn partition(cli: &Cli, perm: &Permutation, out: Option<&std::path::Path>, gamma: bool) -> Outcome {
    let opts = PartitionOptions {
        n_max: cli.max_n.map(usize::from),
        gamma_rule: gamma,
        ..PartitionOptions::default()
    };
    let n_max = opts.depth_for(perm.len());
    let mut notes = String::new();
    let cached = match out.and_then(|path| report::load(path, perm, n_max, gamma)) {
        Some(Ok(r)) => Some(r),
        Some(Err(e)) => {
            let _ = writeln!(notes, "warning: ignoring cache: {e}");
            None
        }
        None => None,
    };
    let rep: Report = match cached {
        Some(r) => r,
        None => {
            let r = match report::compute(perm, &opts) {
                Ok(r) => r,
                Err(e) => return Outcome::usage(format!("error: {e}\n")),
            };
            if let Some(path) = out {
                if let Err(e) = std::fs::write(path, r.to_json_lines(true)) {
                    return Outcome {
                        code: 1,
                        stdout: String::new(),
                        stderr: format!("error: writing {}: {e}\n", path.display()),
                    };
                }
            }
            r
        }
    };
    let stdout = if cli.json {
        rep.to_json_lines(false)
    } else {
        rep.to_text()
    };
    Outcome {
        code: 0,
        stdout,
        stderr: notes,
    }
}
