//! `superpat`: command-line access to the superpattern, point set, drawing
//! and search pipelines.
//!
//! Exit status: 0 success, 1 domain error, 2 usage error, 3 indeterminate
//! search.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use superpat_core::perm::{enumerate_class, Permutation};
use superpat_core::plane_graph::random_maximal_plane_graph;
use superpat_core::search::{confirm_staged, StagedOutcome};
use superpat_core::superpattern::verify;
use superpat_core::{
    chessboard, draw, is_superpattern, majorize, minimal_superpattern_length, tree_augment, universal_pointset,
    xi, zeta, Budget, ClassTag, Error, PlaneGraph, SearchOutcome, SuperpatternSpec,
};

#[derive(Parser)]
#[command(name = "superpat", version, about = "Superpatterns for 213-avoiding permutations and universal point sets")]
struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation utilities.
    Perm {
        #[command(subcommand)]
        op: PermOp,
    },
    /// Indices majorizing a sequence within ξ, or terms of ξ and ζ.
    Majorize(MajorizeArgs),
    /// Build or verify a superpattern.
    Superpat {
        #[command(subcommand)]
        op: SuperpatOp,
    },
    /// Shorthand for `superpat build`.
    #[command(hide = true)]
    Build(ClassArgs),
    /// The universal point set for `n` vertices.
    Pointset {
        #[arg(long)]
        n: usize,
    },
    /// Draw a plane graph on the universal point set.
    Draw(DrawArgs),
    /// Tree augmentation and Strahler bound of a 213-avoiding permutation.
    Strahler {
        #[arg(long)]
        perm: String,
    },
    /// Exhaustive searches.
    Search {
        #[command(subcommand)]
        op: SearchOp,
    },
}

#[derive(Subcommand)]
enum PermOp {
    /// Runs, inverse, 213-avoidance and chessboard of a permutation.
    Info { perm: String },
    /// Positions of `pattern` in `perm`.
    Contains { perm: String, pattern: String },
    /// All members of a class of length `n`.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
    },
}

#[derive(Args)]
struct MajorizeArgs {
    /// Sequence to majorize.
    alpha: Vec<u64>,
    /// Print ξ_1..ξ_N and ζ_N instead.
    #[arg(long)]
    xi: Option<u64>,
}

#[derive(Args, Clone)]
struct ClassArgs {
    /// `213`, `213-312`, `213-132`, `213-3412` or `strahler-S`.
    #[arg(long, default_value = "213")]
    class: String,
    #[arg(long)]
    n: usize,
    /// Strahler bound; with `--class 213` selects `strahler-S`.
    #[arg(long)]
    s: Option<u32>,
}

#[derive(Subcommand)]
enum SuperpatOp {
    Build(ClassArgs),
    /// Embed every class member and re-check each witness.
    Verify(ClassArgs),
}

#[derive(Args)]
struct DrawArgs {
    /// Plane graph JSON; without it a random maximal plane graph on `--n`
    /// vertices is drawn.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drawing JSON; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// SVG units per exponent step.
    #[arg(long, default_value_t = 20.0)]
    scale: f64,
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, default_value = "213")]
    class: String,
    /// Comma-separated forbidden patterns, overriding `--class`; `none` for
    /// all permutations.
    #[arg(long, value_delimiter = ',')]
    avoid: Vec<String>,
    #[arg(long)]
    n: usize,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Subcommand)]
enum SearchOp {
    /// Shortest superpattern length.
    Minimal(SearchArgs),
    /// Two-stage optimality check of μ_n.
    Staged {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Whether a permutation is a superpattern of the class.
    Check {
        #[arg(long)]
        perm: String,
        #[command(flatten)]
        args: SearchArgs,
    },
}

enum Failure {
    Domain(String),
    Indeterminate,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    s.parse().map_err(|e: Error| Failure::Domain(format!("permutation {s:?}: {e}")))
}

fn class_tag(args: &ClassArgs) -> Result<ClassTag, Failure> {
    match args.s {
        Some(s) => Ok(ClassTag::Strahler(s)),
        None => Ok(args.class.parse()?),
    }
}

fn forbidden(args: &SearchArgs) -> Result<Vec<Permutation>, Failure> {
    if args.avoid == ["none"] {
        return Ok(Vec::new());
    }
    if !args.avoid.is_empty() {
        return args.avoid.iter().map(|s| parse_perm(s)).collect();
    }
    let tag: ClassTag = args.class.parse()?;
    tag.basis().ok_or_else(|| Failure::Domain(format!("class {tag} has no finite basis to search")))
}

fn budget(seconds: Option<f64>) -> Budget {
    seconds.map_or(Budget::unlimited(), Budget::seconds)
}

fn values(p: &Permutation) -> serde_json::Value {
    json!(p.values())
}

fn print_json(v: serde_json::Value) {
    println!("{v}");
}

fn run(cli: Cli) -> Outcome {
    let js = cli.json;
    match cli.command {
        Command::Perm { op } => match op {
            PermOp::Info { perm } => {
                let p = parse_perm(&perm)?;
                let runs: Vec<usize> = p.ascending_runs().iter().map(|r| r.len()).collect();
                let avoids = p.avoids_213();
                let board = if avoids { Some(chessboard(&p)?) } else { None };
                // Rows listed top first.
                let grid: Option<Vec<Vec<u32>>> = board
                    .as_ref()
                    .map(|b| (1..=b.rows()).rev().map(|r| (1..=b.cols()).map(|c| b.get(c, r)).collect()).collect());
                if js {
                    print_json(json!({
                        "perm": values(&p),
                        "inverse": values(&p.inverse()),
                        "runs": runs,
                        "avoids_213": avoids,
                        "chessboard": grid,
                    }));
                } else {
                    println!("perm {p}");
                    println!("inverse {}", p.inverse());
                    println!("runs {}", runs.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
                    println!("avoids_213 {avoids}");
                    for row in grid.unwrap_or_default() {
                        println!("{}", row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
                    }
                }
            }
            PermOp::Contains { perm, pattern } => {
                let (p, q) = (parse_perm(&perm)?, parse_perm(&pattern)?);
                let pos = p.contains(&q);
                if js {
                    print_json(json!({ "contains": pos.is_some(), "positions": pos }));
                } else {
                    match pos {
                        Some(pos) => println!("{}", pos.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")),
                        None => println!("none"),
                    }
                }
            }
            PermOp::Enumerate { class } => {
                let spec = SuperpatternSpec::new(class_tag(&class)?, class.n)?;
                let members = spec.members();
                if js {
                    print_json(json!(members.iter().map(Permutation::values).collect::<Vec<_>>()));
                } else {
                    for m in members {
                        println!("{m}");
                    }
                }
            }
        },
        Command::Majorize(args) => {
            if let Some(n) = args.xi {
                let terms: Vec<u64> = (1..=n).map(xi).collect::<Result<_, _>>()?;
                if js {
                    print_json(json!({ "xi": terms, "zeta": zeta(n) }));
                } else {
                    println!("{}", terms.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
                    println!("zeta {}", zeta(n));
                }
            } else {
                let idx = majorize(&args.alpha)?;
                if js {
                    print_json(json!({ "indices": idx }));
                } else {
                    println!("{}", idx.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
                }
            }
        }
        Command::Superpat { op: SuperpatOp::Build(args) } | Command::Build(args) => {
            let spec = SuperpatternSpec::new(class_tag(&args)?, args.n)?;
            let p = spec.build()?;
            if js {
                print_json(json!({ "class": spec.class.to_string(), "n": spec.n, "length": p.len(), "perm": values(&p) }));
            } else {
                println!("{p}");
            }
        }
        Command::Superpat { op: SuperpatOp::Verify(args) } => {
            let spec = SuperpatternSpec::new(class_tag(&args)?, args.n)?;
            let r = verify(&spec)?;
            let ok = r.counterexamples.is_empty();
            if js {
                print_json(json!({
                    "class": spec.class.to_string(),
                    "n": spec.n,
                    "length": r.length,
                    "checked": r.checked,
                    "counterexamples": r.counterexamples.iter().map(Permutation::values).collect::<Vec<_>>(),
                }));
            } else {
                println!("length {} checked {} counterexamples {}", r.length, r.checked, r.counterexamples.len());
                for c in &r.counterexamples {
                    println!("{c}");
                }
            }
            if !ok {
                return Err(Failure::Domain(format!("{} members failed to embed", r.counterexamples.len())));
            }
        }
        Command::Pointset { n } => {
            let pts = universal_pointset(n)?;
            if js {
                let q = pts.first().map_or(0, |p| p.q);
                let list: Vec<_> = pts.iter().map(|p| json!({ "x": p.x, "y_exp": p.e })).collect();
                print_json(json!({ "q": q, "points": list }));
            } else {
                for p in pts {
                    println!("{} {}", p.x, p.e);
                }
            }
        }
        Command::Draw(args) => {
            let g = match (&args.graph, args.n) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
                    PlaneGraph::from_json(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?
                }
                (None, Some(n)) => random_maximal_plane_graph(n, &mut ChaCha8Rng::seed_from_u64(args.seed)),
                (None, None) => return Err(Failure::Domain("draw needs --graph or --n".into())),
            };
            let d = draw(&g)?;
            let out = d.to_json();
            match &args.out {
                Some(path) => std::fs::write(path, &out).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?,
                None => println!("{out}"),
            }
            if let Some(path) = &args.svg {
                std::fs::write(path, d.to_svg(args.scale))
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            }
            if !d.crossing_free {
                return Err(Failure::Domain("drawing has crossings".into()));
            }
        }
        Command::Strahler { perm } => {
            let p = parse_perm(&perm)?;
            let a = tree_augment(&p)?;
            let s = a.strahler();
            if js {
                print_json(json!({ "strahler_upper_bound": s, "augmented": values(&a.perm), "real": a.real_mask }));
            } else {
                println!("{s}");
                println!("{}", a.perm);
            }
        }
        Command::Search { op } => match op {
            SearchOp::Minimal(args) => {
                let f = forbidden(&args)?;
                let r = minimal_superpattern_length(&f, args.n, budget(args.budget));
                if js {
                    print_json(r.to_json());
                } else {
                    match &r.outcome {
                        SearchOutcome::Determined { length, .. } => println!("{length}"),
                        SearchOutcome::Indeterminate { reason, lower_bound } => {
                            println!("indeterminate (>= {lower_bound}): {reason}")
                        }
                    }
                }
                if r.answer().is_none() {
                    return Err(Failure::Indeterminate);
                }
            }
            SearchOp::Staged { n, budget: b } => {
                let r = confirm_staged(n, budget(b))?;
                if js {
                    print_json(serde_json::to_value(&r).expect("report serializes"));
                } else {
                    match &r.outcome {
                        StagedOutcome::Confirmed { optimal } => println!("confirmed {optimal} ({} candidates)", r.candidates),
                        StagedOutcome::Refuted { witness } => println!("refuted {witness}"),
                        StagedOutcome::Indeterminate { reason } => println!("indeterminate: {reason}"),
                    }
                }
                match r.outcome {
                    StagedOutcome::Indeterminate { .. } => return Err(Failure::Indeterminate),
                    StagedOutcome::Refuted { .. } => return Err(Failure::Domain("a shorter superpattern exists".into())),
                    StagedOutcome::Confirmed { .. } => {}
                }
            }
            SearchOp::Check { perm, args } => {
                let p = parse_perm(&perm)?;
                let f = forbidden(&args)?;
                let yes = is_superpattern(&p, &f, args.n);
                let size = enumerate_class(args.n, &f).len();
                if js {
                    print_json(json!({ "superpattern": yes, "class_size": size }));
                } else {
                    println!("{yes}");
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Some(t) = std::env::var("SUPERPAT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Indeterminate) => ExitCode::from(3),
    }
}
