//! Command line front end: validation, invariants, classification, action
//! existence and counting, the two pinned residue sets, and box sweeps.
//!
//! Output is text by default; `--json` or `SEVEN_OUTPUT=json` switches to
//! one compact JSON value per line. Exit codes: 0 on success (including a
//! negative `admits` answer), 1 when the domain rejects the input (the
//! library error is echoed verbatim on stderr), 2 on usage errors.

use std::fmt::Display;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use seven::{
    admits_action, circle_bundle_invariants, classify_diffeo, classify_homeo, core_invariants,
    count_actions_certified, enumerate_theta, sphere_action_set, tangent_bundle_action_set,
    validate_theta, Category, ClassificationResult, CoreManifold, ManifoldDescriptor, ThetaClass,
};

#[derive(Parser)]
#[command(name = "seven", version, about = "Invariants, classification and circle-action counting for 2-connected 7-manifolds")]
struct Cli {
    /// Emit JSON instead of text (overrides SEVEN_OUTPUT).
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Cat {
    Top,
    Diff,
}

impl From<Cat> for Category {
    fn from(cat: Cat) -> Category {
        match cat {
            Cat::Top => Category::Top,
            Cat::Diff => Category::Diff,
        }
    }
}

/// Unvalidated orbit-space quadruple as typed on the command line;
/// realizability is checked by the library so that a bad literal is a
/// usage error (exit 2) while an unrealizable class is a domain error
/// (exit 1).
#[derive(Clone, Copy)]
struct ThetaArg {
    k: i64,
    p: i64,
    eps: i64,
    delta: i64,
}

impl FromStr for ThetaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = split_ints(s, 4, "k,p,eps,delta")?;
        Ok(ThetaArg { k: parts[0], p: parts[1], eps: parts[2], delta: parts[3] })
    }
}

/// Unvalidated core triple l,k,c; same split of parse versus domain
/// errors as for theta literals.
#[derive(Clone, Copy)]
struct CoreArg {
    l: i64,
    k: i64,
    c: i64,
}

impl FromStr for CoreArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = split_ints(s, 3, "l,k,c")?;
        Ok(CoreArg { l: parts[0], k: parts[1], c: parts[2] })
    }
}

fn split_ints(s: &str, arity: usize, shape: &str) -> Result<Vec<i64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != arity {
        return Err(format!("expected {shape}, got {s:?}"));
    }
    parts
        .iter()
        .map(|part| part.trim().parse::<i64>().map_err(|_| format!("expected {shape}, got {s:?}")))
        .collect()
}

/// Flags shared by the verbs that take a manifold descriptor.
#[derive(Args)]
struct DescriptorArgs {
    /// Manifold category.
    #[arg(long, value_enum)]
    cat: Cat,

    /// Model core as l,k,c.
    #[arg(long, allow_hyphen_values = true)]
    core: CoreArg,

    /// Number of S^3 x S^4 summands (must be even).
    #[arg(long, default_value_t = 0)]
    rank: u32,

    /// Number of exotic 7-sphere summands (smooth category only).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    exotic: i64,
}

impl DescriptorArgs {
    fn build(&self) -> seven::Result<ManifoldDescriptor> {
        let core = CoreManifold::new(self.core.l, self.core.k, self.core.c)?;
        ManifoldDescriptor::new(self.rank, core, self.exotic, self.cat.into())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that k,p,eps,delta is a realizable orbit-space class.
    Validate {
        /// Orbit-space class as k,p,eps,delta.
        #[arg(long, allow_hyphen_values = true)]
        theta: ThetaArg,
    },

    /// Invariants of the circle-bundle total space of a class.
    BundleInvariants {
        #[arg(long, value_enum)]
        cat: Cat,
        #[arg(long, allow_hyphen_values = true)]
        theta: ThetaArg,
    },

    /// Invariants of a model core M^c_{l,k}.
    CoreInvariants {
        #[arg(long, value_enum)]
        cat: Cat,
        /// Model core as l,k,c.
        #[arg(long, allow_hyphen_values = true)]
        core: CoreArg,
    },

    /// Normal form of the total space of a class.
    Classify {
        #[arg(long, value_enum)]
        cat: Cat,
        #[arg(long, allow_hyphen_values = true)]
        theta: ThetaArg,
        /// Show the raw exotic count even where a torsion-free core
        /// would absorb it.
        #[arg(long)]
        no_absorb: bool,
    },

    /// Decide whether a described manifold admits a regular circle action.
    Admits(DescriptorArgs),

    /// Count the orbit-space classes realizing a described manifold.
    Count(DescriptorArgs),

    /// Exotic-sphere summands r for which S^7 # Sigma_r admits an action.
    ListSpheres,

    /// Summands r for which (unit tangent bundle of S^4) # Sigma_r admits
    /// an action.
    ListTangent,

    /// Classify every realizable class with |k| <= kmax and |p| <= pmax.
    Sweep {
        #[arg(long, value_enum)]
        cat: Cat,
        #[arg(long)]
        kmax: i64,
        #[arg(long)]
        pmax: i64,
        /// Worker threads for the sweep; any value produces identical
        /// output.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn chosen_format(json_flag: bool) -> Format {
    if json_flag || std::env::var("SEVEN_OUTPUT").is_ok_and(|v| v == "json") {
        Format::Json
    } else {
        Format::Text
    }
}

fn emit<T: Serialize + ?Sized>(format: Format, value: &T, text: impl Display) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string(value).expect("library types serialize"))
        }
        Format::Text => println!("{text}"),
    }
}

fn classify_in(theta: &ThetaClass, category: Category) -> seven::Result<ClassificationResult> {
    match category {
        Category::Top => Ok(classify_homeo(theta)),
        Category::Diff => classify_diffeo(theta),
    }
}

fn classification_text(res: &ClassificationResult, category: Category) -> String {
    match category {
        Category::Top => format!("{} m={}", res.descriptor, res.witness_m),
        Category::Diff => {
            format!("{} m={} raw={}", res.descriptor, res.witness_m, res.exotic_raw)
        }
    }
}

/// Swap the descriptor's exotic count for the raw classification value,
/// undoing the absorption a torsion-free core applies.
fn unabsorbed(res: &ClassificationResult) -> ClassificationResult {
    let descriptor = ManifoldDescriptor::new(
        res.descriptor.rank(),
        res.descriptor.core(),
        res.exotic_raw,
        res.descriptor.category(),
    )
    .expect("replacing the exotic count keeps the descriptor valid");
    ClassificationResult { descriptor, ..*res }
}

fn run(cli: &Cli) -> seven::Result<()> {
    let format = chosen_format(cli.json);
    match &cli.command {
        Command::Validate { theta } => {
            let theta = validate_theta(theta.k, theta.p, theta.eps, theta.delta)?;
            emit(format, &theta, format_args!("valid {theta}"));
        }

        Command::BundleInvariants { cat, theta } => {
            let theta = validate_theta(theta.k, theta.p, theta.eps, theta.delta)?;
            let tuple = circle_bundle_invariants(&theta, (*cat).into())?;
            emit(format, &tuple, &tuple);
        }

        Command::CoreInvariants { cat, core } => {
            let core = CoreManifold::new(core.l, core.k, core.c)?;
            let tuple = core_invariants(&core, (*cat).into())?;
            emit(format, &tuple, &tuple);
        }

        Command::Classify { cat, theta, no_absorb } => {
            let theta = validate_theta(theta.k, theta.p, theta.eps, theta.delta)?;
            let mut res = classify_in(&theta, (*cat).into())?;
            if *no_absorb {
                res = unabsorbed(&res);
            }
            emit(format, &res, classification_text(&res, (*cat).into()));
        }

        Command::Admits(args) => {
            let descriptor = args.build()?;
            match admits_action(&descriptor) {
                Some(witness) => emit(
                    format,
                    &witness,
                    format_args!("{} rank {}", witness.theta, witness.rank),
                ),
                None => emit(format, &(), "none"),
            }
        }

        Command::Count(args) => {
            let descriptor = args.build()?;
            let cert = count_actions_certified(&descriptor)?;
            let text = match cert.period {
                Some(period) => format!(
                    "{} (witness {} rank {}, period {period})",
                    cert.count, cert.witness.theta, cert.witness.rank
                ),
                None => {
                    format!("{} (witness {} rank {})", cert.count, cert.witness.theta, cert.witness.rank)
                }
            };
            emit(format, &cert, text);
        }

        Command::ListSpheres => {
            let set: Vec<u8> = sphere_action_set().into_iter().collect();
            emit(format, &set, join(&set));
        }

        Command::ListTangent => {
            let set: Vec<u8> = tangent_bundle_action_set().into_iter().collect();
            emit(format, &set, join(&set));
        }

        Command::Sweep { cat, kmax, pmax, threads } => {
            sweep((*cat).into(), *kmax, *pmax, *threads, format)?;
        }
    }
    Ok(())
}

fn join(set: &[u8]) -> String {
    set.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct SweepRow {
    theta: ThetaClass,
    descriptor: ManifoldDescriptor,
    witness_m: i64,
    exotic_raw: i64,
}

/// One output line per realizable class in the box, in the enumeration
/// order (k, then p, then flags). The k-range is split into contiguous
/// chunks handled by worker threads and the chunks are printed in order,
/// so the output bytes do not depend on the thread count.
fn sweep(
    category: Category,
    kmax: i64,
    pmax: i64,
    threads: usize,
    format: Format,
) -> seven::Result<()> {
    // Surface range errors eagerly, with the same wording as validation.
    validate_theta(kmax, pmax, 0, 0).map(|_| ()).or_else(|err| match err {
        seven::Error::CongruenceViolated { .. } => Ok(()),
        other => Err(other),
    })?;

    let ks: Vec<i64> = (-kmax..=kmax).collect();
    let chunk_size = ks.len().div_ceil(threads.max(1));
    let chunks: Vec<&[i64]> = ks.chunks(chunk_size.max(1)).collect();

    let rendered: Vec<Vec<String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut lines = Vec::new();
                    for &k in *chunk {
                        for theta in enumerate_theta(k..=k, -pmax..=pmax) {
                            if category == Category::Diff && theta.delta() == 1 {
                                continue;
                            }
                            let res = classify_in(&theta, category)
                                .expect("delta = 0 classes classify in either category");
                            let line = match format {
                                Format::Json => serde_json::to_string(&SweepRow {
                                    theta,
                                    descriptor: res.descriptor,
                                    witness_m: res.witness_m,
                                    exotic_raw: res.exotic_raw,
                                })
                                .expect("sweep rows serialize"),
                                Format::Text => format!(
                                    "{theta} -> {}",
                                    classification_text(&res, category)
                                ),
                            };
                            lines.push(line);
                        }
                    }
                    lines
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for lines in rendered {
        for line in lines {
            // A closed pipe (e.g. piping into head) just ends the sweep.
            if writeln!(out, "{line}").is_err() {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::FAILURE
        }
    }
}
