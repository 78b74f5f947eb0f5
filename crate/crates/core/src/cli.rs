//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and writes the whole output once at the end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abacus::{core_tuple, pbar_core, rank_from_tuple, CoreTuple};
use crate::compat::verify_w_compatible;
use crate::crystal::block_reduced_graph;
use crate::donovan::{donovan_bound, enumerate_representatives, reduce_core, rock_core};
use crate::error::{Error, Result};
use crate::lie::{cartan_data, level_matrix, LevelGrid};
use crate::partitions::{
    block_parity, content, parity, parse_parts, sample_p_strict, Modulus, PStrictPartition,
    StrictPartition,
};
use crate::scopes::{action_allowed, allowed_threshold, apply_k, apply_k_tuple, is_w_allowed};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "spinblock/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

const DEFAULT_BUDGET: &str = "2000000";

#[derive(Debug, Parser)]
#[command(
    name = "spinblock",
    version,
    about = "Spin block combinatorics: cores, crystals, Scopes actions and reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct Common {
    /// Odd prime modulus.
    #[arg(short, long, default_value_t = 5)]
    p: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p-bar core, weight, core tuple, parity and content of a partition.
    Core {
        #[command(flatten)]
        common: Common,
        /// Comma-separated parts, e.g. 12,11,7,6,4,2,1.
        partition: String,
    },
    /// The block-reduced crystal graph up to a block rank.
    Graph {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_rank: u32,
        /// Cap on partitions visited.
        #[arg(long, env = "SPINBLOCK_BUDGET", default_value = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Apply K_i to a partition or to a core tuple such as 2:0,3:0.
    Scopes {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        i: usize,
        target: String,
    },
    /// Whether K_i is a w-allowed action at a core tuple.
    Allowed {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        i: usize,
        #[arg(short)]
        w: u32,
        tuple: String,
    },
    /// Reduce a core tuple by w-allowed actions.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        w: u32,
        tuple: String,
    },
    /// The largest rank of an irreducible block of weight w.
    Bound {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        w: u32,
    },
    /// Irreducible cores within the level bound.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        w: u32,
        /// Cap on cores examined.
        #[arg(long, env = "SPINBLOCK_BUDGET", default_value = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Levels of the cores with coordinates in lo..=hi.
    LevelMatrix {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Check that (core, K_i(core)) is a w-compatible pair.
    VerifyCompat {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        i: usize,
        #[arg(short)]
        w: u32,
        /// A p-bar core as comma-separated parts.
        core: String,
        /// Cap on |core| + p·w.
        #[arg(long, default_value_t = 40)]
        max_rank: u32,
        /// Report wall-clock time (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Cartan data of the twisted affine algebra for p.
    Cartan {
        #[command(flatten)]
        common: Common,
    },
    /// Randomised check that K_i commutes with taking cores.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 40)]
        max_rank: u32,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => EXIT_BUDGET,
        Error::NotACore(_)
        | Error::Precondition(_)
        | Error::UnknownBlock(_)
        | Error::InconsistentParities(_) => EXIT_DOMAIN,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn modulus(common: &Common) -> Result<Modulus> {
    Modulus::new(common.p)
}

fn parse_tuple(s: &str, p: Modulus) -> Result<CoreTuple> {
    let c: CoreTuple = s.parse()?;
    if c.modulus() != p {
        return Err(Error::InvalidTuple(format!(
            "{s} has {} pairs but p={p} needs {}",
            c.t(),
            p.t()
        )));
    }
    Ok(c)
}

fn join_parts(parts: &[u32]) -> String {
    parts
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_partition(s: &str, p: Modulus) -> Result<PStrictPartition> {
    PStrictPartition::new(parse_parts(s)?, p)
}

fn expect_format(f: Format, allowed: &[Format]) -> Result<()> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        Err(Error::Parse(format!("format {f:?} is not supported here")))
    }
}

fn to_json<T: Serialize>(body: T) -> String {
    let mut v = serde_json::to_value(body).expect("serialisable");
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), SCHEMA.into());
    }
    let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
    s.push('\n');
    s
}

fn dispatch(cmd: Command) -> Result<String> {
    match cmd {
        Command::Core { common, partition } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Text])?;
            let lambda = parse_partition(&partition, p)?;
            let (core, w) = pbar_core(&lambda);
            let tuple = core_tuple(&core, p)?;
            let gamma = content(&lambda);
            if common.format == Format::Json {
                return Ok(to_json(json!({
                    "p": p,
                    "partition": lambda,
                    "core": core,
                    "weight": w,
                    "tuple": tuple,
                    "core_parity": parity(&core),
                    "block_parity": block_parity(&core, w),
                    "content": gamma,
                })));
            }
            let mut s = String::new();
            let _ = writeln!(s, "partition: {lambda}");
            let _ = writeln!(s, "core: {core}");
            let _ = writeln!(s, "weight: {w}");
            let _ = writeln!(s, "tuple: {tuple:?}");
            let _ = writeln!(s, "core parity: {}", parity(&core));
            let _ = writeln!(s, "block parity: {}", block_parity(&core, w));
            let _ = writeln!(s, "content: {:?}", gamma.0);
            Ok(s)
        }
        Command::Graph {
            common,
            max_rank,
            budget,
        } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Dot, Format::Text])?;
            let g = block_reduced_graph(p, max_rank, budget)?;
            Ok(match common.format {
                Format::Json => to_json(json!({
                    "p": p,
                    "max_rank": max_rank,
                    "graph": g.to_json(),
                })),
                Format::Dot => g.to_dot(),
                _ => {
                    let mut s = String::new();
                    for b in g.vertices() {
                        let _ = writeln!(s, "{b}");
                    }
                    for (a, b, i) in g.edges() {
                        let _ = writeln!(s, "{a} -{i}-> {b}");
                    }
                    s
                }
            })
        }
        Command::Scopes { common, i, target } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Text])?;
            if target.contains(':') {
                let c = parse_tuple(&target, p)?;
                let image = apply_k_tuple(i, &c)?;
                Ok(match common.format {
                    Format::Json => to_json(json!({
                        "p": p, "i": i, "tuple": c, "image": image,
                        "rank": rank_from_tuple(&c), "image_rank": rank_from_tuple(&image),
                    })),
                    _ => format!("{image}\n"),
                })
            } else {
                let lambda = parse_partition(&target, p)?;
                let image = apply_k(i, &lambda)?;
                Ok(match common.format {
                    Format::Json => to_json(json!({
                        "p": p, "i": i, "partition": lambda, "image": image,
                    })),
                    _ => format!("{}\n", join_parts(image.parts())),
                })
            }
        }
        Command::Allowed {
            common,
            i,
            w,
            tuple,
        } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Text])?;
            let c = parse_tuple(&tuple, p)?;
            let image = apply_k_tuple(i, &c)?;
            let threshold = allowed_threshold(i, &c)?;
            let here = is_w_allowed(i, &c, w)?;
            let action = action_allowed(i, &c, w)?;
            Ok(match common.format {
                Format::Json => to_json(json!({
                    "p": p, "i": i, "w": w, "tuple": c, "image": image,
                    "threshold": threshold, "allowed_here": here, "allowed": action,
                    "rank": rank_from_tuple(&c), "image_rank": rank_from_tuple(&image),
                })),
                _ => format!(
                    "K_{i}: {c:?} -> {image:?}\nthreshold: {threshold}\nallowed here: {here}\nallowed: {action}\n"
                ),
            })
        }
        Command::Reduce { common, w, tuple } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Text])?;
            let c = parse_tuple(&tuple, p)?;
            let trace = reduce_core(&c, w);
            Ok(match common.format {
                Format::Json => to_json(&trace),
                _ => {
                    let mut s = format!(
                        "{:?}  rank {}\n",
                        trace.start,
                        rank_from_tuple(&trace.start)
                    );
                    for st in &trace.steps {
                        let _ = writeln!(s, "  K_{} -> {:?}  rank {}", st.i, st.tuple, st.rank);
                    }
                    let _ = writeln!(s, "end: {:?}  rank {}", trace.end, trace.end_rank);
                    s
                }
            })
        }
        Command::Bound { common, w } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Text])?;
            let n = donovan_bound(p, w)?;
            Ok(match common.format {
                Format::Json => to_json(json!({
                    "p": p, "w": w, "bound": n, "rock_core": rock_core(p, w),
                })),
                _ => format!("{n}\n"),
            })
        }
        Command::Enumerate { common, w, budget } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Csv, Format::Text])?;
            let reps = enumerate_representatives(p, w, budget)?;
            Ok(match common.format {
                Format::Json => to_json(json!({
                    "p": p, "w": w, "representatives": reps,
                })),
                Format::Csv => {
                    let mut s = String::from("tuple,rank,level\n");
                    for r in &reps {
                        let _ = writeln!(s, "{},{},{}", r.tuple, r.rank, r.level);
                    }
                    s
                }
                _ => {
                    let mut s = String::new();
                    for r in &reps {
                        let _ = writeln!(s, "{:?}  rank {}  level {}", r.tuple, r.rank, r.level);
                    }
                    let _ = writeln!(s, "{} representatives", reps.len());
                    s
                }
            })
        }
        Command::LevelMatrix { common, lo, hi } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Csv, Format::Text])?;
            let grid = level_matrix(p, lo, hi)?;
            Ok(match common.format {
                Format::Json => to_json(json!({ "p": p, "grid": grid })),
                Format::Csv => grid.to_csv(),
                _ => match &grid {
                    LevelGrid::Matrix { rows, .. } => {
                        let width = rows
                            .iter()
                            .flatten()
                            .map(|x| x.to_string().len())
                            .max()
                            .unwrap_or(1);
                        let mut s = String::new();
                        for row in rows {
                            let cells: Vec<String> =
                                row.iter().map(|x| format!("{x:>width$}")).collect();
                            let _ = writeln!(s, "{}", cells.join(" "));
                        }
                        s
                    }
                    LevelGrid::Table { .. } => grid.to_csv(),
                },
            })
        }
        Command::VerifyCompat {
            common,
            i,
            w,
            core,
            max_rank,
            timing,
        } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Text])?;
            let nu = StrictPartition::new(parse_parts(&core)?)?;
            let start = Instant::now();
            let mut report = verify_w_compatible(&nu, i, w, p, max_rank)?;
            if timing {
                report.elapsed = Some(start.elapsed().as_secs_f64());
            }
            Ok(match common.format {
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("serialisable");
                    v["passed"] = report.passed().into();
                    to_json(v)
                }
                _ => {
                    let mut s = format!(
                        "nu: {}\nmu: {}\ni: {i}  w: {w}\nbijection: {}\npaths: {} checked, {} failures\nparity: {}\npassed: {}\n",
                        report.nu,
                        report.mu,
                        report.cond1,
                        report.cond2.checked,
                        report.cond2.total_failures,
                        report.cond3,
                        report.passed()
                    );
                    if let Some(t) = report.elapsed {
                        let _ = writeln!(s, "elapsed: {t:.3}s");
                    }
                    s
                }
            })
        }
        Command::Cartan { common } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Text])?;
            let cd = cartan_data(p);
            Ok(match common.format {
                Format::Json => to_json(json!({ "p": p, "cartan": cd })),
                _ => {
                    let mut s = String::from("C:\n");
                    for row in &cd.c_matrix {
                        let _ = writeln!(s, "  {row:?}");
                    }
                    s.push_str("B:\n");
                    for row in &cd.b_matrix {
                        let _ = writeln!(s, "  {row:?}");
                    }
                    let _ = writeln!(s, "delta: {:?}\nc: {:?}", cd.delta, cd.c);
                    s
                }
            })
        }
        Command::Sweep {
            common,
            seed,
            samples,
            max_rank,
        } => {
            let p = modulus(&common)?;
            expect_format(common.format, &[Format::Json, Format::Text])?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0u64;
            let mut failures = Vec::new();
            for _ in 0..samples {
                let lambda = sample_p_strict(&mut rng, p, max_rank);
                let (core, w) = pbar_core(&lambda);
                let c = core_tuple(&core, p)?;
                for i in 0..=p.t() {
                    let image = apply_k(i, &lambda)?;
                    let (icore, iw) = pbar_core(&image);
                    let want = apply_k_tuple(i, &c)?;
                    checked += 1;
                    if iw != w || core_tuple(&icore, p)? != want {
                        failures.push(json!({ "partition": lambda, "i": i }));
                    }
                }
            }
            Ok(match common.format {
                Format::Json => to_json(json!({
                    "p": p, "seed": seed, "samples": samples, "max_rank": max_rank,
                    "checked": checked, "failures": failures,
                })),
                _ => format!(
                    "checked {checked} (partition, i) pairs, {} failures\n",
                    failures.len()
                ),
            })
        }
    }
}
