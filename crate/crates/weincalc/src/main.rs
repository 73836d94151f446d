//! Command-line surface: exact Weingarten/ascension/descension/Gram tables,
//! moment evaluation, verification suites, and Monte Carlo estimates.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use weincalc::algebra::ClassFunction;
use weincalc::engine::{
    ascension, descension, gram_function, pseudo_weingarten, weingarten_by_ladder, weingarten_rat,
    weingarten_sym, WgRoute,
};
use weincalc::error::{Error, Result};
use weincalc::exact::rational::{rat, to_f64, Rat};
use weincalc::exact::scalar::Scalar;
use weincalc::exact::RatFunc;
use weincalc::moments::eval::{moment_rat, moment_sym, moment_u_recursive, moment_u_weingarten};
use weincalc::moments::query::{MomentQuery, Target};
use weincalc::sampler::{estimate_moment, SamplerConfig, DEFAULT_RESAMPLE_EPSILON};
use weincalc::sym::character::symmetric_group;
use weincalc::sym::partition::Partition;
use weincalc::verify::{run_all, run_suite, Check, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "weincalc",
    version,
    about = "Exact Weingarten calculus on the unitary group",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Also print decimal approximations of exact rationals
    #[arg(long, global = true)]
    decimal: bool,

    /// Write the output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Character expansion (default)
    Char,
    /// Dense Gram-matrix solve
    Gram,
    /// Dimension recursion with the equal-degree kernel base
    Recursive,
    /// Full ladder from dimension 1
    Ladder,
}

#[derive(Args)]
struct DimArgs {
    /// Degree k of the symmetric group S_k
    #[arg(short, long)]
    k: usize,

    /// Concrete dimension n
    #[arg(short, long, required_unless_present = "symbolic", conflicts_with = "symbolic")]
    n: Option<i64>,

    /// Treat the dimension as the formal symbol n
    #[arg(long)]
    symbolic: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Weingarten function Wg_{k,n}
    Wg {
        #[command(flatten)]
        dim: DimArgs,
        /// Computation route
        #[arg(long, value_enum, default_value_t = Route::Char)]
        route: Route,
    },
    /// Canonical pseudo-Weingarten W_{k,n} (defined for every k, n >= 1)
    PseudoWg {
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        n: i64,
    },
    /// Ascension function of degree k
    Raise {
        #[command(flatten)]
        dim: DimArgs,
    },
    /// Descension function of degree k (needs k <= n)
    Lower {
        #[command(flatten)]
        dim: DimArgs,
    },
    /// Gram function G_{k,n}(pi) = n^(number of cycles)
    Gram {
        #[command(flatten)]
        dim: DimArgs,
    },
    /// Evaluate a moment query such as "p[1,2]^2 p~[n,2]^2 r[2,2]^3"
    Moment {
        /// Product of entry tokens; p/r entries mix, u stands alone
        query: String,
        /// Concrete dimension (omit for a symbolic p/r moment)
        #[arg(short, long)]
        n: Option<i64>,
        /// For u-queries: evaluate by the dimension recursion instead of the
        /// Weingarten sum
        #[arg(long)]
        recursive: bool,
    },
    /// Run a verification suite (or "all")
    Verify {
        /// Suite name
        suite: String,
        /// Degree bound override
        #[arg(long, visible_alias = "k")]
        kmax: Option<usize>,
        /// Dimension bound override
        #[arg(long, visible_alias = "n")]
        nmax: Option<i64>,
        /// Randomized-check count override
        #[arg(long)]
        count: Option<usize>,
        /// Seed for randomized checks
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Monte Carlo estimate of a moment, with the exact value and z-score
    /// when the query is exactly computable
    Sample {
        query: String,
        #[arg(short, long)]
        n: i64,
        /// Number of samples
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads
        #[arg(long, env = "WEINCALC_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Emit a table of class-function values over a dimension range
    Table {
        /// Which function to tabulate
        #[arg(value_enum)]
        object: TableObject,
        #[arg(short, long)]
        k: usize,
        /// Inclusive range "lo..hi" of dimensions
        #[arg(long, value_name = "LO..HI", required_unless_present = "symbolic", conflicts_with = "symbolic")]
        n_range: Option<String>,
        /// Tabulate the symbolic values instead
        #[arg(long)]
        symbolic: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableObject {
    Wg,
    Raise,
    Lower,
    Gram,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(failed_checks) => {
            if failed_checks {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

struct Output {
    buffer: String,
    out: Option<PathBuf>,
}

impl Output {
    fn new(out: Option<PathBuf>) -> Self {
        Output {
            buffer: String::new(),
            out,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.buffer.push_str(s.as_ref());
        self.buffer.push('\n');
    }

    fn finish(self) -> Result<()> {
        match self.out {
            None => {
                print!("{}", self.buffer);
                Ok(())
            }
            Some(path) => std::fs::write(&path, self.buffer).map_err(|source| Error::Io {
                context: format!("writing {}", path.display()),
                source,
            }),
        }
    }
}

fn class_label(ct: &Partition) -> String {
    if ct.parts().iter().all(|&p| p == 1) {
        "e".to_string()
    } else {
        format!("({ct})")
    }
}

/// Renders a class function in the chosen format; rows in reverse-lex
/// cycle-type order.
fn render_class_function<S: Scalar>(
    f: &ClassFunction<S>,
    fmt: Format,
    decimal: bool,
    out: &mut Output,
) -> Result<()> {
    let group = symmetric_group(f.degree());
    match fmt {
        Format::Human => {
            for (ct, v) in group.classes().iter().zip(f.values()) {
                let mut line = format!("{}: {v}", class_label(ct));
                if decimal {
                    if let Some(d) = decimal_of(v) {
                        let _ = write!(line, " (~ {d:.12})");
                    }
                }
                out.line(line);
            }
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&f.to_json()).expect("serializable");
            out.line(json);
        }
        Format::Csv => {
            out.line("cycle_type,value");
            for (ct, v) in group.classes().iter().zip(f.values()) {
                out.line(format!("\"{ct}\",{v}"));
            }
        }
    }
    Ok(())
}

fn decimal_of<S: Scalar>(v: &S) -> Option<f64> {
    // only plain rationals have a meaningful decimal form
    v.to_string().parse::<Rat>().ok().map(|r| to_f64(&r))
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("expected LO..HI, got '{text}'")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad range start: {e}")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad range end: {e}")))?;
    if lo > hi {
        return Err(Error::Parse(format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn class_function_for(object: TableObject, k: usize, n: i64) -> Result<ClassFunction<Rat>> {
    match object {
        TableObject::Wg => weingarten_rat(k, n, WgRoute::CharacterExpansion),
        TableObject::Raise => ascension(k, &rat(n)),
        TableObject::Lower => descension(k, &rat(n)),
        TableObject::Gram => Ok(gram_function(k, &rat(n))),
    }
}

fn class_function_sym(object: TableObject, k: usize) -> Result<ClassFunction<RatFunc>> {
    let n = RatFunc::var();
    match object {
        TableObject::Wg => weingarten_sym(k, WgRoute::CharacterExpansion),
        TableObject::Raise => ascension(k, &n),
        TableObject::Lower => descension(k, &n),
        TableObject::Gram => Ok(gram_function(k, &n)),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let mut out = Output::new(cli.out.clone());
    let mut any_failed = false;
    match cli.command {
        Command::Wg { dim, route } => {
            if dim.symbolic {
                let wg_route = match route {
                    Route::Char => WgRoute::CharacterExpansion,
                    Route::Gram => WgRoute::GramInverse,
                    Route::Recursive => WgRoute::RecursiveAscension,
                    Route::Ladder => {
                        return Err(Error::Domain(
                            "the ladder route is numeric; use --route char for symbolic output"
                                .into(),
                        ))
                    }
                };
                let f = weingarten_sym(dim.k, wg_route)?;
                render_class_function(&f, cli.format, cli.decimal, &mut out)?;
            } else {
                let n = dim.n.expect("clap enforces -n without --symbolic");
                let f = match route {
                    Route::Char => weingarten_rat(dim.k, n, WgRoute::CharacterExpansion)?,
                    Route::Gram => weingarten_rat(dim.k, n, WgRoute::GramInverse)?,
                    Route::Recursive => weingarten_rat(dim.k, n, WgRoute::RecursiveAscension)?,
                    Route::Ladder => weingarten_by_ladder(dim.k, n)?,
                };
                render_class_function(&f, cli.format, cli.decimal, &mut out)?;
            }
        }
        Command::PseudoWg { k, n } => {
            let f = pseudo_weingarten(k, n)?;
            render_class_function(&f, cli.format, cli.decimal, &mut out)?;
        }
        Command::Raise { dim } => {
            if dim.symbolic {
                render_class_function(
                    &ascension(dim.k, &RatFunc::var())?,
                    cli.format,
                    cli.decimal,
                    &mut out,
                )?;
            } else {
                let n = dim.n.expect("clap");
                render_class_function(&ascension(dim.k, &rat(n))?, cli.format, cli.decimal, &mut out)?;
            }
        }
        Command::Lower { dim } => {
            if dim.symbolic {
                render_class_function(
                    &descension(dim.k, &RatFunc::var())?,
                    cli.format,
                    cli.decimal,
                    &mut out,
                )?;
            } else {
                let n = dim.n.expect("clap");
                render_class_function(&descension(dim.k, &rat(n))?, cli.format, cli.decimal, &mut out)?;
            }
        }
        Command::Gram { dim } => {
            if dim.symbolic {
                render_class_function(
                    &gram_function(dim.k, &RatFunc::var()),
                    cli.format,
                    cli.decimal,
                    &mut out,
                )?;
            } else {
                let n = dim.n.expect("clap");
                render_class_function(&gram_function(dim.k, &rat(n)), cli.format, cli.decimal, &mut out)?;
            }
        }
        Command::Moment {
            query,
            n,
            recursive,
        } => {
            let q = MomentQuery::parse(&query)?;
            match n {
                Some(n) => {
                    let value = if q.target()? == Target::U && recursive {
                        moment_u_recursive(&q, n)?
                    } else if q.target()? == Target::U {
                        moment_u_weingarten(&q, n)?
                    } else {
                        moment_rat(&q, n)?
                    };
                    emit_moment(
                        &mut out,
                        cli.format,
                        cli.decimal,
                        &q,
                        Some(n),
                        &value.to_string(),
                        Some(to_f64(&value)),
                    );
                }
                None => {
                    let value = moment_sym(&q)?;
                    emit_moment(&mut out, cli.format, false, &q, None, &value.to_string(), None);
                }
            }
        }
        Command::Verify {
            suite,
            kmax,
            nmax,
            count,
            seed,
        } => {
            let opts = VerifyOptions {
                k_max: kmax,
                n_max: nmax,
                count,
                seed,
            };
            let batches: Vec<(String, Vec<Check>)> = if suite == "all" {
                run_all(&opts)
            } else {
                vec![(suite.clone(), run_suite(&suite, &opts)?)]
            };
            any_failed = emit_verify(&mut out, cli.format, &batches);
        }
        Command::Sample {
            query,
            n,
            samples,
            seed,
            workers,
        } => {
            let q = MomentQuery::parse(&query)?;
            let config = SamplerConfig {
                seed,
                samples,
                workers,
                resample_epsilon: DEFAULT_RESAMPLE_EPSILON,
            };
            let est = estimate_moment(&q, n, &config)?;
            let exact = moment_rat(&q, n).ok();
            emit_sample(&mut out, cli.format, &est, exact.as_ref());
        }
        Command::Table {
            object,
            k,
            n_range,
            symbolic,
        } => {
            emit_table(&mut out, cli.format, object, k, n_range, symbolic)?;
        }
    }
    out.finish()?;
    Ok(any_failed)
}

fn emit_moment(
    out: &mut Output,
    fmt: Format,
    decimal: bool,
    query: &MomentQuery,
    n: Option<i64>,
    value: &str,
    approx: Option<f64>,
) {
    match fmt {
        Format::Human => {
            let mut line = format!("{query} = {value}");
            if decimal {
                if let Some(a) = approx {
                    let _ = write!(line, " (~ {a:.12})");
                }
            }
            out.line(line);
        }
        Format::Json => {
            let payload = serde_json::json!({
                "query": query.to_string(),
                "n": n,
                "value": value,
                "decimal": approx,
            });
            out.line(serde_json::to_string_pretty(&payload).expect("serializable"));
        }
        Format::Csv => {
            out.line("query,n,value");
            let n_text = n.map(|v| v.to_string()).unwrap_or_else(|| "n".into());
            out.line(format!("\"{query}\",{n_text},{value}"));
        }
    }
}

fn emit_verify(out: &mut Output, fmt: Format, batches: &[(String, Vec<Check>)]) -> bool {
    let mut failed = 0usize;
    let mut total = 0usize;
    match fmt {
        Format::Json => {
            let rows: Vec<serde_json::Value> = batches
                .iter()
                .flat_map(|(suite, checks)| {
                    checks.iter().map(move |c| {
                        serde_json::json!({
                            "suite": suite,
                            "check": c.name,
                            "pass": c.pass,
                            "detail": c.detail,
                        })
                    })
                })
                .collect();
            for (_, checks) in batches {
                total += checks.len();
                failed += checks.iter().filter(|c| !c.pass).count();
            }
            let _ = total;
            out.line(serde_json::to_string_pretty(&rows).expect("serializable"));
        }
        _ => {
            for (suite, checks) in batches {
                for c in checks {
                    total += 1;
                    if c.pass {
                        out.line(format!("ok   {suite}: {}", c.name));
                    } else {
                        failed += 1;
                        out.line(format!("FAIL {suite}: {} — {}", c.name, c.detail));
                    }
                }
            }
            out.line(format!("{total} checks, {failed} failed"));
        }
    }
    failed > 0
}

fn emit_sample(
    out: &mut Output,
    fmt: Format,
    est: &weincalc::sampler::MomentEstimate,
    exact: Option<&Rat>,
) {
    let exact_text = exact.map(|e| e.to_string());
    let z = exact.map(|e| est.z_score(to_f64(e)));
    match fmt {
        Format::Json => {
            let payload = serde_json::json!({
                "query": est.query,
                "n": est.n,
                "N": est.samples,
                "seed": est.seed,
                "mean": { "re": est.mean_re, "im": est.mean_im },
                "stderr": est.standard_error,
                "exact": exact_text,
                "z_score": z,
            });
            out.line(serde_json::to_string_pretty(&payload).expect("serializable"));
        }
        Format::Csv => {
            out.line("query,n,N,seed,mean_re,mean_im,stderr,exact,z_score");
            out.line(format!(
                "\"{}\",{},{},{},{},{},{},{},{}",
                est.query,
                est.n,
                est.samples,
                est.seed,
                est.mean_re,
                est.mean_im,
                est.standard_error,
                exact_text.unwrap_or_default(),
                z.map(|v| v.to_string()).unwrap_or_default()
            ));
        }
        Format::Human => {
            out.line(format!("query   {}", est.query));
            out.line(format!("n       {}", est.n));
            out.line(format!("N       {}", est.samples));
            out.line(format!("seed    {}", est.seed));
            out.line(format!("mean    {:.10} + {:.10}i", est.mean_re, est.mean_im));
            out.line(format!("stderr  {:.3e}", est.standard_error));
            if let (Some(text), Some(z)) = (exact_text, z) {
                out.line(format!("exact   {text}"));
                out.line(format!("z       {z:.3}"));
            }
        }
    }
}

fn emit_table(
    out: &mut Output,
    fmt: Format,
    object: TableObject,
    k: usize,
    n_range: Option<String>,
    symbolic: bool,
) -> Result<()> {
    if symbolic {
        let f = class_function_sym(object, k)?;
        match fmt {
            Format::Json => {
                out.line(serde_json::to_string_pretty(&f.to_json()).expect("serializable"));
            }
            _ => {
                out.line("cycle_type,value");
                let group = symmetric_group(k);
                for (ct, v) in group.classes().iter().zip(f.values()) {
                    out.line(format!("\"{ct}\",{v}"));
                }
            }
        }
        return Ok(());
    }
    let (lo, hi) = parse_range(&n_range.expect("clap enforces range without --symbolic"))?;
    match fmt {
        Format::Json => {
            let mut rows = Vec::new();
            for n in lo..=hi {
                let f = class_function_for(object, k, n)?;
                rows.push(serde_json::json!({ "n": n, "table": f.to_json() }));
            }
            out.line(serde_json::to_string_pretty(&rows).expect("serializable"));
        }
        _ => {
            out.line("n,cycle_type,value");
            let group = symmetric_group(k);
            for n in lo..=hi {
                let f = class_function_for(object, k, n)?;
                for (ct, v) in group.classes().iter().zip(f.values()) {
                    out.line(format!("{n},\"{ct}\",{v}"));
                }
            }
        }
    }
    Ok(())
}
