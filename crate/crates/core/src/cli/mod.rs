//! Command-line front end.
//!
//! [`run`] renders a command's output as a string so that the binary, the
//! self-test and the determinism checks share one code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::acceptance;
use crate::contact::cache::ContactCache;
use crate::contact::{contact_class, count_points, igusa_zeta, parse_f, plesym_check, ContactTable, TableOptions};
use crate::curve::{builtin, CurveSing};
use crate::error::{Error, Result};
use crate::hfl::hfl_poincare;
use crate::motring::MotClass;
use crate::polyexpr::MPoly;
use crate::qseries::{interpolate_endpoints, q_series_curve, q_series_smooth};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "motzeta", version, about = "Exact motivic invariants of plane curve singularities")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads for point counting.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Directory of the contact-class cache (default: $MOTZETA_CACHE_DIR if set).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Input {
    /// Builtin curve: smooth, node, cusp, cusp25.
    #[arg(long)]
    pub curve: Option<String>,
    /// Curve description in JSON.
    #[arg(long)]
    pub curve_file: Option<PathBuf>,
    /// Polynomial in x, y (and z when m = 3).
    #[arg(long)]
    pub f: Option<String>,
    /// Number of variables of --f.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
}

#[derive(Clone, Debug, Default, Args)]
pub struct ClassOptions {
    /// Use closed forms for f = x and f = xy instead of counting.
    #[arg(long)]
    pub closed_forms: bool,
    /// Comma-separated interpolation primes (the last one is held out).
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Canonical form of classes written in L.
    Ring {
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Gelfand-side Poincare series P_gel.
    Poincare {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        trunc: usize,
    },
    /// Motivic Igusa zeta function from contact-locus classes.
    Igusa {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        trunc: usize,
        #[command(flatten)]
        classes: ClassOptions,
    },
    /// Contact loci X_n.
    Contact {
        #[command(subcommand)]
        cmd: ContactCmd,
    },
    /// Orbifold sum against the plethystic exponential of Z_f.
    ExpIdentity {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        trunc: usize,
        #[command(flatten)]
        classes: ClassOptions,
    },
    /// Euler-characteristic specialization of P_gel.
    Alexander {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        trunc: usize,
    },
    /// Two-variable series Q_f(s, T).
    Qseries {
        #[command(flatten)]
        input: Input,
        /// Smooth germ through classical discriminants.
        #[arg(long)]
        smooth: bool,
        /// T-order for --smooth.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        /// Order of S-expansions.
        #[arg(long, default_value_t = 4)]
        sorder: usize,
        /// Compare s = 1/2 and s = 0 with P_gel and the Exp side.
        #[arg(long)]
        check_endpoints: bool,
    },
    /// Knot Floer homology of a single branch against P_gel.
    HflCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        trunc: usize,
    },
    /// Runs the acceptance suite.
    Selftest,
}

#[derive(Clone, Debug, Subcommand)]
pub enum ContactCmd {
    /// Number of F_p-points of X_n.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Class [X_n] by interpolation.
    Class {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
}

/// Exit status and rendered output of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    text: String,
    json: Value,
    pass: bool,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Rendered {
        Rendered { text, json, pass: true }
    }
}

enum Source {
    Curve(Box<CurveSing>),
    Poly(MPoly),
}

fn source(input: &Input) -> Result<Source> {
    let given = [input.curve.is_some(), input.curve_file.is_some(), input.f.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::InvalidInput(
            "give exactly one of --curve, --curve-file, --f".into(),
        ));
    }
    if let Some(name) = &input.curve {
        return Ok(Source::Curve(Box::new(builtin(name)?)));
    }
    if let Some(path) = &input.curve_file {
        let text = std::fs::read_to_string(path)?;
        let c = CurveSing::from_json_str(&text)?;
        c.validate()?;
        return Ok(Source::Curve(Box::new(c)));
    }
    Ok(Source::Poly(parse_f(input.f.as_deref().unwrap(), input.m)?))
}

fn need_curve(input: &Input) -> Result<CurveSing> {
    match source(input)? {
        Source::Curve(c) => Ok(*c),
        Source::Poly(_) => Err(Error::InvalidInput(
            "this command needs a curve (--curve or --curve-file)".into(),
        )),
    }
}

fn need_poly(input: &Input) -> Result<MPoly> {
    match source(input)? {
        Source::Poly(f) => Ok(f),
        Source::Curve(c) => c
            .f
            .clone()
            .ok_or_else(|| Error::InvalidInput(format!("curve `{}` has no defining polynomial", c.name))),
    }
}

fn table(cfg: &JobConfig, f: &MPoly, n: usize, opts: &ClassOptions) -> Result<ContactTable> {
    let mut cache = ContactCache::locate(cfg.cache.as_deref())?;
    ContactTable::build(
        f,
        n,
        TableOptions {
            use_builtin: opts.closed_forms,
            primes: opts.primes.clone(),
            cache: cache.as_mut(),
        },
    )
}

fn rational_series(c: &[BigRational]) -> String {
    let mut parts = Vec::new();
    for (n, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let t = match n {
            0 => String::new(),
            1 => "T".into(),
            _ => format!("T^{n}"),
        };
        let body = if n == 0 {
            x.to_string()
        } else if x.is_one() {
            t
        } else {
            format!("{x}*{t}")
        };
        parts.push(body);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn class_json(c: &MotClass) -> Value {
    let (num, den) = c.to_coeff_lists();
    json!({
        "num": num.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "den": den.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "text": c.to_string(),
    })
}

fn dispatch(cfg: &JobConfig) -> Result<Rendered> {
    match &cfg.command {
        Command::Ring { exprs } => {
            let mut text = String::new();
            let mut out = Vec::new();
            for e in exprs {
                let c: MotClass = e.parse()?;
                let chi = c.euler().ok();
                match &chi {
                    Some(x) => writeln!(text, "{c}    [chi = {x}]").unwrap(),
                    None => writeln!(text, "{c}    [chi undefined]").unwrap(),
                }
                let mut j = class_json(&c);
                j["input"] = json!(e);
                j["euler"] = json!(chi.map(|x| x.to_string()));
                out.push(j);
            }
            Ok(Rendered::ok(text, json!(out)))
        }
        Command::Poincare { input, trunc } => {
            let c = need_curve(input)?;
            let s = c.poincare_gel(*trunc)?;
            Ok(Rendered::ok(
                format!("{s}\n"),
                json!({ "curve": c.name, "trunc": trunc, "series": s.to_json(), "text": s.to_string() }),
            ))
        }
        Command::Igusa { input, trunc, classes } => {
            let f = need_poly(input)?;
            let t = table(cfg, &f, *trunc, classes)?;
            let z = igusa_zeta(&t, *trunc)?;
            let mut text = format!("Z_f(T) = {z}\n");
            let mut entries = Vec::new();
            for e in t.entries.values() {
                writeln!(text, "[X_{}] = {}    ({})", e.n, e.class, e.provenance).unwrap();
                entries.push(json!({
                    "n": e.n, "class": class_json(&e.class),
                    "provenance": e.provenance.to_string(), "primes": e.primes,
                }));
            }
            Ok(Rendered::ok(
                text,
                json!({ "f": f.to_string(), "m": f.nvars(), "zeta": z.to_json(), "text": z.to_string(), "classes": entries }),
            ))
        }
        Command::Contact { cmd: ContactCmd::Count { input, n, p } } => {
            let f = need_poly(input)?;
            let count = count_points(&f, *n, *p)?;
            Ok(Rendered::ok(
                format!("{count}\n"),
                json!({ "f": f.to_string(), "m": f.nvars(), "n": n, "p": p, "count": count.to_string() }),
            ))
        }
        Command::Contact { cmd: ContactCmd::Class { input, n, primes } } => {
            let f = need_poly(input)?;
            let e = contact_class(&f, *n, primes.as_deref())?;
            let ps: Vec<String> = e.primes.iter().map(|p| p.to_string()).collect();
            Ok(Rendered::ok(
                format!("{}    ({}; primes {})\n", e.class, e.provenance, ps.join(",")),
                json!({
                    "f": f.to_string(), "m": f.nvars(), "n": n, "class": class_json(&e.class),
                    "provenance": e.provenance.to_string(), "primes": e.primes,
                }),
            ))
        }
        Command::ExpIdentity { input, trunc, classes } => {
            let f = need_poly(input)?;
            let t = table(cfg, &f, *trunc, classes)?;
            let r = plesym_check(&t, *trunc)?;
            let good = r.equal.iter().filter(|&&b| b).count();
            let mut text = if r.pass() {
                format!("PASS: {good} coefficients equal\n")
            } else {
                format!("FAIL: {good} of {} coefficients equal\n", r.equal.len())
            };
            for (n, ok) in r.equal.iter().enumerate() {
                if !ok {
                    writeln!(text, "T^{n}: {} != {}", r.lhs.coeff(n), r.rhs.coeff(n)).unwrap();
                }
            }
            Ok(Rendered {
                text,
                json: json!({
                    "f": f.to_string(), "m": f.nvars(), "trunc": trunc, "pass": r.pass(),
                    "lhs": r.lhs.to_json(), "rhs": r.rhs.to_json(), "equal": r.equal,
                }),
                pass: r.pass(),
            })
        }
        Command::Alexander { input, trunc } => {
            let c = need_curve(input)?;
            let s = c.alexander_series(*trunc)?;
            Ok(Rendered::ok(
                format!("{}\n", rational_series(&s)),
                json!({ "curve": c.name, "trunc": trunc, "series": s.iter().map(|x| x.to_string()).collect::<Vec<_>>() }),
            ))
        }
        Command::Qseries { input, smooth, n, trunc, sorder, check_endpoints } => {
            qseries_cmd(cfg, input, *smooth, n.unwrap_or(*trunc), *sorder, *check_endpoints)
        }
        Command::HflCheck { input, trunc } => {
            let c = need_curve(input)?;
            let r = hfl_poincare(&c, *trunc)?;
            let mut text = String::from("d\tv\tdim\n");
            for ((d, v), dim) in &r.table {
                writeln!(text, "{d}\t{v}\t{dim}").unwrap();
            }
            writeln!(text, "HFL side: {}", r.series).unwrap();
            writeln!(text, "P_gel:    {}", r.gel).unwrap();
            writeln!(text, "{}", if r.pass() { "PASS" } else { "FAIL" }).unwrap();
            Ok(Rendered { text, json: r.to_json(), pass: r.pass() })
        }
        Command::Selftest => {
            let results = acceptance::run_all(&acceptance::Options { seed: cfg.seed });
            let mut text = String::new();
            for r in &results {
                writeln!(text, "{}", r.line()).unwrap();
            }
            let pass = results.iter().all(|r| r.pass);
            let json = json!(results.iter().map(|r| r.to_json()).collect::<Vec<_>>());
            Ok(Rendered { text, json, pass })
        }
    }
}

fn qseries_cmd(
    cfg: &JobConfig,
    input: &Input,
    smooth: bool,
    n_max: usize,
    sorder: usize,
    check: bool,
) -> Result<Rendered> {
    let curve = if smooth {
        if input.curve.is_some() || input.curve_file.is_some() || input.f.is_some() {
            return Err(Error::InvalidInput("--smooth takes no curve input".into()));
        }
        builtin("smooth")?
    } else {
        need_curve(input)?
    };
    let f = curve
        .f
        .clone()
        .ok_or_else(|| Error::InvalidInput(format!("curve `{}` has no defining polynomial", curve.name)))?;
    let t = table(cfg, &f, n_max, &ClassOptions::default())?;
    let out = if smooth || curve.name == "smooth" {
        q_series_smooth(n_max, sorder)?
    } else {
        q_series_curve(&t, n_max, sorder, cfg.seed)?
    };
    let mut text = out.series.to_string();
    for s in &out.sectors {
        let raw: Vec<String> = s
            .samples
            .iter()
            .map(|x| format!("p={}: {:?}", x.prime, x.raw_ords))
            .collect();
        writeln!(
            text,
            "sector {} of T^{}: ord Delta = {}    raw tau-orders {}",
            s.partition,
            s.n,
            s.ord_delta,
            raw.join("; ")
        )
        .unwrap();
    }
    let mut json = json!({
        "curve": curve.name,
        "series": out.series.to_json(),
        "sectors": serde_json::to_value(&out.sectors)?,
    });
    let mut pass = true;
    if check {
        let rep = interpolate_endpoints(&out.series, &curve, &t, n_max)?;
        write!(text, "{rep}").unwrap();
        writeln!(text, "{}", if rep.pass() { "PASS" } else { "FAIL" }).unwrap();
        json["endpoints"] = rep.to_json();
        json["pass"] = json!(rep.pass());
        pass = rep.pass();
    }
    Ok(Rendered { text, json, pass })
}

/// Runs one command on a pool of `cfg.jobs` workers.
pub fn run(cfg: &JobConfig) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: EXIT_ERROR,
                stdout: String::new(),
                stderr: format!("error: cannot start worker pool: {e}\n"),
            }
        }
    };
    match pool.install(|| dispatch(cfg)) {
        Ok(r) => {
            let stdout = match cfg.format {
                Format::Text => r.text,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&r.json).expect("json value")),
            };
            Outcome {
                code: if r.pass { EXIT_OK } else { EXIT_CHECK_FAILED },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: if e.is_usage() { EXIT_USAGE } else { EXIT_ERROR },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match JobConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_line(line: &str) -> Outcome {
        run_args(std::iter::once("motzeta").chain(line.split_whitespace()))
    }

    #[test]
    fn poincare_node() {
        let o = run_line("poincare --curve node --trunc 4");
        assert_eq!(o.code, 0);
        assert_eq!(
            o.stdout,
            "1 + ((L-1)/(L^2))*T^2 + ((2*L-2)/(L^3))*T^3 + ((3*L-3)/(L^4))*T^4 + O(T^5)\n"
        );
    }

    #[test]
    fn exp_identity_node() {
        let o = run_line("exp-identity --curve node --trunc 4");
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "PASS: 5 coefficients equal\n");
    }

    #[test]
    fn unknown_builtin_is_a_usage_error() {
        let o = run_line("poincare --curve bogus");
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("unknown builtin"));
    }

    #[test]
    fn input_sources_are_exclusive() {
        assert_eq!(run_line("poincare --curve node --f x*y").code, EXIT_USAGE);
        assert_eq!(run_line("poincare").code, EXIT_USAGE);
        assert_eq!(run_line("poincare --f x*y").code, EXIT_USAGE);
    }

    #[test]
    fn parse_errors_report_positions() {
        let o = run_line("ring (L-1");
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("position"), "{}", o.stderr);
    }

    #[test]
    fn hfl_on_node_is_out_of_scope() {
        let o = run_line("hfl-check --curve node");
        assert_eq!(o.code, EXIT_ERROR);
        assert!(o.stderr.contains("out of scope"));
    }

    #[test]
    fn json_series_round_trips() {
        let o = run_line("poincare --curve cusp --trunc 5 --format json");
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        let s = crate::series::MotSeries::from_json(&v["series"]).unwrap();
        assert_eq!(s, builtin("cusp").unwrap().poincare_gel(5).unwrap());
    }
}
