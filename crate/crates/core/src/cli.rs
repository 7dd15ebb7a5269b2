//! Command-line front end. `run` parses arguments, dispatches to the library
//! and renders a report; the binary only maps errors to exit codes.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::bounds::{self, ModuleClass, Theorem};
use crate::error::{Error, Result};
use crate::fq::Fq;
use crate::heights::{self, TorsionStatus};
use crate::irreducible::count_irreducibles;
use crate::parse::{parse_apoly, parse_kpoly};
use crate::point::AlgebraicPoint;
use crate::rational::{fmt_decimal, fmt_rational, parse_rational};
use crate::resultant::DEFAULT_SYLVESTER_LIMIT;
use crate::supersingular::density_report;
use crate::transcendence::{self, SiegelSystem};
use crate::DrinfeldModule;

#[derive(Parser, Debug)]
#[command(name = "drinfeld", version, about = "Heights, supersingular censuses and explicit bounds for Drinfeld modules over F_q(T)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; defaults to the --out extension, else pretty.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Ceiling on Sylvester matrix dimensions.
    #[arg(long, global = true, default_value_t = DEFAULT_SYLVESTER_LIMIT)]
    pub sylvester_limit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Jsonl,
    Csv,
    Pretty,
}

#[derive(Args, Debug)]
pub struct ModuleArg {
    /// `carlitz(q=Q)` or a module TOML file.
    #[arg(long, default_value = "carlitz(q=2)")]
    pub module: String,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub module: ModuleArg,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, default_value = "1")]
    pub r: String,
    #[arg(long, default_value = "1/2")]
    pub c1: String,
    #[arg(long, default_value_t = 1)]
    pub eta: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weil height of a point, or of the module when no point is given.
    Height {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        module: Option<String>,
        /// Minimal polynomial in X over A, or a TOML file with `minpoly`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Canonical height interval at a given depth.
    CanonicalHeight {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Torsion search followed by canonical-height certification.
    Torsion {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long)]
        point: String,
        /// Largest degree of the annihilator searched.
        #[arg(long, default_value_t = 4)]
        search: usize,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Supersingular census per degree, one row per N.
    SsScan(ScanArgs),
    /// Census with configuration, bad-reduction primes and a summary verdict.
    RvReport(ScanArgs),
    /// Auxiliary polynomial vanishing to order t at a point.
    AuxPoly {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long)]
        point: String,
        #[arg(long = "L")]
        l: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Supersingular prime for the l-adic vanishing check.
        #[arg(long)]
        vanish_at: Option<String>,
        #[arg(long, default_value_t = 0)]
        h_prime: usize,
    },
    /// Small A-solutions of a linear system over k(x).
    Siegel {
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// The point x; entries are polynomials in X reduced modulo its minimal polynomial.
        #[arg(long, default_value = "X")]
        point: String,
        /// One equation, entries separated by ';'.
        #[arg(long)]
        row: Vec<String>,
        /// Unknown count, needed only when no rows are given.
        #[arg(long)]
        unknowns: Option<usize>,
        /// TOML file with `point` and `rows`.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Solve `count` seeded random systems instead.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 1)]
        equations: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        max_deg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Explicit constants, lower bound and parameter choices.
    Bounds {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value = "1")]
        h_phi: String,
        #[arg(long, default_value = "1")]
        c_phi: String,
        #[arg(long, default_value = "1")]
        r: String,
        #[arg(long, default_value_t = 1)]
        theorem: u32,
        #[arg(long = "D")]
        big_d: String,
        #[arg(long = "D-pi", default_value = "1")]
        d_pi: String,
        #[arg(long)]
        n_phi: Option<String>,
    },
    /// All points of degree ≤ D and height ≤ χ.
    EnumeratePoints {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long = "D")]
        big_d: usize,
        #[arg(long)]
        chi: usize,
    },
    /// Number of monic irreducibles of degree n over F_q.
    CountIrreducibles {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
}

/// A rendered-agnostic report: a JSON document, optional table rows and a
/// human-readable summary.
#[derive(Clone, Debug)]
pub struct Report {
    pub value: Value,
    pub rows: Option<Vec<Value>>,
    pub text: String,
}

/// Parses the arguments (including the program name), runs, and renders.
pub fn run<I, T>(args: I) -> std::result::Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(CliError::Usage)?;
    let format = resolve_format(&cli);
    let report = execute(&cli).map_err(CliError::Run)?;
    let out = render(&report, format).map_err(CliError::Run)?;
    if let Some(path) = &cli.out {
        std::fs::write(path, &out).map_err(|e| CliError::Run(e.into()))?;
        return Ok(String::new());
    }
    Ok(out)
}

fn resolve_format(cli: &Cli) -> Format {
    if cli.json {
        return Format::Json;
    }
    if let Some(f) = cli.format {
        return f;
    }
    match cli.out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        Some("jsonl") => Format::Jsonl,
        Some("csv") => Format::Csv,
        _ => Format::Pretty,
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(clap::Error),
    Run(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) => e.exit_code(),
            CliError::Run(e) => e.exit_code(),
        }
    }
}

/// Entry point of the binary.
pub fn main_with_args(args: Vec<OsString>) -> i32 {
    match run(args) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let limit = cli.sylvester_limit;
    match &cli.command {
        Command::Height { q, module, point } => height(*q, module.as_deref(), point.as_deref()),
        Command::CanonicalHeight { module, point, depth } => {
            let phi = load_module(&module.module)?;
            let x = load_point(phi.fq(), point)?;
            let i = heights::canonical_height_with_limit(&x, &phi, *depth, limit)?;
            let text = format!(
                "ĥ ∈ [{}, {}] (estimate {} ± {}, depth {})\n",
                fmt_rational(&i.lower()),
                fmt_rational(&i.upper()),
                fmt_rational(&i.estimate),
                fmt_rational(&i.error),
                i.n
            );
            Ok(Report { value: interval_json(&i), rows: None, text })
        }
        Command::Torsion { module, point, search, depth } => {
            let phi = load_module(&module.module)?;
            let x = load_point(phi.fq(), point)?;
            let st = heights::torsion_status(&x, &phi, *search, *depth)?;
            let (value, text) = match &st {
                TorsionStatus::Torsion(a) => (
                    json!({"status": "torsion", "witness": a.to_string()}),
                    format!("Torsion({a})"),
                ),
                TorsionStatus::NonTorsionCertified(i) => (
                    json!({"status": "non_torsion_certified", "interval": interval_json(i)}),
                    format!("NonTorsionCertified([{}, {}])", fmt_rational(&i.lower()), fmt_rational(&i.upper())),
                ),
                TorsionStatus::Unknown(i) => (
                    json!({"status": "unknown", "interval": i.as_ref().map(interval_json)}),
                    "Unknown".to_string(),
                ),
            };
            Ok(Report { value, rows: None, text: text + "\n" })
        }
        Command::SsScan(a) => scan(a, false),
        Command::RvReport(a) => scan(a, true),
        Command::AuxPoly { module, point, l, t, stride, vanish_at, h_prime } => {
            let phi = load_module(&module.module)?;
            let x = load_point(phi.fq(), point)?;
            aux_poly(&phi, &x, *l, *t, *stride, vanish_at.as_deref(), *h_prime)
        }
        Command::Siegel { q, point, row, unknowns, system, random, equations, count, max_deg, seed } => {
            let fq = Fq::with_order(*q)?;
            if *random {
                let x = load_point(fq, point)?;
                let n = unknowns.ok_or_else(|| Error::invalid("--random needs --unknowns"))?;
                return siegel_random(&x, *equations, n, *max_deg, *count, *seed);
            }
            let sys = match system {
                Some(path) => load_system(fq, path)?,
                None => {
                    let x = load_point(fq, point)?;
                    let rows = row
                        .iter()
                        .map(|r| r.split(';').map(|e| parse_kpoly(fq, e.trim())).collect())
                        .collect::<Result<Vec<Vec<_>>>>()?;
                    let n = match (rows.first(), unknowns) {
                        (Some(r), _) => r.len(),
                        (None, Some(n)) => *n,
                        (None, None) => return Err(Error::invalid("give --row or --unknowns")),
                    };
                    SiegelSystem::new(&x, n, rows)?
                }
            };
            let sol = transcendence::siegel_solve(&sys)?;
            let xs: Vec<String> = sol.x.iter().map(|v| v.to_string()).collect();
            let text = format!(
                "x = ({})\ndelta = {} (bound {})\n",
                xs.join(", "),
                sol.delta,
                fmt_rational(&sol.bound)
            );
            Ok(Report { value: serde_json::to_value(&sol).unwrap(), rows: None, text })
        }
        Command::Bounds { q, d, h_phi, c_phi, r, theorem, big_d, d_pi, n_phi } => {
            let class = ModuleClass::new(*q, *d, parse_rational(h_phi)?, parse_rational(c_phi)?, parse_rational(r)?)?;
            let dd = parse_bigint(big_d, "D")?;
            let d_pi = parse_bigint(d_pi, "D_pi")?;
            let n_phi = n_phi.as_deref().map(|s| parse_bigint(s, "N_phi")).transpose()?;
            bounds_report(&class, Theorem::from_number(*theorem)?, &dd, &d_pi, n_phi.as_ref())
        }
        Command::EnumeratePoints { q, big_d, chi } => {
            let fq = Fq::with_order(*q)?;
            let res = heights::northcott_enumerate(fq, *big_d, *chi)?;
            let bound = bounds::northcott_bound(*q, *big_d as u64, *chi as u64)?;
            let rows: Vec<Value> = res
                .points
                .iter()
                .map(|p| {
                    json!({
                        "minpoly": p.to_string(),
                        "D": p.degree(),
                        "height": fmt_rational(&heights::point_height(p)),
                    })
                })
                .collect();
            let value = json!({
                "q": q, "D": big_d, "chi": chi,
                "count": res.root_count,
                "minimal_polynomials": res.points.len(),
                "candidates": res.candidates,
                "northcott_bound_log_q": bound.log_q,
                "points": rows,
            });
            let text = format!(
                "{} points ({} minimal polynomials), bound {}\n",
                res.root_count,
                res.points.len(),
                bound
            );
            Ok(Report { value, rows: Some(rows), text })
        }
        Command::CountIrreducibles { q, n } => {
            let c = count_irreducibles(*q, *n)?;
            Ok(Report {
                value: json!({"q": q, "n": n, "count": c.to_string()}),
                rows: None,
                text: format!("{c}\n"),
            })
        }
    }
}

fn height(q: Option<u32>, module: Option<&str>, point: Option<&str>) -> Result<Report> {
    let phi = module.map(load_module).transpose()?;
    let fq = match (&phi, q) {
        (Some(m), Some(q)) if m.fq().q() != q => {
            return Err(Error::invalid(format!("--q {q} disagrees with the module over F_{}", m.fq().q())))
        }
        (Some(m), _) => m.fq(),
        (None, Some(q)) => Fq::with_order(q)?,
        (None, None) => return Err(Error::invalid("give --q or --module")),
    };
    match (point, &phi) {
        (Some(p), _) => {
            let x = load_point(fq, p)?;
            let h = heights::point_height(&x);
            Ok(Report {
                value: json!({
                    "point": x.to_string(),
                    "D": x.degree(), "D_sep": x.d_sep(), "D_pi": x.d_pi(),
                    "height": fmt_rational(&h),
                    "decimal": fmt_decimal(&h, 6),
                }),
                rows: None,
                text: format!("{}\n", fmt_rational(&h)),
            })
        }
        (None, Some(m)) => {
            let h = heights::module_height(m);
            let g = heights::gamma_bound(m);
            Ok(Report {
                value: json!({
                    "module": m.describe(),
                    "height": fmt_rational(&h),
                    "gamma_bound": fmt_rational(&g),
                }),
                rows: None,
                text: format!("{}\n", fmt_rational(&h)),
            })
        }
        (None, None) => Err(Error::invalid("give --point or --module")),
    }
}

fn interval_json(i: &heights::HeightInterval) -> Value {
    json!({
        "estimate": fmt_rational(&i.estimate),
        "error": fmt_rational(&i.error),
        "lower": fmt_rational(&i.lower()),
        "upper": fmt_rational(&i.upper()),
        "n": i.n,
    })
}

fn scan(a: &ScanArgs, full: bool) -> Result<Report> {
    let phi = load_module(&a.module.module)?;
    let r = parse_rational(&a.r)?;
    let c1 = parse_rational(&a.c1)?;
    let rep = density_report(&phi, a.n_max, &r, &c1, a.eta, a.workers)?;
    let rows: Vec<Value> = rep.rows.iter().map(|r| serde_json::to_value(r).unwrap()).collect();
    let mut text = String::new();
    for row in &rep.rows {
        text += &format!(
            "N={} ss={}/{} ratio={} rv={} chebotarev={} satisfied={}{}\n",
            row.n,
            row.count_ss,
            row.count_total,
            fmt_rational(&row.ratio),
            row.rv_curve,
            fmt_rational(&row.chebotarev_curve),
            row.satisfied,
            if row.skipped_by_eta { " (skipped by eta)" } else { "" }
        );
    }
    if !full {
        return Ok(Report { value: Value::Array(rows.clone()), rows: Some(rows), text });
    }
    let considered: Vec<_> = rep.rows.iter().filter(|r| !r.skipped_by_eta).collect();
    let all = considered.iter().all(|r| r.satisfied);
    let mut value = serde_json::to_value(&rep).unwrap();
    value["all_considered_satisfied"] = json!(all);
    text += &format!("all considered rows satisfied: {all}\n");
    for b in &rep.bad_reduction {
        text += &format!("bad reduction in degree {}: {}\n", b.n, b.primes.join(", "));
    }
    Ok(Report { value, rows: Some(rows), text })
}

fn aux_poly(
    phi: &DrinfeldModule,
    x: &AlgebraicPoint,
    l: usize,
    t: usize,
    stride: usize,
    vanish_at: Option<&str>,
    h_prime: usize,
) -> Result<Report> {
    let aux = transcendence::build_aux_polynomial(phi, x, l, t, stride)?;
    let rh: Vec<String> = aux.siegel.row_heights.iter().map(fmt_rational).collect();
    let rb: Vec<String> = aux.row_bounds.iter().map(fmt_rational).collect();
    let mut value = json!({
        "L": l, "t": t, "stride": stride,
        "N": aux.n.to_string(),
        "G": aux.render_g(),
        "G_N": aux.g_n.to_string(),
        "denominator": aux.denominator.to_string(),
        "delta": aux.siegel.delta,
        "siegel_bound": fmt_rational(&aux.siegel.bound),
        "row_heights": rh,
        "row_bounds": rb,
        "multiplicity": aux.multiplicity,
        "vanishing_order": aux.vanishing_order,
        "deg_X": aux.deg_x,
        "deg_X_limit": aux.deg_x_limit,
    });
    let mut text = format!(
        "G(X,Y) = {}\nN = {}\nG_N has X-degree {} (< {}), multiplicity {} at x, delta {}\n",
        aux.render_g(),
        aux.n,
        aux.deg_x,
        aux.deg_x_limit,
        aux.multiplicity,
        aux.siegel.delta
    );
    if let Some(l) = vanish_at {
        let l = parse_apoly(phi.fq(), l)?;
        let rep = transcendence::supersingular_vanishing_check(&aux, h_prime, phi, &l, x)?;
        value["vanishing"] = json!({
            "l": l.to_monic().to_string(),
            "h_prime": rep.h_prime,
            "zeta": rep.zeta.as_ref().map(|z| z.to_string()),
            "valuation": rep.valuation,
            "required": rep.required,
            "satisfied": rep.satisfied,
        });
        text += &match &rep.valuation {
            None => format!("zeta = 0 at h' = {h_prime}\n"),
            Some(v) => format!("v_l(zeta) = {v} >= {} : {}\n", rep.required, rep.satisfied),
        };
    }
    Ok(Report { value, rows: None, text })
}

fn siegel_random(x: &AlgebraicPoint, m: usize, n: usize, max_deg: usize, count: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut text = String::new();
    for i in 0..count {
        let sys = transcendence::random_system(x, m, n, max_deg, &mut rng)?;
        let sol = transcendence::siegel_solve(&sys)?;
        let top = sol.x.iter().filter_map(|v| v.deg()).max();
        text += &format!(
            "#{i}: delta {} bound {} max deg {}\n",
            sol.delta,
            fmt_rational(&sol.bound),
            top.map_or("-inf".to_string(), |d| d.to_string())
        );
        rows.push(json!({
            "index": i,
            "M": m, "N": n, "D": x.degree(),
            "delta": sol.delta,
            "bound": fmt_rational(&sol.bound),
            "solution": sol.x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }));
    }
    Ok(Report { value: Value::Array(rows.clone()), rows: Some(rows), text })
}

fn bounds_report(
    class: &ModuleClass,
    theorem: Theorem,
    dd: &BigInt,
    d_pi: &BigInt,
    n_phi: Option<&BigInt>,
) -> Result<Report> {
    let c = bounds::constants(class, theorem, n_phi)?;
    let lb = bounds::lower_bound(dd, d_pi, &c)?;
    let p_e = match theorem {
        Theorem::One => None,
        Theorem::Two => Some(d_pi),
    };
    let params = match bounds::parameter_select(dd, &c, p_e) {
        Ok(p) => serde_json::to_value(&p).unwrap(),
        Err(Error::Hypothesis(msg)) => json!({"unavailable": msg}),
        Err(e) => return Err(e),
    };
    let c2 = match num::ToPrimitive::to_u64(dd) {
        Some(v) => serde_json::to_value(bounds::c2_bound(class, v)?).unwrap(),
        None => Value::Null,
    };
    let value = json!({
        "constants": c,
        "lower_bound": lb,
        "parameters": params,
        "c2_bound": c2,
        "dominance": bounds::dominance_holds(&c),
    });
    let text = format!(
        "c0 = {}\nC0 = {}\nkappa = {}, mu = {}{}\nlower bound at D = {dd}: {}\n",
        c.c0,
        c.big_c0,
        fmt_rational(&c.kappa),
        fmt_rational(&c.mu),
        c.lambda.as_ref().map_or(String::new(), |l| format!(", lambda = {}", fmt_rational(l))),
        lb
    );
    Ok(Report { value, rows: None, text })
}

fn parse_bigint(s: &str, what: &str) -> Result<BigInt> {
    let v: BigInt = s
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("{what} must be an integer, got {s:?}")))?;
    if !v.is_positive() {
        return Err(Error::invalid(format!("{what} must be positive")));
    }
    Ok(v)
}

/// `carlitz(q=Q)` or a TOML module file.
pub fn load_module(spec: &str) -> Result<DrinfeldModule> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("carlitz") {
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.trim().strip_prefix("q"))
            .and_then(|r| r.trim().strip_prefix('='))
            .ok_or_else(|| Error::invalid(format!("expected carlitz(q=Q), got {s:?}")))?;
        let q: u32 = inner
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad q in {s:?}")))?;
        return Ok(DrinfeldModule::carlitz(Fq::with_order(q)?));
    }
    DrinfeldModule::load(Path::new(s))
}

/// A minimal polynomial string, or a TOML file holding one.
pub fn load_point(fq: Fq, spec: &str) -> Result<AlgebraicPoint> {
    if spec.ends_with(".toml") {
        AlgebraicPoint::load(fq, Path::new(spec))
    } else {
        AlgebraicPoint::parse(fq, spec)
    }
}

fn load_system(fq: Fq, path: &Path) -> Result<SiegelSystem> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct SystemSpec {
        #[serde(default = "default_point")]
        point: String,
        rows: Vec<Vec<String>>,
        unknowns: Option<usize>,
    }
    fn default_point() -> String {
        "X".into()
    }
    let text = std::fs::read_to_string(path)?;
    let spec: SystemSpec = toml::from_str(&text).map_err(|e| Error::invalid(format!("system file: {e}")))?;
    let x = AlgebraicPoint::parse(fq, &spec.point)?;
    let rows = spec
        .rows
        .iter()
        .map(|r| r.iter().map(|e| parse_kpoly(fq, e)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let n = match (rows.first(), spec.unknowns) {
        (Some(r), _) => r.len(),
        (None, Some(n)) => n,
        (None, None) => return Err(Error::invalid("system file needs rows or unknowns")),
    };
    SiegelSystem::new(&x, n, rows)
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Pretty => Ok(report.text.clone()),
        Format::Json => Ok(serde_json::to_string_pretty(&report.value).unwrap() + "\n"),
        Format::Jsonl => {
            let rows = report.rows.clone().unwrap_or_else(|| vec![report.value.clone()]);
            Ok(rows.iter().map(|r| serde_json::to_string(r).unwrap() + "\n").collect())
        }
        Format::Csv => {
            let rows = report.rows.clone().unwrap_or_else(|| vec![report.value.clone()]);
            to_csv(&rows)
        }
    }
}

fn to_csv(rows: &[Value]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let empty = Map::new();
    let header: Vec<String> = rows
        .first()
        .and_then(|r| r.as_object())
        .unwrap_or(&empty)
        .keys()
        .cloned()
        .collect();
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for r in rows {
        let cells: Vec<String> = header
            .iter()
            .map(|k| match r.get(k) {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
            })
            .collect();
        w.write_record(&cells).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 cells"))
}
