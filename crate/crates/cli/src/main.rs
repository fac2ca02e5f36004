//! `hardyx`: command-line front end to the hardyx library.

mod output;
mod points;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hardyx::analysis::{fmt17, proj_norms_direct, proj_norms_spherical, proj_norms_wigner};
use hardyx::decay::{radial_profile, theorem_check, Theorem, TheoremReport};
use hardyx::quadrature::{RuleCache, RuleRecord, RuleSpec};
use hardyx::transforms::{
    bargmann_1d_report, bargmann_vector_report, hankel_report, u_delta_report, wigner_field,
    FunctionSpec, UdeltaRoute, WignerConfig, REGISTRY,
};
use hardyx::verify::{run_suite, Suite};
use output::{Format, Output};
use points::{parse_complex_list, parse_real_list};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable overriding the rule cache directory.
const CACHE_ENV: &str = "HARDYX_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "hardyx", version, about = "Hermite expansions and transforms of Hardy-class functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for cached quadrature rules.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Build every rule afresh.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Output file (written atomically); standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
struct FnArgs {
    /// Registry function, `name:key=val,...`.
    #[arg(long = "fn", value_name = "SPEC")]
    func: String,
    /// Dimension of the underlying space ℝⁿ.
    #[arg(long, default_value_t = 1)]
    n: usize,
}

impl FnArgs {
    fn spec(&self) -> Result<FunctionSpec> {
        Ok(FunctionSpec::parse(&self.func, self.n)?)
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum RuleKindArg {
    GaussHermite,
    MappedLegendre,
    Radial,
    Sphere,
    Tensor,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum RouteArg {
    Direct,
    Wigner,
    Spherical,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum UdeltaRouteArg {
    Series,
    Integral,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build (or load from the cache) a quadrature rule.
    Rule {
        #[arg(long, value_enum)]
        kind: RuleKindArg,
        /// Nodes (per axis for tensor rules).
        #[arg(long, default_value_t = 200)]
        nodes: usize,
        /// Truncation radius; the interval is `[-R, R]` for mapped Legendre.
        #[arg(long, default_value_t = 12.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// Complex dimension for sphere and tensor rules.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
    /// Hermite projection norms ‖P_k f‖ for k ≤ kmax.
    Expand {
        #[command(flatten)]
        f: FnArgs,
        #[arg(long, default_value_t = 20)]
        kmax: usize,
        #[arg(long, value_enum, default_value = "direct")]
        route: RouteArg,
    },
    /// Fourier–Wigner transform V(f,g) sampled on its tensor grid.
    Wigner {
        #[command(flatten)]
        f: FnArgs,
        /// Second function (defaults to the first).
        #[arg(long = "gfn", value_name = "SPEC")]
        g: Option<String>,
        #[arg(long)]
        per_axis: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        s_nodes: Option<usize>,
    },
    /// Hankel transform of the radial profile of a radial function.
    Hankel {
        #[command(flatten)]
        f: FnArgs,
        /// Order; defaults to n/2 - 1.
        #[arg(long)]
        delta: Option<f64>,
        /// Radii: `a,b,...` or `start:stop:step`.
        #[arg(long, default_value = "0:6:0.5")]
        r: String,
    },
    /// Bargmann transform (vector form along `--omega` for n = 2).
    Bargmann {
        #[command(flatten)]
        f: FnArgs,
        /// Points `re:im,re:im,...`.
        #[arg(long, default_value = "0:0,1:0,0:1")]
        z: String,
        /// Direction angle on the unit circle (n = 2).
        #[arg(long, default_value_t = 0.0)]
        omega: f64,
    },
    /// U_δ transform of the radial profile of a radial function.
    Udelta {
        #[command(flatten)]
        f: FnArgs,
        #[arg(long)]
        delta: Option<f64>,
        /// Points `re:im,re:im,...`.
        #[arg(long, default_value = "0:0,1:0,0:1")]
        w: String,
        #[arg(long = "udelta-route", value_enum, default_value = "series")]
        route: UdeltaRouteArg,
    },
    /// Decay-theorem checks (all applicable ones unless `--theorem`).
    Decay {
        #[command(flatten)]
        f: FnArgs,
        #[arg(long)]
        theorem: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        /// One of: orthonormality, fourier-eigen, wigner-identity, hankel-eigen,
        /// udelta, cholewinski, example44, routes, radialization,
        /// vector-bargmann, lemma55, theorems.
        suite: String,
    },
    /// List registry functions.
    ListFunctions,
}

/// What a subcommand produced: text to emit and whether it passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version go to stdout with exit 0; errors exit 2
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let usage = is_usage_error(&e);
            eprintln!("error: {e:#}");
            if usage {
                let mut cmd = <Cli as clap::CommandFactory>::command();
                eprintln!("\n{}\nFor more information, try '--help'.", cmd.render_usage());
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Bad input from the caller, as opposed to a numerical failure.
fn is_usage_error(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<points::PointError>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<hardyx::Error>(),
        Some(
            hardyx::Error::UnknownFunction(_)
                | hardyx::Error::BadParameter(_)
                | hardyx::Error::InvalidArgument(_)
                | hardyx::Error::DimensionMismatch { .. }
                | hardyx::Error::OutOfRange { .. }
        )
    )
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .context("configuring the thread pool")?;
    }
    let out = Output::new(cli.out.clone());
    let res = match &cli.command {
        Command::Rule {
            kind,
            nodes,
            radius,
            delta,
            n,
            resolution,
        } => rule(cli, *kind, *nodes, *radius, *delta, *n, *resolution)?,
        Command::Expand { f, kmax, route } => expand(cli, f, *kmax, *route)?,
        Command::Wigner {
            f,
            g,
            per_axis,
            alpha,
            s_nodes,
        } => wigner(cli, f, g.as_deref(), *per_axis, *alpha, *s_nodes)?,
        Command::Hankel { f, delta, r } => hankel_cmd(cli, f, *delta, r)?,
        Command::Bargmann { f, z, omega } => bargmann(cli, f, z, *omega)?,
        Command::Udelta { f, delta, w, route } => udelta(cli, f, *delta, w, *route)?,
        Command::Decay { f, theorem } => decay(cli, f, theorem.as_deref())?,
        Command::Verify { suite } => verify(cli, suite)?,
        Command::ListFunctions => list_functions(cli)?,
    };
    out.write(&res.text)?;
    Ok(res.pass)
}

fn format_or(cli: &Cli, default: Format) -> Format {
    cli.format.unwrap_or(default)
}

fn rule(
    cli: &Cli,
    kind: RuleKindArg,
    nodes: usize,
    radius: f64,
    delta: f64,
    n: usize,
    resolution: usize,
) -> Result<Outcome> {
    let spec = match kind {
        RuleKindArg::GaussHermite => RuleSpec::GaussHermite { n: nodes },
        RuleKindArg::MappedLegendre => RuleSpec::MappedLegendre {
            n: nodes,
            a: -radius,
            b: radius,
        },
        RuleKindArg::Radial => RuleSpec::Radial {
            delta,
            r: radius,
            n: nodes,
        },
        RuleKindArg::Sphere => RuleSpec::Sphere { n, resolution },
        RuleKindArg::Tensor => RuleSpec::Tensor {
            n,
            per_axis: nodes,
            r: radius,
        },
    };
    let cache = match (&cli.cache_dir, cli.no_cache) {
        (Some(dir), false) => RuleCache::at(dir),
        _ => RuleCache::disabled(),
    };
    let r = cache.get(&spec)?;
    let text = match format_or(cli, Format::Json) {
        Format::Json => serde_json::to_string_pretty(&RuleRecord::new(spec, r))? + "\n",
        Format::Csv => {
            let mut s: String = (1..=r.dim).map(|i| format!("x{i},")).collect();
            s.push_str("weight\n");
            for i in 0..r.len() {
                for x in r.node(i) {
                    s.push_str(&fmt17(*x));
                    s.push(',');
                }
                s.push_str(&fmt17(r.weights[i]));
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn expand(cli: &Cli, f: &FnArgs, kmax: usize, route: RouteArg) -> Result<Outcome> {
    let spec = f.spec()?;
    let table = match route {
        RouteArg::Direct => proj_norms_direct(&spec, kmax)?,
        RouteArg::Wigner => proj_norms_wigner(&spec, kmax)?,
        RouteArg::Spherical => proj_norms_spherical(&spec, kmax)?,
    };
    Ok(Outcome::ok(match format_or(cli, Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json()? + "\n",
    }))
}

fn wigner(
    cli: &Cli,
    f: &FnArgs,
    g: Option<&str>,
    per_axis: Option<usize>,
    alpha: Option<f64>,
    s_nodes: Option<usize>,
) -> Result<Outcome> {
    let fs = f.spec()?;
    let gs = match g {
        Some(id) => FunctionSpec::parse(id, f.n)?,
        None => fs.clone(),
    };
    let mut cfg = WignerConfig::for_pair(&fs, &gs)?;
    cfg.per_axis = per_axis.unwrap_or(cfg.per_axis);
    cfg.alpha = alpha.unwrap_or(cfg.alpha);
    cfg.s_nodes = s_nodes.unwrap_or(cfg.s_nodes);
    let field = wigner_field(&fs, &gs, &cfg)?;
    let text = match format_or(cli, Format::Json) {
        Format::Json => field.to_json()? + "\n",
        Format::Csv => {
            let d = field.grid.real_dim();
            let mut s: String = (1..=d).map(|i| format!("z{i},")).collect();
            s.push_str("re,im\n");
            let mut z = vec![0.0; d];
            for (i, v) in field.values.iter().enumerate() {
                field.grid.node(i, &mut z);
                for x in &z {
                    s.push_str(&fmt17(*x));
                    s.push(',');
                }
                s.push_str(&format!("{},{}\n", fmt17(v.re), fmt17(v.im)));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

/// Rows `(point columns, re, im, est_err)` as CSV or JSON.
fn value_rows(cli: &Cli, head: &[&str], rows: Vec<(Vec<f64>, hardyx::C64, f64)>) -> Result<String> {
    Ok(match format_or(cli, Format::Csv) {
        Format::Csv => {
            let mut s = head.join(",") + ",re,im,est_err\n";
            for (p, v, e) in rows {
                for x in p {
                    s.push_str(&fmt17(x));
                    s.push(',');
                }
                s.push_str(&format!("{},{},{}\n", fmt17(v.re), fmt17(v.im), fmt17(e)));
            }
            s
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .into_iter()
                .map(|(p, v, e)| {
                    let mut m = serde_json::Map::new();
                    for (h, x) in head.iter().zip(p) {
                        m.insert(h.to_string(), x.into());
                    }
                    m.insert("re".into(), v.re.into());
                    m.insert("im".into(), v.im.into());
                    m.insert("est_err".into(), e.into());
                    serde_json::Value::Object(m)
                })
                .collect();
            serde_json::to_string_pretty(&items)? + "\n"
        }
    })
}

fn hankel_cmd(cli: &Cli, f: &FnArgs, delta: Option<f64>, r: &str) -> Result<Outcome> {
    let (g, d0) = radial_profile(&f.spec()?)?;
    let delta = delta.unwrap_or(d0);
    let rows = parse_real_list(r)?
        .into_iter()
        .map(|r| {
            let rep = hankel_report(&g, delta, r)?;
            Ok((vec![r], rep.value, rep.est_rel_err))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::ok(value_rows(cli, &["r"], rows)?))
}

fn bargmann(cli: &Cli, f: &FnArgs, z: &str, omega: f64) -> Result<Outcome> {
    let spec = f.spec()?;
    let dir = [omega.cos(), omega.sin()];
    let rows = parse_complex_list(z)?
        .into_iter()
        .map(|z| {
            let rep = match spec.n {
                1 => bargmann_1d_report(&spec, z)?,
                _ => bargmann_vector_report(&spec, z, dir)?,
            };
            Ok((vec![z.re, z.im], rep.value, rep.est_rel_err))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::ok(value_rows(cli, &["z_re", "z_im"], rows)?))
}

fn udelta(cli: &Cli, f: &FnArgs, delta: Option<f64>, w: &str, route: UdeltaRouteArg) -> Result<Outcome> {
    let (g, d0) = radial_profile(&f.spec()?)?;
    let delta = delta.unwrap_or(d0);
    let route = match route {
        UdeltaRouteArg::Series => UdeltaRoute::Series,
        UdeltaRouteArg::Integral => UdeltaRoute::Integral,
    };
    let rows = parse_complex_list(w)?
        .into_iter()
        .map(|w| {
            let rep = u_delta_report(&g, delta, w, route)?;
            Ok((vec![w.re, w.im], rep.value, rep.est_rel_err))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::ok(value_rows(cli, &["w_re", "w_im"], rows)?))
}

fn render_report(r: &TheoremReport) -> String {
    let mut s = format!("{} {}: {:?}\n", r.theorem.name(), r.function, r.status);
    let h = &r.hypothesis;
    s.push_str(&format!(
        "  hypothesis holds={} gamma={:.6} a={:.6} (e^(-a|x|^2/2)) a={:.6} (e^(-a|x|^2))\n",
        h.holds, h.gamma, h.a, h.a_full
    ));
    if let Some(fit) = &r.fit {
        s.push_str(&format!(
            "  fit t={:.6} p={:.4} implied_a=tanh(2t)={:.6} window={:?} points={}\n",
            fit.t, fit.p, fit.implied_a, fit.k_window, fit.points
        ));
    }
    if let Some(b) = &r.bound {
        s.push_str(&format!(
            "  bound {} C_min={:.6e} tail_growth={:.6} holds={}\n",
            b.model, b.c_min, b.tail_growth, b.holds
        ));
    }
    for n in h.notes.iter().chain(&r.notes) {
        s.push_str(&format!("  note: {n}\n"));
    }
    s
}

fn decay(cli: &Cli, f: &FnArgs, theorem: Option<&str>) -> Result<Outcome> {
    let spec = f.spec()?;
    let which: Vec<Theorem> = match theorem {
        Some(t) => vec![Theorem::parse(t)?],
        None => Theorem::ALL.to_vec(),
    };
    let reports = which
        .into_iter()
        .map(|t| theorem_check(&spec, t))
        .collect::<hardyx::Result<Vec<_>>>()?;
    use hardyx::decay::Status;
    let pass = reports.iter().all(|r| r.pass || r.status == Status::Inapplicable);
    let text = match cli.format {
        Some(Format::Json) => serde_json::to_string_pretty(&reports)? + "\n",
        Some(Format::Csv) => {
            let mut s = String::from("theorem,function,status,implied_a,c_min,tail_growth,pass\n");
            for r in &reports {
                let ia = r.fit.as_ref().map(|f| fmt17(f.implied_a)).unwrap_or_default();
                let (c, g) = r
                    .bound
                    .as_ref()
                    .map(|b| (fmt17(b.c_min), fmt17(b.tail_growth)))
                    .unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{:?},{ia},{c},{g},{}\n",
                    r.theorem.name(),
                    r.function,
                    r.status,
                    r.pass
                ));
            }
            s
        }
        None => reports.iter().map(render_report).collect(),
    };
    Ok(Outcome { text, pass })
}

fn verify(cli: &Cli, suite: &str) -> Result<Outcome> {
    let report = run_suite(Suite::parse(suite)?)?;
    let text = match format_or(cli, Format::Json) {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => {
            let mut s = String::from("name,measured,tolerance,pass\n");
            for c in &report.checks {
                s.push_str(&format!(
                    "\"{}\",{},{},{}\n",
                    c.name.replace('"', "\"\""),
                    fmt17(c.measured),
                    fmt17(c.tolerance),
                    c.pass
                ));
            }
            s
        }
    };
    for c in report.failures() {
        eprintln!("FAIL {}: measured {:e} > tolerance {:e}", c.name, c.measured, c.tolerance);
    }
    Ok(Outcome {
        text,
        pass: report.pass,
    })
}

fn list_functions(cli: &Cli) -> Result<Outcome> {
    let text = match cli.format {
        Some(Format::Json) => serde_json::to_string_pretty(REGISTRY)? + "\n",
        Some(Format::Csv) => {
            let mut s = String::from("name,dims,params,formula\n");
            for e in REGISTRY {
                s.push_str(&format!("{},\"{}\",\"{}\",\"{}\"\n", e.name, e.dims, e.params, e.formula));
            }
            s
        }
        None => REGISTRY
            .iter()
            .map(|e| format!("{:<12} n={:<6} {:<32} {}\n", e.name, e.dims, e.params, e.formula))
            .collect(),
    };
    Ok(Outcome::ok(text))
}
