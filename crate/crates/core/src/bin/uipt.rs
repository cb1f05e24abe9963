use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use uipt::exact::{format_rational, parse_rational, phi, theta_critical, weight_of_theta, z_closed};
use uipt::experiment::{
    exp_containment, exp_core, exp_degree, exp_free, exp_growth, exp_invariance, exp_uniform, histogram,
    run_samples, ExperimentReport, InvarianceKind, InvarianceParams,
};
use uipt::map::brute_force_census;
use uipt::sample::{core_classify, sample_free, uipt_type3_ball, PeelState, Policy, UniformSampler};
use uipt::{ExactRng, Result, RootedMap, TriType};

#[derive(Parser)]
#[command(name = "uipt", version, about = "Random planar triangulations: counts, samplers and experiments")]
struct Cli {
    /// Triangulation type.
    #[arg(long = "type", global = true, default_value = "2", value_parser = parse_type)]
    tri: TriType,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Peel step budget per sample.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    MinDistance,
    Fifo,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    Degree,
    Core,
    Reroot,
    Rw,
    Policy,
    Growth,
    Free,
    Containment,
    Uniform,
}

#[derive(Subcommand)]
enum Command {
    /// Number of rooted triangulations of an (m+2)-gon with n internal vertices.
    Count {
        #[arg(value_parser = parse_type)]
        t: TriType,
        n: usize,
        m: usize,
    },
    /// Partition function Z_m, at the critical point unless --theta is given.
    Zvalue {
        #[arg(value_parser = parse_type)]
        t: TriType,
        m: usize,
        #[arg(long)]
        theta: Option<String>,
    },
    /// Every rooted triangulation of an (m+2)-gon with n internal vertices.
    Census {
        #[arg(value_parser = parse_type)]
        t: TriType,
        n: usize,
        m: usize,
    },
    /// Uniform triangulations of an (m+2)-gon with n internal vertices.
    SampleUniform {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Critical Boltzmann triangulations of an (m+2)-gon.
    SampleFree { m: usize },
    /// Ball of radius r of the uniform infinite planar triangulation.
    UiptBall {
        r: usize,
        #[arg(long, value_enum, default_value_t = PolicyArg::MinDistance)]
        policy: PolicyArg,
        /// Include the peeling event log (type 2 only).
        #[arg(long)]
        trace: bool,
    },
    /// Size of the root's 3-connected component in the type 2 UIPT.
    CoreClassify,
    /// Runs a statistical experiment and exits with 0 (pass), 2 (statistical
    /// failure) or 3 (too many unresolved samples).
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        /// Sphere size for reroot and rw.
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        /// Ball radius for policy.
        #[arg(long, default_value_t = 1)]
        radius: usize,
        /// Largest radius for growth.
        #[arg(long, default_value_t = 8)]
        r_max: usize,
        /// Internal vertices for uniform.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Boundary index for free and uniform.
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Record wall-clock time in the report.
        #[arg(long)]
        runtime: bool,
    },
}

fn parse_type(s: &str) -> std::result::Result<TriType, String> {
    s.parse().map_err(|e: uipt::Error| e.to_string())
}

const DEFAULT_BUDGET: usize = 1_000_000;
const CORE_BUDGET: usize = 10_000;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(uipt::Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let mut out: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let csv = cli.format == Format::Csv;
    let samples = cli.samples.unwrap_or(1);
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let mut rng = ExactRng::new(cli.seed);
    let value = match &cli.command {
        Command::Count { t, n, m } => {
            let c = phi(*t, *n, *m)?;
            json!({"type": t.to_string(), "n": n, "m": m, "count": c.to_string()})
        }
        Command::Zvalue { t, m, theta } => {
            let theta = match theta {
                Some(s) => parse_rational(s)?,
                None => theta_critical(*t),
            };
            let z = z_closed(*t, *m, &theta)?;
            json!({
                "type": t.to_string(),
                "m": m,
                "theta": format_rational(&theta),
                "weight": format_rational(&weight_of_theta(*t, &theta)),
                "z": format_rational(&z),
            })
        }
        Command::Census { t, n, m } => {
            let maps = brute_force_census(*t, *n, *m)?;
            json!({"type": t.to_string(), "n": n, "m": m, "count": maps.len().to_string(), "maps": map_records(&maps)})
        }
        Command::SampleUniform { n, m } => {
            let s = UniformSampler::new(cli.tri, *n, *m)?;
            let maps: Vec<RootedMap> = (0..samples).map(|_| s.sample(&mut rng)).collect();
            json!({"type": cli.tri.to_string(), "n": n, "m": m, "maps": map_records(&maps)})
        }
        Command::SampleFree { m } => {
            let draws: Vec<Value> = (0..samples)
                .map(|_| {
                    let f = sample_free(*m, &mut rng);
                    json!({"size": f.size, "code": f.map.code().to_hex(), "map": f.map.to_text()})
                })
                .collect();
            json!({"m": m, "samples": draws})
        }
        Command::UiptBall { r, policy, trace } => {
            let policy = match policy {
                PolicyArg::MinDistance => Policy::MinDistance,
                PolicyArg::Fifo => Policy::Fifo,
            };
            let mut balls = Vec::new();
            for _ in 0..samples {
                balls.push(match cli.tri {
                    TriType::TypeII => ball2(*r, policy, budget, *trace, &mut rng)?,
                    TriType::TypeIII => {
                        let b = uipt_type3_ball(*r, budget, &mut rng)?;
                        json!({"restarts": b.restarts, "code": b.map.code().to_hex(), "map": b.map.to_text()})
                    }
                });
            }
            json!({"type": cli.tri.to_string(), "r": r, "balls": balls})
        }
        Command::CoreClassify => {
            let budget = cli.budget.unwrap_or(CORE_BUDGET);
            let mut outcomes = run_samples(cli.seed, samples, |rng| core_classify(budget, rng));
            outcomes.sort();
            let labels: Vec<String> = outcomes.iter().map(|o| format!("{o:?}")).collect();
            let mut order = labels.clone();
            order.dedup();
            json!({"budget": budget, "histogram": histogram(labels, &order)})
        }
        Command::Experiment { name, vertices, radius, r_max, n, m, runtime } => {
            let start = Instant::now();
            let samples = cli.samples.unwrap_or(100_000);
            let mut rep = experiment(cli, *name, samples, *vertices, *radius, *r_max, *n, *m)?;
            if *runtime {
                rep.runtime_ms = Some(start.elapsed().as_millis() as u64);
            }
            rep.write_to(&mut out, csv)?;
            return Ok(rep.status.exit_code() as u8);
        }
    };
    if csv {
        write_csv(&mut out, &value)?;
    } else {
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn experiment(
    cli: &Cli,
    name: ExperimentName,
    samples: usize,
    vertices: usize,
    radius: usize,
    r_max: usize,
    n: usize,
    m: usize,
) -> Result<ExperimentReport> {
    let seed = cli.seed;
    let budget = cli.budget;
    let inv = |kind| {
        exp_invariance(
            kind,
            InvarianceParams { samples, vertices, radius, budget: budget.unwrap_or(DEFAULT_BUDGET) },
            seed,
        )
    };
    match name {
        ExperimentName::Degree => exp_degree(cli.tri, samples, seed, budget.unwrap_or(CORE_BUDGET)),
        ExperimentName::Core => exp_core(samples, budget.unwrap_or(CORE_BUDGET), seed),
        ExperimentName::Reroot => inv(InvarianceKind::Reroot),
        ExperimentName::Rw => inv(InvarianceKind::RandomWalk),
        ExperimentName::Policy => inv(InvarianceKind::Policy),
        ExperimentName::Growth => exp_growth(r_max, cli.samples.unwrap_or(200), seed, budget.unwrap_or(DEFAULT_BUDGET)),
        ExperimentName::Free => exp_free(m, samples, seed),
        ExperimentName::Containment => exp_containment(samples, seed, budget.unwrap_or(DEFAULT_BUDGET)),
        ExperimentName::Uniform => exp_uniform(cli.tri, n, m, samples, seed),
    }
}

fn ball2(r: usize, policy: Policy, budget: usize, trace: bool, rng: &mut ExactRng) -> Result<Value> {
    let mut s = PeelState::new();
    if trace {
        s = s.with_trace();
    }
    let map = if r == 0 {
        RootedMap::single_vertex()
    } else {
        uipt::sample::peel_until_ball(&mut s, r, policy, budget, rng)?;
        uipt::map::ball(&s.revealed(), r)?
    };
    let mut v = json!({"steps": s.steps(), "code": map.code().to_hex(), "map": map.to_text()});
    if trace {
        v["trace"] = serde_json::to_value(s.trace())?;
    }
    Ok(v)
}

fn map_records(maps: &[RootedMap]) -> Vec<Value> {
    maps.iter().map(|m| json!({"code": m.code().to_hex(), "map": m.to_text()})).collect()
}

/// Flattens a JSON value into `path,value` records.
fn write_csv(out: &mut dyn Write, v: &Value) -> Result<()> {
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(o) => {
                for (k, x) in o {
                    walk(&join(prefix, k), x, rows);
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&join(prefix, &i.to_string()), x, rows);
                }
            }
            Value::String(s) => rows.push((prefix.into(), s.clone())),
            other => rows.push((prefix.into(), other.to_string())),
        }
    }
    fn join(a: &str, b: &str) -> String {
        if a.is_empty() {
            b.into()
        } else {
            format!("{a}.{b}")
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    for (k, x) in rows {
        w.write_record([k, x]).map_err(|e| uipt::Error::Domain(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| uipt::Error::Domain(e.to_string()))?;
    out.write_all(&bytes)?;
    Ok(())
}
