use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chromplane::circle_index::{index_property_sweep, verify_complementary_index_with, DeltaRule};
use chromplane::coloring::{cnf_edges, SolverConfig, Verdict};
use chromplane::hex_bound::{best_scale_for, max_epsilon, verify_rotated};
use chromplane::job::{run_chi_check, Artifact, Job, FORMAT_VERSION};
use chromplane::render::Scene;
use chromplane::sweep::{bicycle_sweep, sweep_csv, SweepPlan};
use chromplane::{Error, Interval, Norm, NormSpec};

const EXIT_SAT: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_UNSAT: u8 = 10;
const EXIT_INDETERMINATE: u8 = 20;

#[derive(Parser)]
#[command(name = "chromplane", version, about = "Forbidden-interval coloring toolkit")]
struct Cli {
    /// Job file (chi-check, export-cnf).
    #[arg(long, global = true)]
    job: Option<PathBuf>,
    /// Seed for tie-breaking and property sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Search node budget; overrides the job file.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget in seconds; overrides the job file.
    #[arg(long, global = true)]
    budget_secs: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide k-colorability of a job's graph and write a certificate.
    ChiCheck,
    /// Bicycle chromatic numbers over an (s, eps) grid, as CSV.
    BicycleSweep {
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long)]
        count: usize,
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        k: Vec<usize>,
        /// `euclidean`, `square`, or a norm JSON file.
        #[arg(long, default_value = "euclidean")]
        norm: String,
    },
    /// Verify the hexagonal 7-coloring for [1 - eps, 1 + eps].
    HexVerify {
        #[arg(long)]
        eps: f64,
        /// Hexagon diameter; the best one is searched when absent.
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        rotation: f64,
        #[arg(long, default_value = "euclidean")]
        norm: String,
    },
    /// Largest eps the hexagonal 7-coloring handles.
    HexMaxeps {
        #[arg(long, default_value = "euclidean")]
        norm: String,
    },
    /// Exhaustive complementary-arc check plus random index properties.
    IndexSelftest {
        #[arg(long, default_value_t = 12)]
        walk_len: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Use a wrong transition rule, to see the check fail.
        #[arg(long, hide = true)]
        corrupt_rule: bool,
    },
    /// Write the DIMACS CNF of a job.
    ExportCnf,
    /// Draw an artifact as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_norm(arg: &str) -> Result<Norm, Error> {
    match arg {
        "euclidean" => Ok(Norm::euclidean()),
        "square" => Norm::new(NormSpec::square()),
        path => {
            let spec: NormSpec = serde_json::from_str(&fs::read_to_string(path)?)?;
            Norm::new(spec)
        }
    }
}

fn load_job(cli: &Cli) -> Result<Job, Error> {
    let path = cli.job.as_ref().ok_or_else(|| Error::Config("this command needs --job FILE".into()))?;
    let mut job = Job::from_json(&fs::read_to_string(path)?)?;
    if cli.budget_nodes.is_some() {
        job.budgets.nodes = cli.budget_nodes;
    }
    if cli.budget_secs.is_some() {
        job.budgets.secs = cli.budget_secs;
    }
    job.validate()?;
    Ok(job)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Sat => EXIT_SAT,
        Verdict::Unsat => EXIT_UNSAT,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::ChiCheck => {
            let job = load_job(cli)?;
            let cert = run_chi_check(&job, Some(cli.seed))?;
            let c = &cert.certificate;
            eprintln!(
                "{:?} k={} vertices={} edges={} nodes={} secs={:.3}",
                c.verdict, c.k, cert.vertices, cert.edges, c.stats.nodes, c.stats.wall_secs
            );
            let mut verdict = c.verdict;
            if let Some(strict) = &cert.strict {
                eprintln!("strict margin {}: {:?} on {} edges", strict.margin, strict.verdict, strict.edges);
                if strict.verdict != Verdict::Unsat {
                    verdict = Verdict::Indeterminate;
                }
            }
            emit(out, &(Artifact::ChiCertificate(cert).to_json() + "\n"))?;
            Ok(verdict_code(verdict))
        }
        Command::BicycleSweep { s, eps, count, k, norm } => {
            let norm = load_norm(norm)?;
            let plan = SweepPlan { s_grid: s.clone(), eps_grid: eps.clone(), count: *count, k_list: k.clone() };
            let config = SolverConfig {
                node_budget: cli.budget_nodes,
                time_budget: cli.budget_secs.map(std::time::Duration::from_secs_f64),
                seed: Some(cli.seed),
                ..SolverConfig::default()
            };
            let rows = bicycle_sweep(&plan, &norm, &config, cli.jobs)?;
            emit(out, &sweep_csv(&rows)?)?;
            Ok(EXIT_SAT)
        }
        Command::HexVerify { eps, scale, rotation, norm } => {
            let norm = load_norm(norm)?;
            let interval = Interval::around_unit(*eps)?;
            let scale = match scale {
                Some(s) => *s,
                None => best_scale_for(&norm, interval, *rotation)?.0,
            };
            let cert = verify_rotated(scale, *rotation, &norm, interval)?;
            eprintln!("{} scale={} margin={:e}", if cert.pass { "PASS" } else { "FAIL" }, cert.scale, cert.margin);
            let pass = cert.pass;
            emit(out, &(Artifact::HexCertificate { version: FORMAT_VERSION, certificate: cert }.to_json() + "\n"))?;
            Ok(if pass { EXIT_SAT } else { EXIT_FAIL })
        }
        Command::HexMaxeps { norm } => {
            let norm = load_norm(norm)?;
            let result = max_epsilon(&norm)?;
            eprintln!(
                "eps={} scale={} rotation={} ratio={}",
                result.eps, result.scale, result.rotation, result.separation_ratio
            );
            emit(out, &(Artifact::MaxEpsilon { version: FORMAT_VERSION, result }.to_json() + "\n"))?;
            Ok(EXIT_SAT)
        }
        Command::IndexSelftest { walk_len, samples, corrupt_rule } => {
            let rule = if *corrupt_rule { DeltaRule::LeavePositiveIncreases } else { DeltaRule::PointIndices };
            let walks = verify_complementary_index_with(*walk_len, rule);
            let props = index_property_sweep(*samples, cli.seed);
            eprintln!(
                "walks={} counterexamples={} arcs={} negation_failures={} additivity_failures={}",
                walks.walks_checked,
                walks.counterexample_count,
                props.arcs_checked,
                props.negation_failures,
                props.additivity_failures
            );
            let ok = walks.holds() && props.holds();
            let report = serde_json::json!({ "walks": walks, "properties": props, "holds": ok });
            emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            Ok(if ok { EXIT_SAT } else { EXIT_FAIL })
        }
        Command::ExportCnf => {
            let job = load_job(cli)?;
            let instance = job.build()?;
            emit(out, &cnf_edges(instance.vertex_count(), instance.edges(), job.k))?;
            Ok(EXIT_SAT)
        }
        Command::Render { input } => {
            let artifact = Artifact::from_json(&fs::read_to_string(input)?)?;
            emit(out, &Scene::from_artifact(&artifact)?.to_svg())?;
            Ok(EXIT_SAT)
        }
    }
}
