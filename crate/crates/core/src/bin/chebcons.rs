use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use cheby_consensus::cheby::{conv_factor_nu, ChebyParams};
use cheby_consensus::engine::{run, MatrixSource, MethodKind, MethodSpec, RunOptions, StopRule, SwitchingWeights};
use cheby_consensus::graphs::{random_geometric, Graph, Scenario, ScenarioConfig, ScenarioKind};
use cheby_consensus::harness::experiment::initial_state;
use cheby_consensus::harness::{emit_csv, emit_trace_plotdata, preset, run_experiment, ExperimentConfig, PRESET_NAMES};
use cheby_consensus::spectral::{
    check_fixed_convergence, check_switching_convergence, corollary_asymmetric_params, corollary_symmetric_param,
    eigenvalues, fixed_gain_beta, optimal_newton_alpha, optimal_params, safe_symmetric_bound, Spectrum,
    SwitchingEnvelope, DEFAULT_SAFETY_MARGIN,
};
use cheby_consensus::weights::{WeightKind, WeightMatrix};
use cheby_consensus::{Error, Result};

#[derive(Parser)]
#[command(
    name = "chebcons",
    version,
    about = "Chebyshev-accelerated average consensus simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single consensus run on one graph
    Run(RunArgs),
    /// Monte Carlo experiment from a config file
    Experiment(ExperimentArgs),
    /// Evaluate convergence predicates for given eigenvalues or envelope
    CheckParams(CheckArgs),
    /// Run shipped presets and write one CSV per table
    Tables(TablesArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = "cheby")]
    method: MethodKind,
    #[arg(long, default_value = "localdegree")]
    weights: WeightKind,
    /// Lower end of the Chebyshev interval (tuned to the graph when omitted)
    #[arg(long = "lambda-m", allow_hyphen_values = true)]
    lambda_m: Option<f64>,
    /// Upper end of the Chebyshev interval (tuned to the graph when omitted)
    #[arg(long = "lambda-M", allow_hyphen_values = true)]
    lambda_max: Option<f64>,
    /// Newton interpolation node (tuned when omitted)
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Fixed-gain coefficient (tuned when omitted)
    #[arg(long)]
    beta: Option<f64>,
    /// Number of nodes of the random graph
    #[arg(long, default_value_t = 30)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[arg(long = "max-rounds", default_value_t = 3000)]
    max_rounds: usize,
    #[arg(long, default_value = "fixed")]
    scenario: ScenarioKind,
    #[arg(long, default_value_t = 110.0)]
    side: f64,
    #[arg(long, default_value_t = 30.0)]
    radius: f64,
    #[arg(long = "failure-prob", default_value_t = 0.05)]
    failure_prob: f64,
    #[arg(long = "add-prob", default_value_t = 0.02)]
    add_prob: f64,
    #[arg(long = "step-size", default_value_t = 5.0)]
    step_size: f64,
    #[arg(long = "stop-rule", default_value = "error")]
    stop_rule: StopRule,
    /// Read the graph from an edge-list file instead of drawing one
    #[arg(long = "graph-file")]
    graph_file: Option<PathBuf>,
    /// Write the initial weight matrix as dense CSV
    #[arg(long = "dump-weights")]
    dump_weights: Option<PathBuf>,
    /// Write the per-round trace as CSV
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "n-graphs")]
    n_graphs: Option<usize>,
    #[arg(long = "n-inits")]
    n_inits: Option<usize>,
    #[arg(long = "n-nodes")]
    n_nodes: Option<usize>,
    #[arg(long = "max-rounds")]
    max_rounds: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long = "lambda-m", allow_hyphen_values = true)]
    lambda_m: Option<f64>,
    #[arg(long = "lambda-M", allow_hyphen_values = true)]
    lambda_max: Option<f64>,
    /// Second largest real eigenvalue of a fixed matrix
    #[arg(long = "lambda-2", allow_hyphen_values = true)]
    lambda_2: Option<f64>,
    /// Smallest real eigenvalue of a fixed matrix
    #[arg(long = "lambda-N", allow_hyphen_values = true)]
    lambda_n: Option<f64>,
    /// Complex eigenvalue as `re,im`; its conjugate is added automatically
    #[arg(long, allow_hyphen_values = true)]
    complex: Vec<String>,
    /// Largest non-unit eigenvalue over a switching sequence
    #[arg(long = "env-max", allow_hyphen_values = true)]
    env_max: Option<f64>,
    /// Smallest eigenvalue over a switching sequence
    #[arg(long = "env-min", allow_hyphen_values = true)]
    env_min: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SAFETY_MARGIN)]
    margin: f64,
}

#[derive(Args)]
struct TablesArgs {
    /// Preset name (table1 ... table6) or `all`
    name: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
    #[arg(long = "n-graphs")]
    n_graphs: Option<usize>,
    #[arg(long = "n-inits")]
    n_inits: Option<usize>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Experiment(a) => cmd_experiment(a).map(|_| ExitCode::SUCCESS),
        Command::CheckParams(a) => cmd_check(a).map(|_| ExitCode::SUCCESS),
        Command::Tables(a) => cmd_tables(a).map(|_| ExitCode::SUCCESS),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn pair(lo: Option<f64>, hi: Option<f64>) -> Result<Option<ChebyParams>> {
    match (lo, hi) {
        (Some(lo), Some(hi)) => ChebyParams::new(lo, hi).map(Some),
        (None, None) => Ok(None),
        _ => Err(Error::Config("--lambda-m and --lambda-M must be given together".into())),
    }
}

fn cmd_run(a: RunArgs) -> Result<ExitCode> {
    let scen = ScenarioConfig {
        kind: a.scenario,
        failure_prob: a.failure_prob,
        add_prob: a.add_prob,
        step_size: a.step_size,
        side: a.side,
        radius: a.radius,
        seed: a.seed,
    };
    scen.validate()?;
    let graph = match &a.graph_file {
        Some(p) => Graph::read_edge_list(p)?,
        None => random_geometric(a.n, a.side, a.radius, a.seed)?,
    };
    let w = WeightMatrix::for_graph(&graph, a.weights)?;
    if let Some(p) = &a.dump_weights {
        w.write_csv(p)?;
    }
    let spectrum = eigenvalues(&w)?;
    let method = match a.method {
        MethodKind::Chebyshev => match pair(a.lambda_m, a.lambda_max)? {
            Some(p) => MethodSpec::Chebyshev(p),
            None => MethodSpec::optimal(MethodKind::Chebyshev, &spectrum)?,
        },
        MethodKind::Power => MethodSpec::Power,
        MethodKind::Newton2 => MethodSpec::Newton2 {
            alpha: a.alpha.unwrap_or_else(|| optimal_newton_alpha(&spectrum)),
        },
        MethodKind::FixedGain => MethodSpec::FixedGain {
            beta: match a.beta {
                Some(b) => b,
                None => fixed_gain_beta(spectrum.lambda_2())?,
            },
        },
    };

    let x0 = initial_state(a.seed, graph.n_nodes(), 0, 0);
    let opts = RunOptions::new(a.tol, a.max_rounds).stop_rule(a.stop_rule);
    let mut fixed;
    let mut switching;
    let source: &mut dyn MatrixSource = if a.scenario == ScenarioKind::Fixed {
        fixed = w;
        &mut fixed
    } else {
        switching = SwitchingWeights::new(Scenario::new(graph.clone(), scen)?, a.weights)?;
        &mut switching
    };
    let trace = run(&method, source, &x0, &opts)?;
    if let Some(p) = &a.out {
        emit_trace_plotdata(&trace, p)?;
    }

    println!("nodes            {}", graph.n_nodes());
    println!("edges            {}", graph.n_edges());
    println!("lambda_2         {}", spectrum.lambda_2());
    println!("lambda_N         {}", spectrum.lambda_n());
    println!("method           {method}");
    println!("consensus value  {}", trace.consensus_value);
    println!("rounds           {}", trace.rounds());
    match trace.rounds_to(a.tol) {
        Some(r) => println!("rounds to {}   {r}", a.tol),
        None => println!("rounds to {}   not reached", a.tol),
    }
    println!("final error      {}", trace.last_error());
    if trace.diverged {
        println!("diverged at round {}", trace.divergence_round.unwrap_or(trace.rounds()));
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_experiment(a: ExperimentArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::from_file(&a.config)?;
    if let Some(v) = a.seed {
        cfg.seed = v;
    }
    if let Some(v) = a.n_graphs {
        cfg.n_graphs = v;
    }
    if let Some(v) = a.n_inits {
        cfg.n_inits = v;
    }
    if let Some(v) = a.n_nodes {
        cfg.n_nodes = v;
    }
    if let Some(v) = a.max_rounds {
        cfg.max_rounds = v;
    }
    cfg.validate()?;
    let table = run_experiment(&cfg)?;
    emit_csv(&table, &a.out)?;
    if table.n_failed > 0 {
        eprintln!("warning: {} cell runs failed and were excluded", table.n_failed);
    }
    Ok(())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_check(a: CheckArgs) -> Result<()> {
    let params = pair(a.lambda_m, a.lambda_max)?;
    let mut complex = Vec::new();
    for c in &a.complex {
        let (re, im) = c
            .split_once(',')
            .ok_or_else(|| Error::Config(format!("--complex expects re,im, got {c:?}")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("{c:?}: {e}")))
        };
        let z = Complex64::new(parse(re)?, parse(im)?);
        complex.push(z);
        complex.push(z.conj());
    }
    let mut printed = false;

    if let (Some(l2), Some(ln)) = (a.lambda_2, a.lambda_n) {
        let s = Spectrum::from_extremes(l2, ln, complex)?;
        let lam = s.second_modulus();
        match optimal_params(&s) {
            Ok(p) => println!(
                "tuned interval: lambda_m = {}, lambda_M = {} (convergence factor {})",
                p.lambda_m(),
                p.lambda_max(),
                conv_factor_nu(&p, l2, ln)?
            ),
            Err(e) => println!("tuned interval: unavailable ({e})"),
        }
        if lam > 0.0 && lam < 1.0 {
            println!("safe symmetric bound: lambda_M < {}", safe_symmetric_bound(lam)?);
        }
        if let Some(p) = &params {
            let v = check_fixed_convergence(p, &s);
            println!("fixed-topology convergence: {v}");
            if v.is_pass() {
                println!("convergence factor: {}", conv_factor_nu(p, l2, ln)?);
            }
        }
        printed = true;
    }

    if let (Some(hi), Some(lo)) = (a.env_max, a.env_min) {
        let env = SwitchingEnvelope::new(hi, lo)?;
        if let Some(p) = &params {
            let c = check_switching_convergence(p, &env);
            println!(
                "switching sufficient condition: {} (product {})",
                verdict(c.pass),
                c.product
            );
        }
        match corollary_symmetric_param(&env, a.margin) {
            Ok(l) => println!("symmetric choice: lambda_M = -lambda_m = {l}"),
            Err(e) => println!("symmetric choice: unavailable ({e})"),
        }
        let p = corollary_asymmetric_params(&env, a.margin)?;
        println!(
            "centred choice: lambda_m = {}, lambda_M = {}",
            p.lambda_m(),
            p.lambda_max()
        );
        printed = true;
    }

    if !printed {
        return Err(Error::Config(
            "give --lambda-2 and --lambda-N, or --env-max and --env-min".into(),
        ));
    }
    Ok(())
}

fn cmd_tables(a: TablesArgs) -> Result<()> {
    let names: Vec<&str> = if a.name == "all" {
        PRESET_NAMES.to_vec()
    } else {
        vec![a.name.as_str()]
    };
    std::fs::create_dir_all(&a.out_dir)?;
    for name in names {
        for (stem, mut cfg) in preset(name)? {
            if let Some(v) = a.seed {
                cfg.seed = v;
            }
            if let Some(v) = a.n_graphs {
                cfg.n_graphs = v;
            }
            if let Some(v) = a.n_inits {
                cfg.n_inits = v;
            }
            cfg.validate()?;
            let table = run_experiment(&cfg)?;
            let path = a.out_dir.join(format!("{stem}.csv"));
            emit_csv(&table, &path)?;
            println!("{}", path.display());
        }
    }
    Ok(())
}
