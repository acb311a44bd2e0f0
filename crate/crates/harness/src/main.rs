use clap::{Args, Parser, Subcommand, ValueEnum};
use digraph_core::{io::read_edge_list, verify_embedding, Digraph, Embedding, OrientationPattern};
use embed::{embed_cycle, universality_sweep, EmbedConfig, EmbedOutcome};
use harness::{
    emit, run_trials, scan_to_csv, sweep_to_csv, threshold_scan, write_text, BatteryItem, Format, GridScale,
    HarnessError, HostSpec, TrialSpec,
};
use randgen::{perturb, ModelKind, RandomModel};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Thread count for trial execution; unset means one per core.
const THREADS_VAR: &str = "HARNESS_THREADS";

#[derive(Parser)]
#[command(name = "harness", version, about = "Embed oriented cycles into randomly perturbed digraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Monte Carlo trials over a grid of sizes and constants.
    Trial {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Smallest grid constant reaching a target success rate.
    Scan {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 0.9)]
        target: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Every orientation of each length on one sampled instance.
    Sweep {
        #[command(flatten)]
        one: OneArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        /// Exhaustive when a length has at most this many orientations.
        #[arg(long, default_value_t = 64)]
        per_length: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Embed one pattern, e.g. "cycle +-+-", and print the outcome as JSON.
    EmbedOne {
        #[command(flatten)]
        one: OneArgs,
        #[arg(long)]
        pattern: String,
    },
    /// Check an embedding (JSON) against a digraph (edge list).
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HostArg {
    Empty,
    Complete,
    Bipartite,
    Oneway,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    D,
    Dstar,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Semi,
    Total,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Plotdata,
}

#[derive(Args)]
struct HostArgs {
    #[arg(long, value_enum, default_value = "bipartite")]
    host: HostArg,
    /// Edge list for `--host file`.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Part fraction of the extremal hosts, also the embedder's degree fraction.
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "dstar")]
    model: ModelArg,
    #[arg(long, value_enum, default_value = "semi")]
    regime: RegimeArg,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    host: HostArgs,
    #[arg(long, value_delimiter = ',', default_value = "50")]
    n: Vec<usize>,
    /// Constants with `p = C/n`.
    #[arg(long = "C", value_delimiter = ',', conflicts_with = "p")]
    c: Vec<f64>,
    /// Edge probabilities.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    /// consistent, antidirected, random:COUNT, blocky:LEN
    #[arg(long, value_delimiter = ',', default_value = "consistent,antidirected,random:3")]
    battery: Vec<BatteryItem>,
    /// Cycle length; Hamilton when omitted.
    #[arg(long)]
    len: Option<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    master_seed: u64,
    /// JSON trial spec; replaces every grid flag.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct OneArgs {
    #[command(flatten)]
    host: HostArgs,
    #[arg(long)]
    n: usize,
    #[arg(long = "C", conflicts_with = "p")]
    c: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl HostArgs {
    fn host_spec(&self) -> Result<HostSpec, HarnessError> {
        Ok(match self.host {
            HostArg::Empty => HostSpec::Empty,
            HostArg::Complete => HostSpec::Complete,
            HostArg::Bipartite => HostSpec::Bipartite { alpha: self.alpha },
            HostArg::Oneway => HostSpec::Oneway { alpha: self.alpha },
            HostArg::File => HostSpec::File {
                path: self
                    .graph
                    .clone()
                    .ok_or_else(|| HarnessError::InvalidSpec("--host file needs --graph".into()))?,
            },
        })
    }

    fn model(&self) -> ModelKind {
        match self.model {
            ModelArg::D => ModelKind::Directed,
            ModelArg::Dstar => ModelKind::Bidirected,
        }
    }

    fn config(&self) -> EmbedConfig {
        let mut cfg = match self.regime {
            RegimeArg::Semi => EmbedConfig::semi(self.alpha),
            RegimeArg::Total => EmbedConfig::total(self.alpha),
        };
        if let Some(e) = self.epsilon {
            cfg.epsilon = e;
        }
        cfg
    }
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
        FormatArg::Plotdata => Format::Plotdata,
    }
}

fn trial_spec(g: &GridArgs) -> Result<TrialSpec, HarnessError> {
    if let Some(path) = &g.spec {
        let text = std::fs::read_to_string(path)?;
        return serde_json::from_str(&text).map_err(|e| HarnessError::InvalidSpec(e.to_string()));
    }
    let (scale, grid) = match (g.c.is_empty(), g.p.is_empty()) {
        (false, _) => (GridScale::C, g.c.clone()),
        (true, false) => (GridScale::P, g.p.clone()),
        (true, true) => (GridScale::C, vec![10.0]),
    };
    let mut spec = TrialSpec::new(g.host.host_spec()?, g.host.config());
    spec.model = g.host.model();
    spec.scale = scale;
    spec.c_grid = grid;
    spec.n_grid = g.n.clone();
    spec.battery = g.battery.clone();
    spec.cycle_len = g.len;
    spec.trials = g.trials;
    spec.master_seed = g.master_seed;
    Ok(spec)
}

fn one_instance(o: &OneArgs) -> Result<(Digraph, EmbedConfig), HarnessError> {
    let host = o.host.host_spec()?.build(o.n)?;
    let p = match (o.c, o.p) {
        (Some(c), _) => (c / o.n as f64).min(1.0),
        (None, Some(p)) => p,
        (None, None) => 0.0,
    };
    let model = RandomModel::new(o.host.model(), o.n, p, o.seed);
    let d = perturb(&host, &model).map_err(|e| HarnessError::InvalidSpec(e.to_string()))?;
    Ok((d, o.host.config().with_seed(o.seed)))
}

fn out_path(h: &HostArgs) -> Option<&Path> {
    h.out.as_deref()
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.cmd {
        Cmd::Trial { grid, format: f } => {
            let report = run_trials(&trial_spec(&grid)?)?;
            emit(&report, format(f), out_path(&grid.host))?;
        }
        Cmd::Scan { grid, target, format: f } => {
            let scan = threshold_scan(&trial_spec(&grid)?, target)?;
            let text = match f {
                FormatArg::Json => serde_json::to_string_pretty(&scan).expect("plain data"),
                FormatArg::Csv => scan_to_csv(&scan)?,
                FormatArg::Plotdata => harness::to_plotdata(&scan.report),
            };
            write_text(&text, out_path(&grid.host))?;
        }
        Cmd::Sweep { one, lengths, per_length, format: f } => {
            let (d, cfg) = one_instance(&one)?;
            let rep = universality_sweep(&d, &lengths, per_length, &cfg)
                .map_err(|e| HarnessError::InvalidSpec(e.to_string()))?;
            let text = match f {
                FormatArg::Json => serde_json::to_string_pretty(&rep).expect("plain data"),
                _ => sweep_to_csv(&rep)?,
            };
            write_text(&text, out_path(&one.host))?;
        }
        Cmd::EmbedOne { one, pattern } => {
            let c: OrientationPattern = pattern
                .parse()
                .map_err(|e: digraph_core::CoreError| HarnessError::InvalidSpec(e.to_string()))?;
            let (d, cfg) = one_instance(&one)?;
            let out = embed_cycle(&d, &c, &cfg).map_err(|e| HarnessError::InvalidSpec(e.to_string()))?;
            write_text(&(out.to_json() + "\n"), out_path(&one.host))?;
        }
        Cmd::Verify { graph, embedding } => {
            let d = read_edge_list(std::io::BufReader::new(std::fs::File::open(&graph)?))
                .map_err(|e| HarnessError::InvalidSpec(e.to_string()))?;
            let text = std::fs::read_to_string(&embedding)?;
            let e: Embedding = match serde_json::from_str::<EmbedOutcome>(&text) {
                Ok(EmbedOutcome::Found { embedding, .. }) => embedding,
                Ok(EmbedOutcome::Failed(_)) => {
                    return Err(HarnessError::InvalidSpec("outcome holds no embedding".into()))
                }
                Err(_) => serde_json::from_str(&text).map_err(|e| HarnessError::InvalidSpec(e.to_string()))?,
            };
            let ok = verify_embedding(&d, &e);
            println!("{}", if ok { "valid" } else { "invalid" });
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = std::env::var(THREADS_VAR).ok().and_then(|s| s.parse::<usize>().ok()) {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
