use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use funspec::config::{InstanceSpec, RingSpec};
use funspec::verify::table;
use funspec::{run, verify_suite, Diagnostic, RunConfig, Task};

const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "funspec", version, about = "Spectra, supports and path algebras of small tensor triangulated categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run only these tasks (repeatable).
    #[arg(long = "task")]
    tasks: Vec<String>,
    /// Samples per sampled check.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// A quiver instance, from --config.
    Quiver {
        #[command(flatten)]
        common: Common,
    },
    /// Perfect complexes over Z/n (or any ring given by --config).
    Ring {
        #[arg(long)]
        zmod: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// The orbit category of graded vector spaces by [m].
    Orbit {
        #[command(subcommand)]
        action: Option<OrbitAction>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance matrix.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Break the tensor product of the quiver fixtures; the suite must fail.
        #[arg(long)]
        corrupt: bool,
    },
}

#[derive(Subcommand)]
enum OrbitAction {
    /// Points, ideals, primes and comparison for one m.
    Check {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "f2")]
        field: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn invalid(diags: &[Diagnostic]) -> ExitCode {
    let body = serde_json::json!({ "status": "invalid", "diagnostics": diags });
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("plain data"));
    ExitCode::from(EXIT_INVALID)
}

fn load(common: &Common, fallback: Option<InstanceSpec>, kind: &str) -> Result<RunConfig, Vec<Diagnostic>> {
    let diag = |m: String| vec![Diagnostic { field: "config".into(), message: m }];
    let mut cfg = match (&common.config, fallback) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| diag(format!("{}: {e}", path.display())))?;
            RunConfig::from_json(&text)?
        }
        (None, Some(instance)) => RunConfig {
            tasks: Task::ALL.into_iter().filter(|t| instance.supports(*t)).collect(),
            instance,
            seed: 0,
            budgets: Default::default(),
            gamma: None,
            transport: None,
            out: None,
        },
        (None, None) => return Err(diag(format!("the {kind} subcommand needs --config"))),
    };
    if cfg.instance.kind() != kind {
        return Err(diag(format!("config describes a {} instance, not a {kind}", cfg.instance.kind())));
    }
    if !common.tasks.is_empty() {
        let mut tasks = Vec::new();
        for name in &common.tasks {
            tasks.push(Task::parse(name).ok_or_else(|| diag(format!("unknown task {name:?}")))?);
        }
        cfg.tasks = tasks;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(samples) = common.samples {
        cfg.budgets.samples = samples;
    }
    if let Some(out) = &common.out {
        cfg.out = Some(out.display().to_string());
    }
    Ok(cfg)
}

fn execute(cfg: RunConfig) -> ExitCode {
    let diags = cfg.validate();
    if !diags.is_empty() {
        return invalid(&diags);
    }
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => return invalid(&[Diagnostic { field: "instance".into(), message: e.to_string() }]),
    };
    let json = report.to_json();
    match &cfg.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &json) {
                return invalid(&[Diagnostic { field: "out".into(), message: format!("{path}: {e}") }]);
            }
            print!("{}", report.summary());
        }
        None => print!("{json}"),
    }
    ExitCode::from(report.status.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let loaded = match cli.command {
        Command::Quiver { common } => load(&common, None, "quiver"),
        Command::Ring { zmod, common } => load(&common, zmod.map(|n| InstanceSpec::Ring(RingSpec::Zmod(n))), "ring"),
        Command::Orbit { action: Some(OrbitAction::Check { m, field, samples, seed }), common } => {
            let mut common = common;
            common.seed = common.seed.or(Some(seed));
            common.samples = common.samples.or(Some(samples));
            load(&common, Some(InstanceSpec::Orbit { m, field }), "orbit")
        }
        Command::Orbit { action: None, common } => load(&common, None, "orbit"),
        Command::Verify { seed, corrupt } => {
            let checks = verify_suite(seed, corrupt);
            print!("{}", table(&checks));
            return if checks.iter().all(|c| c.passed()) { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
    };
    match loaded {
        Ok(cfg) => execute(cfg),
        Err(d) => invalid(&d),
    }
}
