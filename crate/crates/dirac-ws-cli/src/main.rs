use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dirac_ws::{MuBranch, PhysicalConfig, ProblemKind};
use dirac_ws_cli::checks::{run_checks, SuiteChoice, DEFAULT_SEED};
use dirac_ws_cli::commands::{
    run_bound, run_figure, run_resonances, run_sweep, BranchChoice, FigureId, KindChoice,
    SweepVarChoice,
};
use dirac_ws_cli::config::{parse_config_str, parse_range, resolve, Overrides, Resolved};
use dirac_ws_cli::output::{emit, manifest_path, Format, RunManifest};
use dirac_ws_cli::CliError;

#[derive(Parser)]
#[command(
    name = "dirac-ws",
    version,
    about = "Scattering, resonances, and bound states of a smooth-walled relativistic barrier or well"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GlobalArgs {
    /// Asymptotic mass m0
    #[arg(long, global = true)]
    m0: Option<f64>,
    /// Mass-step amplitude m1 (0 gives constant mass)
    #[arg(long, global = true)]
    m1: Option<f64>,
    /// Potential magnitude v0 (its sign comes from the problem kind)
    #[arg(long, global = true)]
    v0: Option<f64>,
    /// Wall steepness alpha
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Half-width l of the plateau
    #[arg(long, global = true)]
    len_l: Option<f64>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file; sidecar files share its stem. Default: stdout, except
    /// `figure`, which writes <id>.<ext>
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat key=value parameter file (flags override its entries)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Points per swept grid
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Acceptance tolerance for roots and checks (default: per command)
    #[arg(long, global = true)]
    tol: Option<f64>,
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            m0: self.m0,
            m1: self.m1,
            v0: self.v0,
            alpha: self.alpha,
            len_l: self.len_l,
            grid: self.grid,
            tol: self.tol,
            format: self.format,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Write one bundled dataset (fig1-fig4: barrier curves; fig5/fig6:
    /// quantization condition plus a roots sidecar)
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        /// Outside-tail branch for the quantization-condition datasets
        #[arg(long, value_enum)]
        mu_branch: Option<BranchChoice>,
    },
    /// Transmission/reflection over a swept variable; failed points stay as
    /// holes
    Sweep {
        #[arg(long, value_enum, default_value = "energy")]
        var: SweepVarChoice,
        /// Sweep window lo:hi, gridded as n points on (lo, hi]
        #[arg(long, value_parser = parse_window)]
        window: (f64, f64),
        /// Probe energy, required when sweeping anything but energy
        #[arg(long)]
        at_e: Option<f64>,
        #[arg(long, value_enum)]
        kind: Option<KindChoice>,
        /// Start from a bundled dataset's parameters
        #[arg(long, value_enum)]
        preset: Option<FigureId>,
    },
    /// Discrete energies of the well
    Bound {
        /// Outside-tail branch; only the decaying branch is normalizable
        #[arg(long, value_enum)]
        mu_branch: Option<BranchChoice>,
        /// Start from a bundled dataset's parameters
        #[arg(long, value_enum)]
        preset: Option<FigureId>,
    },
    /// Transmission resonances inside an energy window
    Resonances {
        /// Search window lo:hi
        #[arg(long, value_parser = parse_window)]
        window: (f64, f64),
        #[arg(long, value_enum)]
        kind: Option<KindChoice>,
        /// Start from a bundled dataset's parameters
        #[arg(long, value_enum)]
        preset: Option<FigureId>,
    },
    /// Run self-check suites; exits nonzero if any fails
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteChoice,
        /// Seed for the sampled configurations
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    parse_range(s)
}

fn main() -> ExitCode {
    match real_main(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn real_main(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let preset = match &cli.cmd {
        Cmd::Figure { id, .. } => Some(*id),
        Cmd::Sweep { preset, .. } | Cmd::Bound { preset, .. } | Cmd::Resonances { preset, .. } => {
            *preset
        }
        Cmd::Check { .. } => None,
    };
    let mut layers = Vec::new();
    if let Some(id) = preset {
        layers.push(id.preset());
    }
    if let Some(path) = &cli.global.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        layers.push(
            parse_config_str(&text)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?,
        );
    }
    layers.push(cli.global.overrides());
    let r = resolve(&layers);
    if r.grid < 2 {
        return Err(CliError::Usage(format!(
            "--grid must be at least 2, got {}",
            r.grid
        )));
    }
    if !matches!(cli.cmd, Cmd::Check { .. }) {
        if let Ok(cfg) = PhysicalConfig::new(r.m0, r.m1, r.v0, r.alpha, r.len_l) {
            for w in cfg.warnings() {
                eprintln!("warning: {w}");
            }
        }
    }

    match cli.cmd {
        Cmd::Figure { id, mu_branch } => {
            let branch = mu_branch
                .map(BranchChoice::to_branch)
                .unwrap_or(MuBranch::Growing);
            let co = run_figure(id, &r, branch)?;
            let default_out = PathBuf::from(format!("{}.{}", id.name(), r.format.extension()));
            let out = cli.global.out.clone().unwrap_or(default_out);
            finish_io(emit(
                &co,
                r.format,
                Some(&out),
                started.elapsed().as_millis() as u64,
            ))
        }
        Cmd::Sweep {
            var,
            window,
            at_e,
            kind,
            preset,
        } => {
            let kind = effective_kind(kind, preset);
            let co = run_sweep(&r, kind, var, window, at_e)?;
            finish_io(emit(
                &co,
                r.format,
                cli.global.out.as_deref(),
                started.elapsed().as_millis() as u64,
            ))
        }
        Cmd::Bound { mu_branch, .. } => {
            let branch = mu_branch
                .map(BranchChoice::to_branch)
                .unwrap_or(MuBranch::Decaying);
            let co = run_bound(&r, branch)?;
            finish_io(emit(
                &co,
                r.format,
                cli.global.out.as_deref(),
                started.elapsed().as_millis() as u64,
            ))
        }
        Cmd::Resonances {
            window,
            kind,
            preset,
        } => {
            let kind = effective_kind(kind, preset);
            let co = run_resonances(&r, kind, window)?;
            finish_io(emit(
                &co,
                r.format,
                cli.global.out.as_deref(),
                started.elapsed().as_millis() as u64,
            ))
        }
        Cmd::Check { suite, seed } => run_check_command(&cli, &r, suite, seed, started),
    }
}

/// A consumer that stops reading (`... | head`) is a clean exit, not an
/// error; everything else on the output path is a runtime failure.
fn finish_io(res: std::io::Result<()>) -> Result<(), CliError> {
    match res {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Runtime(format!("writing output: {e}"))),
    }
}

/// Explicit --kind wins; otherwise a preset implies its own problem kind;
/// otherwise barrier.
fn effective_kind(kind: Option<KindChoice>, preset: Option<FigureId>) -> ProblemKind {
    kind.map(KindChoice::to_kind)
        .or(preset.map(FigureId::kind))
        .unwrap_or(ProblemKind::Barrier)
}

fn run_check_command(
    cli: &Cli,
    r: &Resolved,
    suite: SuiteChoice,
    seed: Option<u64>,
    started: Instant,
) -> Result<(), CliError> {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let outcomes = run_checks(suite, seed, r.tol);
    let mut report = String::new();
    for o in &outcomes {
        let status = if o.passed { "ok" } else { "FAIL" };
        report.push_str(&format!("check {}: {status} - {}\n", o.name, o.detail));
    }
    {
        use std::io::Write;
        finish_io(std::io::stdout().write_all(report.as_bytes()))?;
    }
    if let Some(out) = &cli.global.out {
        let write_err = |e: std::io::Error| CliError::Runtime(format!("writing output: {e}"));
        std::fs::write(out, &report).map_err(write_err)?;
        let manifest = RunManifest {
            command: "check".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            params: json!({ "suite": suite.label(), "seed": seed, "tol": r.tol }),
            outputs: vec![out
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()],
            duration_ms: started.elapsed().as_millis() as u64,
        };
        std::fs::write(manifest_path(out), manifest.to_json_string()).map_err(write_err)?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}
