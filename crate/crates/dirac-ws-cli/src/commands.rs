//! Command runners: each produces a [`CommandOutput`] (tables plus the
//! resolved-parameter record) and leaves rendering to the output layer.

use dirac_ws::bound::{bound_window, eigen_condition, find_bound_states};
use dirac_ws::model::{grid_half_open, grid_interior};
use dirac_ws::scattering::{resonances, sweep, SweepPoint, SweepVariable};
use dirac_ws::{MuBranch, PhysicalConfig, ProblemKind};
use serde_json::{json, Value};

use crate::config::{Overrides, Resolved};
use crate::output::{Cell, CommandOutput, Table};
use crate::CliError;

/// Bundled datasets. fig1-fig4 are barrier curves, fig5/fig6 are well
/// quantization-condition curves with a roots sidecar.
#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureId {
    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }

    /// Captioned parameters of the dataset; explicit config-file entries and
    /// flags override them field by field.
    pub fn preset(self) -> Overrides {
        let barrier = Overrides {
            m0: Some(0.4),
            m1: Some(0.01),
            v0: Some(1.2),
            alpha: Some(5.0),
            len_l: Some(10.0),
            ..Default::default()
        };
        let well = Overrides {
            m0: Some(0.5),
            m1: Some(0.1),
            v0: Some(1.0),
            alpha: Some(10.0),
            len_l: Some(5.0),
            ..Default::default()
        };
        match self {
            FigureId::Fig1 | FigureId::Fig2 | FigureId::Fig3 | FigureId::Fig4 => barrier,
            FigureId::Fig5 => well,
            FigureId::Fig6 => Overrides {
                m1: Some(0.0),
                ..well
            },
        }
    }

    pub fn kind(self) -> ProblemKind {
        match self {
            FigureId::Fig5 | FigureId::Fig6 => ProblemKind::Well,
            _ => ProblemKind::Barrier,
        }
    }
}

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindChoice {
    Barrier,
    Well,
}

impl KindChoice {
    pub fn to_kind(self) -> ProblemKind {
        match self {
            KindChoice::Barrier => ProblemKind::Barrier,
            KindChoice::Well => ProblemKind::Well,
        }
    }
}

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchChoice {
    Growing,
    Decaying,
}

impl BranchChoice {
    pub fn to_branch(self) -> MuBranch {
        match self {
            BranchChoice::Growing => MuBranch::Growing,
            BranchChoice::Decaying => MuBranch::Decaying,
        }
    }
}

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVarChoice {
    Energy,
    V0,
    Alpha,
    LenL,
}

impl SweepVarChoice {
    pub fn label(self) -> &'static str {
        match self {
            SweepVarChoice::Energy => "energy",
            SweepVarChoice::V0 => "v0",
            SweepVarChoice::Alpha => "alpha",
            SweepVarChoice::LenL => "len-l",
        }
    }
}

fn kind_label(kind: ProblemKind) -> &'static str {
    match kind {
        ProblemKind::Barrier => "barrier",
        ProblemKind::Well => "well",
    }
}

fn branch_label(branch: MuBranch) -> &'static str {
    match branch {
        MuBranch::Growing => "growing",
        MuBranch::Decaying => "decaying",
    }
}

/// Parameter errors at config-construction time are user input problems.
fn build_config(m0: f64, m1: f64, v0: f64, alpha: f64, l: f64) -> Result<PhysicalConfig, CliError> {
    PhysicalConfig::new(m0, m1, v0, alpha, l).map_err(|e| CliError::Usage(e.to_string()))
}

fn config_from(r: &Resolved) -> Result<PhysicalConfig, CliError> {
    build_config(r.m0, r.m1, r.v0, r.alpha, r.len_l)
}

/// Transmission/reflection cells of one sweep point; failed points become
/// holes so the series stays aligned with its abscissas.
fn tr_cells(p: &SweepPoint) -> (Cell, Cell) {
    match &p.result {
        Ok(s) => (Cell::Num(s.t), Cell::Num(s.r)),
        Err(_) => (Cell::Empty, Cell::Empty),
    }
}

fn t_cell(p: &SweepPoint) -> Cell {
    match &p.result {
        Ok(s) => Cell::Num(s.t),
        Err(_) => Cell::Empty,
    }
}

/// Base parameters shared by every manifest.
fn base_params(r: &Resolved) -> Value {
    json!({
        "m0": r.m0,
        "m1": r.m1,
        "v0": r.v0,
        "alpha": r.alpha,
        "len_l": r.len_l,
        "grid": r.grid,
        "format": r.format.label(),
    })
}

fn with_extra(mut base: Value, extra: Value) -> Value {
    let (Value::Object(b), Value::Object(e)) = (&mut base, extra) else {
        unreachable!("params are objects");
    };
    b.extend(e);
    base
}

/// Energy window of the transmission figures and the probe energy of the
/// height figures.
const FIG_E_WINDOW: (f64, f64) = (0.2, 1.2);
const FIG_V0_WINDOW: (f64, f64) = (0.0, 3.0);
const FIG_PROBE_E: f64 = 0.8;
/// Panel values of the steepness/half-width comparison figures.
const PANEL_ALPHAS: [f64; 3] = [2.0, 5.0, 25.0];
const PANEL_LENS: [f64; 3] = [5.0, 10.0, 20.0];

pub fn run_figure(id: FigureId, r: &Resolved, branch: MuBranch) -> Result<CommandOutput, CliError> {
    let command = format!("figure {}", id.name());
    match id {
        FigureId::Fig1 | FigureId::Fig2 => {
            // two configurations side by side: constant mass and a mass step
            let cfg_c = build_config(r.m0, 0.0, r.v0, r.alpha, r.len_l)?;
            let cfg_p = config_from(r)?;
            let (var, window, columns, extra) = if id == FigureId::Fig1 {
                (
                    SweepVariable::Energy,
                    FIG_E_WINDOW,
                    vec!["e", "t_const", "r_const", "t_pdm", "r_pdm"],
                    json!({ "figure": id.name(), "e_window": [FIG_E_WINDOW.0, FIG_E_WINDOW.1] }),
                )
            } else {
                (
                    SweepVariable::Height { e: FIG_PROBE_E },
                    FIG_V0_WINDOW,
                    vec!["v0", "t_const", "r_const", "t_pdm", "r_pdm"],
                    json!({
                        "figure": id.name(),
                        "v0_window": [FIG_V0_WINDOW.0, FIG_V0_WINDOW.1],
                        "probe_e": FIG_PROBE_E,
                    }),
                )
            };
            let grid = grid_half_open(window.0, window.1, r.grid);
            let const_pts = sweep(&cfg_c, ProblemKind::Barrier, var, &grid);
            let pdm_pts = sweep(&cfg_p, ProblemKind::Barrier, var, &grid);
            let rows = grid
                .iter()
                .zip(const_pts.iter().zip(&pdm_pts))
                .map(|(&x, (c, p))| {
                    let (tc, rc) = tr_cells(c);
                    let (tp, rp) = tr_cells(p);
                    vec![Cell::Num(x), tc, rc, tp, rp]
                })
                .collect();
            Ok(CommandOutput {
                command,
                params: with_extra(base_params(r), extra),
                main: Table {
                    name: None,
                    columns,
                    rows,
                },
                sidecars: vec![],
            })
        }
        FigureId::Fig3 | FigureId::Fig4 => {
            // one panel varies the wall steepness, the other the half-width;
            // both share the abscissa grid, so they merge into one table
            let mut configs = Vec::new();
            for a in PANEL_ALPHAS {
                configs.push(build_config(r.m0, r.m1, r.v0, a, r.len_l)?);
            }
            for l in PANEL_LENS {
                configs.push(build_config(r.m0, r.m1, r.v0, r.alpha, l)?);
            }
            let (var, window, first_col, extra) = if id == FigureId::Fig3 {
                (
                    SweepVariable::Energy,
                    FIG_E_WINDOW,
                    "e",
                    json!({ "figure": id.name(), "e_window": [FIG_E_WINDOW.0, FIG_E_WINDOW.1],
                            "alphas": PANEL_ALPHAS, "lens": PANEL_LENS }),
                )
            } else {
                (
                    SweepVariable::Height { e: FIG_PROBE_E },
                    FIG_V0_WINDOW,
                    "v0",
                    json!({ "figure": id.name(), "v0_window": [FIG_V0_WINDOW.0, FIG_V0_WINDOW.1],
                            "probe_e": FIG_PROBE_E, "alphas": PANEL_ALPHAS, "lens": PANEL_LENS }),
                )
            };
            let grid = grid_half_open(window.0, window.1, r.grid);
            let curves: Vec<Vec<Cell>> = configs
                .iter()
                .map(|cfg| {
                    sweep(cfg, ProblemKind::Barrier, var, &grid)
                        .iter()
                        .map(t_cell)
                        .collect()
                })
                .collect();
            let rows = grid
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let mut row = vec![Cell::Num(x)];
                    row.extend(curves.iter().map(|c| c[i]));
                    row
                })
                .collect();
            let columns = vec![first_col, "t_a2", "t_a5", "t_a25", "t_l5", "t_l10", "t_l20"];
            Ok(CommandOutput {
                command,
                params: with_extra(base_params(r), extra),
                main: Table {
                    name: None,
                    columns,
                    rows,
                },
                sidecars: vec![],
            })
        }
        FigureId::Fig5 | FigureId::Fig6 => {
            let cfg = config_from(r)?;
            let condition = quantization_table(&cfg, r.grid, branch)?;
            let roots = roots_table(&cfg, r.grid, r.tol, branch)?;
            let (lo, hi) = bound_window(&cfg);
            let extra = json!({
                "figure": id.name(),
                "window": [lo, hi],
                "mu_branch": branch_label(branch),
                "tol": r.tol,
            });
            Ok(CommandOutput {
                command,
                params: with_extra(base_params(r), extra),
                main: condition,
                sidecars: vec![roots],
            })
        }
    }
}

/// The quantization condition sampled across the interior of the discrete
/// window: columns e, re_f, im_f.
fn quantization_table(
    cfg: &PhysicalConfig,
    grid: usize,
    branch: MuBranch,
) -> Result<Table, CliError> {
    let (lo, hi) = bound_window(cfg);
    if lo >= hi {
        return Err(CliError::Runtime(format!(
            "well has no discrete window ({lo}:{hi})"
        )));
    }
    let rows = grid_interior(lo, hi, grid)
        .iter()
        .map(|&e| match eigen_condition(cfg, e, branch) {
            Ok(f) => vec![Cell::Num(e), Cell::Num(f.re), Cell::Num(f.im)],
            Err(_) => vec![Cell::Num(e), Cell::Empty, Cell::Empty],
        })
        .collect();
    Ok(Table {
        name: None,
        columns: vec!["e", "re_f", "im_f"],
        rows,
    })
}

fn roots_table(
    cfg: &PhysicalConfig,
    grid: usize,
    tol: Option<f64>,
    branch: MuBranch,
) -> Result<Table, CliError> {
    let spectrum =
        find_bound_states(cfg, grid, tol, branch).map_err(|e| CliError::Runtime(e.to_string()))?;
    let rows = spectrum
        .energies
        .iter()
        .zip(&spectrum.residuals)
        .enumerate()
        .map(|(i, (&e, &res))| vec![Cell::Count(i), Cell::Num(e), Cell::Num(res)])
        .collect();
    Ok(Table {
        name: Some("roots"),
        columns: vec!["index", "e", "residual"],
        rows,
    })
}

pub fn run_sweep(
    r: &Resolved,
    kind: ProblemKind,
    var: SweepVarChoice,
    window: (f64, f64),
    at_e: Option<f64>,
) -> Result<CommandOutput, CliError> {
    let lib_var = match (var, at_e) {
        (SweepVarChoice::Energy, None) => SweepVariable::Energy,
        (SweepVarChoice::Energy, Some(_)) => {
            return Err(CliError::Usage(
                "--at-e only applies to non-energy sweeps".into(),
            ))
        }
        (_, None) => {
            return Err(CliError::Usage(format!(
                "sweeping {} needs a probe energy: pass --at-e",
                var.label()
            )))
        }
        (SweepVarChoice::V0, Some(e)) => SweepVariable::Height { e },
        (SweepVarChoice::Alpha, Some(e)) => SweepVariable::Steepness { e },
        (SweepVarChoice::LenL, Some(e)) => SweepVariable::HalfWidth { e },
    };
    let cfg = config_from(r)?;
    let grid = grid_half_open(window.0, window.1, r.grid);
    let rows = sweep(&cfg, kind, lib_var, &grid)
        .iter()
        .map(|p| match &p.result {
            Ok(s) => vec![
                Cell::Num(p.x),
                Cell::Num(s.t),
                Cell::Num(s.r),
                Cell::Num(s.unitarity_defect),
                Cell::Flag(s.evanescent),
            ],
            Err(_) => vec![
                Cell::Num(p.x),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ],
        })
        .collect();
    let extra = json!({
        "var": var.label(),
        "window": [window.0, window.1],
        "at_e": at_e,
        "kind": kind_label(kind),
    });
    Ok(CommandOutput {
        command: "sweep".into(),
        params: with_extra(base_params(r), extra),
        main: Table {
            name: None,
            columns: vec!["x", "t", "r", "defect", "evanescent"],
            rows,
        },
        sidecars: vec![],
    })
}

pub fn run_bound(r: &Resolved, branch: MuBranch) -> Result<CommandOutput, CliError> {
    let cfg = config_from(r)?;
    let table = roots_table(&cfg, r.grid, r.tol, branch)?;
    let (lo, hi) = bound_window(&cfg);
    let extra = json!({
        "window": [lo, hi],
        "mu_branch": branch_label(branch),
        "tol": r.tol,
        "kind": "well",
    });
    Ok(CommandOutput {
        command: "bound".into(),
        params: with_extra(base_params(r), extra),
        main: Table {
            name: None,
            ..table
        },
        sidecars: vec![],
    })
}

pub fn run_resonances(
    r: &Resolved,
    kind: ProblemKind,
    window: (f64, f64),
) -> Result<CommandOutput, CliError> {
    let cfg = config_from(r)?;
    let found = resonances(&cfg, kind, window.0, window.1, r.tol)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let rows = found
        .iter()
        .enumerate()
        .map(|(i, res)| {
            vec![
                Cell::Count(i),
                Cell::Num(res.e),
                Cell::Num(res.t_at_peak),
                Cell::Num(res.residual),
            ]
        })
        .collect();
    let extra = json!({
        "window": [window.0, window.1],
        "kind": kind_label(kind),
        "tol": r.tol,
    });
    Ok(CommandOutput {
        command: "resonances".into(),
        params: with_extra(base_params(r), extra),
        main: Table {
            name: None,
            columns: vec!["index", "e", "t_at_peak", "residual"],
            rows,
        },
        sidecars: vec![],
    })
}
