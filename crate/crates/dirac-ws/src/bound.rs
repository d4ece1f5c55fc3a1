use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{
    bound_matching, exponents_with_branch, grid_interior, MuBranch, PhysicalConfig, ProblemKind,
};
use crate::search::golden_min;
use crate::special::hyp2f1_c;

/// Energies closer than this to a window edge are rejected outright; the
/// condition value is dominated by the edge degeneracy there.
pub const EDGE_TOL: f64 = 1e-10;

/// Inset applied to both window edges when scanning for roots.
const EDGE_INSET: f64 = 1e-8;

/// Discrete spectrum of the well, as found by scanning the quantization
/// condition.
#[derive(Debug, Clone)]
pub struct BoundStateSpectrum {
    pub config: PhysicalConfig,
    pub branch: MuBranch,
    pub energies: Vec<f64>,
    /// |condition| at each accepted root.
    pub residuals: Vec<f64>,
    /// Acceptance tolerance actually applied (user supplied, or scaled from
    /// the median condition magnitude over the scan grid).
    pub tol: f64,
}

impl BoundStateSpectrum {
    pub fn count(&self) -> usize {
        self.energies.len()
    }
}

/// The energy window (lower, upper) that can hold discrete states.
pub fn bound_window(cfg: &PhysicalConfig) -> (f64, f64) {
    ((-cfg.m0).max(cfg.m0 - cfg.v0), cfg.m0)
}

/// The quantization condition f(e) for the well; bound energies are its real
/// zeros. `branch` selects the root of the outside edge exponent (see
/// [`MuBranch`]); only the decaying branch reproduces shooting spectra.
pub fn eigen_condition(cfg: &PhysicalConfig, e: f64, branch: MuBranch) -> Result<Complex64> {
    let (lower, upper) = bound_window(cfg);
    if lower >= upper {
        return Err(Error::Domain(format!(
            "well too shallow for bound states (window {lower}:{upper})"
        )));
    }
    if !e.is_finite() {
        return Err(Error::Domain(format!("energy {e} is not finite")));
    }
    // the window edges are channel thresholds; report them as such before
    // the out-of-window rejection
    if (e - lower).abs() <= EDGE_TOL || (e - upper).abs() <= EDGE_TOL {
        return Err(Error::Threshold { e, tol: EDGE_TOL });
    }
    if e <= lower || e >= upper {
        return Err(Error::Domain(format!(
            "energy {e} outside the bound window ({lower}, {upper})"
        )));
    }
    let xp = exponents_with_branch(cfg, ProblemKind::Well, e, branch)?;
    let bm = bound_matching(&xp)?;
    let x_log = -4.0 * cfg.alpha * xp.nu * cfg.l;
    // f = S'2 S'3 - S'1 S'4 e^{-4 alpha nu l}, pivoted so the carrier factor
    // cannot overflow before the cancellation
    let a = bm.log_s[1] + bm.log_s[2];
    let b = x_log + bm.log_s[0] + bm.log_s[3];
    let m = a.re.max(b.re);
    if !m.is_finite() {
        return Err(Error::NonConvergence(
            "bound matching coefficients all vanished".into(),
        ));
    }
    let f = ((a - m).exp() - (b - m).exp()) * m.exp();
    if !f.re.is_finite() || !f.im.is_finite() {
        return Err(Error::Overflow("bound condition".into()));
    }
    Ok(f)
}

/// Scan the bound window on `n_grid` points, polish every local minimum of
/// |f|^2, and accept roots where both parts of the condition vanish to `tol`
/// (defaults to 1e-8 of the median |f| over the scan). Clusters of roots
/// closer than five scan cells are re-resolved on a 10x finer local grid.
pub fn find_bound_states(
    cfg: &PhysicalConfig,
    n_grid: usize,
    tol: Option<f64>,
    branch: MuBranch,
) -> Result<BoundStateSpectrum> {
    let (lower, upper) = bound_window(cfg);
    let lo = lower + EDGE_INSET;
    let hi = upper - EDGE_INSET;
    if lo >= hi {
        return Err(Error::Domain(format!(
            "well too shallow for bound states (window {lower}:{upper})"
        )));
    }
    let n = n_grid.max(64);
    let grid = grid_interior(lo, hi, n);
    let h = grid[1] - grid[0];
    let fs: Vec<f64> = grid
        .iter()
        .map(|&e| {
            eigen_condition(cfg, e, branch)
                .map(|f| f.norm())
                .unwrap_or(f64::INFINITY)
        })
        .collect();
    let mut mags: Vec<f64> = fs.iter().copied().filter(|m| m.is_finite()).collect();
    if mags.is_empty() {
        return Err(Error::NonConvergence(
            "condition unavailable on the whole scan grid".into(),
        ));
    }
    mags.sort_by(|a, b| a.total_cmp(b));
    let tol = tol.unwrap_or(1e-8 * mags[mags.len() / 2]);

    let mut roots = scan_roots(cfg, branch, &grid, &fs, tol);

    // re-resolve suspicious near-degenerate pairs on a local 10x grid
    let mut i = 0;
    while i + 1 < roots.len() {
        let (e0, e1) = (roots[i].0, roots[i + 1].0);
        if e1 - e0 < 5.0 * h {
            let wlo = (e0 - h).max(lo);
            let whi = (e1 + h).min(hi);
            let m = (((whi - wlo) / h * 10.0).ceil() as usize).max(64);
            let local = grid_interior(wlo, whi, m);
            let lfs: Vec<f64> = local
                .iter()
                .map(|&e| {
                    eigen_condition(cfg, e, branch)
                        .map(|f| f.norm())
                        .unwrap_or(f64::INFINITY)
                })
                .collect();
            let refined = scan_roots(cfg, branch, &local, &lfs, tol);
            if !refined.is_empty() {
                roots.splice(i..i + 2, refined.clone());
                i += refined.len();
                continue;
            }
        }
        i += 1;
    }

    Ok(BoundStateSpectrum {
        config: *cfg,
        branch,
        energies: roots.iter().map(|r| r.0).collect(),
        residuals: roots.iter().map(|r| r.1).collect(),
        tol,
    })
}

fn scan_roots(
    cfg: &PhysicalConfig,
    branch: MuBranch,
    grid: &[f64],
    fs: &[f64],
    tol: f64,
) -> Vec<(f64, f64)> {
    let objective = |e: f64| -> f64 {
        eigen_condition(cfg, e, branch)
            .map(|f| f.norm_sqr())
            .unwrap_or(f64::INFINITY)
    };
    let mut out: Vec<(f64, f64)> = Vec::new();
    for i in 1..grid.len() - 1 {
        if !(fs[i].is_finite() && fs[i] < fs[i - 1] && fs[i] <= fs[i + 1]) {
            continue;
        }
        let e = golden_min(objective, grid[i - 1], grid[i + 1], 1e-13);
        let Ok(f) = eigen_condition(cfg, e, branch) else {
            continue;
        };
        if f.re.abs() <= tol && f.im.abs() <= tol {
            if let Some(last) = out.last() {
                if (e - last.0).abs() < 0.5 * (grid[1] - grid[0]) {
                    continue;
                }
            }
            out.push((e, f.norm()));
        }
    }
    out
}

/// Closed-form bound amplitude phi(x) for a candidate energy, normalized to
/// unit left-wall coefficient. Continuous across x = 0 only when `e` is an
/// eigenvalue; the mismatch there is exactly what the quantization condition
/// measures.
pub fn bound_wavefunction(
    cfg: &PhysicalConfig,
    e: f64,
    branch: MuBranch,
    x: f64,
) -> Result<Complex64> {
    let xp = exponents_with_branch(cfg, ProblemKind::Well, e, branch)?;
    let t = xp.triples();
    if x <= 0.0 {
        // argument and complement each in cancellation-free logistic form
        let u = cfg.alpha * (x + cfg.l);
        let y = 1.0 / (1.0 + (-u).exp());
        let omy = 1.0 / (1.0 + u.exp());
        let yc = Complex64::from(y);
        Ok(yc.powc(xp.mu)
            * Complex64::from(omy).powc(xp.nu)
            * hyp2f1_c(t[0].a, t[0].b, t[0].c, y, omy)?)
    } else {
        let bm = bound_matching(&xp)?;
        // right-wall coefficient tied to the left one by the wall matching
        let scale = (bm.log_s[0] - bm.log_s[1] - 2.0 * cfg.alpha * xp.nu * cfg.l).exp();
        let u = cfg.alpha * (x - cfg.l);
        let z = 1.0 / (1.0 + u.exp());
        let omz = 1.0 / (1.0 + (-u).exp());
        let zc = Complex64::from(z);
        Ok(scale
            * zc.powc(xp.mu)
            * Complex64::from(omz).powc(xp.nu)
            * hyp2f1_c(t[3].a, t[3].b, t[3].c, z, omz)?)
    }
}
