use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{PhysicalConfig, ProblemKind, THRESHOLD_TOL};
use crate::search::bisect;

/// Which form of the wave equation the integrator drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Second-order equation for the upper amplitude with the mass kept
    /// position dependent but its derivative dropped.
    Reduced,
    /// First-order coupled pair for both amplitudes; exact for every m1.
    FullCoupled,
    /// Second-order equation including the mass-derivative terms; equivalent
    /// to `FullCoupled` up to integration error.
    FullWithMassDerivative,
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrationSettings {
    /// Matching half-span; defaults to 4 l + 20/alpha, far enough out that
    /// the profile tails are below double precision.
    pub x_max: Option<f64>,
    pub rtol: f64,
    pub atol: f64,
    pub mode: OracleMode,
    pub max_steps: usize,
}

impl Default for IntegrationSettings {
    fn default() -> Self {
        Self {
            x_max: None,
            rtol: 1e-10,
            atol: 1e-12,
            mode: OracleMode::Reduced,
            max_steps: 1_000_000,
        }
    }
}

impl IntegrationSettings {
    pub fn span(&self, cfg: &PhysicalConfig) -> f64 {
        self.x_max.unwrap_or(4.0 * cfg.l + 20.0 / cfg.alpha)
    }
}

type State = [Complex64; 2];

// Dormand-Prince 5(4) stage coefficients.
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

fn axpy(y: &State, h: f64, ks: &[State], w: &[f64]) -> State {
    let mut out = *y;
    for (k, &c) in ks.iter().zip(w) {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Adaptive embedded 5(4) integration of dy/dx = f(x, y) from x0 to x1 in
/// either direction. Returns the final state and the accepted step count.
fn integrate<F: Fn(f64, &State) -> State>(
    f: &F,
    x0: f64,
    x1: f64,
    y0: State,
    rtol: f64,
    atol: f64,
    max_steps: usize,
) -> Result<(State, usize)> {
    let span = x1 - x0;
    if span == 0.0 {
        return Ok((y0, 0));
    }
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut h = span / 100.0;
    let mut k1 = f(x, &y);
    let mut steps = 0usize;
    let mut evals = 0usize;
    // sub-ulp remainders after the final clipped step count as arrival
    while (x1 - x) * dir > span.abs() * 1e-14 {
        if steps >= max_steps || evals >= 8 * max_steps {
            return Err(Error::Stiffness { x, h });
        }
        if h.abs() < span.abs() * 1e-15 {
            return Err(Error::Stiffness { x, h });
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        let k2 = f(x + C[0] * h, &axpy(&y, h, &[k1], &A2));
        let k3 = f(x + C[1] * h, &axpy(&y, h, &[k1, k2], &A3));
        let k4 = f(x + C[2] * h, &axpy(&y, h, &[k1, k2, k3], &A4));
        let k5 = f(x + C[3] * h, &axpy(&y, h, &[k1, k2, k3, k4], &A5));
        let k6 = f(x + C[4] * h, &axpy(&y, h, &[k1, k2, k3, k4, k5], &A6));
        let y5 = axpy(&y, h, &[k1, k2, k3, k4, k5, k6], &B5);
        let k7 = f(x + h, &y5);
        let y4 = axpy(&y, h, &[k1, k2, k3, k4, k5, k6, k7], &B4);
        evals += 6;
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let scale = atol + rtol * y[i].norm().max(y5[i].norm());
            err = err.max((y5[i] - y4[i]).norm() / scale);
        }
        if err <= 1.0 {
            x += h;
            y = y5;
            k1 = k7;
            steps += 1;
        }
        let factor = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
        h *= factor.clamp(0.2, 5.0);
    }
    Ok((y, steps))
}

// Right-hand sides, parameterized by the side of the matching point so that
// |x| never enters and each leg stays smooth.
fn rhs(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    e: f64,
    mode: OracleMode,
    side: f64,
) -> impl Fn(f64, &State) -> State + '_ {
    let v0 = cfg.signed_height(kind);
    move |x: f64, y: &State| -> State {
        let f = 1.0 / (1.0 + (cfg.alpha * (side * x - cfg.l)).exp());
        let fp = -cfg.alpha * side * f * (1.0 - f);
        let v = v0 * f;
        let m = cfg.m0 + cfg.m1 * f;
        let ev = e - v;
        match mode {
            OracleMode::Reduced => {
                let q = Complex64::new(ev * ev - m * m, v0 * fp);
                [y[1], -q * y[0]]
            }
            OracleMode::FullWithMassDerivative => {
                let mp_over_m = cfg.m1 * fp / m;
                let q = Complex64::new(ev * ev - m * m, v0 * fp + ev * mp_over_m);
                [y[1], mp_over_m * y[1] - q * y[0]]
            }
            OracleMode::FullCoupled => {
                let i = Complex64::i();
                [i * ev * y[0] - i * m * y[1], -i * ev * y[1] + i * m * y[0]]
            }
        }
    }
}

/// Transmission and reflection obtained by direct integration, normalized to
/// a unit transmitted wave: integrate backward from +x_max and project onto
/// incoming/outgoing plane waves at -x_max.
#[derive(Debug, Clone, Copy)]
pub struct OracleScattering {
    pub e: f64,
    pub t: f64,
    pub r: f64,
    /// Incident amplitude for unit transmitted amplitude.
    pub incident: Complex64,
    pub reflected: Complex64,
    pub steps: usize,
}

pub fn integrate_scattering(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    e: f64,
    settings: &IntegrationSettings,
) -> Result<OracleScattering> {
    let d_out = e * e - cfg.m0 * cfg.m0;
    if d_out.abs() <= THRESHOLD_TOL {
        return Err(Error::Threshold {
            e,
            tol: THRESHOLD_TOL,
        });
    }
    if d_out < 0.0 {
        return Err(Error::Domain(format!(
            "energy {e} has no propagating channel to integrate"
        )));
    }
    let k = d_out.sqrt();
    let span = settings.span(cfg);
    let ik = Complex64::i() * k;
    let phi0 = (ik * (span - cfg.l)).exp();
    let y0 = match settings.mode {
        OracleMode::FullCoupled => [phi0, (e - k) / cfg.mass(span) * phi0],
        _ => [phi0, ik * phi0],
    };
    let right = rhs(cfg, kind, e, settings.mode, 1.0);
    let (y_mid, s1) = integrate(
        &right,
        span,
        0.0,
        y0,
        settings.rtol,
        settings.atol,
        settings.max_steps,
    )?;
    let left = rhs(cfg, kind, e, settings.mode, -1.0);
    let (y_end, s2) = integrate(
        &left,
        0.0,
        -span,
        y_mid,
        settings.rtol,
        settings.atol,
        settings.max_steps,
    )?;
    let (phi, dphi) = match settings.mode {
        OracleMode::FullCoupled => {
            let f = 1.0 / (1.0 + (cfg.alpha * (span - cfg.l)).exp());
            let v = cfg.signed_height(kind) * f;
            let m = cfg.m0 + cfg.m1 * f;
            let i = Complex64::i();
            (y_end[0], i * (e - v) * y_end[0] - i * m * y_end[1])
        }
        _ => (y_end[0], y_end[1]),
    };
    // phi = L1 e^{ik(x+l)} + L2 e^{-ik(x+l)} at x = -x_max
    let ep = (ik * (cfg.l - span)).exp();
    let incident = (phi + dphi / ik) / (2.0 * ep);
    let reflected = ep * (phi - dphi / ik) / 2.0;
    let t = 1.0 / incident.norm_sqr();
    let r = (e + k) / (e - k) * reflected.norm_sqr() / incident.norm_sqr();
    Ok(OracleScattering {
        e,
        t,
        r,
        incident,
        reflected,
        steps: s1 + s2,
    })
}

/// The scattering solution sampled at the given positions, normalized to a
/// unit transmitted wave like [`integrate_scattering`]. One sweep from +x_max
/// downward visits the samples in descending order, whatever order `xs` uses.
pub fn wavefunction_samples(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    e: f64,
    xs: &[f64],
    settings: &IntegrationSettings,
) -> Result<Vec<Complex64>> {
    let d_out = e * e - cfg.m0 * cfg.m0;
    if d_out.abs() <= THRESHOLD_TOL {
        return Err(Error::Threshold {
            e,
            tol: THRESHOLD_TOL,
        });
    }
    if d_out < 0.0 {
        return Err(Error::Domain(format!(
            "energy {e} has no propagating channel to integrate"
        )));
    }
    let span = settings.span(cfg);
    if let Some(&bad) = xs.iter().find(|x| !x.is_finite() || x.abs() > span) {
        return Err(Error::Domain(format!(
            "sample position {bad} outside the matching span {span}"
        )));
    }
    let k = d_out.sqrt();
    let ik = Complex64::i() * k;
    let phi0 = (ik * (span - cfg.l)).exp();
    let mut y = match settings.mode {
        OracleMode::FullCoupled => [phi0, (e - k) / cfg.mass(span) * phi0],
        _ => [phi0, ik * phi0],
    };
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[j].total_cmp(&xs[i]));
    let mut out = vec![Complex64::new(0.0, 0.0); xs.len()];
    let mut x_cur = span;
    for &idx in &order {
        let target = xs[idx];
        if x_cur > 0.0 && target < 0.0 {
            let right = rhs(cfg, kind, e, settings.mode, 1.0);
            let (y_mid, _) = integrate(
                &right,
                x_cur,
                0.0,
                y,
                settings.rtol,
                settings.atol,
                settings.max_steps,
            )?;
            let left = rhs(cfg, kind, e, settings.mode, -1.0);
            y = integrate(
                &left,
                0.0,
                target,
                y_mid,
                settings.rtol,
                settings.atol,
                settings.max_steps,
            )?
            .0;
        } else {
            let side = if target >= 0.0 { 1.0 } else { -1.0 };
            let leg = rhs(cfg, kind, e, settings.mode, side);
            y = integrate(
                &leg,
                x_cur,
                target,
                y,
                settings.rtol,
                settings.atol,
                settings.max_steps,
            )?
            .0;
        }
        x_cur = target;
        out[idx] = y[0];
    }
    Ok(out)
}

/// Normalized mismatch of the two decaying solutions at the matching point;
/// zero exactly at a bound energy. Built on the coupled first-order system,
/// independent of every closed-form ingredient.
pub fn bound_state_mismatch(
    cfg: &PhysicalConfig,
    e: f64,
    settings: &IntegrationSettings,
) -> Result<f64> {
    let lower = (-cfg.m0).max(cfg.m0 - cfg.v0);
    if !e.is_finite() || e <= lower || e >= cfg.m0 {
        return Err(Error::Domain(format!(
            "energy {e} outside the bound window ({lower}, {})",
            cfg.m0
        )));
    }
    let kappa = (cfg.m0 * cfg.m0 - e * e).sqrt();
    let span = settings.span(cfg);
    let norm = (e + cfg.m0).hypot(kappa);
    let y_left0 = [
        Complex64::from((e + cfg.m0) / norm),
        Complex64::from(-kappa / norm),
    ];
    let y_right0 = [
        Complex64::from((e + cfg.m0) / norm),
        Complex64::from(kappa / norm),
    ];
    let f_left = shoot_rhs(cfg, e, -1.0);
    let f_right = shoot_rhs(cfg, e, 1.0);
    let (yl, _) = integrate(
        &f_left,
        -span,
        0.0,
        y_left0,
        settings.rtol,
        settings.atol,
        settings.max_steps,
    )?;
    let (yr, _) = integrate(
        &f_right,
        span,
        0.0,
        y_right0,
        settings.rtol,
        settings.atol,
        settings.max_steps,
    )?;
    let nl = yl[0].norm().hypot(yl[1].norm());
    let nr = yr[0].norm().hypot(yr[1].norm());
    Ok((yl[0] * yr[1] - yl[1] * yr[0]).re / (nl * nr))
}

// First-order pair for the two real amplitudes in the well.
fn shoot_rhs(cfg: &PhysicalConfig, e: f64, side: f64) -> impl Fn(f64, &State) -> State + '_ {
    move |x: f64, y: &State| -> State {
        let f = 1.0 / (1.0 + (cfg.alpha * (side * x - cfg.l)).exp());
        let v = -cfg.v0 * f;
        let m = cfg.m0 + cfg.m1 * f;
        [-(e - v + m) * y[1], (e - v - m) * y[0]]
    }
}

/// Bound energies by scanning the shooting mismatch for sign changes and
/// bisecting each bracket.
pub fn shooting_spectrum(
    cfg: &PhysicalConfig,
    n_grid: usize,
    settings: &IntegrationSettings,
) -> Result<Vec<f64>> {
    let lower = (-cfg.m0).max(cfg.m0 - cfg.v0);
    let lo = lower + 1e-6;
    let hi = cfg.m0 - 1e-6;
    if lo >= hi {
        return Err(Error::Domain("well too shallow for bound states".into()));
    }
    let n = n_grid.max(32);
    let h = (hi - lo) / (n - 1) as f64;
    let grid: Vec<f64> = (0..n).map(|i| lo + i as f64 * h).collect();
    let mut vals = Vec::with_capacity(n);
    for &e in &grid {
        vals.push(bound_state_mismatch(cfg, e, settings)?);
    }
    let mut roots = Vec::new();
    for i in 1..n {
        if vals[i - 1] == 0.0 {
            roots.push(grid[i - 1]);
            continue;
        }
        if (vals[i - 1] < 0.0) != (vals[i] < 0.0) {
            let f = |e: f64| bound_state_mismatch(cfg, e, settings).unwrap_or(f64::NAN);
            roots.push(bisect(f, grid[i - 1], grid[i], 1e-12));
        }
    }
    Ok(roots)
}
