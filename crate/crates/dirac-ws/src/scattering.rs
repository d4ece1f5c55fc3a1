use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{
    exponents, grid_interior, matching, Matching, PhysicalConfig, ProblemKind, ScatteringExponents,
    THRESHOLD_TOL,
};
use crate::search::golden_min;
use crate::special::hyp2f1_c;

/// Transmission and reflection at one energy. For energies below the
/// asymptotic mass gap nothing propagates and the conventional fixed point
/// (r, t) = (1, 0) is reported with `evanescent` set.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringResult {
    pub e: f64,
    /// Reflected over incident amplitude.
    pub ratio_l: Complex64,
    /// Transmitted over incident amplitude.
    pub ratio_r: Complex64,
    pub r: f64,
    pub t: f64,
    /// r + t - 1, reported rather than asserted: it vanishes identically only
    /// for the constant-mass problem.
    pub unitarity_defect: f64,
    pub evanescent: bool,
}

struct LogTerms {
    /// Log of the wall-to-wall carrier e^{-4 alpha nu l}.
    x_log: Complex64,
    lg: [Complex64; 6],
}

fn log_terms(cfg: &PhysicalConfig, x: &ScatteringExponents, m: &Matching) -> LogTerms {
    LogTerms {
        x_log: -4.0 * cfg.alpha * x.nu * cfg.l,
        lg: m.log_s,
    }
}

// (e^p - e^q) / (e^u - e^w) with separate pivots for numerator and
// denominator, so wall-to-wall factors of either sign of the exponent cancel
// instead of overflowing.
fn pivoted_ratio(p: Complex64, q: Complex64, u: Complex64, w: Complex64) -> Result<Complex64> {
    let mn = p.re.max(q.re);
    let md = u.re.max(w.re);
    if !md.is_finite() {
        return Err(Error::NonConvergence(
            "matching denominator vanished".into(),
        ));
    }
    if mn == f64::NEG_INFINITY {
        // every numerator product was annihilated by a denominator-factor
        // pole: the ratio is an exact zero (e.g. a transparent profile)
        return Ok(Complex64::new(0.0, 0.0));
    }
    if !mn.is_finite() {
        return Err(Error::Overflow("amplitude ratio numerator".into()));
    }
    let num = (p - mn).exp() - (q - mn).exp();
    let den = (u - md).exp() - (w - md).exp();
    let out = num / den * (mn - md).exp();
    if !out.re.is_finite() || !out.im.is_finite() {
        return Err(Error::Overflow("amplitude ratio".into()));
    }
    Ok(out)
}

/// Closed-form (reflected, transmitted) amplitude ratios at energy `e`,
/// normalized to unit incident amplitude. Requires a propagating asymptotic
/// channel (e^2 > m0^2).
pub fn amplitude_ratios(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    e: f64,
) -> Result<(Complex64, Complex64)> {
    let xp = exponents(cfg, kind, e)?;
    let mt = matching(&xp)?;
    let t = log_terms(cfg, &xp, &mt);
    let (x, lg) = (t.x_log, t.lg);
    // reflected: (X S1 S5 - S3 S6) / (S4 S6 - X S2 S5)
    let den_u = lg[3] + lg[5];
    let den_w = x + lg[1] + lg[4];
    let ratio_l = pivoted_ratio(x + lg[0] + lg[4], lg[2] + lg[5], den_u, den_w)?;
    // transmitted: sqrt(X) (S1 S4 - S2 S3) over the same denominator
    let ratio_r = pivoted_ratio(
        0.5 * x + lg[0] + lg[3],
        0.5 * x + lg[1] + lg[2],
        den_u,
        den_w,
    )?;
    Ok((ratio_l, ratio_r))
}

/// The interference combination X S1 S5 - S3 S6 whose zeros on the real axis
/// are the transmission resonances.
pub fn resonance_condition(cfg: &PhysicalConfig, kind: ProblemKind, e: f64) -> Result<Complex64> {
    let xp = exponents(cfg, kind, e)?;
    let mt = matching(&xp)?;
    let t = log_terms(cfg, &xp, &mt);
    let a = t.x_log + t.lg[0] + t.lg[4];
    let b = t.lg[2] + t.lg[5];
    let m = a.re.max(b.re);
    if !m.is_finite() {
        return Err(Error::NonConvergence(
            "matching coefficients all vanished".into(),
        ));
    }
    let out = ((a - m).exp() - (b - m).exp()) * m.exp();
    if !out.re.is_finite() || !out.im.is_finite() {
        return Err(Error::Overflow("resonance condition".into()));
    }
    Ok(out)
}

/// Reflection and transmission coefficients at energy `e`.
pub fn reflection_transmission(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    e: f64,
) -> Result<ScatteringResult> {
    let d_out = e * e - cfg.m0 * cfg.m0;
    if d_out.abs() <= THRESHOLD_TOL {
        return Err(Error::Threshold {
            e,
            tol: THRESHOLD_TOL,
        });
    }
    if d_out < 0.0 {
        return Ok(ScatteringResult {
            e,
            ratio_l: Complex64::new(1.0, 0.0),
            ratio_r: Complex64::new(0.0, 0.0),
            r: 1.0,
            t: 0.0,
            unitarity_defect: 0.0,
            evanescent: true,
        });
    }
    let (ratio_l, ratio_r) = amplitude_ratios(cfg, kind, e)?;
    let k = d_out.sqrt();
    // the reflected current carries the inverted small-component weight
    let r = (e + k) / (e - k) * ratio_l.norm_sqr();
    let t = ratio_r.norm_sqr();
    Ok(ScatteringResult {
        e,
        ratio_l,
        ratio_r,
        r,
        t,
        unitarity_defect: r + t - 1.0,
        evanescent: false,
    })
}

/// What to vary in a sweep; all variants other than `Energy` hold the energy
/// fixed at the given value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepVariable {
    Energy,
    Height { e: f64 },
    Steepness { e: f64 },
    HalfWidth { e: f64 },
}

/// One abscissa of a sweep; failed points (channel thresholds, degenerate
/// parameters) are kept as `Err` so callers can render holes instead of
/// aborting the whole curve.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub x: f64,
    pub result: Result<ScatteringResult>,
}

/// Evaluate a scattering curve over `grid`, one point per abscissa.
pub fn sweep(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    var: SweepVariable,
    grid: &[f64],
) -> Vec<SweepPoint> {
    grid.iter()
        .map(|&x| {
            let result = match var {
                SweepVariable::Energy => reflection_transmission(cfg, kind, x),
                SweepVariable::Height { e } => {
                    PhysicalConfig::new(cfg.m0, cfg.m1, x, cfg.alpha, cfg.l)
                        .and_then(|c| reflection_transmission(&c, kind, e))
                }
                SweepVariable::Steepness { e } => {
                    PhysicalConfig::new(cfg.m0, cfg.m1, cfg.v0, x, cfg.l)
                        .and_then(|c| reflection_transmission(&c, kind, e))
                }
                SweepVariable::HalfWidth { e } => {
                    PhysicalConfig::new(cfg.m0, cfg.m1, cfg.v0, cfg.alpha, x)
                        .and_then(|c| reflection_transmission(&c, kind, e))
                }
            };
            SweepPoint { x, result }
        })
        .collect()
}

/// A polished transmission resonance.
#[derive(Debug, Clone, Copy)]
pub struct Resonance {
    pub e: f64,
    pub t_at_peak: f64,
    /// |interference condition| at the polished energy.
    pub residual: f64,
}

const DEFAULT_RESONANCE_TOL: f64 = 1e-9;

/// Locate transmission resonances in (lo, hi): scan the interference
/// condition on a fixed-density grid, polish each bracketed minimum, and keep
/// only minima where the transmission actually reaches its unit plateau
/// (t >= 1 - 10 tol).
pub fn resonances(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    lo: f64,
    hi: f64,
    tol: Option<f64>,
) -> Result<Vec<Resonance>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("bad resonance window {lo}:{hi}")));
    }
    let tol = tol.unwrap_or(DEFAULT_RESONANCE_TOL);
    // 1000 points per unit energy resolves every interference oscillation of
    // the configurations this is meant for
    let n = (((hi - lo) * 1000.0).ceil() as usize).max(16);
    let grid = grid_interior(lo, hi, n);
    let mag = |e: f64| -> f64 {
        resonance_condition(cfg, kind, e)
            .map(|g| g.norm_sqr())
            .unwrap_or(f64::INFINITY)
    };
    let gs: Vec<f64> = grid.iter().map(|&e| mag(e)).collect();
    let mut out: Vec<Resonance> = Vec::new();
    for i in 1..n - 1 {
        if !(gs[i].is_finite() && gs[i] < gs[i - 1] && gs[i] <= gs[i + 1]) {
            continue;
        }
        let e_min = golden_min(mag, grid[i - 1], grid[i + 1], 1e-13);
        let Ok(rt) = reflection_transmission(cfg, kind, e_min) else {
            continue;
        };
        if rt.t < 1.0 - 10.0 * tol {
            continue;
        }
        if let Some(last) = out.last() {
            // closer than half a scan cell to the previous root: same minimum
            if (e_min - last.e).abs() < 0.5 * (grid[1] - grid[0]) {
                continue;
            }
        }
        out.push(Resonance {
            e: e_min,
            t_at_peak: rt.t,
            residual: mag(e_min).sqrt(),
        });
    }
    Ok(out)
}

/// Closed-form wave amplitude phi(x) of the scattering solution with unit
/// incident amplitude. The two wall expansions are used on their own sides;
/// both reduce to plane waves far away.
pub fn scattering_wavefunction(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    e: f64,
    x: f64,
) -> Result<Complex64> {
    let xp = exponents(cfg, kind, e)?;
    let t = xp.triples();
    let (ratio_l, ratio_r) = amplitude_ratios(cfg, kind, e)?;
    if x <= 0.0 {
        // y and 1-y each in their cancellation-free logistic form: near the
        // midpoint y is within 1e-22 of 1 and the difference matters
        let u = cfg.alpha * (x + cfg.l);
        let y = 1.0 / (1.0 + (-u).exp());
        let omy = 1.0 / (1.0 + u.exp());
        let yc = Complex64::from(y);
        let edge = Complex64::from(omy).powc(xp.nu);
        let incident = yc.powc(xp.mu) * edge * hyp2f1_c(t[0].a, t[0].b, t[0].c, y, omy)?;
        let reflected = yc.powc(-xp.mu) * edge * hyp2f1_c(t[1].a, t[1].b, t[1].c, y, omy)?;
        Ok(incident + ratio_l * reflected)
    } else {
        let u = cfg.alpha * (x - cfg.l);
        let z = 1.0 / (1.0 + u.exp());
        let omz = 1.0 / (1.0 + (-u).exp());
        let zc = Complex64::from(z);
        let edge = Complex64::from(omz).powc(xp.nu);
        Ok(ratio_r * zc.powc(-xp.mu) * edge * hyp2f1_c(t[2].a, t[2].b, t[2].c, z, omz)?)
    }
}
