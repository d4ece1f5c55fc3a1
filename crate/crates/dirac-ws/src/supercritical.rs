use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{
    interior_exponents, log_p1, log_p2, HypTriple, PhysicalConfig, ScatteringExponents,
};

/// Which edge of the asymptotic mass gap to sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySign {
    PlusM,
    MinusM,
}

impl EnergySign {
    pub fn energy(self, cfg: &PhysicalConfig) -> f64 {
        match self {
            EnergySign::PlusM => cfg.m0,
            EnergySign::MinusM => -cfg.m0,
        }
    }
}

/// Comparison of the two conditions at one gap edge. With the outside
/// momentum exactly zero the barrier's resonance condition and the inverted
/// profile's quantization condition are built from identical parameter
/// triples, so `difference` vanishes to the bit when `triples_match` holds.
#[derive(Debug, Clone, Copy)]
pub struct LowMomentumReport {
    pub energy: f64,
    pub resonance_value: Complex64,
    pub bound_value: Complex64,
    pub triples_match: bool,
    pub difference: f64,
}

/// Exponents at a gap edge: the outside momentum vanishes there, so mu = 0
/// exactly and the usual edge-threshold guard does not apply.
fn edge_exponents(cfg: &PhysicalConfig, v: f64, e: f64) -> Result<ScatteringExponents> {
    let (nu, sigma, delta) = interior_exponents(cfg, v, e)?;
    let zero = Complex64::new(0.0, 0.0);
    Ok(ScatteringExponents {
        e,
        k: zero,
        mu: zero,
        nu,
        sigma,
        delta,
    })
}

// Both conditions reduce at mu = 0 to X P1(u) P1(w) - P2(u) P2(w) for a pair
// of triples (u, w); assembling them through one routine keeps the two sides
// comparable to the bit.
fn edge_condition(
    cfg: &PhysicalConfig,
    xp: &ScatteringExponents,
    u: &HypTriple,
    w: &HypTriple,
) -> Result<Complex64> {
    let x_log = -4.0 * cfg.alpha * xp.nu * cfg.l;
    let a = x_log + log_p1(u)? + log_p1(w)?;
    let b = log_p2(u)? + log_p2(w)?;
    let m = a.re.max(b.re);
    if !m.is_finite() {
        return Err(Error::NonConvergence(
            "matching coefficients all vanished".into(),
        ));
    }
    let g = ((a - m).exp() - (b - m).exp()) * m.exp();
    if !g.re.is_finite() || !g.im.is_finite() {
        return Err(Error::Overflow("gap-edge condition".into()));
    }
    Ok(g)
}

/// Barrier interference condition evaluated at the gap edge.
pub fn resonance_condition_at(cfg: &PhysicalConfig, sign: EnergySign) -> Result<Complex64> {
    let e = sign.energy(cfg);
    let xp = edge_exponents(cfg, cfg.v0, e)?;
    let t = xp.triples();
    edge_condition(cfg, &xp, &t[0], &t[2])
}

/// Quantization condition of the inverted profile (the well formula with the
/// height negated, which lands back on the barrier parameters) at the gap
/// edge.
pub fn bound_condition_at(cfg: &PhysicalConfig, sign: EnergySign) -> Result<Complex64> {
    let e = sign.energy(cfg);
    // well exponents under v0 -> -v0: the signed height becomes +v0
    let xp = edge_exponents(cfg, cfg.v0, e)?;
    let t = xp.triples();
    edge_condition(cfg, &xp, &t[0], &t[3])
}

/// Evaluate both conditions at both gap edges and report the comparison.
pub fn verify_equivalence(cfg: &PhysicalConfig) -> Result<[LowMomentumReport; 2]> {
    let mut reports = [LowMomentumReport {
        energy: 0.0,
        resonance_value: Complex64::new(0.0, 0.0),
        bound_value: Complex64::new(0.0, 0.0),
        triples_match: false,
        difference: 0.0,
    }; 2];
    for (slot, sign) in [EnergySign::PlusM, EnergySign::MinusM]
        .into_iter()
        .enumerate()
    {
        let e = sign.energy(cfg);
        let res = resonance_condition_at(cfg, sign)?;
        let bnd = bound_condition_at(cfg, sign)?;
        let xb = edge_exponents(cfg, cfg.v0, e)?;
        let xw = edge_exponents(cfg, cfg.v0, e)?;
        let (tb, tw) = (xb.triples(), xw.triples());
        // at mu = 0 the well's right-wall +mu triple coincides with the
        // barrier's right-wall -mu triple
        let same = |p: &HypTriple, q: &HypTriple| p.a == q.a && p.b == q.b && p.c == q.c;
        let triples_match = same(&tb[0], &tw[0]) && same(&tb[2], &tw[3]);
        reports[slot] = LowMomentumReport {
            energy: e,
            resonance_value: res,
            bound_value: bnd,
            triples_match,
            difference: (res - bnd).norm(),
        };
    }
    Ok(reports)
}
