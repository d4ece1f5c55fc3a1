use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::log_gamma;

/// Energies closer than this (in the squared dispersion sense) to a channel
/// edge are rejected: the local exponents degenerate there and the matching
/// coefficients lose meaning.
pub const THRESHOLD_TOL: f64 = 1e-12;

/// Shape parameters for the smoothed rectangular region. Both the potential
/// and the mass enhancement follow the same edge profile
/// f(x) = 1 / (1 + e^{alpha (|x| - l)}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    /// Asymptotic rest mass (natural units).
    pub m0: f64,
    /// Extra mass inside the region; 0 recovers the constant-mass problem.
    pub m1: f64,
    /// Magnitude of the potential step.
    pub v0: f64,
    /// Edge steepness; 1/alpha is the skin depth of the wall.
    pub alpha: f64,
    /// Half-width of the region.
    pub l: f64,
}

impl PhysicalConfig {
    pub fn new(m0: f64, m1: f64, v0: f64, alpha: f64, l: f64) -> Result<Self> {
        let positive = [("m0", m0), ("v0", v0), ("alpha", alpha), ("l", l)];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if !m1.is_finite() || m1 < 0.0 {
            return Err(Error::Domain(format!(
                "m1 must be nonnegative and finite, got {m1}"
            )));
        }
        Ok(Self {
            m0,
            m1,
            v0,
            alpha,
            l,
        })
    }

    /// Soft sanity notes, not errors: shapes far from the sharp-edge regime,
    /// or a mass enhancement comparable to the rest mass, are outside the
    /// range the closed form has been cross-checked in.
    pub fn warnings(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.alpha * self.l < 5.0 {
            notes.push(format!(
                "alpha*l = {:.3} < 5: the two edges overlap and the region is far from rectangular",
                self.alpha * self.l
            ));
        }
        if self.m1 > 0.2 * self.m0 {
            notes.push(format!(
                "m1 = {} exceeds 0.2*m0 = {}: large mass enhancement",
                self.m1,
                0.2 * self.m0
            ));
        }
        notes
    }

    /// Edge profile f(x); 1 deep inside the region, 0 far outside.
    pub fn profile(&self, x: f64) -> f64 {
        1.0 / (1.0 + (self.alpha * (x.abs() - self.l)).exp())
    }

    /// d/dx of the profile; analytic, odd across x = 0.
    pub fn profile_prime(&self, x: f64) -> f64 {
        let f = self.profile(x);
        -self.alpha * x.signum() * f * (1.0 - f)
    }

    /// Position-dependent mass m0 + m1 f(x).
    pub fn mass(&self, x: f64) -> f64 {
        self.m0 + self.m1 * self.profile(x)
    }

    /// Potential height with its sign: +v0 for a barrier, -v0 for a well.
    pub fn signed_height(&self, kind: ProblemKind) -> f64 {
        match kind {
            ProblemKind::Barrier => self.v0,
            ProblemKind::Well => -self.v0,
        }
    }

    pub fn potential(&self, kind: ProblemKind, x: f64) -> f64 {
        self.signed_height(kind) * self.profile(x)
    }
}

/// Sign of the potential term: a barrier raises the region, a well lowers it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Barrier,
    Well,
}

/// Which root of the outside edge exponent to use for energies inside the
/// mass gap. `Growing` keeps the sign the quantization condition is
/// conventionally written with; `Decaying` selects the normalizable
/// solutions, which is what direct numerical integration reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuBranch {
    Growing,
    Decaying,
}

/// Local characteristic exponents of the wave equation at one energy:
/// `k` the asymptotic momentum, `mu` the edge exponent outside, `nu` inside,
/// and `sigma`/`delta` the indicial exponents at the left/right walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringExponents {
    pub e: f64,
    pub k: Complex64,
    pub mu: Complex64,
    pub nu: Complex64,
    pub sigma: Complex64,
    pub delta: Complex64,
}

/// Parameter triple of a local hypergeometric solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypTriple {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

/// Exponents on the conventional branch (see [`MuBranch::Growing`]).
pub fn exponents(cfg: &PhysicalConfig, kind: ProblemKind, e: f64) -> Result<ScatteringExponents> {
    exponents_with_branch(cfg, kind, e, MuBranch::Growing)
}

pub fn exponents_with_branch(
    cfg: &PhysicalConfig,
    kind: ProblemKind,
    e: f64,
    branch: MuBranch,
) -> Result<ScatteringExponents> {
    if !e.is_finite() {
        return Err(Error::Domain(format!("energy {e} is not finite")));
    }
    let v = cfg.signed_height(kind);
    let d_out = e * e - cfg.m0 * cfg.m0;
    if d_out.abs() <= THRESHOLD_TOL {
        return Err(Error::Threshold {
            e,
            tol: THRESHOLD_TOL,
        });
    }
    let k = Complex64::from(d_out).sqrt();
    let mut mu = Complex64::i() * k / cfg.alpha;
    if branch == MuBranch::Decaying && d_out < 0.0 {
        mu = -mu;
    }
    let (nu, sigma, delta) = interior_exponents(cfg, v, e)?;
    Ok(ScatteringExponents {
        e,
        k,
        mu,
        nu,
        sigma,
        delta,
    })
}

/// The interior and wall exponents, which do not involve the asymptotic
/// momentum. Split out so the gap-edge analysis can use them with mu = 0.
pub(crate) fn interior_exponents(
    cfg: &PhysicalConfig,
    v: f64,
    e: f64,
) -> Result<(Complex64, Complex64, Complex64)> {
    let m_in = cfg.m0 + cfg.m1;
    let d_in = (e - v) * (e - v) - m_in * m_in;
    if d_in.abs() <= THRESHOLD_TOL {
        return Err(Error::Threshold {
            e,
            tol: THRESHOLD_TOL,
        });
    }
    let nu = Complex64::i() * Complex64::from(d_in).sqrt() / cfg.alpha;
    // sigma and delta differ only in the sign attached to the 1/2; writing
    // both as w*w keeps sigma(v) == delta(-v) exact to the bit
    let q = Complex64::new(0.0, v / cfg.alpha);
    let m1a = cfg.m1 / cfg.alpha;
    let ws = q + 0.5;
    let wd = q - 0.5;
    let sigma = 0.5 + (ws * ws + m1a * m1a).sqrt();
    let delta = 0.5 + (wd * wd + m1a * m1a).sqrt();
    Ok((nu, sigma, delta))
}

impl ScatteringExponents {
    /// The four local-solution triples, indexed as:
    /// 0 = left wall, +mu edge; 1 = left wall, -mu; 2 = right wall, -mu;
    /// 3 = right wall, +mu. Left-wall triples carry sigma, right-wall delta.
    pub fn triples(&self) -> [HypTriple; 4] {
        let (mu, nu, sg, dl) = (self.mu, self.nu, self.sigma, self.delta);
        let one = Complex64::new(1.0, 0.0);
        [
            HypTriple {
                a: mu + nu + sg,
                b: mu + nu - sg + 1.0,
                c: one + 2.0 * mu,
            },
            HypTriple {
                a: -mu + nu + sg,
                b: -mu + nu - sg + 1.0,
                c: one - 2.0 * mu,
            },
            HypTriple {
                a: -mu + nu + dl,
                b: -mu + nu - dl + 1.0,
                c: one - 2.0 * mu,
            },
            HypTriple {
                a: mu + nu + dl,
                b: mu + nu - dl + 1.0,
                c: one + 2.0 * mu,
            },
        ]
    }
}

/// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)) in log form. A pole in a
/// denominator factor sends the coefficient to zero (log -> -inf).
pub(crate) fn log_p1(t: &HypTriple) -> Result<Complex64> {
    let num = log_gamma(t.c)? + log_gamma(t.c - t.a - t.b)?;
    match (den_factor(t.c - t.a)?, den_factor(t.c - t.b)?) {
        (Some(p), Some(q)) => Ok(num - p - q),
        _ => Ok(Complex64::new(f64::NEG_INFINITY, 0.0)),
    }
}

/// Gamma(c) Gamma(a+b-c) / (Gamma(a) Gamma(b)) in log form.
pub(crate) fn log_p2(t: &HypTriple) -> Result<Complex64> {
    let num = log_gamma(t.c)? + log_gamma(t.a + t.b - t.c)?;
    match (den_factor(t.a)?, den_factor(t.b)?) {
        (Some(p), Some(q)) => Ok(num - p - q),
        _ => Ok(Complex64::new(f64::NEG_INFINITY, 0.0)),
    }
}

fn den_factor(z: Complex64) -> Result<Option<Complex64>> {
    match log_gamma(z) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Pole { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The six wall-matching coefficients of the scattering problem, in both
/// linear and log form. Index i holds the coefficient conventionally numbered
/// i+1: [0],[1] the two left-wall combinations of the first kind, [2],[3] of
/// the second kind, [4],[5] the right-wall pair.
#[derive(Debug, Clone, Copy)]
pub struct Matching {
    pub s: [Complex64; 6],
    pub log_s: [Complex64; 6],
}

pub fn matching(x: &ScatteringExponents) -> Result<Matching> {
    let t = x.triples();
    let log_s = [
        log_p1(&t[0])?,
        log_p1(&t[1])?,
        log_p2(&t[0])?,
        log_p2(&t[1])?,
        log_p1(&t[2])?,
        log_p2(&t[2])?,
    ];
    let s = log_s.map(|l| l.exp());
    Ok(Matching { s, log_s })
}

/// The four coefficients of the bound-state matching, log and linear:
/// [0],[3] first-kind combinations at the left/right wall, [2],[1] the
/// second-kind partners ([1] right, [2] left).
#[derive(Debug, Clone, Copy)]
pub struct BoundMatching {
    pub s: [Complex64; 4],
    pub log_s: [Complex64; 4],
}

pub fn bound_matching(x: &ScatteringExponents) -> Result<BoundMatching> {
    let t = x.triples();
    let log_s = [
        log_p1(&t[0])?,
        log_p2(&t[3])?,
        log_p2(&t[0])?,
        log_p1(&t[3])?,
    ];
    let s = log_s.map(|l| l.exp());
    Ok(BoundMatching { s, log_s })
}

/// n points of the half-open grid (lo, hi]: lo + (i+1)(hi-lo)/n.
pub fn grid_half_open(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    (0..n).map(|i| lo + (i + 1) as f64 * h).collect()
}

/// n interior points of (lo, hi): lo + (i+1)(hi-lo)/(n+1).
pub fn grid_interior(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / (n + 1) as f64;
    (0..n).map(|i| lo + (i + 1) as f64 * h).collect()
}
