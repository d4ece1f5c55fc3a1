//! Seeded self-check suites behind `check`: each prints one pass/fail line
//! with the measured numbers, and any failure turns into a nonzero exit.

use dirac_ws::bound::find_bound_states;
use dirac_ws::oracle::{integrate_scattering, shooting_spectrum, IntegrationSettings};
use dirac_ws::supercritical::verify_equivalence;
use dirac_ws::{reflection_transmission, MuBranch, PhysicalConfig, ProblemKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20260816;

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteChoice {
    Unitarity,
    Oracle,
    Bound,
    Supercritical,
    All,
}

impl SuiteChoice {
    pub fn label(self) -> &'static str {
        match self {
            SuiteChoice::Unitarity => "unitarity",
            SuiteChoice::Oracle => "oracle",
            SuiteChoice::Bound => "bound",
            SuiteChoice::Supercritical => "supercritical",
            SuiteChoice::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Run the selected suites. `tol` overrides every suite's default tolerance
/// when given.
pub fn run_checks(suite: SuiteChoice, seed: u64, tol: Option<f64>) -> Vec<CheckOutcome> {
    let all = suite == SuiteChoice::All;
    let mut out = Vec::new();
    if all || suite == SuiteChoice::Unitarity {
        out.push(check_unitarity(seed, tol));
    }
    if all || suite == SuiteChoice::Oracle {
        out.push(check_oracle(seed, tol));
    }
    if all || suite == SuiteChoice::Bound {
        out.push(check_bound(tol));
    }
    if all || suite == SuiteChoice::Supercritical {
        out.push(check_supercritical(seed, tol));
    }
    out
}

fn fail(name: &'static str, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: false,
        detail,
    }
}

/// r + t = 1 for constant mass, sampled well away from channel thresholds so
/// every draw must evaluate cleanly.
fn check_unitarity(seed: u64, tol: Option<f64>) -> CheckOutcome {
    let tol = tol.unwrap_or(1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_defect = 0.0f64;
    for i in 0..30 {
        let m0 = rng.random_range(0.2..1.0);
        let v0 = rng.random_range(0.1..2.5);
        let alpha = rng.random_range(2.0..40.0);
        let l = rng.random_range(2.0..12.0);
        let kind = if i % 2 == 0 {
            ProblemKind::Barrier
        } else {
            ProblemKind::Well
        };
        // doubly propagating energies: above the barrier, or anywhere above
        // the outer gap for the well
        let e = match kind {
            ProblemKind::Barrier => v0 + m0 + rng.random_range(0.05..2.0),
            ProblemKind::Well => m0 + rng.random_range(0.05..2.0),
        };
        let cfg = PhysicalConfig::new(m0, 0.0, v0, alpha, l).expect("sampled parameters are valid");
        match reflection_transmission(&cfg, kind, e) {
            Ok(rt) => max_defect = max_defect.max(rt.unitarity_defect.abs()),
            Err(err) => {
                return fail(
                    "unitarity",
                    format!("evaluation failed at e = {e:.4}: {err}"),
                )
            }
        }
    }
    CheckOutcome {
        name: "unitarity",
        passed: max_defect <= tol,
        detail: format!(
            "max |r+t-1| = {max_defect:.2e} over 30 constant-mass configurations (tol {tol:.0e})"
        ),
    }
}

/// Closed-form t and r against direct integration of the same equation.
fn check_oracle(seed: u64, tol: Option<f64>) -> CheckOutcome {
    let tol = tol.unwrap_or(1e-6);
    let settings = IntegrationSettings::default();
    let base =
        |m1: f64| PhysicalConfig::new(0.4, m1, 1.2, 5.0, 10.0).expect("reference parameters");
    let mut points = vec![(base(0.0), 0.6), (base(0.0), 1.1), (base(0.01), 0.6)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6f7261636c65);
    for _ in 0..2 {
        let m0 = rng.random_range(0.3..0.6);
        let v0 = rng.random_range(0.5..1.5);
        let alpha = rng.random_range(3.0..8.0);
        let l = rng.random_range(4.0..8.0);
        let e = v0 + m0 + rng.random_range(0.1..1.0);
        points.push((
            PhysicalConfig::new(m0, 0.0, v0, alpha, l).expect("sampled parameters"),
            e,
        ));
    }
    let (mut max_dt, mut max_dr) = (0.0f64, 0.0f64);
    for (cfg, e) in &points {
        let closed = match reflection_transmission(cfg, ProblemKind::Barrier, *e) {
            Ok(s) => s,
            Err(err) => return fail("oracle", format!("closed form failed at e = {e:.4}: {err}")),
        };
        let num = match integrate_scattering(cfg, ProblemKind::Barrier, *e, &settings) {
            Ok(s) => s,
            Err(err) => return fail("oracle", format!("integration failed at e = {e:.4}: {err}")),
        };
        max_dt = max_dt.max((closed.t - num.t).abs());
        max_dr = max_dr.max((closed.r - num.r).abs());
    }
    CheckOutcome {
        name: "oracle",
        passed: max_dt <= tol && max_dr <= tol,
        detail: format!(
            "closed form vs integration: max |dt| = {max_dt:.2e}, max |dr| = {max_dr:.2e} over {} energies (tol {tol:.0e})",
            points.len()
        ),
    }
}

/// Closed-form well spectrum against the shooting method.
fn check_bound(tol: Option<f64>) -> CheckOutcome {
    let tol = tol.unwrap_or(1e-6);
    let cfg = PhysicalConfig::new(0.5, 0.0, 1.0, 10.0, 5.0).expect("reference parameters");
    let closed = match find_bound_states(&cfg, 1200, None, MuBranch::Decaying) {
        Ok(s) => s,
        Err(err) => return fail("bound", format!("closed-form scan failed: {err}")),
    };
    let shot = match shooting_spectrum(&cfg, 220, &IntegrationSettings::default()) {
        Ok(s) => s,
        Err(err) => return fail("bound", format!("shooting scan failed: {err}")),
    };
    if closed.count() != shot.len() {
        return fail(
            "bound",
            format!(
                "level counts differ: closed form {} vs shooting {}",
                closed.count(),
                shot.len()
            ),
        );
    }
    let max_de = closed
        .energies
        .iter()
        .zip(&shot)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    CheckOutcome {
        name: "bound",
        passed: max_de <= tol,
        detail: format!(
            "all {} levels matched by direct integration, max |de| = {max_de:.2e} (tol {tol:.0e})",
            closed.count()
        ),
    }
}

/// At the gap edges the barrier's interference condition and the inverted
/// profile's quantization condition are the same expression; both sides must
/// agree to the bit (tolerance 0 unless overridden).
fn check_supercritical(seed: u64, tol: Option<f64>) -> CheckOutcome {
    let tol = tol.unwrap_or(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x65646765);
    let mut max_diff = 0.0f64;
    let mut mismatched = 0usize;
    for _ in 0..60 {
        let m0 = rng.random_range(0.2..1.0);
        let m1 = rng.random_range(0.0..0.2) * m0;
        let v0 = rng.random_range(0.1..2.5);
        let alpha = rng.random_range(2.0..30.0);
        let l = rng.random_range(2.0..10.0);
        let cfg = PhysicalConfig::new(m0, m1, v0, alpha, l).expect("sampled parameters are valid");
        match verify_equivalence(&cfg) {
            Ok(reports) => {
                for rep in reports {
                    if !rep.triples_match {
                        mismatched += 1;
                    }
                    max_diff = max_diff.max(rep.difference.abs());
                }
            }
            Err(err) => return fail("supercritical", format!("edge evaluation failed: {err}")),
        }
    }
    CheckOutcome {
        name: "supercritical",
        passed: mismatched == 0 && max_diff <= tol,
        detail: format!(
            "resonance and quantization conditions at both gap edges: max difference = {max_diff:.1e}, \
             {mismatched} parameter mismatches over 60 configurations"
        ),
    }
}
