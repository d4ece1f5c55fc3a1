//! Acceptance gate: eight numbered criteria, one test per criterion, each
//! printing a single verdict line before asserting. Run with
//! `cargo test -p dirac-ws --test acceptance -- --nocapture` to see the full
//! scoreboard. Criteria 1-3 fail by design of the problem, not of the code:
//! the reduced-equation amplitudes are not flux-conserving once the mass is
//! position dependent, and no transmission exists inside the evanescent
//! window (v0 - m0, v0 + m0). The verdict lines carry the measured numbers.

// frozen reference values keep their full recorded precision
#![allow(clippy::excessive_precision)]

use std::time::Instant;

use dirac_ws::bound::find_bound_states;
use dirac_ws::model::{
    exponents, grid_half_open, grid_interior, MuBranch, PhysicalConfig, ProblemKind,
};
use dirac_ws::oracle::{integrate_scattering, shooting_spectrum, IntegrationSettings, OracleMode};
use dirac_ws::scattering::{reflection_transmission, resonances, sweep, SweepVariable};
use dirac_ws::special::{hyp2f1_near_one, hyp2f1_series, log_gamma};
use dirac_ws::supercritical::verify_equivalence;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fig1(m1: f64) -> PhysicalConfig {
    PhysicalConfig::new(0.4, m1, 1.2, 5.0, 10.0).unwrap()
}

fn well(m1: f64) -> PhysicalConfig {
    PhysicalConfig::new(0.5, m1, 1.0, 10.0, 5.0).unwrap()
}

fn verdict(n: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

// Criterion 1: on the 2000-point reference energy grid the reported r + t
// stays within 1e-8 of 1 for both mass settings, in under 5 seconds.
#[test]
fn criterion_1_figure_grid_unitarity() {
    let start = Instant::now();
    let grid = grid_half_open(0.401, 1.2, 2000);
    let mut defects = [0.0f64; 2];
    for (i, m1) in [0.0, 0.01].into_iter().enumerate() {
        let cfg = fig1(m1);
        let pts = sweep(&cfg, ProblemKind::Barrier, SweepVariable::Energy, &grid);
        let mut holes = 0usize;
        for pt in &pts {
            match &pt.result {
                Ok(s) => defects[i] = defects[i].max(s.unitarity_defect.abs()),
                Err(_) => holes += 1,
            }
        }
        assert_eq!(holes, 0, "grid must avoid channel edges");
    }
    let dt = start.elapsed().as_secs_f64();
    let pass = defects[0] <= 1e-8 && defects[1] <= 1e-8 && dt < 5.0;
    let detail = format!(
        "max |r+t-1| = {:.2e} (m1 = 0), {:.2e} (m1 = 0.01), limit 1e-8, {dt:.2}s",
        defects[0], defects[1]
    );
    verdict(1, "figure-grid unitarity", pass, &detail);
    assert!(pass, "{detail}");
}

// Criterion 2: the transmission curve of the reference barrier shows the
// expected features: nothing below the mass gap, unit-transmission
// resonances between m0 and 2 m0, and an open channel (t >= 0.99) across
// [0.85, 1.2].
#[test]
fn criterion_2_transmission_features() {
    let cfg = fig1(0.0);
    let mut t_below = 0.0f64;
    for e in grid_half_open(0.2, 0.399, 200) {
        t_below = t_below.max(
            reflection_transmission(&cfg, ProblemKind::Barrier, e)
                .unwrap()
                .t,
        );
    }
    let below_ok = t_below <= 1e-6;

    let rs = resonances(&cfg, ProblemKind::Barrier, 0.401, 0.799, None).unwrap();
    let peaks_ok = !rs.is_empty() && rs.iter().all(|r| r.t_at_peak >= 0.999);

    let mut t_open_min = f64::INFINITY;
    let mut t_open_max = 0.0f64;
    for e in grid_half_open(0.85, 1.2, 200) {
        let t = reflection_transmission(&cfg, ProblemKind::Barrier, e)
            .unwrap()
            .t;
        t_open_min = t_open_min.min(t);
        t_open_max = t_open_max.max(t);
    }
    let open_ok = t_open_min >= 0.99;

    let pass = below_ok && peaks_ok && open_ok;
    let detail = format!(
        "below gap max t = {t_below:.2e}; {} resonances, min peak t = {:.12}; \
         on [0.85, 1.2] t ranges {t_open_min:.3e}..{t_open_max:.3e} (need >= 0.99, \
         but this window sits inside the evanescent band (v0-m0, v0+m0) = (0.8, 1.6))",
        rs.len(),
        rs.iter().map(|r| r.t_at_peak).fold(f64::INFINITY, f64::min),
    );
    verdict(2, "transmission features", pass, &detail);
    assert!(pass, "{detail}");
}

// Criterion 3: sweeping the height at E = 0.8: opaque (t <= 1e-6) for every
// v0 in [0.45, 1.15], and transparent somewhere (t >= 0.999) in (1.2, 3.0].
#[test]
fn criterion_3_height_sweep_features() {
    let cfg = fig1(0.0);
    let mut grid = vec![0.45];
    grid.extend(grid_interior(0.45, 1.15, 200));
    grid.push(1.15);
    let mut t_low = 0.0f64;
    for pt in sweep(
        &cfg,
        ProblemKind::Barrier,
        SweepVariable::Height { e: 0.8 },
        &grid,
    ) {
        t_low = t_low.max(pt.result.unwrap().t);
    }
    let opaque_ok = t_low <= 1e-6;

    let mut t_high = 0.0f64;
    for pt in sweep(
        &cfg,
        ProblemKind::Barrier,
        SweepVariable::Height { e: 0.8 },
        &grid_half_open(1.2, 3.0, 400),
    ) {
        if let Ok(s) = pt.result {
            t_high = t_high.max(s.t);
        }
    }
    let transparent_ok = t_high >= 0.999;

    let pass = opaque_ok && transparent_ok;
    let detail = format!(
        "max t on [0.45, 1.15] = {t_low:.2e} (need <= 1e-6; weak walls near v0 = 0.45 \
         still leak), max t on (1.2, 3.0] = {t_high:.6}"
    );
    verdict(3, "height-sweep features", pass, &detail);
    assert!(pass, "{detail}");
}

// Criterion 4: closed form vs direct integration of the same reduced
// equation: |delta t| <= 1e-4 at ten energies for both mass settings,
// in under 30 seconds.
#[test]
fn criterion_4_integration_cross_check() {
    let start = Instant::now();
    let settings = IntegrationSettings {
        mode: OracleMode::Reduced,
        ..Default::default()
    };
    let mut worst = 0.0f64;
    for m1 in [0.0, 0.01] {
        let cfg = fig1(m1);
        for e in grid_interior(0.45, 1.2, 10) {
            let c = reflection_transmission(&cfg, ProblemKind::Barrier, e).unwrap();
            let o = integrate_scattering(&cfg, ProblemKind::Barrier, e, &settings).unwrap();
            worst = worst.max((c.t - o.t).abs());
        }
    }
    let dt = start.elapsed().as_secs_f64();
    let pass = worst <= 1e-4 && dt < 30.0;
    let detail = format!("max |delta t| = {worst:.2e} over 20 points, limit 1e-4, {dt:.2}s");
    verdict(4, "integration cross-check", pass, &detail);
    assert!(pass, "{detail}");
}

// Criterion 5: enhancing the interior mass moves the lowest unit-transmission
// resonance strictly down in energy.
#[test]
fn criterion_5_resonance_shift() {
    let r0 = resonances(&fig1(0.0), ProblemKind::Barrier, 0.401, 0.799, None).unwrap();
    let r1 = resonances(&fig1(0.01), ProblemKind::Barrier, 0.401, 0.799, None).unwrap();
    let pass = !r0.is_empty() && !r1.is_empty() && r1[0].e < r0[0].e;
    let detail = format!(
        "lowest zero {:.12} (m1 = 0.01) vs {:.12} (m1 = 0)",
        r1.first().map(|r| r.e).unwrap_or(f64::NAN),
        r0.first().map(|r| r.e).unwrap_or(f64::NAN)
    );
    verdict(5, "resonance shift under mass enhancement", pass, &detail);
    assert!(pass, "{detail}");
}

// Criterion 6: the closed-form spectrum of the reference well reproduces the
// shooting spectrum level by level at constant mass, and mass enhancement
// does not lose levels (counts referee by the integrator).
#[test]
fn criterion_6_bound_spectra() {
    let settings = IntegrationSettings::default();
    let closed0 = find_bound_states(&well(0.0), 2000, None, MuBranch::Decaying).unwrap();
    let shot0 = shooting_spectrum(&well(0.0), 300, &settings).unwrap();
    let counts0_ok = closed0.count() == shot0.len();
    let mut worst = 0.0f64;
    if counts0_ok {
        for (c, s) in closed0.energies.iter().zip(&shot0) {
            worst = worst.max((c - s).abs());
        }
    }
    let levels_ok = counts0_ok && worst <= 1e-6;

    let closed1 = find_bound_states(&well(0.1), 2000, None, MuBranch::Decaying).unwrap();
    let shot1 = shooting_spectrum(&well(0.1), 300, &settings).unwrap();
    let count_ok = closed1.count() >= closed0.count() && closed1.count() == shot1.len();

    let pass = levels_ok && count_ok;
    let detail = format!(
        "constant mass: {} levels, max |closed - shooting| = {worst:.2e}; \
         enhanced mass: {} levels (shooting: {})",
        closed0.count(),
        closed1.count(),
        shot1.len()
    );
    verdict(6, "bound spectra vs shooting", pass, &detail);
    assert!(pass, "{detail}");
}

// Criterion 7: at both gap edges the interference condition of the barrier
// and the quantization condition of the inverted profile coincide, over 1000
// seeded random configurations; the wall-exponent swap identity holds to the
// bit.
#[test]
fn criterion_7_gap_edge_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260816);
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    let mut swaps_ok = true;
    while checked < 1000 {
        let m0 = rng.random_range(0.1..1.5);
        let m1 = rng.random_range(0.0..0.2) * m0;
        let v0 = rng.random_range(0.1..3.0);
        let alpha = rng.random_range(0.5..20.0);
        let l = rng.random_range(1.0..15.0);
        let cfg = PhysicalConfig::new(m0, m1, v0, alpha, l).unwrap();
        let Ok(reports) = verify_equivalence(&cfg) else {
            continue;
        };
        for rep in reports {
            let scale = rep.resonance_value.norm().max(1.0);
            worst = worst.max((rep.resonance_value - rep.bound_value).norm() / scale);
            assert!(rep.triples_match, "triples differ for {cfg:?}");
        }
        let e = m0 + rng.random_range(0.05..2.0);
        if let (Ok(b), Ok(w)) = (
            exponents(&cfg, ProblemKind::Barrier, e),
            exponents(&cfg, ProblemKind::Well, e),
        ) {
            swaps_ok &= b.sigma == w.delta && b.delta == w.sigma;
        }
        checked += 1;
    }
    let pass = worst <= 1e-10 && swaps_ok;
    let detail = format!(
        "max relative edge difference = {worst:.2e} over {checked} configs, \
         exponent swap bit-exact: {swaps_ok}"
    );
    verdict(7, "gap-edge identity", pass, &detail);
    assert!(pass, "{detail}");
}

// Criterion 8: the special-function layer holds its advertised accuracy:
// frozen references to 1e-12, recurrence and reflection to 1e-10, series vs
// connection overlap to 1e-9, all in under 10 seconds.
#[test]
fn criterion_8_special_function_accuracy() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    let frozen = [
        (
            Complex64::new(1.0, 1.0),
            Complex64::new(-0.65092319930185633889, -0.30164032046753319789),
        ),
        (
            Complex64::new(0.5, -3.0),
            Complex64::new(-3.7934504504362231734, -0.30981927108643916606),
        ),
        (
            Complex64::new(-2.5, 0.5),
            Complex64::new(-0.93508562129827747868, -8.8709628852474591986),
        ),
    ];
    let mut frozen_err = 0.0f64;
    for (z, want) in frozen {
        let got = log_gamma(z).unwrap();
        frozen_err = frozen_err.max((got - want).norm() / (1.0 + want.norm()));
    }

    let mut ident_err = 0.0f64;
    for _ in 0..200 {
        let z = Complex64::new(rng.random_range(-6.0..6.0), rng.random_range(0.05..6.0));
        let rec = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp() / z;
        ident_err = ident_err.max((rec - 1.0).norm());
        let refl = (log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap()).exp();
        let want = std::f64::consts::PI / (std::f64::consts::PI * z).sin();
        ident_err = ident_err.max((refl - want).norm() / (1.0 + want.norm()));
    }

    let mut overlap_err = 0.0f64;
    let mut kept = 0usize;
    while kept < 100 {
        let a = Complex64::new(rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2));
        let b = Complex64::new(rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2));
        let c = Complex64::new(rng.random_range(0.6..2.5), rng.random_range(-0.8..0.8));
        let s = c - a - b;
        if (s - s.re.round()).norm() < 0.05 {
            continue;
        }
        let x = rng.random_range(0.72..0.88);
        let direct = hyp2f1_series(a, b, c, x).unwrap();
        let connected = hyp2f1_near_one(a, b, c, x).unwrap();
        overlap_err = overlap_err.max((direct - connected).norm() / (1.0 + direct.norm()));
        kept += 1;
    }

    let dt = start.elapsed().as_secs_f64();
    let pass = frozen_err <= 1e-12 && ident_err <= 1e-10 && overlap_err <= 1e-9 && dt < 10.0;
    let detail = format!(
        "frozen refs {frozen_err:.2e} (<= 1e-12), identities {ident_err:.2e} (<= 1e-10), \
         overlap {overlap_err:.2e} (<= 1e-9), {dt:.2}s"
    );
    verdict(8, "special-function accuracy", pass, &detail);
    assert!(pass, "{detail}");
}
