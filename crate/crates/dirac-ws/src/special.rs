use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// How close an argument may come to a nonpositive integer before the gamma
/// function is treated as singular.
pub const POLE_TOL: f64 = 1e-9;

/// Crossover argument between the power series and the 1-x connection.
pub const SERIES_CROSSOVER: f64 = 0.7;

const SERIES_EPS: f64 = 1e-13;
const MAX_TERMS: usize = 100_000;

// Lanczos coefficients, g = 7, 9 terms (Godfrey's set, as circulated via the
// GSL); gives ~1e-13 relative accuracy over the right half plane.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)] // published coefficient digits kept verbatim
const LANCZOS_C: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn near_pole(z: Complex64) -> bool {
    let n = z.re.round();
    n <= 0.0 && (z - n).norm() <= POLE_TOL
}

/// Log of the gamma function for complex argument, on the standard analytic
/// continuation (imaginary part not reduced mod 2*pi), accurate to ~1e-13.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma argument {z} is not finite"
        )));
    }
    if near_pole(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re < 0.5 {
        // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z); the pole
        // guard above keeps sin(pi z) away from zero.
        return Ok(PI.ln() - log_sin_pi(z) - log_gamma(Complex64::new(1.0, 0.0) - z)?);
    }
    let x = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_C[0], 0.0);
    for (i, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln())
}

// log(sin(pi z)) with the linear term -+ i*pi*z kept unreduced, so the
// imaginary part follows the analytic continuation in Re z instead of
// wrapping, and nothing overflows for large |Im z|.
fn log_sin_pi(z: Complex64) -> Complex64 {
    let w = PI * z;
    if w.im >= 0.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw}), |e^{2iw}| <= 1 here
        let e = (Complex64::new(0.0, 2.0) * w).exp();
        Complex64::new(-LN_2, FRAC_PI_2) - Complex64::i() * w + (Complex64::new(1.0, 0.0) - e).ln()
    } else {
        let e = (Complex64::new(0.0, -2.0) * w).exp();
        Complex64::new(-LN_2, -FRAC_PI_2) + Complex64::i() * w + (Complex64::new(1.0, 0.0) - e).ln()
    }
}

/// Product of gamma factors over another, assembled in log space so that huge
/// individual factors cancel instead of overflowing. A pole in a denominator
/// factor annihilates the ratio (limit 0); a pole in a numerator factor is an
/// error.
pub fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &z in num {
        acc += log_gamma(z)?;
    }
    for &z in den {
        match log_gamma(z) {
            Ok(lg) => acc -= lg,
            Err(Error::Pole { .. }) => return Ok(Complex64::new(0.0, 0.0)),
            Err(e) => return Err(e),
        }
    }
    let r = acc.exp();
    if !r.re.is_finite() || !r.im.is_finite() {
        return Err(Error::Overflow("gamma_ratio".into()));
    }
    Ok(r)
}

/// Gauss hypergeometric series sum_n (a)_n (b)_n / ((c)_n n!) x^n.
/// Converges for |x| < 1; practical below the crossover where the
/// near-unit-argument connection takes over.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    if near_pole(c) {
        return Err(Error::Pole { re: c.re, im: c.im });
    }
    if !x.is_finite() || x.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "hypergeometric series argument {x} outside (-1, 1)"
        )));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0u32;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        // two consecutive negligible terms, so a single accidental zero
        // cannot stop the summation early
        if term.norm() <= SERIES_EPS * sum.norm() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "hypergeometric series at x = {x}"
    )))
}

/// 2F1 near x = 1 via the two-term connection to argument 1 - x. Rejects
/// parameter sets where c - a - b is within 1e-9 of an integer, where the
/// connection coefficients degenerate.
pub fn hyp2f1_near_one(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    if !x.is_finite() || x <= 0.0 || x >= 1.0 {
        return Err(Error::Domain(format!(
            "connection argument {x} outside (0, 1)"
        )));
    }
    hyp2f1_complement(a, b, c, 1.0 - x)
}

/// The same connection with the complement 1 - x supplied directly, so
/// arguments exponentially close to 1 (where 1 - x itself would round away)
/// keep full precision.
pub fn hyp2f1_complement(a: Complex64, b: Complex64, c: Complex64, omx: f64) -> Result<Complex64> {
    let s = c - a - b;
    if (s - s.re.round()).norm() <= 1e-9 {
        return Err(Error::DegenerateParameters { re: s.re, im: s.im });
    }
    if !omx.is_finite() || omx <= 0.0 || omx >= 1.0 {
        return Err(Error::Domain(format!(
            "connection complement {omx} outside (0, 1)"
        )));
    }
    let p1 = gamma_ratio(&[c, s], &[c - a, c - b])?;
    let p2 = gamma_ratio(&[c, -s], &[a, b])?;
    let f1 = hyp2f1_series(a, b, 1.0 - s, omx)?;
    let f2 = hyp2f1_series(c - a, c - b, 1.0 + s, omx)?;
    Ok(p1 * f1 + p2 * Complex64::from(omx).powc(s) * f2)
}

/// 2F1 for real argument in (-1, 1): power series below the crossover, the
/// 1-x connection above it.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    if x <= SERIES_CROSSOVER {
        hyp2f1_series(a, b, c, x)
    } else {
        hyp2f1_near_one(a, b, c, x)
    }
}

/// 2F1 with the argument passed as the pair (x, 1 - x). The evaluators of
/// wall-centered wavefunctions use this: their arguments approach 1
/// exponentially fast in the distance from the wall.
pub fn hyp2f1_c(a: Complex64, b: Complex64, c: Complex64, x: f64, omx: f64) -> Result<Complex64> {
    if x <= SERIES_CROSSOVER {
        hyp2f1_series(a, b, c, x)
    } else {
        hyp2f1_complement(a, b, c, omx)
    }
}
