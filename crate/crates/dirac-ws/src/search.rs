/// Golden-section minimization of a scalar function on [a, b]. Points where
/// the objective is unavailable should return +inf; the bracket shrinks away
/// from them. Returns the abscissa of the minimum.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..256 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Bisection for a sign change of f on [a, b]; assumes f(a) and f(b) have
/// opposite signs. Returns the root abscissa.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fa < 0.0) == (fm < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_minimum() {
        let x = golden_min(|x| (x - 1.25).powi(2), 0.0, 3.0, 1e-12);
        assert!((x - 1.25).abs() < 1e-10);
    }

    #[test]
    fn bisects_cubic_root() {
        let x = bisect(|x| x * x * x - 2.0, 0.0, 2.0, 1e-13);
        assert!((x - 2f64.cbrt()).abs() < 1e-12);
    }
}
