//! Simultaneous root finding for univariate complex polynomials
//! (Aberth–Ehrlich iteration with Newton polishing).

use num_complex::Complex64;

const MAX_ITERS: usize = 600;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial vanishes identically")]
    ZeroPolynomial,
    #[error("root iteration did not converge (worst residual {0:.3e})")]
    NonConvergence(f64),
}

/// Roots of a polynomial whose leading coefficients may have been dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Roots {
    /// Finite roots, sorted by real part then imaginary part.
    pub values: Vec<Complex64>,
    /// How many leading coefficients were negligible (roots escaped to ∞).
    pub escaped: usize,
}

fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// `Σ |c_k| |x|^k`, the natural scale of a residual at `x`.
pub fn abs_scale(coeffs: &[Complex64], x: Complex64) -> f64 {
    let r = x.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

pub fn eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    horner(coeffs, x).0
}

/// All roots of `Σ coeffs[k] x^k`. Leading coefficients with modulus at most
/// `lead_tol · max|c|` are treated as zero.
pub fn find_roots(coeffs: &[Complex64], lead_tol: f64) -> Result<Roots, RootError> {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(RootError::ZeroPolynomial);
    }
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].norm() <= lead_tol * max {
        n -= 1;
    }
    let escaped = coeffs.len() - n;
    let c = &coeffs[..n];
    let deg = n.saturating_sub(1);
    let mut values = match deg {
        0 => Vec::new(),
        1 => vec![-c[0] / c[1]],
        _ => aberth(c)?,
    };
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(Roots { values, escaped })
}

fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    let deg = c.len() - 1;
    let lead = c[deg];
    // Fujiwara-style bound on root moduli.
    let radius = (0..deg)
        .map(|k| (c[k] / lead).norm().powf(1.0 / (deg - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERS {
        let mut moved = 0.0f64;
        for k in 0..deg {
            let (p, dp) = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    // Newton polish; keeps a step only if it reduces the residual.
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(c, *zk);
            let cand = *zk - p / dp;
            if cand.is_finite() && eval(c, cand).norm() < p.norm() {
                *zk = cand;
            } else {
                break;
            }
        }
    }
    // Normwise backward error, so clustered roots at 0 are accepted.
    let cmax = c.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let worst = z
        .iter()
        .map(|&x| {
            let r = x.norm();
            let powers: f64 = (0..=deg).map(|k| r.powi(k as i32)).sum();
            eval(c, x).norm() / (cmax * powers)
        })
        .fold(0.0, f64::max);
    if !worst.is_finite() || worst > 1e-12 {
        return Err(RootError::NonConvergence(worst));
    }
    Ok(z)
}

/// Newton iteration from `start`; used to follow one root locally.
pub fn polish(coeffs: &[Complex64], start: Complex64, iters: usize) -> Complex64 {
    let mut x = start;
    for _ in 0..iters {
        let (p, dp) = horner(coeffs, x);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.norm() <= 1e-16 * (1.0 + x.norm()) {
            break;
        }
    }
    x
}
