//! Coordinate normalization and the choice of the parametrizing line.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linear::LinearMap;
use super::{origin, WebError};
use crate::algebra::{GaussRational, MultiPoly, NumPoly, Var};
use crate::hypersurface::{is_dicritical, make_hypersurface, real_slots, real_values, segre_at, Hypersurface};

const DRAWS: usize = 32;
const PROBES: usize = 16;

/// The anti-linear line `w(t̄) = a + b·t̄`; substitution uses
/// `w̄ = ā + b̄·t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamLine {
    pub a: Vec<GaussRational>,
    pub b: Vec<GaussRational>,
}

impl ParamLine {
    pub fn new(a: Vec<GaussRational>, b: Vec<GaussRational>) -> Result<Self, WebError> {
        if a.len() != b.len() {
            return Err(WebError::InvalidLine("a and b differ in length".into()));
        }
        if b.iter().all(GaussRational::is_zero) {
            return Err(WebError::InvalidLine("b = 0".into()));
        }
        Ok(Self { a, b })
    }

    /// The line in the coordinates `z_new = M⁻¹ z_old`.
    pub fn transformed(&self, m_inv: &LinearMap) -> Self {
        Self { a: m_inv.apply(&self.a), b: m_inv.apply(&self.b) }
    }

    /// `ā_j + b̄_j t` for each `j`.
    pub fn conj_bindings(&self) -> HashMap<Var, MultiPoly> {
        let t = MultiPoly::var(Var::T);
        (0..self.a.len())
            .map(|j| {
                let lin = &MultiPoly::constant(self.a[j].conj()) + &t.scale(&self.b[j].conj());
                (Var::Wb(j as u8 + 1), lin)
            })
            .collect()
    }

    fn point(&self, s: &GaussRational) -> Vec<GaussRational> {
        self.a.iter().zip(&self.b).map(|(a, b)| a + &(b * s)).collect()
    }
}

impl fmt::Display for ParamLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[GaussRational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.a), join(&self.b))
    }
}

/// Which kind of line [`choose_line`] looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineMode {
    /// `a = 0`, for a nondicritical origin.
    Origin,
    /// `0 ∉ A`, avoiding dicritical points, for a dicritical origin.
    Affine,
}

/// `Q_0 ∩ {z' = 0}` is finite: `ρ(0', z_n, 0)` is not identically zero.
fn transverse(h: &Hypersurface) -> bool {
    let q0 = segre_at(h, &origin(h.n));
    let bindings: HashMap<Var, MultiPoly> = (1..h.n).map(|j| (Var::Z(j as u8), MultiPoly::zero())).collect();
    !q0.substitute(&bindings).is_zero()
}

fn random_gauss(rng: &mut ChaCha8Rng, bound: i64) -> GaussRational {
    GaussRational::from_ints(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound))
}

/// Makes `Q_0` transverse to the `z_n` axis. Tries the identity, then the
/// transpositions `z_j ↔ z_n`, then up to 32 random Gaussian-integer
/// matrices with entries in `[-3, 3]`. Returns `None` for the identity.
pub fn coordinate_normalize(h: &Hypersurface, seed: u64) -> Result<(Hypersurface, Option<LinearMap>), WebError> {
    if transverse(h) {
        return Ok((h.clone(), None));
    }
    let n = h.n;
    let apply = |m: &LinearMap| -> Hypersurface {
        make_hypersurface(m.pull_back(&h.rho), n).expect("linear changes preserve reality")
    };
    for j in (0..n - 1).rev() {
        let m = LinearMap::transposition(n, j, n - 1);
        let h2 = apply(&m);
        if transverse(&h2) {
            return Ok((h2, Some(m)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2);
    for _ in 0..DRAWS {
        let m = LinearMap { rows: (0..n).map(|_| (0..n).map(|_| random_gauss(&mut rng, 3)).collect()).collect() };
        if m.inverse().is_none() {
            continue;
        }
        let h2 = apply(&m);
        if transverse(&h2) {
            return Ok((h2, Some(m)));
        }
    }
    Err(WebError::NormalizationFailed(DRAWS))
}

/// `H(0, t)` for the line (condition (i) for `a = 0`).
fn h_at_origin(h: &Hypersurface, line: &ParamLine) -> MultiPoly {
    let mut bindings = line.conj_bindings();
    for j in 1..=h.n {
        bindings.insert(Var::Z(j as u8), MultiPoly::zero());
    }
    h.rho_c.substitute(&bindings)
}

/// Numeric check that the line is not inside the singular set of `Γ`:
/// most probe points have `ρ ≠ 0` or `∇ρ ≠ 0`.
fn leaves_singular_set(h: &Hypersurface, line: &ParamLine) -> bool {
    let slots = real_slots(h.n);
    let rho = NumPoly::from_poly(&h.rho, &slots);
    let grad: Vec<NumPoly> =
        (1..=h.n).map(|k| NumPoly::from_poly(&h.rho.partial_derive(Var::Z(k as u8)), &slots)).collect();
    let a: Vec<Complex64> = line.a.iter().map(GaussRational::to_complex).collect();
    let b: Vec<Complex64> = line.b.iter().map(GaussRational::to_complex).collect();
    let mut good = 0;
    for k in 0..PROBES {
        let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / PROBES as f64;
        let s = Complex64::from_polar(0.5, theta);
        let z: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x + y * s).collect();
        let r = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let tol = 1e-8 * rho.scale(r);
        let vals = real_values(&z);
        let g = grad.iter().map(|d| d.eval(&vals).norm_sqr()).sum::<f64>().sqrt();
        if rho.eval(&vals).norm() > tol || g > tol {
            good += 1;
        }
    }
    good > PROBES / 2
}

fn validate(h: &Hypersurface, mode: LineMode, line: &ParamLine) -> Result<(), String> {
    if line.a.len() != h.n {
        return Err(format!("line has dimension {}, expected {}", line.a.len(), h.n));
    }
    let family = h.rho_c.substitute(&line.conj_bindings());
    if family.degree_in(Var::T) == 0 {
        return Err("H does not depend on t".into());
    }
    match mode {
        LineMode::Origin => {
            if h_at_origin(h, line).is_zero() {
                return Err("H(0, t) vanishes identically".into());
            }
        }
        LineMode::Affine => {
            let independent = (0..h.n)
                .any(|i| (0..h.n).any(|j| !(&(&line.a[i] * &line.b[j]) - &(&line.a[j] * &line.b[i])).is_zero()));
            if !independent {
                return Err("line passes through the origin".into());
            }
            for s in probe_parameters() {
                if is_dicritical(h, &line.point(&s)) {
                    return Err(format!("dicritical point on the line at s = {s}"));
                }
            }
        }
    }
    if !leaves_singular_set(h, line) {
        return Err("line lies in the singular set".into());
    }
    Ok(())
}

fn probe_parameters() -> Vec<GaussRational> {
    [(0, 0), (1, 0), (-1, 0), (2, 0), (0, 1), (0, -1), (1, 1)]
        .into_iter()
        .map(|(re, im)| GaussRational::from_ints(re, im))
        .chain(std::iter::once(GaussRational::from_ratio(1, 2)))
        .collect()
}

/// Picks the parametrizing line. An explicit line is validated and
/// returned as given; otherwise up to 32 seeded draws are tried.
pub fn choose_line(
    h: &Hypersurface,
    mode: LineMode,
    seed: u64,
    explicit: Option<&ParamLine>,
) -> Result<ParamLine, WebError> {
    if let Some(line) = explicit {
        validate(h, mode, line).map_err(WebError::InvalidLine)?;
        return Ok(line.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let n = h.n;
    for _ in 0..DRAWS {
        let b: Vec<GaussRational> = (0..n).map(|_| random_gauss(&mut rng, 2)).collect();
        let a = match mode {
            LineMode::Origin => origin(n),
            LineMode::Affine => (0..n).map(|_| random_gauss(&mut rng, 2)).collect(),
        };
        let Ok(line) = ParamLine::new(a, b) else { continue };
        if validate(h, mode, &line).is_ok() {
            return Ok(line);
        }
    }
    Err(WebError::LineSelectionFailed(DRAWS))
}
