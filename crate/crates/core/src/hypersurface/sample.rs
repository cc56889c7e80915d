//! Random sampling of regular points of `Γ = {ρ = 0}`.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::levi::levi_at;
use super::{real_values, Hypersurface, HypersurfaceError, RhoJet};
use crate::par::{map_indexed, Execution};

const GRID: usize = 64;
const BATCH: usize = 64;

/// A regular point of `Γ` found by the sampler.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSample {
    pub point: Vec<Complex64>,
    /// `|ρ(point)|`.
    pub residual: f64,
    /// `‖∂ρ/∂z‖₂`.
    pub grad_norm: f64,
    /// Max-abs entry of the Levi matrix restricted to the complex tangent.
    pub levi_norm: f64,
    /// Max-abs entry of all second derivatives `ρ_{z z̄}`, `ρ_{z z}`.
    pub second_scale: f64,
}

impl SurfaceSample {
    /// `levi_norm / second_scale`, or 0 when all second derivatives vanish.
    pub fn levi_ratio(&self) -> f64 {
        if self.second_scale > 0.0 {
            self.levi_norm / self.second_scale
        } else {
            0.0
        }
    }
}

fn rho_real(jet: &RhoJet, z: &[Complex64]) -> f64 {
    jet.rho.eval(&real_values(z)).re
}

/// `d/ds ρ(z + s v) = 2 Re Σ ρ_{z_j} v_j` for real `ρ`.
fn rho_slope(jet: &RhoJet, z: &[Complex64], v: &[Complex64]) -> f64 {
    let vals = real_values(z);
    2.0 * jet.dz.iter().zip(v).map(|(d, vj)| d.eval(&vals) * vj).sum::<Complex64>().re
}

fn along(z0: &[Complex64], v: &[Complex64], s: f64) -> Vec<Complex64> {
    z0.iter().zip(v).map(|(a, b)| a + b * s).collect()
}

/// Regular points found on one random real line.
fn sample_line(h: &Hypersurface, jet: &RhoJet, radius: f64, scale: f64, seed: u64, idx: usize) -> Vec<SurfaceSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(idx as u64);
    let n = h.n;
    let z0: Vec<Complex64> =
        (0..n).map(|_| Complex64::new(rng.random_range(-radius..radius), rng.random_range(-radius..radius))).collect();
    let mut v: Vec<Complex64> =
        (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-3 {
        return Vec::new();
    }
    v.iter_mut().for_each(|c| *c /= norm);

    let f = |s: f64| rho_real(jet, &along(&z0, &v, s));
    let grid: Vec<f64> = (0..=GRID).map(|k| -radius + 2.0 * radius * k as f64 / GRID as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&s| f(s)).collect();
    let mut roots = Vec::new();
    for k in 0..GRID {
        let (fa, fb) = (vals[k], vals[k + 1]);
        if fa == 0.0 {
            roots.push(grid[k]);
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            roots.push(bisect(&f, grid[k], grid[k + 1], fa));
        }
    }
    let mut out = Vec::new();
    for s in roots {
        let s = newton(jet, &z0, &v, s);
        let point = along(&z0, &v, s);
        let residual = rho_real(jet, &point).abs();
        let vals = real_values(&point);
        let grad_norm = jet.dz.iter().map(|d| d.eval(&vals).norm_sqr()).sum::<f64>().sqrt();
        if residual >= 1e-12 * scale || grad_norm < 1e-6 * scale {
            continue;
        }
        let (levi_norm, second_scale) = levi_at(jet, &point);
        out.push(SurfaceSample { point, residual, grad_norm, levi_norm, second_scale });
    }
    out
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// A few Newton steps, each kept only if it lowers `|ρ|`.
fn newton(jet: &RhoJet, z0: &[Complex64], v: &[Complex64], mut s: f64) -> f64 {
    let mut fs = rho_real(jet, &along(z0, v, s)).abs();
    for _ in 0..4 {
        let z = along(z0, v, s);
        let slope = rho_slope(jet, &z, v);
        if slope == 0.0 || fs == 0.0 {
            break;
        }
        let cand = s - rho_real(jet, &z) / slope;
        let fc = rho_real(jet, &along(z0, v, cand)).abs();
        if !(fc < fs) {
            break;
        }
        s = cand;
        fs = fc;
    }
    s
}

/// Up to `count` regular points of `Γ` in the box `|Re z_j|, |Im z_j| ≤ radius`.
///
/// Line `i` draws from a ChaCha8 stream `i` of `seed`, and lines are consumed
/// in index order, so the result does not depend on `exec`.
pub fn sample_regular_points(
    h: &Hypersurface,
    count: usize,
    radius: f64,
    seed: u64,
    exec: Execution,
) -> Result<Vec<SurfaceSample>, HypersurfaceError> {
    assert!(count >= 1, "count must be positive");
    let jet = RhoJet::new(h);
    let scale = jet.rho.scale(radius);
    let budget = (16 * count).max(256);
    let mut out = Vec::new();
    let mut next = 0;
    while out.len() < count && next < budget {
        let batch = BATCH.min(budget - next);
        let found = map_indexed(exec, batch, |i| sample_line(h, &jet, radius, scale, seed, next + i));
        out.extend(found.into_iter().flatten());
        next += batch;
    }
    if out.is_empty() {
        return Err(HypersurfaceError::SamplingExhausted { tried: next });
    }
    out.truncate(count);
    Ok(out)
}
