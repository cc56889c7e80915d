//! A posteriori checks on traced leaves and Segre slices.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{track_t, LeafTrace, NumFamily, NumWeb};
use crate::algebra::{NumPoly, Var};
use crate::hypersurface::{real_slots, real_values, Hypersurface};
use crate::roots::find_roots;
use crate::web::{ParamFamily, WebSystem};

type C64 = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Passed => "pass",
            CheckStatus::Failed => "fail",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Check {
    pub status: CheckStatus,
    pub worst: f64,
}

impl Check {
    fn against(worst: f64, tol: f64) -> Self {
        let status = if worst < tol { CheckStatus::Passed } else { CheckStatus::Failed };
        Self { status, worst }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceVerification {
    /// Every point stays on `Γ` (only if the start is on `Γ`).
    pub on_gamma: Check,
    /// `|H(z_k, t0)|` stays small.
    pub in_segre: Check,
    /// The continued root of `H(z_k, ·)` stays at `t0`.
    pub integral: Check,
}

impl TraceVerification {
    pub fn all_pass(&self) -> bool {
        [self.on_gamma, self.in_segre, self.integral].iter().all(|c| c.status != CheckStatus::Failed)
    }
}

/// `|ρ(z)|` relative to the scale of `ρ` at `z`.
pub(crate) fn rho_residual(rho: &NumPoly, z: &[C64]) -> f64 {
    let r = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
    rho.eval(&real_values(z)).norm() / rho.scale(r)
}

/// Checks the trace against `Γ` (when given), the Segre slice at `t0`, and
/// the first integral, recomputing everything from the recorded points.
pub fn verify_trace(trace: &LeafTrace, h: Option<&Hypersurface>, f: &ParamFamily, tol: f64) -> TraceVerification {
    let on_gamma = match h {
        Some(h) => {
            let rho = NumPoly::from_poly(&h.rho, &real_slots(h.n));
            if rho_residual(&rho, &trace.points[0]) < tol {
                Check::against(trace.points.iter().map(|z| rho_residual(&rho, z)).fold(0.0, f64::max), tol)
            } else {
                Check { status: CheckStatus::Skipped, worst: f64::NAN }
            }
        }
        None => Check { status: CheckStatus::Skipped, worst: f64::NAN },
    };
    let fam = NumFamily::new(f);
    let in_segre = Check::against(trace.points.iter().map(|z| fam.residual(z, trace.t0)).fold(0.0, f64::max), tol);
    let mut t = trace.t0;
    let mut drift = 0.0f64;
    for z in &trace.points {
        match track_t(&fam, z, t) {
            Ok(next) => {
                t = next;
                drift = drift.max((t - trace.t0).norm() / (1.0 + trace.t0.norm()));
            }
            Err(_) => {
                drift = f64::INFINITY;
                break;
            }
        }
    }
    TraceVerification { on_gamma, in_segre, integral: Check::against(drift, tol) }
}

/// Samples `count` points `(z', t0)`, solves `H(z', z_n, t0) = 0` for `z_n`,
/// takes `p_j = -H_{z_j}/H_{z_n}` (the slope of the slice) and returns the
/// worst `|Φ_j(z, p_j)|/scale` together with the number of points used.
pub fn segre_slice_check(w: &WebSystem, count: usize, seed: u64) -> (f64, usize) {
    let n = w.n;
    let fam = NumFamily::new(&w.family);
    let web = NumWeb::new(&w.phi, n);
    let zt: Vec<Var> = (1..=n).map(|k| Var::Z(k as u8)).chain(std::iter::once(Var::T)).collect();
    let zn_coeffs: Vec<NumPoly> =
        w.family.h.coeffs_in(Var::Z(n as u8)).iter().map(|c| NumPoly::from_poly(c, &zt)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(3);
    let mut unit = move || C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let mut worst = 0.0f64;
    let mut used = 0;
    for _ in 0..count * 20 {
        if used == count {
            break;
        }
        let mut z: Vec<C64> = (0..n - 1).map(|_| unit()).collect();
        let t0 = unit();
        let mut vals = z.clone();
        vals.push(C64::new(0.0, 0.0));
        vals.push(t0);
        let coeffs: Vec<C64> = zn_coeffs.iter().map(|c| c.eval(&vals)).collect();
        let Ok(roots) = find_roots(&coeffs, 1e-10) else { continue };
        let Some(&zn) = roots.values.first() else { continue };
        z.push(zn);
        let at = NumFamily::values(&z, t0);
        let hn = fam.dz[n - 1].eval(&at);
        let scale = fam.h.scale(at.iter().map(|c| c.norm()).fold(0.0, f64::max));
        if hn.norm() < 1e-6 * scale {
            continue;
        }
        let p: Vec<C64> = (0..n - 1).map(|j| -fam.dz[j].eval(&at) / hn).collect();
        if p.iter().any(|c| !c.is_finite() || c.norm() > 1e6) {
            continue;
        }
        worst = worst.max(web.residual(&z, &p));
        used += 1;
    }
    (worst, used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::sample_regular_points;
    use crate::leaf::tests::{web, PARABOLA_WEB};
    use crate::leaf::{trace_leaf, TraceConfig};
    use crate::par::Execution;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn parabola_web_from_0_1() {
        let w = web(PARABOLA_WEB);
        let tr = trace_leaf(&w, &[c(0.0, 0.0), c(1.0, 0.0)], 1, &TraceConfig::default()).unwrap();
        let v = verify_trace(&tr, w.hypersurface.as_ref(), &w.family, 1e-6);
        assert!(v.all_pass(), "{v:?}");
        assert_eq!(v.in_segre.status, CheckStatus::Passed);
        assert_eq!(v.integral.status, CheckStatus::Passed);
    }

    #[test]
    fn parabola_web_from_a_regular_sample() {
        let w = web(PARABOLA_WEB);
        let h = w.hypersurface.as_ref().unwrap();
        let jet_rho = NumPoly::from_poly(&h.rho, &real_slots(2));
        let samples = sample_regular_points(h, 8, 1.0, 11, Execution::Sequential).unwrap();
        let mut verified = 0;
        for s in &samples {
            // The Levi leaf has the complex-tangent slope -ρ_{z1}/ρ_{z2}.
            let vals = real_values(&s.point);
            let d1 = NumPoly::from_poly(&h.rho.partial_derive(Var::Z(1)), &real_slots(2)).eval(&vals);
            let d2 = NumPoly::from_poly(&h.rho.partial_derive(Var::Z(2)), &real_slots(2)).eval(&vals);
            let slope = -d1 / d2;
            let roots = &crate::leaf::p_roots_at(&w, &s.point).unwrap()[0];
            if roots.branch_point {
                continue;
            }
            let k = (0..roots.values.len())
                .min_by(|&a, &b| (roots.values[a] - slope).norm().total_cmp(&(roots.values[b] - slope).norm()))
                .unwrap();
            let cfg = TraceConfig { step: 0.005, max_steps: 20, ..Default::default() };
            let Ok(tr) = trace_leaf(&w, &s.point, k, &cfg) else { continue };
            assert!(rho_residual(&jet_rho, &s.point) < 1e-6);
            let v = verify_trace(&tr, Some(h), &w.family, 1e-6);
            assert_eq!(v.on_gamma.status, CheckStatus::Passed, "{v:?}");
            assert!(v.all_pass(), "{v:?}");
            verified += 1;
        }
        assert!(verified >= 4, "{verified}");
    }

    #[test]
    fn perturbed_trace_fails_in_segre() {
        let w = web(PARABOLA_WEB);
        let mut tr = trace_leaf(&w, &[c(0.0, 0.0), c(1.0, 0.0)], 1, &TraceConfig::default()).unwrap();
        tr.points[37][1] += 0.1;
        let v = verify_trace(&tr, None, &w.family, 1e-6);
        assert_eq!(v.in_segre.status, CheckStatus::Failed);
        assert_eq!(v.on_gamma.status, CheckStatus::Skipped);
    }

    #[test]
    fn segre_slices_are_leaves() {
        for text in [
            PARABOLA_WEB,
            "mode = rho\nn = 2\nexpr = (z2*zb2*(z1 + zb1)^2 - (z2 + zb2))^2 - 4*z2*zb2\nline = 0,0;0,1",
            "mode = rho\nn = 3\nexpr = x1^2 - y1^2 + x2^2 - y2^2 + x3^2 - y3^2\nline = 0,0,0;0,0,1",
            "mode = rho\nn = 2\nexpr = z1*zb1 - z2*zb2\nline = 0,1;1,0",
            "mode = rho\nn = 2\nexpr = x1^2 + y1^3\nline = 0,0;1,0",
        ] {
            let (worst, used) = segre_slice_check(&web(text), 10, 4);
            assert_eq!(used, 10, "{text}");
            assert!(worst < 1e-6, "{text}: {worst:e}");
        }
    }
}
