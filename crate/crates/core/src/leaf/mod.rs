//! Numerical leaves of an extracted web, traced by root continuation along a
//! complex line in `z'`, and a posteriori checks against `Γ`, the Segre
//! slices and the first integral.

mod verify;

use num_complex::Complex64;

use crate::algebra::{MultiPoly, NumPoly, Var};
use crate::roots::{find_roots, polish, RootError};
use crate::web::{ParamFamily, WebSystem};

pub use verify::{segre_slice_check, verify_trace, Check, CheckStatus, TraceVerification};

type C64 = Complex64;

/// Roots closer than this (relative) count as one multiple root.
const CLUSTER: f64 = 1e-6;
const MAX_HALVINGS: u32 = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LeafError {
    #[error("root finding did not converge (residual {0:.3e})")]
    NonConvergence(f64),
    #[error("branches merged below resolution near step {step}")]
    BranchCollision { step: usize },
    #[error("step {step} failed: {reason}")]
    StepFailure { step: usize, reason: String },
    #[error("start point is not regular: {0}")]
    NotRegular(String),
}

impl From<RootError> for LeafError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NonConvergence(r) => LeafError::NonConvergence(r),
            RootError::ZeroPolynomial => LeafError::NotRegular("Phi_j vanishes identically in p_j".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceConfig {
    /// Step in the complex-line parameter `s`.
    pub step: f64,
    pub max_steps: usize,
    pub tol: f64,
    /// Two roots closer than this have merged.
    pub match_radius: f64,
    /// Direction `v` in `z'`; `None` means `e_1`.
    pub direction: Option<Vec<C64>>,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self { step: 0.01, max_steps: 100, tol: 1e-6, match_radius: 1e-9, direction: None }
    }
}

/// Roots of `p_j ↦ Φ_j(z, p_j)` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PRoots {
    /// Finite roots, sorted by real then imaginary part.
    pub values: Vec<C64>,
    /// Roots lost to a vanishing leading coefficient.
    pub escaped: usize,
    /// Some roots coincide.
    pub branch_point: bool,
}

impl PRoots {
    /// Distinct roots with multiplicities.
    pub fn distinct(&self) -> Vec<(C64, usize)> {
        let mut out: Vec<(C64, usize)> = Vec::new();
        for &r in &self.values {
            match out.iter_mut().find(|(c, _)| close(*c, r)) {
                Some(entry) => entry.1 += 1,
                None => out.push((r, 1)),
            }
        }
        out
    }
}

fn close(a: C64, b: C64) -> bool {
    (a - b).norm() <= CLUSTER * (1.0 + a.norm().max(b.norm()))
}

/// Float form of the web: `Φ_j` as polynomials in `p_j` with coefficients in
/// `z`.
#[derive(Clone, Debug)]
pub(crate) struct NumWeb {
    n: usize,
    coeffs: Vec<Vec<NumPoly>>,
    full: Vec<NumPoly>,
}

impl NumWeb {
    pub fn new(phi: &[MultiPoly], n: usize) -> Self {
        let z: Vec<Var> = (1..=n).map(|k| Var::Z(k as u8)).collect();
        let coeffs = phi
            .iter()
            .enumerate()
            .map(|(i, f)| f.coeffs_in(Var::P(i as u8 + 1)).iter().map(|c| NumPoly::from_poly(c, &z)).collect())
            .collect();
        let full = phi
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut slots = z.clone();
                slots.push(Var::P(i as u8 + 1));
                NumPoly::from_poly(f, &slots)
            })
            .collect();
        Self { n, coeffs, full }
    }

    fn p_coeffs(&self, j: usize, z: &[C64]) -> Vec<C64> {
        self.coeffs[j].iter().map(|c| c.eval(z)).collect()
    }

    fn roots(&self, j: usize, z: &[C64]) -> Result<PRoots, LeafError> {
        let r = find_roots(&self.p_coeffs(j, z), 1e-13)?;
        let branch_point = r.values.iter().enumerate().any(|(a, &x)| r.values[a + 1..].iter().any(|&y| close(x, y)));
        Ok(PRoots { values: r.values, escaped: r.escaped, branch_point })
    }

    /// `|Φ_j(z, p_j)|` relative to the scale of `Φ_j`.
    pub fn residual(&self, z: &[C64], p: &[C64]) -> f64 {
        self.full
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let vals: Vec<C64> = z.iter().copied().chain(std::iter::once(p[j])).collect();
                let r = vals.iter().map(|c| c.norm()).fold(0.0, f64::max);
                f.eval(&vals).norm() / f.scale(r)
            })
            .fold(0.0, f64::max)
    }

    fn dim(&self) -> usize {
        self.n
    }
}

/// Float form of the family with the `z`-derivatives needed to pick `t`.
#[derive(Clone, Debug)]
pub(crate) struct NumFamily {
    t_coeffs: Vec<NumPoly>,
    pub h: NumPoly,
    dz: Vec<NumPoly>,
}

impl NumFamily {
    pub fn new(f: &ParamFamily) -> Self {
        let z: Vec<Var> = (1..=f.n).map(|k| Var::Z(k as u8)).collect();
        let mut zt = z.clone();
        zt.push(Var::T);
        Self {
            t_coeffs: f.h.coeffs_in(Var::T).iter().map(|c| NumPoly::from_poly(c, &z)).collect(),
            h: NumPoly::from_poly(&f.h, &zt),
            dz: (1..=f.n).map(|k| NumPoly::from_poly(&f.h.partial_derive(Var::Z(k as u8)), &zt)).collect(),
        }
    }

    pub fn t_roots(&self, z: &[C64]) -> Result<Vec<C64>, LeafError> {
        let c: Vec<C64> = self.t_coeffs.iter().map(|p| p.eval(z)).collect();
        match find_roots(&c, 1e-13) {
            Ok(r) if !r.values.is_empty() => Ok(r.values),
            Ok(_) | Err(RootError::ZeroPolynomial) => Err(LeafError::NotRegular("no finite t with H(z, t) = 0".into())),
            Err(RootError::NonConvergence(r)) => Err(LeafError::NonConvergence(r)),
        }
    }

    pub fn values(z: &[C64], t: C64) -> Vec<C64> {
        z.iter().copied().chain(std::iter::once(t)).collect()
    }

    /// `|H(z, t)|` relative to the scale of `H`.
    pub fn residual(&self, z: &[C64], t: C64) -> f64 {
        let vals = Self::values(z, t);
        let r = vals.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.h.eval(&vals).norm() / self.h.scale(r)
    }

    /// `Σ_j |G_j(z, t, p_j)|`, how well the slice at `t` matches slope `p`.
    fn slope_mismatch(&self, z: &[C64], t: C64, p: &[C64]) -> f64 {
        let vals = Self::values(z, t);
        let hn = self.dz[z.len() - 1].eval(&vals);
        p.iter().enumerate().map(|(j, pj)| (self.dz[j].eval(&vals) + pj * hn).norm()).sum()
    }
}

/// Centroid of the roots clustered with `best`.
fn cluster_centre(roots: &[C64], best: C64) -> C64 {
    let members: Vec<C64> = roots.iter().copied().filter(|&r| close(r, best)).collect();
    members.iter().sum::<C64>() / members.len() as f64
}

/// Tracks a first-integral value: the root of `H(z, ·)` nearest `prev`.
pub(crate) fn track_t(fam: &NumFamily, z: &[C64], prev: C64) -> Result<C64, LeafError> {
    let roots = fam.t_roots(z)?;
    let best = roots.iter().copied().min_by(|a, b| (a - prev).norm().total_cmp(&(b - prev).norm())).expect("nonempty");
    Ok(cluster_centre(&roots, best))
}

/// All roots of each `Φ_j(z, ·)`, for `j = 1..n-1`, in working coordinates.
pub fn p_roots_at(w: &WebSystem, z: &[C64]) -> Result<Vec<PRoots>, LeafError> {
    assert_eq!(z.len(), w.n, "point dimension");
    let web = NumWeb::new(&w.phi, w.n);
    (0..w.n - 1).map(|j| web.roots(j, z)).collect()
}

/// A traced leaf. Points are in working coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafTrace {
    pub points: Vec<Vec<C64>>,
    /// `p` at each point.
    pub branches: Vec<Vec<C64>>,
    pub t0: C64,
    /// The first-integral value followed by continuity at each point.
    pub t_track: Vec<C64>,
    pub direction: Vec<C64>,
    pub step: f64,
    /// Number of step halvings needed to keep branches apart.
    pub halvings: u32,
    /// A halving was needed somewhere.
    pub near_branch_point: bool,
    /// Largest `|Φ_j(z, p_j)|/scale` over the points.
    pub max_phi_residual: f64,
    /// Largest `|H(z, t0)|/scale` over the points.
    pub max_h_residual: f64,
}

enum Pick {
    Ok(C64),
    Ambiguous,
}

/// The root nearest `seed`, polished; ambiguous if another root is within
/// the match radius or nearly as close as the chosen one.
fn pick(web: &NumWeb, j: usize, z: &[C64], seed: C64, radius: f64) -> Result<Pick, LeafError> {
    let coeffs = web.p_coeffs(j, z);
    let roots = find_roots(&coeffs, 1e-13)?.values;
    let mut order: Vec<(f64, C64)> = roots.iter().map(|&r| ((r - seed).norm(), r)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let Some(&(d1, best)) = order.first() else {
        return Ok(Pick::Ambiguous);
    };
    if let Some(&(d2, second)) = order.get(1) {
        if (second - best).norm() < radius || d1 > 0.5 * d2 {
            return Ok(Pick::Ambiguous);
        }
    }
    Ok(Pick::Ok(polish(&coeffs, best, 3)))
}

struct Tracer<'a> {
    web: &'a NumWeb,
    v: &'a [C64],
    radius: f64,
}

impl Tracer<'_> {
    fn point(&self, base: &[C64], s: f64, zn: C64) -> Vec<C64> {
        let n = self.web.dim();
        let mut z: Vec<C64> = (0..n - 1).map(|k| base[k] + self.v[k] * s).collect();
        z.push(zn);
        z
    }

    /// `p(z)` continued from `seed`, or `None` if the choice is ambiguous.
    fn slope(&self, z: &[C64], seed: &[C64]) -> Result<Option<Vec<C64>>, LeafError> {
        let mut out = Vec::with_capacity(seed.len());
        for (j, &s) in seed.iter().enumerate() {
            match pick(self.web, j, z, s, self.radius)? {
                Pick::Ok(p) => out.push(p),
                Pick::Ambiguous => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    fn rate(&self, p: &[C64]) -> C64 {
        p.iter().zip(self.v).map(|(a, b)| a * b).sum()
    }

    /// One classical Runge–Kutta step of size `h`.
    fn rk4(&self, z: &[C64], p: &[C64], h: f64) -> Result<Option<(Vec<C64>, Vec<C64>)>, LeafError> {
        let n = z.len();
        let zn = z[n - 1];
        let Some(p1) = self.slope(z, p)? else { return Ok(None) };
        let k1 = self.rate(&p1);
        let Some(p2) = self.slope(&self.point(z, h / 2.0, zn + k1 * (h / 2.0)), &p1)? else { return Ok(None) };
        let k2 = self.rate(&p2);
        let Some(p3) = self.slope(&self.point(z, h / 2.0, zn + k2 * (h / 2.0)), &p2)? else { return Ok(None) };
        let k3 = self.rate(&p3);
        let Some(p4) = self.slope(&self.point(z, h, zn + k3 * h), &p3)? else { return Ok(None) };
        let k4 = self.rate(&p4);
        let next = self.point(z, h, zn + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0));
        let Some(pn) = self.slope(&next, &p4)? else { return Ok(None) };
        Ok(Some((next, pn)))
    }

    /// Advances by `h`, splitting into halves when branches get close.
    fn advance(&self, z: &[C64], p: &[C64], h: f64, depth: u32, halvings: &mut u32) -> Result<Option<(Vec<C64>, Vec<C64>)>, LeafError> {
        if let Some(r) = self.rk4(z, p, h)? {
            return Ok(Some(r));
        }
        if depth == MAX_HALVINGS {
            return Ok(None);
        }
        *halvings += 1;
        let Some((zm, pm)) = self.advance(z, p, h / 2.0, depth + 1, halvings)? else { return Ok(None) };
        self.advance(&zm, &pm, h / 2.0, depth + 1, halvings)
    }
}

/// Integrates `dz_n/ds = Σ_j p_j(z) v_j` along `z' = z'⁰ + s v` from
/// `start` (working coordinates), following root `branch` (index into the
/// sorted roots) of every `Φ_j`.
pub fn trace_leaf(w: &WebSystem, start: &[C64], branch: usize, cfg: &TraceConfig) -> Result<LeafTrace, LeafError> {
    let n = w.n;
    assert_eq!(start.len(), n, "point dimension");
    if !(cfg.step > 0.0 && cfg.tol > 0.0 && cfg.match_radius > 0.0) {
        return Err(LeafError::StepFailure { step: 0, reason: "step and tolerances must be positive".into() });
    }
    let v = match &cfg.direction {
        Some(d) if d.len() == n - 1 => d.clone(),
        Some(d) => return Err(LeafError::StepFailure { step: 0, reason: format!("direction has length {}", d.len()) }),
        None => (0..n - 1).map(|k| C64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0)).collect(),
    };
    let web = NumWeb::new(&w.phi, n);
    let fam = NumFamily::new(&w.family);

    let mut p0 = Vec::with_capacity(n - 1);
    for j in 0..n - 1 {
        let r = web.roots(j, start)?;
        if r.branch_point {
            return Err(LeafError::NotRegular(format!("Phi_{} has a multiple root", j + 1)));
        }
        match r.values.get(branch) {
            Some(&p) => p0.push(p),
            None => {
                return Err(LeafError::NotRegular(format!(
                    "branch {branch} requested but Phi_{} has {} roots",
                    j + 1,
                    r.values.len()
                )))
            }
        }
    }

    // The slice through the start whose slope matches the chosen branch.
    let t_roots = fam.t_roots(start)?;
    let best = t_roots
        .iter()
        .copied()
        .min_by(|a, b| fam.slope_mismatch(start, *a, &p0).total_cmp(&fam.slope_mismatch(start, *b, &p0)))
        .expect("nonempty");
    let t0 = cluster_centre(&t_roots, best);

    let tracer = Tracer { web: &web, v: &v, radius: cfg.match_radius };
    let mut points = vec![start.to_vec()];
    let mut branches = vec![p0];
    let mut t_track = vec![t0];
    let mut halvings = 0u32;
    for step in 1..=cfg.max_steps {
        let z = points.last().expect("nonempty");
        let p = branches.last().expect("nonempty");
        let Some((zn, pn)) = tracer.advance(z, p, cfg.step, 0, &mut halvings)? else {
            return Err(LeafError::BranchCollision { step });
        };
        if zn.iter().chain(&pn).any(|c| !c.is_finite()) {
            return Err(LeafError::StepFailure { step, reason: "non-finite value".into() });
        }
        let t = track_t(&fam, &zn, *t_track.last().expect("nonempty"))?;
        points.push(zn);
        branches.push(pn);
        t_track.push(t);
    }
    let max_phi_residual = points.iter().zip(&branches).map(|(z, p)| web.residual(z, p)).fold(0.0, f64::max);
    let max_h_residual = points.iter().map(|z| fam.residual(z, t0)).fold(0.0, f64::max);
    Ok(LeafTrace {
        points,
        branches,
        t0,
        t_track,
        direction: v,
        step: cfg.step,
        halvings,
        near_branch_point: halvings > 0,
        max_phi_residual,
        max_h_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::ProblemInput;
    use crate::web::{extract_web, ExtractOptions};

    pub(crate) fn web(text: &str) -> WebSystem {
        extract_web(&ProblemInput::from_text(text).unwrap(), &ExtractOptions::default()).unwrap()
    }

    pub(crate) const PARABOLA_WEB: &str = "mode = rho\nn = 2\nexpr = y2^2 - 4*(y1^2 + x2)*y1^2\nline = 0,0;0,1";
    const CONE: &str = "mode = rho\nn = 2\nexpr = z1*zb1 - z2*zb2\nline = 0,1;1,0";

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn p_roots_examples() {
        let w = web(PARABOLA_WEB);
        let r = &p_roots_at(&w, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap()[0];
        assert!((r.values[0] - c(-2.0, 0.0)).norm() < 1e-12 && (r.values[1] - c(2.0, 0.0)).norm() < 1e-12);
        assert!(!r.branch_point);

        let r = &p_roots_at(&w, &[c(0.7, -0.2), c(0.0, 0.0)]).unwrap()[0];
        assert!(r.branch_point);
        assert_eq!(r.distinct().len(), 1);
        assert_eq!(r.distinct()[0].1, 2);

        let cone = web(CONE);
        let r = &p_roots_at(&cone, &[c(1.0, 0.0), c(5.0, 0.0)]).unwrap()[0];
        assert_eq!(r.values.len(), 1);
        assert!((r.values[0] - c(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn parabola_web_leaf_is_a_parabola() {
        let w = web(PARABOLA_WEB);
        let tr = trace_leaf(&w, &[c(0.0, 0.0), c(1.0, 0.0)], 1, &TraceConfig::default()).unwrap();
        assert_eq!(tr.points.len(), 101);
        assert!((tr.branches[0][0] - c(2.0, 0.0)).norm() < 1e-12);
        let dev = tr.points.iter().map(|z| (z[1] - (z[0] + 1.0).powi(2)).norm()).fold(0.0, f64::max);
        assert!(dev < 1e-6, "{dev}");
        assert!((tr.t0 - c(1.0, 0.0)).norm() < 1e-6);
        let drift = tr.t_track.iter().map(|t| (t - tr.t0).norm()).fold(0.0, f64::max);
        assert!(drift < 1e-6, "{drift}");
        assert!(tr.max_phi_residual < 1e-6);
    }

    #[test]
    fn cone_leaf_is_a_line() {
        let w = web(CONE);
        let tr = trace_leaf(&w, &[c(1.0, 0.0), c(1.0, 0.0)], 0, &TraceConfig::default()).unwrap();
        let dev = tr.points.iter().map(|z| (z[1] - z[0]).norm()).fold(0.0, f64::max);
        assert!(dev < 1e-6, "{dev}");
    }

    #[test]
    fn hyperplane_leaf_keeps_zn() {
        let w = web("mode = rho\nn = 3\nexpr = z3 + zb3");
        let cfg = TraceConfig { direction: Some(vec![c(0.3, 0.1), c(-1.0, 0.5)]), max_steps: 40, ..Default::default() };
        let tr = trace_leaf(&w, &[c(0.2, 0.0), c(-0.1, 0.4), c(0.5, -0.5)], 0, &cfg).unwrap();
        assert!(tr.points.iter().all(|z| z[2] == c(0.5, -0.5)));
    }

    #[test]
    fn fourth_order_convergence() {
        let w = web(PARABOLA_WEB);
        let dev = |h: f64| {
            let cfg = TraceConfig { step: h, max_steps: (1.0 / h).round() as usize, ..Default::default() };
            let tr = trace_leaf(&w, &[c(0.0, 0.0), c(1.0, 0.0)], 1, &cfg).unwrap();
            let z = tr.points.last().unwrap();
            (z[1] - (z[0] + 1.0).powi(2)).norm()
        };
        let (a, b, e) = (dev(0.02), dev(0.01), dev(0.005));
        for ratio in [a / b, b / e] {
            assert!((12.0..20.0).contains(&ratio), "{a:e} {b:e} {e:e}");
        }
    }

    #[test]
    fn branch_index_out_of_range_and_branch_points() {
        let w = web(PARABOLA_WEB);
        assert!(matches!(
            trace_leaf(&w, &[c(0.0, 0.0), c(1.0, 0.0)], 2, &TraceConfig::default()),
            Err(LeafError::NotRegular(_))
        ));
        assert!(matches!(
            trace_leaf(&w, &[c(0.3, 0.0), c(0.0, 0.0)], 0, &TraceConfig::default()),
            Err(LeafError::NotRegular(_))
        ));
    }

    #[test]
    fn running_into_the_discriminant_fails_loudly() {
        // p = -2 sqrt(z2) from (0, 1) along real z1 reaches z2 = 0 at z1 = 1.
        let w = web(PARABOLA_WEB);
        let cfg = TraceConfig { max_steps: 150, ..Default::default() };
        let e = trace_leaf(&w, &[c(0.0, 0.0), c(1.0, 0.0)], 0, &cfg).unwrap_err();
        assert!(matches!(e, LeafError::BranchCollision { .. }), "{e:?}");
    }

    #[test]
    fn traces_are_deterministic() {
        let w = web(PARABOLA_WEB);
        let a = trace_leaf(&w, &[c(0.1, 0.2), c(1.0, -0.3)], 0, &TraceConfig::default()).unwrap();
        let b = trace_leaf(&w, &[c(0.1, 0.2), c(1.0, -0.3)], 0, &TraceConfig::default()).unwrap();
        assert_eq!(a, b);
    }
}
