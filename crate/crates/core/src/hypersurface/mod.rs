//! Real algebraic hypersurfaces `{ρ(z, z̄) = 0}`: validation,
//! complexification, Segre varieties and numeric sampling.

mod levi;
mod sample;

use std::collections::HashMap;

use num_complex::Complex64;

use crate::algebra::{GaussRational, MultiPoly, NumPoly, Var};

pub use levi::{levi_flat_check, LeviReport};
pub use sample::{sample_regular_points, SurfaceSample};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypersurfaceError {
    #[error("reality violated: conj(c_IJ) != c_JI at I={}, J={}", fmt_multi(.i), fmt_multi(.j))]
    RealityViolation { i: Vec<u32>, j: Vec<u32> },
    #[error("defining polynomial is constant")]
    Constant,
    #[error("variable {0} may not occur in a defining polynomial")]
    ForeignVariable(Var),
    #[error("no regular point found after {tried} lines")]
    SamplingExhausted { tried: usize },
}

fn fmt_multi(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// A validated real defining polynomial together with its complexification
/// `ρ(z, w̄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypersurface {
    pub n: usize,
    /// `ρ` in `z_j`, `zb_j`.
    pub rho: MultiPoly,
    /// `ρ` with `zb_j` renamed to `wb_j`.
    pub rho_c: MultiPoly,
}

fn swap_conjugates(v: Var) -> Var {
    match v {
        Var::Z(j) => Var::Zb(j),
        Var::Zb(j) => Var::Z(j),
        other => other,
    }
}

/// Checks `c̄_IJ = c_JI` and builds the complexification.
pub fn make_hypersurface(rho: MultiPoly, n: usize) -> Result<Hypersurface, HypersurfaceError> {
    for &v in rho.vars() {
        match v {
            Var::Z(j) | Var::Zb(j) if (j as usize) <= n => {}
            other => return Err(HypersurfaceError::ForeignVariable(other)),
        }
    }
    if rho.is_constant() {
        return Err(HypersurfaceError::Constant);
    }
    let mirrored = rho.rename(swap_conjugates).conj_coeffs();
    let diff = &rho - &mirrored;
    if let Some((exps, _)) = diff.terms().next() {
        let mut i = vec![0u32; n];
        let mut j = vec![0u32; n];
        for (v, e) in diff.vars().iter().zip(exps) {
            match *v {
                Var::Z(k) => i[k as usize - 1] = *e,
                Var::Zb(k) => j[k as usize - 1] = *e,
                _ => unreachable!(),
            }
        }
        return Err(HypersurfaceError::RealityViolation { i, j });
    }
    let rho_c = rho.rename(|v| match v {
        Var::Zb(j) => Var::Wb(j),
        other => other,
    });
    Ok(Hypersurface { n, rho, rho_c })
}

/// `ρ(z, w̄) = conj(ρ(w, z̄))`: swapping `z ↔ w̄` and conjugating the
/// coefficients of `rho_c` must reproduce it.
pub fn hermitian_symmetry_check(h: &Hypersurface) -> bool {
    let swapped = h
        .rho_c
        .rename(|v| match v {
            Var::Z(j) => Var::Wb(j),
            Var::Wb(j) => Var::Z(j),
            other => other,
        })
        .conj_coeffs();
    swapped == h.rho_c
}

/// The Segre polynomial `ρ(z, w̄)` with `w` fixed (exact).
pub fn segre_at(h: &Hypersurface, w: &[GaussRational]) -> MultiPoly {
    assert_eq!(w.len(), h.n, "point dimension");
    let bindings: HashMap<Var, MultiPoly> =
        (1..=h.n).map(|j| (Var::Wb(j as u8), MultiPoly::constant(w[j - 1].conj()))).collect();
    h.rho_c.substitute(&bindings)
}

/// Whether `Q_q` is all of `ℂⁿ`.
pub fn is_dicritical(h: &Hypersurface, q: &[GaussRational]) -> bool {
    segre_at(h, q).is_zero()
}

/// Floating Segre polynomial `z ↦ ρ(z, w̄)` for a float point `w`.
#[derive(Clone, Debug)]
pub struct NumericSegre {
    poly: NumPoly,
    wbar: Vec<Complex64>,
}

impl NumericSegre {
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let vals: Vec<Complex64> = z.iter().chain(&self.wbar).copied().collect();
        self.poly.eval(&vals)
    }

    pub fn scale(&self, radius: f64) -> f64 {
        self.poly.scale(radius)
    }
}

pub fn segre_numeric(h: &Hypersurface, w: &[Complex64]) -> NumericSegre {
    let slots: Vec<Var> = (1..=h.n).map(|j| Var::Z(j as u8)).chain((1..=h.n).map(|j| Var::Wb(j as u8))).collect();
    NumericSegre { poly: NumPoly::from_poly(&h.rho_c, &slots), wbar: w.iter().map(|c| c.conj()).collect() }
}

/// Slots `z_1..z_n, zb_1..zb_n` for evaluating `ρ` and its derivatives.
pub(crate) fn real_slots(n: usize) -> Vec<Var> {
    (1..=n).map(|j| Var::Z(j as u8)).chain((1..=n).map(|j| Var::Zb(j as u8))).collect()
}

/// Values for [`real_slots`] at `z`.
pub(crate) fn real_values(z: &[Complex64]) -> Vec<Complex64> {
    z.iter().copied().chain(z.iter().map(|c| c.conj())).collect()
}

/// `ρ` and its first and second `z`/`z̄` derivatives as float polynomials.
#[derive(Clone, Debug)]
pub(crate) struct RhoJet {
    pub rho: NumPoly,
    /// `∂ρ/∂z_k`
    pub dz: Vec<NumPoly>,
    /// `∂²ρ/∂z_k∂z̄_j`
    pub dz_dzb: Vec<Vec<NumPoly>>,
    /// `∂²ρ/∂z_k∂z_j`
    pub dz_dz: Vec<Vec<NumPoly>>,
}

impl RhoJet {
    pub fn new(h: &Hypersurface) -> Self {
        let slots = real_slots(h.n);
        let num = |p: &MultiPoly| NumPoly::from_poly(p, &slots);
        let first: Vec<MultiPoly> = (1..=h.n).map(|k| h.rho.partial_derive(Var::Z(k as u8))).collect();
        let dz_dzb = first
            .iter()
            .map(|d| (1..=h.n).map(|j| num(&d.partial_derive(Var::Zb(j as u8)))).collect())
            .collect();
        let dz_dz = first
            .iter()
            .map(|d| (1..=h.n).map(|j| num(&d.partial_derive(Var::Z(j as u8)))).collect())
            .collect();
        Self { rho: num(&h.rho), dz: first.iter().map(num).collect(), dz_dzb, dz_dz }
    }
}
