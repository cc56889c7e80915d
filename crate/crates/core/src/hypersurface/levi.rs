//! The Levi form restricted to the complex tangent space.

use num_complex::Complex64;

use super::{real_values, Hypersurface, RhoJet, SurfaceSample};

#[derive(Clone, Debug, PartialEq)]
pub struct LeviReport {
    pub flat: bool,
    /// Largest `levi_norm / second_scale` over the samples.
    pub worst_ratio: f64,
    pub samples: usize,
}

fn inner(u: &[Complex64], w: &[Complex64]) -> Complex64 {
    u.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

/// Orthonormal basis of `{u : Σ g_j u_j = 0}`.
fn tangent_basis(g: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = g.len();
    let gbar: Vec<Complex64> = g.iter().map(|c| c.conj()).collect();
    let gn = inner(&gbar, &gbar).re.sqrt();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    if gn > 0.0 {
        basis.push(gbar.iter().map(|c| c / gn).collect());
    }
    let lead = basis.len();
    for k in 0..n {
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        w[k] = Complex64::new(1.0, 0.0);
        // modified Gram-Schmidt, twice for stability
        for _ in 0..2 {
            for q in &basis {
                let c = inner(&w, q);
                w.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
            }
        }
        let norm = inner(&w, &w).re.sqrt();
        if norm > 1e-8 {
            basis.push(w.into_iter().map(|c| c / norm).collect());
        }
        if basis.len() == n {
            break;
        }
    }
    basis.split_off(lead)
}

/// `(max |L(u_a, u_b)|, max |second derivative|)` at `z`, where `L` is the
/// matrix `ρ_{z_k z̄_j}` restricted to an orthonormal basis of the complex
/// tangent space.
pub(crate) fn levi_at(jet: &RhoJet, z: &[Complex64]) -> (f64, f64) {
    let vals = real_values(z);
    let n = z.len();
    let g: Vec<Complex64> = jet.dz.iter().map(|d| d.eval(&vals)).collect();
    let mixed: Vec<Vec<Complex64>> = jet.dz_dzb.iter().map(|row| row.iter().map(|d| d.eval(&vals)).collect()).collect();
    let pure_max = jet.dz_dz.iter().flatten().map(|d| d.eval(&vals).norm()).fold(0.0, f64::max);
    let second_scale = mixed.iter().flatten().map(|c| c.norm()).fold(pure_max, f64::max);
    let basis = tangent_basis(&g);
    let mut worst = 0.0f64;
    for ua in &basis {
        for ub in &basis {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                for j in 0..n {
                    acc += mixed[k][j] * ua[k] * ub[j].conj();
                }
            }
            worst = worst.max(acc.norm());
        }
    }
    (worst, second_scale)
}

/// Flat iff every sample's restricted Levi matrix is below `tol` relative to
/// the local second-derivative scale.
pub fn levi_flat_check(h: &Hypersurface, samples: &[SurfaceSample], tol: f64) -> LeviReport {
    let jet = RhoJet::new(h);
    let worst_ratio = samples
        .iter()
        .map(|s| {
            let (levi, scale) = levi_at(&jet, &s.point);
            if scale > 0.0 {
                levi / scale
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);
    LeviReport { flat: worst_ratio < tol, worst_ratio, samples: samples.len() }
}
