//! Resultants with respect to one variable, by two independent routes.
//!
//! Convention: `Res(f, g) = lc(f)^deg g · ∏ g(α)` over the roots `α` of `f`,
//! which is the determinant of the Sylvester matrix with the rows of `f`
//! on top. In particular `Res_t(t - a, t - b) = a - b`.

use super::gcd::{deg, prem, Dense};
use super::poly::MultiPoly;
use super::var::Var;

/// Which elimination route [`resultant_wrt`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResultantMethod {
    /// Fraction-free (Bareiss) determinant of the Sylvester matrix.
    Sylvester,
    /// Subresultant pseudo-remainder sequence.
    #[default]
    Subresultant,
}

/// Resultant of `p` and `q` with respect to `v`. Zero iff they share a
/// factor of positive `v`-degree (or one of them is zero).
pub fn resultant_wrt(p: &MultiPoly, q: &MultiPoly, v: Var, method: ResultantMethod) -> MultiPoly {
    let a = p.coeffs_in(v);
    let b = q.coeffs_in(v);
    let (Some(da), Some(db)) = (deg(&a), deg(&b)) else {
        return MultiPoly::zero();
    };
    if db == 0 {
        return b[0].pow(da as u32);
    }
    if da == 0 {
        return a[0].pow(db as u32);
    }
    match method {
        ResultantMethod::Sylvester => sylvester_resultant(&a[..=da], &b[..=db]),
        ResultantMethod::Subresultant => subresultant_resultant(a[..=da].to_vec(), b[..=db].to_vec()),
    }
}

/// The `(m+n)×(m+n)` Sylvester matrix, coefficients highest degree first.
pub fn sylvester_matrix(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, shifts) in [(a, n), (b, m)] {
        for s in 0..shifts {
            let mut row = vec![MultiPoly::zero(); size];
            for (k, c) in src.iter().rev().enumerate() {
                row[s + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

fn sylvester_resultant(a: &[MultiPoly], b: &[MultiPoly]) -> MultiPoly {
    bareiss_det(sylvester_matrix(a, b))
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return MultiPoly::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn exact(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a.div_exact(b).expect("subresultant division is exact")
}

/// Subresultant PRS (Collins/Brown), without content extraction.
fn subresultant_resultant(mut a: Dense, mut b: Dense) -> MultiPoly {
    let mut sign_neg = false;
    let (mut da, mut db) = (a.len() - 1, b.len() - 1);
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
    }
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = prem(&a, &b);
        a = b;
        da = db;
        let Some(dr) = deg(&r) else {
            return MultiPoly::zero();
        };
        let divisor = &g * &h.pow(delta);
        b = r.iter().map(|c| exact(c, &divisor)).collect();
        db = dr;
        g = a[da].clone();
        h = if delta == 0 { h } else { exact(&g.pow(delta), &h.pow(delta - 1)) };
        if db == 0 {
            break;
        }
    }
    let res = if da == 1 { b[0].clone() } else { exact(&b[0].pow(da as u32), &h.pow(da as u32 - 1)) };
    if sign_neg {
        -res
    } else {
        res
    }
}
