//! Multivariate GCD by primitive pseudo-remainder sequences, recursing on
//! variables for contents.

use super::normalize::{canonical_normalize, normalize_or_zero};
use super::poly::MultiPoly;
use super::var::Var;
use super::AlgebraError;

/// Coefficient list of a polynomial viewed in one variable, lowest first.
pub(crate) type Dense = Vec<MultiPoly>;

pub(crate) fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(MultiPoly::is_zero) {
        a.pop();
    }
    a
}

/// Degree of a dense polynomial; `None` for zero.
pub(crate) fn deg(a: &Dense) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a = q·b + r`.
pub(crate) fn prem(a: &Dense, b: &Dense) -> Dense {
    let db = deg(b).expect("pseudo-division by zero");
    let Some(mut da) = deg(a) else {
        return Vec::new();
    };
    if da < db {
        return trim(a.clone());
    }
    let lb = &b[db];
    let mut r = trim(a.clone());
    let mut e = da - db + 1;
    loop {
        let lr = r[da].clone();
        let shift = da - db;
        let mut next: Dense = r.iter().map(|c| c * lb).collect();
        for (k, bk) in b.iter().enumerate().take(db + 1) {
            next[k + shift] = &next[k + shift] - &(&lr * bk);
        }
        r = trim(next);
        e -= 1;
        match deg(&r) {
            Some(d) if d >= db => da = d,
            _ => break,
        }
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        r = r.iter().map(|c| c * &f).collect();
    }
    trim(r)
}

/// GCD in `ℚ(i)[vars]`, canonically normalized (zero iff both are zero).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalize_or_zero(b);
    }
    if b.is_zero() {
        return normalize_or_zero(a);
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let x = *a.vars().iter().chain(b.vars()).min().unwrap();
    match (a.contains(x), b.contains(x)) {
        (true, false) => return gcd(&content_of(a, x), b),
        (false, true) => return gcd(a, &content_of(b, x)),
        _ => {}
    }
    let ca = content_of(a, x);
    let cb = content_of(b, x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = &gcd(&ca, &cb) * &primitive_gcd(&pa, &pb, x);
    normalize_or_zero(&g)
}

/// GCD of the `v`-coefficients (normalized, never zero for nonzero input).
fn content_of(p: &MultiPoly, v: Var) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.coeffs_in(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            return MultiPoly::one();
        }
    }
    g
}

fn primitive_dense(p: &MultiPoly, v: Var) -> MultiPoly {
    let c = content_of(p, v);
    p.div_exact(&c).expect("content divides")
}

/// GCD of two `v`-primitive polynomials: the last nonzero term of the
/// subresultant PRS, made primitive. Coefficient growth stays polynomial
/// without a content computation per step.
fn primitive_gcd(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let (mut a, mut b) = (trim(a.coeffs_in(v)), trim(b.coeffs_in(v)));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let Some(db) = deg(&b) else { break };
        if db == 0 {
            return MultiPoly::one();
        }
        let delta = (deg(&a).expect("nonzero") - db) as u32;
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            break;
        }
        let divisor = &g * &h.pow(delta);
        b = r.iter().map(|c| c.div_exact(&divisor).expect("subresultant division is exact")).collect();
        g = a[db].clone();
        h = if delta == 0 { h } else { g.pow(delta).div_exact(&h.pow(delta - 1)).expect("exact") };
    }
    let last = MultiPoly::from_coeffs(v, &a);
    if last.degree_in(v) == 0 {
        return MultiPoly::one();
    }
    normalize_or_zero(&primitive_dense(&last, v))
}

/// Primitive part of `p` with respect to `v`, canonically normalized.
pub fn primitive_part_wrt(p: &MultiPoly, v: Var) -> Result<MultiPoly, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial("primitive_part_wrt"));
    }
    canonical_normalize(&primitive_dense(p, v))
}

/// Content of `p` with respect to `v`, scaled so that
/// `content · primitive_part_wrt(p, v) == p` holds exactly.
pub fn content_wrt(p: &MultiPoly, v: Var) -> Result<MultiPoly, AlgebraError> {
    let pp = primitive_part_wrt(p, v)?;
    Ok(p.div_exact(&pp).expect("primitive part divides"))
}

/// GCD of `p` and `q` as polynomials in `v` over the fraction field of the
/// remaining variables: `v`-primitive and canonically normalized.
/// `gcd_wrt(p, 0, v)` is the normalized primitive part of `p`.
pub fn gcd_wrt(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<MultiPoly, AlgebraError> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(AlgebraError::ZeroPolynomial("gcd_wrt")),
        (false, true) => return primitive_part_wrt(p, v),
        (true, false) => return primitive_part_wrt(q, v),
        _ => {}
    }
    if !p.contains(v) || !q.contains(v) {
        return Ok(MultiPoly::one());
    }
    Ok(primitive_gcd(&primitive_dense(p, v), &primitive_dense(q, v), v))
}

/// `p / gcd_wrt(p, ∂p/∂v, v)`, canonically normalized: the same `v`-roots
/// as `p`, each simple.
pub fn squarefree_wrt(p: &MultiPoly, v: Var) -> Result<MultiPoly, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial("squarefree_wrt"));
    }
    if !p.contains(v) {
        return canonical_normalize(p);
    }
    let g = gcd_wrt(p, &p.partial_derive(v), v)?;
    let q = p.div_exact(&g).expect("gcd divides");
    canonical_normalize(&q)
}
