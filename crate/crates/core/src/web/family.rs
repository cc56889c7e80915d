//! The family `H(z, t)` of Segre varieties along a line, its total
//! derivatives, and the numeric first integral.

use num_complex::Complex64;

use super::line::ParamLine;
use super::WebError;
use crate::algebra::{squarefree_wrt, LaurentPoly, MultiPoly, NumPoly, Var};
use crate::hypersurface::Hypersurface;
use crate::roots::{find_roots, RootError};

/// Where a family came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyOrigin {
    Line(ParamLine),
    /// `Ĥ = ζ^shift · H(z, ζ)`, with `ζ` renamed to `t`.
    Circle { shift: u32 },
}

/// `H(z, t)`: each fixed `t` gives one complex hypersurface.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamFamily {
    pub n: usize,
    /// Squarefree in `t` and canonically normalized.
    pub h: MultiPoly,
    /// Before the squarefree reduction.
    pub raw: MultiPoly,
    pub origin: FamilyOrigin,
    pub squarefree: bool,
}

impl ParamFamily {
    fn reduced(n: usize, raw: MultiPoly, origin: FamilyOrigin) -> Result<Self, WebError> {
        if raw.degree_in(Var::T) == 0 {
            return Err(WebError::DegenerateFamily);
        }
        let h = squarefree_wrt(&raw, Var::T)?;
        Ok(Self { n, h, raw, origin, squarefree: true })
    }

    pub fn degree(&self) -> u32 {
        self.h.degree_in(Var::T)
    }
}

/// `H(z, t) = ρ(z, ā + b̄ t)`, reduced to its squarefree part in `t`.
pub fn build_h(h: &Hypersurface, line: &ParamLine) -> Result<ParamFamily, WebError> {
    let raw = h.rho_c.substitute(&line.conj_bindings());
    ParamFamily::reduced(h.n, raw, FamilyOrigin::Line(line.clone()))
}

/// `Ĥ = ζ^N H(z, ζ)` with the negative powers cleared and `ζ` renamed to
/// `t`, reduced to its squarefree part.
pub fn build_h_param(family: &LaurentPoly, n: usize) -> Result<ParamFamily, WebError> {
    let raw = family.numer().rename(|v| if v == Var::Zeta { Var::T } else { v });
    if !raw.vars().iter().any(|v| matches!(v, Var::Z(_))) {
        return Err(WebError::DegenerateFamily);
    }
    ParamFamily::reduced(n, raw, FamilyOrigin::Circle { shift: family.shift() })
}

/// `G_j = ∂H/∂z_j + p_j ∂H/∂z_n`.
pub fn total_derivative(f: &ParamFamily, j: usize) -> Result<MultiPoly, WebError> {
    assert!(j >= 1 && j < f.n, "direction out of range");
    let hn = f.h.partial_derive(Var::Z(f.n as u8));
    if hn.is_zero() {
        return Err(WebError::DegenerateDirection(j));
    }
    let pj = MultiPoly::var(Var::P(j as u8));
    Ok(&f.h.partial_derive(Var::Z(j as u8)) + &(&pj * &hn))
}

fn z_slots(n: usize) -> Vec<Var> {
    (1..=n).map(|j| Var::Z(j as u8)).collect()
}

/// Coefficients of `t ↦ H(z, t)` at a float point, low degree first.
pub(crate) fn t_coefficients(f: &ParamFamily, z: &[Complex64]) -> (Vec<Complex64>, f64) {
    let slots = z_slots(f.n);
    let radius = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut scale = 0.0f64;
    let coeffs = f
        .h
        .coeffs_in(Var::T)
        .iter()
        .map(|c| {
            let p = NumPoly::from_poly(c, &slots);
            scale = scale.max(p.scale(radius));
            p.eval(z)
        })
        .collect();
    (coeffs, scale)
}

/// The values of the multiple-valued first integral at `z`: all roots `t`
/// of `H(z, t) = 0`.
pub fn first_integral_values(f: &ParamFamily, z: &[Complex64]) -> Result<Vec<Complex64>, WebError> {
    assert_eq!(z.len(), f.n, "point dimension");
    let (coeffs, scale) = t_coefficients(f, z);
    if coeffs.iter().all(|c| c.norm() <= 1e-14 * scale) {
        return Err(WebError::DicriticalFiber);
    }
    match find_roots(&coeffs, 1e-13) {
        Ok(r) => Ok(r.values),
        Err(RootError::ZeroPolynomial) => Err(WebError::DicriticalFiber),
        Err(RootError::NonConvergence(r)) => Err(WebError::NonConvergence(r)),
    }
}

/// Whether `z` lies on some `{H(·, ζ) = 0}` with `|ζ| = 1`.
pub fn param_membership(f: &ParamFamily, z: &[Complex64]) -> Result<bool, WebError> {
    Ok(first_integral_values(f, z)?.iter().any(|r| (r.norm() - 1.0).abs() < 1e-8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussRational;
    use crate::hypersurface::make_hypersurface;
    use crate::io::parse::{parse, parse_laurent, parse_point, ParseMode};

    fn poly(text: &str, n: usize) -> MultiPoly {
        parse(text, ParseMode::Poly, n).unwrap()
    }

    fn family(rho: &str, n: usize, a: &str, b: &str) -> ParamFamily {
        let h = make_hypersurface(parse(rho, ParseMode::Rho, n).unwrap(), n).unwrap();
        let line = ParamLine::new(parse_point(a).unwrap(), parse_point(b).unwrap()).unwrap();
        build_h(&h, &line).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parabola_web_family_and_derivative() {
        let f = family("y2^2 - 4*(y1^2 + x2)*y1^2", 2, "0,0", "0,1");
        assert_eq!(f.h, poly("(z2 - t)^2 + z1^4 - 2*(z2 + t)*z1^2", 2));
        let g = total_derivative(&f, 1).unwrap();
        assert_eq!(g, poly("2*(z2 - t)*p1 + 4*z1^3 - 4*z1*(z2 + t) - 2*z1^2*p1", 2));
    }

    #[test]
    fn example3_family() {
        let f = family("(z2*zb2*(z1 + zb1)^2 - (z2 + zb2))^2 - 4*z2*zb2", 2, "0,0", "0,1");
        assert_eq!(f.h, poly("t^2*(1 - z2*z1^2)^2 - 2*t*z2*(1 + z2*z1^2) + z2^2", 2));
    }

    #[test]
    fn cone_family() {
        let f = family("x1^2 - y1^2 + x2^2 - y2^2 + x3^2 - y3^2", 3, "0,0,0", "0,0,1");
        assert_eq!(f.h, poly("z1^2 + z2^2 + z3^2 + t^2", 3));
        assert_eq!(total_derivative(&f, 1).unwrap(), poly("2*z1 + 2*z3*p1", 3));
    }

    #[test]
    fn hyperplane_derivative_is_p() {
        let f = ParamFamily::reduced(2, poly("z2 + t", 2), FamilyOrigin::Circle { shift: 0 }).unwrap();
        assert_eq!(total_derivative(&f, 1).unwrap(), poly("p1", 2));
        let v = first_integral_values(&f, &[c(3.0, 1.0), c(0.5, -2.0)]).unwrap();
        assert_eq!(v.len(), 1);
        assert!((v[0] - c(-0.5, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn squarefree_reduction_applies() {
        let f = ParamFamily::reduced(2, poly("(t - z1)^2*(t - z2)", 2), FamilyOrigin::Circle { shift: 0 }).unwrap();
        assert_eq!(f.h, poly("(t - z1)*(t - z2)", 2));
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn first_integral_of_parabola_web_at_0_1() {
        let f = family("y2^2 - 4*(y1^2 + x2)*y1^2", 2, "0,0", "0,1");
        let v = first_integral_values(&f, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|r| (r - c(1.0, 0.0)).norm() < 1e-7));
    }

    #[test]
    fn linear_family_values() {
        let f = ParamFamily::reduced(2, poly("z1 - t*z2", 2), FamilyOrigin::Circle { shift: 0 }).unwrap();
        let v = first_integral_values(&f, &[c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((v[0] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn param_families() {
        let l = parse_laurent("z1*zeta^-1 + z2*zeta", ParseMode::Param, 2).unwrap();
        let f = build_h_param(&l, 2).unwrap();
        assert_eq!(f.h, poly("z1 + z2*t^2", 2));
        assert_eq!(f.origin, FamilyOrigin::Circle { shift: 1 });

        let l = parse_laurent("z1 - zeta*z2", ParseMode::Param, 2).unwrap();
        let f = build_h_param(&l, 2).unwrap();
        assert!(param_membership(&f, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!(!param_membership(&f, &[c(2.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert_eq!(param_membership(&f, &[c(0.0, 0.0), c(0.0, 0.0)]), Err(WebError::DicriticalFiber));

        let l = parse_laurent("2*zeta^-1 + z1 + 3*zeta", ParseMode::Param, 2).unwrap();
        assert_eq!(build_h_param(&l, 2).unwrap().degree(), 2);
        let constant = LaurentPoly::from(MultiPoly::constant(GaussRational::one()));
        assert_eq!(build_h_param(&constant, 2), Err(WebError::DegenerateFamily));
    }
}
