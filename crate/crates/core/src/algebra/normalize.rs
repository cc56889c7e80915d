//! Canonical scaling of polynomials by Gaussian-rational units.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gauss::GaussRational;
use super::poly::MultiPoly;
use super::AlgebraError;

/// A Gaussian integer, used only for content computations.
#[derive(Clone, Debug, PartialEq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Quotient rounded to the nearest Gaussian integer.
    fn div_round(&self, o: &GaussInt) -> GaussInt {
        let n = o.norm();
        let num_re = &self.re * &o.re + &self.im * &o.im;
        let num_im = &self.im * &o.re - &self.re * &o.im;
        GaussInt { re: round_div(&num_re, &n), im: round_div(&num_im, &n) }
    }

    fn rem(&self, o: &GaussInt) -> GaussInt {
        self.sub(&o.mul(&self.div_round(o)))
    }
}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    // floor((2a + n) / 2n), n > 0
    let two = BigInt::from(2);
    (&two * a + n).div_floor(&(&two * n))
}

fn gauss_gcd(mut a: GaussInt, mut b: GaussInt) -> GaussInt {
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a
}

/// Multiplier `u ∈ {1, -1, i, -i}` taking `c` into the half-open first
/// quadrant `{re > 0, im ≥ 0}`.
fn quadrant_unit(c: &GaussRational) -> GaussRational {
    let (re, im) = (&c.re, &c.im);
    if re.is_positive() && !im.is_negative() {
        GaussRational::one()
    } else if !re.is_positive() && im.is_positive() {
        GaussRational::from_ints(0, -1)
    } else if re.is_negative() && !im.is_positive() {
        GaussRational::from_int(-1)
    } else {
        GaussRational::i()
    }
}

/// Scales `p` so that all coefficients are Gaussian integers with trivial
/// collective content and the leading coefficient (term order) lies in
/// `{re > 0, im ≥ 0}`.
///
/// The result is unique on the orbit `{u·p : u ∈ ℚ(i)*}`.
pub fn canonical_normalize(p: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial("canonical_normalize"));
    }
    let lcm = p.coefficients().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
    let scale = GaussRational::real(BigRational::from_integer(lcm));
    let ints: Vec<GaussInt> = p
        .coefficients()
        .map(|c| {
            let s = c * &scale;
            GaussInt { re: s.re.to_integer(), im: s.im.to_integer() }
        })
        .collect();
    let mut g = ints[0].clone();
    for c in &ints[1..] {
        g = gauss_gcd(g, c.clone());
        if g.norm().is_one() {
            break;
        }
    }
    let g = GaussRational::new(BigRational::from_integer(g.re), BigRational::from_integer(g.im));
    let factor = &scale / &g;
    let lc = p.leading_coeff().unwrap() * &factor;
    let factor = &factor * &quadrant_unit(&lc);
    Ok(p.scale(&factor))
}

/// [`canonical_normalize`] that maps zero to zero.
pub(crate) fn normalize_or_zero(p: &MultiPoly) -> MultiPoly {
    canonical_normalize(p).unwrap_or_default()
}
