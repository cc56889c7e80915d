//! Polynomials with negative powers of `ζ`, stored as `numer · ζ^(-shift)`.

use super::gauss::GaussRational;
use super::poly::MultiPoly;
use super::var::Var;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    numer: MultiPoly,
    shift: u32,
}

impl LaurentPoly {
    pub fn new(numer: MultiPoly, shift: u32) -> Self {
        let mut l = Self { numer, shift };
        l.reduce();
        l
    }

    /// Cancels common powers of `ζ` so that `shift` is minimal.
    fn reduce(&mut self) {
        if self.numer.is_zero() {
            self.shift = 0;
            return;
        }
        let low = min_degree(&self.numer, Var::Zeta).min(self.shift);
        if low > 0 {
            let z = MultiPoly::var(Var::Zeta).pow(low);
            self.numer = self.numer.div_exact(&z).expect("ζ power divides");
            self.shift -= low;
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.numer
    }

    /// `N = -min ζ-exponent` (0 when there are no negative powers).
    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// The polynomial itself when it has no negative powers.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        (self.shift == 0).then_some(&self.numer)
    }

    fn aligned(&self, other: &Self) -> (MultiPoly, MultiPoly, u32) {
        let s = self.shift.max(other.shift);
        let lift = |l: &Self| &l.numer * &MultiPoly::var(Var::Zeta).pow(s - l.shift);
        (lift(self), lift(other), s)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, s) = self.aligned(other);
        Self::new(&a + &b, s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, s) = self.aligned(other);
        Self::new(&a - &b, s)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.numer * &other.numer, self.shift + other.shift)
    }

    pub fn neg(&self) -> Self {
        Self { numer: -&self.numer, shift: self.shift }
    }

    /// Integer power. Negative exponents need a base of the form `c·ζ^k`.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            let e = e as u32;
            return Some(Self::new(self.numer.pow(e), self.shift * e));
        }
        let m = (-e) as u32;
        if self.numer.num_terms() != 1 || self.numer.vars().iter().any(|v| *v != Var::Zeta) {
            return None;
        }
        let k = self.numer.degree_in(Var::Zeta);
        let c = self.numer.leading_coeff()?.inv()?.pow(m);
        // (c ζ^(k - shift))^(-m) = c^(-m) ζ^(m (shift - k))
        let exp = m as i64 * (self.shift as i64 - k as i64);
        Some(Self::monomial(c, exp))
    }

    /// `c · ζ^e` for any integer `e`.
    pub fn monomial(c: GaussRational, e: i64) -> Self {
        if e >= 0 {
            Self::new(MultiPoly::monomial(c, &[(Var::Zeta, e as u32)]), 0)
        } else {
            Self::new(MultiPoly::constant(c), (-e) as u32)
        }
    }
}

impl From<MultiPoly> for LaurentPoly {
    fn from(p: MultiPoly) -> Self {
        Self { numer: p, shift: 0 }
    }
}

fn min_degree(p: &MultiPoly, v: Var) -> u32 {
    let Some(i) = p.vars().iter().position(|w| *w == v) else {
        return 0;
    };
    p.terms().map(|(e, _)| e[i]).min().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta() -> LaurentPoly {
        MultiPoly::var(Var::Zeta).into()
    }

    #[test]
    fn inverse_and_clearing() {
        let z1: LaurentPoly = MultiPoly::var(Var::Z(1)).into();
        let z2: LaurentPoly = MultiPoly::var(Var::Z(2)).into();
        // z1 ζ^-1 + z2 ζ  =  (z1 + z2 ζ^2) ζ^-1
        let l = z1.mul(&zeta().powi(-1).unwrap()).add(&z2.mul(&zeta()));
        assert_eq!(l.shift(), 1);
        let want = &MultiPoly::var(Var::Z(1)) + &(&MultiPoly::var(Var::Z(2)) * &MultiPoly::var(Var::Zeta).pow(2));
        assert_eq!(l.numer(), &want);
    }

    #[test]
    fn cancellation_reduces_shift() {
        let l = zeta().powi(-2).unwrap().mul(&zeta().powi(3).unwrap());
        assert_eq!(l.as_poly(), Some(&MultiPoly::var(Var::Zeta)));
        assert!(LaurentPoly::from(MultiPoly::var(Var::Z(1))).powi(-1).is_none());
    }
}
