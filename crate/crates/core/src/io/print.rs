//! Deterministic rendering of polynomials in the expression grammar.

use num_traits::{Signed, Zero};

use crate::algebra::{GaussRational, MultiPoly, Var};

/// Renders `p` in descending term order, e.g. `p1^2 - 4*z2`.
///
/// Factors inside a monomial are ordered coordinates first (`z3*p1`).
/// The output parses back to `p` in [`super::ParseMode::Poly`].
pub fn print_canonical(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut order: Vec<usize> = (0..p.vars().len()).collect();
    order.sort_by_key(|&i| p.vars()[i].print_rank());
    let mut out = String::new();
    for (k, (exps, c)) in p.terms().enumerate() {
        let mono = monomial(p.vars(), &order, exps);
        let (negative, mag) = split_sign(c);
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        match (mono.is_empty(), mag.is_one()) {
            (true, _) => out.push_str(&mag.to_string()),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&mag.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

/// Splits off a leading minus sign where the coefficient prints without
/// parentheses (real or purely imaginary).
fn split_sign(c: &GaussRational) -> (bool, GaussRational) {
    let negative = if c.im.is_zero() {
        c.re.is_negative()
    } else if c.re.is_zero() {
        c.im.is_negative()
    } else {
        false
    };
    if negative {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn monomial(vars: &[Var], order: &[usize], exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for &i in order {
        match exps[i] {
            0 => {}
            1 => parts.push(vars[i].to_string()),
            e => parts.push(format!("{}^{e}", vars[i])),
        }
    }
    parts.join("*")
}

/// Formats a float complex number as `re im` with fixed precision.
pub fn format_complex(z: num_complex::Complex64) -> String {
    // adding 0.0 turns -0.0 into 0.0
    format!("{:+.12e} {:+.12e}", z.re + 0.0, z.im + 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse::{parse, ParseMode};

    fn round_trip(text: &str, n: usize) -> String {
        let p = parse(text, ParseMode::Poly, n).unwrap();
        let s = print_canonical(&p);
        assert_eq!(parse(&s, ParseMode::Poly, n).unwrap(), p, "{s}");
        s
    }

    #[test]
    fn fixed_formats() {
        assert_eq!(round_trip("-4*z2 + p1^2", 2), "p1^2 - 4*z2");
        assert_eq!(round_trip("4*z2^3 - p1^2", 2), "-p1^2 + 4*z2^3");
        assert_eq!(round_trip("z1 + p1*z3", 3), "z3*p1 + z1");
        assert_eq!(round_trip("p1*z1 - z2", 2), "z1*p1 - z2");
        assert_eq!(print_canonical(&MultiPoly::zero()), "0");
    }

    #[test]
    fn gaussian_coefficients() {
        assert_eq!(round_trip("t^3 + (2*I - 3*z1)*t^2", 2), "t^3 - 3*z1*t^2 + 2*I*t^2");
        assert_eq!(round_trip("(1 - 2*I)*z1 - I + 1/2*zb1", 1), "(1 - 2*I)*z1 + 1/2*zb1 - I");
        assert_eq!(round_trip("-3/4", 1), "-3/4");
    }
}
