//! Floating-point evaluation of exact polynomials.

use num_complex::Complex64;

use super::poly::MultiPoly;
use super::var::Var;

/// A polynomial with `f64` complex coefficients over a fixed slot layout,
/// evaluated by nested Horner schemes (one per variable, outermost first).
#[derive(Clone, Debug)]
pub struct NumPoly {
    nvars: usize,
    // Sorted lexicographically descending by exponent vector.
    terms: Vec<(Vec<u32>, Complex64)>,
    max_coeff: f64,
    degree: u32,
}

impl NumPoly {
    /// Lays out `p` over `slots`; every variable of `p` must appear there.
    pub fn from_poly(p: &MultiPoly, slots: &[Var]) -> Self {
        let map: Vec<usize> = p
            .vars()
            .iter()
            .map(|v| slots.iter().position(|s| s == v).unwrap_or_else(|| panic!("variable {v} has no slot")))
            .collect();
        let mut terms: Vec<(Vec<u32>, Complex64)> = p
            .terms()
            .map(|(e, c)| {
                let mut ex = vec![0u32; slots.len()];
                for (k, &i) in map.iter().enumerate() {
                    ex[i] = e[k];
                }
                (ex, c.to_complex())
            })
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Self { nvars: slots.len(), terms, max_coeff: p.max_coeff_abs(), degree: p.total_degree() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_coeff(&self) -> f64 {
        self.max_coeff
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Magnitude scale `max|c| · (1 + r)^deg` used for relative tolerances.
    pub fn scale(&self, radius: f64) -> f64 {
        (self.max_coeff * (1.0 + radius).powi(self.degree as i32)).max(f64::MIN_POSITIVE)
    }

    pub fn eval(&self, vals: &[Complex64]) -> Complex64 {
        assert_eq!(vals.len(), self.nvars, "wrong number of values");
        horner(&self.terms, 0, vals)
    }
}

fn horner(terms: &[(Vec<u32>, Complex64)], var: usize, vals: &[Complex64]) -> Complex64 {
    if terms.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    if var == vals.len() {
        return terms.iter().map(|t| t.1).sum();
    }
    let x = vals[var];
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev: Option<u32> = None;
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0[var];
        let mut end = start;
        while end < terms.len() && terms[end].0[var] == e {
            end += 1;
        }
        if let Some(pe) = prev {
            acc *= x.powu(pe - e);
        }
        acc += horner(&terms[start..end], var + 1, vals);
        prev = Some(e);
        start = end;
    }
    acc * x.powu(prev.unwrap_or(0))
}
