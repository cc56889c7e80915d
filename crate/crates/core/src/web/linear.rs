//! Exact linear changes of coordinates `z_old = M z_new`.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{GaussRational, MultiPoly, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub rows: Vec<Vec<GaussRational>>,
}

impl LinearMap {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { GaussRational::one() } else { GaussRational::zero() }).collect())
            .collect();
        Self { rows }
    }

    /// Swaps coordinates `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows.swap(i, j);
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn apply(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).fold(GaussRational::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn apply_f64(&self, v: &[num_complex::Complex64]) -> Vec<num_complex::Complex64> {
        self.rows.iter().map(|row| row.iter().zip(v).map(|(a, b)| a.to_complex() * b).sum()).collect()
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim();
        let mut a: Vec<Vec<GaussRational>> = self
            .rows
            .iter()
            .zip(Self::identity(n).rows)
            .map(|(r, e)| r.iter().cloned().chain(e).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].inv()?;
            a[col].iter_mut().for_each(|x| *x = &*x * &inv);
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    a[r].iter_mut().zip(&pivot_row).for_each(|(x, p)| *x = &*x - &(&f * p));
                }
            }
        }
        Some(Self { rows: a.into_iter().map(|r| r[n..].to_vec()).collect() })
    }

    /// Substitutes `z_j ↦ Σ_k M_jk z_k` and `zb_j ↦ Σ_k conj(M_jk) zb_k`
    /// (and likewise for `wb`).
    pub fn pull_back(&self, p: &MultiPoly) -> MultiPoly {
        let n = self.dim();
        let mut bindings = HashMap::new();
        for j in 0..n {
            let row = &self.rows[j];
            let lin = |mk: fn(u8) -> Var, conj: bool| {
                (0..n).fold(MultiPoly::zero(), |acc, k| {
                    let c = if conj { row[k].conj() } else { row[k].clone() };
                    &acc + &MultiPoly::var(mk(k as u8 + 1)).scale(&c)
                })
            };
            let idx = j as u8 + 1;
            bindings.insert(Var::Z(idx), lin(Var::Z, false));
            bindings.insert(Var::Zb(idx), lin(Var::Zb, true));
            bindings.insert(Var::Wb(idx), lin(Var::Wb, true));
        }
        p.substitute(&bindings)
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}
