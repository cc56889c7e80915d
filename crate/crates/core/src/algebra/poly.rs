//! Sparse multivariate polynomials over the Gaussian rationals.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gauss::GaussRational;
use super::var::Var;

/// Exponent vector, aligned with the owning polynomial's `vars`.
///
/// Ordered lexicographically with the highest-precedence variable first,
/// so jet variables dominate, then `t`, `ζ`, and the coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial in named variables.
///
/// Invariants: `vars` is sorted by precedence and contains exactly the
/// variables that occur with positive exponent; every stored coefficient is
/// nonzero. Both are restored after every operation, so `==` is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Monomial, GaussRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(GaussRational::from_int(v))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(GaussRational::one(), &[(v, 1)])
    }

    /// `c · ∏ v^e`.
    pub fn monomial(c: GaussRational, powers: &[(Var, u32)]) -> Self {
        let mut vars: Vec<Var> = powers.iter().filter(|(_, e)| *e > 0).map(|(v, _)| *v).collect();
        vars.sort();
        vars.dedup();
        let mut exps = vec![0u32; vars.len()];
        for (v, e) in powers {
            if let Ok(i) = vars.binary_search(v) {
                exps[i] += e;
            }
        }
        Self::from_terms(vars, [(exps, c)])
    }

    /// Builds from raw terms; duplicate monomials are summed, zeros dropped.
    pub fn from_terms<I>(vars: Vec<Var>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, GaussRational)>,
    {
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), vars.len(), "duplicate variables");
        let perm: Vec<usize> = sorted.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
        let mut map: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
            let m = Monomial(perm.iter().map(|&i| exps[i]).collect());
            accumulate(&mut map, m, &c);
        }
        let mut p = Self { vars: sorted, terms: map };
        p.compact();
        p
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<GaussRational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_default())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending term order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &GaussRational)> {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &GaussRational> {
        self.terms.values()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    fn slot(&self, v: Var) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        match self.slot(v) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Leading coefficient in the term order.
    pub fn leading_coeff(&self) -> Option<&GaussRational> {
        self.terms.values().next_back()
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.terms.values().map(GaussRational::max_abs_f64).fold(0.0, f64::max)
    }

    /// Drops variables that no longer occur.
    fn compact(&mut self) {
        let keep: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if keep.iter().all(|k| *k) {
            return;
        }
        self.vars = self.vars.iter().zip(&keep).filter(|(_, k)| **k).map(|(v, _)| *v).collect();
        let old = std::mem::take(&mut self.terms);
        for (m, c) in old {
            let e: Vec<u32> = m.0.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
            self.terms.insert(Monomial(e), c);
        }
    }

    /// Re-expresses the terms over a superset universe `vars` (sorted).
    fn embedded(&self, vars: &[Var]) -> BTreeMap<Monomial, GaussRational> {
        if vars == self.vars.as_slice() {
            return self.terms.clone();
        }
        let map: Vec<usize> = self.vars.iter().map(|v| vars.binary_search(v).expect("universe")).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (k, &i) in map.iter().enumerate() {
                    e[i] = m.0[k];
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn union_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
        if a == b {
            return a.to_vec();
        }
        let mut v: Vec<Var> = a.iter().chain(b).copied().collect();
        v.sort();
        v.dedup();
        v
    }

    fn from_parts(vars: Vec<Var>, terms: BTreeMap<Monomial, GaussRational>) -> Self {
        let mut p = Self { vars, terms };
        p.compact();
        p
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn add_scaled(&self, other: &Self, sign: &GaussRational) -> Self {
        let vars = Self::union_vars(&self.vars, &other.vars);
        let mut terms = self.embedded(&vars);
        for (m, c) in other.embedded(&vars) {
            accumulate(&mut terms, m, &(&c * sign));
        }
        Self::from_parts(vars, terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative; zero when `v` does not occur.
    pub fn partial_derive(&self, v: Var) -> Self {
        let Some(i) = self.slot(v) else {
            return Self::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[i] -= 1;
            accumulate(&mut terms, Monomial(m2), &(c * &GaussRational::from_int(e as i64)));
        }
        Self::from_parts(self.vars.clone(), terms)
    }

    /// Simultaneous substitution `v ↦ bindings[v]`.
    pub fn substitute(&self, bindings: &HashMap<Var, MultiPoly>) -> Self {
        let bound: Vec<Option<&MultiPoly>> = self.vars.iter().map(|v| bindings.get(v)).collect();
        if bound.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut power_cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut free = Vec::new();
            let mut term = Self::one();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match bound[i] {
                    Some(b) => {
                        let p = power_cache.entry((i, e)).or_insert_with(|| b.pow(e));
                        term = &term * p;
                    }
                    None => free.push((self.vars[i], e)),
                }
            }
            let factor = Self::monomial(c.clone(), &free);
            out = &out + &(&term * &factor);
        }
        out
    }

    /// Renames variables through `f`; colliding images are merged.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Self {
        let new_vars: Vec<Var> = self.vars.iter().map(|v| f(*v)).collect();
        let mut uni = new_vars.clone();
        uni.sort();
        uni.dedup();
        let map: Vec<usize> = new_vars.iter().map(|v| uni.binary_search(v).unwrap()).collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; uni.len()];
            for (k, &i) in map.iter().enumerate() {
                e[i] += m.0[k];
            }
            accumulate(&mut terms, Monomial(e), c);
        }
        Self::from_parts(uni, terms)
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussRational) -> GaussRational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self::from_parts(self.vars.clone(), terms)
    }

    pub fn conj_coeffs(&self) -> Self {
        self.map_coeffs(GaussRational::conj)
    }

    /// Coefficients of `v^0, v^1, …, v^deg` as polynomials free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let Some(i) = self.slot(v) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<BTreeMap<Monomial, GaussRational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            buckets[k].insert(Monomial(e), c.clone());
        }
        buckets.into_iter().map(|t| Self::from_parts(self.vars.clone(), t)).collect()
    }

    /// Inverse of [`MultiPoly::coeffs_in`]: `Σ coeffs[k]·v^k`.
    pub fn from_coeffs(v: Var, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let vk = Self::monomial(GaussRational::one(), &[(v, k as u32)]);
            out = &out + &(c * &vk);
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "exact division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.inv().unwrap()));
        }
        if divisor.vars.iter().any(|v| !self.contains(*v)) {
            return None;
        }
        let vars = self.vars.clone();
        let mut rem = self.terms.clone();
        let d = divisor.embedded(&vars);
        let (lead_m, lead_c) = d.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let lead_inv = lead_c.inv().unwrap();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lead_m.divides(&m) {
                return None;
            }
            let qm = Monomial(m.0.iter().zip(&lead_m.0).map(|(a, b)| a - b).collect());
            let qc = &c * &lead_inv;
            for (dm, dc) in &d {
                let key = Monomial(dm.0.iter().zip(&qm.0).map(|(a, b)| a + b).collect());
                accumulate(&mut rem, key, &-(&qc * dc));
            }
            debug_assert!(!rem.contains_key(&m));
            quot.insert(qm, qc);
        }
        Some(Self::from_parts(vars, quot))
    }

    /// Floating evaluation; every variable must be bound.
    pub fn eval_complex(&self, point: &HashMap<Var, Complex64>) -> Complex64 {
        let vals: Vec<Complex64> = self
            .vars
            .iter()
            .map(|v| *point.get(v).unwrap_or_else(|| panic!("variable {v} is unbound")))
            .collect();
        super::numeric::NumPoly::from_poly(self, &self.vars).eval(&vals)
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, GaussRational>, m: Monomial, c: &GaussRational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_scaled(rhs, &GaussRational::one())
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_scaled(rhs, &GaussRational::from_int(-1))
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let vars = MultiPoly::union_vars(&self.vars, &rhs.vars);
        let a = self.embedded(&vars);
        let b = rhs.embedded(&vars);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                accumulate(&mut terms, m, &(ca * cb));
            }
        }
        MultiPoly::from_parts(vars, terms)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&GaussRational::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl From<i64> for MultiPoly {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<GaussRational> for MultiPoly {
    fn from(c: GaussRational) -> Self {
        Self::constant(c)
    }
}
