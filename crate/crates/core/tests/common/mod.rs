#![allow(dead_code)]

use std::path::PathBuf;

use leviweb::algebra::{GaussRational, MultiPoly, Var};
use leviweb::io::ProblemInput;
use leviweb::web::{extract_web, ExtractOptions, WebSystem};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FLAT_FIXTURES: [&str; 5] = ["parabola_web", "example3", "cone2", "cone3", "cusp"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.lv"))
}

pub fn fixture(name: &str) -> ProblemInput {
    ProblemInput::from_text(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn web(name: &str) -> WebSystem {
    extract_web(&fixture(name), &ExtractOptions::default()).unwrap()
}

/// A random polynomial in `t, z1, z2` with small Gaussian-integer
/// coefficients and `t`-degree at most `max_t`.
pub fn random_poly(rng: &mut ChaCha8Rng, max_t: u32, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let c = GaussRational::from_ints(rng.random_range(-3..=3), rng.random_range(-2..=2));
        let e = [(Var::T, rng.random_range(0..=max_t)), (Var::Z(1), rng.random_range(0..=2)), (Var::Z(2), rng.random_range(0..=1))];
        p = &p + &MultiPoly::monomial(c, &e);
    }
    p
}

/// 200-style oracle pairs: every fourth pair shares a planted factor.
pub fn random_pair(seed: u64, k: u64) -> (MultiPoly, MultiPoly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let mut a = random_poly(&mut rng, 3, 4);
    let mut b = random_poly(&mut rng, 3, 4);
    if k % 4 == 3 {
        let f = &MultiPoly::var(Var::T) + &random_poly(&mut rng, 0, 2);
        a = &a * &f;
        b = &b * &f;
    }
    (a, b)
}
