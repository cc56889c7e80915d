//! Symbolic–numeric construction of singular holomorphic webs extending the
//! Levi foliation of real algebraic Levi-flat hypersurfaces in `ℂⁿ`.
//!
//! The pipeline parses a real defining polynomial `ρ(z, z̄)` (or an
//! algebraically parametrized family `H(z, ζ)`), complexifies it, picks a
//! complex line parametrizing Segre varieties, and eliminates the line
//! parameter with resultants to obtain first-order PDEs `Φ_j(z, p_j) = 0`.
//! A numeric layer samples the hypersurface, checks Levi-flatness, and
//! traces leaves of the resulting web.

pub mod algebra;
pub mod hypersurface;
pub mod io;
pub mod leaf;
pub mod par;
pub mod roots;
pub mod web;

pub use algebra::{GaussRational, MultiPoly, Var};
pub use par::Execution;
