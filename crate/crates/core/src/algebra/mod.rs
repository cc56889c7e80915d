//! Exact polynomial kernel: Gaussian-rational coefficients, sparse
//! multivariate polynomials, GCDs, squarefree parts and resultants.

mod gauss;
mod gcd;
mod laurent;
mod normalize;
pub mod numeric;
mod poly;
mod resultant;
mod var;

pub use gauss::GaussRational;
pub use gcd::{content_wrt, gcd, gcd_wrt, primitive_part_wrt, squarefree_wrt};
pub use laurent::LaurentPoly;
pub use normalize::canonical_normalize;
pub use numeric::NumPoly;
pub use poly::{Monomial, MultiPoly};
pub use resultant::{bareiss_det, resultant_wrt, sylvester_matrix, ResultantMethod};
pub use var::Var;


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0}: the zero polynomial has no canonical form")]
    ZeroPolynomial(&'static str),
}
