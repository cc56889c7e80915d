//! Extraction of the web `{Φ_j(z, p_j) = 0}` from a Levi-flat hypersurface
//! or a parametrized family of complex hypersurfaces.

mod eliminate;
mod family;
mod line;
mod linear;

use std::fmt;

use crate::algebra::{AlgebraError, GaussRational};
use crate::hypersurface::HypersurfaceError;
use crate::io::InputError;

pub use eliminate::{eliminate, extract_web, Elimination, ExtractOptions, WebSystem};
pub use family::{
    build_h, build_h_param, first_integral_values, param_membership, total_derivative, FamilyOrigin, ParamFamily,
};
pub use line::{choose_line, coordinate_normalize, LineMode, ParamLine};
pub use linear::LinearMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WebError {
    #[error("no coordinate change made Q_0 transverse to the z_n axis after {0} draws")]
    NormalizationFailed(usize),
    #[error("no admissible line after {0} draws")]
    LineSelectionFailed(usize),
    #[error("line rejected: {0}")]
    InvalidLine(String),
    #[error("family has t-degree 0")]
    DegenerateFamily,
    #[error("dH/dz_n vanishes identically (direction {0})")]
    DegenerateDirection(usize),
    #[error("Phi_{0} has no dependence on p_{0}")]
    WebDegenerate(usize),
    #[error("resultant R(H, G_{0}) vanishes identically")]
    ResultantVanished(usize),
    #[error("H(z, t) vanishes identically in t at this point")]
    DicriticalFiber,
    #[error("root finding did not converge (residual {0:.3e})")]
    NonConvergence(f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Pipeline stage at which an extraction failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Input,
    Hypersurface,
    Normalize,
    Line,
    Family,
    Derivative,
    Eliminate,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Input => "input",
            Stage::Hypersurface => "hypersurface",
            Stage::Normalize => "normalize",
            Stage::Line => "line",
            Stage::Family => "family",
            Stage::Derivative => "derivative",
            Stage::Eliminate => "eliminate",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExtractErrorKind {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Hypersurface(#[from] HypersurfaceError),
    #[error(transparent)]
    Web(#[from] WebError),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{stage}: {kind}")]
pub struct ExtractError {
    pub stage: Stage,
    pub kind: ExtractErrorKind,
}

impl ExtractError {
    /// Whether the failure is a rejection of the input rather than of the
    /// construction.
    pub fn is_validation(&self) -> bool {
        match &self.kind {
            ExtractErrorKind::Input(_) => true,
            ExtractErrorKind::Hypersurface(e) => !matches!(e, HypersurfaceError::SamplingExhausted { .. }),
            ExtractErrorKind::Web(e) => matches!(e, WebError::InvalidLine(_)),
        }
    }
}

/// How the web was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WebMode {
    /// Line through the nondicritical origin.
    Nondicritical,
    /// Affine line avoiding the dicritical origin.
    Dicritical,
    /// Algebraically parametrized family `H(z, ζ)`.
    Parametrized,
}

impl fmt::Display for WebMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WebMode::Nondicritical => "nondicritical",
            WebMode::Dicritical => "dicritical",
            WebMode::Parametrized => "parametrized",
        })
    }
}

pub(crate) fn origin(n: usize) -> Vec<GaussRational> {
    vec![GaussRational::zero(); n]
}

