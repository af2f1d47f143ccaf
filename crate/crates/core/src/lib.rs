//! Exact computations for point configurations in projective space: splitting
//! types of restricted k-derivation modules of the dual arrangement,
//! dimension counts for forms with multiplicity along a general
//! codimension-two subspace, and explicit construction of the hypersurfaces
//! predicted by the numerical criterion.
//!
//! All arithmetic is exact, over `Q` or a cyclotomic field `Q(ζ_m)`.

pub mod config;
pub mod construct;
pub mod derivmod;
pub mod linalg;
pub mod poly;
pub mod scalars;
pub mod text;
pub mod unexpect;

use thiserror::Error;

pub use config::{LineChart, PointConfig};
pub use derivmod::SplittingType;
pub use poly::{BinaryForm, MultiIndex, MultiPoly};
pub use scalars::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error(transparent)]
    Deriv(#[from] derivmod::DerivError),
    #[error(transparent)]
    Unexpect(#[from] unexpect::UnexpectError),
    #[error(transparent)]
    Construct(#[from] construct::ConstructError),
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    Scalar(#[from] scalars::ScalarError),
}
