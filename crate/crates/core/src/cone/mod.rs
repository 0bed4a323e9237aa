//! The graded Poisson algebra of the cone over the projective line with
//! divisor `N inf`.

pub mod beauville;
pub mod bracket;
pub mod presentation;

pub use beauville::{beauville_family, BeauvilleReport, TensorPoly};
pub use bracket::{
    bracket, bracket_in_generators, connection, dim_and_basis, poisson_bracket, ConeElement, GeneratorBracket,
};
pub use presentation::{check_presentation, generating_family, PresentationReport};
