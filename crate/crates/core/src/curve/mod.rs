//! The projective line over Q: places, divisors, differentials, residues,
//! Laurent morphisms of operators and membership in the divisor-weighted
//! operator algebras.

pub mod differential;
pub mod divisor;
pub mod member;
pub mod operator;
pub mod place;
pub mod residue;

pub use differential::RationalDifferential;
pub use divisor::{Divisor, GeneralizedDivisor};
pub use member::{is_locally_regular, member_b, MembershipReport, Regularity};
pub use operator::{expand_at_place, laurent_operator, LocalOperator, LocalPrec, LocalSeries};
pub use place::{AnyChart, Chart, Place};
pub use residue::{divisor_of_differential, residue, residue_sum, DifferentialDivisor, ResidueValue};
