pub mod lift;
pub mod sl2;
pub mod star;

pub use lift::{equivariance_residual, lift, solve_lift_coefficients, LiftCoefficients};
pub use sl2::{act_form, act_psido, Generator};
pub use star::{associativity_defect, rc_table, star_product, RcTable, StarProduct, WeightedForm};
