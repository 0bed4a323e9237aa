pub mod generators;
pub mod lifting;
pub mod pullback;

pub use generators::{commutator_symbol, gr_check, omega_tilde, quantum_relation_residual, RelationReport, Variant};
pub use lifting::{
    compare_classes, lift_weight1, order4_obstruction, order4_obstruction_with, partial_lift, standard_samples,
    ObstructionReport, Sample,
};
pub use pullback::{pullback, ramification_pullback_divisor, RamificationReport};
