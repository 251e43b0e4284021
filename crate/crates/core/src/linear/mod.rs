//! Exact linear algebra on graded pieces: bases, commutants, relations.

pub mod basis;
pub mod elim;
pub mod relation;
pub mod solve;

pub use basis::{charge_filter, weight_basis, WeightBasis};
pub use elim::{maximal_minor_gcd, row_module_basis, Eliminator, PivotRule};
pub use relation::{decoupling_multiplier, express_in_span, find_relation, words, Decoupling, Relation, RelationOutcome, Word};
pub use solve::{
    check_evaluation, commutant_basis, graded_dimensions, invariant_basis, nongeneric_levels, solve, weight_range,
    Condition, Level, LevelStatus, NongenericReport, SolveReport, System,
};
