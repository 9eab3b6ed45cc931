//! Conjugates, subdifferentials, normal sets and the calculus rules relating
//! them, each checked exactly on finite data.

pub mod conjugate;
pub mod rules;
pub mod subdiff;
pub mod sums;

pub use conjugate::{
    abstract_hull, conjugate, epi_conjugate_check, inf_convolution, is_l_convex, moreau_verify,
    support_function, Attainment, ConjugateTable,
};
pub use rules::{composition_subdiff_verify, max_rule_verify, restriction_check, shift_rule_check};
pub use subdiff::{
    normal_set, normal_subdiff_check, pinned_subdiff_hull_closed, subdifferential, NormalSet,
    SubdifferentialSet,
};
pub use sums::{
    conjugate_sum, conjugate_sum_check, normal_sum_check, sum_rule_verify, support_sum_identity,
    ConjugateSum,
};
