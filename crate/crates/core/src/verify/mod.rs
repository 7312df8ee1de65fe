//! Checkers over explored crystal graphs: crystal axioms, semi-normality,
//! normality through rank-two restrictions, comparison with `B(lambda)`
//! oracles, Stembridge's local axioms and the rank-two morphism test for
//! the variant monomial crystal.

mod checks;
mod mutate;
mod phi;
mod report;
mod stembridge;

pub use checks::{
    check_component_is_blam, check_crystal_axioms, check_normal, check_semi_normal, finite_subsets, recheck,
};
pub use mutate::{mutate, Mutation, STANDARD_MUTATIONS};
pub use phi::{phi_rank2_morphism_check, phi_rank2_random, KCrystal, KElement};
pub use report::{CheckReport, Stats, Verdict, Violation, Witness, MAX_WITNESSES};
pub use stembridge::{stembridge_check, AXIOMS};
