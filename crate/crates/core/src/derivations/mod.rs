//! Derivation predicates over finite Lie conformal superalgebras and the
//! degree-bounded solver that produces bases of the corresponding spaces.
//!
//! Every predicate is evaluated on generator tuples. The triple identities
//! transform uniformly when a slot is multiplied by ∂ (see
//! [`sufficiency_self_test`]), and all terms are bilinear, so generators
//! suffice.

mod ansatz;
mod predicates;
mod selftest;
mod solver;
mod spaces;

pub use ansatz::{Ansatz, AnsatzKey};
pub use predicates::{
    check_abcd, check_cder, check_ctder, check_gctder, check_intertwiner, check_phipsi, check_tc, check_tqc,
    check_ztder, triple_terms, AbcdParams, TripleTerms,
};
pub use selftest::sufficiency_self_test;
pub use solver::{check_tag, solve_space, MapSpace, PairSpace, PredicateTag, SolvedSpace};
pub use spaces::{centralizer_in, inner_space, space_equal, space_intersect};
