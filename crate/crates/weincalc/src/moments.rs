//! Exact moments of matrix entries: sphere coordinates, complex-reflection
//! entries (through the rank-one matrix P = I − R), and Haar-unitary entries
//! by two independent routes.

pub mod eval;
pub mod query;

pub use eval::{
    moment_p_words_rat, moment_p_words_sym, moment_pr_rat, moment_pr_rat_with_budget,
    moment_pr_sym, moment_pr_sym_with_budget, moment_rat, moment_sym, moment_u_recursive,
    moment_u_recursive_with_budget, moment_u_weingarten, permutation_r_moment, sphere_moment,
    R_TERM_BUDGET, U_RECURSIVE_BUDGET,
};
pub use query::{Factor, Idx, MomentQuery, Target};
