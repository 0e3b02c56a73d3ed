//! Powers, anti-powers and block-patterns in finite and infinite words.
//!
//! A length-`km` word split into `k` blocks of length `m` is summarized by its
//! [`BlockSignature`]: how many equality classes of each size the blocks form.
//! Powers, anti-powers and `(k, lambda)`-anti-powers are all signature shapes.

pub mod density;
pub mod error;
pub mod expectation;
pub mod generators;
mod naming;
pub mod patterns;
pub mod search;
pub mod word;

pub use density::{
    ap_set, d_set, d_set_at_least, density_estimate, minimal_antipower_prefix, DensityEstimate,
    PrefixKind, PrefixSet,
};
pub use error::{Error, Result};
pub use expectation::{
    brute_force_expectation, expected_anti_powers, expected_block_patterns,
    expected_block_patterns_exact, expected_k_powers_closed, monte_carlo_expectation,
    ExpectationQuery, MonteCarloEstimate,
};
pub use generators::{Angle, Mechanical, Real};
pub use patterns::{
    block_signature, contains, count_block_patterns, equal_pair_count, is_anti_power,
    is_k_lambda_anti_power, is_k_power, BlockSignature, Occurrence, PairBudget, Predicate,
};
pub use search::{
    bound_check, corollary_5_4_condition, extendable_left, max_avoiding_length, n_alpha,
    AvoidanceSpec, Constraint, SearchOptions, SearchResult,
};
pub use word::{Alphabet, InfiniteWord, Letter, Word};
