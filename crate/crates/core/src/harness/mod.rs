//! The random-assignment model: an adversary's weight list is assigned to
//! the elements by a uniform permutation, elements arrive in an independent
//! uniform order, and algorithms see only comparisons between revealed
//! elements. Single trials are simulated from a master seed; small instances
//! are evaluated exactly by enumeration.

mod exact;
mod opt;
mod random;
mod session;
mod weights;

pub use exact::{
    exact_expectation, inclusion_profile, inclusion_profile_with, zero_info_profile, ExactConfig,
    ExactExpectation, InclusionProfile, ProbPoly, DEFAULT_EXACT_BOUND,
};
pub use opt::{
    expected_rank_profile, expected_rank_profile_mc, opt_expectation_by_rank_formula,
    opt_expectation_direct, rank_formula, Estimate, Expectation, Mode, DIRECT_OPT_BOUND,
};
pub use random::{shuffle, substream, Draw, MonteCarlo, Randomness, TrialRandomness};
pub use session::{
    greedy_by_keys, order_keys, run_trial, run_trials, Comparison, ComparisonLog, Decision,
    DecisionRecord, OnlineAlgorithm, RevealContext, StartInfo, Strategy, Token, Transcript,
    TrialOutcome,
};
pub use weights::AdversaryWeights;
