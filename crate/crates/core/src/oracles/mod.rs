//! Exact brute-force oracles over explicit words and codes.

mod ball;
pub(crate) mod edit;
mod listdec;
mod probability;
mod reduction;
pub(crate) mod word;

pub use ball::{enumerate_ball, supersequence_count_exact_length, BallSpec, LengthMode};
pub use edit::{lcs, reachable};
pub use listdec::{
    check_list_decodable, check_with_budgets, error_budget, max_list_size, ListSizeReport, Verdict,
};
pub use probability::{
    containment_probability, containment_probability_dp, containment_probability_leftmost,
};
pub use reduction::{alphabet_reduction, two_segment_reduction, TwoSegmentReduction};
pub use word::{all_words_of_length, EnumerationCap, SmallCode, Word, CAP_ENV};
