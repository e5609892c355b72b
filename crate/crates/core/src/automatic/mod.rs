//! Decomposition procedures for length-preserving relations given by DFAs.

mod binary;
mod bounded;
mod count;
mod hint;
mod instance;
mod joint;
mod slice;
#[cfg(test)]
pub(crate) mod testing;
mod unary;

pub use binary::{binary_width, reduce_to_binary, translate_hint};
pub use bounded::{bounded_decomposition_check, BoundedOutcome, SliceMethod, SliceResult};
pub use count::{count_words, ebp_check, EbpOutcome};
pub use hint::{
    check_hint_automatic, check_pair_automatic, max_complement_dfa, AutoCounterexample, AutoHintReport, AutoVerdict,
    AutoWitness,
};
pub use instance::{AutomaticInstance, TrackWord, IN, MID, OUT};
pub use joint::{verify_joint_witness, JointVerdict, JointViolation};
pub use slice::{nth_word, slice_instance, slice_relation, word_domain, word_label, SLICE_DOMAIN_CAP};
pub use unary::{solve_unary, AutoSolution};
