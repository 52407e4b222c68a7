//! Optimal measurement toolkit for dihedral hidden-subgroup states.
//!
//! The k-copy state is block diagonal over Fourier labels `x ∈ Z_N^k`, and
//! every per-block quantity is derived from the subset-sum counts `η^x_r`.
//! Dense matrices appear only at small scale to cross-check the closed forms.

pub mod dihedral;
pub mod enumerate;
pub mod error;
pub mod linalg;
pub mod neumark;
pub mod numeric;
pub mod pgm;
pub mod rep_theory;
pub mod rng;
pub mod sim;
pub mod subset_sum;
pub mod success;

pub use dihedral::{
    block_state, coset_state_group_basis, dense_state, hidden_subgroup_state,
    subgroup_elements, tilde_basis_change, BlockLabel, BlockState, DihedralElement, Hidden,
    Subgroup,
};
pub use enumerate::{fold_labels, label_moments, LabelSource, ProfileWalker};
pub use error::{Error, Result};
pub use linalg::{DenseOperator, RootsOfUnity, C64, ORACLE_DIM_LIMIT};
pub use neumark::{neumark_complete, qsample, vtilde, NeumarkDilation, PartialIsometry};
pub use numeric::{CompensatedSum, Moments};
pub use pgm::{
    certify_closed_form, certify_lsb, gram_operator, lsb_povm, pgm_dense, povm_block,
    verify_holevo, ConditionRecord, GramOperator, LsbPovm, OptimalityReport, PovmBlock,
};
pub use rep_theory::{
    equivalence_check, hidden_state_in_irrep_basis, irrep, qft_dihedral, EquivalenceReport,
    IrrepDecomposition, IrrepLabel, IrrepMatrix,
};
pub use rng::{SeedSplitter, SimRng, DEFAULT_SEED};
pub use sim::{
    outcome_distribution, outcome_success, run_trials, shift_covariance_check,
    OutcomeDistribution, TrialRecord, TrialSummary,
};
pub use subset_sum::{
    count_eta, enumerate_subsets, parse_instances, sample_solution, superposition_vector,
    BitString, SolutionSampler, SubsetProfile, SubsetSumInstance,
};
pub use success::{
    chi_single_copy, counting_sums, info_lower_bound, large_count_fraction, lsb_success,
    lsb_success_exact, lsb_threshold_check, lsb_upper_bound, success_exact, success_mc,
    threshold_sweep, trivial_success, CountingSums, Estimate, InfoBoundResult, Method,
    ThresholdPoint,
};
