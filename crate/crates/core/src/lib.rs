//! Spectral analysis of Boolean functions given as bit-packed truth tables.
//!
//! * [`table`]: the packed [`TruthTable`] with complement, reversal,
//!   concatenation and halving.
//! * [`spectral`]: exact Walsh spectra, nonlinearity by spectrum and by
//!   exhaustive affine search.
//! * [`anf`]: algebraic normal form and degree.
//! * [`majority`]: the majority family and the verification of its closed
//!   forms.

pub mod analysis;
pub mod anf;
pub mod error;
pub mod majority;
pub mod runlength;
pub mod spectral;
pub mod table;

pub use analysis::AnalysisReport;
pub use anf::{degree, is_affine, to_anf, AnfTable};
pub use error::{Error, Result};
pub use majority::{
    binomial, half_a, half_b, majority, predicted_nonlinearity, predicted_nonlinearity_b_even,
    predicted_weight_a_odd, quarter_q1, verify_k, verify_majority, IdentityResult, MajorityReport,
    Observation, Oracle,
};
pub use spectral::{
    affine_table, brute_force_nonlinearity, check_weight_equals_nonlinearity, nearest_affine,
    nonlinearity, walsh_transform, AffineSpec, LowWeightCheck, LowWeightVerdict, WalshSpectrum,
};
pub use table::{point_weight, PointVector, TruthTable, MAX_VARS};
