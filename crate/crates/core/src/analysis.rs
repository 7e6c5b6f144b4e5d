//! One-shot summary of an arbitrary truth table.

use serde::Serialize;

use crate::anf::to_anf;
use crate::spectral::{check_weight_equals_nonlinearity, walsh_transform, LowWeightVerdict};
use crate::table::TruthTable;

/// Weight, nonlinearity, degree and spectrum extremes of one function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: u32,
    pub weight: u64,
    pub balanced: bool,
    /// `None` for zero-variable functions.
    pub nonlinearity: Option<u64>,
    pub degree: u32,
    pub is_constant: bool,
    pub max_abs_walsh: u32,
    /// Smallest `w` attaining `max_abs_walsh`.
    pub max_abs_walsh_index: u64,
    pub anf: String,
    pub low_weight_check: LowWeightVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<i32>>,
}

impl AnalysisReport {
    pub fn new(t: &TruthTable, include_spectrum: bool) -> Self {
        let spectrum = walsh_transform(t);
        let (max_abs_walsh, max_abs_walsh_index) = spectrum.max_abs();
        let anf = to_anf(t);
        let low_weight = check_weight_equals_nonlinearity(t);
        Self {
            n: t.n(),
            weight: t.weight(),
            balanced: t.is_balanced(),
            nonlinearity: spectrum.nonlinearity().ok(),
            degree: anf.degree(),
            is_constant: anf.is_constant(),
            max_abs_walsh,
            max_abs_walsh_index,
            anf: anf.to_string(),
            low_weight_check: low_weight.verdict,
            spectrum: include_spectrum.then(|| spectrum.into_values()),
        }
    }

    /// Nonlinearity agrees with the reported spectrum maximum.
    pub fn is_consistent(&self) -> bool {
        match self.nonlinearity {
            None => self.n == 0,
            Some(nl) => nl == (1u64 << (self.n - 1)) - self.max_abs_walsh as u64 / 2,
        }
    }
}
