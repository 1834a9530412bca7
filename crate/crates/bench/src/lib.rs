//! Inputs shared by the benchmarks.

use qform_core::{DiagonalForm, ProgressionUnion};

/// `<1,3,9,9^r>`.
pub fn family_form(r: u32) -> DiagonalForm {
    DiagonalForm::new([1, 3, 9, 9u64.pow(r)]).expect("valid coefficients")
}

pub fn family_union(r: u32) -> ProgressionUnion {
    qform_core::family_lr_union(r)
}
