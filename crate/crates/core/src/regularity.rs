//! Bounded consistency check between the global excluded set `E(F)` and the
//! genus excluded set `E(gen F)`.
//!
//! `E(gen F) ⊆ E(F)` always holds, so a failure of containment is reported as
//! an internal error. The other direction can only be checked up to the
//! bound, which is why the verdict is "consistent up to N" and never
//! "regular".

use serde::{Deserialize, Serialize};

use crate::enumerate::represented_upto;
use crate::error::{Error, Result};
use crate::form::DiagonalForm;
use crate::local::genus_excluded_union;
use crate::progressions::{minimal_cover, unions_equal, Progression, ProgressionUnion};

/// Minimum number of periods of the largest genus modulus inside `[1, N]`.
pub const MIN_PERIODS: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentUpToN,
    IrregularWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub form: DiagonalForm,
    pub bound: u64,
    pub genus_union: ProgressionUnion,
    pub verdict: Verdict,
    /// Least `n <= bound` in `E(F) \ E(gen F)`.
    pub witness: Option<u64>,
    /// Minimal admissible cover size of `genus_union`, when consistent.
    pub k: Option<usize>,
    pub cover: Option<Vec<Progression>>,
    /// `|E(F) ∩ [1, bound]|`.
    pub excluded_count: u64,
    /// The least excluded integers, at most [`EXCLUDED_SAMPLE`].
    pub excluded_sample: Vec<u64>,
}

pub const EXCLUDED_SAMPLE: usize = 20;

pub fn regularity_report(form: &DiagonalForm, bound: u64) -> Result<RegularityReport> {
    form.require_quaternary()?;
    if bound < MIN_PERIODS * form.max_coeff() {
        return Err(Error::BoundTooSmall {
            bound,
            reason: format!(
                "need at least {} times the largest coefficient",
                MIN_PERIODS
            ),
        });
    }
    let genus_union = genus_excluded_union(form)?;
    if bound < MIN_PERIODS * genus_union.max_modulus() {
        return Err(Error::BoundTooSmall {
            bound,
            reason: format!(
                "need at least {} periods of the genus modulus {}",
                MIN_PERIODS,
                genus_union.max_modulus()
            ),
        });
    }
    let rep = represented_upto(form, bound)?;

    let mut witness = None;
    let mut excluded_count = 0;
    let mut excluded_sample = Vec::new();
    for n in 1..=bound {
        let in_genus = genus_union.contains(n);
        let excluded = !rep.contains(n);
        if in_genus && !excluded {
            return Err(Error::Invariant(format!(
                "{n} lies in the genus excluded set of {form} but is represented"
            )));
        }
        if excluded {
            excluded_count += 1;
            if excluded_sample.len() < EXCLUDED_SAMPLE {
                excluded_sample.push(n);
            }
            if !in_genus && witness.is_none() {
                witness = Some(n);
            }
        }
    }

    let (verdict, k, cover) = match witness {
        Some(_) => (Verdict::IrregularWitness, None, None),
        None => {
            let c = minimal_cover(&genus_union)?;
            (Verdict::ConsistentUpToN, Some(c.k), Some(c.cover))
        }
    };
    Ok(RegularityReport {
        form: form.clone(),
        bound,
        genus_union,
        verdict,
        witness,
        k,
        cover,
        excluded_count,
        excluded_sample,
    })
}

/// `A_{2,3} ∪ A_{6,9} ∪ ... ∪ A_{2·3^{2r-1}, 3^{2r}}`.
pub fn family_lr_union(r: u32) -> ProgressionUnion {
    let ap = |a, m| Progression::new(a, m).expect("0 < a < m");
    std::iter::once(ap(2, 3))
        .chain((1..=r).map(|i| ap(2 * 3u64.pow(2 * i - 1), 3u64.pow(2 * i))))
        .collect()
}

/// Runs [`regularity_report`] on `<1,3,9,9^r>` and checks its genus union
/// against the closed form.
pub fn family_lr(r: u32, bound: u64) -> Result<RegularityReport> {
    if !(1..=4).contains(&r) {
        return Err(Error::FamilyOutOfRange(r));
    }
    let need = 3u64.pow(2 * r + 2);
    if bound < need {
        return Err(Error::BoundTooSmall {
            bound,
            reason: format!("family r = {r} needs at least 3^{} = {need}", 2 * r + 2),
        });
    }
    let form = DiagonalForm::new([1, 3, 9, 9u64.pow(r)])?;
    let report = regularity_report(&form, bound)?;
    if !unions_equal(&report.genus_union, &family_lr_union(r))? {
        return Err(Error::Invariant(format!(
            "genus union {} of {form} differs from the closed form {}",
            report.genus_union,
            family_lr_union(r)
        )));
    }
    Ok(report)
}
