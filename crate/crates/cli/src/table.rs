//! The bundled table of quaternary forms claimed to miss exactly one
//! progression, and the audit that checks each row by enumeration.

use std::path::Path;

use qform_core::{
    regularity_report, verify_union_prefix, DiagonalForm, PrefixVerdict, Progression,
    ProgressionUnion, RegularityReport, VerdictStatus,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::Failure;

/// The 51 rows exactly as printed, including the non-monotone `d = 9, 18, 17`.
pub const BUNDLED_TABLE: &str = include_str!("../fixtures/one_progression_table.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub coeffs: [u64; 4],
    pub ap: Progression,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub as_printed: Option<String>,
}

impl TableRow {
    pub fn form(&self) -> Result<DiagonalForm, qform_core::Error> {
        DiagonalForm::new(self.coeffs)
    }

    pub fn is_monotone(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Rows audited alongside the table: the likely intended `d = 27` for the
/// printed `17`, and the `<1,1,1,d>` forms with `d = 8, 16, 24`.
pub fn supplementary_rows() -> Vec<(String, TableRow)> {
    let row = |coeffs, a, m| TableRow {
        coeffs,
        ap: Progression::new(a, m).expect("valid"),
        as_printed: None,
    };
    vec![
        (
            "d = 27 in place of the printed 17".to_string(),
            row([1, 1, 6, 27], 3, 9),
        ),
        ("<1,1,1,d>, d = 8".to_string(), row([1, 1, 1, 8], 7, 8)),
        ("<1,1,1,d>, d = 16".to_string(), row([1, 1, 1, 16], 7, 8)),
        ("<1,1,1,d>, d = 24".to_string(), row([1, 1, 1, 24], 7, 8)),
    ]
}

pub fn parse_table(text: &str) -> Result<Vec<TableRow>, Failure> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text)
        .map_err(|e| Failure::Usage(format!("fixture is not a JSON array: {e}")))?;
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let row: TableRow = serde_json::from_value(v)
                .map_err(|e| Failure::Usage(format!("fixture row {}: {e}", i + 1)))?;
            row.form()
                .map_err(|e| Failure::Usage(format!("fixture row {}: {e}", i + 1)))?;
            Ok(row)
        })
        .collect()
}

pub fn load_table(path: Option<&Path>) -> Result<Vec<TableRow>, Failure> {
    match path {
        None => parse_table(BUNDLED_TABLE),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            parse_table(&text)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularitySummary {
    pub verdict: Option<qform_core::Verdict>,
    pub genus_union: Option<ProgressionUnion>,
    pub witness: Option<u64>,
    pub k: Option<usize>,
    /// Set when the report could not be produced, e.g. a bound too small.
    pub error: Option<String>,
}

impl From<&RegularityReport> for RegularitySummary {
    fn from(r: &RegularityReport) -> Self {
        Self {
            verdict: Some(r.verdict),
            genus_union: Some(r.genus_union.clone()),
            witness: r.witness,
            k: r.k,
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowAudit {
    /// 1-based position in the fixture.
    pub index: usize,
    pub label: Option<String>,
    pub row: TableRow,
    pub monotone: bool,
    pub verdict: PrefixVerdict,
    pub regularity: RegularitySummary,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub rows: usize,
    pub matches: usize,
    pub mismatches: usize,
}

impl Totals {
    fn of(rows: &[RowAudit]) -> Self {
        let matches = rows
            .iter()
            .filter(|r| r.verdict.status == VerdictStatus::Match)
            .count();
        Self {
            rows: rows.len(),
            matches,
            mismatches: rows.len() - matches,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub bound: u64,
    pub rows: Vec<RowAudit>,
    pub totals: Totals,
    pub supplementary: Vec<RowAudit>,
    pub supplementary_totals: Totals,
}

fn audit_row(
    index: usize,
    label: Option<String>,
    row: &TableRow,
    bound: u64,
) -> Result<RowAudit, Failure> {
    let form = row.form().map_err(Failure::from)?;
    let claimed = ProgressionUnion::new([row.ap]);
    let verdict = verify_union_prefix(&form, &claimed, bound)?;
    let regularity = match regularity_report(&form, bound) {
        Ok(r) => RegularitySummary::from(&r),
        Err(qform_core::Error::Invariant(msg)) => return Err(Failure::Internal(msg)),
        Err(e) => RegularitySummary {
            verdict: None,
            genus_union: None,
            witness: None,
            k: None,
            error: Some(e.to_string()),
        },
    };
    Ok(RowAudit {
        index,
        label,
        row: row.clone(),
        monotone: row.is_monotone(),
        verdict,
        regularity,
    })
}

/// Audits every row in parallel; rows come back in fixture order.
pub fn audit(rows: &[TableRow], bound: u64) -> Result<AuditReport, Failure> {
    let max_m = rows.iter().map(|r| r.ap.modulus()).max().unwrap_or(1);
    if bound < 16 * max_m {
        return Err(Failure::Usage(format!(
            "bound {bound} is too small: need at least 16 * {max_m}"
        )));
    }
    let audited = rows
        .par_iter()
        .enumerate()
        .map(|(i, row)| audit_row(i + 1, row.as_printed.clone(), row, bound))
        .collect::<Result<Vec<_>, _>>()?;
    let supplementary = supplementary_rows()
        .par_iter()
        .enumerate()
        .map(|(i, (label, row))| audit_row(i + 1, Some(label.clone()), row, bound))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AuditReport {
        bound,
        totals: Totals::of(&audited),
        rows: audited,
        supplementary_totals: Totals::of(&supplementary),
        supplementary,
    })
}
