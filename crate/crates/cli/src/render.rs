//! Plain-text rendering. Progressions print as `a,m`, unions as `a,m;a,m`.

use std::fmt::Write;

use qform_core::{
    CoverResult, LocalReport, ProgressionUnion, RegularityReport, Verdict, VerdictStatus, Witness,
    WitnessKind,
};

use crate::table::{AuditReport, RowAudit};
use crate::Failure;

fn union_text(u: &ProgressionUnion) -> String {
    if u.is_empty() {
        "(empty)".to_string()
    } else {
        u.to_string()
    }
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::ConsistentUpToN => "consistent-up-to-N",
        Verdict::IrregularWitness => "irregular-witness",
    }
}

fn join<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn regularity(r: &RegularityReport) -> String {
    let mut s = String::new();
    writeln!(s, "form {}  bound {}", r.form, r.bound).unwrap();
    writeln!(s, "genus excluded union: {}", union_text(&r.genus_union)).unwrap();
    writeln!(s, "verdict: {}", verdict_text(r.verdict)).unwrap();
    if let Some(w) = r.witness {
        writeln!(
            s,
            "witness: {w} is excluded but locally represented everywhere"
        )
        .unwrap();
    }
    if let (Some(k), Some(cover)) = (r.k, &r.cover) {
        let cover = ProgressionUnion::new(cover.iter().copied());
        writeln!(s, "minimal cover: k = {k}  {}", union_text(&cover)).unwrap();
    }
    writeln!(
        s,
        "excluded up to bound: {} (first {}: {})",
        r.excluded_count,
        r.excluded_sample.len(),
        join(&r.excluded_sample, " ")
    )
    .unwrap();
    s
}

pub fn cover(input: &ProgressionUnion, c: &CoverResult) -> String {
    let mut s = String::new();
    writeln!(s, "input: {}", union_text(input)).unwrap();
    writeln!(s, "k = {}", c.k).unwrap();
    writeln!(
        s,
        "cover: {}",
        union_text(&ProgressionUnion::new(c.cover.iter().copied()))
    )
    .unwrap();
    writeln!(
        s,
        "residue space: Z/{}  ({} residues, {} maximal candidates)",
        c.certificate.modulus,
        c.certificate.residues.len(),
        c.certificate.maximal_candidates
    )
    .unwrap();
    s
}

pub fn local(r: &LocalReport) -> Result<String, Failure> {
    let mut s = String::new();
    writeln!(s, "form {}  p = {}", r.form, r.p).unwrap();
    writeln!(s, "jordan exponent: {}", r.jordan_exp).unwrap();
    if r.excluded.is_empty() {
        writeln!(s, "excluded square classes: (none)").unwrap();
    }
    for class in &r.excluded {
        let trace = qform_core::class_to_progressions(class)?;
        writeln!(s, "excluded {class} -> {}", union_text(&trace)).unwrap();
    }
    writeln!(s, "trace: {}", union_text(&r.excluded_union()?)).unwrap();
    Ok(s)
}

fn witness_text(w: &Witness) -> String {
    match (&w.kind, &w.vector) {
        (WitnessKind::ClaimedExcludedButRepresented, Some(v)) => {
            format!(
                "{} = F({}) claimed-excluded-but-represented",
                w.n,
                join(v, ",")
            )
        }
        (WitnessKind::ClaimedExcludedButRepresented, None) => {
            format!("{} claimed-excluded-but-represented", w.n)
        }
        (WitnessKind::ExcludedButNotClaimed, _) => format!("{} excluded-but-not-claimed", w.n),
    }
}

fn row_line(s: &mut String, r: &RowAudit) {
    let status = match r.verdict.status {
        VerdictStatus::Match => "match",
        VerdictStatus::Mismatch => "mismatch",
    };
    let form = format!("<{}>", join(&r.row.coeffs, ","));
    write!(
        s,
        "{:>3} {:<14} claimed {:<6} {:<8}",
        r.index,
        form,
        r.row.ap.to_string(),
        status
    )
    .unwrap();
    if let Some(w) = r.verdict.witnesses.first() {
        write!(s, " least witness {}", witness_text(w)).unwrap();
    }
    match (
        &r.regularity.genus_union,
        r.regularity.verdict,
        &r.regularity.error,
    ) {
        (Some(u), Some(v), _) => {
            write!(s, " | genus {} {}", union_text(u), verdict_text(v)).unwrap();
            if let Some(k) = r.regularity.k {
                write!(s, " k={k}").unwrap();
            }
            if let Some(w) = r.regularity.witness {
                write!(s, " witness={w}").unwrap();
            }
        }
        (_, _, Some(e)) => write!(s, " | regularity not checked: {e}").unwrap(),
        _ => {}
    }
    if !r.monotone {
        write!(s, " [non-monotone]").unwrap();
    }
    if let Some(label) = &r.label {
        if r.row.as_printed.is_none() {
            write!(s, " ({label})").unwrap();
        }
    }
    writeln!(s).unwrap();
}

pub fn audit(a: &AuditReport) -> String {
    let mut s = String::new();
    writeln!(s, "table audit at bound {}", a.bound).unwrap();
    for r in &a.rows {
        row_line(&mut s, r);
    }
    writeln!(
        s,
        "rows {}  match {}  mismatch {}",
        a.totals.rows, a.totals.matches, a.totals.mismatches
    )
    .unwrap();
    if !a.supplementary.is_empty() {
        writeln!(s, "supplementary rows").unwrap();
        for r in &a.supplementary {
            row_line(&mut s, r);
        }
        writeln!(
            s,
            "supplementary {}  match {}  mismatch {}",
            a.supplementary_totals.rows,
            a.supplementary_totals.matches,
            a.supplementary_totals.mismatches
        )
        .unwrap();
    }
    s
}
