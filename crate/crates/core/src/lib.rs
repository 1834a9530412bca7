//! Represented and excluded integers of diagonal positive definite quadratic
//! forms of rank at most four.
//!
//! The crate has two halves that are meant to be compared against each other:
//!
//! * a local half ([`padic`], [`local`]) that decides representability over
//!   the p-adic integers and turns the finitely many locally excluded square
//!   classes into a union of admissible arithmetic progressions, and
//! * a global half ([`enumerate`]) that sieves the values the form actually
//!   takes on integer vectors up to a bound.
//!
//! [`regularity`] puts the two together, and [`progressions`] supplies the
//! set algebra of progressions including the minimal number of admissible
//! progressions needed to write an excluded set.

pub mod enumerate;
pub mod error;
pub mod form;
pub mod local;
pub mod padic;
pub mod progressions;
pub mod regularity;

mod bitset;

pub use enumerate::{
    excluded_upto, represented_upto, verify_union_prefix, PrefixVerdict, RepresentedSet,
    VerdictStatus, Witness, WitnessKind,
};
pub use error::{Error, Result};
pub use form::DiagonalForm;
pub use local::{
    excluded_squareclasses, genus_excluded_union, jordan_exponent, locally_represents, LocalReport,
};
pub use padic::{
    class_to_progressions, ord, same_squareclass, squareclass_of, SquareClass, UnitTag,
};
pub use progressions::{
    is_admissible, minimal_cover, minimal_cover_over, refine, union_contains, union_subset,
    unions_equal, CoverCertificate, CoverResult, Progression, ProgressionUnion,
};
pub use regularity::{family_lr, family_lr_union, regularity_report, RegularityReport, Verdict};
