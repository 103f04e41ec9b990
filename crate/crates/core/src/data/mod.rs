//! Canonical data types and their CSV/JSON ingestion.
//!
//! Every parser validates its output: a value returned from this module
//! satisfies the invariants of its type, otherwise a structured [`Error`]
//! describes the first offending row, block or field.
//!
//! [`Error`]: crate::Error

mod coincidence;
mod counts;
mod membership;
pub mod reference;
mod scop;

pub use coincidence::{parse_coincidence, Block, CoincidenceTable, Measurement, Outcome};
pub use counts::{parse_count_datasets, CountDataset};
pub use membership::{
    parse_membership_table, records_to_csv, records_to_json, MembershipRecord, TableFormat,
    MEMBERSHIP_COLUMNS,
};
pub use scop::{parse_scop, scop_transition, ScopModel, ScopModelBuilder};

use crate::{Error, Result};

pub(crate) fn check_probability(subject: &str, name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::validation(
            subject,
            format!("{name} = {value} is not a probability in [0, 1]"),
        ));
    }
    Ok(())
}

/// True when `bytes` holds nothing but whitespace.
pub(crate) fn is_blank(bytes: &[u8]) -> bool {
    bytes.iter().all(|b| b.is_ascii_whitespace())
}
