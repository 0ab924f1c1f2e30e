//! Named symmetric spaces and tables, their verification, and the decision
//! pipeline for compact Clifford–Klein forms.

mod checks;
mod data;
mod decide;
mod verify;

pub use checks::{check_spin_triple, check_triple, verify_o8c, CheckItem, Report, Status};
pub use data::{
    eval_constraint, Catalog, Claim, ConeSpec, ConeTemplate, Criterion, EntryTemplate, RootTemplate, SpinTripleRow,
    SymmetricSpaceEntry, TangentialRow, BUILTIN_CATALOG, CATALOG_VERSION,
};
pub use decide::{
    decide, decide_entry, space_form_status, tangential_space_form_status, Curvature, DecisionRecord, Verdict,
};
pub use verify::{clifford_abbrev, verify_tables, VerificationSummary};
