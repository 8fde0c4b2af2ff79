//! Verification campaigns with machine-readable reports.

mod gamma;
mod report;
mod suites;
mod theorem_a;

pub use gamma::sweep_gamma;
pub use report::{Case, CaseStatus, Totals, VerificationReport};
pub use suites::{check_row_pair, run_property_suites, signed_power_scan, SuiteConfig};
pub use theorem_a::certify_theorem_a;
