//! Verification suites, parameter-table reproduction and reports for
//! affine symplectic Grassmann codes.

pub mod error;
pub mod report;
pub mod suites;
pub mod tables;

pub use error::{Result, VerifyError};
pub use report::{emit, Check, Format, Parameters, Source, Status, VerificationReport};
pub use suites::{run_lemma_checks, SuiteParams, SUITES};
pub use tables::{run_verify_tables, table_csv, TableRow, TableRun};
