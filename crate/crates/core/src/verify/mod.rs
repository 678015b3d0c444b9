//! Independent checks of the library against the published statements.

mod claims;
mod seifert;

pub use claims::{run_claim, ClaimId, ScanRange, ScanResult};
pub use seifert::{oracle_signature, seifert_matrix_torus, SeifertMatrix, ORACLE_MAX};
