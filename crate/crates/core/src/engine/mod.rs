//! Constructive versions of the exact-sequence lemmas and coherence
//! theorems, plus seeded audits.

mod audit;
mod coherent;
mod extension;
mod lemmas;

use thiserror::Error;

use crate::cert::Inconclusive;
use crate::module::ModuleError;

pub use audit::{
    chase_audit, formula_audit, formula_input, formula_ring, s_noetherian_sample_check,
    AuditConfig, AuditReport, ConditionRow, Discrepancy, FormulaAuditReport, FormulaRow,
    StrictInstance,
};
pub use coherent::{
    cs_implies_s_derivation, exccs_kernel_cert, find_csfp, fp_scoherent_cert, free_scoherent_cert,
    ExccsResult, PullbackData,
};
pub use extension::{ExtensionData, ExtensionError};
pub use lemmas::{cap_compose, compose_sfp, kernel_s_finite, quotient_sfp, CapComposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Inconclusive(#[from] Inconclusive),
    #[error("input mismatch: {0}")]
    Mismatch(&'static str),
    #[error("the module is not finitely generated")]
    NotFinitelyGenerated,
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
}
