use lochness_core::resonance::ResonanceError;
use lochness_core::ribbon::RibbonError;
use lochness_core::surgery::SurgeryError;
use lochness_core::unfold::UnfoldError;
use lochness_core::AngleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// 2 for bad input or I/O, 3 for a failed invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<AngleError> for CliError {
    fn from(e: AngleError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ResonanceError> for CliError {
    fn from(e: ResonanceError) -> Self {
        match e {
            ResonanceError::Overflow | ResonanceError::NotUnimodular => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<RibbonError> for CliError {
    fn from(e: RibbonError) -> Self {
        match e {
            RibbonError::LiftingLaw { .. }
            | RibbonError::NonIntegerGenus { .. }
            | RibbonError::VoltageNotAntisymmetric(_)
            | RibbonError::VoltageOutsideGroup(_)
            | RibbonError::FormulaNotInteger(_) => CliError::Internal(e.to_string()),
            RibbonError::Resonance(r) => r.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<SurgeryError> for CliError {
    fn from(e: SurgeryError) -> Self {
        match e {
            SurgeryError::GenusZero { .. }
            | SurgeryError::OverlappingTranslates(..)
            | SurgeryError::Disconnected { .. }
            | SurgeryError::SeveralIntegral { .. } => CliError::Internal(e.to_string()),
            SurgeryError::Ribbon(r) => r.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<UnfoldError> for CliError {
    fn from(e: UnfoldError) -> Self {
        match e {
            UnfoldError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}
