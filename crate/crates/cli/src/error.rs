use thiserror::Error;

use ssred::fixture::FixtureError;
use ssred::gw::GwError;
use ssred::ldata::LDataError;
use ssred::reduction::ReductionError;
use ssred::transfer::TransferError;

/// Parse errors exit with 2, everything else with 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{msg}")]
    Parse { code: &'static str, msg: String },
    #[error("{msg}")]
    Domain { code: &'static str, msg: String },
}

impl CliError {
    pub fn parse(code: &'static str, msg: impl Into<String>) -> Self {
        CliError::Parse { code, msg: msg.into() }
    }

    pub fn domain(code: &'static str, msg: impl Into<String>) -> Self {
        CliError::Domain { code, msg: msg.into() }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { code, .. } | CliError::Domain { code, .. } => code,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Domain { .. } => 1,
        }
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        CliError::parse(e.code(), e.to_string())
    }
}

impl From<GwError> for CliError {
    fn from(e: GwError) -> Self {
        let code = match e {
            GwError::Parse(_) => return CliError::parse("E_PARSE", e.to_string()),
            GwError::Infeasible { .. } => "E_INFEASIBLE",
            GwError::ConflictingPrescriptions(_) => "E_CONFLICT",
            GwError::InvalidPrescription(_) => "E_INVALID_PRESCRIPTION",
        };
        CliError::domain(code, e.to_string())
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::BadCertificate(_) | ReductionError::Fixture(_) => CliError::parse(e.code(), e.to_string()),
            _ => CliError::domain(e.code(), e.to_string()),
        }
    }
}

impl From<TransferError> for CliError {
    fn from(e: TransferError) -> Self {
        CliError::domain(e.code(), e.to_string())
    }
}

impl From<LDataError> for CliError {
    fn from(e: LDataError) -> Self {
        CliError::domain("E_LDATA", e.to_string())
    }
}
