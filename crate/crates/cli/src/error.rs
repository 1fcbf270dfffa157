use std::fmt;

use calabi_core::calabi::CalabiError;
use calabi_core::laurent::LaurentError;
use calabi_core::mesh::MeshError;
use calabi_core::profile::ProfileError;
use calabi_core::qh::AlgebraError;
use calabi_core::reeb::ReebError;
use serde::Serialize;

/// Validation failures exit with 2, broken internal invariants with 3.
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Serialize)]
pub struct CliError {
    pub error: &'static str,
    pub reason: String,
    #[serde(skip)]
    pub code: i32,
}

impl CliError {
    pub fn validation(error: &'static str, reason: impl Into<String>) -> Self {
        Self {
            error,
            reason: reason.into(),
            code: EXIT_VALIDATION,
        }
    }

    pub fn internal(error: &'static str, reason: impl Into<String>) -> Self {
        Self {
            error,
            reason: reason.into(),
            code: EXIT_INTERNAL,
        }
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        Self::validation("IoError", format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.error, self.reason)
    }
}

impl From<MeshError> for CliError {
    fn from(e: MeshError) -> Self {
        Self::validation(e.kind(), e.to_string())
    }
}

impl From<ReebError> for CliError {
    fn from(e: ReebError) -> Self {
        match e {
            ReebError::Mesh(m) => m.into(),
            ReebError::InternalTopology(_) => Self::internal("InternalTopology", e.to_string()),
            ReebError::InvalidTree(_) => Self::internal("InvalidTree", e.to_string()),
        }
    }
}

impl From<CalabiError> for CliError {
    fn from(e: CalabiError) -> Self {
        match e {
            CalabiError::Reeb(r) => r.into(),
            CalabiError::ZeroNorm => Self::validation("ZeroNorm", e.to_string()),
            CalabiError::Domain(_) => Self::validation("DomainError", e.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let kind = match e {
            AlgebraError::DimensionMismatch { .. } => "DimensionMismatch",
            AlgebraError::DegeneratePairing => "DegeneratePairing",
            AlgebraError::NotInvertible => "NotInvertible",
            AlgebraError::UnknownName(_) => "UnknownName",
            AlgebraError::Invalid(_) => "InvalidAlgebra",
            AlgebraError::Parse(_) => "ParseError",
        };
        Self::validation(kind, e.to_string())
    }
}

impl From<LaurentError> for CliError {
    fn from(e: LaurentError) -> Self {
        Self::validation("ParseError", e.to_string())
    }
}

impl From<ProfileError> for CliError {
    fn from(e: ProfileError) -> Self {
        Self::validation("InvalidProfile", e.to_string())
    }
}
