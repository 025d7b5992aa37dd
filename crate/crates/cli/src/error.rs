use std::fmt;

use cpn_core::projector::ProjectorError;
use cpn_core::quadrature::QuadratureError;
use cpn_core::report::ReportError;
use cpn_core::surface::SurfaceError;
use serde::Serialize;

/// Failure classes, each with its own process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Validation,
    Certificate,
    Numerical,
}

impl Kind {
    pub fn exit_code(self) -> i32 {
        match self {
            Kind::Validation => 2,
            Kind::Certificate => 3,
            Kind::Numerical => 4,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        Self { kind: Kind::Validation, message: msg.into() }
    }

    pub fn certificate(msg: impl Into<String>) -> Self {
        Self { kind: Kind::Certificate, message: msg.into() }
    }

    /// One-line JSON diagnostic.
    pub fn diagnostic(&self) -> String {
        #[derive(Serialize)]
        struct Diag<'a> {
            schema_version: u32,
            status: Kind,
            exit_code: i32,
            message: &'a str,
        }
        serde_json::to_string(&Diag {
            schema_version: cpn_core::SCHEMA_VERSION,
            status: self.kind,
            exit_code: self.kind.exit_code(),
            message: &self.message,
        })
        .expect("diagnostic serializes")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::validation(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::validation(format!("json: {e}"))
    }
}

impl From<ProjectorError> for CliError {
    fn from(e: ProjectorError) -> Self {
        let kind = match e {
            ProjectorError::TowerInvariant(_) | ProjectorError::NotSolution | ProjectorError::NonTermination(_) => {
                Kind::Certificate
            }
            _ => Kind::Validation,
        };
        Self { kind, message: e.to_string() }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::Projector(p) => p.into(),
            other => Self::validation(other.to_string()),
        }
    }
}

impl From<QuadratureError> for CliError {
    fn from(e: QuadratureError) -> Self {
        let kind = match e {
            QuadratureError::NonConvergence { .. } => Kind::Numerical,
            QuadratureError::NonReal { .. } => Kind::Certificate,
            QuadratureError::Surface(s) => return s.into(),
            QuadratureError::Pole { .. } | QuadratureError::Options(_) => Kind::Validation,
        };
        Self { kind, message: e.to_string() }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Surface(s) => s.into(),
            ReportError::Quadrature(q) => q.into(),
        }
    }
}
