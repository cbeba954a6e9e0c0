use std::fmt;

use quiltkit::content::ContentError;
use quiltkit::dessin::DessinError;
use quiltkit::farey::FareyError;
use quiltkit::habiro::HabiroError;
use quiltkit::permgroup::GroupError;
use quiltkit::quiver::QuiverError;
use quiltkit::reptheory::ReptheoryError;

/// Process exit status for each failure class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Validation = 1,
    SizeBound = 2,
    Inconsistent = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Validation,
            message: message.into(),
        }
    }

    pub fn inconsistent(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Inconsistent,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn classify(kind: ExitKind, e: impl fmt::Display) -> CliError {
    CliError {
        kind,
        message: e.to_string(),
    }
}

impl From<FareyError> for CliError {
    fn from(e: FareyError) -> Self {
        classify(ExitKind::Validation, e)
    }
}

impl From<DessinError> for CliError {
    fn from(e: DessinError) -> Self {
        classify(ExitKind::Validation, e)
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        let kind = match e {
            GroupError::SizeBoundExceeded { .. } => ExitKind::SizeBound,
            GroupError::Internal(_) => ExitKind::Inconsistent,
            _ => ExitKind::Validation,
        };
        classify(kind, e)
    }
}

impl From<ReptheoryError> for CliError {
    fn from(e: ReptheoryError) -> Self {
        match e {
            ReptheoryError::Group(g) => g.into(),
            e if e.is_size_bound() => classify(ExitKind::SizeBound, e),
            e => classify(ExitKind::Inconsistent, e),
        }
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        let kind = match e {
            QuiverError::Domain(_) => ExitKind::Validation,
            _ => ExitKind::Inconsistent,
        };
        classify(kind, e)
    }
}

impl From<HabiroError> for CliError {
    fn from(e: HabiroError) -> Self {
        let kind = match e {
            HabiroError::Domain(_)
            | HabiroError::NotSubset(_)
            | HabiroError::InsufficientTruncation { .. } => ExitKind::Validation,
            _ => ExitKind::Inconsistent,
        };
        classify(kind, e)
    }
}

impl From<ContentError> for CliError {
    fn from(e: ContentError) -> Self {
        match e {
            ContentError::Farey(e) => e.into(),
            ContentError::Dessin(e) => e.into(),
            ContentError::Group(e) => e.into(),
            ContentError::Reptheory(e) => e.into(),
            ContentError::Quiver(e) => e.into(),
            e @ ContentError::Inconsistent(_) => classify(ExitKind::Inconsistent, e),
        }
    }
}
