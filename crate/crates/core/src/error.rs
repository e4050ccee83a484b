use thiserror::Error;

use crate::quiver::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid quiver: {0}")]
    Validation(String),
    #[error("quiver is not of simply-laced Dynkin type: {0}")]
    NotDynkin(String),
    #[error("quiver has an oriented cycle through vertex {0}")]
    NotAcyclic(VertexId),
    #[error("vector support does not match the quiver")]
    SupportMismatch,
    #[error("translation quiver window too small: {0}")]
    WindowTooSmall(String),
    #[error("morphisms are not composable: {0}")]
    Composability(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("not an almost complete tilting object: {0}")]
    NotAlmostComplete(String),
    #[error("not a tilting object: {0}")]
    NotTilting(String),
    #[error("not a collection of modules: {0}")]
    NotAModuleCollection(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("negative Ext dimension for {0}")]
    NegativeExt(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI and the HTTP service.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse_error",
            Error::Validation(_) => "validation_error",
            Error::NotDynkin(_) => "not_dynkin",
            Error::NotAcyclic(_) => "not_acyclic",
            Error::SupportMismatch => "support_mismatch",
            Error::WindowTooSmall(_) => "window_too_small",
            Error::Composability(_) => "composability_error",
            Error::UnknownObject(_) => "unknown_object",
            Error::NotAlmostComplete(_) => "not_almost_complete",
            Error::NotTilting(_) => "not_tilting",
            Error::NotAModuleCollection(_) => "not_a_module_collection",
            Error::VerificationFailed(_) => "verification_failed",
            Error::NegativeExt(_) => "negative_ext",
            Error::Internal(_) => "internal_error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
