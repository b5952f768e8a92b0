use thiserror::Error;

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error(transparent)]
    Core(#[from] pinwheel_core::Error),
    #[error("{0}")]
    Schema(String),
    #[error("patch has no tiles")]
    EmptyPatch,
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl ForgeError {
    pub fn name(&self) -> &'static str {
        match self {
            ForgeError::Core(e) => e.name(),
            ForgeError::Schema(_) => "SchemaError",
            ForgeError::EmptyPatch => "EmptyPatch",
            ForgeError::Usage(_) => "UsageError",
            ForgeError::Io(_) => "IoError",
            ForgeError::Json(_) => "SchemaError",
            ForgeError::Csv(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, ForgeError>;

pub(crate) fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(ForgeError::Schema(msg.into()))
}
