use std::fmt;
use std::process::ExitCode;

use coincidence_core::Error;

/// Exit status categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Io,
    Schema,
    Dimension,
    Transversality,
    Overflow,
}

impl Category {
    pub fn code(self) -> u8 {
        match self {
            Category::Io => 1,
            Category::Schema => 2,
            Category::Dimension => 3,
            Category::Transversality => 4,
            Category::Overflow => 5,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub category: Category,
    pub message: String,
}

impl Failure {
    pub fn io(message: impl Into<String>) -> Self {
        Self { category: Category::Io, message: message.into() }
    }

    pub fn schema(message: impl Into<String>) -> Self {
        Self { category: Category::Schema, message: message.into() }
    }

    pub fn dimension(message: impl Into<String>) -> Self {
        Self { category: Category::Dimension, message: message.into() }
    }

    /// Wraps a core error raised while processing `field`.
    pub fn core(field: &str, e: Error) -> Self {
        let category = match e {
            Error::RankMismatch { .. }
            | Error::RankTooLarge(_)
            | Error::ArityMismatch { .. }
            | Error::DimensionMismatch(_) => Category::Dimension,
            Error::NonTransverse => Category::Transversality,
            Error::IntegerOverflow(_) => Category::Overflow,
            Error::GroupMismatch(_)
            | Error::IndexOutOfRange { .. }
            | Error::UnknownIdentifier(_)
            | Error::InvalidInput(_) => Category::Schema,
        };
        Self { category, message: format!("{field}: {e}") }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.category.code())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Failure {
    pub fn with_detail(mut self, detail: impl AsRef<str>) -> Self {
        self.message.push_str(" (");
        self.message.push_str(detail.as_ref());
        self.message.push(')');
        self
    }
}
