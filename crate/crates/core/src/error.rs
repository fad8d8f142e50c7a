use std::fmt;

/// A text-format error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }

    /// Shifts the reported position by `offset`, for errors raised on a
    /// substring.
    pub fn offset(mut self, offset: usize) -> Self {
        self.position += offset;
        self
    }

    pub fn at_line(self, line: usize) -> Self {
        ParseError { position: self.position, message: format!("line {line}: {}", self.message) }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at offset {})", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}
