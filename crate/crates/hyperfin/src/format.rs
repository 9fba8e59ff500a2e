//! Shared plumbing for the line-oriented text formats.

use serde::Serialize;
use thiserror::Error;

/// Syntax-level failure while reading a text artifact. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Yields `(line_number, content)` for lines that carry content, skipping
/// blank lines and `#` comments. Line numbers are 1-based over the raw input.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Parses one token as `usize`, reporting `what` was expected on failure.
pub fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("expected {what}, got `{token}`")))
}
