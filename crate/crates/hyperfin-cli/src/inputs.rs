//! File access and the auxiliary line-oriented input formats.
//!
//! Three small formats belong to the CLI itself. All of them skip blank
//! lines and `#` comments and open with a version header:
//!
//! * `order v1` — one vertex id per line; must list a permutation of the
//!   graph universe.
//! * `regions v1` — `region <i>: v1 v2 ...` lines, indices contiguous from
//!   zero; regions need not be disjoint or exhaustive.
//! * `growth v1` — one radius value per line; the sequence must satisfy the
//!   growth recurrence `f(n+1) >= max(f(n) + 2, 2 * (f(n) + 1))`, which is
//!   checked after parsing.

use std::fs;

use hyperfin::format::{content_lines, parse_usize, ParseError};
use hyperfin::graph::{GraphSequence, VertexId};
use hyperfin::schedule::GrowthFunction;

use crate::error::CliError;

pub const ORDER_FORMAT: &str = "order v1";
pub const REGIONS_FORMAT: &str = "regions v1";
pub const GROWTH_FORMAT: &str = "growth v1";

pub fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))
}

pub fn write_file(path: &str, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::input(format!("{path}: {e}")))
}

/// Consumes the header line and checks it against `expected`.
fn expect_header<'a, I>(lines: &mut I, expected: &str) -> Result<(), ParseError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    match lines.next() {
        Some((_, header)) if header == expected => Ok(()),
        Some((line, header)) => Err(ParseError::new(
            line,
            format!("expected `{expected}`, got `{header}`"),
        )),
        None => Err(ParseError::new(
            1,
            format!("empty input, expected `{expected}`"),
        )),
    }
}

/// Parses lines holding exactly one number each, after the header.
fn parse_value_lines(text: &str, header: &str, what: &str) -> Result<Vec<usize>, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, header)?;
    let mut values = Vec::new();
    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        let token = tokens.next().expect("content lines are nonempty");
        if tokens.next().is_some() {
            return Err(ParseError::new(line, format!("expected one {what} per line")));
        }
        values.push(parse_usize(line, token, what)?);
    }
    Ok(values)
}

/// Reads an `order v1` file. Whether the ids form a permutation of the
/// universe is checked by the coloring itself.
pub fn parse_order(text: &str) -> Result<Vec<VertexId>, ParseError> {
    parse_value_lines(text, ORDER_FORMAT, "a vertex id")
}

/// Reads a `growth v1` file. The growth recurrence is enforced by the
/// caller via [`GrowthFunction::validate`].
pub fn parse_growth(text: &str) -> Result<GrowthFunction, ParseError> {
    Ok(GrowthFunction::from_values(parse_value_lines(
        text,
        GROWTH_FORMAT,
        "a growth value",
    )?))
}

/// Reads a `regions v1` file: `region <i>: v1 v2 ...` lines after the
/// header, indices contiguous from zero.
pub fn parse_regions(text: &str) -> Result<Vec<Vec<VertexId>>, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, REGIONS_FORMAT)?;
    let mut regions: Vec<Vec<VertexId>> = Vec::new();
    for (line, content) in lines {
        let (head, tail) = content
            .split_once(':')
            .ok_or_else(|| ParseError::new(line, "expected `region <i>: ...`"))?;
        let mut head_tokens = head.split_whitespace();
        if head_tokens.next() != Some("region") {
            return Err(ParseError::new(line, "expected `region <i>: ...`"));
        }
        let index_token = head_tokens
            .next()
            .ok_or_else(|| ParseError::new(line, "`region` needs an index"))?;
        if head_tokens.next().is_some() {
            return Err(ParseError::new(line, "`region` takes one index"));
        }
        let index = parse_usize(line, index_token, "a region index")?;
        if index != regions.len() {
            return Err(ParseError::new(
                line,
                format!("expected region index {}, got {index}", regions.len()),
            ));
        }
        let mut vertices = Vec::new();
        for token in tail.split_whitespace() {
            vertices.push(parse_usize(line, token, "a vertex id")?);
        }
        regions.push(vertices);
    }
    Ok(regions)
}

/// Default padding before the first sweep: enough to push every cover past
/// the edge births it must witness, and at least one stage.
pub fn default_start_offset(g: &GraphSequence) -> usize {
    g.max_birth().unwrap_or(0).max(1)
}
