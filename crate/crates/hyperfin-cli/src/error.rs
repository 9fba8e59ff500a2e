//! Failures bucketed by exit code: unreadable or unparseable input exits 2,
//! violated invariants and infeasible configurations exit 3. Diagnostics are
//! tagged with the module they come from.

use std::fmt;

use hyperfin::coloring::ColoringError;
use hyperfin::ellentuck::{EllentuckError, InvFamReadError};
use hyperfin::format::ParseError;
use hyperfin::generate::GenerateError;
use hyperfin::graph::{GraphError, GraphReadError};
use hyperfin::hierarchy::HierarchyError;
use hyperfin::reduction::ReductionError;
use hyperfin::schedule::{CoverReadError, GrowthViolation, ScheduleError};

#[derive(Debug)]
pub enum CliError {
    /// Missing, unreadable, or syntactically malformed input.
    Input(String),
    /// Well-formed input that breaks a module invariant or asks for an
    /// infeasible configuration.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input(message.into())
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        CliError::Invariant(message.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Invariant(m) => f.write_str(m),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

macro_rules! invariant_from {
    ($($ty:ty => $module:literal),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Invariant(format!(concat!($module, ": {}"), e))
            }
        })*
    };
}

invariant_from! {
    GraphError => "graph",
    ColoringError => "coloring",
    ScheduleError => "schedule",
    GrowthViolation => "schedule",
    HierarchyError => "hierarchy",
    ReductionError => "reduction",
    EllentuckError => "ellentuck",
    GenerateError => "generate",
}

impl From<GraphReadError> for CliError {
    fn from(e: GraphReadError) -> Self {
        match e {
            GraphReadError::Syntax(p) => CliError::Input(format!("graph: {p}")),
            GraphReadError::Invalid(g) => g.into(),
        }
    }
}

impl From<CoverReadError> for CliError {
    fn from(e: CoverReadError) -> Self {
        match e {
            CoverReadError::Syntax(p) => CliError::Input(format!("covers: {p}")),
            CoverReadError::Invalid(s) => s.into(),
        }
    }
}

impl From<InvFamReadError> for CliError {
    fn from(e: InvFamReadError) -> Self {
        match e {
            InvFamReadError::Syntax(p) => CliError::Input(format!("invfam: {p}")),
            InvFamReadError::Invalid(inner) => inner.into(),
        }
    }
}
