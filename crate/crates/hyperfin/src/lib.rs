//! Finite-scale certificates for equivalence relations generated by growing
//! bounded-degree graph sequences.
//!
//! The library builds and checks the chain of artifacts that witnesses such
//! a relation is tame at every finite stage:
//!
//! * [`graph`]: increasing graph sequences with per-stage degree bounds;
//! * [`coloring`]: greedy power-graph colorings whose classes are separated
//!   sets;
//! * [`schedule`]: growth functions and cover schedules (region sweeps and
//!   full cycles);
//! * [`hierarchy`]: the nested edge sets driven by covers, with component
//!   diameter certificates, capture and unique-cover-point checks;
//! * [`reduction`]: component-representative label codes and their binary
//!   encoding, verified to respect tail equality;
//! * [`ellentuck`]: the combinatorial side at finite depth: cylinders,
//!   monochromatic shrinking, star graphs, involution pipelines and fusion
//!   bookkeeping;
//! * [`generate`]: seeded random instances for tests and the CLI.

pub mod coloring;
pub mod ellentuck;
pub mod format;
pub mod generate;
pub mod graph;
pub mod hierarchy;
pub mod reduction;
pub mod schedule;
