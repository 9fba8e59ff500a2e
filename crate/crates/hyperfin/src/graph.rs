//! Increasing sequences of bounded-degree graphs on a fixed finite vertex set.
//!
//! A [`GraphSequence`] assigns every edge a birth stage; the graph at stage
//! `n` consists of all edges born at or before `n`, so the sequence is
//! increasing by construction. The declared per-stage degree bound is checked
//! by [`GraphSequence::validate`], not enforced at construction, so that
//! violating instances can be built and then reported on.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::format::{content_lines, parse_usize, ParseError};

/// Dense vertex identifier, always `< universe_size`.
pub type VertexId = usize;

/// Stage index, always `<= horizon` for the sequence at hand.
pub type Stage = usize;

/// Undirected edge with its birth stage. Canonical form keeps `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub birth: Stage,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex} (birth {birth})")]
    SelfLoop { vertex: VertexId, birth: Stage },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: VertexId, v: VertexId },
    #[error("vertex {vertex} out of range (universe size {universe_size})")]
    VertexOutOfRange {
        vertex: VertexId,
        universe_size: usize,
    },
    #[error("edge ({u}, {v}) born at {birth}, beyond horizon {horizon}")]
    BirthBeyondHorizon {
        u: VertexId,
        v: VertexId,
        birth: Stage,
        horizon: Stage,
    },
    #[error("stage {stage} beyond horizon {horizon}")]
    StageBeyondHorizon { stage: Stage, horizon: Stage },
}

/// Failure while reading the `graphseq v1` text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphReadError {
    /// The text is not well-formed `graphseq v1`.
    #[error(transparent)]
    Syntax(#[from] ParseError),
    /// The text parses but describes a structurally invalid sequence.
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

/// Invariant violation found by [`GraphSequence::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `vertex` exceeds the declared degree bound from `stage` on.
    DegreeBound {
        vertex: VertexId,
        stage: Stage,
        degree: usize,
        bound: usize,
    },
    SelfLoop {
        vertex: VertexId,
    },
    DuplicateEdge {
        u: VertexId,
        v: VertexId,
    },
    VertexOutOfRange {
        vertex: VertexId,
    },
    BirthBeyondHorizon {
        u: VertexId,
        v: VertexId,
        birth: Stage,
    },
}

/// Outcome of checking every declared invariant. Violations are findings,
/// not failures: an invalid sequence still answers queries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Immutable increasing graph sequence. All queries take the stage explicitly;
/// stages beyond the declared horizon are range errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSequence {
    universe_size: usize,
    degree_bound: usize,
    horizon: Stage,
    edges: Vec<Edge>,
    /// Per-vertex incidence sorted by `(birth, neighbor)`; the prefix with
    /// `birth <= n` is exactly the stage-`n` neighborhood.
    adj: Vec<Vec<(Stage, VertexId)>>,
}

impl GraphSequence {
    /// Builds a sequence from raw `(u, v, birth)` triples. Rejects self-loops,
    /// duplicate pairs, out-of-range vertices and births beyond the horizon;
    /// the degree bound is declared only and left to [`Self::validate`].
    pub fn new(
        universe_size: usize,
        degree_bound: usize,
        horizon: Stage,
        raw_edges: Vec<(VertexId, VertexId, Stage)>,
    ) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (u, v, birth) in raw_edges {
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u, birth });
            }
            for w in [u, v] {
                if w >= universe_size {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        universe_size,
                    });
                }
            }
            if birth > horizon {
                return Err(GraphError::BirthBeyondHorizon {
                    u,
                    v,
                    birth,
                    horizon,
                });
            }
            let (u, v) = (u.min(v), u.max(v));
            edges.push(Edge { u, v, birth });
        }
        edges.sort_unstable();
        for pair in edges.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(GraphError::DuplicateEdge {
                    u: pair[0].u,
                    v: pair[0].v,
                });
            }
        }
        let mut adj = vec![Vec::new(); universe_size];
        for e in &edges {
            adj[e.u].push((e.birth, e.v));
            adj[e.v].push((e.birth, e.u));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(GraphSequence {
            universe_size,
            degree_bound,
            horizon,
            edges,
            adj,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn horizon(&self) -> Stage {
        self.horizon
    }

    /// Edges in canonical `(u, v, birth)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Largest birth stage present, or `None` for an edgeless sequence.
    pub fn max_birth(&self) -> Option<Stage> {
        self.edges.iter().map(|e| e.birth).max()
    }

    /// The same sequence observed through a different horizon. Fails when
    /// an edge birth lies beyond the new horizon.
    pub fn with_horizon(&self, horizon: Stage) -> Result<GraphSequence, GraphError> {
        GraphSequence::new(
            self.universe_size,
            self.degree_bound,
            horizon,
            self.edges.iter().map(|e| (e.u, e.v, e.birth)).collect(),
        )
    }

    fn check_stage(&self, stage: Stage) -> Result<(), GraphError> {
        if stage > self.horizon {
            return Err(GraphError::StageBeyondHorizon {
                stage,
                horizon: self.horizon,
            });
        }
        Ok(())
    }

    fn check_vertex(&self, vertex: VertexId) -> Result<(), GraphError> {
        if vertex >= self.universe_size {
            return Err(GraphError::VertexOutOfRange {
                vertex,
                universe_size: self.universe_size,
            });
        }
        Ok(())
    }

    /// Stage-`n` neighborhood without boundary checks; callers validate first.
    pub(crate) fn neighbors_in(&self, stage: Stage, x: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let list = &self.adj[x];
        let end = list.partition_point(|&(birth, _)| birth <= stage);
        list[..end].iter().map(|&(_, w)| w)
    }

    /// Neighbors of `x` in the stage-`n` graph, ascending.
    pub fn neighbors(&self, stage: Stage, x: VertexId) -> Result<Vec<VertexId>, GraphError> {
        self.check_stage(stage)?;
        self.check_vertex(x)?;
        let mut out: Vec<VertexId> = self.neighbors_in(stage, x).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Vertices within distance `radius` of `x` in the stage-`n` graph
    /// (including `x`), ascending. Truncated breadth-first search.
    pub fn ball(&self, stage: Stage, x: VertexId, radius: usize) -> Result<Vec<VertexId>, GraphError> {
        self.check_stage(stage)?;
        self.check_vertex(x)?;
        let mut seen = vec![false; self.universe_size];
        let mut out = vec![x];
        seen[x] = true;
        let mut queue = VecDeque::from([(x, 0usize)]);
        while let Some((y, d)) = queue.pop_front() {
            if d == radius {
                continue;
            }
            for w in self.neighbors_in(stage, y) {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    queue.push_back((w, d + 1));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Whether the stage-`n` distance between `x` and `y` is at most `k`.
    /// Disconnected pairs fail for every finite `k`.
    pub fn dist_leq(&self, stage: Stage, x: VertexId, y: VertexId, k: usize) -> Result<bool, GraphError> {
        self.check_stage(stage)?;
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Ok(true);
        }
        let mut seen = vec![false; self.universe_size];
        seen[x] = true;
        let mut queue = VecDeque::from([(x, 0usize)]);
        while let Some((z, d)) = queue.pop_front() {
            if d == k {
                continue;
            }
            for w in self.neighbors_in(stage, z) {
                if w == y {
                    return Ok(true);
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back((w, d + 1));
                }
            }
        }
        Ok(false)
    }

    /// Checks every declared invariant and reports violations. The degree
    /// bound is checked at every stage; one finding per offending vertex,
    /// at the earliest stage where its degree first exceeds the bound.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for e in &self.edges {
            if e.u == e.v {
                violations.push(Violation::SelfLoop { vertex: e.u });
            }
            for w in [e.u, e.v] {
                if w >= self.universe_size {
                    violations.push(Violation::VertexOutOfRange { vertex: w });
                }
            }
            if e.birth > self.horizon {
                violations.push(Violation::BirthBeyondHorizon {
                    u: e.u,
                    v: e.v,
                    birth: e.birth,
                });
            }
        }
        for pair in self.edges.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                violations.push(Violation::DuplicateEdge {
                    u: pair[0].u,
                    v: pair[0].v,
                });
            }
        }
        // Degrees grow with the stage, so the earliest violating stage for a
        // vertex is the birth of its (bound+1)-th incident edge.
        for (x, list) in self.adj.iter().enumerate() {
            if list.len() > self.degree_bound {
                let stage = list[self.degree_bound].0;
                let degree = list.partition_point(|&(birth, _)| birth <= stage);
                violations.push(Violation::DegreeBound {
                    vertex: x,
                    stage,
                    degree,
                    bound: self.degree_bound,
                });
            }
        }
        ValidationReport { violations }
    }

    /// Reads the `graphseq v1` text format. Unknown directives are errors.
    pub fn parse_str(text: &str) -> Result<Self, GraphReadError> {
        let mut lines = content_lines(text);
        let (line, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, "empty input, expected `graphseq v1`"))?;
        if header != "graphseq v1" {
            return Err(ParseError::new(line, format!("expected `graphseq v1`, got `{header}`")).into());
        }
        let mut header_value = |name: &str| -> Result<usize, ParseError> {
            let (line, content) = lines
                .next()
                .ok_or_else(|| ParseError::new(0, format!("missing `{name}` line")))?;
            let mut tokens = content.split_whitespace();
            match tokens.next() {
                Some(t) if t == name => {}
                other => {
                    return Err(ParseError::new(
                        line,
                        format!("expected `{name}`, got `{}`", other.unwrap_or("")),
                    ))
                }
            }
            let value = tokens
                .next()
                .ok_or_else(|| ParseError::new(line, format!("`{name}` takes one value")))?;
            if tokens.next().is_some() {
                return Err(ParseError::new(line, format!("`{name}` takes one value")));
            }
            parse_usize(line, value, &format!("a number for `{name}`"))
        };
        let universe_size = header_value("vertices")?;
        let degree_bound = header_value("degree")?;
        let horizon = header_value("horizon")?;
        let mut raw_edges = Vec::new();
        for (line, content) in lines {
            let mut tokens = content.split_whitespace();
            match tokens.next() {
                Some("edge") => {}
                Some(other) => {
                    return Err(ParseError::new(line, format!("unknown directive `{other}`")).into())
                }
                None => unreachable!("blank lines are filtered"),
            }
            let fields: Vec<&str> = tokens.collect();
            if fields.len() != 3 {
                return Err(ParseError::new(line, "`edge` takes `<u> <v> <birth>`").into());
            }
            let u = parse_usize(line, fields[0], "a vertex id")?;
            let v = parse_usize(line, fields[1], "a vertex id")?;
            let birth = parse_usize(line, fields[2], "a birth stage")?;
            raw_edges.push((u, v, birth));
        }
        Ok(GraphSequence::new(universe_size, degree_bound, horizon, raw_edges)?)
    }

    /// Writes the `graphseq v1` text format, edges in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::from("graphseq v1\n");
        out.push_str(&format!("vertices {}\n", self.universe_size));
        out.push_str(&format!("degree {}\n", self.degree_bound));
        out.push_str(&format!("horizon {}\n", self.horizon));
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.u, e.v, e.birth));
        }
        out
    }
}

/// Version tag of the graph text format, echoed in reports.
pub const GRAPHSEQ_FORMAT: &str = "graphseq v1";

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle6() -> GraphSequence {
        let edges = (0..6).map(|i| (i, (i + 1) % 6, 0)).collect();
        GraphSequence::new(6, 2, 0, edges).unwrap()
    }

    #[test]
    fn construction_rejects_structural_errors() {
        assert!(matches!(
            GraphSequence::new(3, 2, 0, vec![(1, 1, 0)]),
            Err(GraphError::SelfLoop { vertex: 1, .. })
        ));
        assert!(matches!(
            GraphSequence::new(3, 2, 0, vec![(0, 3, 0)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(
            GraphSequence::new(3, 2, 1, vec![(0, 1, 2)]),
            Err(GraphError::BirthBeyondHorizon { birth: 2, .. })
        ));
        // (1, 0) and (0, 1) are the same unordered pair.
        assert!(matches!(
            GraphSequence::new(3, 2, 1, vec![(0, 1, 0), (1, 0, 1)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        ));
    }

    #[test]
    fn neighbors_follow_births() {
        let g = GraphSequence::new(4, 3, 3, vec![(0, 1, 0), (0, 2, 2), (0, 3, 3)]).unwrap();
        assert_eq!(g.neighbors(0, 0).unwrap(), vec![1]);
        assert_eq!(g.neighbors(1, 0).unwrap(), vec![1]);
        assert_eq!(g.neighbors(2, 0).unwrap(), vec![1, 2]);
        assert_eq!(g.neighbors(3, 0).unwrap(), vec![1, 2, 3]);
        assert!(matches!(
            g.neighbors(4, 0),
            Err(GraphError::StageBeyondHorizon { stage: 4, horizon: 3 })
        ));
    }

    #[test]
    fn ball_on_cycle() {
        let g = cycle6();
        assert_eq!(g.ball(0, 0, 0).unwrap(), vec![0]);
        assert_eq!(g.ball(0, 0, 1).unwrap(), vec![0, 1, 5]);
        assert_eq!(g.ball(0, 0, 2).unwrap(), vec![0, 1, 2, 4, 5]);
        // Radius 3 reaches the whole 6-cycle.
        assert_eq!(g.ball(0, 0, 3).unwrap(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn dist_leq_on_path() {
        let g = GraphSequence::new(5, 2, 0, vec![(0, 1, 0), (1, 2, 0), (2, 3, 0), (3, 4, 0)]).unwrap();
        assert!(g.dist_leq(0, 0, 4, 4).unwrap());
        assert!(!g.dist_leq(0, 0, 4, 3).unwrap());
        assert!(g.dist_leq(0, 2, 2, 0).unwrap());
        // Disconnected pair: never within any finite distance.
        let h = GraphSequence::new(4, 2, 0, vec![(0, 1, 0), (2, 3, 0)]).unwrap();
        assert!(!h.dist_leq(0, 0, 3, 1_000_000).unwrap());
    }

    #[test]
    fn validate_reports_degree_violation_at_first_bad_stage() {
        // Star with 5 leaves, declared bound 4: center 0 exceeds at the birth
        // of its 5th edge.
        let edges = (1..=5).map(|leaf| (0, leaf, leaf - 1)).collect();
        let g = GraphSequence::new(6, 4, 4, edges).unwrap();
        let report = g.validate();
        assert_eq!(
            report.violations,
            vec![Violation::DegreeBound {
                vertex: 0,
                stage: 4,
                degree: 5,
                bound: 4,
            }]
        );
        assert!(!report.is_valid());
        assert!(cycle6().validate().is_valid());
    }

    #[test]
    fn parse_roundtrip() {
        let g = GraphSequence::new(4, 3, 2, vec![(0, 1, 0), (2, 1, 2)]).unwrap();
        let text = g.to_text();
        let back = GraphSequence::parse_str(&text).unwrap();
        assert_eq!(g, back);
        assert_eq!(back.neighbors(2, 1).unwrap(), vec![0, 2]);
    }

    #[test]
    fn parse_accepts_comments_and_blanks() {
        let text = "# generated\ngraphseq v1\nvertices 3\ndegree 2\nhorizon 1\n\n# edges\nedge 0 1 0\nedge 1 2 1\n";
        let g = GraphSequence::parse_str(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.universe_size(), 3);
    }

    #[test]
    fn parse_rejects_unknown_directive_with_line_number() {
        let text = "graphseq v1\nvertices 3\ndegree 2\nhorizon 1\nvertex 0 1 0\n";
        match GraphSequence::parse_str(text) {
            Err(GraphReadError::Syntax(e)) => {
                assert_eq!(e.line, 5);
                assert!(e.message.contains("unknown directive"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_bad_header_and_bad_numbers() {
        assert!(matches!(
            GraphSequence::parse_str("graphseq v2\n"),
            Err(GraphReadError::Syntax(_))
        ));
        assert!(matches!(
            GraphSequence::parse_str("graphseq v1\nvertices x\ndegree 2\nhorizon 0\n"),
            Err(GraphReadError::Syntax(_))
        ));
        assert!(matches!(
            GraphSequence::parse_str("graphseq v1\nvertices 2\ndegree 2\nhorizon 0\nedge 0 0 0\n"),
            Err(GraphReadError::Invalid(GraphError::SelfLoop { .. }))
        ));
    }

    #[test]
    fn empty_universe_is_fine() {
        let g = GraphSequence::new(0, 1, 0, vec![]).unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(g.to_text(), "graphseq v1\nvertices 0\ndegree 1\nhorizon 0\n");
    }
}
