//! Greedy colorings of distance power graphs.
//!
//! The power graph at radius `k` joins distinct vertices at stage-`n`
//! distance at most `k`; a vertex is never adjacent to itself, so radius 0
//! gives the empty graph. Color classes of a proper coloring are exactly the
//! `k`-separated sets used as covers downstream.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, GraphSequence, Stage, VertexId};

/// Which power graph to color: stage of the base sequence plus the distance
/// radius. Recorded as provenance by cover builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerGraphSpec {
    pub stage: Stage,
    pub radius: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("order is not a permutation of the universe: {reason}")]
    InvalidOrder { reason: String },
}

/// Total color assignment over the universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    assignment: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    pub fn color_of(&self, x: VertexId) -> usize {
        self.assignment[x]
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Vertices of color `c`, ascending.
    pub fn class(&self, c: usize) -> Vec<VertexId> {
        (0..self.assignment.len())
            .filter(|&x| self.assignment[x] == c)
            .collect()
    }

    /// All color classes by color index; classes partition the universe.
    pub fn classes(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (x, &c) in self.assignment.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

fn check_order(universe_size: usize, order: &[VertexId]) -> Result<(), ColoringError> {
    if order.len() != universe_size {
        return Err(ColoringError::InvalidOrder {
            reason: format!("length {} != universe size {}", order.len(), universe_size),
        });
    }
    let mut seen = vec![false; universe_size];
    for &x in order {
        if x >= universe_size {
            return Err(ColoringError::InvalidOrder {
                reason: format!("vertex {x} out of range"),
            });
        }
        if seen[x] {
            return Err(ColoringError::InvalidOrder {
                reason: format!("vertex {x} appears twice"),
            });
        }
        seen[x] = true;
    }
    Ok(())
}

/// Colors the power graph greedily along `order`: each vertex takes the least
/// color absent from its already-colored power-graph neighborhood, computed
/// as `ball(x, radius)` minus `x` itself. Uses at most one more color than
/// the largest such neighborhood.
pub fn color_power_graph(
    g: &GraphSequence,
    spec: PowerGraphSpec,
    order: &[VertexId],
) -> Result<Coloring, ColoringError> {
    check_order(g.universe_size(), order)?;
    if g.universe_size() == 0 {
        return Ok(Coloring {
            assignment: Vec::new(),
            num_colors: 0,
        });
    }
    // Validates the stage once up front; per-vertex queries then share it.
    g.ball(spec.stage, order[0], 0)?;
    const UNCOLORED: usize = usize::MAX;
    let mut assignment = vec![UNCOLORED; g.universe_size()];
    let mut num_colors = 0usize;
    let mut forbidden: Vec<u64> = Vec::new();
    for &x in order {
        let ball = g
            .ball(spec.stage, x, spec.radius)
            .expect("stage validated above");
        forbidden.clear();
        forbidden.resize((num_colors + 1).div_ceil(64), 0);
        for y in ball {
            if y != x && assignment[y] != UNCOLORED {
                let c = assignment[y];
                forbidden[c / 64] |= 1 << (c % 64);
            }
        }
        let color = (0..)
            .find(|&c| c / 64 >= forbidden.len() || forbidden[c / 64] & (1 << (c % 64)) == 0)
            .expect("some color is free");
        assignment[x] = color;
        num_colors = num_colors.max(color + 1);
    }
    Ok(Coloring {
        assignment,
        num_colors,
    })
}

/// Ascending vertex order, the default for cover construction.
pub fn ascending_order(universe_size: usize) -> Vec<VertexId> {
    (0..universe_size).collect()
}

/// First pair of distinct members of `set` at stage-`n` distance at most `k`,
/// if any. `None` means the set is `k`-separated.
pub fn find_separation_violation(
    g: &GraphSequence,
    stage: Stage,
    k: usize,
    set: &[VertexId],
) -> Result<Option<(VertexId, VertexId)>, GraphError> {
    let mut member = vec![false; g.universe_size()];
    for &x in set {
        if x >= g.universe_size() {
            return Err(GraphError::VertexOutOfRange {
                vertex: x,
                universe_size: g.universe_size(),
            });
        }
        member[x] = true;
    }
    for &x in set {
        // One truncated search per member beats the quadratic pairwise scan.
        for y in g.ball(stage, x, k)? {
            if y != x && member[y] {
                return Ok(Some((x.min(y), x.max(y))));
            }
        }
    }
    Ok(None)
}

/// Whether every pair of distinct members of `set` has stage-`n` distance
/// strictly greater than `k`.
pub fn verify_separated(
    g: &GraphSequence,
    stage: Stage,
    k: usize,
    set: &[VertexId],
) -> Result<bool, GraphError> {
    Ok(find_separation_violation(g, stage, k, set)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> GraphSequence {
        GraphSequence::new(3, 2, 0, vec![(0, 1, 0), (1, 2, 0), (0, 2, 0)]).unwrap()
    }

    fn path4() -> GraphSequence {
        GraphSequence::new(4, 2, 0, vec![(0, 1, 0), (1, 2, 0), (2, 3, 0)]).unwrap()
    }

    #[test]
    fn triangle_needs_three_colors() {
        let g = triangle();
        let order = ascending_order(3);
        let c = color_power_graph(&g, PowerGraphSpec { stage: 0, radius: 1 }, &order).unwrap();
        assert_eq!(c.num_colors(), 3);
        assert_eq!(c.assignment(), &[0, 1, 2]);
    }

    #[test]
    fn path_greedy_alternates() {
        let g = path4();
        let order = ascending_order(4);
        let c = color_power_graph(&g, PowerGraphSpec { stage: 0, radius: 1 }, &order).unwrap();
        assert_eq!(c.assignment(), &[0, 1, 0, 1]);
        assert_eq!(c.classes(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn radius_zero_gives_one_class() {
        let g = triangle();
        let c = color_power_graph(
            &g,
            PowerGraphSpec { stage: 0, radius: 0 },
            &ascending_order(3),
        )
        .unwrap();
        assert_eq!(c.num_colors(), 1);
        assert_eq!(c.class(0), vec![0, 1, 2]);
    }

    #[test]
    fn order_is_validated() {
        let g = triangle();
        let spec = PowerGraphSpec { stage: 0, radius: 1 };
        assert!(matches!(
            color_power_graph(&g, spec, &[0, 1]),
            Err(ColoringError::InvalidOrder { .. })
        ));
        assert!(matches!(
            color_power_graph(&g, spec, &[0, 1, 1]),
            Err(ColoringError::InvalidOrder { .. })
        ));
    }

    #[test]
    fn order_changes_assignment_but_stays_proper() {
        let g = path4();
        let c = color_power_graph(&g, PowerGraphSpec { stage: 0, radius: 1 }, &[3, 2, 1, 0]).unwrap();
        assert_eq!(c.assignment(), &[1, 0, 1, 0]);
        for class in c.classes() {
            assert!(verify_separated(&g, 0, 1, &class).unwrap());
        }
    }

    #[test]
    fn separation_is_strict() {
        // Path 0-1-2-3-4: {0, 3} has distance exactly 3, so it is
        // 2-separated but not 3-separated.
        let g = GraphSequence::new(5, 2, 0, vec![(0, 1, 0), (1, 2, 0), (2, 3, 0), (3, 4, 0)]).unwrap();
        assert!(verify_separated(&g, 0, 2, &[0, 3]).unwrap());
        assert!(!verify_separated(&g, 0, 3, &[0, 3]).unwrap());
        assert_eq!(
            find_separation_violation(&g, 0, 3, &[0, 3]).unwrap(),
            Some((0, 3))
        );
    }

    #[test]
    fn singletons_and_empty_sets_are_always_separated() {
        let g = triangle();
        assert!(verify_separated(&g, 0, 100, &[]).unwrap());
        assert!(verify_separated(&g, 0, 100, &[2]).unwrap());
    }

    #[test]
    fn classes_are_k_separated() {
        // 6-cycle at radius 2.
        let edges = (0..6).map(|i| (i, (i + 1) % 6, 0)).collect();
        let g = GraphSequence::new(6, 2, 0, edges).unwrap();
        let c = color_power_graph(
            &g,
            PowerGraphSpec { stage: 0, radius: 2 },
            &ascending_order(6),
        )
        .unwrap();
        for class in c.classes() {
            assert!(verify_separated(&g, 0, 2, &class).unwrap());
        }
        // Color count bound: one more than the largest punctured ball.
        let max_ball = (0..6)
            .map(|x| g.ball(0, x, 2).unwrap().len() - 1)
            .max()
            .unwrap();
        assert!(c.num_colors() <= 1 + max_ball);
    }
}
