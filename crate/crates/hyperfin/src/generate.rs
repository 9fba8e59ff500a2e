//! Seeded random instances for tests and the CLI.
//!
//! Generation is a rejection process driven by a ChaCha stream cipher, so
//! identical seeds give identical instances on every platform.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ellentuck::{combinations, FinitePoint, PointGraph};
use crate::graph::GraphSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("degree bound must be at least 1 to place edges")]
    ZeroDegreeBound,
    #[error("stages must be at least 1")]
    ZeroStages,
    #[error(
        "cannot place {requested} edges with {vertices} vertices under degree bound {degree_bound}"
    )]
    Infeasible {
        requested: usize,
        vertices: usize,
        degree_bound: usize,
    },
}

/// Draws a random growing graph sequence: `edges` distinct edges with
/// uniform endpoints and uniform births below `stages`, rejecting any draw
/// that would push a vertex past the degree bound. Degrees only grow with
/// the stage, so enforcing the bound on final degrees enforces it at every
/// stage. The declared horizon is `stages - 1`.
pub fn random_graph_sequence(
    seed: u64,
    vertices: usize,
    degree_bound: usize,
    stages: usize,
    edges: usize,
) -> Result<GraphSequence, GenerateError> {
    if stages == 0 {
        return Err(GenerateError::ZeroStages);
    }
    if edges > 0 && degree_bound == 0 {
        return Err(GenerateError::ZeroDegreeBound);
    }
    let infeasible = GenerateError::Infeasible {
        requested: edges,
        vertices,
        degree_bound,
    };
    if edges > vertices.saturating_mul(degree_bound) / 2
        || edges > vertices.saturating_mul(vertices.saturating_sub(1)) / 2
    {
        return Err(infeasible);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; vertices];
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    let mut list: Vec<(usize, usize, usize)> = Vec::with_capacity(edges);
    let mut attempts = 0usize;
    let attempt_cap = 200 * edges + 1000;
    while list.len() < edges {
        attempts += 1;
        if attempts > attempt_cap {
            return Err(infeasible);
        }
        let u = rng.gen_range(0..vertices);
        let v = rng.gen_range(0..vertices);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.contains(&key) || degree[u] == degree_bound || degree[v] == degree_bound {
            continue;
        }
        let birth = rng.gen_range(0..stages);
        present.insert(key);
        degree[u] += 1;
        degree[v] += 1;
        list.push((key.0, key.1, birth));
    }
    Ok(
        GraphSequence::new(vertices, degree_bound, stages - 1, list)
            .expect("rejection keeps the sequence structurally valid"),
    )
}

/// Draws a random graph on points over `[0, ground)`: `edges` distinct
/// edges whose endpoints have equal random depths in `1..=depth`, degree
/// bound enforced by rejection. Shallower edges exercise the stem-stripped
/// lift queries of the star construction.
pub fn random_point_graph(
    seed: u64,
    ground: usize,
    depth: usize,
    degree_bound: usize,
    edges: usize,
) -> Result<PointGraph, GenerateError> {
    if edges > 0 && degree_bound == 0 {
        return Err(GenerateError::ZeroDegreeBound);
    }
    if depth == 0 || ground == 0 {
        return Err(GenerateError::ZeroStages);
    }
    let infeasible = GenerateError::Infeasible {
        requested: edges,
        vertices: ground,
        degree_bound,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ground_elements: Vec<usize> = (0..ground).collect();
    let mut chosen: HashSet<(FinitePoint, FinitePoint)> = HashSet::new();
    let mut degree: std::collections::HashMap<FinitePoint, usize> =
        std::collections::HashMap::new();
    let mut attempts = 0usize;
    let attempt_cap = 200 * edges + 1000;
    let draw_point = |rng: &mut ChaCha8Rng, d: usize| -> FinitePoint {
        let mut picked: Vec<usize> = Vec::with_capacity(d);
        let mut pool = ground_elements.clone();
        for _ in 0..d {
            let i = rng.gen_range(0..pool.len());
            picked.push(pool.swap_remove(i));
        }
        picked.sort_unstable();
        FinitePoint::new(picked).expect("distinct draws sorted")
    };
    while chosen.len() < edges {
        attempts += 1;
        if attempts > attempt_cap {
            return Err(infeasible);
        }
        let d = rng.gen_range(1..=depth.min(ground));
        let a = draw_point(&mut rng, d);
        let b = draw_point(&mut rng, d);
        if a == b {
            continue;
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if chosen.contains(&key)
            || degree.get(&key.0).copied().unwrap_or(0) == degree_bound
            || degree.get(&key.1).copied().unwrap_or(0) == degree_bound
        {
            continue;
        }
        *degree.entry(key.0.clone()).or_insert(0) += 1;
        *degree.entry(key.1.clone()).or_insert(0) += 1;
        chosen.insert(key);
    }
    let mut list: Vec<(FinitePoint, FinitePoint)> = chosen.into_iter().collect();
    list.sort();
    PointGraph::new(depth, degree_bound, list)
        .map_err(|_| GenerateError::Infeasible {
            requested: edges,
            vertices: ground,
            degree_bound,
        })
}

/// All depth-`k` points over `[0, ground)`, in lexicographic order.
pub fn all_points(ground: usize, k: usize) -> Vec<FinitePoint> {
    let elements: Vec<usize> = (0..ground).collect();
    combinations(&elements, k)
        .map(|e| FinitePoint::new(e).expect("combinations are increasing"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_generation_is_deterministic() {
        let a = random_graph_sequence(42, 60, 3, 5, 50).unwrap();
        let b = random_graph_sequence(42, 60, 3, 5, 50).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        let c = random_graph_sequence(43, 60, 3, 5, 50).unwrap();
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn generated_sequences_respect_the_bound_everywhere() {
        let g = random_graph_sequence(7, 100, 4, 8, 150).unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(g.horizon(), 7);
        assert!(g.edges().iter().all(|e| e.birth < 8));
    }

    #[test]
    fn degree_bound_one_gives_a_partial_matching() {
        let g = random_graph_sequence(1, 40, 1, 1, 15).unwrap();
        let mut seen = vec![0usize; 40];
        for e in g.edges() {
            seen[e.u] += 1;
            seen[e.v] += 1;
        }
        assert!(seen.iter().all(|&d| d <= 1));
    }

    #[test]
    fn empty_universe_generates_empty_file() {
        let g = random_graph_sequence(0, 0, 2, 1, 0).unwrap();
        assert_eq!(g.universe_size(), 0);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn infeasible_requests_are_rejected() {
        assert!(matches!(
            random_graph_sequence(0, 4, 1, 1, 3),
            Err(GenerateError::Infeasible { .. })
        ));
        assert!(matches!(
            random_graph_sequence(0, 4, 0, 1, 1),
            Err(GenerateError::ZeroDegreeBound)
        ));
        assert!(matches!(
            random_graph_sequence(0, 4, 2, 0, 1),
            Err(GenerateError::ZeroStages)
        ));
    }

    #[test]
    fn point_graphs_are_deterministic_and_bounded() {
        let a = random_point_graph(9, 10, 3, 2, 12).unwrap();
        let b = random_point_graph(9, 10, 3, 2, 12).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 12);
        assert!(a.max_degree() <= 2);
        assert!(a.degree_violation().is_none());
        assert!(a
            .edges()
            .iter()
            .all(|(p, q)| p.depth() == q.depth() && p.depth() <= 3));
    }

    #[test]
    fn all_points_counts_binomially() {
        assert_eq!(all_points(5, 2).len(), 10);
        assert_eq!(all_points(4, 4).len(), 1);
        assert_eq!(all_points(3, 4).len(), 0);
    }
}
