//! Label-sequence reduction to eventual equality.
//!
//! Every base vertex gets, per stage, the least vertex id of its component.
//! Components only merge, so two base vertices end up in the same final
//! component exactly when their label sequences agree from some stage on.
//! Encoding the labels as fixed-width binary blocks turns that into
//! agreement of bit tails.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphSequence, Stage, VertexId};
use crate::hierarchy::{DisjointSet, Hierarchy};

/// Pairwise verification is quadratic in the base set and refuses above this.
pub const VERIFY_VERTEX_LIMIT: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("label {label} does not fit in {block_width} bits")]
    BlockCapacity { label: usize, block_width: usize },
    #[error("pairwise verification over {vertices} base vertices exceeds the limit of {limit}")]
    VerificationTooLarge { vertices: usize, limit: usize },
    #[error("universe mismatch: graph has {graph}, hierarchy has {hierarchy}")]
    UniverseMismatch { graph: usize, hierarchy: usize },
}

/// Number of binary digits of `v`; zero for `v = 0`.
fn bits(v: usize) -> usize {
    (usize::BITS - v.leading_zeros()) as usize
}

/// Fixed block width for labels drawn from a universe of `n` vertices.
pub fn block_width_for(n: usize) -> usize {
    bits(n.saturating_sub(1)).max(1)
}

/// Per-vertex label sequences over all stages of a hierarchy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelCode {
    vertices: Vec<VertexId>,
    stages: usize,
    block_width: usize,
    /// `reps[i][n]` is the least vertex of `vertices[i]`'s stage-`n` component.
    reps: Vec<Vec<VertexId>>,
}

impl LabelCode {
    /// Sorted base vertices the code is defined on.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of stages, i.e. the length of every label sequence.
    pub fn stages(&self) -> usize {
        self.stages
    }

    pub fn block_width(&self) -> usize {
        self.block_width
    }

    /// Label sequence of vertex `x`, if `x` is in the base set.
    pub fn labels_of(&self, x: VertexId) -> Option<&[VertexId]> {
        let i = self.vertices.binary_search(&x).ok()?;
        Some(&self.reps[i])
    }

    /// Binary encoding of `x`'s label sequence.
    pub fn encode(&self, x: VertexId) -> Option<String> {
        let labels = self.labels_of(x)?;
        Some(encode_binary(labels, self.block_width).expect("width covers the universe"))
    }
}

/// Computes the label sequence of every base vertex by replaying the
/// hierarchy's edge additions through a union-find with least-id tracking.
pub fn label_sequences(h: &Hierarchy) -> LabelCode {
    let vertices = h.base_set().to_vec();
    let stages = h.last_stage() + 1;
    let mut dsu = DisjointSet::new(h.universe_size());
    let mut least: Vec<VertexId> = (0..h.universe_size()).collect();
    let mut reps: Vec<Vec<VertexId>> = vec![Vec::with_capacity(stages); vertices.len()];
    for n in 0..stages {
        for &(u, v) in h.new_edges_at(n) {
            if let Some((survivor, absorbed)) = dsu.union(u, v) {
                least[survivor] = least[survivor].min(least[absorbed]);
            }
        }
        for (i, &x) in vertices.iter().enumerate() {
            reps[i].push(least[dsu.find(x)]);
        }
    }
    LabelCode {
        vertices,
        stages,
        block_width: block_width_for(h.universe_size()),
        reps,
    }
}

/// Concatenates each label as a big-endian `block_width`-bit block.
pub fn encode_binary(labels: &[VertexId], block_width: usize) -> Result<String, ReductionError> {
    let mut out = String::with_capacity(labels.len() * block_width);
    for &label in labels {
        if bits(label) > block_width {
            return Err(ReductionError::BlockCapacity { label, block_width });
        }
        for bit in (0..block_width).rev() {
            out.push(if label >> bit & 1 == 1 { '1' } else { '0' });
        }
    }
    Ok(out)
}

/// First stage from which two label sequences agree forever, if any.
/// Returns `None` when they differ at the last stage.
pub fn agreement_stage(a: &[VertexId], b: &[VertexId]) -> Option<Stage> {
    debug_assert_eq!(a.len(), b.len());
    if a.is_empty() || a.last() != b.last() {
        return None;
    }
    // Walk back over the agreeing suffix.
    let mut n = a.len() - 1;
    while n > 0 && a[n - 1] == b[n - 1] {
        n -= 1;
    }
    Some(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub vertices: usize,
    pub stages: usize,
    pub block_width: usize,
    pub pairs: usize,
    pub related_pairs: usize,
    /// Whether component equality, eventual label agreement, and bit-tail
    /// agreement coincide on every pair.
    pub consistent: bool,
    /// First pair on which some route disagreed, if any.
    pub first_disagreement: Option<(VertexId, VertexId)>,
}

/// Checks, over every pair of base vertices, that three routes agree:
/// final-stage component equality, eventual label agreement, and block
/// alignment of encoded bit tails. Also checks that label agreement is
/// monotone: once equal, sequences stay equal.
pub fn verify_reduction(
    g: &GraphSequence,
    h: &Hierarchy,
) -> Result<ReductionReport, ReductionError> {
    if g.universe_size() != h.universe_size() {
        return Err(ReductionError::UniverseMismatch {
            graph: g.universe_size(),
            hierarchy: h.universe_size(),
        });
    }
    let base = h.base_set();
    if base.len() > VERIFY_VERTEX_LIMIT {
        return Err(ReductionError::VerificationTooLarge {
            vertices: base.len(),
            limit: VERIFY_VERTEX_LIMIT,
        });
    }
    let code = label_sequences(h);
    let mut dsu = DisjointSet::new(h.universe_size());
    for n in 0..=h.last_stage() {
        for &(u, v) in h.new_edges_at(n) {
            dsu.union(u, v);
        }
    }
    let encodings: Vec<String> = base
        .iter()
        .map(|&x| code.encode(x).expect("base vertex"))
        .collect();
    let width = code.block_width();
    let mut pairs = 0usize;
    let mut related = 0usize;
    let mut consistent = true;
    let mut first_disagreement = None;
    'outer: for i in 0..base.len() {
        for j in i + 1..base.len() {
            pairs += 1;
            let (x, y) = (base[i], base[j]);
            let same_component = dsu.find(x) == dsu.find(y);
            let labels_x = code.labels_of(x).expect("base vertex");
            let labels_y = code.labels_of(y).expect("base vertex");
            let agreement = agreement_stage(labels_x, labels_y);
            // Labels must agree on the whole suffix, not just at the end.
            let eventually_equal = match agreement {
                Some(n0) => (n0..labels_x.len()).all(|n| labels_x[n] == labels_y[n]),
                None => false,
            };
            let tails_agree = match agreement {
                Some(n0) => encodings[i][n0 * width..] == encodings[j][n0 * width..],
                None => {
                    // Unrelated pairs differ in the final block.
                    let tail = (labels_x.len() - 1) * width;
                    encodings[i][tail..] != encodings[j][tail..]
                }
            };
            if same_component {
                related += 1;
            }
            if same_component != eventually_equal || !tails_agree {
                consistent = false;
                first_disagreement = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(ReductionReport {
        vertices: base.len(),
        stages: code.stages(),
        block_width: width,
        pairs,
        related_pairs: related,
        consistent,
        first_disagreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::build_hierarchy;
    use crate::schedule::{CoverSequence, GrowthFunction};

    fn two_paths() -> (GraphSequence, Hierarchy) {
        let g = GraphSequence::new(
            7,
            3,
            5,
            vec![(0, 1, 0), (1, 2, 1), (2, 3, 1), (4, 5, 0), (5, 6, 2)],
        )
        .unwrap();
        let f = GrowthFunction::canonical(5, 0);
        let covers = CoverSequence::from_covers(
            7,
            vec![vec![2, 4], vec![1, 5], vec![0, 6], vec![3], vec![], vec![]],
        )
        .unwrap();
        let h = build_hierarchy(&g, &f, &covers, 1).unwrap();
        (g, h)
    }

    #[test]
    fn width_matches_universe() {
        assert_eq!(block_width_for(1), 1);
        assert_eq!(block_width_for(2), 1);
        assert_eq!(block_width_for(4), 2);
        assert_eq!(block_width_for(5), 3);
        assert_eq!(block_width_for(0), 1);
    }

    #[test]
    fn encode_blocks_are_big_endian() {
        assert_eq!(encode_binary(&[3, 1], 2).unwrap(), "1101");
        assert_eq!(encode_binary(&[0], 1).unwrap(), "0");
        assert_eq!(encode_binary(&[5, 0, 2], 3).unwrap(), "101000010");
        assert_eq!(
            encode_binary(&[4], 2),
            Err(ReductionError::BlockCapacity { label: 4, block_width: 2 })
        );
    }

    #[test]
    fn labels_track_component_minimum() {
        let (_, h) = two_paths();
        let code = label_sequences(&h);
        assert_eq!(code.stages(), 6);
        assert_eq!(code.block_width(), 3);
        // Vertex 2 joins {0, 1, 2} at stage 1 and nothing changes after.
        assert_eq!(code.labels_of(2).unwrap(), &[2, 0, 0, 0, 0, 0]);
        // Vertex 6 stays apart until stage 2.
        assert_eq!(code.labels_of(6).unwrap(), &[6, 6, 4, 4, 4, 4]);
        // Vertex 3 joins last.
        assert_eq!(code.labels_of(3).unwrap(), &[3, 3, 3, 0, 0, 0]);
        assert_eq!(code.labels_of(0).unwrap(), &[0; 6]);
        assert!(code.labels_of(7).is_none());
    }

    #[test]
    fn agreement_is_suffix_start() {
        assert_eq!(agreement_stage(&[3, 3, 0], &[2, 0, 0]), Some(2));
        assert_eq!(agreement_stage(&[3, 0, 0], &[2, 0, 0]), Some(1));
        assert_eq!(agreement_stage(&[0, 0, 0], &[0, 0, 0]), Some(0));
        assert_eq!(agreement_stage(&[1, 0, 1], &[1, 0, 0]), None);
        assert_eq!(agreement_stage(&[], &[]), None);
    }

    #[test]
    fn routes_agree_on_two_paths() {
        let (g, h) = two_paths();
        let report = verify_reduction(&g, &h).unwrap();
        assert!(report.consistent);
        assert_eq!(report.vertices, 7);
        assert_eq!(report.pairs, 21);
        // Two final components of sizes 4 and 3: C(4,2) + C(3,2) pairs.
        assert_eq!(report.related_pairs, 6 + 3);
        assert_eq!(report.first_disagreement, None);
    }

    #[test]
    fn encoded_tails_split_relation() {
        let (_, h) = two_paths();
        let code = label_sequences(&h);
        let width = code.block_width();
        let (e2, e3) = (code.encode(2).unwrap(), code.encode(3).unwrap());
        // Related: identical from the join stage's block on.
        assert_eq!(e2[3 * width..], e3[3 * width..]);
        // Unrelated: final blocks differ.
        let e6 = code.encode(6).unwrap();
        assert_ne!(e2[5 * width..], e6[5 * width..]);
    }

    #[test]
    fn verification_refuses_oversized_base() {
        let n = VERIFY_VERTEX_LIMIT + 1;
        let g = GraphSequence::new(n, 1, 0, vec![]).unwrap();
        let f = GrowthFunction::canonical(0, 0);
        let covers = CoverSequence::from_covers(n, vec![(0..n).collect()]).unwrap();
        let h = build_hierarchy(&g, &f, &covers, 1).unwrap();
        assert_eq!(
            verify_reduction(&g, &h),
            Err(ReductionError::VerificationTooLarge { vertices: n, limit: VERIFY_VERTEX_LIMIT })
        );
    }
}
