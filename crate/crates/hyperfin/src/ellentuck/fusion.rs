//! Involution families, the stagewise shrinking pipeline, fusion limits,
//! and the subset bookkeeping that schedules covers.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::format::{content_lines, parse_usize, ParseError};

use super::pgraph::{e0_shrink, PointGraph};
use super::point::{combinations, is_subset, Cylinder, FinitePoint};
use super::EllentuckError;

pub const INVFAM_FORMAT: &str = "invfam v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvFamReadError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] EllentuckError),
}

/// A family of self-inverse maps on depth-`K` points over the ground set
/// `[0, ground_size)`. Points not listed by a map are fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionFamily {
    ground_size: usize,
    depth: usize,
    maps: Vec<BTreeMap<FinitePoint, FinitePoint>>,
}

impl InvolutionFamily {
    /// Builds a family from one move list per involution. Each listed pair
    /// implies its inverse; listing a point twice with different images is
    /// rejected, and so are points of the wrong depth or off the ground set.
    pub fn new(
        ground_size: usize,
        depth: usize,
        moves: Vec<Vec<(FinitePoint, FinitePoint)>>,
    ) -> Result<Self, EllentuckError> {
        if depth == 0 {
            return Err(EllentuckError::ZeroDepth);
        }
        let mut maps: Vec<BTreeMap<FinitePoint, FinitePoint>> =
            vec![BTreeMap::new(); moves.len()];
        for (index, pairs) in moves.into_iter().enumerate() {
            for (from, to) in pairs {
                check_point(&from, depth, ground_size)?;
                check_point(&to, depth, ground_size)?;
                insert_pair(&mut maps[index], index, from, to)?;
            }
        }
        Ok(InvolutionFamily {
            ground_size,
            depth,
            maps,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of involutions.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Image of `p` under involution `index`; unlisted points are fixed.
    pub fn apply(&self, index: usize, p: &FinitePoint) -> FinitePoint {
        self.maps[index].get(p).cloned().unwrap_or_else(|| p.clone())
    }

    /// The matching between each moved point and its image.
    pub fn graph(&self, index: usize) -> PointGraph {
        let edges: Vec<(FinitePoint, FinitePoint)> = self.maps[index]
            .iter()
            .filter(|(from, to)| from < to)
            .map(|(from, to)| (from.clone(), to.clone()))
            .collect();
        PointGraph::new(self.depth, 1, edges).expect("involutions move points elsewhere")
    }

    pub fn parse_str(text: &str) -> Result<Self, InvFamReadError> {
        let mut lines = content_lines(text);
        let (line, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, format!("empty input, expected `{INVFAM_FORMAT}`")))?;
        if header != INVFAM_FORMAT {
            return Err(
                ParseError::new(line, format!("expected `{INVFAM_FORMAT}`, got `{header}`")).into(),
            );
        }
        let mut header_value = |name: &str| -> Result<usize, ParseError> {
            let (line, content) = lines
                .next()
                .ok_or_else(|| ParseError::new(0, format!("missing `{name}` line")))?;
            match content.split_whitespace().collect::<Vec<_>>().as_slice() {
                [word, value] if *word == name => {
                    parse_usize(line, value, &format!("a number for `{name}`"))
                }
                _ => Err(ParseError::new(line, format!("expected `{name} <n>`"))),
            }
        };
        let ground_size = header_value("ground")?;
        let depth = header_value("depth")?;
        if depth == 0 {
            return Err(InvFamReadError::Invalid(EllentuckError::ZeroDepth));
        }
        let mut maps: Vec<BTreeMap<FinitePoint, FinitePoint>> = Vec::new();
        for (line, text) in lines {
            let tokens: Vec<&str> = text.split_whitespace().collect();
            match tokens.as_slice() {
                ["map", index, from, "->", to] => {
                    let index = parse_usize(line, index, "involution index")?;
                    let from = parse_point(line, from)?;
                    let to = parse_point(line, to)?;
                    check_point(&from, depth, ground_size).map_err(InvFamReadError::Invalid)?;
                    check_point(&to, depth, ground_size).map_err(InvFamReadError::Invalid)?;
                    if index >= maps.len() {
                        maps.resize(index + 1, BTreeMap::new());
                    }
                    insert_pair(&mut maps[index], index, from, to)
                        .map_err(InvFamReadError::Invalid)?;
                }
                _ => {
                    return Err(ParseError::new(
                        line,
                        "expected `map <i> <point> -> <point>`",
                    )
                    .into())
                }
            }
        }
        Ok(InvolutionFamily {
            ground_size,
            depth,
            maps,
        })
    }

    /// Canonical text form; parsing it back reproduces the family. Indices
    /// without moved points are kept alive by an explicit fixed point.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{INVFAM_FORMAT}\nground {}\ndepth {}\n",
            self.ground_size, self.depth
        );
        for (index, map) in self.maps.iter().enumerate() {
            let mut wrote = false;
            for (from, to) in map {
                if from < to {
                    out.push_str(&format!("map {index} {from} -> {to}\n"));
                    wrote = true;
                }
            }
            if !wrote && self.depth <= self.ground_size {
                let fixed = FinitePoint::from_sorted((0..self.depth).collect());
                out.push_str(&format!("map {index} {fixed} -> {fixed}\n"));
            }
        }
        out
    }
}

fn check_point(p: &FinitePoint, depth: usize, ground: usize) -> Result<(), EllentuckError> {
    if p.depth() != depth {
        return Err(EllentuckError::WrongDepth {
            point: p.clone(),
            expected: depth,
        });
    }
    if let Some(&e) = p.elements().iter().find(|&&e| e >= ground) {
        return Err(EllentuckError::ElementOutOfGround { element: e, ground });
    }
    Ok(())
}

fn insert_pair(
    map: &mut BTreeMap<FinitePoint, FinitePoint>,
    index: usize,
    from: FinitePoint,
    to: FinitePoint,
) -> Result<(), EllentuckError> {
    if from == to {
        // An explicit fixed point: registers the index, maps nothing.
        return Ok(());
    }
    for (a, b) in [(&from, &to), (&to, &from)] {
        if map.get(a).is_some_and(|existing| existing != b) {
            return Err(EllentuckError::ConflictingImage {
                index,
                point: a.clone(),
            });
        }
    }
    map.insert(from.clone(), to.clone());
    map.insert(to, from);
    Ok(())
}

fn parse_point(line: usize, token: &str) -> Result<FinitePoint, InvFamReadError> {
    let elements: Vec<usize> = token
        .split(',')
        .map(|t| parse_usize(line, t, "point element"))
        .collect::<Result<_, _>>()?;
    FinitePoint::new(elements).map_err(InvFamReadError::Invalid)
}

/// One stage of a fusion run: the full current set and its frozen prefix
/// (the `stage` smallest elements).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionState {
    pub stage: usize,
    pub reservoir: Vec<usize>,
    pub frozen: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PipelineOutcome {
    /// Every stage found a witness; the final surviving set.
    Found { final_set: Vec<usize> },
    /// The exhaustive search at `stage` found no witness of the requested
    /// size. A legitimate result, not an error.
    NotFound { stage: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineRun {
    pub trace: Vec<FusionState>,
    pub outcome: PipelineOutcome,
}

/// Runs one shrink stage per involution: at stage `n` the `n` smallest
/// surviving elements freeze into the stem and the reservoir shrinks to a
/// witness for involution `n`'s graph. The per-stage target is clamped to
/// the available reservoir; it must leave enough room for later stems, and
/// the number of involutions may not exceed the point depth.
pub fn fusion_pipeline(
    invs: &InvolutionFamily,
    per_stage_target: usize,
) -> Result<PipelineRun, EllentuckError> {
    let depth = invs.depth();
    let stages = invs.len();
    if stages > depth {
        return Err(EllentuckError::PipelineDepthExceeded { stages, depth });
    }
    let mut current: Vec<usize> = (0..invs.ground_size()).collect();
    let mut trace = Vec::with_capacity(stages + 1);
    for stage in 0..stages {
        let frozen = current[..stage].to_vec();
        trace.push(FusionState {
            stage,
            reservoir: current.clone(),
            frozen: frozen.clone(),
        });
        let tail = current[stage..].to_vec();
        let target = per_stage_target.min(tail.len());
        let needed = depth - stage;
        if target < needed {
            return Err(EllentuckError::ReservoirExhausted {
                stage,
                target,
                needed,
            });
        }
        let cylinder =
            Cylinder::new(frozen.clone(), tail, depth).expect("split of a sorted set");
        match e0_shrink(&cylinder, &invs.graph(stage), target) {
            Some(kept) => {
                current = frozen;
                current.extend(kept);
            }
            None => {
                return Ok(PipelineRun {
                    trace,
                    outcome: PipelineOutcome::NotFound { stage },
                });
            }
        }
    }
    trace.push(FusionState {
        stage: stages,
        reservoir: current.clone(),
        frozen: current[..stages].to_vec(),
    });
    let run = PipelineRun {
        trace,
        outcome: PipelineOutcome::Found { final_set: current },
    };
    assert!(
        verify_pipeline(invs, &run),
        "stagewise witnesses must imply the final property"
    );
    Ok(run)
}

/// Re-checks a successful run from scratch: every involution edge between
/// depth-`K` points inside the final set must differ only inside the stem
/// that was frozen at that involution's stage. Runs that ended NOT-FOUND
/// promise nothing and pass vacuously.
pub fn verify_pipeline(invs: &InvolutionFamily, run: &PipelineRun) -> bool {
    let final_set = match &run.outcome {
        PipelineOutcome::NotFound { .. } => return true,
        PipelineOutcome::Found { final_set } => final_set,
    };
    if run.trace.len() != invs.len() + 1 {
        return false;
    }
    for stage in 0..invs.len() {
        let stem = &run.trace[stage].frozen;
        for elements in combinations(final_set, invs.depth()) {
            let b = FinitePoint::new(elements).expect("combinations are increasing");
            let c = invs.apply(stage, &b);
            if c != b && c.within(final_set) {
                let diff = b.symmetric_difference(&c);
                if !diff.iter().all(|e| stem.binary_search(e).is_ok()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Intersection of all reservoirs joined with every frozen prefix, after
/// validating the fusion invariants: frozen prefixes are the `stage`
/// smallest elements, stages advance by one, reservoirs only shrink, and
/// each transition preserves the prefix frozen so far. The result is
/// checked to sit inside every reservoir.
pub fn fusion_limit(trace: &[FusionState]) -> Result<Vec<usize>, EllentuckError> {
    let Some(first) = trace.first() else {
        return Ok(Vec::new());
    };
    for state in trace {
        if state.stage > state.reservoir.len()
            || state.frozen != state.reservoir[..state.stage]
        {
            return Err(EllentuckError::FusionViolation { stage: state.stage });
        }
    }
    for pair in trace.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        if next.stage != cur.stage + 1
            || !is_subset(&next.reservoir, &cur.reservoir)
            || next.reservoir[..cur.stage] != cur.reservoir[..cur.stage]
        {
            return Err(EllentuckError::FusionViolation { stage: next.stage });
        }
    }
    let mut limit: Vec<usize> = first.reservoir.clone();
    for state in &trace[1..] {
        limit.retain(|e| state.reservoir.binary_search(e).is_ok());
    }
    let mut with_frozen: BTreeSet<usize> = limit.into_iter().collect();
    for state in trace {
        with_frozen.extend(state.frozen.iter().copied());
    }
    let limit: Vec<usize> = with_frozen.into_iter().collect();
    for state in trace {
        if !is_subset(&limit, &state.reservoir) {
            return Err(EllentuckError::FusionViolation { stage: state.stage });
        }
    }
    Ok(limit)
}

/// Cumulative counts and stagewise enumerations of the subsets of each
/// frozen prefix. `counts[n]` sums the subset counts of stages before `n`;
/// with prefixes of sizes `0, 1, 2, …` this is `2^n - 1`. The subsets are
/// listed explicitly, in increasing bitmask order, exactly as a cover
/// scheduler would consume them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnBookkeeping {
    pub counts: Vec<usize>,
    pub enumerations: Vec<Vec<Vec<usize>>>,
}

pub fn kn_bookkeeping(trace: &[FusionState]) -> KnBookkeeping {
    let mut enumerations = Vec::with_capacity(trace.len());
    for state in trace {
        let frozen = &state.frozen;
        let mut subsets = Vec::with_capacity(1usize << frozen.len());
        for mask in 0u64..(1u64 << frozen.len()) {
            let subset: Vec<usize> = frozen
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            subsets.push(subset);
        }
        enumerations.push(subsets);
    }
    let mut counts = Vec::with_capacity(trace.len() + 1);
    counts.push(0);
    for subsets in &enumerations {
        counts.push(counts.last().unwrap() + subsets.len());
    }
    KnBookkeeping {
        counts,
        enumerations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(elements: &[usize]) -> FinitePoint {
        FinitePoint::new(elements.to_vec()).unwrap()
    }

    /// All moves of the involution swapping ground elements `a` and `b`
    /// inside depth-`k` points over `[0, n)`.
    fn element_swap(n: usize, k: usize, a: usize, b: usize) -> Vec<(FinitePoint, FinitePoint)> {
        let ground: Vec<usize> = (0..n).collect();
        combinations(&ground, k)
            .filter_map(|elements| {
                let p = FinitePoint::new(elements).unwrap();
                if p.contains(a) && !p.contains(b) {
                    let q = p.minus(&[a]).union(&[b]);
                    Some((p, q))
                } else {
                    None
                }
            })
            .collect()
    }

    #[test]
    fn parse_applies_inverses_automatically() {
        let text = "invfam v1\nground 6\ndepth 2\nmap 0 0,1 -> 2,3\n";
        let fam = InvolutionFamily::parse_str(text).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.apply(0, &pt(&[0, 1])), pt(&[2, 3]));
        assert_eq!(fam.apply(0, &pt(&[2, 3])), pt(&[0, 1]));
        assert_eq!(fam.apply(0, &pt(&[0, 2])), pt(&[0, 2]));
        let g = fam.graph(0);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.max_degree(), 1);
    }

    #[test]
    fn parse_rejects_bad_input() {
        let conflict =
            "invfam v1\nground 6\ndepth 2\nmap 0 0,1 -> 2,3\nmap 0 0,1 -> 4,5\n";
        assert!(matches!(
            InvolutionFamily::parse_str(conflict),
            Err(InvFamReadError::Invalid(EllentuckError::ConflictingImage { index: 0, .. }))
        ));
        // Restating the inverse is consistent, not a conflict.
        let restated =
            "invfam v1\nground 6\ndepth 2\nmap 0 0,1 -> 2,3\nmap 0 2,3 -> 0,1\n";
        assert!(InvolutionFamily::parse_str(restated).is_ok());
        let decreasing = "invfam v1\nground 6\ndepth 2\nmap 0 3,1 -> 2,4\n";
        assert!(matches!(
            InvolutionFamily::parse_str(decreasing),
            Err(InvFamReadError::Invalid(EllentuckError::NotIncreasing { .. }))
        ));
        let out_of_ground = "invfam v1\nground 4\ndepth 2\nmap 0 0,1 -> 2,9\n";
        assert!(matches!(
            InvolutionFamily::parse_str(out_of_ground),
            Err(InvFamReadError::Invalid(EllentuckError::ElementOutOfGround {
                element: 9,
                ground: 4
            }))
        ));
        let wrong_depth = "invfam v1\nground 6\ndepth 2\nmap 0 0,1,2 -> 3,4,5\n";
        assert!(matches!(
            InvolutionFamily::parse_str(wrong_depth),
            Err(InvFamReadError::Invalid(EllentuckError::WrongDepth { .. }))
        ));
        let bad_arrow = "invfam v1\nground 6\ndepth 2\nmap 0 0,1 => 2,3\n";
        match InvolutionFamily::parse_str(bad_arrow) {
            Err(InvFamReadError::Syntax(e)) => assert_eq!(e.line, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(InvolutionFamily::parse_str("covers v1\n").is_err());
    }

    #[test]
    fn text_roundtrip_keeps_identity_indices() {
        let fam = InvolutionFamily::new(
            6,
            2,
            vec![vec![(pt(&[0, 1]), pt(&[2, 3]))], vec![]],
        )
        .unwrap();
        let text = fam.to_text();
        assert!(text.contains("map 1 0,1 -> 0,1"));
        let back = InvolutionFamily::parse_str(&text).unwrap();
        assert_eq!(back, fam);
    }

    #[test]
    fn identity_family_shrinks_by_targets_only() {
        let fam = InvolutionFamily::new(6, 3, vec![vec![], vec![]]).unwrap();
        let run = fusion_pipeline(&fam, 3).unwrap();
        assert_eq!(
            run.outcome,
            PipelineOutcome::Found { final_set: vec![0, 1, 2] }
        );
        assert_eq!(run.trace.len(), 3);
        assert_eq!(run.trace[0].reservoir, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(run.trace[1].reservoir, vec![0, 1, 2]);
        assert_eq!(run.trace[1].frozen, vec![0]);
        assert_eq!(run.trace[2].frozen, vec![0, 1]);
        assert!(verify_pipeline(&fam, &run));
    }

    #[test]
    fn swap_involution_loses_one_element() {
        let fam = InvolutionFamily::new(6, 1, vec![vec![(pt(&[0]), pt(&[1]))]]).unwrap();
        let run = fusion_pipeline(&fam, 3).unwrap();
        let PipelineOutcome::Found { final_set } = &run.outcome else {
            panic!("expected success");
        };
        assert!(!(final_set.contains(&0) && final_set.contains(&1)));
        assert_eq!(final_set, &vec![0, 2, 3]);
    }

    #[test]
    fn pipeline_depth_and_reservoir_limits() {
        let fam = InvolutionFamily::new(6, 1, vec![vec![], vec![]]).unwrap();
        assert_eq!(
            fusion_pipeline(&fam, 3),
            Err(EllentuckError::PipelineDepthExceeded { stages: 2, depth: 1 })
        );
        let fam = InvolutionFamily::new(6, 3, vec![vec![], vec![], vec![]]).unwrap();
        // Stage 0 would keep only 2 elements, but depth-3 points need 3.
        assert_eq!(
            fusion_pipeline(&fam, 2),
            Err(EllentuckError::ReservoirExhausted { stage: 0, target: 2, needed: 3 })
        );
    }

    #[test]
    fn two_swap_fixture_stops_at_the_depth_gap() {
        // Swapping 0 and 1 at stage 1 produces edges whose symmetric
        // difference {0, 1} cannot fit in the one-element stem, and the
        // exhaustive search honestly reports that no witness exists.
        let fam = InvolutionFamily::new(
            14,
            3,
            vec![element_swap(14, 3, 3, 4), element_swap(14, 3, 0, 1)],
        )
        .unwrap();
        let run = fusion_pipeline(&fam, 6).unwrap();
        assert_eq!(run.outcome, PipelineOutcome::NotFound { stage: 1 });
        assert_eq!(run.trace.len(), 2);
        // Stage 0 did succeed: it dropped 4, the later half of its swap.
        assert_eq!(run.trace[1].reservoir, vec![0, 1, 2, 3, 5, 6]);
        // The partial trace is still a valid fusion prefix.
        let limit = fusion_limit(&run.trace).unwrap();
        for state in &run.trace {
            assert!(is_subset(&limit, &state.reservoir));
        }
    }

    #[test]
    fn three_swap_regression_fixture_succeeds() {
        // By stage 2 the stem {0, 1} is wide enough to absorb the swap of
        // 0 and 1, so the run succeeds with that swap's edges surviving.
        let fam = InvolutionFamily::new(
            14,
            3,
            vec![
                element_swap(14, 3, 3, 4),
                element_swap(14, 3, 4, 7),
                element_swap(14, 3, 0, 1),
            ],
        )
        .unwrap();
        let run = fusion_pipeline(&fam, 6).unwrap();
        assert!(verify_pipeline(&fam, &run));
        let PipelineOutcome::Found { final_set } = &run.outcome else {
            panic!("expected success, got {:?}", run.outcome);
        };
        assert_eq!(final_set, &vec![0, 1, 2, 3, 5, 6]);
        assert!(!(final_set.contains(&3) && final_set.contains(&4)));
        // Non-vacuous: an edge of the last swap survives inside the final
        // set, differing exactly in the frozen stem.
        let b = pt(&[0, 2, 3]);
        let c = fam.apply(2, &b);
        assert_eq!(c, pt(&[1, 2, 3]));
        assert!(b.within(final_set) && c.within(final_set));
        assert_eq!(run.trace[2].frozen, vec![0, 1]);
        let limit = fusion_limit(&run.trace).unwrap();
        for state in &run.trace {
            assert!(is_subset(&limit, &state.reservoir));
        }
        assert_eq!(&limit, final_set);
    }

    #[test]
    fn constant_trace_limit_is_first_reservoir() {
        let reservoir: Vec<usize> = (0..6).collect();
        let trace: Vec<FusionState> = (0..3)
            .map(|stage| FusionState {
                stage,
                reservoir: reservoir.clone(),
                frozen: reservoir[..stage].to_vec(),
            })
            .collect();
        assert_eq!(fusion_limit(&trace).unwrap(), reservoir);
    }

    #[test]
    fn limit_keeps_frozen_and_survivors() {
        let trace = vec![
            FusionState { stage: 0, reservoir: vec![0, 1, 2, 3, 4], frozen: vec![] },
            FusionState { stage: 1, reservoir: vec![0, 1, 2, 4], frozen: vec![0] },
            FusionState { stage: 2, reservoir: vec![0, 1, 4], frozen: vec![0, 1] },
        ];
        assert_eq!(fusion_limit(&trace).unwrap(), vec![0, 1, 4]);
    }

    #[test]
    fn limit_rejects_invariant_violations() {
        // Reservoir grows at stage 1.
        let growing = vec![
            FusionState { stage: 0, reservoir: vec![0, 1], frozen: vec![] },
            FusionState { stage: 1, reservoir: vec![0, 1, 2], frozen: vec![0] },
        ];
        assert_eq!(
            fusion_limit(&growing),
            Err(EllentuckError::FusionViolation { stage: 1 })
        );
        // Frozen prefix is not the stage smallest elements.
        let bad_frozen = vec![FusionState {
            stage: 1,
            reservoir: vec![0, 1, 2],
            frozen: vec![1],
        }];
        assert_eq!(
            fusion_limit(&bad_frozen),
            Err(EllentuckError::FusionViolation { stage: 1 })
        );
        // The element frozen at stage 1 disappears at stage 2.
        let dropped_prefix = vec![
            FusionState { stage: 0, reservoir: vec![0, 1, 2, 3], frozen: vec![] },
            FusionState { stage: 1, reservoir: vec![0, 2, 3], frozen: vec![0] },
            FusionState { stage: 2, reservoir: vec![2, 3], frozen: vec![2, 3] },
        ];
        assert_eq!(
            fusion_limit(&dropped_prefix),
            Err(EllentuckError::FusionViolation { stage: 2 })
        );
    }

    #[test]
    fn subset_counts_follow_powers_of_two() {
        let trace: Vec<FusionState> = (0..4)
            .map(|stage| FusionState {
                stage,
                reservoir: (0..6).collect(),
                frozen: (0..stage).collect(),
            })
            .collect();
        let kn = kn_bookkeeping(&trace);
        assert_eq!(kn.counts, vec![0, 1, 3, 7, 15]);
        // Stage 2 enumerates the four subsets of {0, 1} in mask order.
        assert_eq!(
            kn.enumerations[2],
            vec![vec![], vec![0], vec![1], vec![0, 1]]
        );
        assert_eq!(kn.enumerations[3].len(), 8);
    }
}
