//! Separation schedules: growth functions, cover sequences, and the region
//! sweep that decides which color class becomes the stage-`n` cover.
//!
//! Radii follow the recurrence `f(n+1) >= max(f(n)+2, 2*(f(n)+1))`, which
//! doubles quickly; values saturate at [`RADIUS_CAP`] so arithmetic stays
//! exact. Any radius at or above the cap exceeds every distance realizable
//! in memory, so saturation does not change which pairs count as separated.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{ascending_order, color_power_graph, ColoringError, PowerGraphSpec};
use crate::format::{content_lines, parse_usize, ParseError};
use crate::graph::{GraphError, GraphSequence, Stage, VertexId};

/// Saturation point for separation radii.
pub const RADIUS_CAP: usize = usize::MAX / 4;

/// Version tag for the cover text format, echoed in reports. The format
/// itself carries no header line.
pub const COVERS_FORMAT: &str = "covers v1";

/// Smallest next value the growth recurrence allows after `f`, saturated.
fn required_next(f: usize) -> usize {
    f.saturating_add(2)
        .max(f.saturating_mul(2).saturating_add(2))
        .min(RADIUS_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("growth value {value} at index {index} below required {required}")]
pub struct GrowthViolation {
    pub index: usize,
    pub value: usize,
    pub required: usize,
}

/// Nondecreasing radius schedule `f(0), ..., f(horizon)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthFunction {
    values: Vec<usize>,
}

impl GrowthFunction {
    /// Wraps raw values without checking the recurrence; pair with
    /// [`Self::validate`] when the recurrence matters.
    pub fn from_values(values: Vec<usize>) -> Self {
        GrowthFunction { values }
    }

    /// The minimal schedule starting at `f0`: each stage takes exactly the
    /// required next value. `f0 = 0` yields `0, 2, 6, 14, 30, ...`.
    pub fn canonical(horizon: Stage, f0: usize) -> Self {
        let mut values = Vec::with_capacity(horizon + 1);
        values.push(f0.min(RADIUS_CAP));
        for n in 0..horizon {
            values.push(required_next(values[n]));
        }
        GrowthFunction { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Largest stage the schedule covers.
    pub fn horizon(&self) -> Stage {
        self.values.len().saturating_sub(1)
    }

    pub fn get(&self, n: Stage) -> Option<usize> {
        self.values.get(n).copied()
    }

    /// Checks the recurrence at every step, reporting the first offender.
    pub fn validate(&self) -> Result<(), GrowthViolation> {
        for n in 1..self.values.len() {
            let required = required_next(self.values[n - 1]);
            if self.values[n] < required {
                return Err(GrowthViolation {
                    index: n,
                    value: self.values[n],
                    required,
                });
            }
        }
        Ok(())
    }
}

/// Cantor pairing `<a, b> = (a+b)(a+b+1)/2 + b`.
pub fn cantor_pairing(a: usize, b: usize) -> usize {
    let s = a + b;
    s * (s + 1) / 2 + b
}

/// Inverse of [`cantor_pairing`]; `0` maps to `(0, 0)`.
pub fn cantor_pairing_inverse(n: usize) -> (usize, usize) {
    let w = ((8 * n + 1).isqrt() - 1) / 2;
    let b = n - w * (w + 1) / 2;
    (w - b, b)
}

/// Bijection from stages to `(region index, sweep index)` pairs.
///
/// `Cantor` walks the classical diagonal; its region coordinate is unbounded,
/// so it only suits prefixes that stay inside the region list. `Cyclic` is
/// the bijection onto `[0, regions) x N` that visits regions round-robin and
/// works for any finite region list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StagePairing {
    Cantor,
    Cyclic { regions: usize },
}

impl StagePairing {
    /// `(g0(n), g1(n))`: the region and sweep coordinates of stage `n`.
    pub fn decode(&self, n: Stage) -> (usize, usize) {
        match *self {
            StagePairing::Cantor => cantor_pairing_inverse(n),
            StagePairing::Cyclic { regions } => (n % regions, n / regions),
        }
    }
}

/// Region list plus the pairing that schedules which region each stage
/// targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSweepPlan {
    pub regions: Vec<Vec<VertexId>>,
    pub pairing: StagePairing,
}

impl RegionSweepPlan {
    /// Cyclic plan over the given regions.
    pub fn cyclic(regions: Vec<Vec<VertexId>>) -> Self {
        let pairing = StagePairing::Cyclic {
            regions: regions.len().max(1),
        };
        RegionSweepPlan { regions, pairing }
    }
}

/// How a cover came to be.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverProvenance {
    /// A color class of a power-graph coloring.
    ColorClass {
        power: PowerGraphSpec,
        class_index: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        sweep: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        region: Option<usize>,
    },
    /// Deliberately empty cover inserted to delay a schedule.
    Padding,
    UserSupplied,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("region list is empty")]
    EmptyRegionList,
    #[error("region {region} holds vertex {vertex}, out of range for universe {universe_size}")]
    RegionVertexOutOfRange {
        region: usize,
        vertex: VertexId,
        universe_size: usize,
    },
    #[error("pairing sends stage {stage} to region {region_index}, but only {regions} regions exist")]
    PairingOutOfRange {
        stage: Stage,
        region_index: usize,
        regions: usize,
    },
    #[error("schedule needs growth values through stage {needed}, have horizon {available}")]
    GrowthTooShort { needed: Stage, available: Stage },
    #[error("schedule needs graph stages through {needed}, have horizon {available}")]
    GraphHorizonTooShort { needed: Stage, available: Stage },
    #[error("cover {index} invalid: {reason}")]
    InvalidCover { index: usize, reason: String },
}

/// Failure while reading the cover text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverReadError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] ScheduleError),
}

/// Finite cover schedule `B_0, ..., B_T` over a fixed universe. Covers are
/// sorted vertex lists; provenance records how each one was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSequence {
    universe_size: usize,
    covers: Vec<Vec<VertexId>>,
    provenance: Vec<CoverProvenance>,
}

impl CoverSequence {
    /// Wraps user-supplied covers, canonicalizing order and rejecting
    /// duplicates and out-of-range vertices.
    pub fn from_covers(
        universe_size: usize,
        covers: Vec<Vec<VertexId>>,
    ) -> Result<Self, ScheduleError> {
        let mut canonical = Vec::with_capacity(covers.len());
        for (index, mut cover) in covers.into_iter().enumerate() {
            cover.sort_unstable();
            for pair in cover.windows(2) {
                if pair[0] == pair[1] {
                    return Err(ScheduleError::InvalidCover {
                        index,
                        reason: format!("vertex {} listed twice", pair[0]),
                    });
                }
            }
            if let Some(&v) = cover.last() {
                if v >= universe_size {
                    return Err(ScheduleError::InvalidCover {
                        index,
                        reason: format!("vertex {v} out of range for universe {universe_size}"),
                    });
                }
            }
            canonical.push(cover);
        }
        let provenance = vec![CoverProvenance::UserSupplied; canonical.len()];
        Ok(CoverSequence {
            universe_size,
            covers: canonical,
            provenance,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn cover(&self, n: usize) -> &[VertexId] {
        &self.covers[n]
    }

    pub fn covers(&self) -> &[Vec<VertexId>] {
        &self.covers
    }

    pub fn provenance(&self) -> &[CoverProvenance] {
        &self.provenance
    }

    /// Reads `cover <n>: v1 v2 ...` lines; indices must run contiguously
    /// from zero.
    pub fn parse_str(text: &str, universe_size: usize) -> Result<Self, CoverReadError> {
        let mut covers = Vec::new();
        for (line, content) in content_lines(text) {
            let (head, tail) = content
                .split_once(':')
                .ok_or_else(|| ParseError::new(line, "expected `cover <n>: ...`"))?;
            let mut head_tokens = head.split_whitespace();
            match head_tokens.next() {
                Some("cover") => {}
                other => {
                    return Err(ParseError::new(
                        line,
                        format!("unknown directive `{}`", other.unwrap_or("")),
                    )
                    .into())
                }
            }
            let index_token = head_tokens
                .next()
                .ok_or_else(|| ParseError::new(line, "`cover` needs an index"))?;
            if head_tokens.next().is_some() {
                return Err(ParseError::new(line, "`cover` takes one index").into());
            }
            let index = parse_usize(line, index_token, "a cover index")?;
            if index != covers.len() {
                return Err(ParseError::new(
                    line,
                    format!("expected cover index {}, got {index}", covers.len()),
                )
                .into());
            }
            let mut vertices = Vec::new();
            for token in tail.split_whitespace() {
                vertices.push(parse_usize(line, token, "a vertex id")?);
            }
            covers.push(vertices);
        }
        Ok(CoverSequence::from_covers(universe_size, covers)?)
    }

    /// Writes `cover <n>: v1 v2 ...` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, cover) in self.covers.iter().enumerate() {
            out.push_str(&format!("cover {n}:"));
            for v in cover {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }

    fn push(&mut self, mut cover: Vec<VertexId>, provenance: CoverProvenance) {
        cover.sort_unstable();
        self.covers.push(cover);
        self.provenance.push(provenance);
    }
}

/// Per-vertex cover counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub counts: Vec<usize>,
    pub num_covers: usize,
}

impl CoverageReport {
    /// Vertices covered at least `m` times, the finite stand-in for
    /// "covered infinitely often". Antitone in `m`; `m = 0` is everything.
    pub fn limsup_set(&self, m: usize) -> Vec<VertexId> {
        (0..self.counts.len())
            .filter(|&x| self.counts[x] >= m)
            .collect()
    }

    pub fn min_count(&self) -> Option<usize> {
        self.counts.iter().copied().min()
    }

    /// Vertices whose final-stage component contains some vertex below the
    /// threshold: the component-closure of the failing set, which downstream
    /// verification discards wholesale.
    pub fn saturated_failures(&self, g: &GraphSequence, m: usize) -> Vec<VertexId> {
        let mut tainted = vec![false; g.universe_size()];
        let mut queue = VecDeque::new();
        for x in 0..g.universe_size().min(self.counts.len()) {
            if self.counts[x] < m {
                tainted[x] = true;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors_in(g.horizon(), x) {
                if !tainted[y] {
                    tainted[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..g.universe_size()).filter(|&x| tainted[x]).collect()
    }
}

/// Counts how often each vertex is covered.
pub fn coverage(covers: &CoverSequence) -> CoverageReport {
    let mut counts = vec![0usize; covers.universe_size()];
    for cover in covers.covers() {
        for &x in cover {
            counts[x] += 1;
        }
    }
    CoverageReport {
        counts,
        num_covers: covers.len(),
    }
}

fn check_plan(g: &GraphSequence, plan: &RegionSweepPlan) -> Result<(), ScheduleError> {
    if plan.regions.is_empty() {
        return Err(ScheduleError::EmptyRegionList);
    }
    for (region, vertices) in plan.regions.iter().enumerate() {
        for &v in vertices {
            if v >= g.universe_size() {
                return Err(ScheduleError::RegionVertexOutOfRange {
                    region,
                    vertex: v,
                    universe_size: g.universe_size(),
                });
            }
        }
    }
    Ok(())
}

/// One cover per stage: color the stage-`n` power graph at radius `f(n)`,
/// then take the color class meeting the paired region in the most vertices
/// (ties to the least class index). The chosen class is emitted whole.
pub fn build_covers_sweep(
    g: &GraphSequence,
    f: &GrowthFunction,
    plan: &RegionSweepPlan,
    stages: usize,
) -> Result<CoverSequence, ScheduleError> {
    check_plan(g, plan)?;
    if stages > 0 {
        let needed = stages - 1;
        if needed > f.horizon() || f.values().is_empty() {
            return Err(ScheduleError::GrowthTooShort {
                needed,
                available: f.horizon(),
            });
        }
        if needed > g.horizon() {
            return Err(ScheduleError::GraphHorizonTooShort {
                needed,
                available: g.horizon(),
            });
        }
    }
    let order = ascending_order(g.universe_size());
    let region_member: Vec<Vec<bool>> = plan
        .regions
        .iter()
        .map(|vertices| {
            let mut member = vec![false; g.universe_size()];
            for &v in vertices {
                member[v] = true;
            }
            member
        })
        .collect();
    let mut out = CoverSequence {
        universe_size: g.universe_size(),
        covers: Vec::with_capacity(stages),
        provenance: Vec::with_capacity(stages),
    };
    for n in 0..stages {
        let (region_index, sweep_index) = plan.pairing.decode(n);
        if region_index >= plan.regions.len() {
            return Err(ScheduleError::PairingOutOfRange {
                stage: n,
                region_index,
                regions: plan.regions.len(),
            });
        }
        let power = PowerGraphSpec {
            stage: n,
            radius: f.get(n).expect("checked above"),
        };
        let coloring = color_power_graph(g, power, &order)?;
        let classes = coloring.classes();
        let member = &region_member[region_index];
        let mut best = 0usize;
        let mut best_hits = usize::MAX;
        for (i, class) in classes.iter().enumerate() {
            let hits = class.iter().filter(|&&x| member[x]).count();
            if best_hits == usize::MAX || hits > best_hits {
                best = i;
                best_hits = hits;
            }
        }
        let chosen = classes.into_iter().nth(best).unwrap_or_default();
        out.push(
            chosen,
            CoverProvenance::ColorClass {
                power,
                class_index: best,
                sweep: Some(sweep_index),
                region: Some(region_index),
            },
        );
    }
    Ok(out)
}

/// Full-cycle schedule parameters. `start_offset` empty covers are emitted
/// first, which delays every sweep past that index; useful when every edge
/// birth must precede the first real sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FullCycleParams {
    pub sweeps: usize,
    pub start_offset: usize,
}

/// Largest component size of the stage-`horizon` graph.
fn max_component_size(g: &GraphSequence) -> usize {
    let n = g.universe_size();
    let mut seen = vec![false; n];
    let mut best = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut size = 0;
        while let Some(x) = queue.pop_front() {
            size += 1;
            for y in g.neighbors_in(g.horizon(), x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        best = best.max(size);
    }
    best
}

/// Emits every class of one coloring per sweep, so each sweep covers every
/// vertex exactly once and `s` sweeps push every count to at least `s`.
///
/// The sweep starting at index `a` colors the stage `M = a + S - 1` power
/// graph at radius `f(M)`, where `S` bounds the class count (the largest
/// final-stage component size). Classes land at indices `a ..= a + c - 1`,
/// all at most `M`, so a class that is `f(M)`-separated at stage `M` is
/// `f(n)`-separated at its index `n` because stages only add edges and `f`
/// never decreases.
pub fn build_covers_full_cycle(
    g: &GraphSequence,
    f: &GrowthFunction,
    params: FullCycleParams,
) -> Result<CoverSequence, ScheduleError> {
    let mut out = CoverSequence {
        universe_size: g.universe_size(),
        covers: Vec::new(),
        provenance: Vec::new(),
    };
    for _ in 0..params.start_offset {
        out.push(Vec::new(), CoverProvenance::Padding);
    }
    if g.universe_size() == 0 {
        return Ok(out);
    }
    let class_bound = max_component_size(g).max(1);
    let order = ascending_order(g.universe_size());
    for sweep in 0..params.sweeps {
        let a = out.len();
        let coloring_stage = a + class_bound - 1;
        if coloring_stage > g.horizon() {
            return Err(ScheduleError::GraphHorizonTooShort {
                needed: coloring_stage,
                available: g.horizon(),
            });
        }
        let radius = f.get(coloring_stage).ok_or(ScheduleError::GrowthTooShort {
            needed: coloring_stage,
            available: f.horizon(),
        })?;
        let power = PowerGraphSpec {
            stage: coloring_stage,
            radius,
        };
        let coloring = color_power_graph(g, power, &order)?;
        debug_assert!(coloring.num_colors() <= class_bound);
        for (class_index, class) in coloring.classes().into_iter().enumerate() {
            out.push(
                class,
                CoverProvenance::ColorClass {
                    power,
                    class_index,
                    sweep: Some(sweep),
                    region: None,
                },
            );
        }
    }
    Ok(out)
}
