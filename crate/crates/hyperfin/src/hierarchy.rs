//! Nested edge hierarchies driven by cover schedules.
//!
//! Stage 0 is empty; stage `n+1` adds every stage-`(n+1)` graph edge inside
//! the base set with at least one endpoint in cover `n+1`. Edges only
//! accumulate, so components merge monotonically and their diameters are
//! certified stage by stage against the growth function.
//!
//! Diameter certificates are exact where that is cheap. For large components
//! the builder measures one eccentricity from a cover point of the freshly
//! changed component: twice that eccentricity bounds the diameter, and when
//! even the bound exceeds `f(n)` the builder falls back to an exact
//! all-pairs sweep, so the certified claim is never approximate.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::find_separation_violation;
use crate::graph::{GraphError, GraphSequence, Stage, VertexId};
use crate::schedule::{coverage, CoverSequence, GrowthFunction, GrowthViolation};

/// Above this `|C| * (|C| + edges)` estimate, a component's diameter is
/// bounded via one eccentricity instead of measured exactly.
const EXACT_WORK_BUDGET: usize = 200_000;

/// Component vertex lists are materialized only below this base-set size.
const MEMBER_LIST_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    InvalidGrowth(#[from] GrowthViolation),
    #[error("universe mismatch: graph has {graph}, covers have {covers}")]
    UniverseMismatch { graph: usize, covers: usize },
    #[error("hierarchy needs growth values through stage {needed}, have horizon {available}")]
    GrowthTooShort { needed: Stage, available: Stage },
    #[error("hierarchy needs graph stages through {needed}, have horizon {available}")]
    GraphHorizonTooShort { needed: Stage, available: Stage },
    #[error("cover {stage} is not {k}-separated at stage {stage}: vertices {u} and {v}")]
    SeparationViolation {
        stage: Stage,
        k: usize,
        u: VertexId,
        v: VertexId,
    },
}

/// Per-stage summary certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageCert {
    pub stage: Stage,
    /// Radius the claim is checked against.
    pub f_value: usize,
    /// Number of components over the base set, singletons included.
    pub components: usize,
    pub max_component_size: usize,
    pub new_edges: usize,
    /// Smallest verified upper bound on any component diameter.
    pub diameter_upper: usize,
    /// Exact maximum diameter, present when every component was measured.
    pub max_diameter: Option<usize>,
    /// Whether every component diameter is at most `f_value`.
    pub claim_ok: bool,
}

/// One component with its measured diameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCert {
    /// Least vertex id in the component.
    pub representative: VertexId,
    pub size: usize,
    pub diameter: usize,
    /// Sorted members; omitted above [`MEMBER_LIST_LIMIT`] vertices.
    pub members: Option<Vec<VertexId>>,
}

/// Capture status of one base-set edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCapture {
    pub u: VertexId,
    pub v: VertexId,
    pub birth: Stage,
    /// First stage `k >= max(birth, 1)` whose cover meets the edge, if any.
    pub witness: Option<Stage>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaptureReport {
    pub captured: usize,
    pub horizon_uncaptured: usize,
    pub edges: Vec<EdgeCapture>,
    /// Whether captured-edge connectivity matches final-stage connectivity.
    pub connectivity_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniqueCoverPointViolation {
    pub stage: Stage,
    pub first: VertexId,
    pub second: VertexId,
}

/// The hierarchy itself: per-stage edge additions over a fixed base set,
/// plus the covers that drove them and the per-stage certificates.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    universe_size: usize,
    base_set: Vec<VertexId>,
    threshold_m: usize,
    covers: CoverSequence,
    /// `stage_new_edges[n]` holds the edges entering at stage `n`; index 0
    /// is always empty.
    stage_new_edges: Vec<Vec<(VertexId, VertexId)>>,
    certs: Vec<StageCert>,
}

impl Hierarchy {
    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    /// Sorted vertices covered at least `m` times.
    pub fn base_set(&self) -> &[VertexId] {
        &self.base_set
    }

    pub fn threshold_m(&self) -> usize {
        self.threshold_m
    }

    pub fn covers(&self) -> &CoverSequence {
        &self.covers
    }

    /// Index of the last stage; stages run `0 ..= last_stage()`.
    pub fn last_stage(&self) -> Stage {
        self.stage_new_edges.len() - 1
    }

    pub fn stage_certs(&self) -> &[StageCert] {
        &self.certs
    }

    pub fn new_edges_at(&self, n: Stage) -> &[(VertexId, VertexId)] {
        &self.stage_new_edges[n]
    }

    /// All edges present at stage `n`.
    pub fn edges_at(&self, n: Stage) -> Vec<(VertexId, VertexId)> {
        self.stage_new_edges[..=n].concat()
    }

    /// Adjacency of the stage-`n` edge set, indexed by vertex.
    pub fn adjacency_at(&self, n: Stage) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.universe_size];
        for edges in &self.stage_new_edges[..=n] {
            for &(u, v) in edges {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        adj
    }
}

pub(crate) struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `(survivor, absorbed)` roots, or `None` if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        self.parent[rb] = ra;
        Some((ra, rb))
    }
}

/// Reusable breadth-first search scratch over a vertex-indexed adjacency.
struct BfsScratch {
    dist: Vec<usize>,
    stamp: Vec<u64>,
    current: u64,
    queue: VecDeque<VertexId>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![0; n],
            stamp: vec![0; n],
            current: 0,
            queue: VecDeque::new(),
        }
    }

    /// Eccentricity of `start` within its component.
    fn eccentricity(&mut self, adj: &[Vec<VertexId>], start: VertexId) -> usize {
        self.current += 1;
        self.stamp[start] = self.current;
        self.dist[start] = 0;
        self.queue.clear();
        self.queue.push_back(start);
        let mut ecc = 0;
        while let Some(x) = self.queue.pop_front() {
            ecc = ecc.max(self.dist[x]);
            for &y in &adj[x] {
                if self.stamp[y] != self.current {
                    self.stamp[y] = self.current;
                    self.dist[y] = self.dist[x] + 1;
                    self.queue.push_back(y);
                }
            }
        }
        ecc
    }

    /// Exact diameter of the component spanned by `members`.
    fn exact_diameter(&mut self, adj: &[Vec<VertexId>], members: &[VertexId]) -> usize {
        members
            .iter()
            .map(|&x| self.eccentricity(adj, x))
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
struct CompState {
    members: Vec<VertexId>,
    diam_upper: usize,
    diam_exact: Option<usize>,
}

struct Builder {
    h_adj: Vec<Vec<VertexId>>,
    dsu: DisjointSet,
    comp: Vec<Option<CompState>>,
    bfs: BfsScratch,
    in_base: Vec<bool>,
    components: usize,
    max_size: usize,
}

impl Builder {
    fn new(g: &GraphSequence, base: &[VertexId]) -> Self {
        let n = g.universe_size();
        let mut in_base = vec![false; n];
        let mut comp = vec![None; n];
        for &x in base {
            in_base[x] = true;
            comp[x] = Some(CompState {
                members: vec![x],
                diam_upper: 0,
                diam_exact: Some(0),
            });
        }
        Builder {
            h_adj: vec![Vec::new(); n],
            dsu: DisjointSet::new(n),
            comp,
            bfs: BfsScratch::new(n),
            in_base,
            components: base.len(),
            max_size: usize::from(!base.is_empty()),
        }
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.h_adj[u].contains(&v)
    }

    /// Estimated all-pairs cost for a component.
    fn exact_cost(&self, members: &[VertexId]) -> usize {
        let edges: usize = members.iter().map(|&x| self.h_adj[x].len()).sum();
        members.len().saturating_mul(members.len() + edges / 2)
    }
}

fn check_structure(
    g: &GraphSequence,
    f: &GrowthFunction,
    covers: &CoverSequence,
) -> Result<(), HierarchyError> {
    if covers.universe_size() != g.universe_size() {
        return Err(HierarchyError::UniverseMismatch {
            graph: g.universe_size(),
            covers: covers.universe_size(),
        });
    }
    if !covers.is_empty() {
        let needed = covers.len() - 1;
        if f.values().is_empty() || needed > f.horizon() {
            return Err(HierarchyError::GrowthTooShort {
                needed,
                available: f.horizon(),
            });
        }
        if needed > g.horizon() {
            return Err(HierarchyError::GraphHorizonTooShort {
                needed,
                available: g.horizon(),
            });
        }
    }
    Ok(())
}

/// Builds the hierarchy after validating the growth recurrence and the
/// separation of every cover; either failure rejects the input.
pub fn build_hierarchy(
    g: &GraphSequence,
    f: &GrowthFunction,
    covers: &CoverSequence,
    m: usize,
) -> Result<Hierarchy, HierarchyError> {
    check_structure(g, f, covers)?;
    f.validate()?;
    for n in 0..covers.len() {
        let k = f.get(n).expect("length checked");
        if let Some((u, v)) = find_separation_violation(g, n, k, covers.cover(n))? {
            return Err(HierarchyError::SeparationViolation { stage: n, k, u, v });
        }
    }
    Ok(build_stages(g, f, covers, m))
}

/// Builds without the separation and recurrence checks, for verification-only
/// workflows on deliberately broken inputs. Structural limits still apply.
pub fn build_hierarchy_unchecked(
    g: &GraphSequence,
    f: &GrowthFunction,
    covers: &CoverSequence,
    m: usize,
) -> Result<Hierarchy, HierarchyError> {
    check_structure(g, f, covers)?;
    Ok(build_stages(g, f, covers, m))
}

fn build_stages(
    g: &GraphSequence,
    f: &GrowthFunction,
    covers: &CoverSequence,
    m: usize,
) -> Hierarchy {
    let report = coverage(covers);
    let base_set = report.limsup_set(m);
    let num_stages = covers.len().max(1);
    let mut b = Builder::new(g, &base_set);
    let mut stage_new_edges: Vec<Vec<(VertexId, VertexId)>> = Vec::with_capacity(num_stages);
    let mut certs: Vec<StageCert> = Vec::with_capacity(num_stages);
    stage_new_edges.push(Vec::new());
    let f0 = f.get(0).unwrap_or(0);
    certs.push(StageCert {
        stage: 0,
        f_value: f0,
        components: b.components,
        max_component_size: b.max_size,
        new_edges: 0,
        diameter_upper: 0,
        max_diameter: Some(0),
        claim_ok: true,
    });
    let mut max_upper = 0usize;
    let mut max_exact: Option<usize> = Some(0);
    for n in 1..num_stages {
        let f_n = f.get(n).expect("length checked by callers");
        // Collect the edges entering at this stage: graph edges inside the
        // base set with an endpoint in cover n.
        let mut entering: Vec<(VertexId, VertexId)> = Vec::new();
        for &z in covers.cover(n) {
            if !b.in_base[z] {
                continue;
            }
            for w in g.neighbors_in(n, z) {
                if b.in_base[w] && !b.has_edge(z, w) {
                    b.h_adj[z].push(w);
                    b.h_adj[w].push(z);
                    entering.push((z, w));
                }
            }
        }
        // Merge component states along the new edges.
        let mut dirty: Vec<usize> = Vec::new();
        for &(z, w) in &entering {
            let rz = b.dsu.find(z);
            let rw = b.dsu.find(w);
            if rz != rw {
                b.components -= 1;
                let (keep, gone) = if b.comp[rz].as_ref().map_or(0, |c| c.members.len())
                    >= b.comp[rw].as_ref().map_or(0, |c| c.members.len())
                {
                    (rz, rw)
                } else {
                    (rw, rz)
                };
                b.dsu.parent[gone] = keep;
                let moved = b.comp[gone].take().expect("base vertices have states");
                let state = b.comp[keep].as_mut().expect("base vertices have states");
                state.members.extend(moved.members);
                state.diam_upper = state.members.len() - 1;
                state.diam_exact = None;
                b.max_size = b.max_size.max(state.members.len());
            } else {
                // Intra-component edge still invalidates the old diameter.
                let root = rz;
                let state = b.comp[root].as_mut().expect("base vertices have states");
                state.diam_exact = None;
                state.diam_upper = state.members.len() - 1;
            }
            let root = b.dsu.find(z);
            if !dirty.contains(&root) {
                dirty.push(root);
            }
        }
        // Re-resolve dirty roots after all unions and measure each once.
        let mut dirty_roots: Vec<usize> = dirty.iter().map(|&r| b.dsu.find(r)).collect();
        dirty_roots.sort_unstable();
        dirty_roots.dedup();
        // Cover points indexing the dirty components: every entering edge has
        // its first endpoint in the cover, so each dirty component has one.
        let mut center_of: Vec<(usize, VertexId)> = Vec::new();
        for &(z, _) in &entering {
            let root = b.dsu.find(z);
            if !center_of.iter().any(|&(r, _)| r == root) {
                center_of.push((root, z));
            }
        }
        for &root in &dirty_roots {
            let state = b.comp[root].as_ref().expect("dirty root has state");
            let members = state.members.clone();
            let cost = b.exact_cost(&members);
            let (upper, exact) = if cost <= EXACT_WORK_BUDGET {
                let d = b.bfs.exact_diameter(&b.h_adj, &members);
                (d, Some(d))
            } else {
                let center = center_of
                    .iter()
                    .find(|&&(r, _)| r == root)
                    .map(|&(_, z)| z)
                    .unwrap_or(members[0]);
                let ecc = b.bfs.eccentricity(&b.h_adj, center);
                let bound = (2 * ecc).min(members.len() - 1);
                if bound > f_n {
                    // The cheap bound cannot certify the claim; measure.
                    let d = b.bfs.exact_diameter(&b.h_adj, &members);
                    (d, Some(d))
                } else {
                    (bound, None)
                }
            };
            let state = b.comp[root].as_mut().expect("dirty root has state");
            state.diam_upper = upper;
            state.diam_exact = exact;
        }
        if !dirty_roots.is_empty() {
            max_upper = 0;
            max_exact = Some(0);
            for state in b.comp.iter().flatten() {
                max_upper = max_upper.max(state.diam_upper);
                max_exact = match (max_exact, state.diam_exact) {
                    (Some(a), Some(d)) => Some(a.max(d)),
                    _ => None,
                };
            }
        }
        // Claim: every component diameter is at most f(n). If the carried
        // bound cannot decide, measure the offenders exactly.
        let mut claim_ok = max_upper <= f_n;
        if !claim_ok {
            let offenders: Vec<usize> = (0..b.comp.len())
                .filter(|&r| {
                    b.comp[r]
                        .as_ref()
                        .is_some_and(|s| s.diam_upper > f_n && s.diam_exact.is_none())
                })
                .collect();
            for root in offenders {
                let members = b.comp[root].as_ref().unwrap().members.clone();
                let d = b.bfs.exact_diameter(&b.h_adj, &members);
                let state = b.comp[root].as_mut().unwrap();
                state.diam_upper = d;
                state.diam_exact = Some(d);
            }
            max_upper = 0;
            max_exact = Some(0);
            for state in b.comp.iter().flatten() {
                max_upper = max_upper.max(state.diam_upper);
                max_exact = match (max_exact, state.diam_exact) {
                    (Some(a), Some(d)) => Some(a.max(d)),
                    _ => None,
                };
            }
            claim_ok = max_upper <= f_n;
        }
        let entering_canonical: Vec<(VertexId, VertexId)> = entering
            .iter()
            .map(|&(z, w)| (z.min(w), z.max(w)))
            .collect();
        certs.push(StageCert {
            stage: n,
            f_value: f_n,
            components: b.components,
            max_component_size: b.max_size,
            new_edges: entering_canonical.len(),
            diameter_upper: max_upper,
            max_diameter: max_exact,
            claim_ok,
        });
        stage_new_edges.push(entering_canonical);
    }
    Hierarchy {
        universe_size: g.universe_size(),
        base_set,
        threshold_m: m,
        covers: covers.clone(),
        stage_new_edges,
        certs,
    }
}

/// Exact per-component diameters of the stage-`n` edge set, measured fresh
/// by all-pairs breadth-first search. Components are listed by ascending
/// representative; vertex lists are included for small base sets.
pub fn component_diameters(h: &Hierarchy, n: Stage) -> Vec<ComponentCert> {
    let adj = h.adjacency_at(n);
    let mut bfs = BfsScratch::new(h.universe_size);
    let mut seen = vec![false; h.universe_size];
    let mut out = Vec::new();
    for &start in &h.base_set {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        let diameter = bfs.exact_diameter(&adj, &members);
        out.push(ComponentCert {
            representative: members[0],
            size: members.len(),
            diameter,
            members: (h.base_set.len() <= MEMBER_LIST_LIMIT).then_some(members),
        });
    }
    out
}

/// Classifies every graph edge inside the base set as captured (with the
/// witnessing stage) or uncaptured at this horizon, and cross-checks that
/// the captured edges connect exactly what the final stage connects.
pub fn verify_capture(g: &GraphSequence, h: &Hierarchy) -> CaptureReport {
    let covers = &h.covers;
    let mut cover_indices: Vec<Vec<Stage>> = vec![Vec::new(); g.universe_size()];
    for n in 0..covers.len() {
        for &x in covers.cover(n) {
            cover_indices[x].push(n);
        }
    }
    let in_base = {
        let mut b = vec![false; g.universe_size()];
        for &x in &h.base_set {
            b[x] = true;
        }
        b
    };
    let last = h.last_stage();
    let mut edges = Vec::new();
    let mut captured = 0usize;
    let mut dsu_witness = DisjointSet::new(g.universe_size());
    for e in g.edges() {
        if !in_base[e.u] || !in_base[e.v] {
            continue;
        }
        let earliest = e.birth.max(1);
        let witness = [e.u, e.v]
            .iter()
            .filter_map(|&z| {
                let idx = cover_indices[z].partition_point(|&k| k < earliest);
                cover_indices[z].get(idx).copied()
            })
            .min()
            .filter(|&k| k <= last);
        if let Some(k) = witness {
            debug_assert!(k >= e.birth && k >= 1);
            captured += 1;
            dsu_witness.union(e.u, e.v);
        }
        edges.push(EdgeCapture {
            u: e.u,
            v: e.v,
            birth: e.birth,
            witness,
        });
    }
    // Independent route: the hierarchy's own final edge set.
    let mut dsu_final = DisjointSet::new(g.universe_size());
    for n in 0..=last {
        for &(u, v) in h.new_edges_at(n) {
            dsu_final.union(u, v);
        }
    }
    let mut pairing: Vec<Option<usize>> = vec![None; g.universe_size()];
    let mut consistent = true;
    let mut reverse: Vec<Option<usize>> = vec![None; g.universe_size()];
    for &x in &h.base_set {
        let a = dsu_witness.find(x);
        let b = dsu_final.find(x);
        match pairing[a] {
            None => {
                if reverse[b].is_some() {
                    consistent = false;
                    break;
                }
                pairing[a] = Some(b);
                reverse[b] = Some(a);
            }
            Some(expected) => {
                if expected != b {
                    consistent = false;
                    break;
                }
            }
        }
    }
    CaptureReport {
        captured,
        horizon_uncaptured: edges.len() - captured,
        edges,
        connectivity_consistent: consistent,
    }
}

/// First stage whose cover puts two points into one component of that
/// stage's edge set, if any.
pub fn find_unique_cover_point_violation(
    h: &Hierarchy,
    covers: &CoverSequence,
) -> Option<UniqueCoverPointViolation> {
    let mut dsu = DisjointSet::new(h.universe_size);
    let in_base = {
        let mut b = vec![false; h.universe_size];
        for &x in &h.base_set {
            b[x] = true;
        }
        b
    };
    let stages = h.stage_new_edges.len().min(covers.len());
    let mut owner: Vec<Option<VertexId>> = vec![None; h.universe_size];
    let mut touched: Vec<usize> = Vec::new();
    for n in 1..stages {
        for &(u, v) in h.new_edges_at(n) {
            dsu.union(u, v);
        }
        for &r in &touched {
            owner[r] = None;
        }
        touched.clear();
        for &x in covers.cover(n) {
            if !in_base[x] {
                continue;
            }
            let root = dsu.find(x);
            match owner[root] {
                None => {
                    owner[root] = Some(x);
                    touched.push(root);
                }
                Some(first) => {
                    return Some(UniqueCoverPointViolation {
                        stage: n,
                        first: first.min(x),
                        second: first.max(x),
                    });
                }
            }
        }
    }
    None
}

/// Whether every stage-`n` component contains at most one point of cover
/// `n`, for every stage.
pub fn verify_unique_cover_point(h: &Hierarchy, covers: &CoverSequence) -> bool {
    find_unique_cover_point_violation(h, covers).is_none()
}
