//! Graphs on points, monochromatic and independent shrinking, and the
//! stem-stripped star lift.

use std::collections::{BTreeMap, BTreeSet};

use super::point::{combinations, cylinder_points, Cylinder, FinitePoint};
use super::EllentuckError;

/// An undirected loop-free graph whose vertices are points. The nominal
/// depth is the depth of the cylinder points the graph is queried on;
/// edges between shallower points are allowed, because the star lift asks
/// about points with part of the stem stripped away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointGraph {
    depth: usize,
    degree_bound: usize,
    adj: BTreeMap<FinitePoint, BTreeSet<FinitePoint>>,
}

impl PointGraph {
    pub fn new(
        depth: usize,
        degree_bound: usize,
        edges: impl IntoIterator<Item = (FinitePoint, FinitePoint)>,
    ) -> Result<Self, EllentuckError> {
        let mut adj: BTreeMap<FinitePoint, BTreeSet<FinitePoint>> = BTreeMap::new();
        for (a, b) in edges {
            if a == b {
                return Err(EllentuckError::SelfLoopPoint { point: a });
            }
            adj.entry(a.clone()).or_default().insert(b.clone());
            adj.entry(b).or_default().insert(a);
        }
        Ok(PointGraph {
            depth,
            degree_bound,
            adj,
        })
    }

    pub fn empty(depth: usize, degree_bound: usize) -> Self {
        PointGraph {
            depth,
            degree_bound,
            adj: BTreeMap::new(),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The declared bound; [`max_degree`](Self::max_degree) is the actual one.
    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn has_edge(&self, a: &FinitePoint, b: &FinitePoint) -> bool {
        self.adj.get(a).is_some_and(|ns| ns.contains(b))
    }

    pub fn neighbors(&self, p: &FinitePoint) -> impl Iterator<Item = &FinitePoint> {
        self.adj.get(p).into_iter().flatten()
    }

    /// Each edge once, lesser endpoint first, in point order.
    pub fn edges(&self) -> Vec<(&FinitePoint, &FinitePoint)> {
        let mut out = Vec::new();
        for (a, ns) in &self.adj {
            for b in ns {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// First point whose degree exceeds the declared bound.
    pub fn degree_violation(&self) -> Option<(&FinitePoint, usize)> {
        self.adj
            .iter()
            .find(|(_, ns)| ns.len() > self.degree_bound)
            .map(|(p, ns)| (p, ns.len()))
    }
}

/// Searches for a reservoir subset of the requested size all of whose
/// cylinder points share one color. Candidate subsets are scanned in
/// lexicographic order and the first success is returned; `None` means no
/// subset of that size works. Targets too small to host any point succeed
/// vacuously with the lexicographically least subset.
pub fn monochromatic_shrink<C: PartialEq>(
    c: &Cylinder,
    coloring: impl Fn(&FinitePoint) -> C,
    target_size: usize,
) -> Option<Vec<usize>> {
    for candidate in combinations(c.reservoir(), target_size) {
        let sub = Cylinder::new(c.stem().to_vec(), candidate.clone(), c.depth())
            .expect("sub-reservoir keeps the cylinder ordering");
        let points = cylinder_points(&sub).points;
        let mut colors = points.iter().map(&coloring);
        match colors.next() {
            None => return Some(candidate),
            Some(first) => {
                if colors.all(|c| c == first) {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn greedy_color_points(points: &[FinitePoint], g: &PointGraph) -> BTreeMap<FinitePoint, usize> {
    let mut colors: BTreeMap<FinitePoint, usize> = BTreeMap::new();
    for p in points {
        let forbidden: BTreeSet<usize> = g
            .neighbors(p)
            .filter_map(|q| colors.get(q).copied())
            .collect();
        let color = (0..).find(|c| !forbidden.contains(c)).expect("finite");
        colors.insert(p.clone(), color);
    }
    colors
}

/// Searches for a reservoir subset whose cylinder points form an
/// independent set of `g`: the points are greedy-colored (at most
/// max-degree + 1 colors) and a monochromatic sub-reservoir is sought.
/// Any returned witness is re-verified edge-free before being handed back.
pub fn independent_cylinder(
    c: &Cylinder,
    g: &PointGraph,
    target_size: usize,
) -> Option<Vec<usize>> {
    let points = cylinder_points(c).points;
    let colors = greedy_color_points(&points, g);
    let found = monochromatic_shrink(c, |p| colors[p], target_size)?;
    let sub = Cylinder::new(c.stem().to_vec(), found.clone(), c.depth())
        .expect("sub-reservoir keeps the cylinder ordering");
    let sub_points = cylinder_points(&sub).points;
    for (i, a) in sub_points.iter().enumerate() {
        for b in &sub_points[i + 1..] {
            assert!(
                !g.has_edge(a, b),
                "greedy color class contains the edge ({a}, {b})"
            );
        }
    }
    Some(found)
}

/// The lift of `g` to the cylinder: points `B != C` are adjacent when some
/// stem parts `r, s` can be stripped so that `(B \ r, C \ s)` is a
/// `g`-edge. Built edge-driven over `g`'s edges rather than all point
/// pairs. A stripped endpoint `p` has at most one lift: a cylinder point
/// contains the whole stem, so it must be `p ∪ (stem \ p)`, and only when
/// the sizes work out. That is also why the lifted degree stays below
/// `2^|stem| * max_degree(g)`, the declared bound.
pub fn star_graph(c: &Cylinder, g: &PointGraph) -> PointGraph {
    let stem = c.stem();
    let depth = c.depth();
    let member: BTreeSet<FinitePoint> = cylinder_points(c).points.into_iter().collect();
    let lift_of = |base: &FinitePoint| -> Option<FinitePoint> {
        let missing: Vec<usize> = stem
            .iter()
            .copied()
            .filter(|&e| !base.contains(e))
            .collect();
        if base.depth() + missing.len() != depth {
            return None;
        }
        let lifted = base.union(&missing);
        member.contains(&lifted).then_some(lifted)
    };
    let mut edges: BTreeSet<(FinitePoint, FinitePoint)> = BTreeSet::new();
    for (p, q) in g.edges() {
        if let (Some(b), Some(c2)) = (lift_of(p), lift_of(q)) {
            if b != c2 {
                let (lo, hi) = if b < c2 { (b, c2) } else { (c2, b) };
                edges.insert((lo, hi));
            }
        }
    }
    let bound = (1usize << stem.len().min(usize::BITS as usize - 1))
        .saturating_mul(g.degree_bound());
    PointGraph::new(depth, bound, edges).expect("lifted endpoints differ")
}

/// Shrinks the reservoir so that every surviving `g`-edge at cylinder depth
/// differs only inside the stem: builds the star lift, extracts an
/// independent sub-cylinder, then exhaustively checks that each `g`-edge
/// with both endpoints inside stem-plus-witness has its symmetric
/// difference contained in the stem. A witness failing that final check is
/// discarded as NOT-FOUND rather than returned.
pub fn e0_shrink(c: &Cylinder, g: &PointGraph, target_size: usize) -> Option<Vec<usize>> {
    let lifted = star_graph(c, g);
    let found = independent_cylinder(c, &lifted, target_size)?;
    let closed = Cylinder::new(c.stem().to_vec(), found.clone(), c.depth())
        .expect("sub-reservoir keeps the cylinder ordering")
        .closure();
    for (p, q) in g.edges() {
        if p.depth() == c.depth()
            && q.depth() == c.depth()
            && p.within(&closed)
            && q.within(&closed)
        {
            let diff = p.symmetric_difference(q);
            if !diff.iter().all(|e| c.stem().binary_search(e).is_ok()) {
                return None;
            }
        }
    }
    Some(found)
}
