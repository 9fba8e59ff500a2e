//! Points at fixed depth and the cylinders over them.

use std::fmt;

use serde::Serialize;

use super::EllentuckError;

/// A strictly increasing tuple of naturals: the fixed-depth stand-in for an
/// infinite subset enumerated in order. Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FinitePoint {
    elements: Vec<usize>,
}

impl FinitePoint {
    pub fn new(elements: Vec<usize>) -> Result<Self, EllentuckError> {
        if !strictly_increasing(&elements) {
            return Err(EllentuckError::NotIncreasing { tuple: elements });
        }
        Ok(FinitePoint { elements })
    }

    /// Builds from elements already known to be strictly increasing.
    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(strictly_increasing(&elements));
        FinitePoint { elements }
    }

    /// Number of elements.
    pub fn depth(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// Whether every element lies in the sorted slice `sorted`.
    pub fn within(&self, sorted: &[usize]) -> bool {
        is_subset(&self.elements, sorted)
    }

    /// Set difference with a sorted slice.
    pub fn minus(&self, remove: &[usize]) -> FinitePoint {
        FinitePoint {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|e| remove.binary_search(e).is_err())
                .collect(),
        }
    }

    /// Set union with a sorted slice.
    pub fn union(&self, other: &[usize]) -> FinitePoint {
        let mut merged = Vec::with_capacity(self.elements.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.elements.len() || j < other.len() {
            let next = match (self.elements.get(i), other.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(_), Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            merged.push(next);
        }
        FinitePoint { elements: merged }
    }

    /// Elements in exactly one of the two points, sorted.
    pub fn symmetric_difference(&self, other: &FinitePoint) -> Vec<usize> {
        let mut out = Vec::new();
        let (a, b) = (&self.elements, &other.elements);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                }
                (Some(&x), Some(&y)) if x < y => {
                    out.push(x);
                    i += 1;
                }
                (Some(_), Some(&y)) => {
                    out.push(y);
                    j += 1;
                }
                (Some(&x), None) => {
                    out.push(x);
                    i += 1;
                }
                (None, Some(&y)) => {
                    out.push(y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }
}

impl fmt::Display for FinitePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elements.is_empty() {
            return f.write_str("-");
        }
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub(crate) fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Whether sorted `sub` is a subset of sorted `sup`.
pub(crate) fn is_subset(sub: &[usize], sup: &[usize]) -> bool {
    let mut j = 0;
    for &x in sub {
        while j < sup.len() && sup[j] < x {
            j += 1;
        }
        if j == sup.len() || sup[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// A stem frozen below a reservoir, at a fixed point depth: its points are
/// the depth-sized strict supersets of the stem inside stem plus reservoir.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    stem: Vec<usize>,
    reservoir: Vec<usize>,
    depth: usize,
}

impl Cylinder {
    /// Both parts must be strictly increasing and the stem must sit wholly
    /// below the reservoir.
    pub fn new(
        stem: Vec<usize>,
        reservoir: Vec<usize>,
        depth: usize,
    ) -> Result<Self, EllentuckError> {
        if !strictly_increasing(&stem) {
            return Err(EllentuckError::NotIncreasing { tuple: stem });
        }
        if !strictly_increasing(&reservoir) {
            return Err(EllentuckError::NotIncreasing { tuple: reservoir });
        }
        if let (Some(&hi), Some(&lo)) = (stem.last(), reservoir.first()) {
            if hi >= lo {
                return Err(EllentuckError::StemAboveReservoir { stem, reservoir });
            }
        }
        Ok(Cylinder {
            stem,
            reservoir,
            depth,
        })
    }

    pub fn stem(&self) -> &[usize] {
        &self.stem
    }

    pub fn reservoir(&self) -> &[usize] {
        &self.reservoir
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Stem followed by reservoir: every element a point may use.
    pub fn closure(&self) -> Vec<usize> {
        let mut out = self.stem.clone();
        out.extend_from_slice(&self.reservoir);
        out
    }
}

/// Points of a cylinder in lexicographic order. When the depth cannot hold
/// a strict superset of the stem within the closure, the list is empty and
/// the flag records why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderPoints {
    pub points: Vec<FinitePoint>,
    pub depth_out_of_range: bool,
}

/// Enumerates all depth-sized sets `S` with `stem ⊂ S ⊆ stem ∪ reservoir`.
/// The count is `C(|reservoir|, depth - |stem|)`.
pub fn cylinder_points(c: &Cylinder) -> CylinderPoints {
    if c.depth <= c.stem.len() || c.depth > c.stem.len() + c.reservoir.len() {
        return CylinderPoints {
            points: Vec::new(),
            depth_out_of_range: true,
        };
    }
    let need = c.depth - c.stem.len();
    let points = combinations(&c.reservoir, need)
        .map(|combo| {
            let mut elements = c.stem.clone();
            elements.extend(combo);
            FinitePoint::from_sorted(elements)
        })
        .collect();
    CylinderPoints {
        points,
        depth_out_of_range: false,
    }
}

/// Lexicographic `k`-element subsets of a sorted slice.
pub fn combinations(items: &[usize], k: usize) -> Combinations<'_> {
    Combinations {
        items,
        indices: (0..k).collect(),
        done: k > items.len(),
    }
}

pub struct Combinations<'a> {
    items: &'a [usize],
    indices: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out: Vec<usize> = self.indices.iter().map(|&i| self.items[i]).collect();
        let k = self.indices.len();
        let n = self.items.len();
        // Advance to the lexicographic successor.
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            // Position i may rise to n - k + i.
            if self.indices[i] < n - k + i {
                self.indices[i] += 1;
                for j in i + 1..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
