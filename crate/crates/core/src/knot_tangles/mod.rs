//! Knot and link diagrams in PD form and the diagrammatic genus bounds.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting at the incoming under-strand, so slots 0 and 2 are under and
//! slots 1 and 3 are over. Strands pass straight through, slot `k` to slot
//! `k + 2`.

mod decomposition;
mod tangle;

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::acyl_bounds::{heegaard_bound, BoundsError};
use crate::union_find::DisjointSet;

pub use decomposition::{
    decomposition_bounds, parse_decomposition, tangle_chain, ClaimedType, DecompositionReport,
    RationalBound, TangleDecomposition, TangleResult, TangleSpec,
};
pub use tangle::{rational_reduce, tangle_fraction, Fraction, Tangle, TwistVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("crossing term {term} has {count} labels, expected 4")]
    BadArity { term: usize, count: usize },
    #[error("edge label {label} occurs {count} time(s), expected 2")]
    LabelNotTwice { label: u32, count: usize },
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("diagram has {faces} faces, expected {expected}; the PD code is not planar")]
    NonPlanar { faces: usize, expected: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("tangle boundary is invalid: {0}")]
    BadBoundary(String),
    #[error("tangles do not partition the crossings: {0}")]
    NotAPartition(String),
    #[error("tangle {id} is claimed {claim} but is not")]
    TypeClaimFailed { id: String, claim: &'static str },
}

impl KnotError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::BadArity { .. } => "BadArity",
            Self::LabelNotTwice { .. } => "LabelNotTwice",
            Self::Disconnected => "Disconnected",
            Self::NonPlanar { .. } => "NonPlanar",
            Self::Malformed(_) => "Malformed",
            Self::BadBoundary(_) => "BadBoundary",
            Self::NotAPartition(_) => "NotAPartition",
            Self::TypeClaimFailed { .. } => "TypeClaimFailed",
        }
    }
}

/// An end of an edge: crossing index and slot.
pub type End = (usize, usize);

/// Where each label occurs among `crossings`, in slot order.
pub(crate) fn label_ends(crossings: &[[u32; 4]]) -> BTreeMap<u32, Vec<End>> {
    let mut ends: BTreeMap<u32, Vec<End>> = BTreeMap::new();
    for (x, c) in crossings.iter().enumerate() {
        for (s, &l) in c.iter().enumerate() {
            ends.entry(l).or_default().push((x, s));
        }
    }
    ends
}

/// Faces of the 4-valent graph with the given rotation system, as cycles of
/// corners. Corner `(x, i)` is the sector between slots `i` and `i + 1`.
/// Every label must occur exactly twice.
pub(crate) fn trace_faces(crossings: &[[u32; 4]], ends: &BTreeMap<u32, Vec<End>>) -> Vec<Vec<End>> {
    let n = crossings.len();
    let mut seen = vec![[false; 4]; n];
    let mut faces = Vec::new();
    for x in 0..n {
        for i in 0..4 {
            if seen[x][i] {
                continue;
            }
            let mut face = Vec::new();
            let (mut cx, mut ci) = (x, i);
            while !seen[cx][ci] {
                seen[cx][ci] = true;
                face.push((cx, ci));
                let out = (cx, (ci + 1) % 4);
                let pair = &ends[&crossings[cx][out.1]];
                let next = if pair[0] == out { pair[1] } else { pair[0] };
                (cx, ci) = next;
            }
            faces.push(face);
        }
    }
    faces
}

/// Whether each strand alternates over and under at consecutive crossings.
/// Strands that leave through a label occurring once are open.
pub(crate) fn strands_alternate(crossings: &[[u32; 4]]) -> bool {
    let ends = label_ends(crossings);
    let mut used = vec![[false; 4]; crossings.len()];
    let open_starts: Vec<End> = ends
        .values()
        .filter(|e| e.len() == 1)
        .map(|e| e[0])
        .collect();
    for s in open_starts {
        if used[s.0][s.1] {
            continue;
        }
        let seq = walk_strand(s, crossings, &ends, &mut used);
        if seq.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    for x in 0..crossings.len() {
        for k in 0..4 {
            if used[x][k] {
                continue;
            }
            let seq = walk_strand((x, k), crossings, &ends, &mut used);
            if (0..seq.len()).any(|i| seq[i] == seq[(i + 1) % seq.len()]) {
                return false;
            }
        }
    }
    true
}

/// Over/under sequence met walking from `start` until the strand leaves or
/// closes up.
fn walk_strand(
    start: End,
    crossings: &[[u32; 4]],
    ends: &BTreeMap<u32, Vec<End>>,
    used: &mut [[bool; 4]],
) -> Vec<bool> {
    let mut seq = Vec::new();
    let mut at = Some(start);
    while let Some((x, k)) = at.filter(|&(x, k)| !used[x][k]) {
        let exit = (x, (k + 2) % 4);
        used[x][k] = true;
        used[exit.0][exit.1] = true;
        seq.push(k % 2 == 1);
        at = ends[&crossings[x][exit.1]]
            .iter()
            .copied()
            .find(|&e| e != exit);
    }
    seq
}

/// A connected planar knot or link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotDiagram {
    crossings: Vec<[u32; 4]>,
    ends: BTreeMap<u32, Vec<End>>,
    faces: Vec<Vec<End>>,
}

impl KnotDiagram {
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, KnotError> {
        if crossings.is_empty() {
            return Err(KnotError::Malformed("no crossings".into()));
        }
        let ends = label_ends(&crossings);
        if let Some((&label, e)) = ends.iter().find(|(_, e)| e.len() != 2) {
            return Err(KnotError::LabelNotTwice {
                label,
                count: e.len(),
            });
        }
        let mut ds = DisjointSet::new(crossings.len());
        for e in ends.values() {
            ds.union(e[0].0, e[1].0);
        }
        if ds.count() != 1 {
            return Err(KnotError::Disconnected);
        }
        let faces = trace_faces(&crossings, &ends);
        let expected = crossings.len() + 2;
        if faces.len() != expected {
            return Err(KnotError::NonPlanar {
                faces: faces.len(),
                expected,
            });
        }
        Ok(Self {
            crossings,
            ends,
            faces,
        })
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn faces(&self) -> &[Vec<End>] {
        &self.faces
    }

    /// Number of corners of each face, in traversal order.
    pub fn face_sizes(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// `(size, count)` pairs, ascending by size.
    pub fn face_census(&self) -> Vec<(usize, usize)> {
        let mut census: BTreeMap<usize, usize> = BTreeMap::new();
        for f in &self.faces {
            *census.entry(f.len()).or_default() += 1;
        }
        census.into_iter().collect()
    }

    /// The ends carrying `label`.
    pub fn ends_of(&self, label: u32) -> Option<&[End]> {
        self.ends.get(&label).map(Vec::as_slice)
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.ends.keys().copied()
    }

    /// Number of link components.
    pub fn component_count(&self) -> usize {
        let index: BTreeMap<u32, usize> =
            self.ends.keys().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut ds = DisjointSet::new(index.len());
        for c in &self.crossings {
            ds.union(index[&c[0]], index[&c[2]]);
            ds.union(index[&c[1]], index[&c[3]]);
        }
        ds.count()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn to_pd(&self) -> String {
        self.crossings
            .iter()
            .map(|c| format!("X({},{},{},{})", c[0], c[1], c[2], c[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses whitespace-separated `X(a,b,c,d)` terms. Lines starting with `#`
/// are comments.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, KnotError> {
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.chars())
        .filter(|c| !c.is_whitespace())
        .collect();
    let mut rest = body.as_str();
    let mut crossings = Vec::new();
    while !rest.is_empty() {
        let Some(inner) = rest.strip_prefix("X(") else {
            return Err(KnotError::Malformed(format!(
                "expected X( at {:?}",
                rest.chars().take(12).collect::<String>()
            )));
        };
        let close = inner
            .find(')')
            .ok_or_else(|| KnotError::Malformed("unterminated crossing term".into()))?;
        let labels = inner[..close]
            .split(',')
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| KnotError::Malformed(format!("bad edge label {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let term = crossings.len();
        let arr: [u32; 4] = labels
            .as_slice()
            .try_into()
            .map_err(|_| KnotError::BadArity {
                term,
                count: labels.len(),
            })?;
        crossings.push(arr);
        rest = inner[close + 1..].trim_start_matches(',');
    }
    KnotDiagram::new(crossings)
}

/// Closure of a braid on `strands` strands. Letter `k` is the generator
/// crossing strands `|k|` and `|k| + 1` (from 1); for positive letters the
/// strand coming from the left passes over. Every strand must meet a
/// crossing.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<KnotDiagram, KnotError> {
    let start: Vec<u32> = (1..=strands as u32).collect();
    let mut current = start.clone();
    let mut next = strands as u32 + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &letter in word {
        let i = letter.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(KnotError::Malformed(format!(
                "generator {letter} out of range for {strands} strands"
            )));
        }
        let (bl, br) = (current[i - 1], current[i]);
        let (tl, tr) = (next, next + 1);
        next += 2;
        crossings.push(if letter > 0 {
            [br, tr, tl, bl]
        } else {
            [bl, br, tr, tl]
        });
        current[i - 1] = tl;
        current[i] = tr;
    }
    if current.iter().zip(&start).any(|(c, s)| c == s) {
        return Err(KnotError::Disconnected);
    }
    let rename: BTreeMap<u32, u32> = current.into_iter().zip(start).collect();
    for c in &mut crossings {
        for l in c.iter_mut() {
            if let Some(&to) = rename.get(l) {
                *l = to;
            }
        }
    }
    KnotDiagram::new(crossings)
}

/// The crossing-number bound together with the bad-edge budget it comes
/// from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingBound {
    pub crossings: usize,
    /// `floor(3n/2 - 3)`.
    pub bound: i64,
    /// `(face size i, budget 3i - 6)` per face.
    pub per_face_budget: Vec<(usize, i64)>,
    /// Sum of the per-face budgets, always `6n - 12`.
    pub total_budget: i64,
}

pub fn crossing_bound(d: &KnotDiagram) -> CrossingBound {
    let n = d.crossing_count() as i64;
    let per_face_budget: Vec<(usize, i64)> = d
        .face_sizes()
        .into_iter()
        .map(|i| (i, 3 * i as i64 - 6))
        .collect();
    let total_budget: i64 = per_face_budget.iter().map(|&(_, b)| b).sum();
    assert_eq!(total_budget, 6 * n - 12, "face budgets must total 6n - 12");
    CrossingBound {
        crossings: d.crossing_count(),
        bound: Integer::div_floor(&(3 * n - 6), &2),
        per_face_budget,
        total_budget,
    }
}

/// Whether the given projection is alternating.
pub fn is_alternating(d: &KnotDiagram) -> bool {
    strands_alternate(&d.crossings)
}

/// Optional inputs to [`geodesic_bounds`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeodesicInputs {
    pub tetrahedra: Option<i64>,
    /// Heegaard genus and per-disc intersection counts.
    pub heegaard: Option<(usize, Vec<u64>)>,
    pub crossings: Option<i64>,
    pub rational_tangles: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicRow {
    pub input: &'static str,
    pub formula: &'static str,
    pub exact: Ratio<i64>,
    pub bound: i64,
}

/// Total-genus bounds for disjoint families of totally geodesic surfaces.
pub fn geodesic_bounds(inputs: &GeodesicInputs) -> Result<Vec<GeodesicRow>, BoundsError> {
    let mut rows = Vec::new();
    let positive = |x: i64| {
        if x >= 1 {
            Ok(x)
        } else {
            Err(BoundsError::NonPositive)
        }
    };
    let mut push = |input, formula, exact: Ratio<i64>| {
        rows.push(GeodesicRow {
            input,
            formula,
            exact,
            bound: exact.floor().to_integer(),
        })
    };
    if let Some(t) = inputs.tetrahedra {
        push("t", "3t/2", Ratio::new(3 * positive(t)?, 2));
    }
    if let Some((g, n_i)) = &inputs.heegaard {
        if *g == 0 {
            return Err(BoundsError::NonPositive);
        }
        push("g,n", "n-3g/2", heegaard_bound(*g, n_i)?.direct);
    }
    if let Some(c) = inputs.crossings {
        push("c", "3c/2-3", Ratio::new(3 * positive(c)? - 6, 2));
    }
    if let Some(r) = inputs.rational_tangles {
        push("r", "5r/2-3", Ratio::new(5 * positive(r)? - 6, 2));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    #[test]
    fn trefoil_faces() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.face_census(), vec![(2, 3), (3, 2)]);
        assert!(d.is_knot());
        assert!(is_alternating(&d));
    }

    #[test]
    fn crossing_bounds() {
        let b = crossing_bound(&parse_pd(TREFOIL).unwrap());
        assert_eq!((b.bound, b.total_budget), (1, 6));
        let b = crossing_bound(&parse_pd(FIGURE_EIGHT).unwrap());
        assert_eq!((b.bound, b.total_budget), (3, 12));
    }

    #[test]
    fn figure_eight_is_alternating_knot() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert!(d.is_knot());
        assert!(is_alternating(&d));
        assert_eq!(d.faces().len(), 6);
    }

    #[test]
    fn swapped_crossing_breaks_alternation() {
        let d = parse_pd("X(4,2,5,1) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert!(!is_alternating(&d));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_pd("X(1,2,3,1)").unwrap_err().kind(), "LabelNotTwice");
        assert_eq!(parse_pd("X(1,2,3)").unwrap_err().kind(), "BadArity");
        assert_eq!(
            parse_pd("X(1,2,2,1) X(3,4,4,3)").unwrap_err(),
            KnotError::Disconnected
        );
        assert_eq!(parse_pd("Y(1,2,2,1)").unwrap_err().kind(), "Malformed");
        assert_eq!(parse_pd("").unwrap_err().kind(), "Malformed");
    }

    #[test]
    fn nonplanar_rotation_rejected() {
        // Trefoil with one crossing's slots reflected.
        let err = parse_pd("X(1,5,2,4) X(3,6,4,1) X(5,2,6,3)").unwrap_err();
        assert_eq!(err.kind(), "NonPlanar");
    }

    #[test]
    fn hopf_link_has_two_components() {
        let d = parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.faces().len(), 4);
    }

    #[test]
    fn braid_closures() {
        let trefoil = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(trefoil.face_census(), vec![(2, 3), (3, 2)]);
        assert!(trefoil.is_knot());
        assert!(is_alternating(&trefoil));
        let eight = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        assert!(eight.is_knot());
        assert!(is_alternating(&eight));
        assert_eq!(eight.faces().len(), 6);
        let mixed = braid_closure(2, &[1, -1, 1]).unwrap();
        assert!(!is_alternating(&mixed));
        assert_eq!(
            braid_closure(3, &[1, 1]).unwrap_err(),
            KnotError::Disconnected
        );
        assert_eq!(braid_closure(2, &[2]).unwrap_err().kind(), "Malformed");
    }

    #[test]
    fn geodesic_spot_values() {
        let rows = geodesic_bounds(&GeodesicInputs {
            tetrahedra: Some(4),
            heegaard: Some((2, vec![3, 3])),
            crossings: Some(5),
            rational_tangles: Some(3),
        })
        .unwrap();
        let bounds: Vec<i64> = rows.iter().map(|r| r.bound).collect();
        assert_eq!(bounds, vec![6, 3, 4, 4]);
        assert!(geodesic_bounds(&GeodesicInputs {
            crossings: Some(0),
            ..Default::default()
        })
        .is_err());
    }
}
