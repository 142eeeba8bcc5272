//! Normal surfaces in standard coordinates.
//!
//! Each tetrahedron carries seven coordinates: four triangle counts (one per
//! corner, indices 0..4) followed by three quad counts (indices 4..7). Quad
//! type `q` separates the vertex pairs listed in [`QUAD_PARTITIONS`].

use std::fmt;

use thiserror::Error;

use crate::triangulation::{Triangulation, TET_EDGES};

mod enumerate;
mod realize;

pub use enumerate::{enumerate_admissible, enumerate_vertex_surfaces, MAX_COORD_CAP, MAX_TETS};
pub use realize::{build_surface, ArcClass, ComponentSummary, Disc, PieceKind, SurfaceModel};

/// Vertex partitions of the three quad types; the first pair always
/// contains vertex 0.
pub const QUAD_PARTITIONS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

/// Quad type whose partition puts `a` and `b` on the same side.
pub fn quad_pairing(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    let other = if a == 0 {
        b
    } else if b == 0 {
        a
    } else {
        // {a, b} is the far side; the near side is {0, x} with x = 6 - a - b.
        6 - a - b
    };
    other - 1
}

/// Whether quad type `q` puts vertex `v` on the side containing vertex 0.
pub fn quad_near_side(q: usize, v: usize) -> bool {
    QUAD_PARTITIONS[q][0] == v || QUAD_PARTITIONS[q][1] == v
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalError {
    #[error("vector has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector is not an admissible normal surface")]
    NotAdmissible,
    #[error("surface is one-sided and cannot be doubled")]
    NonOrientableDouble,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("malformed vector text: {0}")]
    Malformed(String),
}

impl NormalError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::LengthMismatch { .. } => "LengthMismatch",
            Self::NotAdmissible => "NotAdmissible",
            Self::NonOrientableDouble => "NonOrientableDouble",
            Self::TooLarge(_) => "TooLarge",
            Self::Malformed(_) => "MalformedVector",
        }
    }
}

/// A vector of `7t` nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalVector {
    coords: Vec<u32>,
}

impl NormalVector {
    pub fn new(coords: Vec<u32>) -> Self {
        Self { coords }
    }

    pub fn zero(tet_count: usize) -> Self {
        Self {
            coords: vec![0; 7 * tet_count],
        }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    #[inline]
    pub fn triangle(&self, tet: usize, corner: usize) -> u32 {
        self.coords[7 * tet + corner]
    }

    #[inline]
    pub fn quad(&self, tet: usize, q: usize) -> u32 {
        self.coords[7 * tet + 4 + q]
    }

    /// Number of normal arcs cutting off `corner` in face `face` of `tet`.
    #[inline]
    pub fn arc_count(&self, tet: usize, face: usize, corner: usize) -> u32 {
        self.triangle(tet, corner) + self.quad(tet, quad_pairing(corner, face))
    }

    /// Intersection points with edge `(a, b)` of `tet`.
    pub fn edge_weight(&self, tet: usize, a: usize, b: usize) -> u32 {
        let same = quad_pairing(a, b);
        let q: u32 = (0..3)
            .filter(|&q| q != same)
            .map(|q| self.quad(tet, q))
            .sum();
        self.triangle(tet, a) + self.triangle(tet, b) + q
    }

    pub fn scaled(&self, k: u32) -> Self {
        Self::new(self.coords.iter().map(|&c| c * k).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.len() != other.len() {
            return None;
        }
        Some(Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Self) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// `nsv <t> <7t integers>`.
    pub fn to_text(&self) -> String {
        let mut s = format!("nsv {}", self.coords.len() / 7);
        for c in &self.coords {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, NormalError> {
        let mut words = text.split_whitespace();
        if words.next() != Some("nsv") {
            return Err(NormalError::Malformed("expected leading `nsv`".into()));
        }
        let t: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| NormalError::Malformed("missing tetrahedron count".into()))?;
        let coords: Vec<u32> = words
            .map(|w| w.parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| {
                NormalError::Malformed("coordinates must be nonnegative integers".into())
            })?;
        if coords.len() != 7 * t {
            return Err(NormalError::LengthMismatch {
                expected: 7 * t,
                got: coords.len(),
            });
        }
        Ok(Self::new(coords))
    }
}

impl fmt::Display for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses a list of `nsv` lines, skipping blanks and `#` comments.
pub fn parse_vector_list(text: &str) -> Result<Vec<NormalVector>, NormalError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(NormalVector::parse)
        .collect()
}

/// Which face side and corner a matching row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub tet: usize,
    pub face: usize,
    pub corner: usize,
}

/// The integer matching equations: one row per glued face pair and corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSystem {
    pub cols: usize,
    pub rows: Vec<Vec<i64>>,
    pub labels: Vec<RowLabel>,
}

impl MatchingSystem {
    /// Row residuals `rows · v`.
    pub fn apply(&self, v: &NormalVector) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v.coords()).map(|(&a, &x)| a * x as i64).sum())
            .collect()
    }

    /// Nonzero entries of each row as `(column, coefficient)`.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, i64)>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect()
            })
            .collect()
    }
}

pub fn matching_system(tri: &Triangulation) -> MatchingSystem {
    let cols = 7 * tri.tet_count();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for ((tet, face), g) in tri.face_pairs() {
        for corner in (0..4).filter(|&c| c != face) {
            let mut row = vec![0i64; cols];
            let img = g.perm.apply(corner);
            row[7 * tet + corner] += 1;
            row[7 * tet + 4 + quad_pairing(corner, face)] += 1;
            row[7 * g.tet + img] -= 1;
            row[7 * g.tet + 4 + quad_pairing(img, g.face)] -= 1;
            rows.push(row);
            labels.push(RowLabel { tet, face, corner });
        }
    }
    MatchingSystem { cols, rows, labels }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    QuadCondition {
        tet: usize,
    },
    Matching {
        row: usize,
        label: RowLabel,
        residual: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn is_admissible(
    tri: &Triangulation,
    v: &NormalVector,
) -> Result<AdmissibilityReport, NormalError> {
    let expected = 7 * tri.tet_count();
    if v.len() != expected {
        return Err(NormalError::LengthMismatch {
            expected,
            got: v.len(),
        });
    }
    let mut violations = Vec::new();
    for tet in 0..tri.tet_count() {
        if (0..3).filter(|&q| v.quad(tet, q) > 0).count() > 1 {
            violations.push(Violation::QuadCondition { tet });
        }
    }
    let system = matching_system(tri);
    for (row, residual) in system.apply(v).into_iter().enumerate() {
        if residual != 0 {
            violations.push(Violation::Matching {
                row,
                label: system.labels[row],
                residual,
            });
        }
    }
    Ok(AdmissibilityReport { violations })
}

fn require_admissible(tri: &Triangulation, v: &NormalVector) -> Result<(), NormalError> {
    if is_admissible(tri, v)?.is_admissible() {
        Ok(())
    } else {
        Err(NormalError::NotAdmissible)
    }
}

/// Vertex-link vector for each vertex class, in the order of
/// [`Triangulation::vertex_orbits`].
pub fn vertex_links(tri: &Triangulation) -> Vec<NormalVector> {
    tri.vertex_orbits()
        .into_iter()
        .map(|orbit| {
            let mut v = NormalVector::zero(tri.tet_count());
            for (tet, corner) in orbit {
                v.coords[7 * tet + corner] = 1;
            }
            v
        })
        .collect()
}

/// Cell counts `(V, E, F)` from the linear formulas: points per edge class,
/// half the arc total over all face-slots, and the disc total.
pub fn linear_cell_counts(tri: &Triangulation, v: &NormalVector) -> (i64, i64, i64) {
    let census = tri.skeleton_census();
    let verts: i64 = census
        .edge_orbits
        .iter()
        .map(|orbit| {
            let (tet, e) = orbit[0];
            let (a, b) = TET_EDGES[e];
            v.edge_weight(tet, a, b) as i64
        })
        .sum();
    let mut arc_sides = 0i64;
    for tet in 0..tri.tet_count() {
        for face in 0..4 {
            for corner in (0..4).filter(|&c| c != face) {
                arc_sides += v.arc_count(tet, face, corner) as i64;
            }
        }
    }
    let discs: i64 = v.coords().iter().map(|&c| c as i64).sum();
    (verts, arc_sides / 2, discs)
}

/// Euler characteristic of the realized surface. The linear count and the
/// explicit cell complex are both computed and must agree.
pub fn euler_characteristic(tri: &Triangulation, v: &NormalVector) -> Result<i64, NormalError> {
    require_admissible(tri, v)?;
    let (vv, e, f) = linear_cell_counts(tri, v);
    let linear = vv - e + f;
    let model = build_surface(tri, v, false)?;
    assert_eq!(
        linear,
        model.euler(),
        "linear and cell-complex Euler characteristics disagree for {v}"
    );
    Ok(linear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::parse_triangulation;

    fn double() -> Triangulation {
        let mut s = String::from("tets 2\n");
        for f in 0..4 {
            s.push_str(&format!("glue 0 {f} 1 {f} 0123\n"));
        }
        parse_triangulation(&s).unwrap()
    }

    #[test]
    fn quad_pairing_table() {
        assert_eq!(quad_pairing(0, 1), 0);
        assert_eq!(quad_pairing(2, 3), 0);
        assert_eq!(quad_pairing(0, 2), 1);
        assert_eq!(quad_pairing(3, 1), 1);
        assert_eq!(quad_pairing(0, 3), 2);
        assert_eq!(quad_pairing(1, 2), 2);
        for (q, p) in QUAD_PARTITIONS.iter().enumerate() {
            assert_eq!(quad_pairing(p[0], p[1]), q);
            assert_eq!(quad_pairing(p[2], p[3]), q);
        }
    }

    #[test]
    fn matching_shape_for_double() {
        let m = matching_system(&double());
        assert_eq!(m.rows.len(), 12);
        assert_eq!(m.cols, 14);
    }

    #[test]
    fn zero_vector_admissible() {
        let tri = double();
        assert!(is_admissible(&tri, &NormalVector::zero(2))
            .unwrap()
            .is_admissible());
    }

    #[test]
    fn vertex_links_admissible_with_euler_two() {
        let tri = double();
        let links = vertex_links(&tri);
        assert_eq!(links.len(), 4);
        for l in links {
            assert!(is_admissible(&tri, &l).unwrap().is_admissible());
            assert_eq!(euler_characteristic(&tri, &l).unwrap(), 2);
        }
    }

    #[test]
    fn two_quads_violate_quad_condition() {
        let tri = double();
        let mut c = vec![0; 14];
        c[4] = 1;
        c[5] = 1;
        c[11] = 1;
        c[12] = 1;
        let r = is_admissible(&tri, &NormalVector::new(c)).unwrap();
        assert!(r.violations.contains(&Violation::QuadCondition { tet: 0 }));
        assert!(!r.is_admissible());
    }

    #[test]
    fn length_mismatch() {
        let err = is_admissible(&double(), &NormalVector::zero(1)).unwrap_err();
        assert_eq!(err.kind(), "LengthMismatch");
    }

    #[test]
    fn text_round_trip() {
        let v = NormalVector::new((0..14).collect());
        assert_eq!(NormalVector::parse(&v.to_text()).unwrap(), v);
        assert_eq!(
            NormalVector::parse("nsv 1 1 2 3").unwrap_err().kind(),
            "LengthMismatch"
        );
    }

    #[test]
    fn not_admissible_rejected_by_euler() {
        let mut c = vec![0; 14];
        c[0] = 1;
        let err = euler_characteristic(&double(), &NormalVector::new(c)).unwrap_err();
        assert_eq!(err, NormalError::NotAdmissible);
    }
}
