//! Edge classification on the doubled surface and the genus bounds derived
//! from counting bad edges.
//!
//! `Q` is the graph cut on the doubled surface by the 2-skeleton. In a face,
//! the arcs at each corner come in copy pairs `(2k, 2k + 1)` with the
//! neighborhood of the surface between them. An arc is good when the region
//! on its other side is a strip between two parallel arcs, fair when it is
//! the innermost copy of a corner-most triangle, and bad otherwise.

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::normal_surface::{build_surface, NormalError, NormalVector, SurfaceModel};
use crate::triangulation::Triangulation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("tetrahedron count must be positive")]
    NonPositive,
    #[error("surface is one-sided and has no doubled copy")]
    OneSided,
    #[error("disc {index} meets the other disc system in {count} point(s); need at least 2")]
    ReducibleDisc { index: usize, count: u64 },
    #[error("expected {expected} disc intersection counts, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Normal(#[from] NormalError),
}

impl BoundsError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NonPositive => "NonPositive",
            Self::OneSided => "OneSided",
            Self::ReducibleDisc { .. } => "ReducibleDisc",
            Self::ArityMismatch { .. } => "ArityMismatch",
            Self::Normal(e) => e.kind(),
        }
    }
}

/// Genus bound for a closed two-sided acylindrical surface in a manifold
/// triangulated by `t` tetrahedra: `floor((t + 1) / 2)`.
pub fn prop1_bound(t: i64) -> Result<i64, BoundsError> {
    if t < 1 {
        return Err(BoundsError::NonPositive);
    }
    Ok(Integer::div_floor(&(t + 1), &2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Good,
    Fair,
    Bad,
}

impl EdgeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeLabel::Good => "good",
            EdgeLabel::Fair => "fair",
            EdgeLabel::Bad => "bad",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QEdge {
    pub slot: (usize, usize),
    pub corner: usize,
    pub position: u32,
    pub label: EdgeLabel,
    /// Vertices of `Q` at the two ends.
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TetTally {
    /// Bad edges on the faces of this tetrahedron, counted per face-slot.
    pub bad_edges: u64,
    /// Pieces of the doubled surface in this tetrahedron with a bad edge.
    /// None of them lies in the simply connected part, which is built from
    /// pieces without bad edges.
    pub bad_pieces: u64,
}

impl TetTally {
    /// `bad_edges / 2 - bad_pieces`, which must not exceed 2.
    pub fn excess(&self) -> Ratio<i64> {
        Ratio::new(self.bad_edges as i64, 2) - Ratio::from_integer(self.bad_pieces as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub edges: Vec<QEdge>,
    /// Non-good edges per glued face, keyed by the smaller face-slot.
    pub per_face_nongood: Vec<((usize, usize), u32)>,
    pub per_tet: Vec<TetTally>,
    /// Pieces (discs of the doubled surface) all of whose edges are good or
    /// fair.
    pub simple_pieces: Vec<bool>,
    pub vertex_count: usize,
}

impl EdgeClassification {
    pub fn count(&self, label: EdgeLabel) -> usize {
        self.edges.iter().filter(|e| e.label == label).count()
    }

    /// Whether the good and fair subgraphs share a vertex.
    pub fn good_fair_disjoint(&self) -> bool {
        let mut touched = vec![0u8; self.vertex_count];
        for e in &self.edges {
            let bit = match e.label {
                EdgeLabel::Good => 1,
                EdgeLabel::Fair => 2,
                EdgeLabel::Bad => 0,
            };
            for &v in &e.ends {
                touched[v] |= bit;
            }
        }
        touched.iter().all(|&b| b != 3)
    }

    pub fn max_face_nongood(&self) -> u32 {
        self.per_face_nongood
            .iter()
            .map(|&(_, n)| n)
            .max()
            .unwrap_or(0)
    }
}

fn label_arc(
    tri: &Triangulation,
    doubled: &NormalVector,
    slot: (usize, usize),
    corner: usize,
    pos: u32,
) -> EdgeLabel {
    let (tet, face) = slot;
    let count = doubled.arc_count(tet, face, corner);
    let toward_corner_is_outside = pos.is_multiple_of(2);
    if toward_corner_is_outside {
        if pos > 0 {
            return EdgeLabel::Good;
        }
        let g = tri.glued(tet, face);
        let corner_triangle =
            doubled.triangle(tet, corner) > 0 || doubled.triangle(g.tet, g.perm.apply(corner)) > 0;
        if corner_triangle {
            EdgeLabel::Fair
        } else {
            EdgeLabel::Bad
        }
    } else if pos + 1 < count {
        EdgeLabel::Good
    } else {
        EdgeLabel::Bad
    }
}

/// Labels every edge of `Q` for the doubled copy of `v`.
pub fn classify_edges(
    tri: &Triangulation,
    v: &NormalVector,
) -> Result<EdgeClassification, BoundsError> {
    let model = match build_surface(tri, v, true) {
        Ok(m) => m,
        Err(NormalError::NonOrientableDouble) => return Err(BoundsError::OneSided),
        Err(e) => return Err(e.into()),
    };
    Ok(classify_model(tri, v, &model))
}

fn classify_model(
    tri: &Triangulation,
    v: &NormalVector,
    model: &SurfaceModel,
) -> EdgeClassification {
    let doubled = v.scaled(2);
    let edges: Vec<QEdge> = model
        .arcs
        .iter()
        .map(|a| QEdge {
            slot: a.slot,
            corner: a.corner,
            position: a.position,
            label: label_arc(tri, &doubled, a.slot, a.corner, a.position),
            ends: a.ends,
        })
        .collect();

    let mut per_face_nongood: Vec<((usize, usize), u32)> =
        tri.face_pairs().into_iter().map(|(s, _)| (s, 0)).collect();
    for e in &edges {
        if e.label != EdgeLabel::Good {
            let slot = per_face_nongood
                .iter_mut()
                .find(|(s, _)| *s == e.slot)
                .expect("arc slot is a face pair");
            slot.1 += 1;
        }
    }

    let simple_pieces: Vec<bool> = model
        .disc_arcs
        .iter()
        .map(|arcs| arcs.iter().all(|&a| edges[a].label != EdgeLabel::Bad))
        .collect();

    let mut per_tet = vec![TetTally::default(); tri.tet_count()];
    for (d, disc) in model.discs.iter().enumerate() {
        let bad = model.disc_arcs[d]
            .iter()
            .filter(|&&a| edges[a].label == EdgeLabel::Bad)
            .count() as u64;
        let tally = &mut per_tet[disc.tet];
        tally.bad_edges += bad;
        if bad > 0 {
            tally.bad_pieces += 1;
        }
    }

    EdgeClassification {
        edges,
        per_face_nongood,
        per_tet,
        simple_pieces,
        vertex_count: model.vertex_count,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    AnnulusOrCompressionForced,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::AnnulusOrCompressionForced => "annulus-or-compression-forced",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingCertificate {
    pub good_total: usize,
    pub fair_total: usize,
    pub bad_total: usize,
    /// Pieces with a bad edge, summed over tetrahedra.
    pub bad_piece_total: u64,
    pub rank_h1_fbar: i64,
    pub chi_fbar: i64,
    /// `2 - e + f` with `e` the bad edges and `f` the pieces holding them.
    pub chi_fs_bound: i64,
    /// Whether `chi_fbar >= chi_fs_bound`. Expected for acylindrical
    /// incompressible surfaces only.
    pub euler_accounting_holds: bool,
    pub bound_value: i64,
    pub genus: Option<u32>,
    /// Largest `e/2 - f` over tetrahedra.
    pub max_tet_excess: Ratio<i64>,
    pub tet_inequality_holds: bool,
    pub verdict: Verdict,
}

pub fn counting_certificate(
    tri: &Triangulation,
    v: &NormalVector,
) -> Result<CountingCertificate, BoundsError> {
    let model = match build_surface(tri, v, true) {
        Ok(m) => m,
        Err(NormalError::NonOrientableDouble) => return Err(BoundsError::OneSided),
        Err(e) => return Err(e.into()),
    };
    let cls = classify_model(tri, v, &model);
    let single = build_surface(tri, v, false)?;
    let bad_total = cls.count(EdgeLabel::Bad);
    let bad_piece_total: u64 = cls.per_tet.iter().map(|t| t.bad_pieces).sum();
    let rank_h1_fbar = model.betti_one();
    let max_tet_excess = cls
        .per_tet
        .iter()
        .map(TetTally::excess)
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0));
    let chi_fs_bound = 2 - bad_total as i64 + bad_piece_total as i64;
    let genus = match single.components.as_slice() {
        [c] => c.genus,
        _ => None,
    };
    Ok(CountingCertificate {
        good_total: cls.count(EdgeLabel::Good),
        fair_total: cls.count(EdgeLabel::Fair),
        bad_total,
        bad_piece_total,
        rank_h1_fbar,
        chi_fbar: model.euler(),
        chi_fs_bound,
        euler_accounting_holds: model.euler() >= chi_fs_bound,
        bound_value: Integer::div_floor(&(2 + 2 * tri.tet_count() as i64), &4),
        genus,
        max_tet_excess,
        tet_inequality_holds: max_tet_excess <= Ratio::from_integer(2),
        verdict: if rank_h1_fbar > bad_total as i64 {
            Verdict::AnnulusOrCompressionForced
        } else {
            Verdict::Consistent
        },
    })
}

/// Output of [`heegaard_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardBound {
    /// Total intersection number `n`.
    pub complexity: u64,
    /// `n - 3g/2`.
    pub direct: Ratio<i64>,
    /// `sum(4 n_i - 6) / 4`.
    pub from_bad_edges: Ratio<i64>,
    /// Largest admissible bad-edge count, `sum(4 n_i - 6)`.
    pub bad_edge_cap: i64,
    pub genus_bound: i64,
}

/// Genus bound from a genus-`g` Heegaard splitting whose disc `D_i` meets
/// the other disc system in `n_i` points.
pub fn heegaard_bound(g: usize, n_i: &[u64]) -> Result<HeegaardBound, BoundsError> {
    if n_i.len() != g {
        return Err(BoundsError::ArityMismatch {
            expected: g,
            got: n_i.len(),
        });
    }
    if let Some((index, &count)) = n_i.iter().enumerate().find(|(_, &c)| c <= 1) {
        return Err(BoundsError::ReducibleDisc { index, count });
    }
    let n: u64 = n_i.iter().sum();
    let direct = Ratio::from_integer(n as i64) - Ratio::new(3 * g as i64, 2);
    let bad_edge_cap: i64 = n_i.iter().map(|&x| 4 * x as i64 - 6).sum();
    let from_bad_edges = Ratio::new(bad_edge_cap, 4);
    assert_eq!(direct, from_bad_edges, "sum(4n_i - 6) must equal 4n - 6g");
    Ok(HeegaardBound {
        complexity: n,
        direct,
        from_bad_edges,
        bad_edge_cap,
        genus_bound: direct.floor().to_integer(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_surface::vertex_links;
    use crate::triangulation::parse_triangulation;

    fn double() -> Triangulation {
        let mut s = String::from("tets 2\n");
        for f in 0..4 {
            s.push_str(&format!("glue 0 {f} 1 {f} 0123\n"));
        }
        parse_triangulation(&s).unwrap()
    }

    #[test]
    fn prop1_values() {
        assert_eq!(prop1_bound(1).unwrap(), 1);
        assert_eq!(prop1_bound(5).unwrap(), 3);
        assert_eq!(prop1_bound(2).unwrap(), 1);
        assert_eq!(prop1_bound(0).unwrap_err(), BoundsError::NonPositive);
    }

    #[test]
    fn vertex_link_in_double_three_fair_three_bad() {
        let tri = double();
        let link = &vertex_links(&tri)[0];
        let cls = classify_edges(&tri, link).unwrap();
        assert_eq!(cls.count(EdgeLabel::Fair), 3);
        assert_eq!(cls.count(EdgeLabel::Bad), 3);
        assert_eq!(cls.count(EdgeLabel::Good), 0);
        // The inner copy's edge sits nearest the corner.
        for e in &cls.edges {
            let want = if e.position == 0 {
                EdgeLabel::Fair
            } else {
                EdgeLabel::Bad
            };
            assert_eq!(e.label, want);
        }
    }

    #[test]
    fn zero_vector_classifies_empty() {
        let tri = double();
        let cls = classify_edges(&tri, &NormalVector::zero(2)).unwrap();
        assert!(cls.edges.is_empty());
        let cert = counting_certificate(&tri, &NormalVector::zero(2)).unwrap();
        assert_eq!(cert.rank_h1_fbar, 0);
        assert_eq!(cert.verdict, Verdict::Consistent);
    }

    #[test]
    fn doubled_link_certificate() {
        let tri = double();
        let link = &vertex_links(&tri)[1];
        let cert = counting_certificate(&tri, link).unwrap();
        assert_eq!(cert.rank_h1_fbar, 0);
        assert_eq!(cert.chi_fbar, 4);
        assert_eq!(cert.verdict, Verdict::Consistent);
        assert_eq!(cert.bound_value, prop1_bound(2).unwrap());
    }

    #[test]
    fn heegaard_examples() {
        let h = heegaard_bound(2, &[3, 3]).unwrap();
        assert_eq!(h.genus_bound, 3);
        assert_eq!(h.complexity, 6);
        assert_eq!(h.bad_edge_cap, 12);
        let h = heegaard_bound(1, &[2]).unwrap();
        assert_eq!(h.direct, Ratio::new(1, 2));
        assert_eq!(h.genus_bound, 0);
        assert_eq!(
            heegaard_bound(2, &[3, 1]).unwrap_err().kind(),
            "ReducibleDisc"
        );
        assert_eq!(heegaard_bound(2, &[3]).unwrap_err().kind(), "ArityMismatch");
    }
}
