//! Explicit cell structure of a normal surface.
//!
//! Discs are indexed by `(tet, piece, index)`. Triangles at a corner are
//! numbered outward from that corner; quads are numbered from the side of
//! their partition containing vertex 0. Arcs in a face are numbered outward
//! from the corner they cut off, and points on an edge `(a, b)` with `a < b`
//! are numbered from `a`.

use super::{
    quad_near_side, quad_pairing, require_admissible, NormalError, NormalVector, QUAD_PARTITIONS,
};
use crate::triangulation::{edge_index, Triangulation};
use crate::union_find::{DisjointSet, ParitySet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceKind {
    Triangle(u8),
    Quad(u8),
}

impl PieceKind {
    /// Column offset inside a tetrahedron's seven coordinates.
    pub fn column(self) -> usize {
        match self {
            PieceKind::Triangle(c) => c as usize,
            PieceKind::Quad(q) => 4 + q as usize,
        }
    }

    fn from_column(col: usize) -> Self {
        if col < 4 {
            PieceKind::Triangle(col as u8)
        } else {
            PieceKind::Quad((col - 4) as u8)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Disc {
    pub tet: usize,
    pub piece: PieceKind,
    pub index: u32,
}

/// One edge of the surface: a pair of glued normal arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcClass {
    /// The lexicographically smaller of the two face-slots.
    pub slot: (usize, usize),
    /// Corner cut off, in the frame of `slot`.
    pub corner: usize,
    /// Position outward from `corner`.
    pub position: u32,
    /// Disc on the `slot` side, then disc on the partner side.
    pub discs: [usize; 2],
    /// Surface vertices at the two ends.
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    pub discs: usize,
    pub edges: usize,
    pub vertices: usize,
    pub euler: i64,
    pub orientable: bool,
    pub two_sided: bool,
    /// Present only for orientable components.
    pub genus: Option<u32>,
}

impl ComponentSummary {
    /// Rank of rational first homology of this closed component.
    pub fn betti_one(&self) -> i64 {
        if self.orientable {
            2 - self.euler
        } else {
            1 - self.euler
        }
    }
}

/// The realized surface as an explicit cell complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub discs: Vec<Disc>,
    /// Arc classes bounding each disc, in boundary order.
    pub disc_arcs: Vec<Vec<usize>>,
    pub disc_component: Vec<usize>,
    pub arcs: Vec<ArcClass>,
    pub vertex_count: usize,
    pub components: Vec<ComponentSummary>,
    pub doubled: bool,
}

impl SurfaceModel {
    pub fn euler(&self) -> i64 {
        self.vertex_count as i64 - self.arcs.len() as i64 + self.discs.len() as i64
    }

    pub fn is_orientable(&self) -> bool {
        self.components.iter().all(|c| c.orientable)
    }

    pub fn is_two_sided(&self) -> bool {
        self.components.iter().all(|c| c.two_sided)
    }

    pub fn betti_one(&self) -> i64 {
        self.components.iter().map(|c| c.betti_one()).sum()
    }
}

/// Index tables for one normal vector.
struct Layout<'a> {
    v: &'a NormalVector,
    disc_base: Vec<usize>,
    point_base: Vec<usize>,
    side_base: Vec<usize>,
}

impl<'a> Layout<'a> {
    fn new(t: usize, v: &'a NormalVector) -> Self {
        let mut disc_base = Vec::with_capacity(7 * t + 1);
        let mut acc = 0;
        for &c in v.coords() {
            disc_base.push(acc);
            acc += c as usize;
        }
        disc_base.push(acc);

        let mut point_base = Vec::with_capacity(6 * t + 1);
        let mut acc = 0;
        for tet in 0..t {
            for &(a, b) in crate::triangulation::TET_EDGES.iter() {
                point_base.push(acc);
                acc += v.edge_weight(tet, a, b) as usize;
            }
        }
        point_base.push(acc);

        // Sides are grouped by (tet, face, corner) with corner 0..4 (the
        // entry for corner == face is empty).
        let mut side_base = Vec::with_capacity(16 * t + 1);
        let mut acc = 0;
        for tet in 0..t {
            for face in 0..4 {
                for corner in 0..4 {
                    side_base.push(acc);
                    if corner != face {
                        acc += v.arc_count(tet, face, corner) as usize;
                    }
                }
            }
        }
        side_base.push(acc);
        Layout {
            v,
            disc_base,
            point_base,
            side_base,
        }
    }

    fn disc_count(&self) -> usize {
        *self.disc_base.last().unwrap()
    }

    fn point_count(&self) -> usize {
        *self.point_base.last().unwrap()
    }

    fn side_count(&self) -> usize {
        *self.side_base.last().unwrap()
    }

    fn disc_id(&self, tet: usize, col: usize, index: u32) -> usize {
        self.disc_base[7 * tet + col] + index as usize
    }

    /// Point `k` outward from `from` on edge `(from, to)`.
    fn point(&self, tet: usize, from: usize, to: usize, k: u32) -> usize {
        let e = edge_index(from, to);
        let w = self.v.edge_weight(tet, from, to);
        debug_assert!(k < w);
        let idx = if from < to { k } else { w - 1 - k };
        self.point_base[6 * tet + e] + idx as usize
    }

    fn side(&self, tet: usize, face: usize, corner: usize, pos: u32) -> usize {
        self.side_base[16 * tet + 4 * face + corner] + pos as usize
    }

    /// Disc owning the arc at `pos` outward from `corner` in `face`.
    fn side_owner(&self, tet: usize, face: usize, corner: usize, pos: u32) -> usize {
        let tri = self.v.triangle(tet, corner);
        if pos < tri {
            return self.disc_id(tet, corner, pos);
        }
        let q = quad_pairing(corner, face);
        let from_corner = pos - tri;
        let count = self.v.quad(tet, q);
        let index = if quad_near_side(q, corner) {
            from_corner
        } else {
            count - 1 - from_corner
        };
        self.disc_id(tet, 4 + q, index)
    }
}

/// Other two vertices of `face` besides `corner`, ascending.
fn face_others(face: usize, corner: usize) -> (usize, usize) {
    let mut it = (0..4).filter(|&x| x != face && x != corner);
    (it.next().unwrap(), it.next().unwrap())
}

/// A disc's boundary arc: the side id, which face/corner/position it sits
/// at, and whether the disc's reference direction runs from the end on edge
/// `(corner, lo)` to the end on `(corner, hi)`.
struct BoundarySide {
    side: usize,
    tet: usize,
    face: usize,
    corner: usize,
    pos: u32,
    lo_to_hi: bool,
    toward_corner: bool,
}

fn disc_boundary(layout: &Layout, tet: usize, piece: PieceKind, index: u32) -> Vec<BoundarySide> {
    let v = layout.v;
    let mut out = Vec::with_capacity(4);
    // Each boundary arc is given by its face, the corner it cuts off, its
    // position, the vertex whose edge holds the starting end, and whether the
    // reference normal points toward the corner.
    let mut push = |face: usize, corner: usize, pos: u32, from: usize, toward: bool| {
        let (lo, _) = face_others(face, corner);
        out.push(BoundarySide {
            side: layout.side(tet, face, corner, pos),
            tet,
            face,
            corner,
            pos,
            lo_to_hi: from == lo,
            toward_corner: toward,
        });
    };
    match piece {
        PieceKind::Triangle(c) => {
            let c = c as usize;
            let others: Vec<usize> = (0..4).filter(|&x| x != c).collect();
            let (a, b, d) = (others[0], others[1], others[2]);
            // P_a -> P_b -> P_d, normal toward the corner.
            push(d, c, index, a, true);
            push(a, c, index, b, true);
            push(b, c, index, d, true);
        }
        PieceKind::Quad(q) => {
            let q = q as usize;
            let [a, b, c, d] = QUAD_PARTITIONS[q];
            let count = v.quad(tet, q);
            let pos_at = |corner: usize| -> u32 {
                let from_side = if quad_near_side(q, corner) {
                    index
                } else {
                    count - 1 - index
                };
                v.triangle(tet, corner) + from_side
            };
            // P_ac -> P_ad -> P_bd -> P_bc, normal toward the {a, b} side.
            push(b, a, pos_at(a), c, true);
            push(c, d, pos_at(d), a, false);
            push(a, b, pos_at(b), d, true);
            push(d, c, pos_at(c), b, false);
        }
    }
    out
}

/// Realizes `v` (or the boundary of its regular neighborhood when `doubled`)
/// as a cell complex and summarizes its components.
pub fn build_surface(
    tri: &Triangulation,
    v: &NormalVector,
    doubled: bool,
) -> Result<SurfaceModel, NormalError> {
    require_admissible(tri, v)?;
    if doubled {
        let single = realize(tri, v, false);
        if !single.is_two_sided() {
            return Err(NormalError::NonOrientableDouble);
        }
        let twice = v.scaled(2);
        return Ok(realize(tri, &twice, true));
    }
    Ok(realize(tri, v, false))
}

fn realize(tri: &Triangulation, v: &NormalVector, doubled: bool) -> SurfaceModel {
    let t = tri.tet_count();
    let layout = Layout::new(t, v);

    let mut discs = Vec::with_capacity(layout.disc_count());
    let mut boundaries = Vec::with_capacity(layout.disc_count());
    for tet in 0..t {
        for col in 0..7 {
            let piece = PieceKind::from_column(col);
            for index in 0..v.coords()[7 * tet + col] {
                discs.push(Disc { tet, piece, index });
                boundaries.push(disc_boundary(&layout, tet, piece, index));
            }
        }
    }

    // Per side: owning disc, direction bit and co-orientation bit.
    let n_sides = layout.side_count();
    let mut side_disc = vec![usize::MAX; n_sides];
    let mut side_dir = vec![false; n_sides];
    let mut side_toward = vec![false; n_sides];
    for (d, bnd) in boundaries.iter().enumerate() {
        for s in bnd {
            debug_assert_eq!(layout.side_owner(s.tet, s.face, s.corner, s.pos), d);
            side_disc[s.side] = d;
            side_dir[s.side] = s.lo_to_hi;
            side_toward[s.side] = s.toward_corner;
        }
    }

    let mut points = DisjointSet::new(layout.point_count());
    let mut comps = DisjointSet::new(discs.len());
    let mut orient = ParitySet::new(discs.len());
    let mut coorient = ParitySet::new(discs.len());
    let mut side_class = vec![usize::MAX; n_sides];
    let mut raw_arcs: Vec<(usize, usize, usize, u32, usize, usize)> = Vec::new();

    for tet in 0..t {
        for face in 0..4 {
            let g = tri.glued(tet, face);
            let primary = (tet, face) < (g.tet, g.face);
            for corner in (0..4).filter(|&c| c != face) {
                let img = g.perm.apply(corner);
                let (lo, hi) = face_others(face, corner);
                let (img_lo, _) = face_others(g.face, img);
                // Does our `lo` end land on the partner's `lo` end?
                let lo_maps_lo = g.perm.apply(lo) == img_lo;
                for pos in 0..v.arc_count(tet, face, corner) {
                    let s = layout.side(tet, face, corner, pos);
                    let p = layout.side(g.tet, g.face, img, pos);
                    points.union(
                        layout.point(tet, corner, lo, pos),
                        layout.point(g.tet, img, g.perm.apply(lo), pos),
                    );
                    points.union(
                        layout.point(tet, corner, hi, pos),
                        layout.point(g.tet, img, g.perm.apply(hi), pos),
                    );
                    if !primary {
                        continue;
                    }
                    let (d1, d2) = (side_disc[s], side_disc[p]);
                    comps.union(d1, d2);
                    let same_direction = side_dir[s] == (side_dir[p] == lo_maps_lo);
                    orient.relate(d1, d2, same_direction);
                    coorient.relate(d1, d2, side_toward[s] != side_toward[p]);
                    let class = raw_arcs.len();
                    side_class[s] = class;
                    side_class[p] = class;
                    raw_arcs.push((tet, face, corner, pos, d1, d2));
                }
            }
        }
    }

    let (point_label, vertex_count) = points.labels();
    let arcs: Vec<ArcClass> = raw_arcs
        .iter()
        .map(|&(tet, face, corner, pos, d1, d2)| {
            let (lo, hi) = face_others(face, corner);
            let lo_point = layout.point(tet, corner, lo, pos);
            let hi_point = layout.point(tet, corner, hi, pos);
            ArcClass {
                slot: (tet, face),
                corner,
                position: pos,
                discs: [d1, d2],
                ends: [point_label[lo_point], point_label[hi_point]],
            }
        })
        .collect();
    let disc_arcs: Vec<Vec<usize>> = boundaries
        .iter()
        .map(|bnd| bnd.iter().map(|s| side_class[s.side]).collect())
        .collect();

    // Components numbered by their first disc in (tet, piece, index) order;
    // discs are already stored in that order.
    let (disc_component, n_comp) = comps.labels();
    let mut summaries = vec![
        ComponentSummary {
            discs: 0,
            edges: 0,
            vertices: 0,
            euler: 0,
            orientable: true,
            two_sided: true,
            genus: None,
        };
        n_comp
    ];
    for (d, &c) in disc_component.iter().enumerate() {
        summaries[c].discs += 1;
        summaries[c].orientable &= orient.is_consistent(d);
        summaries[c].two_sided &= coorient.is_consistent(d);
    }
    let mut vertex_component = vec![usize::MAX; vertex_count];
    for a in &arcs {
        let c = disc_component[a.discs[0]];
        summaries[c].edges += 1;
        for &e in &a.ends {
            vertex_component[e] = c;
        }
    }
    for &c in &vertex_component {
        summaries[c].vertices += 1;
    }
    for s in summaries.iter_mut() {
        s.euler = s.vertices as i64 - s.edges as i64 + s.discs as i64;
        if s.orientable {
            s.genus = Some(((2 - s.euler) / 2) as u32);
        }
    }

    SurfaceModel {
        discs,
        disc_arcs,
        disc_component,
        arcs,
        vertex_count,
        components: summaries,
        doubled,
    }
}
