//! Closed (pseudo)triangulations given as tetrahedra with face gluings.
//!
//! Face `f` of a tetrahedron is the face opposite vertex `f`. A gluing of
//! face `f` of tetrahedron `i` to face `g` of tetrahedron `j` is recorded as
//! the vertex map `k -> p[k]`, which necessarily sends `f` to `g`.

use std::fmt;

use thiserror::Error;

use crate::union_find::{DisjointSet, ParitySet};

/// The six edges of a tetrahedron, as vertex pairs.
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`TET_EDGES`] of the edge joining `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge of a tetrahedron: ({a}, {b})"),
    }
}

/// A permutation of `{0, 1, 2, 3}` stored as its images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    #[inline]
    pub fn apply(self, k: usize) -> usize {
        self.0[k] as usize
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0u8; 4];
        for (k, &p) in self.0.iter().enumerate() {
            inv[p as usize] = k as u8;
        }
        Perm4(inv)
    }

    /// `true` for odd permutations.
    pub fn is_odd(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..256u32).filter_map(|code| {
            let images = [
                (code & 3) as u8,
                ((code >> 2) & 3) as u8,
                ((code >> 4) & 3) as u8,
                ((code >> 6) & 3) as u8,
            ];
            Perm4::new(images)
        })
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Where a face-slot is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: Perm4,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("face {face} of tetrahedron {tet} is not glued")]
    UnpairedFace { tet: usize, face: usize },
    #[error("face {face} of tetrahedron {tet} is glued inconsistently")]
    NonInvolutiveGluing { tet: usize, face: usize },
    #[error("face {face} of tetrahedron {tet} is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("Euler characteristic V-E+F-T = {} (census {census})", census.euler())]
    EulerMismatch { census: SkeletonCensus },
}

impl TriangulationError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::MalformedLine { .. } => "MalformedLine",
            Self::UnpairedFace { .. } => "UnpairedFace",
            Self::NonInvolutiveGluing { .. } => "NonInvolutiveGluing",
            Self::SelfGluedFace { .. } => "SelfGluedFace",
            Self::EulerMismatch { .. } => "EulerMismatch",
        }
    }
}

/// Counts of identification classes, plus the edge orbits themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonCensus {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub tetrahedra: usize,
    /// Each orbit lists `(tet, edge index)` pairs, sorted; orbits are sorted
    /// by their first member.
    pub edge_orbits: Vec<Vec<(usize, usize)>>,
}

impl SkeletonCensus {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 - self.tetrahedra as i64
    }
}

impl fmt::Display for SkeletonCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} T={}",
            self.vertices, self.edges, self.faces, self.tetrahedra
        )
    }
}

/// A closed triangulation. Immutable once constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
}

impl Triangulation {
    /// Builds a triangulation from a list of gluings, each listed once.
    pub fn from_gluings(
        tet_count: usize,
        pairs: &[(usize, usize, usize, usize, Perm4)],
    ) -> Result<Self, TriangulationError> {
        let mut slots: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; tet_count];
        for (idx, &(i, f, j, g, perm)) in pairs.iter().enumerate() {
            attach(&mut slots, idx + 1, i, f, j, g, perm)?;
        }
        Self::finish(slots)
    }

    fn finish(slots: Vec<[Option<Gluing>; 4]>) -> Result<Self, TriangulationError> {
        let mut gluings = Vec::with_capacity(slots.len());
        for (tet, row) in slots.iter().enumerate() {
            let mut out = [Gluing {
                tet: 0,
                face: 0,
                perm: Perm4::IDENTITY,
            }; 4];
            for face in 0..4 {
                out[face] = row[face].ok_or(TriangulationError::UnpairedFace { tet, face })?;
            }
            gluings.push(out);
        }
        let tri = Triangulation { gluings };
        let census = tri.skeleton_census();
        if census.euler() != 0 {
            return Err(TriangulationError::EulerMismatch { census });
        }
        Ok(tri)
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    /// The slot glued to face `face` of tetrahedron `tet`.
    #[inline]
    pub fn glued(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    /// Each glued pair once, as `(tet, face)` with the lexicographically
    /// smaller slot first.
    pub fn face_pairs(&self) -> Vec<((usize, usize), Gluing)> {
        let mut out = Vec::with_capacity(2 * self.tet_count());
        for tet in 0..self.tet_count() {
            for face in 0..4 {
                let g = self.glued(tet, face);
                if (tet, face) < (g.tet, g.face) {
                    out.push(((tet, face), g));
                }
            }
        }
        out
    }

    pub fn skeleton_census(&self) -> SkeletonCensus {
        let t = self.tet_count();
        let mut verts = DisjointSet::new(4 * t);
        let mut edges = DisjointSet::new(6 * t);
        for tet in 0..t {
            for face in 0..4 {
                let g = self.glued(tet, face);
                for k in (0..4).filter(|&k| k != face) {
                    verts.union(4 * tet + k, 4 * g.tet + g.perm.apply(k));
                }
                for (e, &(a, b)) in TET_EDGES.iter().enumerate() {
                    if a == face || b == face {
                        continue;
                    }
                    let img = edge_index(g.perm.apply(a), g.perm.apply(b));
                    edges.union(6 * tet + e, 6 * g.tet + img);
                }
            }
        }
        let (labels, edge_count) = edges.labels();
        let mut edge_orbits = vec![Vec::new(); edge_count];
        for (idx, &l) in labels.iter().enumerate() {
            edge_orbits[l].push((idx / 6, idx % 6));
        }
        SkeletonCensus {
            vertices: verts.count(),
            edges: edge_count,
            faces: 2 * t,
            tetrahedra: t,
            edge_orbits,
        }
    }

    /// Vertex classes of the triangulation: each is a sorted list of
    /// `(tet, corner)` pairs; classes are ordered by first member.
    pub fn vertex_orbits(&self) -> Vec<Vec<(usize, usize)>> {
        let t = self.tet_count();
        let mut verts = DisjointSet::new(4 * t);
        for tet in 0..t {
            for face in 0..4 {
                let g = self.glued(tet, face);
                for k in (0..4).filter(|&k| k != face) {
                    verts.union(4 * tet + k, 4 * g.tet + g.perm.apply(k));
                }
            }
        }
        let (labels, n) = verts.labels();
        let mut out = vec![Vec::new(); n];
        for (idx, &l) in labels.iter().enumerate() {
            out[l].push((idx / 4, idx % 4));
        }
        out
    }

    /// Whether the tetrahedra can be oriented so every gluing reverses
    /// orientation.
    pub fn is_orientable(&self) -> bool {
        let t = self.tet_count();
        let mut ps = ParitySet::new(t);
        for ((tet, _), g) in self.face_pairs() {
            // Odd gluing permutations join tetrahedra of equal orientation.
            ps.relate(tet, g.tet, !g.perm.is_odd());
        }
        (0..t).all(|i| ps.is_consistent(i))
    }

    /// Canonical text form; parses back to an equal value.
    pub fn to_text(&self) -> String {
        let mut out = format!("tets {}\n", self.tet_count());
        for ((i, f), g) in self.face_pairs() {
            out.push_str(&format!(
                "glue {} {} {} {} {}\n",
                i, f, g.tet, g.face, g.perm
            ));
        }
        out
    }
}

fn attach(
    slots: &mut [[Option<Gluing>; 4]],
    line: usize,
    i: usize,
    f: usize,
    j: usize,
    g: usize,
    perm: Perm4,
) -> Result<(), TriangulationError> {
    let t = slots.len();
    let malformed = |reason: String| TriangulationError::MalformedLine { line, reason };
    if i >= t || j >= t {
        return Err(malformed(format!(
            "tetrahedron index out of range (tets {t})"
        )));
    }
    if f > 3 || g > 3 {
        return Err(malformed("face index must be 0..3".into()));
    }
    if perm.apply(f) != g {
        return Err(malformed(format!(
            "permutation {perm} does not send vertex {f} to {g}"
        )));
    }
    if (i, f) == (j, g) {
        return Err(TriangulationError::SelfGluedFace { tet: i, face: f });
    }
    let fwd = Gluing {
        tet: j,
        face: g,
        perm,
    };
    let back = Gluing {
        tet: i,
        face: f,
        perm: perm.inverse(),
    };
    for (slot, want) in [((i, f), fwd), ((j, g), back)] {
        match slots[slot.0][slot.1] {
            None => {}
            Some(existing) if existing == want => {}
            Some(_) => {
                return Err(TriangulationError::NonInvolutiveGluing {
                    tet: slot.0,
                    face: slot.1,
                })
            }
        }
    }
    slots[i][f] = Some(fwd);
    slots[j][g] = Some(back);
    Ok(())
}

/// Parses the line-oriented gluing format:
///
/// ```text
/// tets <t>
/// glue <i> <f> <j> <g> <p0p1p2p3>
/// ```
///
/// Blank lines are skipped and `#` starts a comment.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, TriangulationError> {
    let mut slots: Option<Vec<[Option<Gluing>; 4]>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let malformed = |reason: &str| TriangulationError::MalformedLine {
            line,
            reason: reason.to_string(),
        };
        let words: Vec<&str> = content.split_whitespace().collect();
        match (words[0], slots.as_mut()) {
            ("tets", None) => {
                if words.len() != 2 {
                    return Err(malformed("expected `tets <t>`"));
                }
                let t: usize = words[1]
                    .parse()
                    .map_err(|_| malformed("tetrahedron count is not an integer"))?;
                if t == 0 {
                    return Err(malformed("tetrahedron count must be positive"));
                }
                slots = Some(vec![[None; 4]; t]);
            }
            ("tets", Some(_)) => return Err(malformed("duplicate `tets` header")),
            ("glue", None) => return Err(malformed("`glue` before `tets` header")),
            ("glue", Some(slots)) => {
                if words.len() != 6 {
                    return Err(malformed("expected `glue <i> <f> <j> <g> <perm>`"));
                }
                let mut nums = [0usize; 4];
                for (k, w) in words[1..5].iter().enumerate() {
                    nums[k] = w
                        .parse()
                        .map_err(|_| malformed("index is not an integer"))?;
                }
                let perm = parse_perm(words[5]).ok_or_else(|| malformed("bad permutation"))?;
                attach(slots, line, nums[0], nums[1], nums[2], nums[3], perm)?;
            }
            _ => return Err(malformed("unknown directive")),
        }
    }
    let slots = slots.ok_or(TriangulationError::MalformedLine {
        line: 0,
        reason: "missing `tets` header".into(),
    })?;
    Triangulation::finish(slots)
}

fn parse_perm(word: &str) -> Option<Perm4> {
    let bytes = word.as_bytes();
    if bytes.len() != 4 {
        return None;
    }
    let mut images = [0u8; 4];
    for (k, b) in bytes.iter().enumerate() {
        if !(b'0'..=b'3').contains(b) {
            return None;
        }
        images[k] = b - b'0';
    }
    Perm4::new(images)
}

/// Convenience census entry point.
pub fn skeleton_census(tri: &Triangulation) -> SkeletonCensus {
    tri.skeleton_census()
}
