//! Exhaustive oracle for normal surfaces on triangulations with at most two
//! tetrahedra. Candidates are generated per tetrahedron and joined on the arc
//! counts across the faces shared by the two tetrahedra; arc counts come from
//! the quad pairings directly rather than through the library's coordinate
//! helpers.

use std::collections::HashMap;

use acylbounds::triangulation::Triangulation;

/// The pairs of vertices each quad type separates from the other pair.
const QUAD_PAIRS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

/// The quad type whose arc in face `face` cuts off corner `corner`.
fn cutting_quad(face: usize, corner: usize) -> usize {
    QUAD_PAIRS
        .iter()
        .position(|pairs| {
            pairs
                .iter()
                .any(|&(a, b)| (a, b) == (face.min(corner), face.max(corner)))
        })
        .unwrap()
}

/// Normal arcs of a single tetrahedron's 7 coordinates in a face corner.
fn arcs(block: &[u32], face: usize, corner: usize) -> u32 {
    block[corner] + block[4 + cutting_quad(face, corner)]
}

/// All 7-coordinate blocks obeying the quad condition with entries in
/// `0..=cap`.
fn blocks(cap: u32) -> Vec<[u32; 7]> {
    let mut out = Vec::new();
    let r = cap + 1;
    for code in 0..r.pow(4) {
        let tri = [code % r, code / r % r, code / r / r % r, code / r / r / r];
        for q in 0..3 {
            for x in 0..=cap {
                if q > 0 && x == 0 {
                    continue;
                }
                let mut b = [tri[0], tri[1], tri[2], tri[3], 0, 0, 0];
                b[4 + q] = x;
                out.push(b);
            }
        }
    }
    out
}

/// One constraint `arcs(tet_a, face_a, corner_a) == arcs(tet_b, face_b, corner_b)`.
type Constraint = ((usize, usize, usize), (usize, usize, usize));

/// Matching constraints read off the gluing table, one per corner of each
/// glued face pair (each pair seen once).
fn constraints(tri: &Triangulation) -> Vec<Constraint> {
    let text = tri.to_text();
    let mut out = Vec::new();
    for line in text.lines() {
        let w: Vec<&str> = line.split_whitespace().collect();
        if w.first() != Some(&"glue") {
            continue;
        }
        let (t0, f0, t1): (usize, usize, usize) = (
            w[1].parse().unwrap(),
            w[2].parse().unwrap(),
            w[3].parse().unwrap(),
        );
        let f1: usize = w[4].parse().unwrap();
        let perm: Vec<usize> = w[5].bytes().map(|b| (b - b'0') as usize).collect();
        for v in (0..4).filter(|&v| v != f0) {
            out.push(((t0, f0, v), (t1, f1, perm[v])));
        }
    }
    out
}

/// Every nonzero admissible vector with coordinates at most `cap`, sorted.
pub fn oracle_admissible(tri: &Triangulation, cap: u32) -> Vec<Vec<u32>> {
    let t = tri.tet_count();
    assert!(t <= 2, "oracle handles at most two tetrahedra");
    let cons = constraints(tri);
    let all = blocks(cap);
    let local = |tet: usize, b: &[u32; 7]| {
        cons.iter()
            .filter(|(a, c)| a.0 == tet && c.0 == tet)
            .all(|&(a, c)| arcs(b, a.1, a.2) == arcs(b, c.1, c.2))
    };
    let mut out = Vec::new();
    if t == 1 {
        for b in all.iter().filter(|b| local(0, b)) {
            out.push(b.to_vec());
        }
    } else {
        let cross: Vec<Constraint> = cons
            .iter()
            .filter(|(a, c)| a.0 != c.0)
            .map(|&(a, c)| if a.0 == 0 { (a, c) } else { (c, a) })
            .collect();
        let mut by_key: HashMap<Vec<u32>, Vec<&[u32; 7]>> = HashMap::new();
        for b in all.iter().filter(|b| local(1, b)) {
            let key = cross.iter().map(|&(_, c)| arcs(b, c.1, c.2)).collect();
            by_key.entry(key).or_default().push(b);
        }
        for a in all.iter().filter(|b| local(0, b)) {
            let key: Vec<u32> = cross.iter().map(|&(x, _)| arcs(a, x.1, x.2)).collect();
            for b in by_key.get(&key).into_iter().flatten() {
                out.push(a.iter().chain(b.iter()).copied().collect());
            }
        }
    }
    out.retain(|v: &Vec<u32>| v.iter().any(|&x| x > 0));
    out.sort();
    out
}

pub fn oracle_minimal(all: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let below = |a: &Vec<u32>, b: &Vec<u32>| a != b && a.iter().zip(b).all(|(x, y)| x <= y);
    all.iter()
        .filter(|v| !all.iter().any(|u| below(u, v)))
        .cloned()
        .collect()
}
