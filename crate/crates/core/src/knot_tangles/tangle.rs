//! Rational tangles in Conway form.
//!
//! A tangle's boundary is stored clockwise as `[NW, NE, SE, SW]`. The
//! single-crossing tangle `[1]` has its NW-SE strand over. Horizontal twists
//! are added on the right (twisting NE with SE) and vertical twists at the
//! bottom (twisting SW with SE). The vector `[a1, ..., ak]` starts from the
//! 0-tangle (NW-NE and SW-SE arcs) when `k` is odd and from the infinity
//! tangle (NW-SW and NE-SE arcs) when `k` is even; its groups alternate in
//! direction and the last one is horizontal.

use std::fmt;

use num_rational::Ratio;

use super::{label_ends, strands_alternate, trace_faces, KnotDiagram, KnotError};
use crate::union_find::DisjointSet;

const NW: usize = 0;
const NE: usize = 1;
const SE: usize = 2;
const SW: usize = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwistVector(pub Vec<i64>);

impl fmt::Display for TwistVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A tangle fraction, with the infinity tangle as its own value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fraction {
    Finite(Ratio<i128>),
    Infinite,
}

impl Fraction {
    fn from_pair(p: i128, q: i128) -> Self {
        if q == 0 {
            Fraction::Infinite
        } else {
            Fraction::Finite(Ratio::new(p, q))
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fraction::Finite(r) => write!(f, "{r}"),
            Fraction::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Twist {
    Horizontal(i64),
    Vertical(i64),
}

/// Twist groups of `v` in build order, each with its direction.
fn groups(v: &TwistVector) -> Vec<Twist> {
    let k = v.0.len();
    v.0.iter()
        .enumerate()
        .map(|(i, &a)| {
            if (k - 1 - i).is_multiple_of(2) {
                Twist::Horizontal(a)
            } else {
                Twist::Vertical(a)
            }
        })
        .collect()
}

fn starts_at_zero(k: usize) -> bool {
    k == 0 || k % 2 == 1
}

/// `a_k + 1/(a_{k-1} + 1/(... + 1/a_1))`, with `[]` the 0-tangle.
pub fn tangle_fraction(v: &TwistVector) -> Fraction {
    let (mut p, mut q): (i128, i128) = if starts_at_zero(v.0.len()) {
        (0, 1)
    } else {
        (1, 0)
    };
    for g in groups(v) {
        match g {
            Twist::Horizontal(a) => p += a as i128 * q,
            Twist::Vertical(a) => q += a as i128 * p,
        }
    }
    Fraction::from_pair(p, q)
}

/// A tangle diagram: crossings in PD form and the four boundary labels. A
/// boundary label either occurs once among the crossings or twice in the
/// boundary (an arc with no crossings).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    pub crossings: Vec<[u32; 4]>,
    pub boundary: [u32; 4],
}

impl Tangle {
    pub fn zero() -> Self {
        Tangle {
            crossings: Vec::new(),
            boundary: [1, 1, 2, 2],
        }
    }

    pub fn infinity() -> Self {
        Tangle {
            crossings: Vec::new(),
            boundary: [1, 2, 2, 1],
        }
    }

    pub fn from_twist_vector(v: &TwistVector) -> Self {
        let mut t = if starts_at_zero(v.0.len()) {
            Tangle::zero()
        } else {
            Tangle::infinity()
        };
        let mut next = 3;
        let mut fresh = || {
            next += 1;
            next - 1
        };
        for g in groups(v) {
            match g {
                Twist::Horizontal(a) => {
                    for _ in 0..a.unsigned_abs() {
                        let (ne, se) = (fresh(), fresh());
                        t.twist_right(a > 0, ne, se);
                    }
                }
                Twist::Vertical(a) => {
                    for _ in 0..a.unsigned_abs() {
                        let (sw, se) = (fresh(), fresh());
                        t.twist_bottom(a > 0, sw, se);
                    }
                }
            }
        }
        t
    }

    fn twist_right(&mut self, positive: bool, ne: u32, se: u32) {
        let (old_ne, old_se) = (self.boundary[NE], self.boundary[SE]);
        self.crossings.push(if positive {
            [old_se, se, ne, old_ne]
        } else {
            [old_ne, old_se, se, ne]
        });
        self.boundary[NE] = ne;
        self.boundary[SE] = se;
    }

    fn twist_bottom(&mut self, positive: bool, sw: u32, se: u32) {
        let (old_sw, old_se) = (self.boundary[SW], self.boundary[SE]);
        self.crossings.push(if positive {
            [sw, se, old_se, old_sw]
        } else {
            [old_sw, sw, se, old_se]
        });
        self.boundary[SW] = sw;
        self.boundary[SE] = se;
    }

    /// Checks labels and that the boundary order is planar: capping the
    /// tangle with one extra vertex carrying the boundary must give a
    /// connected planar 4-valent graph.
    pub fn validate(&self) -> Result<(), KnotError> {
        let mut all = self.crossings.clone();
        all.push(self.boundary);
        let ends = label_ends(&all);
        if let Some((&label, e)) = ends.iter().find(|(_, e)| e.len() != 2) {
            return Err(KnotError::BadBoundary(format!(
                "label {label} occurs {} time(s) counting the boundary",
                e.len()
            )));
        }
        let mut ds = DisjointSet::new(all.len());
        for e in ends.values() {
            ds.union(e[0].0, e[1].0);
        }
        let faces = trace_faces(&all, &ends);
        if ds.count() != 1 || faces.len() != all.len() + 2 {
            return Err(KnotError::BadBoundary(
                "boundary order is not planar (expected NW NE SE SW)".into(),
            ));
        }
        Ok(())
    }

    pub fn is_alternating(&self) -> bool {
        strands_alternate(&self.crossings)
    }

    /// Closure joining NW to NE and SW to SE.
    pub fn numerator_closure(&self) -> Result<KnotDiagram, KnotError> {
        self.closure([(NE, NW), (SE, SW)])
    }

    /// Closure joining NW to SW and NE to SE.
    pub fn denominator_closure(&self) -> Result<KnotDiagram, KnotError> {
        self.closure([(SW, NW), (SE, NE)])
    }

    fn closure(&self, joins: [(usize, usize); 2]) -> Result<KnotDiagram, KnotError> {
        let mut crossings = self.crossings.clone();
        let mut rename = |from: u32, to: u32| {
            for c in &mut crossings {
                for l in c.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        };
        for (a, b) in joins {
            rename(self.boundary[a], self.boundary[b]);
        }
        KnotDiagram::new(crossings)
    }
}

/// Strips corner twists until the 0- or infinity tangle remains. Returns
/// `None` when the projection cannot be reduced this way, which does not
/// mean the tangle is not rational.
pub fn rational_reduce(t: &Tangle) -> Result<Option<TwistVector>, KnotError> {
    t.validate()?;
    let mut crossings = t.crossings.clone();
    let mut b = t.boundary;
    let mut stripped = Vec::new();
    while !crossings.is_empty() {
        let Some((x, twist, nb)) = find_corner_twist(&crossings, b) else {
            return Ok(None);
        };
        crossings.remove(x);
        stripped.push(twist);
        b = nb;
    }
    let zero = b[NW] == b[NE] && b[SW] == b[SE];
    let infinity = b[NW] == b[SW] && b[NE] == b[SE];
    if !zero && !infinity {
        return Ok(None);
    }
    stripped.reverse();
    Ok(Some(to_twist_vector(zero, &stripped)))
}

fn find_corner_twist(crossings: &[[u32; 4]], b: [u32; 4]) -> Option<(usize, Twist, [u32; 4])> {
    let slot = |c: &[u32; 4], l: u32| c.iter().position(|&m| m == l);
    for (x, c) in crossings.iter().enumerate().rev() {
        let at = |s: usize| c[s % 4];
        // Right: NE at s, SE at s - 1.
        if let Some(s) = slot(c, b[NE]) {
            if at(s + 3) == b[SE] && b[NE] != b[SE] {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let mut nb = b;
                nb[NE] = at(s + 1);
                nb[SE] = at(s + 2);
                return Some((x, Twist::Horizontal(sign), nb));
            }
        }
        // Bottom: SW at s, SE at s + 1.
        if let Some(s) = slot(c, b[SW]) {
            if at(s + 1) == b[SE] && b[SW] != b[SE] {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let mut nb = b;
                nb[SW] = at(s + 3);
                nb[SE] = at(s + 2);
                return Some((x, Twist::Vertical(sign), nb));
            }
        }
        if let Some(s) = slot(c, b[NW]) {
            let sign = if s % 2 == 1 { 1 } else { -1 };
            // Left: NW at s, SW at s + 1.
            if at(s + 1) == b[SW] && b[NW] != b[SW] {
                let mut nb = b;
                nb[NW] = at(s + 3);
                nb[SW] = at(s + 2);
                return Some((x, Twist::Horizontal(sign), nb));
            }
            // Top: NE at s - 1, NW at s.
            if at(s + 3) == b[NE] && b[NW] != b[NE] {
                let mut nb = b;
                nb[NW] = at(s + 1);
                nb[NE] = at(s + 2);
                return Some((x, Twist::Vertical(sign), nb));
            }
        }
    }
    None
}

/// Groups build-order twists into a vector whose implied start tangle is
/// the given one.
fn to_twist_vector(start_zero: bool, ops: &[Twist]) -> TwistVector {
    let mut merged: Vec<Twist> = Vec::new();
    for &op in ops {
        match (merged.last_mut(), op) {
            (Some(Twist::Horizontal(a)), Twist::Horizontal(d)) => *a += d,
            (Some(Twist::Vertical(a)), Twist::Vertical(d)) => *a += d,
            _ => merged.push(op),
        }
    }
    if merged.is_empty() {
        return TwistVector(if start_zero { vec![] } else { vec![0, 0] });
    }
    if matches!(merged.last(), Some(Twist::Vertical(_))) {
        merged.push(Twist::Horizontal(0));
    }
    if starts_at_zero(merged.len()) != start_zero {
        let pad = match merged[0] {
            Twist::Horizontal(_) => Twist::Vertical(0),
            Twist::Vertical(_) => Twist::Horizontal(0),
        };
        merged.insert(0, pad);
    }
    TwistVector(
        merged
            .into_iter()
            .map(|t| match t {
                Twist::Horizontal(a) | Twist::Vertical(a) => a,
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(v: &[i64]) -> TwistVector {
        TwistVector(v.to_vec())
    }

    fn frac(p: i128, q: i128) -> Fraction {
        Fraction::Finite(Ratio::new(p, q))
    }

    #[test]
    fn fraction_values() {
        assert_eq!(tangle_fraction(&tv(&[3])), frac(3, 1));
        assert_eq!(tangle_fraction(&tv(&[2, 2])), frac(5, 2));
        assert_eq!(tangle_fraction(&tv(&[0])), frac(0, 1));
        assert_eq!(tangle_fraction(&tv(&[])), frac(0, 1));
        assert_eq!(tangle_fraction(&tv(&[0, 0])), Fraction::Infinite);
        assert_eq!(tangle_fraction(&tv(&[1, 1, 1])), frac(3, 2));
    }

    #[test]
    fn empty_tangle_reduces_to_empty_vector() {
        assert_eq!(rational_reduce(&Tangle::zero()).unwrap(), Some(tv(&[])));
        assert_eq!(
            rational_reduce(&Tangle::infinity()).unwrap(),
            Some(tv(&[0, 0]))
        );
    }

    #[test]
    fn three_twist_round_trip() {
        let t = Tangle::from_twist_vector(&tv(&[3]));
        assert_eq!(t.crossings.len(), 3);
        assert_eq!(rational_reduce(&t).unwrap(), Some(tv(&[3])));
    }

    #[test]
    fn two_two_reduces_to_same_fraction() {
        let t = Tangle::from_twist_vector(&tv(&[2, 2]));
        let v = rational_reduce(&t).unwrap().unwrap();
        assert_eq!(tangle_fraction(&v), frac(5, 2));
    }

    #[test]
    fn one_crossing_tangles_agree() {
        // The [1] tangle is both a horizontal and a vertical twist.
        let h = Tangle::from_twist_vector(&tv(&[1]));
        let v = Tangle::from_twist_vector(&tv(&[1, 0]));
        assert_eq!(tangle_fraction(&tv(&[1, 0])), frac(1, 1));
        assert_eq!(h.crossings.len(), 1);
        assert_eq!(v.crossings.len(), 1);
        assert_eq!(h.is_alternating(), v.is_alternating());
        let strand_over = |t: &Tangle| {
            let c = t.crossings[0];
            let s = c.iter().position(|&l| l == t.boundary[NW]).unwrap();
            s % 2 == 1
        };
        assert!(strand_over(&h));
        assert!(strand_over(&v));
    }

    #[test]
    fn built_tangles_validate() {
        for v in [
            vec![],
            vec![1],
            vec![-2],
            vec![2, 2],
            vec![1, -3, 2],
            vec![0, 0],
        ] {
            Tangle::from_twist_vector(&tv(&v)).validate().unwrap();
        }
    }

    #[test]
    fn reversed_boundary_rejected() {
        let mut t = Tangle::from_twist_vector(&tv(&[2, 1]));
        t.boundary.reverse();
        let err = t.validate().unwrap_err();
        assert_eq!(err.kind(), "BadBoundary");
        let t = Tangle {
            crossings: vec![[1, 2, 3, 4]],
            boundary: [1, 2, 3, 5],
        };
        assert_eq!(rational_reduce(&t).unwrap_err().kind(), "BadBoundary");
    }

    #[test]
    fn closures_of_two_two() {
        let t = Tangle::from_twist_vector(&tv(&[2, 2]));
        let n = t.numerator_closure().unwrap();
        assert_eq!(n.crossing_count(), 4);
        assert!(n.is_knot());
        let d = t.denominator_closure().unwrap();
        assert_eq!(d.component_count(), 2);
    }
}
