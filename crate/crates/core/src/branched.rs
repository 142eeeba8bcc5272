//! Abstract branched surfaces: sectors glued along branch curves, their
//! weight cones, and the surfaces they carry.
//!
//! Each branch curve joins one boundary circle of a merged sector to one
//! circle of a lower and one of an upper sector. A weight vector carries
//! `w(s)` parallel copies of each sector; at a curve, merged copies are
//! stacked so that one block goes to the lower sector and the rest to the
//! upper one.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::union_find::DisjointSet;

/// Largest sector count accepted by [`weight_cone`].
pub const MAX_SECTORS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchedError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("unknown sector {0:?}")]
    UnknownSector(String),
    #[error("circle {circle} of sector {sector} is not on any branch curve")]
    DanglingCircle { sector: String, circle: usize },
    #[error("circle {circle} of sector {sector} is used more than once")]
    SlotReuse { sector: String, circle: usize },
    #[error("sector {sector} has no circle {circle}")]
    CircleOutOfRange { sector: String, circle: usize },
    #[error("{0}")]
    TooLarge(String),
    #[error("weights are inconsistent: {0}")]
    InconsistentWeights(String),
    #[error("n = {0} is below the range n >= 3")]
    BelowRange(i64),
}

impl BranchedError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Malformed { .. } => "Malformed",
            Self::UnknownSector(_) => "UnknownSector",
            Self::DanglingCircle { .. } => "DanglingCircle",
            Self::SlotReuse { .. } => "SlotReuse",
            Self::CircleOutOfRange { .. } => "CircleOutOfRange",
            Self::TooLarge(_) => "TooLarge",
            Self::InconsistentWeights(_) => "InconsistentWeights",
            Self::BelowRange(_) => "BelowRange",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub id: String,
    pub euler: i64,
    pub circles: usize,
}

/// A boundary circle: sector index and circle number (from 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleRef {
    pub sector: usize,
    pub circle: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stacking {
    /// Lowest merged copies go to the lower sector.
    LowerFirst,
    UpperFirst,
}

impl Stacking {
    pub fn as_str(self) -> &'static str {
        match self {
            Stacking::LowerFirst => "lu",
            Stacking::UpperFirst => "ul",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCurve {
    pub id: String,
    pub merged: CircleRef,
    pub lower: CircleRef,
    pub upper: CircleRef,
    pub order: Stacking,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchedSpec {
    pub sectors: Vec<Sector>,
    pub curves: Vec<BranchCurve>,
}

impl BranchedSpec {
    /// Checks circle references: every circle is used exactly once.
    pub fn new(sectors: Vec<Sector>, curves: Vec<BranchCurve>) -> Result<Self, BranchedError> {
        let mut used: Vec<Vec<bool>> = sectors.iter().map(|s| vec![false; s.circles]).collect();
        for c in &curves {
            for r in [c.merged, c.lower, c.upper] {
                let s = &sectors[r.sector];
                if r.circle == 0 || r.circle > s.circles {
                    return Err(BranchedError::CircleOutOfRange {
                        sector: s.id.clone(),
                        circle: r.circle,
                    });
                }
                let slot = &mut used[r.sector][r.circle - 1];
                if *slot {
                    return Err(BranchedError::SlotReuse {
                        sector: s.id.clone(),
                        circle: r.circle,
                    });
                }
                *slot = true;
            }
        }
        for (s, flags) in sectors.iter().zip(&used) {
            if let Some(i) = flags.iter().position(|&f| !f) {
                return Err(BranchedError::DanglingCircle {
                    sector: s.id.clone(),
                    circle: i + 1,
                });
            }
        }
        Ok(Self { sectors, curves })
    }

    pub fn sector_index(&self, id: &str) -> Option<usize> {
        self.sectors.iter().position(|s| s.id == id)
    }

    /// One row per curve: `w(merged) - w(lower) - w(upper)`.
    pub fn equations(&self) -> Vec<Vec<i64>> {
        self.curves
            .iter()
            .map(|c| {
                let mut row = vec![0i64; self.sectors.len()];
                row[c.merged.sector] += 1;
                row[c.lower.sector] -= 1;
                row[c.upper.sector] -= 1;
                row
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sectors {
            out.push_str(&format!(
                "sector {} chi {} circles {}\n",
                s.id, s.euler, s.circles
            ));
        }
        let r = |c: CircleRef| format!("{}:{}", self.sectors[c.sector].id, c.circle);
        for c in &self.curves {
            out.push_str(&format!(
                "branch {} merged {} lower {} upper {} order {}\n",
                c.id,
                r(c.merged),
                r(c.lower),
                r(c.upper),
                c.order.as_str()
            ));
        }
        out
    }
}

/// Parses `sector <id> chi <int> circles <k>` and
/// `branch <id> merged <s>:<c> lower <s>:<c> upper <s>:<c> order <lu|ul>`
/// lines. `#` starts a comment.
pub fn parse_branched_spec(text: &str) -> Result<BranchedSpec, BranchedError> {
    let mut sectors: Vec<Sector> = Vec::new();
    let mut raw_curves = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: &str| BranchedError::Malformed {
            line: n + 1,
            reason: reason.to_string(),
        };
        let w: Vec<&str> = line.split_whitespace().collect();
        match w.as_slice() {
            ["sector", id, "chi", chi, "circles", k] => {
                if sectors.iter().any(|s| s.id == *id) {
                    return Err(bad(&format!("sector {id} defined twice")));
                }
                sectors.push(Sector {
                    id: id.to_string(),
                    euler: chi.parse().map_err(|_| bad("chi must be an integer"))?,
                    circles: k.parse().map_err(|_| bad("circles must be a count"))?,
                });
            }
            ["branch", id, "merged", m, "lower", l, "upper", u, "order", o] => {
                let order = match *o {
                    "lu" => Stacking::LowerFirst,
                    "ul" => Stacking::UpperFirst,
                    _ => return Err(bad("order must be lu or ul")),
                };
                raw_curves.push((n + 1, id.to_string(), [*m, *l, *u], order));
            }
            _ => return Err(bad("expected a sector or branch line")),
        }
    }
    let mut curves = Vec::new();
    for (line, id, refs, order) in raw_curves {
        let mut parsed = [CircleRef {
            sector: 0,
            circle: 0,
        }; 3];
        for (slot, text) in parsed.iter_mut().zip(refs) {
            let (sid, c) = text.split_once(':').ok_or(BranchedError::Malformed {
                line,
                reason: format!("expected <sector>:<circle>, got {text:?}"),
            })?;
            let sector = sectors
                .iter()
                .position(|s| s.id == sid)
                .ok_or_else(|| BranchedError::UnknownSector(sid.to_string()))?;
            let circle = c.parse().map_err(|_| BranchedError::Malformed {
                line,
                reason: format!("bad circle number {c:?}"),
            })?;
            *slot = CircleRef { sector, circle };
        }
        curves.push(BranchCurve {
            id,
            merged: parsed[0],
            lower: parsed[1],
            upper: parsed[2],
            order,
        });
    }
    BranchedSpec::new(sectors, curves)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCone {
    pub equations: Vec<Vec<i64>>,
    /// Extreme rays, primitive and sorted.
    pub rays: Vec<Vec<i64>>,
    /// Dimension of the solution space of the equations.
    pub dimension: usize,
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<Ratio<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for i in 0..m.len() {
            if i != rank && m[i][col] != Ratio::from_integer(0) {
                let f = m[i][col] / pivot;
                let pivot_row = m[rank].clone();
                for (x, v) in m[i].iter_mut().zip(pivot_row) {
                    *x -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Extreme rays of `{w >= 0 : equations(w) = 0}` by double description.
pub fn weight_cone(spec: &BranchedSpec) -> Result<WeightCone, BranchedError> {
    let m = spec.sectors.len();
    if m > MAX_SECTORS {
        return Err(BranchedError::TooLarge(format!(
            "{m} sectors exceeds the cap of {MAX_SECTORS}"
        )));
    }
    let equations = spec.equations();
    let mut rays: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    let zeros = |r: &[i64]| -> Vec<bool> { r.iter().map(|&x| x == 0).collect() };
    for row in &equations {
        let dot = |r: &[i64]| -> i64 { r.iter().zip(row).map(|(a, b)| a * b).sum() };
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in rays {
            match dot(&r).signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => next.push(r),
            }
        }
        let all: Vec<&Vec<i64>> = pos.iter().chain(&neg).chain(&next).collect();
        let zero_sets: Vec<Vec<bool>> = all.iter().map(|r| zeros(r)).collect();
        for (pi, p) in pos.iter().enumerate() {
            for (ni, q) in neg.iter().enumerate() {
                let common: Vec<bool> = zero_sets[pi]
                    .iter()
                    .zip(&zero_sets[pos.len() + ni])
                    .map(|(a, b)| *a && *b)
                    .collect();
                let blocked = zero_sets.iter().enumerate().any(|(k, z)| {
                    k != pi && k != pos.len() + ni && common.iter().zip(z).all(|(c, z)| !c || *z)
                });
                if blocked {
                    continue;
                }
                let (dp, dq) = (dot(p), dot(q));
                let r: Vec<i64> = p.iter().zip(q).map(|(a, b)| dp * b - dq * a).collect();
                next.push(primitive(r));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }
    rays.sort();
    let dimension = m - rank(&equations, m);
    Ok(WeightCone {
        equations,
        rays,
        dimension,
    })
}

/// One sheet-to-sheet identification made at a branch curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyGluing {
    pub curve: usize,
    pub merged_copy: u64,
    pub target: CircleRef,
    pub target_copy: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarriedComponent {
    pub euler: i64,
    pub genus: Option<i64>,
    pub sheets: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarriedSurface {
    pub weights: Vec<u64>,
    pub euler: i64,
    pub components: Vec<CarriedComponent>,
    pub trace: Vec<CopyGluing>,
}

impl CarriedSurface {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Genus when the surface is connected.
    pub fn genus(&self) -> Option<i64> {
        match self.components.as_slice() {
            [c] => c.genus,
            _ => None,
        }
    }
}

/// Copies of merged circle `k` (from 0) and where each one lands.
pub(crate) fn stack(curve: &BranchCurve, w: &[u64]) -> Vec<(CircleRef, u64)> {
    let (wl, wu) = (w[curve.lower.sector], w[curve.upper.sector]);
    let lower = (0..wl).map(|i| (curve.lower, i));
    let upper = (0..wu).map(|i| (curve.upper, i));
    match curve.order {
        Stacking::LowerFirst => lower.chain(upper).collect(),
        Stacking::UpperFirst => upper.chain(lower).collect(),
    }
}

pub fn check_weights(spec: &BranchedSpec, w: &[u64]) -> Result<(), BranchedError> {
    if w.len() != spec.sectors.len() {
        return Err(BranchedError::InconsistentWeights(format!(
            "{} weights for {} sectors",
            w.len(),
            spec.sectors.len()
        )));
    }
    for c in &spec.curves {
        let (m, l, u) = (w[c.merged.sector], w[c.lower.sector], w[c.upper.sector]);
        if m != l + u {
            return Err(BranchedError::InconsistentWeights(format!(
                "curve {}: {m} != {l} + {u}",
                c.id
            )));
        }
    }
    Ok(())
}

/// The surface carried with weights `w`, listed in sector order.
pub fn carried_surface(spec: &BranchedSpec, w: &[u64]) -> Result<CarriedSurface, BranchedError> {
    check_weights(spec, w)?;
    let mut base = Vec::with_capacity(w.len());
    let mut total = 0u64;
    for &x in w {
        base.push(total);
        total += x;
    }
    let node = |s: usize, copy: u64| (base[s] + copy) as usize;
    let mut ds = DisjointSet::new(total as usize);
    let mut trace = Vec::new();
    for (ci, c) in spec.curves.iter().enumerate() {
        for (k, (target, copy)) in stack(c, w).into_iter().enumerate() {
            ds.union(node(c.merged.sector, k as u64), node(target.sector, copy));
            trace.push(CopyGluing {
                curve: ci,
                merged_copy: k as u64,
                target,
                target_copy: copy,
            });
        }
    }
    let (labels, _) = ds.labels();
    let mut comps: BTreeMap<usize, CarriedComponent> = BTreeMap::new();
    for (s, sector) in spec.sectors.iter().enumerate() {
        for copy in 0..w[s] {
            let c = comps
                .entry(labels[node(s, copy)])
                .or_insert(CarriedComponent {
                    euler: 0,
                    genus: None,
                    sheets: 0,
                });
            c.euler += sector.euler;
            c.sheets += 1;
        }
    }
    let components: Vec<CarriedComponent> = comps
        .into_values()
        .map(|mut c| {
            c.genus = (c.euler % 2 == 0 && c.euler <= 2).then(|| (2 - c.euler) / 2);
            c
        })
        .collect();
    let euler = spec
        .sectors
        .iter()
        .zip(w)
        .map(|(s, &x)| s.euler * x as i64)
        .sum();
    Ok(CarriedSurface {
        weights: w.to_vec(),
        euler,
        components,
        trace,
    })
}

/// The reconstructed branched surface of the genus-`3n` family, with
/// sectors `a..f`.
pub const FIGURE14: &str = "\
# Reconstructed branched surface for the genus-3n family.
# Branch equations: a+b=c, a+d=b, e+f=d, e+e=c.
sector a chi 0 circles 2
sector b chi 0 circles 2
sector c chi -2 circles 2
sector d chi 0 circles 2
sector e chi -1 circles 3
sector f chi -1 circles 1
branch C1 merged c:1 lower a:1 upper b:1 order lu
branch C2 merged b:2 lower a:2 upper d:1 order lu
branch C3 merged d:2 lower e:1 upper f:1 order lu
branch C4 merged c:2 lower e:2 upper e:3 order lu
";

pub fn figure14_spec() -> BranchedSpec {
    parse_branched_spec(FIGURE14).expect("bundled spec parses")
}

/// Weights `(1, 2n-1, 2n, 2n-2, n, n-2)`.
pub fn figure14_weights(n: i64) -> Result<Vec<u64>, BranchedError> {
    if n < 3 {
        return Err(BranchedError::BelowRange(n));
    }
    let n = n as u64;
    Ok(vec![1, 2 * n - 1, 2 * n, 2 * n - 2, n, n - 2])
}

/// The carried surface of the family at `n`, checked to be connected of
/// genus `3n`.
pub fn figure14_family(n: i64) -> Result<(Vec<u64>, CarriedSurface), BranchedError> {
    let w = figure14_weights(n)?;
    let s = carried_surface(&figure14_spec(), &w)?;
    assert!(s.is_connected(), "carried surface must be connected");
    assert_eq!(s.genus(), Some(3 * n), "carried surface must have genus 3n");
    Ok((w, s))
}

impl fmt::Display for CarriedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "components={} euler={}",
            self.components.len(),
            self.euler
        )?;
        if let Some(g) = self.genus() {
            write!(f, " genus={g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = "sector T chi 0 circles 0\n";

    #[test]
    fn torus_sector() {
        let spec = parse_branched_spec(TORUS).unwrap();
        let cone = weight_cone(&spec).unwrap();
        assert_eq!(cone.dimension, 1);
        assert_eq!(cone.rays, vec![vec![1]]);
        let s = carried_surface(&spec, &[4]).unwrap();
        assert_eq!(s.component_count(), 4);
        assert!(s.components.iter().all(|c| c.genus == Some(1)));
        let empty = carried_surface(&spec, &[0]).unwrap();
        assert_eq!(empty.component_count(), 0);
    }

    #[test]
    fn parse_errors() {
        let reuse = "sector a chi 0 circles 2\nsector b chi 0 circles 1\n\
                     branch X merged a:2 lower a:2 upper b:1 order lu\n";
        assert_eq!(parse_branched_spec(reuse).unwrap_err().kind(), "SlotReuse");
        let dangling = "sector a chi 0 circles 1\n";
        assert_eq!(
            parse_branched_spec(dangling).unwrap_err().kind(),
            "DanglingCircle"
        );
        let unknown =
            "sector a chi 0 circles 3\nbranch X merged a:1 lower a:2 upper z:1 order lu\n";
        assert_eq!(
            parse_branched_spec(unknown).unwrap_err().kind(),
            "UnknownSector"
        );
        assert_eq!(
            parse_branched_spec("sector a chi x circles 0")
                .unwrap_err()
                .kind(),
            "Malformed"
        );
    }

    #[test]
    fn figure14_shape() {
        let spec = figure14_spec();
        assert_eq!(spec.sectors.len(), 6);
        assert_eq!(spec.curves.len(), 4);
        assert_eq!(parse_branched_spec(&spec.to_text()).unwrap(), spec);
    }

    #[test]
    fn figure14_cone() {
        let cone = weight_cone(&figure14_spec()).unwrap();
        assert_eq!(cone.dimension, 2);
        assert_eq!(
            cone.rays,
            vec![vec![0, 2, 2, 2, 1, 1], vec![1, 3, 4, 2, 2, 0]]
        );
    }

    #[test]
    fn figure14_small_cases() {
        let (w, s) = figure14_family(3).unwrap();
        assert_eq!(w, vec![1, 5, 6, 4, 3, 1]);
        assert_eq!(s.genus(), Some(9));
        let (w, s) = figure14_family(10).unwrap();
        assert_eq!(w, vec![1, 19, 20, 18, 10, 8]);
        assert_eq!(s.genus(), Some(30));
        assert_eq!(
            figure14_family(2).unwrap_err(),
            BranchedError::BelowRange(2)
        );
    }

    #[test]
    fn inconsistent_weights_rejected() {
        let spec = figure14_spec();
        let err = carried_surface(&spec, &[1, 1, 1, 1, 1, 1]).unwrap_err();
        assert_eq!(err.kind(), "InconsistentWeights");
        assert!(carried_surface(&spec, &[1, 2]).is_err());
    }
}
