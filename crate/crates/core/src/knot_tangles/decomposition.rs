//! Decompositions of a diagram into tangles and the bounds they give.
//!
//! Input lines look like
//! `tangle <id> type <rational|alternating|other> crossings <i...> boundary <nw> <ne> <se> <sw>`
//! with crossing indices counted from 0 in PD order.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use super::tangle::{rational_reduce, Tangle, TwistVector};
use super::{label_ends, KnotDiagram, KnotError};
use crate::union_find::DisjointSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimedType {
    Rational,
    Alternating,
    Other,
}

impl ClaimedType {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimedType::Rational => "rational",
            ClaimedType::Alternating => "alternating",
            ClaimedType::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleSpec {
    pub id: String,
    pub claimed: ClaimedType,
    pub crossings: Vec<usize>,
    /// `[NW, NE, SE, SW]` edge labels.
    pub boundary: [u32; 4],
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TangleDecomposition {
    pub tangles: Vec<TangleSpec>,
}

pub fn parse_decomposition(text: &str) -> Result<TangleDecomposition, KnotError> {
    let mut tangles = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| KnotError::Malformed(format!("line {}: {why}", n + 1));
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() < 5 || words[0] != "tangle" || words[2] != "type" || words[4] != "crossings"
        {
            return Err(bad(
                "expected `tangle <id> type <t> crossings ... boundary ...`",
            ));
        }
        let claimed = match words[3] {
            "rational" => ClaimedType::Rational,
            "alternating" => ClaimedType::Alternating,
            "other" => ClaimedType::Other,
            t => return Err(bad(&format!("unknown tangle type {t:?}"))),
        };
        let split = words
            .iter()
            .position(|&w| w == "boundary")
            .ok_or_else(|| bad("missing boundary"))?;
        let crossings = words[5..split]
            .iter()
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| bad(&format!("bad crossing index {w:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let labels = words[split + 1..]
            .iter()
            .map(|w| {
                w.parse::<u32>()
                    .map_err(|_| bad(&format!("bad edge label {w:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let boundary: [u32; 4] = labels.as_slice().try_into().map_err(|_| {
            KnotError::BadBoundary(format!("line {}: {} boundary labels", n + 1, labels.len()))
        })?;
        tangles.push(TangleSpec {
            id: words[1].to_string(),
            claimed,
            crossings,
            boundary,
        });
    }
    Ok(TangleDecomposition { tangles })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBound {
    /// `2n - 4`.
    pub bound: i64,
    /// `2n - 7/2`.
    pub sharper: Ratio<i64>,
    pub sharper_floor: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleResult {
    pub id: String,
    pub claimed: ClaimedType,
    /// Type after verification; a rational claim that cannot be reduced
    /// becomes `Other`.
    pub verified: ClaimedType,
    pub twist_vector: Option<TwistVector>,
    pub alternating_projection: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub tangles: Vec<TangleResult>,
    pub rational_count: usize,
    /// Tangles verified alternating, rational ones included.
    pub alternating_count: usize,
    pub is_knot: bool,
    pub prime: bool,
    pub rational_bound: Option<RationalBound>,
    pub alternating_bound: Option<i64>,
    pub no_meridional_surfaces: bool,
    pub warnings: Vec<String>,
    pub hypotheses: Vec<String>,
}

fn sub_tangle(d: &KnotDiagram, spec: &TangleSpec) -> Result<Tangle, KnotError> {
    let inside: BTreeSet<usize> = spec.crossings.iter().copied().collect();
    let found: BTreeSet<u32> = d
        .labels()
        .filter(|&l| {
            let ends = d.ends_of(l).expect("label of diagram");
            ends.iter().filter(|(x, _)| inside.contains(x)).count() == 1
        })
        .collect();
    let given: BTreeSet<u32> = spec.boundary.iter().copied().collect();
    if given.len() != 4 || given != found {
        return Err(KnotError::BadBoundary(format!(
            "tangle {}: boundary {:?} but the crossings leave through {:?}",
            spec.id, spec.boundary, found
        )));
    }
    let t = Tangle {
        crossings: spec.crossings.iter().map(|&x| d.crossings()[x]).collect(),
        boundary: spec.boundary,
    };
    t.validate()?;
    Ok(t)
}

fn check_partition(d: &KnotDiagram, dec: &TangleDecomposition) -> Result<(), KnotError> {
    let n = d.crossing_count();
    let mut owner = vec![None; n];
    for spec in &dec.tangles {
        if spec.crossings.is_empty() {
            return Err(KnotError::NotAPartition(format!(
                "tangle {} has no crossings",
                spec.id
            )));
        }
        for &x in &spec.crossings {
            if x >= n {
                return Err(KnotError::NotAPartition(format!(
                    "tangle {} names crossing {x} of {n}",
                    spec.id
                )));
            }
            if let Some(other) = owner[x].replace(&spec.id) {
                return Err(KnotError::NotAPartition(format!(
                    "crossing {x} is in tangles {other} and {}",
                    spec.id
                )));
            }
        }
    }
    if let Some(x) = owner.iter().position(Option::is_none) {
        return Err(KnotError::NotAPartition(format!(
            "crossing {x} is in no tangle"
        )));
    }
    Ok(())
}

/// Verifies the claimed tangle types and evaluates every bound whose
/// hypotheses hold. Primality is taken from `prime`.
pub fn decomposition_bounds(
    d: &KnotDiagram,
    dec: &TangleDecomposition,
    prime: bool,
) -> Result<DecompositionReport, KnotError> {
    check_partition(d, dec)?;
    let mut warnings = Vec::new();
    let mut tangles = Vec::new();
    for spec in &dec.tangles {
        let t = sub_tangle(d, spec)?;
        let alternating_projection = t.is_alternating();
        let (verified, twist_vector) = match spec.claimed {
            ClaimedType::Rational => match rational_reduce(&t)? {
                Some(v) => (ClaimedType::Rational, Some(v)),
                None => {
                    warnings.push(format!(
                        "tangle {} claimed rational but twist reduction failed; treated as other",
                        spec.id
                    ));
                    (ClaimedType::Other, None)
                }
            },
            ClaimedType::Alternating => {
                if !alternating_projection {
                    return Err(KnotError::TypeClaimFailed {
                        id: spec.id.clone(),
                        claim: "alternating",
                    });
                }
                (ClaimedType::Alternating, None)
            }
            ClaimedType::Other => (ClaimedType::Other, None),
        };
        tangles.push(TangleResult {
            id: spec.id.clone(),
            claimed: spec.claimed,
            verified,
            twist_vector,
            alternating_projection,
        });
    }
    let count = tangles.len();
    let rational_count = tangles
        .iter()
        .filter(|t| t.verified == ClaimedType::Rational)
        .count();
    let alternating_count = tangles
        .iter()
        .filter(|t| t.verified != ClaimedType::Other)
        .count();
    let is_knot = d.is_knot();
    let mut hypotheses = vec!["surface is closed and acylindrical".to_string()];
    let rational_bound = (count > 0 && rational_count == count).then(|| {
        let n = count as i64;
        let sharper = Ratio::new(4 * n - 7, 2);
        RationalBound {
            bound: 2 * n - 4,
            sharper,
            sharper_floor: sharper.floor().to_integer(),
        }
    });
    let all_alternating = count > 0 && alternating_count == count;
    let alternating_bound =
        (prime && is_knot && all_alternating).then(|| 2 * rational_count as i64 - 4);
    if alternating_bound.is_some() {
        hypotheses.push("knot is prime (supplied, not checked)".into());
    }
    if all_alternating && rational_count < count {
        hypotheses.push("alternating is checked on the given projection only".into());
    }
    let no_meridional_surfaces = is_knot && count == 2 && all_alternating;
    if !is_knot && all_alternating {
        warnings.push("diagram is a link; knot-only statements skipped".into());
    }
    Ok(DecompositionReport {
        tangles,
        rational_count,
        alternating_count,
        is_knot,
        prime,
        rational_bound,
        alternating_bound,
        no_meridional_surfaces,
        warnings,
        hypotheses,
    })
}

/// Joins tangles in a cyclic chain, each NE to the next NW and each SE to
/// the next SW, the last one wrapping around to the first. The result is the
/// numerator closure of the horizontal sum, decomposed into its summands.
pub fn tangle_chain(
    tangles: &[Tangle],
    claimed: ClaimedType,
) -> Result<(KnotDiagram, TangleDecomposition), KnotError> {
    if tangles.len() < 2 || tangles.iter().any(|t| t.crossings.is_empty()) {
        return Err(KnotError::Malformed(
            "a chain needs at least two tangles, each with a crossing".into(),
        ));
    }
    let mut offset = 0u32;
    let mut shifted = Vec::with_capacity(tangles.len());
    for t in tangles {
        let shift = |l: u32| l + offset;
        shifted.push(Tangle {
            crossings: t.crossings.iter().map(|c| c.map(shift)).collect(),
            boundary: t.boundary.map(shift),
        });
        let top = t
            .crossings
            .iter()
            .flatten()
            .chain(&t.boundary)
            .max()
            .copied()
            .unwrap_or(0);
        offset += top + 1;
    }
    let mut labels: Vec<u32> = shifted
        .iter()
        .flat_map(|t| t.crossings.iter().flatten().chain(&t.boundary).copied())
        .collect();
    labels.sort_unstable();
    labels.dedup();
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut ds = DisjointSet::new(labels.len());
    let n = shifted.len();
    for i in 0..n {
        let (a, b) = (&shifted[i], &shifted[(i + 1) % n]);
        ds.union(index[&a.boundary[1]], index[&b.boundary[0]]);
        ds.union(index[&a.boundary[2]], index[&b.boundary[3]]);
    }
    // Dense labels starting at 1, one per class.
    let (class, _) = ds.labels();
    let canon_of: BTreeMap<u32, u32> = labels
        .iter()
        .map(|&l| (l, class[index[&l]] as u32 + 1))
        .collect();
    let canon = |l: u32| canon_of[&l];
    let mut crossings = Vec::new();
    let mut specs = Vec::new();
    for (i, t) in shifted.iter().enumerate() {
        let start = crossings.len();
        crossings.extend(t.crossings.iter().map(|c| c.map(canon)));
        specs.push(TangleSpec {
            id: format!("T{}", i + 1),
            claimed,
            crossings: (start..crossings.len()).collect(),
            boundary: t.boundary.map(canon),
        });
    }
    debug_assert!(label_ends(&crossings).values().all(|e| e.len() == 2));
    Ok((
        KnotDiagram::new(crossings)?,
        TangleDecomposition { tangles: specs },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(v: &[i64]) -> Tangle {
        Tangle::from_twist_vector(&TwistVector(v.to_vec()))
    }

    #[test]
    fn four_rational_tangles() {
        let parts = [
            rational(&[2]),
            rational(&[3]),
            rational(&[1, 2]),
            rational(&[-2]),
        ];
        let (d, dec) = tangle_chain(&parts, ClaimedType::Rational).unwrap();
        let r = decomposition_bounds(&d, &dec, false).unwrap();
        assert_eq!(r.rational_count, 4);
        let rational_bound = r.rational_bound.unwrap();
        assert_eq!(rational_bound.bound, 4);
        assert_eq!(rational_bound.sharper, Ratio::new(9, 2));
        assert_eq!(rational_bound.sharper_floor, 4);
    }

    #[test]
    fn three_rational_tangles() {
        let parts = [rational(&[2]), rational(&[2]), rational(&[3])];
        let (d, dec) = tangle_chain(&parts, ClaimedType::Rational).unwrap();
        let r = decomposition_bounds(&d, &dec, false).unwrap();
        assert_eq!(r.rational_bound.unwrap().bound, 2);
    }

    #[test]
    fn two_alternating_tangles_give_corollary() {
        let parts = [rational(&[3]), rational(&[2, 1])];
        let (d, dec) = tangle_chain(&parts, ClaimedType::Alternating).unwrap();
        assert!(d.is_knot());
        let r = decomposition_bounds(&d, &dec, true).unwrap();
        assert!(r.no_meridional_surfaces);
        assert_eq!(r.alternating_bound, Some(-4));
        assert!(r.rational_bound.is_none());
    }

    #[test]
    fn failed_alternating_claim_is_an_error() {
        let parts = [rational(&[2, -2]), rational(&[3])];
        let (d, dec) = tangle_chain(&parts, ClaimedType::Alternating).unwrap();
        let err = decomposition_bounds(&d, &dec, false).unwrap_err();
        assert_eq!(err.kind(), "TypeClaimFailed");
    }

    #[test]
    fn partition_and_boundary_errors() {
        let parts = [rational(&[2]), rational(&[3])];
        let (d, mut dec) = tangle_chain(&parts, ClaimedType::Rational).unwrap();
        let saved = dec.clone();
        dec.tangles[0].crossings.push(2);
        assert_eq!(
            decomposition_bounds(&d, &dec, false).unwrap_err().kind(),
            "NotAPartition"
        );
        let mut dec = saved.clone();
        dec.tangles[1].crossings.pop();
        assert_eq!(
            decomposition_bounds(&d, &dec, false).unwrap_err().kind(),
            "NotAPartition"
        );
        let mut dec = saved;
        dec.tangles[0].boundary.swap(0, 1);
        assert_eq!(
            decomposition_bounds(&d, &dec, false).unwrap_err().kind(),
            "BadBoundary"
        );
    }

    #[test]
    fn parse_round_trip() {
        let text = "# two tangles\ntangle A type rational crossings 0 1 boundary 1 2 3 4\n\
                    tangle B type other crossings 2 boundary 5 6 7 8\n";
        let dec = parse_decomposition(text).unwrap();
        assert_eq!(dec.tangles.len(), 2);
        assert_eq!(dec.tangles[0].crossings, vec![0, 1]);
        assert_eq!(dec.tangles[1].claimed, ClaimedType::Other);
        assert_eq!(dec.tangles[1].boundary, [5, 6, 7, 8]);
        assert!(parse_decomposition("tangle A type weird crossings 0 boundary 1 2 3 4").is_err());
        assert_eq!(
            parse_decomposition("tangle A type rational crossings 0 boundary 1 2 3")
                .unwrap_err()
                .kind(),
            "BadBoundary"
        );
    }
}
