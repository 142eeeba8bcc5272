//! Combinatorial data of the tunnel-number-two family: the graph made of
//! `n` loops `gamma_i` chained by `n - 1` arcs `alpha_j`, and the
//! tunnel-number bound for `(b, g)`-presentations.

use thiserror::Error;

use crate::union_find::DisjointSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("n = {0} is below the range n >= 2")]
    BelowRange(i64),
    #[error("bridge number must be at least 1, got {0}")]
    NonPositiveBridge(i64),
    #[error("genus must be nonnegative, got {0}")]
    NegativeGenus(i64),
    #[error(
        "a ({b}, {g})-presentation needs {b} maxima and {b} minima, got {maxima} and {minima}"
    )]
    Unbalanced {
        b: u64,
        g: u64,
        maxima: u64,
        minima: u64,
    },
}

impl ConstructionError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::BelowRange(_) => "BelowRange",
            Self::NonPositiveBridge(_) => "NonPositiveBridge",
            Self::NegativeGenus(_) => "NegativeGenus",
            Self::Unbalanced { .. } => "Unbalanced",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaEdge {
    /// Part of the loop `gamma_i` (from 1).
    Loop(usize),
    /// The arc `alpha_j` from the maximum of `gamma_j` to the minimum of
    /// `gamma_{j+1}`.
    Arc(usize),
}

/// The graph as an abstract multigraph. Each arc joins the maximum of one
/// loop to the minimum of the next, so the end loops carry one vertex and
/// every middle loop carries two vertices and two edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGraph {
    pub n: usize,
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize, GammaEdge)>,
}

impl GammaGraph {
    pub fn new(n: usize) -> Result<Self, ConstructionError> {
        if n < 2 {
            return Err(ConstructionError::BelowRange(n as i64));
        }
        // Loop i carries its minimum `low(i)`, where the arc from the
        // previous loop lands, and its maximum `high(i)`, where the arc to
        // the next loop starts. The end loops carry just one of them.
        let low = |i: usize| if i == 1 { 0 } else { 2 * i - 3 };
        let high = |i: usize| if i == n { low(n) } else { 2 * i - 2 };
        let mut edges = Vec::new();
        for i in 1..=n {
            let (l, r) = (low(i), high(i));
            if l == r {
                edges.push((l, l, GammaEdge::Loop(i)));
            } else {
                edges.push((l, r, GammaEdge::Loop(i)));
                edges.push((r, l, GammaEdge::Loop(i)));
            }
        }
        for j in 1..n {
            edges.push((high(j), low(j + 1), GammaEdge::Arc(j)));
        }
        Ok(Self {
            n,
            vertex_count: 2 * n - 2,
            edges,
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut ds = DisjointSet::new(self.vertex_count);
        for &(a, b, _) in &self.edges {
            ds.union(a, b);
        }
        ds.count() == 1
    }

    /// First Betti number: edges outside a spanning forest.
    pub fn betti(&self) -> usize {
        let mut ds = DisjointSet::new(self.vertex_count);
        self.edges
            .iter()
            .filter(|&&(a, b, _)| !ds.union(a, b))
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b, _) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

/// Embedding conditions on the loops that the combinatorics cannot check.
pub const GAMMA_CONDITIONS: [&str; 5] = [
    "gamma_i is not a trivial knot in its slab T x [e_(i-1), e_i] or in R0', R1'",
    "gamma_i is not isotopic in its region to a knot on the torus T x {e_i}",
    "gamma_i is not a cable of a knot in its region",
    "no annulus B in T x {e_0} has B x [0,1] containing the graph",
    "no Mobius band in R0' (R1') is disjoint from gamma_1 (gamma_n)",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChecklistItem {
    pub condition: &'static str,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFamily {
    pub graph: GammaGraph,
    pub betti: usize,
    /// Genus of the boundary of a regular neighborhood of the graph.
    pub handlebody_genus: usize,
    pub checklist: Vec<ChecklistItem>,
}

pub fn gamma_family(n: i64) -> Result<GammaFamily, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::BelowRange(n));
    }
    let graph = GammaGraph::new(n as usize)?;
    let betti = graph.betti();
    Ok(GammaFamily {
        graph,
        betti,
        handlebody_genus: betti,
        checklist: GAMMA_CONDITIONS
            .iter()
            .map(|&condition| ChecklistItem {
                condition,
                verified: false,
            })
            .collect(),
    })
}

/// A `(b, g)`-presentation summary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresentationRecord {
    pub b: u64,
    pub g: u64,
    pub maxima: u64,
    pub minima: u64,
}

impl PresentationRecord {
    pub fn new(b: u64, g: u64, maxima: u64, minima: u64) -> Result<Self, ConstructionError> {
        if b == 0 {
            return Err(ConstructionError::NonPositiveBridge(0));
        }
        if maxima != b || minima != b {
            return Err(ConstructionError::Unbalanced {
                b,
                g,
                maxima,
                minima,
            });
        }
        Ok(Self {
            b,
            g,
            maxima,
            minima,
        })
    }

    pub fn tunnel_bound(&self) -> i64 {
        (self.b + self.g) as i64 - 1
    }
}

/// Tunnel number bound `b + g - 1` for a `(b, g)`-presentation.
pub fn tunnel_bound(b: i64, g: i64) -> Result<i64, ConstructionError> {
    if b < 1 {
        return Err(ConstructionError::NonPositiveBridge(b));
    }
    if g < 0 {
        return Err(ConstructionError::NegativeGenus(g));
    }
    Ok(b + g - 1)
}
