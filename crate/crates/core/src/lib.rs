//! Genus bounds for closed acylindrical surfaces.
//!
//! The crate covers normal surfaces in closed triangulations and the
//! edge-counting bounds built on them, diagrammatic bounds for knot and link
//! projections decomposed into tangles, branched-surface weight systems, and
//! the combinatorial data of a tunnel-number-two family.

pub mod acyl_bounds;
pub mod branched;
pub mod cli;
pub mod constructions;
pub mod knot_tangles;
pub mod normal_surface;
pub mod selftest;
pub mod triangulation;
pub mod union_find;
