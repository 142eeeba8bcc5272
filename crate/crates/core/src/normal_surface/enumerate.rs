//! Box-bounded enumeration of admissible vectors.
//!
//! The search branches on a quad type (or none) per tetrahedron, then runs a
//! depth-first assignment over the active coordinates with forced-value
//! propagation through the matching rows. Vectors that are minimal under the
//! componentwise order among nonzero admissible vectors in the box are
//! exactly those that do not split as a sum of two nonzero admissible
//! vectors, since the difference of two admissible vectors `u <= v` is again
//! admissible.

use rayon::prelude::*;

use super::{matching_system, NormalError, NormalVector};
use crate::triangulation::Triangulation;

pub const MAX_TETS: usize = 8;
pub const MAX_COORD_CAP: u32 = 32;

struct Search<'a> {
    rows: &'a [Vec<(usize, i64)>],
    rows_of_col: &'a [Vec<usize>],
    max: u32,
    /// `None` marks an unassigned active coordinate.
    value: Vec<Option<u32>>,
    /// Lower bound per coordinate (1 for a selected quad).
    lower: Vec<u32>,
    order: Vec<usize>,
    out: Vec<NormalVector>,
}

impl Search<'_> {
    fn run(&mut self) {
        let mut trail = Vec::new();
        if !self.propagate(&mut trail) {
            return;
        }
        self.descend();
    }

    fn descend(&mut self) {
        let next = self
            .order
            .iter()
            .copied()
            .find(|&c| self.value[c].is_none());
        let Some(col) = next else {
            self.out.push(NormalVector::new(
                self.value.iter().map(|x| x.unwrap_or(0)).collect(),
            ));
            return;
        };
        for x in self.lower[col]..=self.max {
            self.value[col] = Some(x);
            let mut trail = vec![col];
            if self.check_rows_of(col) && self.propagate(&mut trail) {
                self.descend();
            }
            for c in trail {
                self.value[c] = None;
            }
        }
    }

    fn check_rows_of(&self, col: usize) -> bool {
        self.rows_of_col[col].iter().all(|&r| self.row_ok(r))
    }

    /// Whether row `r` can still be satisfied given current assignments.
    fn row_ok(&self, r: usize) -> bool {
        let mut sum = 0i64;
        for &(c, a) in &self.rows[r] {
            match self.value[c] {
                Some(x) => sum += a * x as i64,
                None => return true,
            }
        }
        sum == 0
    }

    /// Assigns every coordinate forced by a row with a single unknown.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for r in 0..self.rows.len() {
                let mut sum = 0i64;
                let mut unknown = None;
                let mut unknowns = 0;
                for &(c, a) in &self.rows[r] {
                    match self.value[c] {
                        Some(x) => sum += a * x as i64,
                        None => {
                            unknowns += 1;
                            unknown = Some((c, a));
                        }
                    }
                }
                match (unknowns, unknown) {
                    (0, _) if sum != 0 => return false,
                    (1, Some((c, a))) => {
                        if sum % a != 0 {
                            return false;
                        }
                        let x = -sum / a;
                        if x < self.lower[c] as i64 || x > self.max as i64 {
                            return false;
                        }
                        self.value[c] = Some(x as u32);
                        trail.push(c);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

fn check_caps(tri: &Triangulation, max_coord: u32) -> Result<(), NormalError> {
    if tri.tet_count() > MAX_TETS {
        return Err(NormalError::TooLarge(format!(
            "{} tetrahedra exceeds the cap of {MAX_TETS}",
            tri.tet_count()
        )));
    }
    if max_coord == 0 || max_coord > MAX_COORD_CAP {
        return Err(NormalError::TooLarge(format!(
            "max_coord must be in 1..={MAX_COORD_CAP}, got {max_coord}"
        )));
    }
    Ok(())
}

/// Every nonzero admissible vector with all coordinates at most `max_coord`,
/// sorted lexicographically.
pub fn enumerate_admissible(
    tri: &Triangulation,
    max_coord: u32,
) -> Result<Vec<NormalVector>, NormalError> {
    check_caps(tri, max_coord)?;
    let t = tri.tet_count();
    let system = matching_system(tri);
    let rows = system.sparse_rows();
    let mut rows_of_col = vec![Vec::new(); 7 * t];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            rows_of_col[c].push(r);
        }
    }
    let branches = 4usize.pow(t as u32);
    let mut found: Vec<NormalVector> = (0..branches)
        .into_par_iter()
        .flat_map_iter(|code| {
            let mut value = vec![Some(0u32); 7 * t];
            let mut lower = vec![0u32; 7 * t];
            let mut order = Vec::with_capacity(5 * t);
            let mut sel = code;
            for tet in 0..t {
                let choice = sel % 4;
                sel /= 4;
                for corner in 0..4 {
                    value[7 * tet + corner] = None;
                    order.push(7 * tet + corner);
                }
                if choice > 0 {
                    let col = 7 * tet + 3 + choice;
                    value[col] = None;
                    lower[col] = 1;
                    order.push(col);
                }
            }
            let mut search = Search {
                rows: &rows,
                rows_of_col: &rows_of_col,
                max: max_coord,
                value,
                lower,
                order,
                out: Vec::new(),
            };
            search.run();
            search.out.into_iter().filter(|v| !v.is_zero())
        })
        .collect();
    found.sort();
    Ok(found)
}

/// Nonzero admissible vectors in the box `[0, max_coord]^{7t}` that are not
/// the sum of two nonzero admissible vectors, sorted lexicographically.
pub fn enumerate_vertex_surfaces(
    tri: &Triangulation,
    max_coord: u32,
) -> Result<Vec<NormalVector>, NormalError> {
    let mut all = enumerate_admissible(tri, max_coord)?;
    all.sort_by_key(|v| (v.coords().iter().map(|&c| c as u64).sum::<u64>(), v.clone()));
    let mut minimal: Vec<NormalVector> = Vec::new();
    for v in all {
        if !minimal.iter().any(|m| m.dominated_by(&v)) {
            minimal.push(v);
        }
    }
    minimal.sort();
    Ok(minimal)
}
