//! Python bindings. Errors surface as `ValueError("<Kind>: <message>")`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use acylbounds::acyl_bounds as bounds;
use acylbounds::branched;
use acylbounds::constructions;
use acylbounds::knot_tangles as knots;
use acylbounds::normal_surface::{self as normal, NormalVector};
use acylbounds::triangulation;

macro_rules! to_py_err {
    ($($t:ty),*) => {$(
        impl From<Failure<$t>> for PyErr {
            fn from(Failure(e): Failure<$t>) -> PyErr {
                PyValueError::new_err(format!("{}: {}", e.kind(), e))
            }
        }
    )*};
}

struct Failure<E>(E);

to_py_err!(
    triangulation::TriangulationError,
    normal::NormalError,
    bounds::BoundsError,
    knots::KnotError,
    branched::BranchedError,
    constructions::ConstructionError
);

fn fail<E>(e: E) -> Failure<E> {
    Failure(e)
}

/// A closed triangulation parsed from gluing text.
#[pyclass(frozen)]
struct Triangulation(triangulation::Triangulation);

#[pymethods]
impl Triangulation {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self(
            triangulation::parse_triangulation(text).map_err(fail)?,
        ))
    }

    #[getter]
    fn tet_count(&self) -> usize {
        self.0.tet_count()
    }

    fn census<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = self.0.skeleton_census();
        let d = PyDict::new(py);
        d.set_item("vertices", c.vertices)?;
        d.set_item("edges", c.edges)?;
        d.set_item("faces", c.faces)?;
        d.set_item("tetrahedra", c.tetrahedra)?;
        d.set_item("euler", c.euler())?;
        Ok(d)
    }

    fn is_orientable(&self) -> bool {
        self.0.is_orientable()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    /// Vertex normal surfaces with coordinates at most `max_coord`.
    #[pyo3(signature = (max_coord = 4))]
    fn vertex_surfaces(&self, max_coord: u32) -> PyResult<Vec<Vec<u32>>> {
        let list = normal::enumerate_vertex_surfaces(&self.0, max_coord).map_err(fail)?;
        Ok(list.into_iter().map(|v| v.coords().to_vec()).collect())
    }

    fn euler_characteristic(&self, coords: Vec<u32>) -> PyResult<i64> {
        Ok(normal::euler_characteristic(&self.0, &NormalVector::new(coords)).map_err(fail)?)
    }

    /// The edge-counting certificate of a two-sided surface.
    fn certify<'py>(&self, py: Python<'py>, coords: Vec<u32>) -> PyResult<Bound<'py, PyDict>> {
        let c = bounds::counting_certificate(&self.0, &NormalVector::new(coords)).map_err(fail)?;
        let d = PyDict::new(py);
        d.set_item("good_total", c.good_total)?;
        d.set_item("fair_total", c.fair_total)?;
        d.set_item("bad_total", c.bad_total)?;
        d.set_item("rank_h1", c.rank_h1_fbar)?;
        d.set_item("chi_fbar", c.chi_fbar)?;
        d.set_item("genus", c.genus)?;
        d.set_item("bound", c.bound_value)?;
        d.set_item("max_tet_excess", c.max_tet_excess.to_string())?;
        d.set_item("verdict", c.verdict.as_str())?;
        Ok(d)
    }
}

/// A knot or link diagram.
#[pyclass(frozen)]
struct KnotDiagram(knots::KnotDiagram);

#[pymethods]
impl KnotDiagram {
    #[new]
    fn new(pd: &str) -> PyResult<Self> {
        Ok(Self(knots::parse_pd(pd).map_err(fail)?))
    }

    #[staticmethod]
    fn braid_closure(strands: usize, word: Vec<i32>) -> PyResult<Self> {
        Ok(Self(knots::braid_closure(strands, &word).map_err(fail)?))
    }

    #[getter]
    fn crossing_count(&self) -> usize {
        self.0.crossing_count()
    }

    fn face_sizes(&self) -> Vec<usize> {
        self.0.face_sizes()
    }

    fn component_count(&self) -> usize {
        self.0.component_count()
    }

    fn is_alternating(&self) -> bool {
        knots::is_alternating(&self.0)
    }

    fn crossing_bound(&self) -> i64 {
        knots::crossing_bound(&self.0).bound
    }

    fn to_pd(&self) -> String {
        self.0.to_pd()
    }
}

fn fraction_pair(f: knots::Fraction) -> Option<(i128, i128)> {
    match f {
        knots::Fraction::Finite(r) => Some((*r.numer(), *r.denom())),
        knots::Fraction::Infinite => None,
    }
}

/// Fraction of a twist vector as `(p, q)`, or `None` for infinity.
#[pyfunction]
fn tangle_fraction(twists: Vec<i64>) -> Option<(i128, i128)> {
    fraction_pair(knots::tangle_fraction(&knots::TwistVector(twists)))
}

/// Builds the rational tangle of `twists`, reduces its diagram back to a
/// twist vector and returns that vector.
#[pyfunction]
fn rational_round_trip(twists: Vec<i64>) -> PyResult<Option<Vec<i64>>> {
    let t = knots::Tangle::from_twist_vector(&knots::TwistVector(twists));
    Ok(knots::rational_reduce(&t).map_err(fail)?.map(|v| v.0))
}

#[pyfunction]
fn prop1_bound(t: i64) -> PyResult<i64> {
    Ok(bounds::prop1_bound(t).map_err(fail)?)
}

#[pyfunction]
fn heegaard_bound(g: usize, n_i: Vec<u64>) -> PyResult<i64> {
    Ok(bounds::heegaard_bound(g, &n_i).map_err(fail)?.genus_bound)
}

/// Extreme rays and dimension of a branched surface's weight cone.
#[pyfunction]
fn weight_cone(spec: &str) -> PyResult<(Vec<Vec<i64>>, usize)> {
    let s = branched::parse_branched_spec(spec).map_err(fail)?;
    let c = branched::weight_cone(&s).map_err(fail)?;
    Ok((c.rays, c.dimension))
}

/// Euler characteristic of each component of the carried surface.
#[pyfunction]
fn carried_components(spec: &str, weights: Vec<u64>) -> PyResult<Vec<i64>> {
    let s = branched::parse_branched_spec(spec).map_err(fail)?;
    let surface = branched::carried_surface(&s, &weights).map_err(fail)?;
    Ok(surface.components.iter().map(|c| c.euler).collect())
}

/// Weights and genus of the `n`-th member of the genus-`3n` family.
#[pyfunction]
fn figure14_family(n: i64) -> PyResult<(Vec<u64>, Option<i64>)> {
    let (w, s) = branched::figure14_family(n).map_err(fail)?;
    Ok((w, s.genus()))
}

#[pyfunction]
fn gamma_betti(n: i64) -> PyResult<usize> {
    Ok(constructions::gamma_family(n).map_err(fail)?.betti)
}

#[pyfunction]
fn tunnel_bound(b: i64, g: i64) -> PyResult<i64> {
    Ok(constructions::tunnel_bound(b, g).map_err(fail)?)
}

/// Runs the command line and returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(argv: Vec<String>) -> (i32, String, String) {
    acylbounds::cli::run_cli(&argv)
}

#[pymodule]
#[pyo3(name = "acylbounds")]
fn acylbounds_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Triangulation>()?;
    m.add_class::<KnotDiagram>()?;
    m.add_function(wrap_pyfunction!(tangle_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(rational_round_trip, m)?)?;
    m.add_function(wrap_pyfunction!(prop1_bound, m)?)?;
    m.add_function(wrap_pyfunction!(heegaard_bound, m)?)?;
    m.add_function(wrap_pyfunction!(weight_cone, m)?)?;
    m.add_function(wrap_pyfunction!(carried_components, m)?)?;
    m.add_function(wrap_pyfunction!(figure14_family, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_betti, m)?)?;
    m.add_function(wrap_pyfunction!(tunnel_bound, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
