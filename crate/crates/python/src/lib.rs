//! Python bindings: thin wrappers over the core types, with rationals
//! crossing the boundary as `"p/q"` strings and inequalities as their text
//! rows.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use revlex01::bits::BitVector01;
use revlex01::bounds::PyramidPolytope;
use revlex01::polytope::RevlexPolytope;
use revlex01::rat::{format_rational, parse_rational};
use revlex01::{expansion, facets, graph};

fn err(e: revlex01::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A revlex-initial 0/1-polytope, constructed from a vertex count or an
/// explicit spec vector bit string.
#[pyclass(frozen)]
struct Polytope {
    inner: RevlexPolytope,
}

#[pymethods]
impl Polytope {
    #[new]
    #[pyo3(signature = (n=None, v=None))]
    fn new(n: Option<u64>, v: Option<&str>) -> PyResult<Self> {
        let inner = match (n, v) {
            (Some(n), None) => RevlexPolytope::from_vertex_count(n).map_err(err)?,
            (None, Some(bits)) => {
                let v: BitVector01 = bits.parse().map_err(err)?;
                RevlexPolytope::from_spec_vector(v).map_err(err)?
            }
            _ => return Err(PyValueError::new_err("pass exactly one of n= and v=")),
        };
        Ok(Polytope { inner })
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn spec_vector(&self) -> String {
        self.inner.spec_vector().to_string()
    }

    #[getter]
    fn signature(&self) -> Vec<usize> {
        self.inner.signature().ones().to_vec()
    }

    #[getter]
    fn full_dimensional(&self) -> bool {
        self.inner.is_full_dimensional()
    }

    fn facet_count(&self) -> PyResult<u64> {
        facets::facet_count(&self.inner).map_err(err)
    }

    fn full_description(&self) -> Vec<String> {
        facets::full_description(&self.inner).iter().map(ToString::to_string).collect()
    }

    fn minimal_description(&self) -> PyResult<Vec<String>> {
        let rows = facets::minimal_description(&self.inner).map_err(err)?;
        Ok(rows.iter().map(ToString::to_string).collect())
    }

    fn edge_count(&self) -> u128 {
        graph::edge_count_formula(&self.inner)
    }

    fn average_degree(&self) -> String {
        format_rational(&graph::average_degree(&self.inner))
    }

    fn edges(&self) -> PyResult<Vec<(u64, u64)>> {
        Ok(graph::build_graph(&self.inner).map_err(err)?.edges())
    }

    /// Maximizes a rational objective given as `"p/q"` strings; returns
    /// `(value, argmax_bits)`.
    fn maximize(&self, c: Vec<String>) -> PyResult<(String, String)> {
        let coeffs = c
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let (value, arg) = self.inner.maximize(&coeffs).map_err(err)?;
        Ok((format_rational(&value), arg.to_string()))
    }

    fn contains(&self, bits: &str) -> PyResult<bool> {
        let x: BitVector01 = bits.parse().map_err(err)?;
        Ok(x.len() == self.inner.d() && self.inner.contains(x))
    }

    fn __repr__(&self) -> String {
        format!("Polytope(n={}, d={})", self.inner.n(), self.inner.d())
    }
}

/// The iterated pyramid over a revlex-initial base, for a prescribed
/// dimension and vertex count.
#[pyclass(frozen)]
struct Pyramid {
    inner: PyramidPolytope,
}

#[pymethods]
impl Pyramid {
    #[new]
    fn new(d: usize, n: u64) -> PyResult<Self> {
        Ok(Pyramid { inner: PyramidPolytope::new(d, n).map_err(err)? })
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    #[getter]
    fn d_tilde(&self) -> usize {
        self.inner.base_dim()
    }

    #[getter]
    fn n_tilde(&self) -> u64 {
        self.inner.base_vertex_count()
    }

    #[getter]
    fn apexes(&self) -> usize {
        self.inner.apex_count()
    }

    fn facet_count(&self) -> u64 {
        self.inner.facet_count()
    }

    fn edge_count(&self) -> u128 {
        self.inner.edge_count()
    }

    fn average_degree(&self) -> String {
        format_rational(&self.inner.average_degree())
    }

    fn expansion_lower_bound(&self) -> PyResult<String> {
        let cert = self.inner.expansion_certificate().map_err(err)?;
        Ok(format_rational(&cert.lower_bound))
    }

    fn __repr__(&self) -> String {
        format!("Pyramid(d={}, n={})", self.inner.dim(), self.inner.n())
    }
}

/// Certifies the edge-expansion lower bound for the polytope on `n`
/// vertices; returns `(phi_max, lower_bound, audited)`.
#[pyfunction]
#[pyo3(signature = (n, audit=false))]
fn certify_expansion(n: u64, audit: bool) -> PyResult<(String, String, bool)> {
    let cert = expansion::certify_expansion(n, audit).map_err(err)?;
    Ok((format_rational(&cert.phi_max), format_rational(&cert.lower_bound), cert.audited))
}

#[pymodule]
fn revlex01_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polytope>()?;
    m.add_class::<Pyramid>()?;
    m.add_function(wrap_pyfunction!(certify_expansion, m)?)?;
    Ok(())
}
