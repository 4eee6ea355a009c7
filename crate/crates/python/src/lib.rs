use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ncdp::collections::{
    apply_braid, check_collection, check_very_strong_line_bundles, gram_matrix, ExceptionalSequence,
};
use ncdp::formats::{builtin_collection, parse_collection, to_json, CollectionFile, PotentialFile, QuiverFile};
use ncdp::graded::{verify_type_q, FieldMode};
use ncdp::kernel::{format_rational, parse_rational};
use ncdp::lattice::{self, DivisorClass, SurfaceContext};
use ncdp::points::{count_point_representations, point_representation_system};
use ncdp::quiver::{enumerate_primitive_cycles, jacobian_relations, rollup_quiver_from_foundation};
use ncdp::sklyanin::{self as sk, PointScheme, SklyaninParams};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Surface", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PySurface(SurfaceContext);

#[pymethods]
impl PySurface {
    #[staticmethod]
    fn blowup(n: u32) -> PyResult<Self> {
        SurfaceContext::blowup(n).map(PySurface).map_err(err)
    }

    #[staticmethod]
    fn quadric() -> Self {
        PySurface(SurfaceContext::Quadric)
    }

    #[getter]
    fn helix_period(&self) -> usize {
        self.0.helix_period()
    }

    #[getter]
    fn degree(&self) -> i64 {
        lattice::surface_degree(self.0)
    }

    fn canonical_class(&self) -> Vec<i64> {
        lattice::canonical_class(self.0).0
    }

    fn minus_one_classes(&self) -> Vec<Vec<i64>> {
        lattice::minus_one_classes(self.0).into_iter().map(|d| d.0).collect()
    }

    fn line_bundle(&self, c1: Vec<i64>) -> PyResult<PyKClass> {
        lattice::line_bundle_class(&DivisorClass(c1), self.0).map(PyKClass).map_err(err)
    }

    /// `(h0, h1, h2)` of the line bundle `O(c1)`.
    fn cohomology(&self, c1: Vec<i64>) -> PyResult<(i64, i64, i64)> {
        let c = lattice::cohomology_line_bundle(&DivisorClass(c1), self.0).map_err(err)?;
        Ok((c.h0, c.h1, c.h2))
    }

    fn euler_pairing(&self, a: &PyKClass, b: &PyKClass) -> PyResult<i64> {
        lattice::euler_pairing(&a.0, &b.0, self.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Surface({})", self.0)
    }
}

#[pyclass(name = "KClass", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyKClass(lattice::KClass);

#[pymethods]
impl PyKClass {
    #[new]
    fn new(rank: i64, c1: Vec<i64>, twice_ch2: i64) -> Self {
        PyKClass(lattice::KClass::new(rank, c1, twice_ch2))
    }

    #[getter]
    fn rank(&self) -> i64 {
        self.0.rank
    }

    #[getter]
    fn c1(&self) -> Vec<i64> {
        self.0.c1.0.clone()
    }

    #[getter]
    fn twice_ch2(&self) -> i64 {
        self.0.twice_ch2
    }

    fn __repr__(&self) -> String {
        format!("KClass{}", self.0)
    }
}

#[pyclass(name = "Collection", frozen)]
struct PyCollection(ExceptionalSequence);

#[pymethods]
impl PyCollection {
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        builtin_collection(name).map_err(err)?.sequence().map(PyCollection).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_collection(text).map_err(err)?.sequence().map(PyCollection).map_err(err)
    }

    fn to_json(&self) -> String {
        to_json(&CollectionFile::from_sequence(&self.0))
    }

    #[getter]
    fn surface(&self) -> PySurface {
        PySurface(self.0.ctx)
    }

    #[getter]
    fn classes(&self) -> Vec<PyKClass> {
        self.0.classes.iter().cloned().map(PyKClass).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn gram(&self) -> PyResult<Vec<Vec<i64>>> {
        gram_matrix(&self.0).map_err(err)
    }

    /// Whether the numerical exceptional-collection conditions hold.
    fn is_exceptional(&self) -> bool {
        check_collection(&self.0).passed()
    }

    fn mutate(&self, word: &str) -> PyResult<Self> {
        let w = word.parse().map_err(err)?;
        apply_braid(&self.0, &w).map(PyCollection).map_err(err)
    }

    #[pyo3(signature = (periods = 3))]
    fn is_very_strong(&self, periods: usize) -> PyResult<bool> {
        check_very_strong_line_bundles(&self.0, periods).map(|r| r.passed()).map_err(err)
    }

    /// Arrow counts `a(i -> j)` of the rolled-up quiver.
    fn rollup(&self) -> PyResult<Vec<Vec<usize>>> {
        rollup_quiver_from_foundation(&self.0).map(|r| r.multiplicities).map_err(err)
    }

    /// JSON of the rolled-up quiver.
    fn rollup_quiver_json(&self) -> PyResult<String> {
        let r = rollup_quiver_from_foundation(&self.0).map_err(err)?;
        Ok(to_json(&QuiverFile::from_quiver(&r.quiver)))
    }

    /// Number of primitive cycle classes of the rolled-up quiver up to `maxlen`.
    fn primitive_cycles(&self, maxlen: usize) -> PyResult<Vec<Vec<String>>> {
        let q = rollup_quiver_from_foundation(&self.0).map_err(err)?.quiver;
        Ok(enumerate_primitive_cycles(&q, maxlen).iter().map(|c| c.ids(&q)).collect())
    }
}

#[pyclass(name = "VerifyResult", frozen)]
struct PyVerifyResult {
    #[pyo3(get)]
    passed: bool,
    #[pyo3(get)]
    first_mismatch: Option<String>,
    #[pyo3(get)]
    report: String,
    #[pyo3(get)]
    table: Option<String>,
}

fn params(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, c: &Bound<'_, PyAny>) -> PyResult<SklyaninParams> {
    let r = |x: &Bound<'_, PyAny>| -> PyResult<_> { parse_rational(&x.str()?.to_string()).map_err(err) };
    SklyaninParams::new(r(a)?, r(b)?, r(c)?).map_err(err)
}

/// Potential file JSON for the Sklyanin potential; parameters may be ints or "p/q" strings.
#[pyfunction]
fn sklyanin_potential(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, c: &Bound<'_, PyAny>) -> PyResult<String> {
    let (q, phi) = sk::sklyanin_potential(&params(a, b, c)?).map_err(err)?;
    Ok(to_json(&PotentialFile::from_potential(&q, &phi, "builtin:p2")))
}

/// Relations `d/da` of the Sklyanin potential, keyed by arrow id.
#[pyfunction]
fn sklyanin_relations(
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
) -> PyResult<Vec<(String, String)>> {
    let (q, phi) = sk::sklyanin_potential(&params(a, b, c)?).map_err(err)?;
    Ok(jacobian_relations(&q, &phi).relations.iter().map(|(x, r)| (q.arrow_id(*x).to_string(), r.format(&q))).collect())
}

#[pyfunction]
#[pyo3(signature = (a, b, c, maxlevel = 2, prime = None))]
fn verify_sklyanin(
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    maxlevel: usize,
    prime: Option<u64>,
) -> PyResult<PyVerifyResult> {
    let (q, phi) = sk::sklyanin_potential(&params(a, b, c)?).map_err(err)?;
    let f = builtin_collection("p2").map_err(err)?.sequence().map_err(err)?;
    let mode = prime.map_or(FieldMode::Rational, FieldMode::Modp);
    let r = verify_type_q(&q, &phi, &f, maxlevel, mode);
    Ok(PyVerifyResult {
        passed: r.passed,
        first_mismatch: r.first_mismatch.clone(),
        report: r.to_string(),
        table: r.table.as_ref().map(|t| t.to_tsv()),
    })
}

/// The ten coefficients (x^3, x^2y, ..., z^3) as "p/q" strings, or None if the
/// determinant vanishes identically.
#[pyfunction]
fn point_scheme_cubic(
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
) -> PyResult<Option<Vec<String>>> {
    let m = sk::sklyanin_point_matrix(&params(a, b, c)?).map_err(err)?;
    Ok(match sk::point_scheme_cubic(&m).map_err(err)? {
        PointScheme::IdenticallyZero => None,
        PointScheme::Cubic(f) => Some(f.coefficients.iter().map(format_rational).collect()),
    })
}

#[pyfunction]
fn point_scheme_is_smooth(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, c: &Bound<'_, PyAny>) -> PyResult<bool> {
    let m = sk::sklyanin_point_matrix(&params(a, b, c)?).map_err(err)?;
    match sk::point_scheme_cubic(&m).map_err(err)? {
        PointScheme::IdenticallyZero => Ok(false),
        PointScheme::Cubic(f) => sk::hesse_smoothness(&f).map_err(err),
    }
}

#[pyfunction]
fn count_points(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, c: &Bound<'_, PyAny>, p: u64) -> PyResult<u64> {
    let (q, phi) = sk::sklyanin_potential(&params(a, b, c)?).map_err(err)?;
    let sys = point_representation_system(&q, &jacobian_relations(&q, &phi)).map_err(err)?;
    count_point_representations(&sys, p).map_err(err)
}

#[pymodule]
fn pyncdp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySurface>()?;
    m.add_class::<PyKClass>()?;
    m.add_class::<PyCollection>()?;
    m.add_class::<PyVerifyResult>()?;
    m.add_function(wrap_pyfunction!(sklyanin_potential, m)?)?;
    m.add_function(wrap_pyfunction!(sklyanin_relations, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sklyanin, m)?)?;
    m.add_function(wrap_pyfunction!(point_scheme_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(point_scheme_is_smooth, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    Ok(())
}
