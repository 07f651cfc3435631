//! Python module `qgroupoid`. Documents travel as JSON text in the format
//! the command-line tool reads; results come back as plain Python values.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use qgroupoid_core::cocycle::{CocyclePair, CocycleSpace, DEFAULT_BUDGET};
use qgroupoid_core::cohomology::{aut_and_opext, groupoid_cohomology, kac_report, Coefficients, Normalization};
use qgroupoid_core::double::{vacancy_report, DoubleGroupoid};
use qgroupoid_core::error::Error;
use qgroupoid_core::field::{Field, FieldSpec, FieldVisitor};
use qgroupoid_core::format::{emit, parse, CocycleTables, Document};
use qgroupoid_core::matched_pair::MatchedPair;
use qgroupoid_core::wha::QuantumGroupoid;

fn err(e: Error) -> PyErr {
    match e {
        Error::Internal(m) => PyRuntimeError::new_err(m),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn double_from(text: &str) -> PyResult<DoubleGroupoid> {
    match parse(text).map_err(err)? {
        Document::DoubleGroupoid(t) => Ok(t),
        Document::MatchedPair(mp) => mp.to_vacant_double().map_err(err),
        d => Err(PyValueError::new_err(format!("expected a double groupoid, found {}", d.kind()))),
    }
}

fn cocycle_from(text: &str, t: &DoubleGroupoid) -> PyResult<CocyclePair> {
    match parse(text).map_err(err)? {
        Document::CocyclePair(c) => c.resolve(t).map_err(err),
        d => Err(PyValueError::new_err(format!("expected a cocycle pair, found {}", d.kind()))),
    }
}

/// A double groupoid loaded from a document.
#[pyclass(name = "DoubleGroupoid", frozen)]
struct PyDouble {
    inner: DoubleGroupoid,
}

#[pymethods]
impl PyDouble {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDouble { inner: double_from(text)? })
    }

    fn to_json(&self) -> String {
        emit(&Document::DoubleGroupoid(self.inner.clone()))
    }

    /// The matched pair of a vacant double groupoid, as a document.
    fn matched_pair_json(&self) -> PyResult<String> {
        let mp = MatchedPair::from_vacant_double(&self.inner).map_err(err)?;
        Ok(emit(&Document::MatchedPair(mp)))
    }

    #[getter]
    fn n_points(&self) -> usize {
        self.inner.n_points()
    }

    #[getter]
    fn n_boxes(&self) -> usize {
        self.inner.n_boxes()
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    fn is_vacant(&self) -> bool {
        let r = vacancy_report(&self.inner);
        r.top_right.is_vacant()
    }

    fn transpose(&self) -> Self {
        PyDouble {
            inner: self.inner.transpose(),
        }
    }

    /// Exhaustive weak Hopf algebra check. `p = 0` is the rationals; a
    /// cocycle document twists the structure through `zeta`.
    #[pyo3(signature = (p=0, zeta=None, cocycle=None))]
    fn verify_wha<'py>(
        &self,
        py: Python<'py>,
        p: u64,
        zeta: Option<u64>,
        cocycle: Option<&str>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let cp = cocycle.map(|c| cocycle_from(c, &self.inner)).transpose()?;
        let fs = FieldSpec { characteristic: p, zeta };
        let m = cp.as_ref().map_or(1, |c| c.modulus);
        let job = Verify {
            t: &self.inner,
            cp: cp.as_ref(),
        };
        let v = py.allow_threads(|| fs.visit(m, job)).map_err(err)?.map_err(err)?;
        let d = PyDict::new_bound(py);
        d.set_item("ok", v.ok)?;
        d.set_item("dimension", v.dimension)?;
        d.set_item("hopf", v.hopf)?;
        d.set_item("involutory", v.involutory)?;
        d.set_item("violations", v.violations)?;
        Ok(d)
    }

    /// Every normalized cocycle pair mod `m`, as documents.
    #[pyo3(signature = (m, budget=DEFAULT_BUDGET))]
    fn cocycles(&self, m: u64, budget: u64) -> PyResult<Vec<String>> {
        let space = CocycleSpace::new(&self.inner).map_err(err)?;
        let pairs = space.enumerate_propagating(m, budget).map_err(err)?;
        pairs
            .iter()
            .map(|cp| {
                let t = CocycleTables::from_pair(&self.inner, cp).map_err(err)?;
                Ok(emit(&Document::CocyclePair(t)))
            })
            .collect()
    }

    /// `(gauge classes of pairs mod m, |H¹(Tot A, ℤ/m)|)`.
    #[pyo3(signature = (m, budget=DEFAULT_BUDGET))]
    fn gauge_classes(&self, m: u64, budget: u64) -> PyResult<(usize, Option<u64>)> {
        let space = CocycleSpace::new(&self.inner).map_err(err)?;
        let classes = space.count_modulo_gauge(m, budget).map_err(err)?;
        let (_, opext) = aut_and_opext(&self.inner, m, Normalization::Full).map_err(err)?;
        Ok((classes, opext.order_u64()))
    }

    /// Dimensions of the nine terms of the exact sequence over `𝔽_p`, and
    /// whether it is exact and consistent.
    fn kac(&self, p: u64) -> PyResult<(Vec<usize>, bool)> {
        let r = kac_report(&self.inner, p, Normalization::Full).map_err(err)?;
        Ok((r.nodes.iter().map(|n| n.dimension).collect(), r.is_ok()))
    }

    /// Algebra and coalgebra blocks as `(representative, group order, size)`.
    fn blocks(&self) -> PyResult<(Vec<(usize, usize, usize)>, Vec<(usize, usize, usize)>)> {
        let bs = qgroupoid_core::wha::block_structure(&self.inner).map_err(err)?;
        let f = |v: &[qgroupoid_core::wha::Block]| v.iter().map(|b| (b.representative, b.group_order, b.size)).collect();
        Ok((f(&bs.algebra), f(&bs.coalgebra)))
    }

    fn __repr__(&self) -> String {
        format!("DoubleGroupoid({} points, {} boxes)", self.inner.n_points(), self.inner.n_boxes())
    }
}

struct Verified {
    ok: bool,
    dimension: usize,
    hopf: bool,
    involutory: bool,
    violations: Vec<(String, Vec<usize>)>,
}

struct Verify<'a> {
    t: &'a DoubleGroupoid,
    cp: Option<&'a CocyclePair>,
}

impl FieldVisitor for Verify<'_> {
    type Output = Result<Verified, Error>;

    fn visit<F: Field + 'static>(self, field: F, zeta: F::Elem) -> Self::Output {
        let w = match self.cp {
            Some(cp) => QuantumGroupoid::build_twisted(self.t, cp, field, &zeta)?,
            None => QuantumGroupoid::build(self.t, field)?,
        };
        let rep = w.verify_axioms();
        Ok(Verified {
            ok: rep.is_ok(),
            dimension: w.dim(),
            hopf: w.is_hopf()?,
            involutory: w.check_involutory(),
            violations: rep
                .violations
                .iter()
                .map(|v| (v.axiom.label().to_string(), v.witness.clone()))
                .collect(),
        })
    }
}

/// Validates any document; returns `(ok, report)`.
#[pyfunction]
fn validate(text: &str) -> PyResult<(bool, String)> {
    Ok(match parse(text).map_err(err)? {
        Document::Groupoid(g) => {
            let r = g.validate();
            (r.is_ok(), r.to_string())
        }
        Document::DoubleGroupoid(t) => {
            let r = t.validate();
            (r.is_ok(), r.to_string())
        }
        Document::MatchedPair(mp) => {
            let r = mp.validate();
            (r.is_ok(), r.to_string())
        }
        Document::FieldSpec(fs) => (true, fs.describe()),
        Document::CocyclePair(_) => {
            return Err(PyValueError::new_err("a cocycle pair is validated against its double groupoid"))
        }
    })
}

/// Canonical re-emission of a document.
#[pyfunction]
fn canonicalize(text: &str) -> PyResult<String> {
    Ok(emit(&parse(text).map_err(err)?))
}

/// Groupoid cohomology `H⁰ … H^degree` rendered as strings; coefficients
/// `𝔽_p`, `ℤ/m` or the integers.
#[pyfunction]
#[pyo3(signature = (text, degree, p=None, m=None))]
fn cohomology(text: &str, degree: usize, p: Option<u64>, m: Option<u64>) -> PyResult<Vec<String>> {
    let g = match parse(text).map_err(err)? {
        Document::Groupoid(g) => g,
        Document::MatchedPair(mp) => mp.diagonal_groupoid().map_err(err)?.groupoid,
        d => return Err(PyValueError::new_err(format!("no cohomology for a {}", d.kind()))),
    };
    let coeffs = match (p, m) {
        (Some(p), None) => Coefficients::Prime(p),
        (None, Some(m)) => Coefficients::Cyclic(m),
        (None, None) => Coefficients::Integers,
        _ => return Err(PyValueError::new_err("give at most one of p and m")),
    };
    let groups = groupoid_cohomology(&g, degree, coeffs).map_err(err)?;
    Ok(groups.iter().map(|h| h.to_string()).collect())
}

/// The built-in instances as `{file stem: document}`.
#[pyfunction]
fn corpus() -> Vec<(String, String)> {
    qgroupoid_core::corpus::documents()
        .into_iter()
        .map(|(stem, doc)| (stem, emit(&doc)))
        .collect()
}

#[pymodule]
fn qgroupoid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDouble>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    Ok(())
}
