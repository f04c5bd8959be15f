//! Python bindings: class spaces, symbols, the valuation oracle and the
//! scenario pipeline. Reports are returned as JSON strings.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use valforge::classes::{ClassSpace, PowerClass, SubgroupSpec};
use valforge::invariants;
use valforge::places::{FieldDescriptor, FunctionField, GlobalField, Rationals};
use valforge::report;
use valforge::rigid::{self, HChoice, ValuationOracle};
use valforge::scenario::Scenario;
use valforge::symbols;

fn err(e: valforge::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn descriptor(field: &str) -> PyResult<FieldDescriptor> {
    field.parse().map_err(err)
}

#[derive(Clone)]
enum AnySpace {
    Q(Arc<ClassSpace<Rationals>>),
    F(Arc<ClassSpace<FunctionField>>),
}

macro_rules! on_space {
    ($s:expr, $v:ident => $body:expr) => {
        match $s {
            AnySpace::Q($v) => $body,
            AnySpace::F($v) => $body,
        }
    };
}

impl AnySpace {
    fn new(field: &str, place: &str, p: u64) -> PyResult<Self> {
        match descriptor(field)? {
            FieldDescriptor::Rationals => {
                let pl = Rationals.parse_place(place).map_err(err)?;
                Ok(AnySpace::Q(Arc::new(ClassSpace::new(Rationals, pl, p).map_err(err)?)))
            }
            FieldDescriptor::FunctionField { q } => {
                let f = FunctionField::with_size(q).map_err(err)?;
                let pl = f.parse_place(place).map_err(err)?;
                Ok(AnySpace::F(Arc::new(ClassSpace::new(f, pl, p).map_err(err)?)))
            }
            d => Err(PyValueError::new_err(format!("{d} is not a global field"))),
        }
    }
}

/// `E*/E*^p` at a discrete place, as an `F_p` vector space.
#[pyclass(frozen, name = "ClassSpace")]
struct PyClassSpace {
    inner: AnySpace,
}

#[pymethods]
impl PyClassSpace {
    #[new]
    #[pyo3(signature = (field, place, p))]
    fn new(field: &str, place: &str, p: u64) -> PyResult<Self> {
        Ok(PyClassSpace {
            inner: AnySpace::new(field, place, p)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        on_space!(&self.inner, v => v.dim())
    }

    #[getter]
    fn p(&self) -> u64 {
        on_space!(&self.inner, v => v.p())
    }

    #[getter]
    fn norm(&self) -> u128 {
        on_space!(&self.inner, v => v.norm())
    }

    #[getter]
    fn label(&self) -> String {
        on_space!(&self.inner, v => v.label())
    }

    /// Class of an element, written in the field's expression syntax.
    fn class_of(&self, x: &str) -> PyResult<Vec<u64>> {
        on_space!(&self.inner, v => {
            let e = v.field().parse_elem(x).map_err(err)?;
            Ok(v.class_of(&e).map_err(err)?.0)
        })
    }

    fn lift(&self, class: Vec<u64>) -> PyResult<String> {
        on_space!(&self.inner, v => {
            if class.len() != v.dim() || class.iter().any(|&c| c >= v.p()) {
                return Err(PyValueError::new_err("class has the wrong shape"));
            }
            Ok(v.lift(&PowerClass(class)).to_string())
        })
    }

    /// Every class with its canonical lift.
    fn classes(&self) -> Vec<(Vec<u64>, String)> {
        on_space!(&self.inner, v => v
            .enumerate_classes()
            .into_iter()
            .map(|(c, x)| (c.0, x.to_string()))
            .collect())
    }

    fn pairing(&self, a: Vec<u64>, b: Vec<u64>) -> PyResult<u64> {
        on_space!(&self.inner, v => symbols::local_pairing(v, &PowerClass(a), &PowerClass(b)).map_err(err))
    }

    /// The wedge-isomorphism report, as JSON.
    fn wedge(&self) -> PyResult<String> {
        on_space!(&self.inner, v => to_json(&symbols::wedge_iso_check(v).map_err(err)?))
    }

    /// Hypotheses (a) and (b) for the given `T-bar` basis.
    fn hypotheses(&self, t_basis: Vec<Vec<u64>>) -> PyResult<(bool, bool)> {
        on_space!(&self.inner, v => {
            let spec = SubgroupSpec::new(v.clone(), &t_basis).map_err(err)?;
            Ok((
                rigid::check_hypothesis_a(&spec).map_err(err)?.holds(),
                rigid::check_hypothesis_b(&spec).map_err(err)?.holds(),
            ))
        })
    }

    fn __repr__(&self) -> String {
        format!("ClassSpace({}, p={}, dim={})", self.label(), self.p(), self.dim())
    }
}

enum AnyOracle {
    Q(ValuationOracle<Rationals>),
    F(ValuationOracle<FunctionField>),
}

/// Membership oracle for `O = O-minus ∪ O-plus`.
#[pyclass(frozen, name = "ValuationOracle")]
struct PyOracle {
    inner: AnyOracle,
}

fn build_oracle<F: GlobalField>(
    space: &Arc<ClassSpace<F>>,
    t_basis: &[Vec<u64>],
    w: &[u64],
    height: u64,
    count: usize,
) -> PyResult<ValuationOracle<F>> {
    let spec = SubgroupSpec::new(space.clone(), t_basis).map_err(err)?;
    let h = HChoice::from_vector(spec, w).map_err(err)?;
    ValuationOracle::build(h, height, count).map_err(err)
}

fn classify_json<F: GlobalField>(o: &ValuationOracle<F>, candidates: &[String], height: u64) -> PyResult<String> {
    let field = o.field();
    let places = candidates
        .iter()
        .map(|c| field.parse_place(c))
        .collect::<valforge::Result<Vec<_>>>()
        .map_err(err)?;
    let samples = field.elements_up_to(height);
    to_json(&rigid::classify_valuation(o, &places, &samples).map_err(err)?.outcome)
}

macro_rules! on_oracle {
    ($s:expr, $o:ident => $body:expr) => {
        match $s {
            AnyOracle::Q($o) => $body,
            AnyOracle::F($o) => $body,
        }
    };
}

#[pymethods]
impl PyOracle {
    #[new]
    #[pyo3(signature = (space, t_basis, w, witness_height=100, witness_count=16))]
    fn new(space: &PyClassSpace, t_basis: Vec<Vec<u64>>, w: Vec<u64>, witness_height: u64, witness_count: usize) -> PyResult<Self> {
        let inner = match &space.inner {
            AnySpace::Q(v) => AnyOracle::Q(build_oracle(v, &t_basis, &w, witness_height, witness_count)?),
            AnySpace::F(v) => AnyOracle::F(build_oracle(v, &t_basis, &w, witness_height, witness_count)?),
        };
        Ok(PyOracle { inner })
    }

    #[getter]
    fn degenerate(&self) -> bool {
        on_oracle!(&self.inner, o => o.is_degenerate())
    }

    #[getter]
    fn witnesses(&self) -> Vec<String> {
        on_oracle!(&self.inner, o => o.witnesses().iter().map(|y| y.to_string()).collect())
    }

    fn in_o_minus(&self, x: &str) -> PyResult<bool> {
        on_oracle!(&self.inner, o => o.in_o_minus(&o.field().parse_elem(x).map_err(err)?).map_err(err))
    }

    /// `(member, sampled, witness)`; a `False` answer is exact.
    fn in_o_plus(&self, x: &str) -> PyResult<(bool, bool, Option<String>)> {
        on_oracle!(&self.inner, o => {
            let a = o.in_o_plus(&o.field().parse_elem(x).map_err(err)?).map_err(err)?;
            Ok((a.member, a.sampled, a.witness.map(|w| w.to_string())))
        })
    }

    fn in_o(&self, x: &str) -> PyResult<bool> {
        on_oracle!(&self.inner, o => o.in_o(&o.field().parse_elem(x).map_err(err)?).map_err(err))
    }

    /// Classification against candidate places over all elements up to
    /// `height`, as JSON.
    #[pyo3(signature = (candidates, height=60))]
    fn classify(&self, candidates: Vec<String>, height: u64) -> PyResult<String> {
        on_oracle!(&self.inner, o => classify_json(o, &candidates, height))
    }
}

/// The local symbol of `{x, y}` at a place, as JSON.
#[pyfunction]
#[pyo3(signature = (field, place, x, y, p=2))]
fn symbol(field: &str, place: &str, x: &str, y: &str, p: u64) -> PyResult<String> {
    to_json(&report::symbol_report(descriptor(field)?, place, x, y, p).map_err(err)?)
}

/// Whether `{x, y}` vanishes in `K2(E)/p`, with the certificate as JSON.
#[pyfunction]
fn k2_vanishes(field: &str, x: &str, y: &str, p: u64) -> PyResult<(bool, String)> {
    let cert = match descriptor(field)? {
        FieldDescriptor::Rationals => {
            let f = Rationals;
            symbols::k2_vanishes_mod_p(&f, &f.parse_elem(x).map_err(err)?, &f.parse_elem(y).map_err(err)?, p)
        }
        FieldDescriptor::FunctionField { q } => {
            let f = FunctionField::with_size(q).map_err(err)?;
            symbols::k2_vanishes_mod_p(&f, &f.parse_elem(x).map_err(err)?, &f.parse_elem(y).map_err(err)?, p)
        }
        d => return Err(PyValueError::new_err(format!("{d} is not a global field"))),
    }
    .map_err(err)?;
    Ok((cert.vanishes, to_json(&cert)?))
}

#[pyfunction]
fn weil_reciprocity(q: u64, f: &str, g: &str) -> PyResult<bool> {
    let field = FunctionField::with_size(q).map_err(err)?;
    let (f, g) = (field.parse_elem(f).map_err(err)?, field.parse_elem(g).map_err(err)?);
    symbols::weil_reciprocity_check(&field, &f, &g).map_err(err)
}

#[pyfunction]
fn kronecker_dimension(field: &str) -> PyResult<u32> {
    Ok(invariants::kronecker_dimension(&descriptor(field)?))
}

/// Invariants report as JSON; `n` requests the local dimension shadow.
#[pyfunction]
#[pyo3(signature = (field, place=None, p=None, n=None))]
fn invariants_report(field: &str, place: Option<&str>, p: Option<u64>, n: Option<u32>) -> PyResult<String> {
    to_json(&report::invariants_report(descriptor(field)?, place, p, n).map_err(err)?)
}

/// Runs the full construction on a scenario given as JSON text.
#[pyfunction]
#[pyo3(signature = (scenario, timing=false))]
fn construct(py: Python<'_>, scenario: &str, timing: bool) -> PyResult<String> {
    let s = Scenario::from_json(scenario).map_err(err)?;
    let r = py.detach(|| report::run_construct(&s, timing)).map_err(err)?;
    to_json(&r)
}

#[pyfunction]
#[pyo3(signature = (scenario, timing=false))]
fn search(py: Python<'_>, scenario: &str, timing: bool) -> PyResult<String> {
    let s = Scenario::from_json(scenario).map_err(err)?;
    let r = py.detach(|| report::run_search(&s, timing)).map_err(err)?;
    to_json(&r)
}

#[pyfunction]
fn selftest() -> PyResult<String> {
    to_json(&report::selftest())
}

#[pymodule]
#[pyo3(name = "valforge")]
fn py_valforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyClassSpace>()?;
    m.add_class::<PyOracle>()?;
    m.add_function(wrap_pyfunction!(symbol, m)?)?;
    m.add_function(wrap_pyfunction!(k2_vanishes, m)?)?;
    m.add_function(wrap_pyfunction!(weil_reciprocity, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(invariants_report, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
