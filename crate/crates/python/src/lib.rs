//! Python bindings for the `springer_qh` library.

use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use springer_qh::report::VerifyReport;
use springer_qh::rootdata::{Family, RootSystem as CoreRootSystem};
use springer_qh::symbolic::text::{parse_rat, rat_latex, rat_to_text, LatexStyle};
use springer_qh::symbolic::{RatExpr, SymMatrix};
use springer_qh::weyl::{WeylGroup as CoreWeylGroup, DEFAULT_MAX_WEYL};
use springer_qh::{calogero_moser as cm, classical, qh_stable, toda, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        Error::Arith(_) | Error::Limit { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn family(name: &str) -> PyResult<Family> {
    Family::parse(name).ok_or_else(|| PyValueError::new_err(format!("unknown family {name:?}")))
}

/// An exact rational function in `hbar`, `eps_i`, `q_i`, `chi_i`, `x_i`, `p_i`.
#[pyclass(name = "Expr", frozen, eq)]
#[derive(Clone, PartialEq)]
struct Expr(RatExpr);

#[pymethods]
impl Expr {
    #[new]
    fn new(text: &str) -> PyResult<Expr> {
        parse_rat(text).map(Expr).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __str__(&self) -> String {
        rat_to_text(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", rat_to_text(&self.0))
    }

    fn __add__(&self, o: &Expr) -> Expr {
        Expr(self.0.add(&o.0))
    }

    fn __sub__(&self, o: &Expr) -> Expr {
        Expr(self.0.sub(&o.0))
    }

    fn __mul__(&self, o: &Expr) -> Expr {
        Expr(self.0.mul(&o.0))
    }

    fn __neg__(&self) -> Expr {
        Expr(self.0.neg())
    }

    fn __truediv__(&self, o: &Expr) -> PyResult<Expr> {
        self.0.div(&o.0).map(Expr).map_err(|e| PyArithmeticError::new_err(e.to_string()))
    }

    fn __pow__(&self, k: i32, _modulo: Option<i64>) -> PyResult<Expr> {
        self.0.pow(k).map(Expr).map_err(|e| PyArithmeticError::new_err(e.to_string()))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// LaTeX; with `t_alias`, `eps_i` prints as `-t_i`.
    #[pyo3(signature = (t_alias = false))]
    fn latex(&self, t_alias: bool) -> String {
        rat_latex(&self.0, LatexStyle { t_alias })
    }

    /// Limit as `hbar -> infinity`; raises `ArithmeticError` if it diverges.
    fn limit_hbar_inf(&self) -> PyResult<Expr> {
        self.0.limit_hbar_inf().map(Expr).map_err(|e| PyArithmeticError::new_err(e.to_string()))
    }
}

/// A square matrix of expressions.
#[pyclass(name = "Matrix", frozen)]
struct Matrix(SymMatrix);

#[pymethods]
impl Matrix {
    #[new]
    fn new(rows: Vec<Vec<Expr>>) -> PyResult<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        Ok(Matrix(SymMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect())))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn __getitem__(&self, ij: (usize, usize)) -> PyResult<Expr> {
        let (i, j) = ij;
        if i >= self.0.dim() || j >= self.0.dim() {
            return Err(pyo3::exceptions::PyIndexError::new_err("matrix index out of range"));
        }
        Ok(Expr(self.0.get(i, j).clone()))
    }

    fn rows(&self) -> Vec<Vec<Expr>> {
        let n = self.0.dim();
        (0..n).map(|i| (0..n).map(|j| Expr(self.0.get(i, j).clone())).collect()).collect()
    }

    fn __matmul__(&self, o: &Matrix) -> PyResult<Matrix> {
        if o.0.dim() != self.0.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(Matrix(self.0.mul(&o.0)))
    }

    fn trace(&self) -> Expr {
        Expr(self.0.trace())
    }

    fn determinant(&self) -> Expr {
        Expr(self.0.determinant())
    }

    /// `[E_1, ..., E_n]` with `det(y + M) = y^n + E_1 y^{n-1} + ... + E_n`.
    fn char_poly(&self) -> Vec<Expr> {
        self.0.char_poly().into_iter().map(Expr).collect()
    }

    fn __str__(&self) -> String {
        self.rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(Expr::__str__).collect::<Vec<_>>().join(", ")))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Outcome of one verification instance.
#[pyclass(name = "Report", frozen, get_all)]
struct Report {
    suite: String,
    params: Vec<(String, String)>,
    passed: bool,
    counterexample: Option<String>,
    reproducer: String,
}

impl From<VerifyReport> for Report {
    fn from(r: VerifyReport) -> Report {
        Report {
            reproducer: r.reproducer(),
            suite: r.suite,
            params: r.params,
            passed: r.passed,
            counterexample: r.counterexample,
        }
    }
}

#[pymethods]
impl Report {
    fn __bool__(&self) -> bool {
        self.passed
    }

    fn __repr__(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("Report({} {}[{}])", if self.passed { "PASS" } else { "FAIL" }, self.suite, params.join(","))
    }
}

/// A root system of type A (GL_n or SL_n), B, C or D.
#[pyclass(name = "RootSystem", frozen)]
struct RootSystem(CoreRootSystem);

#[pymethods]
impl RootSystem {
    #[new]
    #[pyo3(signature = (family, rank, special_linear = false))]
    fn new(family: &str, rank: usize, special_linear: bool) -> PyResult<RootSystem> {
        let f = self::family(family)?;
        let rs = match (f, special_linear) {
            (Family::A, true) => CoreRootSystem::special_linear(rank),
            (_, true) => return Err(PyValueError::new_err("special_linear applies to family A only")),
            (f, false) => CoreRootSystem::new(f, rank),
        };
        rs.map(RootSystem).map_err(py_err)
    }

    #[getter]
    fn family(&self) -> String {
        self.0.family.to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank
    }

    #[getter]
    fn special_linear(&self) -> bool {
        self.0.special_linear
    }

    /// Coordinates of a weight spec (`-e1`, `rho`, `fund:i`, `a,b,...`) as strings.
    fn weight(&self, spec: &str) -> PyResult<Vec<String>> {
        Ok(self.0.parse_weight(spec).map_err(py_err)?.0.iter().map(|c| c.to_string()).collect())
    }

    fn positive_roots(&self) -> Vec<Vec<String>> {
        self.0.positive_roots.iter().map(|r| r.root.0.iter().map(|c| c.to_string()).collect()).collect()
    }

    fn weyl_group(&self) -> PyResult<WeylGroup> {
        CoreWeylGroup::new(&self.0, DEFAULT_MAX_WEYL).map(WeylGroup).map_err(py_err)
    }

    fn presentation(&self, py: Python<'_>) -> PyResult<PyObject> {
        let p = classical::emit_presentation(&self.0).map_err(py_err)?;
        let d = PyDict::new_bound(py);
        d.set_item("family", self.0.family.to_string())?;
        d.set_item("rank", self.0.rank)?;
        d.set_item("generators", p.generators.clone())?;
        d.set_item("chi_definitions", p.chi_defs.iter().map(|e| Expr(e.clone()).into_py(py)).collect::<Vec<_>>())?;
        d.set_item("relation_labels", p.relations.iter().map(|r| r.label.clone()).collect::<Vec<_>>())?;
        d.set_item("relations", p.relations.iter().map(|r| Expr(r.expr.clone()).into_py(py)).collect::<Vec<_>>())?;
        d.set_item("coefficient_ring", p.coefficient_ring.clone())?;
        Ok(d.into())
    }

    fn m_chi(&self) -> PyResult<Matrix> {
        classical::m_chi(self.0.family, self.0.dim()).map(Matrix).map_err(py_err)
    }

    fn toda_limit(&self) -> PyResult<Matrix> {
        toda::classical_toda_limit(self.0.family, self.0.dim()).map(Matrix).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        if self.0.special_linear {
            format!("RootSystem(SL_{})", self.0.rank)
        } else {
            format!("RootSystem({}, {})", self.0.family, self.0.rank)
        }
    }
}

/// The Weyl group of a root system, with verification entry points.
#[pyclass(name = "WeylGroup", frozen)]
struct WeylGroup(CoreWeylGroup);

impl WeylGroup {
    fn lambda(&self, spec: &str) -> PyResult<springer_qh::rootdata::Weight> {
        self.0.rs.parse_weight(spec).map_err(py_err)
    }

    fn element(&self, word: &str) -> PyResult<springer_qh::weyl::WeylElem> {
        let letters: Vec<usize> = if word == "id" || word.is_empty() {
            Vec::new()
        } else {
            word.split('s')
                .skip(1)
                .map(|p| p.parse().map_err(|_| PyValueError::new_err(format!("bad Weyl word {word:?}"))))
                .collect::<PyResult<_>>()?
        };
        self.0.from_word(&letters).map_err(py_err)
    }
}

#[pymethods]
impl WeylGroup {
    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Elements as reduced words (`"id"`, `"s1"`, `"s2s1"`, ...).
    fn words(&self) -> Vec<String> {
        self.0.elements().iter().map(|w| self.0.word_string(w)).collect()
    }

    #[pyo3(signature = (weight = "-e1"))]
    fn theta_skeleton(&self, weight: &str) -> PyResult<Matrix> {
        let lambda = self.lambda(weight)?;
        let theta = qh_stable::theta_matrix(&self.0, &lambda).map_err(py_err)?;
        theta.scalar_skeleton().map(Matrix).map_err(py_err)
    }

    fn presentation_relation(&self, weight: &str, k: u32) -> PyResult<Expr> {
        qh_stable::presentation_relation(&self.0, &self.lambda(weight)?, k).map(Expr).map_err(py_err)
    }

    fn verify_trace_relation(&self, weight: &str, k: u32) -> PyResult<Report> {
        Ok(qh_stable::verify_trace_relation(&self.0, &self.lambda(weight)?, k).map_err(py_err)?.into())
    }

    fn verify_eigencolumn(&self, weight: &str) -> PyResult<Report> {
        Ok(qh_stable::verify_eigencolumn(&self.0, &self.lambda(weight)?).map_err(py_err)?.into())
    }

    fn verify_automorphism(&self, u: &str, weight: &str, w: &str) -> PyResult<Report> {
        let (u, w) = (self.element(u)?, self.element(w)?);
        Ok(qh_stable::verify_automorphism(&self.0, &u, &self.lambda(weight)?, &w).map_err(py_err)?.into())
    }

    fn verify_cm_corollary(&self, weight: &str, k: u32) -> PyResult<Report> {
        Ok(cm::verify_cm_corollary(&self.0, &self.lambda(weight)?, k).map_err(py_err)?.into())
    }

    fn verify_hamiltonian(&self, weight: &str) -> PyResult<Report> {
        Ok(cm::verify_hamiltonian(&self.0, &self.lambda(weight)?).map_err(py_err)?.into())
    }
}

#[pyfunction]
fn a_chi(n: usize) -> PyResult<Matrix> {
    classical::a_chi(n).map(Matrix).map_err(py_err)
}

#[pyfunction]
fn matching_formula(n: usize, k: usize) -> PyResult<Expr> {
    classical::matching_formula_e(n, k).map(Expr).map_err(py_err)
}

#[pyfunction]
fn verify_matching_theorem(n: usize) -> PyResult<Report> {
    Ok(classical::verify_matching_theorem(n).map_err(py_err)?.into())
}

#[pyfunction]
fn cyclic_sum(n: usize) -> PyResult<Expr> {
    classical::cyclic_sum(n).map(Expr).map_err(py_err)
}

#[pyfunction]
fn verify_toda_limit(family: &str, n: usize) -> PyResult<Report> {
    let r = match self::family(family)? {
        Family::A => toda::verify_givental_kim(n),
        Family::B => toda::verify_type_b_limit(n),
        Family::C => toda::verify_type_c_extension(n),
        Family::D => toda::verify_type_d_limit(n),
    };
    Ok(r.map_err(py_err)?.into())
}

#[pymodule]
fn springer_qh_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Expr>()?;
    m.add_class::<Matrix>()?;
    m.add_class::<Report>()?;
    m.add_class::<RootSystem>()?;
    m.add_class::<WeylGroup>()?;
    m.add_function(wrap_pyfunction!(a_chi, m)?)?;
    m.add_function(wrap_pyfunction!(matching_formula, m)?)?;
    m.add_function(wrap_pyfunction!(verify_matching_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_sum, m)?)?;
    m.add_function(wrap_pyfunction!(verify_toda_limit, m)?)?;
    Ok(())
}
