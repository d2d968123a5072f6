//! Python module `kgr`: groups, graded K-pairs, and the main computations
//! of `kgr-core`. Graphs, problems and tables are passed as JSON strings in
//! the same formats the command-line tool reads.

use kgr_core::cocycle::{
    find_coboundary, permute_kappa, product_sign_identity, verify_table, Bits, CocycleTable,
    Permutation,
};
use kgr_core::fgab::FgAbGroup;
use kgr_core::gradedk::{self, GradedKPair, PvFile};
use kgr_core::pgraph::{
    decompose as decompose_table, validate_skeleton, ActionFile, FiniteCategoryTable, GraphFile,
    KGraphFile,
};
use kgr_core::zmat::{self, ZMatrix};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn core_error(e: kgr_core::Error) -> PyErr {
    match e {
        kgr_core::Error::HypothesisViolated(_) => PyRuntimeError::new_err(e.to_string()),
        _ => value_error(e),
    }
}

/// A finitely generated abelian group in invariant-factor form.
#[pyclass(name = "Group", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGroup(FgAbGroup);

#[pymethods]
impl PyGroup {
    /// Parse "0", "Z", "Z^2 (+) Z/2", ...
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyGroup).map_err(value_error)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.free_rank()
    }

    #[getter]
    fn torsion(&self) -> Vec<BigInt> {
        self.0.torsion().to_vec()
    }

    /// Order of the group, or None when it is infinite.
    fn order(&self) -> Option<BigInt> {
        self.0.order()
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.0.to_string())
    }
}

/// The pair (K0^gr, K1^gr).
#[pyclass(name = "GradedK", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGradedK(GradedKPair);

#[pymethods]
impl PyGradedK {
    #[new]
    fn new(k0: &PyGroup, k1: &PyGroup) -> Self {
        PyGradedK(GradedKPair::new(k0.0.clone(), k1.0.clone()))
    }

    #[getter]
    fn k0(&self) -> PyGroup {
        PyGroup(self.0.k0.clone())
    }

    #[getter]
    fn k1(&self) -> PyGroup {
        PyGroup(self.0.k1.clone())
    }

    /// Tensor with Cl_1: the two groups swap.
    fn shift(&self) -> Self {
        PyGradedK(gradedk::shift_cl1(&self.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GradedK({:?}, {:?})", self.0.k0.to_string(), self.0.k1.to_string())
    }
}

fn read_graph(json: &str) -> PyResult<(kgr_core::pgraph::OneGraph, kgr_core::pgraph::DeltaLabeling)> {
    let file: GraphFile = serde_json::from_str(json).map_err(value_error)?;
    file.into_parts().map_err(core_error)
}

/// K^gr of a graph given as JSON with per-edge "delta" labels.
#[pyfunction]
#[pyo3(signature = (graph_json, force = false))]
fn kgr_graph(graph_json: &str, force: bool) -> PyResult<PyGradedK> {
    let (g, d) = read_graph(graph_json)?;
    gradedk::kgr_graph(&g, &d, force)
        .map(PyGradedK)
        .map_err(core_error)
}

/// Ordinary K-theory of the graph algebra.
#[pyfunction]
#[pyo3(signature = (graph_json, force = false))]
fn ungraded_k(graph_json: &str, force: bool) -> PyResult<PyGradedK> {
    let (g, _) = read_graph(graph_json)?;
    gradedk::ungraded_k(&g, force)
        .map(PyGradedK)
        .map_err(core_error)
}

/// Bouquet with `odd` odd loops and `even` even loops.
#[pyfunction]
fn cuntz(odd: u64, even: u64) -> PyResult<PyGradedK> {
    gradedk::cuntz_kgr(odd, even)
        .map(PyGradedK)
        .map_err(core_error)
}

#[pyfunction]
fn clifford(n: u64) -> PyGradedK {
    PyGradedK(gradedk::clifford_kgr(n))
}

/// Graded Pimsner-Voiculescu problem as JSON. Returns the pair when both
/// extensions are forced to split, otherwise None, plus a text rendering.
#[pyfunction]
fn pv_solve(problem_json: &str) -> PyResult<(Option<PyGradedK>, String)> {
    let file: PvFile = serde_json::from_str(problem_json).map_err(value_error)?;
    let p = file.into_problem().map_err(core_error)?;
    let sol = gradedk::pv_solve(&p).map_err(core_error)?;
    Ok((sol.resolved().map(PyGradedK), sol.to_string()))
}

/// Vertex potential implementing the grading, as {vertex: 0|1}, or None.
#[pyfunction]
fn inner_potential(graph_json: &str) -> PyResult<Option<Vec<(String, u8)>>> {
    let (g, d) = read_graph(graph_json)?;
    let eps = gradedk::inner_potential(&g, &d).map_err(core_error)?;
    Ok(eps.map(|e| g.vertices().iter().cloned().zip(e).collect()))
}

fn to_matrix(rows: Vec<Vec<BigInt>>, cols: Option<usize>) -> PyResult<ZMatrix> {
    let r = rows.len();
    let c = cols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
    if rows.iter().any(|x| x.len() != c) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    ZMatrix::new(r, c, rows.into_iter().flatten().collect()).map_err(core_error)
}

type Rows = Vec<Vec<BigInt>>;

/// Smith normal form: returns (U, D, V) with U M V = D.
#[pyfunction]
#[pyo3(signature = (rows, cols = None))]
fn snf(rows: Rows, cols: Option<usize>) -> PyResult<(Rows, Rows, Rows)> {
    let m = to_matrix(rows, cols)?;
    let s = zmat::snf(&m);
    Ok((s.u.to_rows(), s.d.to_rows(), s.v.to_rows()))
}

/// Checks the 2-cocycle identity for kappa on Z_2^l.
#[pyfunction]
fn kappa_is_cocycle(l: usize) -> PyResult<bool> {
    if l > 6 {
        return Err(PyValueError::new_err("l is at most 6"));
    }
    Ok(verify_table(&CocycleTable::kappa(l)).holds())
}

/// Coboundary relating kappa and kappa permuted by `perm` (one-based), as
/// values on Z_2^l indexed by bit mask, or None.
#[pyfunction]
fn kappa_coboundary(perm: Vec<usize>) -> PyResult<Option<Vec<u8>>> {
    let s = Permutation::from_one_based(&perm).map_err(core_error)?;
    let l = s.l();
    let k = CocycleTable::kappa(l);
    let ks = permute_kappa(&k, &s).map_err(core_error)?;
    let b = find_coboundary(&k, &ks, l).map_err(core_error)?;
    Ok(b.map(|b| Bits::all(l).map(|m| b.value(&m)).collect()))
}

/// Product sign factorisation for (N^k x Z_2^a) x (N^l x Z_2^b).
#[pyfunction]
fn product_sign(k: usize, a: usize, l: usize, b: usize) -> PyResult<bool> {
    if k + a + l + b > 12 {
        return Err(PyValueError::new_err("total dimension is at most 12"));
    }
    Ok(product_sign_identity((k, a), (l, b)))
}

/// Violations found in a k-graph file; empty when it is valid.
#[pyfunction]
fn validate(kgraph_json: &str) -> PyResult<Vec<String>> {
    let file: KGraphFile = serde_json::from_str(kgraph_json).map_err(value_error)?;
    let s = file.into_skeleton().map_err(core_error)?;
    Ok(validate_skeleton(&s).violations)
}

/// Splits a finite category table into {"kgraph": ..., "action": ...}.
#[pyfunction]
fn decompose(table_json: &str) -> PyResult<String> {
    let t: FiniteCategoryTable = serde_json::from_str(table_json).map_err(value_error)?;
    let d = decompose_table(&t).map_err(core_error)?;
    let p = &d.presentation;
    let out = serde_json::json!({
        "kgraph": KGraphFile::from_skeleton(p.skeleton()),
        "action": ActionFile::from_action(p.skeleton(), p.action()),
    });
    Ok(out.to_string())
}

/// Runs the command-line tool in-process: returns (exit code, stdout, stderr).
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let o = kgr_core::cli::run(std::iter::once("kgr".to_string()).chain(args));
    (o.code, o.stdout, o.stderr)
}

#[pymodule]
fn kgr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyGradedK>()?;
    m.add_function(wrap_pyfunction!(kgr_graph, m)?)?;
    m.add_function(wrap_pyfunction!(ungraded_k, m)?)?;
    m.add_function(wrap_pyfunction!(cuntz, m)?)?;
    m.add_function(wrap_pyfunction!(clifford, m)?)?;
    m.add_function(wrap_pyfunction!(pv_solve, m)?)?;
    m.add_function(wrap_pyfunction!(inner_potential, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_is_cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_coboundary, m)?)?;
    m.add_function(wrap_pyfunction!(product_sign, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
