//! Python bindings for `morsekit`.

use std::collections::{BTreeMap, BTreeSet};

use morsekit::collapse;
use morsekit::complex::{self, PointedComplex, Simplex, VertexId};
use morsekit::graph::{self, Edge, EdgeOrder, OrientedDeg3Graph};
use morsekit::homology::betti_gf2;
use morsekit::io;
use morsekit::morse::{self, GradientPair};
use morsekit::reductions;
use morsekit::solvers::{self, SolverConfig};
use num_rational::Ratio;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solver_err(e: solvers::SolverError) -> PyErr {
    match e {
        solvers::SolverError::BudgetExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        other => err(other),
    }
}

fn config(nodes: Option<u64>) -> SolverConfig {
    nodes.map(SolverConfig::with_nodes).unwrap_or_default()
}

fn simplex(tokens: Vec<String>) -> PyResult<Simplex> {
    Simplex::from_tokens(tokens).map_err(err)
}

fn tokens(s: &Simplex) -> Vec<String> {
    s.vertices().iter().map(|v| v.as_str().to_string()).collect()
}

/// A finite abstract simplicial complex.
#[pyclass(name = "SimplicialComplex", frozen, from_py_object)]
#[derive(Clone)]
struct PyComplex(complex::SimplicialComplex);

#[pymethods]
impl PyComplex {
    /// Closure of the given faces, each a list of vertex tokens.
    #[new]
    fn new(faces: Vec<Vec<String>>) -> PyResult<Self> {
        let faces = faces.into_iter().map(simplex).collect::<PyResult<Vec<_>>>()?;
        Ok(PyComplex(complex::SimplicialComplex::from_simplices(faces)))
    }

    #[staticmethod]
    fn from_smax(text: &str) -> PyResult<Self> {
        io::read_smax(text).map(PyComplex).map_err(err)
    }

    fn to_smax(&self) -> String {
        io::write_smax(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("SimplicialComplex(f_vector={:?})", self.0.f_vector())
    }

    #[getter]
    fn dim(&self) -> isize {
        self.0.dim()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.0.f_vector()
    }

    fn simplices(&self) -> Vec<Vec<String>> {
        self.0.simplices().iter().map(tokens).collect()
    }

    fn maximal(&self) -> Vec<Vec<String>> {
        self.0.maximal_simplices().iter().map(tokens).collect()
    }

    fn euler_characteristic(&self) -> i64 {
        self.0.euler_characteristic()
    }

    fn betti(&self) -> Vec<usize> {
        betti_gf2(&self.0)
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    /// Free faces as `(face, coface)` pairs.
    fn free_faces(&self) -> Vec<(Vec<String>, Vec<String>)> {
        complex::free_faces(&self.0).iter().map(|(f, c)| (tokens(f), tokens(c))).collect()
    }

    /// Pastes vertices together along `labels` (vertex -> label).
    fn quotient(&self, labels: BTreeMap<String, String>) -> PyResult<Self> {
        let f = labels
            .into_iter()
            .map(|(v, l)| Ok((VertexId::new(v).map_err(err)?, VertexId::new(l).map_err(err)?)))
            .collect::<PyResult<complex::Labelling>>()?;
        complex::quotient(&self.0, &f).map(PyComplex).map_err(err)
    }
}

/// An acyclic matching on the Hasse diagram of a complex.
#[pyclass(name = "DiscreteGradient", frozen, from_py_object)]
#[derive(Clone)]
struct PyGradient(morse::DiscreteGradient);

#[pymethods]
impl PyGradient {
    /// Validates `pairs` of `(face, coface)` against `complex`.
    #[new]
    fn new(complex: &PyComplex, pairs: Vec<(Vec<String>, Vec<String>)>) -> PyResult<Self> {
        let pairs = pairs
            .into_iter()
            .map(|(f, c)| Ok(GradientPair::new(simplex(f)?, simplex(c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        morse::validate(&complex.0, &pairs).map(PyGradient).map_err(err)
    }

    #[staticmethod]
    fn from_grad(complex: &PyComplex, text: &str) -> PyResult<Self> {
        io::read_grad(&complex.0, text).map(PyGradient).map_err(err)
    }

    fn to_grad(&self, complex: &PyComplex) -> String {
        io::write_grad(&complex.0, &self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn pairs(&self) -> Vec<(Vec<String>, Vec<String>)> {
        self.0.pairs().map(|p| (tokens(&p.face), tokens(&p.coface))).collect()
    }

    fn critical(&self, complex: &PyComplex) -> Vec<Vec<String>> {
        self.0.critical(&complex.0).iter().map(tokens).collect()
    }

    /// Critical simplices per dimension.
    fn profile(&self, complex: &PyComplex) -> Vec<usize> {
        morse::critical_profile(&complex.0, &self.0).per_dim
    }

    fn is_valid_on(&self, complex: &PyComplex) -> bool {
        self.0.validate_on(&complex.0).is_ok()
    }
}

type EdgeList = Vec<(String, String)>;

fn digraph(edges: &EdgeList) -> PyResult<graph::DirectedGraph> {
    graph::DirectedGraph::from_edges(edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))).map_err(err)
}

fn oriented(edges: &EdgeList) -> PyResult<OrientedDeg3Graph> {
    OrientedDeg3Graph::new(digraph(edges)?).map_err(err)
}

fn edge_list(g: &graph::DirectedGraph) -> EdgeList {
    g.edges().iter().map(|e| (e.source.to_string(), e.target.to_string())).collect()
}

fn edge_set(edges: &EdgeList) -> PyResult<BTreeSet<Edge>> {
    edges.iter().map(|(a, b)| Edge::from_tokens(a, b).map_err(err)).collect()
}

fn order_for(g: &OrientedDeg3Graph, order: &str, seed: u64) -> PyResult<EdgeOrder> {
    match order {
        "lex" => Ok(EdgeOrder::lexicographic(g)),
        "rev" => Ok(EdgeOrder::reverse_lexicographic(g)),
        "random" => Ok(EdgeOrder::shuffled(g, &mut ChaCha8Rng::seed_from_u64(seed))),
        other => Err(err(format!("unknown order '{other}', expected lex, rev or random"))),
    }
}

/// The modified dunce hat and its gradient.
#[pyfunction]
fn modified_dunce_hat() -> (PyComplex, PyGradient) {
    let g = reductions::modified_dunce_hat();
    let v = reductions::dunce_gradient(&g);
    (PyComplex(g.complex().clone()), PyGradient(v))
}

#[pyfunction]
fn classic_dunce_hat() -> PyComplex {
    PyComplex(reductions::classic_dunce_hat())
}

/// `K(G)`, or `K(G, H)` when `subgraph` is given. Edges are `(source, target)` pairs.
#[pyfunction]
#[pyo3(signature = (edges, subgraph=None, order="lex", seed=0))]
fn build_k(edges: EdgeList, subgraph: Option<EdgeList>, order: &str, seed: u64) -> PyResult<PyComplex> {
    let g = oriented(&edges)?;
    let order = order_for(&g, order, seed)?;
    let h = match subgraph {
        Some(h) => g.subgraph(&edge_set(&h)?).map_err(err)?,
        None => g.graph().clone(),
    };
    reductions::build_k(&g, &h, &order).map(|(k, _)| PyComplex(k)).map_err(err)
}

#[pyfunction]
fn build_k_tilde(edges: EdgeList) -> PyResult<PyComplex> {
    reductions::build_k_tilde(&oriented(&edges)?).map(|(k, _)| PyComplex(k)).map_err(err)
}

#[pyfunction]
fn is_erasable(complex: &PyComplex) -> PyResult<bool> {
    collapse::is_erasable(&complex.0).map_err(err)
}

/// What is left after erasing as much as possible.
#[pyfunction]
fn erase(complex: &PyComplex) -> PyResult<PyComplex> {
    collapse::erase(&complex.0).map(|t| PyComplex(t.residue)).map_err(err)
}

/// Collapses along a gradient; returns the residue and the number of pairs
/// that never became free.
#[pyfunction]
fn collapse_by_gradient(complex: &PyComplex, gradient: &PyGradient) -> PyResult<(PyComplex, usize)> {
    let t = collapse::collapse_by_gradient(&complex.0, &gradient.0).map_err(err)?;
    Ok((PyComplex(t.residue), t.leftover.len()))
}

#[pyfunction]
#[pyo3(signature = (complex, nodes=None))]
fn is_collapsible(complex: &PyComplex, nodes: Option<u64>) -> PyResult<bool> {
    solvers::is_collapsible_exact(&complex.0, &config(nodes))
        .map(|c| c.collapsible)
        .map_err(solver_err)
}

#[pyfunction]
#[pyo3(signature = (complex, nodes=None))]
fn er_exact(complex: &PyComplex, nodes: Option<u64>) -> PyResult<usize> {
    solvers::er_exact(&complex.0, &config(nodes)).map(|(er, _)| er).map_err(solver_err)
}

/// A gradient with the fewest critical simplices, and that number.
#[pyfunction]
#[pyo3(signature = (complex, nodes=None))]
fn optimal_matching(complex: &PyComplex, nodes: Option<u64>) -> PyResult<(PyGradient, usize)> {
    let m = solvers::optimal_matching_with(&complex.0, &config(nodes)).map_err(solver_err)?;
    Ok((PyGradient(m.gradient), m.critical))
}

#[pyfunction]
fn greedy_gradient(complex: &PyComplex) -> PyGradient {
    PyGradient(solvers::greedy_gradient(&complex.0))
}

#[pyfunction]
#[pyo3(signature = (complex, seed=0))]
fn random_gradient(complex: &PyComplex, seed: u64) -> PyGradient {
    PyGradient(solvers::random_gradient(&complex.0, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// A minimum feedback arc set.
#[pyfunction]
fn min_fas(edges: EdgeList) -> PyResult<EdgeList> {
    let g = digraph(&edges)?;
    let fas = solvers::min_fas_exact(&g, &SolverConfig::default()).map_err(solver_err)?;
    Ok(fas.iter().map(|e| (e.source.to_string(), e.target.to_string())).collect())
}

#[pyfunction]
fn mas_half_approx(edges: EdgeList) -> PyResult<EdgeList> {
    Ok(edge_list(&solvers::mas_half_approx(&digraph(&edges)?)))
}

/// `f(G)`: the oriented graph and the number of antiparallel pairs removed.
#[pyfunction]
fn mas_to_omas_f(edges: EdgeList) -> PyResult<(EdgeList, usize)> {
    let o = reductions::mas_to_omas_f(&digraph(&edges)?);
    Ok((edge_list(&o.graph), o.antiparallel_pairs))
}

#[pyfunction]
fn mas_to_omas_g(edges: EdgeList, acyclic: EdgeList) -> PyResult<EdgeList> {
    let g = digraph(&edges)?;
    let a = reductions::mas_to_omas_g(&g, &digraph(&acyclic)?).map_err(err)?;
    Ok(edge_list(&a))
}

/// The optimal gradient on `K(G)` built from a feedback arc set (default: a
/// minimum one), together with `K(G)`.
#[pyfunction]
#[pyo3(signature = (edges, fas=None))]
fn witness_gradient(edges: EdgeList, fas: Option<EdgeList>) -> PyResult<(PyComplex, PyGradient)> {
    let g = oriented(&edges)?;
    let (k, atlas) = reductions::build_k_full(&g, &EdgeOrder::lexicographic(&g)).map_err(err)?;
    let fas = match fas {
        Some(f) => edge_set(&f)?,
        None => solvers::min_fas_exact(&g, &SolverConfig::default()).map_err(solver_err)?,
    };
    let p = k.vertices().next().cloned().ok_or_else(|| err("empty graph"))?;
    let v = reductions::witness_gradient(&g, &k, &atlas, &fas, &p).map_err(err)?;
    Ok((PyComplex(k), PyGradient(v)))
}

/// The acyclic subgraph of `G` read off a gradient on `K(G)` (lexicographic order).
#[pyfunction]
fn solution_map(edges: EdgeList, gradient: &PyGradient) -> PyResult<EdgeList> {
    let g = oriented(&edges)?;
    let (k, atlas) = reductions::build_k_full(&g, &EdgeOrder::lexicographic(&g)).map_err(err)?;
    reductions::solution_map_a(&g, &k, &atlas, &gradient.0)
        .map(|a| edge_list(&a))
        .map_err(err)
}

/// L-reduction audit as a dict; uses the witness gradient unless one is given.
#[pyfunction]
#[pyo3(signature = (edges, gradient=None))]
fn audit(edges: EdgeList, gradient: Option<PyGradient>) -> PyResult<BTreeMap<String, String>> {
    let g = oriented(&edges)?;
    let (k, atlas) = reductions::build_k_full(&g, &EdgeOrder::lexicographic(&g)).map_err(err)?;
    let cfg = SolverConfig::default();
    let v = match gradient {
        Some(v) => v.0,
        None => {
            let fas = solvers::min_fas_exact(&g, &cfg).map_err(solver_err)?;
            let p = k.vertices().next().cloned().ok_or_else(|| err("empty graph"))?;
            reductions::witness_gradient(&g, &k, &atlas, &fas, &p).map_err(err)?
        }
    };
    let report = reductions::l_reduction_audit(&g, &k, &atlas, &v, &cfg).map_err(err)?;
    io::read_audit(&report.to_key_value()).map_err(err)
}

#[pyfunction]
fn amplify(complex: &PyComplex, c: u32) -> PyResult<PyComplex> {
    let pointed = PointedComplex::at_least_vertex(complex.0.clone()).ok_or_else(|| err("empty complex"))?;
    reductions::amplify(&pointed, c)
        .map(|p| PyComplex(p.into_complex()))
        .map_err(err)
}

/// Runs the collapsibility test through the exact optimum on the amplification.
#[pyfunction]
fn algorithm_b(complex: &PyComplex, c: u32) -> PyResult<bool> {
    let solver = |k: &complex::SimplicialComplex| solvers::optimal_matching(k).map(|m| m.gradient);
    solvers::algorithm_b(&complex.0, c, solver, &SolverConfig::default())
        .map(|o| o.collapsible)
        .map_err(solver_err)
}

/// `1 - delta/(mu nu)` as `(numerator, denominator)`.
#[pyfunction]
fn hardness_factor(numerator: i64, denominator: i64) -> PyResult<(i64, i64)> {
    if denominator == 0 {
        return Err(err("zero denominator"));
    }
    let r = reductions::hardness_factor(Ratio::new(numerator, denominator));
    Ok((*r.numer(), *r.denom()))
}

#[pymodule]
fn pymorsekit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyGradient>()?;
    m.add_function(wrap_pyfunction!(modified_dunce_hat, m)?)?;
    m.add_function(wrap_pyfunction!(classic_dunce_hat, m)?)?;
    m.add_function(wrap_pyfunction!(build_k, m)?)?;
    m.add_function(wrap_pyfunction!(build_k_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(is_erasable, m)?)?;
    m.add_function(wrap_pyfunction!(erase, m)?)?;
    m.add_function(wrap_pyfunction!(collapse_by_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(is_collapsible, m)?)?;
    m.add_function(wrap_pyfunction!(er_exact, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_matching, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(random_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(min_fas, m)?)?;
    m.add_function(wrap_pyfunction!(mas_half_approx, m)?)?;
    m.add_function(wrap_pyfunction!(mas_to_omas_f, m)?)?;
    m.add_function(wrap_pyfunction!(mas_to_omas_g, m)?)?;
    m.add_function(wrap_pyfunction!(witness_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(solution_map, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(amplify, m)?)?;
    m.add_function(wrap_pyfunction!(algorithm_b, m)?)?;
    m.add_function(wrap_pyfunction!(hardness_factor, m)?)?;
    m.add("MU", reductions::MU)?;
    Ok(())
}
