//! Dual graph data model: weighted trees of exceptional curves, the
//! intersection form they carry, and input validation.

use std::collections::HashMap;
use std::ops::Deref;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{self, Cycle, CycleError};

/// An exceptional curve: a label plus its self-intersection number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    #[serde(rename = "self")]
    pub self_int: i64,
}

/// Structural errors rejected when assembling a [`DualGraph`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex ids must be nonempty")]
    EmptyId,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("edge from {0:?} to itself")]
    SelfEdge(String),
    #[error("duplicate edge between {0:?} and {1:?}")]
    DuplicateEdge(String, String),
}

/// Errors from reading dual-graph JSON.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {id:?} has self-intersection {found}; expected an integer <= -2")]
    WeightTooLarge { id: String, found: i64 },
}

#[derive(Serialize, Deserialize)]
struct GraphDto {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String)>,
}

/// The dual graph of an exceptional divisor.
///
/// Vertices are curves labelled with self-intersection numbers; an edge
/// records a transversal intersection (so off-diagonal intersection
/// numbers are 0 or 1). Construction enforces simplicity only; the tree,
/// weight, definiteness and rationality conditions are checked by
/// [`DualGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl DualGraph {
    pub fn new(
        vertices: Vec<(String, i64)>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (pos, (id, _)) in vertices.iter().enumerate() {
            if id.is_empty() {
                return Err(GraphError::EmptyId);
            }
            if index.insert(id.clone(), pos).is_some() {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut edge_list = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let i = *index.get(a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            if i == j {
                return Err(GraphError::SelfEdge(a.clone()));
            }
            let key = (i.min(j), i.max(j));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(a.clone(), b.clone()));
            }
            edge_list.push(key);
        }
        edge_list.sort_unstable();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(i, j) in &edge_list {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let vertices = vertices
            .into_iter()
            .map(|(id, self_int)| Vertex { id, self_int })
            .collect();
        Ok(DualGraph { vertices, edges: edge_list, adjacency, index })
    }

    /// The empty graph, modelling the regular ring.
    pub fn empty() -> Self {
        DualGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|v| v.id.as_str())
    }

    pub fn id(&self, i: usize) -> &str {
        &self.vertices[i].id
    }

    pub fn self_int(&self, i: usize) -> i64 {
        self.vertices[i].self_int
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Edges as index pairs (i, j) with i < j, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The intersection number E_i . E_j.
    pub fn intersection(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.self_int(i)
        } else if self.adjacency[i].binary_search(&j).is_ok() {
            1
        } else {
            0
        }
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let n = self.len();
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            entries[i * n + i] = self.self_int(i);
        }
        for &(i, j) in &self.edges {
            entries[i * n + j] = 1;
            entries[j * n + i] = 1;
        }
        IntersectionMatrix { n, entries }
    }

    /// The degree Z . E_i of a cycle against one curve.
    pub fn degree_against(&self, z: &Cycle, i: usize) -> Result<BigRational, CycleError> {
        if z.len() != self.len() {
            return Err(CycleError::SupportMismatch { expected: self.len(), found: z.len() });
        }
        let mut row = z.coeff(i) * BigRational::from_integer(BigInt::from(self.self_int(i)));
        for &j in self.neighbors(i) {
            row += z.coeff(j);
        }
        Ok(row)
    }

    /// Bilinear pairing Z . W under the intersection form.
    pub fn pair(&self, z: &Cycle, w: &Cycle) -> Result<BigRational, CycleError> {
        if z.len() != self.len() {
            return Err(CycleError::SupportMismatch { expected: self.len(), found: z.len() });
        }
        let mut total = BigRational::zero();
        for i in 0..self.len() {
            total += z.coeff(i) * self.degree_against(w, i)?;
        }
        Ok(total)
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected and acyclic. The empty graph counts as a tree.
    pub fn is_tree(&self) -> bool {
        self.is_empty()
            || (self.components().len() == 1 && self.edges.len() == self.len() - 1)
    }

    pub fn from_json(s: &str) -> Result<Self, ParseError> {
        let dto: GraphDto = serde_json::from_str(s)?;
        for v in &dto.vertices {
            if v.self_int > -2 {
                return Err(ParseError::WeightTooLarge { id: v.id.clone(), found: v.self_int });
            }
        }
        let vertices = dto.vertices.into_iter().map(|v| (v.id, v.self_int)).collect();
        Ok(DualGraph::new(vertices, dto.edges)?)
    }

    pub fn to_json(&self) -> String {
        let dto = GraphDto {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j)| (self.id(i).to_owned(), self.id(j).to_owned()))
                .collect(),
        };
        serde_json::to_string(&dto).expect("graph serialization cannot fail")
    }

    /// Run every validation check and report each outcome.
    pub fn validate(&self) -> ValidationReport {
        self.run_checks().0
    }

    /// Validate and, on success, wrap the graph with its fundamental and
    /// canonical cycles precomputed. Operations downstream of validation
    /// take a [`ValidatedGraph`], so they can never see a bad input.
    pub fn into_validated(self) -> Result<ValidatedGraph, Box<ValidationReport>> {
        let (report, z_f) = self.run_checks();
        if !report.passed() {
            return Err(Box::new(report));
        }
        let z_f = z_f.unwrap_or_else(|| Cycle::zero(self.len()));
        let z_k = cycles::solve_canonical(&self);
        Ok(ValidatedGraph { graph: self, z_f, z_k })
    }

    fn run_checks(&self) -> (ValidationReport, Option<Cycle>) {
        let mut checks = Vec::with_capacity(5);

        // Simplicity is enforced at construction; re-state it for the record.
        checks.push(Check::pass("simplicity", "no loops or repeated edges"));

        let tree_ok = self.is_tree();
        checks.push(if self.is_empty() {
            Check::pass("tree", "empty graph")
        } else if tree_ok {
            Check::pass("tree", "connected and acyclic")
        } else if self.components().len() > 1 {
            Check::fail("tree", "graph is not connected")
        } else {
            Check::fail("tree", format!("{} edges on {} vertices", self.edges.len(), self.len()))
        });

        let bad_weights: Vec<&str> =
            self.vertices.iter().filter(|v| v.self_int > -2).map(|v| v.id.as_str()).collect();
        checks.push(if bad_weights.is_empty() {
            Check::pass("weights", "every self-intersection is <= -2")
        } else {
            Check::fail("weights", format!("self-intersection > -2 at {}", bad_weights.join(", ")))
        });

        let definite = match self.intersection_matrix().negated_leading_minors() {
            MinorScan::AllPositive => {
                checks.push(Check::pass(
                    "negative_definite",
                    "all leading principal minors of the negated matrix are positive",
                ));
                true
            }
            MinorScan::NonPositive { order, value } => {
                checks.push(Check::fail(
                    "negative_definite",
                    format!("leading principal minor of order {order} is {value}"),
                ));
                false
            }
        };

        let mut z_f = None;
        checks.push(if self.is_empty() {
            Check::pass("rationality", "empty graph")
        } else if tree_ok && definite {
            let z = cycles::laufer(self);
            let genus = cycles::arithmetic_genus(self, &z)
                .expect("fundamental cycle is integral");
            let ok = genus.is_zero();
            let detail = format!("arithmetic genus of the fundamental cycle is {genus}");
            z_f = Some(z);
            if ok {
                Check::pass("rationality", detail)
            } else {
                Check::fail("rationality", detail)
            }
        } else {
            Check::fail("rationality", "not evaluated: requires a negative definite tree")
        });

        let verdict =
            if checks.iter().all(|c| c.passed) { Verdict::Pass } else { Verdict::Fail };
        let report = ValidationReport {
            vertices: self.vertex_ids().map(str::to_owned).collect(),
            checks,
            verdict,
        };
        (report, z_f)
    }
}

/// Symmetric integer matrix with E_i . E_i on the diagonal and E_i . E_j
/// off it; derived deterministically from the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    n: usize,
    entries: Vec<i64>,
}

pub(crate) enum MinorScan {
    AllPositive,
    NonPositive { order: usize, value: BigInt },
}

impl IntersectionMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Scan the leading principal minors of the negated matrix with the
    /// fraction-free Bareiss elimination; the pivot after step k is the
    /// (k+1)-st minor. Stops at the first non-positive one.
    pub(crate) fn negated_leading_minors(&self) -> MinorScan {
        let n = self.n;
        let mut a: Vec<BigInt> =
            self.entries.iter().map(|&x| BigInt::from(-x)).collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot = a[k * n + k].clone();
            if !pivot.is_positive() {
                return MinorScan::NonPositive { order: k + 1, value: pivot };
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[i * n + j] * &pivot - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
            }
            prev = pivot;
        }
        MinorScan::AllPositive
    }
}

/// One named validation check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.to_owned(), passed: true, detail: detail.into() }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.to_owned(), passed: false, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of running all validation checks, in order: simplicity, tree,
/// weights, negative definiteness, rationality.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub vertices: Vec<String>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// A dual graph that passed every validation check, carrying its
/// fundamental and canonical cycles. Both cycles are empty vectors for
/// the empty graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedGraph {
    pub(crate) graph: DualGraph,
    pub(crate) z_f: Cycle,
    pub(crate) z_k: Cycle,
}

impl ValidatedGraph {
    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }
}

impl Deref for ValidatedGraph {
    type Target = DualGraph;

    fn deref(&self) -> &DualGraph {
        &self.graph
    }
}

impl AsRef<DualGraph> for ValidatedGraph {
    fn as_ref(&self) -> &DualGraph {
        &self.graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_graphs::{chain, g1, graph, single};
    use num_traits::ToPrimitive;

    fn rational(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn single_minus_two_passes_all_checks() {
        let report = single(-2).validate();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 5);
        assert!(report.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn single_minus_one_fails_weight_check() {
        let report = single(-1).validate();
        assert!(!report.passed());
        for check in &report.checks {
            assert_eq!(check.passed, check.name != "weights", "{}", check.name);
        }
    }

    #[test]
    fn repeated_edge_rejected_at_construction() {
        let err = DualGraph::new(
            vec![("a".into(), -2), ("b".into(), -2)],
            vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge("b".into(), "a".into()));
    }

    #[test]
    fn triangle_fails_tree_check() {
        let g = graph(&[("a", -2), ("b", -2), ("c", -2)], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let report = g.validate();
        assert!(!report.passed());
        let tree = report.checks.iter().find(|c| c.name == "tree").unwrap();
        assert!(!tree.passed);
    }

    #[test]
    fn empty_graph_passes_vacuously() {
        let report = DualGraph::empty().validate();
        assert!(report.passed());
        assert!(DualGraph::empty().into_validated().is_ok());
    }

    #[test]
    fn pair_on_a1() {
        let g = single(-2);
        let z = Cycle::from_integers(&[1]);
        assert_eq!(g.pair(&z, &z).unwrap(), rational(-2));
    }

    #[test]
    fn pair_with_zero_cycle_vanishes() {
        let g = g1();
        let z = Cycle::from_integers(&[1, 2, 1, 2, 1]);
        let w = Cycle::zero(5);
        assert_eq!(g.pair(&z, &w).unwrap(), rational(0));
    }

    #[test]
    fn pair_g1_fundamental_self_intersection() {
        let vg = g1().into_validated().unwrap();
        let z = vg.fundamental_cycle().unwrap();
        assert_eq!(vg.pair(z, z).unwrap(), rational(-4));
    }

    #[test]
    fn pair_rejects_mismatched_support() {
        let g = g1();
        let z = Cycle::from_integers(&[1, 1]);
        let w = Cycle::zero(5);
        assert_eq!(
            g.pair(&z, &w).unwrap_err(),
            CycleError::SupportMismatch { expected: 5, found: 2 }
        );
    }

    #[test]
    fn validation_is_relabelling_invariant() {
        let a = g1();
        let b = graph(
            &[("b4", -4), ("b3", -2), ("t", -2), ("b2", -2), ("b1", -2)],
            &[("b2", "b1"), ("b3", "b2"), ("b4", "b3"), ("t", "b2")],
        );
        let ra = a.validate();
        let rb = b.validate();
        for (ca, cb) in ra.checks.iter().zip(rb.checks.iter()) {
            assert_eq!(ca.name, cb.name);
            assert_eq!(ca.passed, cb.passed);
        }
        assert_eq!(ra.verdict, rb.verdict);
    }

    #[test]
    fn parser_rejects_bad_inputs() {
        let ok = r#"{"vertices":[{"id":"E1","self":-2}],"edges":[]}"#;
        assert!(DualGraph::from_json(ok).is_ok());

        let cases = [
            r#"{"vertices":[{"id":"E1","self":-1}],"edges":[]}"#,
            r#"{"vertices":[{"id":"E1","self":-2.5}],"edges":[]}"#,
            r#"{"vertices":[{"id":"","self":-2}],"edges":[]}"#,
            r#"{"vertices":[{"id":"E1","self":-2},{"id":"E1","self":-3}],"edges":[]}"#,
            r#"{"vertices":[{"id":"E1","self":-2}],"edges":[["E1","E1"]]}"#,
            r#"{"vertices":[{"id":"E1","self":-2}],"edges":[["E1","E9"]]}"#,
            r#"{"vertices":[{"id":"E1","self":-2},{"id":"E2","self":-2}],"edges":[["E1","E2"],["E2","E1"]]}"#,
        ];
        for case in cases {
            assert!(DualGraph::from_json(case).is_err(), "accepted: {case}");
        }
    }

    #[test]
    fn json_round_trip() {
        let g = g1();
        let back = DualGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn intersection_matrix_matches_graph() {
        let g = chain(&[-2, -3]);
        let m = g.intersection_matrix();
        assert_eq!(m.entry(0, 0), -2);
        assert_eq!(m.entry(1, 1), -3);
        assert_eq!(m.entry(0, 1), 1);
        assert_eq!(m.entry(1, 0), 1);
        assert_eq!(g.intersection(0, 1), 1);
        assert_eq!(g.intersection(0, 0), -2);
    }

    #[test]
    fn negated_minors_detect_indefiniteness() {
        // The affine D4 star (center -2, four -2 leaves) has a singular form.
        let g = graph(
            &[("c", -2), ("l1", -2), ("l2", -2), ("l3", -2), ("l4", -2)],
            &[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")],
        );
        match g.intersection_matrix().negated_leading_minors() {
            MinorScan::NonPositive { order, value } => {
                assert_eq!(order, 5);
                assert_eq!(value.to_i64().unwrap(), 0);
            }
            MinorScan::AllPositive => panic!("affine star accepted as definite"),
        }
    }
}
