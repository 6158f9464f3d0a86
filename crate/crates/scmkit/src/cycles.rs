//! Fundamental and canonical cycles, arithmetic genus, and the
//! graph-level predicates built from them.
//!
//! Degree convention for the canonical cycle: `Z_K` is the unique
//! rational solution of `Z_K . E_i = E_i^2 + 2` for every curve, so its
//! degree vanishes exactly on the (-2)-curves and `((Z_K - Z_f) . E_i)_-`
//! counts relations against the base vertex at the remaining curves.
//! Flipping the sign would make that quantity identically zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{DualGraph, ValidatedGraph};

/// Exact rational coefficient vector over a graph's vertex set, stored in
/// input vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    coeffs: Vec<BigRational>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle has {found} coefficients but the graph has {expected} vertices")]
    SupportMismatch { expected: usize, found: usize },
    #[error("cycle is not integral")]
    NonIntegral,
    #[error("the graph is empty")]
    EmptyGraph,
    #[error("the graph is Gorenstein")]
    GorensteinInput,
}

impl Cycle {
    pub fn zero(len: usize) -> Self {
        Cycle { coeffs: vec![BigRational::zero(); len] }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Cycle {
            coeffs: values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
        }
    }

    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        Cycle { coeffs }
    }

    pub(crate) fn from_bigints(values: Vec<BigInt>) -> Self {
        Cycle { coeffs: values.into_iter().map(BigRational::from_integer).collect() }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigRational> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Integer value of an integral coefficient.
    pub fn integer_coeff(&self, i: usize) -> BigInt {
        debug_assert!(self.coeffs[i].is_integer());
        self.coeffs[i].to_integer()
    }

    /// Componentwise sum; both cycles must share a support.
    pub fn add(&self, other: &Cycle) -> Cycle {
        assert_eq!(self.len(), other.len(), "cycle support mismatch");
        Cycle {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    /// Componentwise difference; both cycles must share a support.
    pub fn sub(&self, other: &Cycle) -> Cycle {
        assert_eq!(self.len(), other.len(), "cycle support mismatch");
        Cycle {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// JSON map in vertex order with values rendered exactly, e.g. "3/7".
    pub fn to_json_map(&self, graph: &DualGraph) -> serde_json::Value {
        let mut map = serde_json::Map::with_capacity(self.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            map.insert(graph.id(i).to_owned(), serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(map)
    }
}

/// Adjunction degrees k_i = -E_i^2 - 2; zero exactly at the (-2)-curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDegrees(Vec<u64>);

impl CanonicalDegrees {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Incremental anti-nef search: start from the reduced cycle and add the
/// lowest-indexed curve of positive degree until every degree is <= 0.
/// Terminates whenever the intersection form is negative definite, which
/// the callers guarantee.
pub(crate) fn laufer(graph: &DualGraph) -> Cycle {
    let n = graph.len();
    assert!(n > 0, "fundamental cycle of the empty graph");
    let mut z = vec![BigInt::one(); n];
    // degree[i] = Z . E_i, maintained incrementally.
    let mut degree: Vec<BigInt> = (0..n)
        .map(|i| BigInt::from(graph.self_int(i) + graph.degree(i) as i64))
        .collect();
    while let Some(i) = (0..n).find(|&i| degree[i].is_positive()) {
        z[i] += 1;
        degree[i] += graph.self_int(i);
        for &j in graph.neighbors(i) {
            degree[j] += 1;
        }
    }
    assert!(degree.iter().all(|d| !d.is_positive()));
    Cycle::from_bigints(z)
}

/// Exact solve of M z = d with d_i = E_i^2 + 2. The negated matrix is
/// positive definite, so elimination without pivoting never hits a zero
/// pivot.
pub(crate) fn solve_canonical(graph: &DualGraph) -> Cycle {
    let n = graph.len();
    if n == 0 {
        return Cycle::zero(0);
    }
    let m = graph.intersection_matrix();
    let mut a = vec![vec![BigRational::zero(); n + 1]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().take(n).enumerate() {
            *slot = BigRational::from_integer(BigInt::from(m.entry(i, j)));
        }
        row[n] = BigRational::from_integer(BigInt::from(graph.self_int(i) + 2));
    }
    for k in 0..n {
        assert!(!a[k][k].is_zero(), "zero pivot on a definite matrix");
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let factor = &row[k] / &pivot_row[k];
            for (j, pivot_entry) in pivot_row.iter().enumerate().skip(k) {
                row[j] -= &factor * pivot_entry;
            }
        }
    }
    let mut z = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut rhs = a[i][n].clone();
        for j in (i + 1)..n {
            rhs -= &a[i][j] * &z[j];
        }
        z[i] = rhs / &a[i][i];
    }
    Cycle::from_rationals(z)
}

/// Arithmetic genus 1 + (Z.Z + Z.K)/2 of an integral cycle, with
/// K . E_i = -E_i^2 - 2 from adjunction.
pub fn arithmetic_genus(graph: &DualGraph, z: &Cycle) -> Result<BigRational, CycleError> {
    if z.len() != graph.len() {
        return Err(CycleError::SupportMismatch { expected: graph.len(), found: z.len() });
    }
    if !z.is_integral() {
        return Err(CycleError::NonIntegral);
    }
    let self_pair = graph.pair(z, z).expect("support already checked");
    let mut z_dot_k = BigRational::zero();
    for i in 0..graph.len() {
        z_dot_k += z.coeff(i) * BigRational::from_integer(BigInt::from(-graph.self_int(i) - 2));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(BigRational::one() + (self_pair + z_dot_k) / two)
}

impl ValidatedGraph {
    /// The componentwise-minimal positive integral cycle with Z . E_i <= 0
    /// for every curve.
    pub fn fundamental_cycle(&self) -> Result<&Cycle, CycleError> {
        if self.graph.is_empty() {
            Err(CycleError::EmptyGraph)
        } else {
            Ok(&self.z_f)
        }
    }

    /// The unique rational cycle with Z_K . E_i = E_i^2 + 2 for every
    /// curve (see the module notes for the sign convention).
    pub fn canonical_cycle(&self) -> &Cycle {
        &self.z_k
    }

    pub fn canonical_degrees(&self) -> CanonicalDegrees {
        CanonicalDegrees(
            (0..self.graph.len()).map(|i| (-self.graph.self_int(i) - 2) as u64).collect(),
        )
    }

    /// Artin's criterion: the fundamental cycle has arithmetic genus zero.
    /// Validation already requires this, so it holds on every value of
    /// this type.
    pub fn is_rational(&self) -> bool {
        self.graph.is_empty()
            || arithmetic_genus(&self.graph, &self.z_f)
                .map(|g| g.is_zero())
                .unwrap_or(false)
    }

    /// True exactly when every curve is a (-2)-curve, i.e. Z_K = 0.
    pub fn is_gorenstein(&self) -> bool {
        (0..self.graph.len()).all(|i| self.graph.self_int(i) == -2)
    }

    /// Whether the canonical module is itself one of the special
    /// modules: exactly one (-3)-curve and (-2)-curves everywhere else.
    /// Rejects Gorenstein input, where the question degenerates.
    pub fn omega_is_special(&self) -> Result<bool, CycleError> {
        if self.is_gorenstein() {
            return Err(CycleError::GorensteinInput);
        }
        let mut minus_three = 0usize;
        for i in 0..self.graph.len() {
            match self.graph.self_int(i) {
                -2 => {}
                -3 => minus_three += 1,
                _ => return Ok(false),
            }
        }
        Ok(minus_three == 1)
    }

    /// Z . E_i with the fundamental cycle; an integer, always <= 0.
    pub(crate) fn fundamental_degree(&self, i: usize) -> i64 {
        let d = self
            .graph
            .degree_against(&self.z_f, i)
            .expect("cached cycle matches the graph");
        debug_assert!(d.is_integer());
        i64::try_from(d.to_integer()).expect("degree fits in i64")
    }
}
