//! Graph generators and the brute-force anti-nef oracle used to
//! cross-check the incremental fundamental-cycle search.

use std::collections::{BTreeSet, HashSet};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cycles::Cycle;
use crate::graph::{DualGraph, GraphError, ValidatedGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("input is not connected")]
    Disconnected,
    #[error("input contains a cycle")]
    Cyclic,
    #[error("family index must be at least 1")]
    BadFamilySize,
    #[error("no anti-nef cycle with coefficients in 1..={0}; raise the bound")]
    BoundExhausted(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An unweighted tree: connected and acyclic by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainTree {
    ids: Vec<String>,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

impl PlainTree {
    pub fn new(ids: Vec<String>, edges: Vec<(String, String)>) -> Result<Self, GenError> {
        if ids.is_empty() {
            return Err(GenError::Empty);
        }
        // Reuse the graph machinery for id checks and simplicity.
        let graph = DualGraph::new(ids.iter().map(|id| (id.clone(), -2)).collect(), edges)?;
        if graph.edges().len() >= graph.len() {
            return Err(GenError::Cyclic);
        }
        if graph.components().len() > 1 {
            return Err(GenError::Disconnected);
        }
        let degrees = (0..graph.len()).map(|i| graph.degree(i)).collect();
        Ok(PlainTree { ids, edges: graph.edges().to_vec(), degrees })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }
}

/// Weight a tree so it becomes the dual graph of a rational singularity:
/// -2 at vertices with at most one neighbour, minus the neighbour count
/// elsewhere. (A lone vertex gets -2; the raw rule would give 0.)
pub fn rationalize_tree(tree: &PlainTree) -> DualGraph {
    let vertices = tree
        .ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), -(tree.degree(i).max(2) as i64)))
        .collect();
    let edges = tree
        .edges
        .iter()
        .map(|&(i, j)| (tree.ids[i].clone(), tree.ids[j].clone()))
        .collect();
    DualGraph::new(vertices, edges).expect("weighting a tree preserves simplicity")
}

/// The m-block family: a bottom chain of 2m+1 curves alternating
/// -2, -3, ..., -2 with a -2 leaf on top of every -3. Deleting the -3
/// curves leaves 2m+1 components, so the family realizes arbitrarily
/// many stable components.
pub fn block_family(m: u32) -> Result<DualGraph, GenError> {
    if m < 1 {
        return Err(GenError::BadFamilySize);
    }
    let width = 2 * m as usize + 1;
    let mut vertices = Vec::with_capacity(width + m as usize);
    let mut edges = Vec::new();
    for i in 1..=width {
        let weight = if i % 2 == 0 { -3 } else { -2 };
        vertices.push((format!("b{i}"), weight));
        if i > 1 {
            edges.push((format!("b{}", i - 1), format!("b{i}")));
        }
    }
    for j in 1..=m as usize {
        vertices.push((format!("t{j}"), -2));
        edges.push((format!("b{}", 2 * j), format!("t{j}")));
    }
    Ok(DualGraph::new(vertices, edges)?)
}

/// Uniform random labelled tree on n vertices, decoded from a random
/// length-(n-2) code; deterministic per (n, seed).
pub fn random_tree(n: usize, seed: u64) -> Result<PlainTree, GenError> {
    if n < 1 {
        return Err(GenError::Empty);
    }
    let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    if n == 1 {
        return PlainTree::new(ids, Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| (rng.next_u64() % n as u64) as usize).collect();

    let mut degree = vec![1usize; n];
    for &v in &code {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &code {
        let leaf = *leaves.iter().next().expect("a tree code always leaves a leaf");
        leaves.remove(&leaf);
        edges.push((ids[leaf].clone(), ids[v].clone()));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut rest = leaves.into_iter();
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((ids[a].clone(), ids[b].clone()));
    PlainTree::new(ids, edges)
}

/// One more than the largest fundamental-cycle coefficient: the smallest
/// bound that keeps the exhaustive search nonempty without trusting the
/// incremental algorithm's exact values.
pub fn default_oracle_bound(g: &ValidatedGraph) -> Result<u64, GenError> {
    if g.is_empty() {
        return Err(GenError::Empty);
    }
    let z_f = g.fundamental_cycle().expect("nonempty");
    let max = (0..g.len())
        .map(|i| u64::try_from(z_f.integer_coeff(i)).expect("positive coefficients"))
        .max()
        .unwrap_or(1);
    Ok(max + 1)
}

/// Exhaustive fundamental-cycle oracle: enumerate every integer vector
/// with entries in 1..=bound, keep the anti-nef ones, and return their
/// componentwise minimum. Panics if the kept set fails to be closed
/// under componentwise minima, which cannot happen for an intersection
/// form with non-negative off-diagonal entries.
pub fn brute_force_fundamental_cycle(
    g: &ValidatedGraph,
    bound: u64,
) -> Result<Cycle, GenError> {
    let n = g.len();
    if n == 0 {
        return Err(GenError::Empty);
    }
    if bound < 1 {
        return Err(GenError::BoundExhausted(bound));
    }
    let bound = i64::try_from(bound).expect("oracle bounds are small");
    let weights: Vec<i64> = (0..n).map(|i| g.self_int(i)).collect();

    let anti_nef = |z: &[i64]| {
        (0..n).all(|i| {
            let mut row = weights[i] * z[i];
            for &j in g.neighbors(i) {
                row += z[j];
            }
            row <= 0
        })
    };

    let mut kept: Vec<Vec<i64>> = Vec::new();
    let mut current = vec![1i64; n];
    loop {
        if anti_nef(&current) {
            kept.push(current.clone());
        }
        // Odometer step over [1, bound]^n.
        let mut pos = 0;
        loop {
            if pos == n {
                break;
            }
            if current[pos] < bound {
                current[pos] += 1;
                break;
            }
            current[pos] = 1;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    if kept.is_empty() {
        return Err(GenError::BoundExhausted(bound as u64));
    }

    let members: HashSet<&[i64]> = kept.iter().map(Vec::as_slice).collect();
    for a in &kept {
        for b in &kept {
            let met: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x.min(y)).collect();
            assert!(
                members.contains(met.as_slice()),
                "anti-nef set not closed under componentwise minima"
            );
        }
    }

    let minimum: Vec<i64> = (0..n)
        .map(|i| kept.iter().map(|z| z[i]).min().expect("nonempty"))
        .collect();
    debug_assert!(members.contains(minimum.as_slice()));
    Ok(Cycle::from_integers(&minimum))
}
