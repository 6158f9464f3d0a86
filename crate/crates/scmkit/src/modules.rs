//! Numerical Cohen-Macaulay module arithmetic from (rank, Chern) data:
//! syzygy decompositions, generator counts, and the specializations at
//! the canonical module.
//!
//! A class carries nothing beyond its rank and the intersection numbers
//! c_i = c1(M) . E_i; the syzygy statements are purely numerical in
//! these. Iterated syzygies are out of reach: the Chern data of the
//! duals M_i^* is not determined by the graph, so Omega^2 is never
//! computed (for non-free specials it is known to differ from M).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::graph::ValidatedGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("a rank-0 class must have a zero Chern vector")]
    ZeroRankNonzeroChern,
    #[error("Chern vector has {found} entries but the graph has {expected} vertices")]
    ChernLength { expected: usize, found: usize },
    #[error("the graph is empty")]
    EmptyGraph,
    #[error("count does not fit in 64 bits")]
    Overflow,
}

/// Numerical class (rank, Chern vector) of a CM module. The Chern vector
/// is indexed by the graph's vertices in input order; R is (1, 0) and
/// omega is (1, canonical degrees).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleClass {
    rank: u64,
    chern: Vec<u64>,
}

impl ModuleClass {
    pub fn new(rank: u64, chern: Vec<u64>) -> Result<Self, ModuleError> {
        if rank == 0 && chern.iter().any(|&c| c != 0) {
            return Err(ModuleError::ZeroRankNonzeroChern);
        }
        Ok(ModuleClass { rank, chern })
    }

    /// The free class R = (1, 0).
    pub fn regular(graph_size: usize) -> Self {
        ModuleClass { rank: 1, chern: vec![0; graph_size] }
    }

    /// The canonical class omega = (1, canonical degrees).
    pub fn omega(g: &ValidatedGraph) -> Self {
        ModuleClass { rank: 1, chern: g.canonical_degrees().values().to_vec() }
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn chern(&self) -> &[u64] {
        &self.chern
    }

    pub fn is_free_class(&self) -> bool {
        self.chern.iter().all(|&c| c == 0)
    }

    /// Componentwise sum, the class of a direct sum.
    pub fn direct_sum(&self, other: &ModuleClass) -> Result<ModuleClass, ModuleError> {
        if self.chern.len() != other.chern.len() {
            return Err(ModuleError::ChernLength {
                expected: self.chern.len(),
                found: other.chern.len(),
            });
        }
        Ok(ModuleClass {
            rank: self.rank + other.rank,
            chern: self.chern.iter().zip(&other.chern).map(|(a, b)| a + b).collect(),
        })
    }

    fn check_against(&self, g: &ValidatedGraph) -> Result<(), ModuleError> {
        if self.chern.len() != g.len() {
            return Err(ModuleError::ChernLength { expected: g.len(), found: self.chern.len() });
        }
        Ok(())
    }
}

/// One syzygy summand Omega M_i with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    #[serde(rename = "omega_M")]
    pub omega_m: String,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyzygyDecomposition {
    pub summands: Vec<Summand>,
    /// Each Omega M_i coincides with the dual M_i^* up to free summands.
    pub note: String,
}

/// Decomposition of the first syzygy: Omega M_i occurs c_i times.
pub fn syzygy_decomposition(
    g: &ValidatedGraph,
    m: &ModuleClass,
) -> Result<SyzygyDecomposition, ModuleError> {
    m.check_against(g)?;
    let summands = m
        .chern
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(i, &c)| Summand { omega_m: g.id(i).to_owned(), mult: c })
        .collect();
    Ok(SyzygyDecomposition {
        summands,
        note: "each Omega M_i is isomorphic to the dual M_i^* up to free summands".to_owned(),
    })
}

/// Minimal number of generators: rank + Z_f . c1.
pub fn min_generators(g: &ValidatedGraph, m: &ModuleClass) -> Result<u64, ModuleError> {
    Ok(m.rank + syzygy_rank(g, m)?)
}

/// Rank of the first syzygy: Z_f . c1, i.e. min_generators - rank.
pub fn syzygy_rank(g: &ValidatedGraph, m: &ModuleClass) -> Result<u64, ModuleError> {
    m.check_against(g)?;
    let mut total = BigInt::from(0u8);
    if let Ok(z_f) = g.fundamental_cycle() {
        for (i, &c) in m.chern.iter().enumerate() {
            if c > 0 {
                total += z_f.integer_coeff(i) * BigInt::from(c);
            }
        }
    }
    total.to_u64().ok_or(ModuleError::Overflow)
}

/// Syzygy decomposition of the canonical module: Omega M_i occurs
/// -E_i^2 - 2 times, so the summands sit exactly at the non-(-2)-curves.
pub fn omega_syzygy(g: &ValidatedGraph) -> Result<SyzygyDecomposition, ModuleError> {
    if g.is_empty() {
        return Err(ModuleError::EmptyGraph);
    }
    syzygy_decomposition(g, &ModuleClass::omega(g))
}
