//! The stable category picture: relatively projective specials, the
//! (-2)-subconfiguration with its Dynkin components, stable AR quivers,
//! almost split sequences, Gorenstein partners, and cluster-tilting
//! decisions.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{DualGraph, GraphError, ValidatedGraph};
use crate::quiver::{Arrow, Quiver, STAR};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StableError {
    #[error("component containing {0:?} is not a Dynkin tree")]
    NotDynkin(String),
    #[error("cluster tilting level must be at least 1")]
    InvalidLevel,
}

/// ADE type of one (-2)-configuration component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One component of the (-2)-forest, typed and listing its vertices in
/// input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynkinComponent {
    #[serde(rename = "type")]
    pub kind: DynkinType,
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexFlag {
    pub vertex: String,
    pub nonzero: bool,
}

/// Partition of the curves into relatively projective ones (the
/// non-(-2)-curves, alongside the ring itself) and the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveClassification {
    pub relatively_projective: Vec<String>,
    pub non_projective: Vec<String>,
    /// Whether the special at each curve has a self-extension; true
    /// exactly on the non-projective (-2) side.
    pub ext1_self_nonzero: Vec<VertexFlag>,
    pub note: String,
}

pub fn classify_projectives(g: &ValidatedGraph) -> ProjectiveClassification {
    let mut relatively_projective = Vec::new();
    let mut non_projective = Vec::new();
    let mut flags = Vec::with_capacity(g.len());
    for i in 0..g.len() {
        let is_minus_two = g.self_int(i) == -2;
        if is_minus_two {
            non_projective.push(g.id(i).to_owned());
        } else {
            relatively_projective.push(g.id(i).to_owned());
        }
        flags.push(VertexFlag { vertex: g.id(i).to_owned(), nonzero: is_minus_two });
    }
    ProjectiveClassification {
        relatively_projective,
        non_projective,
        ext1_self_nonzero: flags,
        note: "the stable quotient retains exactly the crepant (-2)-curves; \
               R and the specials at other curves become relatively projective"
            .to_owned(),
    }
}

/// Induced subgraph on the (-2)-curves: a forest, possibly empty or
/// disconnected, with every weight -2.
pub fn minus_two_subgraph(g: &ValidatedGraph) -> DualGraph {
    let keep: Vec<usize> = (0..g.len()).filter(|&i| g.self_int(i) == -2).collect();
    let kept: std::collections::HashSet<usize> = keep.iter().copied().collect();
    let vertices = keep.iter().map(|&i| (g.id(i).to_owned(), -2)).collect();
    let edges = g
        .edges()
        .iter()
        .filter(|(i, j)| kept.contains(i) && kept.contains(j))
        .map(|&(i, j)| (g.id(i).to_owned(), g.id(j).to_owned()))
        .collect();
    DualGraph::new(vertices, edges).expect("induced subgraph of a simple graph is simple")
}

/// Type each component of a forest as a Dynkin tree. Fails on any other
/// shape, which cannot occur for forests cut out of validated graphs.
pub fn dynkin_classify(forest: &DualGraph) -> Result<Vec<DynkinComponent>, StableError> {
    forest
        .components()
        .into_iter()
        .map(|comp| {
            let kind = classify_component(forest, &comp)?;
            let vertices = comp.iter().map(|&i| forest.id(i).to_owned()).collect();
            Ok(DynkinComponent { kind, vertices })
        })
        .collect()
}

fn classify_component(forest: &DualGraph, comp: &[usize]) -> Result<DynkinType, StableError> {
    let not_dynkin = || StableError::NotDynkin(forest.id(comp[0]).to_owned());
    let inside = |v: usize| comp.contains(&v);
    let degree = |v: usize| forest.neighbors(v).iter().filter(|&&w| inside(w)).count();

    let branches: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();
    match branches.as_slice() {
        [] => Ok(DynkinType::A(comp.len() as u32)),
        [center] => {
            if degree(*center) != 3 {
                return Err(not_dynkin());
            }
            // Arm lengths in edges, walked away from the branch vertex.
            let mut arms: Vec<u32> = forest
                .neighbors(*center)
                .iter()
                .filter(|&&w| inside(w))
                .map(|&first| {
                    let mut prev = *center;
                    let mut cur = first;
                    let mut len = 1u32;
                    loop {
                        let next: Vec<usize> = forest
                            .neighbors(cur)
                            .iter()
                            .copied()
                            .filter(|&w| inside(w) && w != prev)
                            .collect();
                        match next.as_slice() {
                            [] => break len,
                            [only] => {
                                prev = cur;
                                cur = *only;
                                len += 1;
                            }
                            _ => break u32::MAX, // second branch vertex; rejected above
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, m] => Ok(DynkinType::D(m + 3)),
                [1, 2, 2] => Ok(DynkinType::E(6)),
                [1, 2, 3] => Ok(DynkinType::E(7)),
                [1, 2, 4] => Ok(DynkinType::E(8)),
                _ => Err(not_dynkin()),
            }
        }
        _ => Err(not_dynkin()),
    }
}

/// AR quiver of the stable category: the (-2)-forest with every edge
/// doubled, and nothing else.
pub fn stable_ar_quiver(g: &ValidatedGraph) -> Quiver {
    let forest = minus_two_subgraph(g);
    let mut arrows = Vec::new();
    for &(i, j) in forest.edges() {
        arrows.push(Arrow {
            from: forest.id(i).into(),
            to: forest.id(j).into(),
            mult: 1,
            extra: false,
        });
        arrows.push(Arrow {
            from: forest.id(j).into(),
            to: forest.id(i).into(),
            mult: 1,
            extra: false,
        });
    }
    Quiver { vertices: forest.vertex_ids().map(str::to_owned).collect(), arrows }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MiddleSummand {
    pub module: String,
    pub mult: u64,
}

/// Almost split sequence with both end terms at the same curve. The
/// middle term mirrors the first step of the minimal projective
/// resolution of the corresponding simple: one copy of M_j per
/// intersection and ((Z_K - Z_f) . E_i)_+ copies of R.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArSequenceData {
    pub end_term: String,
    pub middle: Vec<MiddleSummand>,
    pub free_rank: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ArSequence {
    RelativelyProjective,
    AlmostSplit(ArSequenceData),
}

pub fn ar_sequence(g: &ValidatedGraph, vertex: &str) -> Result<ArSequence, GraphError> {
    let i = g
        .index_of(vertex)
        .ok_or_else(|| GraphError::UnknownVertex(vertex.to_owned()))?;
    if g.self_int(i) != -2 {
        return Ok(ArSequence::RelativelyProjective);
    }
    let middle = g
        .neighbors(i)
        .iter()
        .map(|&j| MiddleSummand { module: g.id(j).to_owned(), mult: 1 })
        .collect();
    let canonical_degree = g.self_int(i) + 2;
    let free_rank = (canonical_degree - g.fundamental_degree(i)).max(0) as u64;
    Ok(ArSequence::AlmostSplit(ArSequenceData {
        end_term: vertex.to_owned(),
        middle,
        free_rank,
    }))
}

/// The stable endomorphism algebra's quiver plus the structural flags it
/// carries; the quiver coincides with the stable AR quiver and arises
/// from the reconstruction quiver by deleting the listed idempotents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableEndomorphism {
    pub quiver: Quiver,
    pub self_injective: bool,
    pub factor_of_reconstruction: bool,
    pub deleted_idempotents: Vec<String>,
}

pub fn stable_endomorphism_quiver(g: &ValidatedGraph) -> StableEndomorphism {
    let mut deleted = vec![STAR.to_owned()];
    deleted.extend(
        (0..g.len()).filter(|&i| g.self_int(i) != -2).map(|i| g.id(i).to_owned()),
    );
    StableEndomorphism {
        quiver: stable_ar_quiver(g),
        self_injective: true,
        factor_of_reconstruction: true,
        deleted_idempotents: deleted,
    }
}

/// ADE labels of the Gorenstein rings whose stable CM categories match
/// the components of the stable category.
pub fn gorenstein_partners(g: &ValidatedGraph) -> Vec<DynkinType> {
    dynkin_classify(&minus_two_subgraph(g))
        .expect("the (-2)-subgraph of a validated graph is a Dynkin forest")
        .into_iter()
        .map(|c| c.kind)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TiltingDecision {
    pub n: u32,
    pub answer: Answer,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl TiltingDecision {
    fn yes(n: u32, witness: &str) -> Self {
        TiltingDecision { n, answer: Answer::Yes, witness: Some(witness.to_owned()) }
    }

    fn no(n: u32) -> Self {
        TiltingDecision { n, answer: Answer::No, witness: None }
    }

    fn unknown(n: u32) -> Self {
        TiltingDecision { n, answer: Answer::Unknown, witness: None }
    }
}

/// Whether the CM category admits an n-cluster tilting object.
///
/// n = 1 asks for finite type, i.e. a quotient singularity; that is
/// certain for chains (cyclic quotients) and all-(-2) graphs (ADE), and
/// left undecided otherwise. n = 2 holds only for the empty graph and
/// the single (-3)-curve, where R + omega is a witness; n >= 3 only for
/// the empty graph.
pub fn cluster_tilting(g: &ValidatedGraph, n: u32) -> Result<TiltingDecision, StableError> {
    if n == 0 {
        return Err(StableError::InvalidLevel);
    }
    if g.is_empty() {
        return Ok(TiltingDecision::yes(n, "R"));
    }
    match n {
        1 => {
            let is_chain = (0..g.len()).all(|i| g.degree(i) <= 2);
            let all_minus_two = (0..g.len()).all(|i| g.self_int(i) == -2);
            if is_chain || all_minus_two {
                Ok(TiltingDecision::yes(1, "additive generator of CM(R)"))
            } else {
                Ok(TiltingDecision::unknown(1))
            }
        }
        2 => {
            if g.len() == 1 && g.self_int(0) == -3 {
                Ok(TiltingDecision::yes(2, "R+omega"))
            } else {
                Ok(TiltingDecision::no(2))
            }
        }
        _ => Ok(TiltingDecision::no(n)),
    }
}
