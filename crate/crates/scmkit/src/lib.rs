//! Exact combinatorics on the dual graphs of rational surface
//! singularities.
//!
//! From a weighted tree of exceptional curves this crate computes the
//! fundamental and canonical cycles, validates Artin rationality, builds
//! the quiver of the reconstruction algebra with its Ext tables, cuts
//! out the stable category's AR quiver (a disjoint union of doubled
//! Dynkin diagrams), produces almost split sequences, decides
//! cluster-tilting questions, and performs numerical syzygy arithmetic
//! on CM module classes. All arithmetic is exact: arbitrary-precision
//! integers and rationals, never floating point.

pub mod cycles;
pub mod generators;
pub mod graph;
pub mod modules;
pub mod quiver;
pub mod stable;

pub use cycles::{arithmetic_genus, CanonicalDegrees, Cycle, CycleError};
pub use graph::{
    DualGraph, GraphError, IntersectionMatrix, ParseError, ValidatedGraph, ValidationReport,
    Vertex,
};
pub use modules::{ModuleClass, ModuleError};
pub use quiver::{Arrow, ExtTable, Quiver, STAR};
pub use stable::{ArSequence, DynkinComponent, DynkinType, StableError, TiltingDecision};

#[cfg(test)]
pub(crate) mod test_graphs {
    use crate::graph::{DualGraph, ValidatedGraph};

    pub fn graph(vertices: &[(&str, i64)], edges: &[(&str, &str)]) -> DualGraph {
        DualGraph::new(
            vertices.iter().map(|(id, w)| (id.to_string(), *w)).collect(),
            edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        )
        .expect("test graph must be simple")
    }

    pub fn validated(g: DualGraph) -> ValidatedGraph {
        g.into_validated().expect("test graph must validate")
    }

    pub fn single(weight: i64) -> DualGraph {
        graph(&[("E1", weight)], &[])
    }

    pub fn chain(weights: &[i64]) -> DualGraph {
        let vertices: Vec<(String, i64)> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (format!("E{}", i + 1), w))
            .collect();
        let edges = (1..weights.len())
            .map(|i| (format!("E{i}"), format!("E{}", i + 1)))
            .collect();
        DualGraph::new(vertices, edges).unwrap()
    }

    /// Star with center "c" and leaves "l1", "l2", ...
    pub fn star(center: i64, leaves: &[i64]) -> DualGraph {
        let mut vertices = vec![("c".to_string(), center)];
        let mut edges = Vec::new();
        for (i, &w) in leaves.iter().enumerate() {
            let id = format!("l{}", i + 1);
            vertices.push((id.clone(), w));
            edges.push(("c".to_string(), id));
        }
        DualGraph::new(vertices, edges).unwrap()
    }

    /// Chain b1-b2-b3-b4 with t hanging off b2; weights all -2 except b4.
    pub fn g1() -> DualGraph {
        graph(
            &[("b1", -2), ("b2", -2), ("t", -2), ("b3", -2), ("b4", -4)],
            &[("b1", "b2"), ("b2", "t"), ("b2", "b3"), ("b3", "b4")],
        )
    }

    /// Same shape with the -4 at b3.
    pub fn g2() -> DualGraph {
        graph(
            &[("b1", -2), ("b2", -2), ("t", -2), ("b3", -4), ("b4", -2)],
            &[("b1", "b2"), ("b2", "t"), ("b2", "b3"), ("b3", "b4")],
        )
    }

    /// Same shape with the -4 at b2.
    pub fn g3() -> DualGraph {
        graph(
            &[("b1", -2), ("b2", -4), ("t", -2), ("b3", -2), ("b4", -2)],
            &[("b1", "b2"), ("b2", "t"), ("b2", "b3"), ("b3", "b4")],
        )
    }
}
