//! The reconstruction-algebra quiver and the Ext dimension tables read
//! off the intersection combinatorics.
//!
//! Arrow rule: n(i -> j) = E_i . E_j between curve vertices,
//! n(i -> *) = -Z_f . E_i, and n(* -> i) = ((Z_K - Z_f) . E_i)_+.
//! On all-(-2) graphs this degenerates to the symmetric affine McKay
//! shape. Arrows i -> * at non-(-2) curves carry the "extra" tag.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::{GraphError, ValidatedGraph};

/// Label of the base vertex corresponding to the ring itself.
pub const STAR: &str = "*";

/// A bundle of parallel arrows between two quiver vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: String,
    pub to: String,
    pub mult: u64,
    pub extra: bool,
}

/// Directed multigraph on {*} and the curve vertices. Loop-free; the
/// multiplicities between curve vertices are symmetric.
#[derive(Debug, Clone, Eq, Serialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn multiplicity(&self, from: &str, to: &str) -> u64 {
        self.arrows
            .iter()
            .filter(|a| a.from == from && a.to == to)
            .map(|a| a.mult)
            .sum()
    }

    /// Total number of arrow units.
    pub fn arrow_count(&self) -> u64 {
        self.arrows.iter().map(|a| a.mult).sum()
    }

    pub fn in_degree(&self, vertex: &str) -> u64 {
        self.arrows.iter().filter(|a| a.to == vertex).map(|a| a.mult).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arrows
            .iter()
            .all(|a| self.multiplicity(&a.from, &a.to) == self.multiplicity(&a.to, &a.from))
    }

    /// The quiver left after deleting some vertices and every arrow
    /// touching them.
    pub fn without_vertices(&self, dropped: &[&str]) -> Quiver {
        let drop: BTreeSet<&str> = dropped.iter().copied().collect();
        Quiver {
            vertices: self
                .vertices
                .iter()
                .filter(|v| !drop.contains(v.as_str()))
                .cloned()
                .collect(),
            arrows: self
                .arrows
                .iter()
                .filter(|a| !drop.contains(a.from.as_str()) && !drop.contains(a.to.as_str()))
                .cloned()
                .collect(),
        }
    }

    fn arrow_multiset(&self) -> BTreeMap<(&str, &str, bool), u64> {
        let mut map = BTreeMap::new();
        for a in &self.arrows {
            if a.mult > 0 {
                *map.entry((a.from.as_str(), a.to.as_str(), a.extra)).or_insert(0) += a.mult;
            }
        }
        map
    }

    /// DOT rendering: one edge per arrow unit, extra arrows in green.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {:?};", v);
        }
        for a in &self.arrows {
            for _ in 0..a.mult {
                if a.extra {
                    let _ = writeln!(out, "  {:?} -> {:?} [color=green];", a.from, a.to);
                } else {
                    let _ = writeln!(out, "  {:?} -> {:?};", a.from, a.to);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl PartialEq for Quiver {
    /// Same vertex set and the same multiset of tagged arrows.
    fn eq(&self, other: &Self) -> bool {
        let mine: BTreeSet<&str> = self.vertices.iter().map(String::as_str).collect();
        let theirs: BTreeSet<&str> = other.vertices.iter().map(String::as_str).collect();
        mine == theirs && self.arrow_multiset() == other.arrow_multiset()
    }
}

/// The quiver of End(R + sum of the special CM modules).
pub fn reconstruction_quiver(g: &ValidatedGraph) -> Quiver {
    let mut vertices = vec![STAR.to_owned()];
    vertices.extend(g.vertex_ids().map(str::to_owned));
    let mut arrows = Vec::new();
    for &(i, j) in g.edges() {
        arrows.push(Arrow { from: g.id(i).into(), to: g.id(j).into(), mult: 1, extra: false });
        arrows.push(Arrow { from: g.id(j).into(), to: g.id(i).into(), mult: 1, extra: false });
    }
    for i in 0..g.len() {
        let to_star = (-g.fundamental_degree(i)) as u64;
        if to_star > 0 {
            arrows.push(Arrow {
                from: g.id(i).into(),
                to: STAR.to_owned(),
                mult: to_star,
                extra: g.self_int(i) != -2,
            });
        }
    }
    for i in 0..g.len() {
        let from_star = star_to_curve(g, i);
        if from_star > 0 {
            arrows.push(Arrow {
                from: STAR.to_owned(),
                to: g.id(i).into(),
                mult: from_star,
                extra: false,
            });
        }
    }
    Quiver { vertices, arrows }
}

/// n(* -> i) = ((Z_K - Z_f) . E_i)_+, an integer since both degree terms are.
fn star_to_curve(g: &ValidatedGraph, i: usize) -> u64 {
    let canonical_degree = g.self_int(i) + 2;
    (canonical_degree - g.fundamental_degree(i)).max(0) as u64
}

/// ((Z_K - Z_f) . E_i)_-, the relation count against the base vertex.
fn star_relations(g: &ValidatedGraph, i: usize) -> u64 {
    let canonical_degree = g.self_int(i) + 2;
    (g.fundamental_degree(i) - canonical_degree).max(0) as u64
}

/// Per-curve Ext dimensions of the simple modules over the
/// reconstruction algebra, for degrees 1 to 3. `ext1[j]` counts arrows
/// from the j-th curve into this row's curve; no rows are produced with
/// the base vertex as source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtRow {
    pub vertex: String,
    pub ext1: Vec<u64>,
    pub ext1_star: u64,
    pub ext2: Vec<u64>,
    pub ext2_star: u64,
    pub ext3: Vec<u64>,
    pub ext3_star: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub vertices: Vec<String>,
    pub rows: Vec<ExtRow>,
}

pub fn ext_table(g: &ValidatedGraph) -> ExtTable {
    let n = g.len();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut ext1 = vec![0u64; n];
        for &j in g.neighbors(i) {
            ext1[j] = 1;
        }
        let mut ext2 = vec![0u64; n];
        ext2[i] = (-g.self_int(i) - 1) as u64;
        rows.push(ExtRow {
            vertex: g.id(i).to_owned(),
            ext1,
            ext1_star: star_to_curve(g, i),
            ext2,
            ext2_star: star_relations(g, i),
            ext3: vec![0u64; n],
            ext3_star: (-g.self_int(i) - 2) as u64,
        });
    }
    ExtTable { vertices: g.vertex_ids().map(str::to_owned).collect(), rows }
}

/// Projective dimension of the simple at a curve vertex: 2 at
/// (-2)-curves, 3 otherwise.
pub fn projective_dimension(g: &ValidatedGraph, vertex: &str) -> Result<u32, GraphError> {
    let i = g
        .index_of(vertex)
        .ok_or_else(|| GraphError::UnknownVertex(vertex.to_owned()))?;
    Ok(if g.self_int(i) == -2 { 2 } else { 3 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexRelations {
    pub vertex: String,
    pub self_relations: u64,
    pub star_relations: u64,
    /// A single relation that is a cycle at this vertex; holds exactly
    /// at the (-2)-curves.
    pub cycle_at_vertex: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationsReport {
    pub vertices: Vec<String>,
    pub global_dimension: u32,
    pub relations: Vec<VertexRelations>,
}

/// Relation counts per vertex plus the global dimension of the
/// reconstruction algebra: 2 when every curve is a (-2)-curve, else 3.
pub fn relations_report(g: &ValidatedGraph) -> RelationsReport {
    let all_minus_two = (0..g.len()).all(|i| g.self_int(i) == -2);
    let relations = (0..g.len())
        .map(|i| {
            let self_relations = (-g.self_int(i) - 1) as u64;
            let star = star_relations(g, i);
            VertexRelations {
                vertex: g.id(i).to_owned(),
                self_relations,
                star_relations: star,
                cycle_at_vertex: g.self_int(i) == -2,
            }
        })
        .collect();
    RelationsReport {
        vertices: g.vertex_ids().map(str::to_owned).collect(),
        global_dimension: if all_minus_two { 2 } else { 3 },
        relations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_graphs::{chain, g1, g2, g3, single, star, validated};

    #[test]
    fn g1_reconstruction_quiver_matches_drawn_arrows() {
        let q = reconstruction_quiver(&validated(g1()));
        // Doubled tree edges.
        for (a, b) in [("b1", "b2"), ("b2", "t"), ("b2", "b3"), ("b3", "b4")] {
            assert_eq!(q.multiplicity(a, b), 1);
            assert_eq!(q.multiplicity(b, a), 1);
        }
        assert_eq!(q.multiplicity("b3", STAR), 1);
        assert_eq!(q.multiplicity(STAR, "b3"), 1);
        assert_eq!(q.multiplicity("b4", STAR), 2);
        assert_eq!(q.multiplicity(STAR, "b4"), 0);
        assert_eq!(q.arrow_count(), 8 + 2 + 2);
        let extras: Vec<&Arrow> = q.arrows.iter().filter(|a| a.extra).collect();
        assert_eq!(extras.len(), 1);
        assert_eq!((extras[0].from.as_str(), extras[0].mult), ("b4", 2));
    }

    #[test]
    fn g2_reconstruction_quiver_matches_drawn_arrows() {
        let q = reconstruction_quiver(&validated(g2()));
        for v in ["b2", "b4"] {
            assert_eq!(q.multiplicity(v, STAR), 1);
            assert_eq!(q.multiplicity(STAR, v), 1);
        }
        assert_eq!(q.multiplicity("b3", STAR), 1);
        assert_eq!(q.multiplicity(STAR, "b3"), 0);
        assert_eq!(q.multiplicity("b1", STAR), 0);
        assert_eq!(q.multiplicity("t", STAR), 0);
        assert_eq!(q.arrow_count(), 8 + 2 + 2 + 1);
        let extras: Vec<&Arrow> = q.arrows.iter().filter(|a| a.extra).collect();
        assert_eq!(extras.len(), 1);
        assert_eq!((extras[0].from.as_str(), extras[0].mult), ("b3", 1));
    }

    #[test]
    fn g3_reconstruction_quiver_matches_drawn_arrows() {
        let q = reconstruction_quiver(&validated(g3()));
        for v in ["b1", "t", "b4"] {
            assert_eq!(q.multiplicity(v, STAR), 1, "{v}");
            assert_eq!(q.multiplicity(STAR, v), 1, "{v}");
        }
        assert_eq!(q.multiplicity("b2", STAR), 1);
        assert_eq!(q.multiplicity(STAR, "b2"), 0);
        assert_eq!(q.arrow_count(), 8 + 6 + 1);
        let extras: Vec<&Arrow> = q.arrows.iter().filter(|a| a.extra).collect();
        assert_eq!(extras.len(), 1);
        assert_eq!((extras[0].from.as_str(), extras[0].mult), ("b2", 1));
    }

    #[test]
    fn a1_quiver_is_the_doubled_mckay_shape() {
        let q = reconstruction_quiver(&validated(single(-2)));
        assert_eq!(q.multiplicity("E1", STAR), 2);
        assert_eq!(q.multiplicity(STAR, "E1"), 2);
        assert!(q.is_symmetric());
        assert!(q.arrows.iter().all(|a| !a.extra));
    }

    #[test]
    fn empty_graph_quiver_is_a_lone_star() {
        let q = reconstruction_quiver(&validated(crate::DualGraph::empty()));
        assert_eq!(q.vertices, vec![STAR.to_owned()]);
        assert!(q.arrows.is_empty());
    }

    #[test]
    fn ade_quivers_are_symmetric() {
        for g in [chain(&[-2; 4]), star(-2, &[-2, -2, -2]), chain(&[-2; 8])] {
            let vg = validated(g);
            let q = reconstruction_quiver(&vg);
            assert!(q.is_symmetric());
            for i in 0..vg.len() {
                let expected = (-vg.fundamental_degree(i)) as u64;
                assert_eq!(q.multiplicity(vg.id(i), STAR), expected);
                assert_eq!(q.multiplicity(STAR, vg.id(i)), expected);
            }
        }
    }

    #[test]
    fn star_arrow_inequality_with_equality_at_minus_two() {
        for g in [g1(), g2(), g3(), star(-3, &[-2, -2, -2]), chain(&[-2, -4, -2])] {
            let vg = validated(g);
            let q = reconstruction_quiver(&vg);
            for i in 0..vg.len() {
                let out = q.multiplicity(vg.id(i), STAR);
                let inn = q.multiplicity(STAR, vg.id(i));
                assert!(out >= inn);
                if vg.self_int(i) == -2 {
                    assert_eq!(out, inn);
                } else if out > 0 {
                    assert!(out > inn);
                }
            }
        }
    }

    #[test]
    fn non_gorenstein_star_with_flat_degree_has_no_extra_arrows() {
        // Degree-3 center at -3: the fundamental cycle meets it trivially,
        // so no arrows to * exist there and no extra tag appears even
        // though the graph is not Gorenstein.
        let vg = validated(star(-3, &[-2, -2, -2]));
        let q = reconstruction_quiver(&vg);
        assert_eq!(q.multiplicity("c", STAR), 0);
        assert_eq!(q.multiplicity(STAR, "c"), 0);
        assert!(q.arrows.iter().all(|a| !a.extra));
        assert!(!vg.is_gorenstein());
    }

    #[test]
    fn gorenstein_quivers_never_carry_extra_tags() {
        for g in [single(-2), chain(&[-2; 5]), star(-2, &[-2, -2, -2])] {
            let q = reconstruction_quiver(&validated(g));
            assert!(q.arrows.iter().all(|a| !a.extra));
        }
    }

    #[test]
    fn ext_table_minus_two_diagonal_is_one() {
        let t = ext_table(&validated(g1()));
        for row in &t.rows {
            let i = t.vertices.iter().position(|v| v == &row.vertex).unwrap();
            if row.vertex != "b4" {
                assert_eq!(row.ext2[i], 1);
                assert_eq!(row.ext2_star, 0);
                assert_eq!(row.ext3_star, 0);
            }
        }
    }

    #[test]
    fn ext_table_g3_center_row() {
        let t = ext_table(&validated(g3()));
        let row = t.rows.iter().find(|r| r.vertex == "b2").unwrap();
        assert_eq!(row.ext2_star, 1);
        assert_eq!(row.ext3_star, 2);
        assert_eq!(row.ext2[1], 3);
    }

    #[test]
    fn ext_table_vanishes_in_high_degree_for_gorenstein() {
        let t = ext_table(&validated(chain(&[-2; 8])));
        for row in &t.rows {
            assert_eq!(row.ext2_star, 0);
            assert_eq!(row.ext3_star, 0);
            assert!(row.ext3.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn ext1_row_sums_match_quiver_in_degrees() {
        for g in [g1(), g2(), g3(), single(-3)] {
            let vg = validated(g);
            let q = reconstruction_quiver(&vg);
            let t = ext_table(&vg);
            for row in &t.rows {
                let sum: u64 = row.ext1.iter().sum::<u64>() + row.ext1_star;
                assert_eq!(sum, q.in_degree(&row.vertex));
            }
        }
    }

    #[test]
    fn projective_dimension_examples() {
        let vg = validated(g1());
        assert_eq!(projective_dimension(&vg, "b1").unwrap(), 2);
        assert_eq!(projective_dimension(&vg, "b4").unwrap(), 3);
        assert_eq!(
            projective_dimension(&vg, "zz").unwrap_err(),
            GraphError::UnknownVertex("zz".into())
        );
        let e6 = validated(star(-2, &[-2, -2, -2]));
        assert_eq!(projective_dimension(&e6, "c").unwrap(), 2);
    }

    #[test]
    fn relations_reports() {
        let r = relations_report(&validated(g1()));
        assert_eq!(r.global_dimension, 3);
        for v in &r.relations {
            if v.vertex == "b4" {
                assert_eq!((v.self_relations, v.star_relations), (3, 0));
                assert!(!v.cycle_at_vertex);
            } else {
                assert_eq!((v.self_relations, v.star_relations), (1, 0));
                assert!(v.cycle_at_vertex);
            }
        }

        let r = relations_report(&validated(g3()));
        let b2 = r.relations.iter().find(|v| v.vertex == "b2").unwrap();
        assert_eq!((b2.self_relations, b2.star_relations), (3, 1));

        let d5 = star(-2, &[-2, -2, -2]); // D4; any all-(-2) tree behaves the same
        let r = relations_report(&validated(d5));
        assert_eq!(r.global_dimension, 2);
        assert!(r.relations.iter().all(|v| v.cycle_at_vertex && v.self_relations == 1));
    }

    #[test]
    fn dot_output_expands_multiplicities() {
        let q = reconstruction_quiver(&validated(g1()));
        let dot = q.to_dot();
        assert_eq!(dot.matches("\"b4\" -> \"*\" [color=green];").count(), 2);
        assert_eq!(dot.matches(" -> ").count(), 12);
    }

    #[test]
    fn without_vertices_drops_incident_arrows() {
        let q = reconstruction_quiver(&validated(g1()));
        let trimmed = q.without_vertices(&[STAR, "b4"]);
        assert_eq!(trimmed.vertices.len(), 4);
        assert_eq!(trimmed.arrow_count(), 6);
        assert!(trimmed.arrows.iter().all(|a| a.from != STAR && a.to != STAR));
    }
}
