#![allow(dead_code)] // each test target uses a different subset of these fixtures

//! Shared fixtures: the worked example graphs, ADE families, and the
//! exhaustive small weighted-tree corpus.

use scmkit::{DualGraph, ValidatedGraph};

pub fn graph(vertices: &[(&str, i64)], edges: &[(&str, &str)]) -> DualGraph {
    DualGraph::new(
        vertices.iter().map(|(id, w)| (id.to_string(), *w)).collect(),
        edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    )
    .expect("fixture must be simple")
}

pub fn validated(g: DualGraph) -> ValidatedGraph {
    g.into_validated().expect("fixture must validate")
}

pub fn single(weight: i64) -> DualGraph {
    graph(&[("E1", weight)], &[])
}

pub fn chain(weights: &[i64]) -> DualGraph {
    let vertices: Vec<(String, i64)> =
        weights.iter().enumerate().map(|(i, &w)| (format!("E{}", i + 1), w)).collect();
    let edges =
        (1..weights.len()).map(|i| (format!("E{i}"), format!("E{}", i + 1))).collect();
    DualGraph::new(vertices, edges).unwrap()
}

/// Chain b1-b2-b3-b4 with t hanging off b2 and the -4 at b4.
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

/// A_n: a chain of n (-2)-curves.
pub fn dynkin_a(n: usize) -> DualGraph {
    chain(&vec![-2; n])
}

/// D_n (n >= 4): fork with two short arms and a tail of n-3 curves.
pub fn dynkin_d(n: usize) -> DualGraph {
    assert!(n >= 4);
    let mut vertices = vec![("c".to_string(), -2), ("f1".to_string(), -2), ("f2".to_string(), -2)];
    let mut edges = vec![
        ("c".to_string(), "f1".to_string()),
        ("c".to_string(), "f2".to_string()),
    ];
    let mut prev = "c".to_string();
    for i in 1..=(n - 3) {
        let id = format!("a{i}");
        vertices.push((id.clone(), -2));
        edges.push((prev.clone(), id.clone()));
        prev = id;
    }
    DualGraph::new(vertices, edges).unwrap()
}

/// E_n for n in {6, 7, 8}: arms of lengths (1, 2, n-4) around a branch.
pub fn dynkin_e(n: usize) -> DualGraph {
    assert!((6..=8).contains(&n));
    let mut vertices = vec![("c".to_string(), -2), ("s".to_string(), -2)];
    let mut edges = vec![("c".to_string(), "s".to_string())];
    for (arm, len) in [("p", 2usize), ("q", n - 4)] {
        let mut prev = "c".to_string();
        for i in 1..=len {
            let id = format!("{arm}{i}");
            vertices.push((id.clone(), -2));
            edges.push((prev.clone(), id.clone()));
            prev = id;
        }
    }
    DualGraph::new(vertices, edges).unwrap()
}

/// Every labelled tree on n vertices, decoded from all length-(n-2)
/// codes over {0, ..., n-1}.
pub fn all_labelled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n >= 1);
    if n == 1 {
        return vec![vec![]];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let mut code = vec![0usize; n - 2];
    loop {
        out.push(decode_tree(n, &code));
        let mut pos = 0;
        while pos < n - 2 {
            if code[pos] + 1 < n {
                code[pos] += 1;
                break;
            }
            code[pos] = 0;
            pos += 1;
        }
        if pos == n - 2 {
            break;
        }
    }
    out
}

fn decode_tree(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut rest = leaves.into_iter();
    edges.push((rest.next().unwrap(), rest.next().unwrap()));
    edges
}

/// Every weighted tree on at most `max_n` vertices with weights drawn
/// from {-2, -3, -4}, keeping only those passing validation.
pub fn exhaustive_validated(max_n: usize) -> Vec<ValidatedGraph> {
    let weights = [-2i64, -3, -4];
    let mut out = Vec::new();
    for n in 1..=max_n {
        for tree in all_labelled_trees(n) {
            let edge_names: Vec<(String, String)> = tree
                .iter()
                .map(|&(a, b)| (format!("v{}", a + 1), format!("v{}", b + 1)))
                .collect();
            let mut pick = vec![0usize; n];
            loop {
                let vertices: Vec<(String, i64)> = (0..n)
                    .map(|i| (format!("v{}", i + 1), weights[pick[i]]))
                    .collect();
                let g = DualGraph::new(vertices, edge_names.clone()).unwrap();
                if let Ok(vg) = g.into_validated() {
                    out.push(vg);
                }
                let mut pos = 0;
                while pos < n {
                    if pick[pos] + 1 < weights.len() {
                        pick[pos] += 1;
                        break;
                    }
                    pick[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
    }
    out
}

/// The corpus used by the corpus-wide checks: the exhaustive small
/// graphs, the ADE families, the worked examples, the block families,
/// rationalized random trees, and the empty graph.
pub fn corpus() -> Vec<ValidatedGraph> {
    let mut out = exhaustive_validated(4);
    for n in 1..=8 {
        out.push(validated(dynkin_a(n)));
    }
    for n in 4..=8 {
        out.push(validated(dynkin_d(n)));
    }
    for n in 6..=8 {
        out.push(validated(dynkin_e(n)));
    }
    out.extend([g1(), g2(), g3(), single(-3)].map(validated));
    for m in 1..=6 {
        out.push(validated(scmkit::generators::block_family(m).unwrap()));
    }
    for seed in 0..120u64 {
        let n = (seed as usize % 12) + 1;
        let tree = scmkit::generators::random_tree(n, seed).unwrap();
        out.push(validated(scmkit::generators::rationalize_tree(&tree)));
    }
    out.push(validated(DualGraph::empty()));
    out
}
