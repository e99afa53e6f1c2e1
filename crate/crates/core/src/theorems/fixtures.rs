//! Graph families used by the check suites.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::graph::Graph;

pub fn polygon(n: usize) -> Graph {
    Graph::cycle(n).expect("polygon size within the edge cap")
}

pub fn polygon_checked(n: usize) -> Result<Graph, String> {
    Graph::cycle(n).map_err(|e| e.to_string())
}

pub fn k4() -> Graph {
    Graph::complete(4).expect("K_4")
}

/// `K_4` minus an edge: a square with one diagonal.
pub fn k4_minus_edge() -> Graph {
    Graph::polygon_with_diagonals(4, &[(0, 2)]).expect("K_4 - e")
}

/// Two triangles sharing one vertex.
pub fn triangle_wedge() -> Graph {
    polygon(3).wedge(0, &polygon(3), 0).expect("P_3 * P_3")
}

/// A `v`-gon with non-crossing chords from vertex 0.
pub fn fan_polygon(v: usize, chords: usize) -> Graph {
    let diagonals: Vec<(usize, usize)> = (2..2 + chords).map(|w| (0, w)).collect();
    Graph::polygon_with_diagonals(v, &diagonals).expect("fan polygon")
}

/// Graphs carrying a pendant edge, each paired with the index of that edge.
pub fn pendant_fixtures() -> Vec<(String, Graph, usize)> {
    let tail = |name: &str, g: Graph, v: usize| {
        let e = g.edge_count();
        (name.to_string(), g.with_pendant(v).expect("pendant"), e)
    };
    vec![
        tail("triangle with a tail", polygon(3), 0),
        tail("square with a tail", polygon(4), 1),
        tail("pentagon with a tail", polygon(5), 2),
        tail("K_4 with a tail", k4(), 3),
        tail("K_4 - e with a tail", k4_minus_edge(), 1),
        tail("path on 4 vertices", Graph::path(3), 2),
        tail("star", Graph::path(3), 1),
        tail("double edge with a tail", polygon(2), 0),
        tail("triangle with two tails", polygon(3).with_pendant(0).expect("pendant"), 1),
        tail("bowtie with a tail", triangle_wedge(), 4),
        tail("triangle with a long tail", polygon(3).with_pendant(0).expect("pendant"), 3),
    ]
}

/// Random simple graph on `vertices` vertices with at most `max_edges` edges.
pub fn random_simple_graph(rng: &mut StdRng, vertices: usize, max_edges: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..vertices).flat_map(|u| (u + 1..vertices).map(move |w| (u, w))).collect();
    let target = rng.gen_range(0..=max_edges.min(pairs.len()));
    let mut edges = Vec::with_capacity(target);
    for _ in 0..target {
        let k = rng.gen_range(0..pairs.len());
        edges.push(pairs.swap_remove(k));
    }
    Graph::new(vertices, edges).expect("valid random graph")
}

/// Random multigraph: endpoints drawn independently, so loops and parallel
/// edges both occur.
pub fn random_multigraph(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> Graph {
    let vertices = rng.gen_range(1..=max_vertices);
    let edge_count = rng.gen_range(0..=max_edges);
    let edges = (0..edge_count).map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices))).collect();
    Graph::new(vertices, edges).expect("valid random graph")
}

pub fn seeded_multigraphs(seed: u64, count: usize, max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_multigraph(&mut rng, max_vertices, max_edges)).collect()
}

pub fn seeded_simple_graphs(seed: u64, count: usize, max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.gen_range(2..=max_vertices);
            random_simple_graph(&mut rng, v, max_edges)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(current.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, current, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            current.swap(j, k - 1);
        }
    }
    heap(n, &mut current, &mut out);
    out
}

/// One simple connected graph per isomorphism class on exactly `n`
/// vertices, edges listed lexicographically.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w))).collect();
    let index = |u: usize, w: usize| pairs.iter().position(|&p| p == (u.min(w), u.max(w))).expect("pair");
    let perms = permutations(n);
    // pair k mapped under each permutation
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, w)| index(p[u], p[w])).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&k| mask >> k & 1 == 1).map(|k| pairs[k]).collect();
        let g = Graph::new(n, edges).expect("simple graph");
        if g.components(g.full_edge_set()).component_count != 1 {
            continue;
        }
        let canonical = images
            .iter()
            .map(|image| (0..pairs.len()).filter(|&k| mask >> k & 1 == 1).fold(0u64, |acc, k| acc | 1 << image[k]))
            .min()
            .expect("at least one permutation");
        if seen.insert(canonical) {
            let edges = (0..pairs.len()).filter(|&k| canonical >> k & 1 == 1).map(|k| pairs[k]).collect();
            out.push(Graph::new(n, edges).expect("simple graph"));
        }
    }
    out
}

/// All simple connected graphs with at most `n` vertices, up to isomorphism.
pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn pendant_fixtures_are_pendant() {
        for (name, g, e) in pendant_fixtures() {
            assert!(g.is_pendant_edge(e), "{name}");
        }
    }

    #[test]
    fn seeded_graphs_repeat() {
        assert_eq!(seeded_multigraphs(7, 5, 5, 8), seeded_multigraphs(7, 5, 5, 8));
        assert!(seeded_simple_graphs(3, 20, 6, 8).iter().all(|g| g.is_simple() && g.edge_count() <= 8));
    }

    #[test]
    fn named_graphs() {
        assert_eq!(k4_minus_edge().edge_count(), 5);
        assert_eq!(triangle_wedge().vertex_count(), 5);
        assert_eq!(fan_polygon(5, 2).edges()[5..], [(0, 2), (0, 3)]);
    }
}
