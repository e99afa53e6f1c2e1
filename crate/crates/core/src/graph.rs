//! Finite multigraphs with an ordered edge list.
//!
//! The order of the edge list is significant: it fixes the signs of the
//! differential, and edge subsets are encoded as bitmasks where bit `k`
//! stands for edge `k`. Loops and parallel edges are allowed everywhere
//! except as the argument of [`Graph::contract_edge`].

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bitmask over the edge list of a graph; bit `k` is edge `k`.
pub type EdgeSet = u64;

/// Largest edge count representable by an [`EdgeSet`].
pub const MAX_EDGES: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("edge index {index} out of range for a graph with {edge_count} edges")]
    EdgeOutOfRange { index: usize, edge_count: usize },
    #[error("edge {0} is a loop and cannot be contracted")]
    ContractLoop(usize),
    #[error("graph has {0} edges, at most {MAX_EDGES} are supported")]
    TooManyEdges(usize),
    #[error("{0}")]
    InvalidGenerator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// Connected components of a spanning subgraph, numbered by ascending
/// minimal vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub component_id: Vec<usize>,
    pub component_count: usize,
}

impl ComponentPartition {
    /// Vertex counts per component.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.component_count];
        for &c in &self.component_id {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Cycle information of the simplified graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleStructure {
    /// The graph has at least one loop.
    Loop,
    /// After collapsing parallel edges the graph is a forest.
    Acyclic,
    /// `girth` is the shortest cycle length of the simplified graph (at least 3).
    Cycles {
        girth: usize,
        has_odd: bool,
        has_even: bool,
    },
}

impl CycleStructure {
    pub fn has_cycle_of_length_at_least_three(&self) -> bool {
        matches!(self, CycleStructure::Cycles { .. })
    }
}

/// Vertex and edge counts of one connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentShape {
    pub vertices: usize,
    pub edges: usize,
}

impl ComponentShape {
    pub fn is_tree(&self) -> bool {
        self.edges + 1 == self.vertices
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so roots are minimal vertices
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if edges.len() > MAX_EDGES {
            return Err(GraphError::TooManyEdges(edges.len()));
        }
        for &(u, w) in &edges {
            for vertex in [u, w] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex, vertex_count });
                }
            }
        }
        Ok(Graph { vertex_count, edges })
    }

    /// Graph with `n` vertices and no edges.
    pub fn null(n: usize) -> Self {
        Graph { vertex_count: n, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn full_edge_set(&self) -> EdgeSet {
        if self.edges.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.edges.len())
        }
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, w)| u == w)
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loop() && self.simplify().edge_count() == self.edge_count()
    }

    /// Degree of `v`; a loop contributes two.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn isolated_vertex_count(&self) -> usize {
        (0..self.vertex_count).filter(|&v| self.degree(v) == 0).count()
    }

    /// An edge with an endpoint of degree one.
    pub fn is_pendant_edge(&self, e: usize) -> bool {
        let (u, w) = self.edges[e];
        u != w && (self.degree(u) == 1 || self.degree(w) == 1)
    }

    pub fn pendant_edges(&self) -> Vec<usize> {
        (0..self.edge_count()).filter(|&e| self.is_pendant_edge(e)).collect()
    }

    /// Components of the spanning subgraph `[G:s]`.
    pub fn components(&self, subset: EdgeSet) -> ComponentPartition {
        let mut sets = DisjointSets::new(self.vertex_count);
        let mut rest = subset;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (u, w) = self.edges[e];
            sets.union(u, w);
        }
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut component_id = vec![0; self.vertex_count];
        let mut count = 0;
        for v in 0..self.vertex_count {
            let root = sets.find(v);
            if label[root] == usize::MAX {
                label[root] = count;
                count += 1;
            }
            component_id[v] = label[root];
        }
        ComponentPartition { component_id, component_count: count }
    }

    /// Shapes of the connected components of the whole graph, in canonical order.
    pub fn component_shapes(&self) -> Vec<ComponentShape> {
        let partition = self.components(self.full_edge_set());
        let mut shapes = vec![ComponentShape { vertices: 0, edges: 0 }; partition.component_count];
        for &c in &partition.component_id {
            shapes[c].vertices += 1;
        }
        for &(u, _) in &self.edges {
            shapes[partition.component_id[u]].edges += 1;
        }
        shapes
    }

    pub fn delete_edge(&self, e: usize) -> Result<Graph, GraphError> {
        self.check_edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Graph { vertex_count: self.vertex_count, edges })
    }

    /// Identify the endpoints of `e`. The smaller endpoint survives and larger
    /// vertex indices shift down by one; the remaining edges keep their order.
    pub fn contract_edge(&self, e: usize) -> Result<Graph, GraphError> {
        self.check_edge(e)?;
        let (u, w) = self.edges[e];
        if u == w {
            return Err(GraphError::ContractLoop(e));
        }
        let (keep, gone) = if u < w { (u, w) } else { (w, u) };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != e)
            .map(|(_, &(a, b))| (contracted_vertex(a, keep, gone), contracted_vertex(b, keep, gone)))
            .collect();
        Ok(Graph { vertex_count: self.vertex_count - 1, edges })
    }

    /// Vertex of the contracted graph that `v` lands on when `e` is contracted.
    pub fn contraction_vertex_map(&self, e: usize) -> Result<Vec<usize>, GraphError> {
        self.check_edge(e)?;
        let (u, w) = self.edges[e];
        if u == w {
            return Err(GraphError::ContractLoop(e));
        }
        let (keep, gone) = if u < w { (u, w) } else { (w, u) };
        Ok((0..self.vertex_count).map(|v| contracted_vertex(v, keep, gone)).collect())
    }

    /// Collapse each class of parallel edges to its first member. Loops stay.
    pub fn simplify(&self) -> Graph {
        let mut seen = BTreeSet::new();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, w)| u == w || seen.insert((u.min(w), u.max(w))))
            .collect();
        Graph { vertex_count: self.vertex_count, edges }
    }

    /// Reorder edges: edge `k` of the result is edge `order[k]` of `self`.
    pub fn permute_edges(&self, order: &[usize]) -> Result<Graph, GraphError> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.edge_count()).collect::<Vec<_>>() {
            return Err(GraphError::InvalidGenerator(format!(
                "{order:?} is not a permutation of the {} edges",
                self.edge_count()
            )));
        }
        let edges = order.iter().map(|&k| self.edges[k]).collect();
        Ok(Graph { vertex_count: self.vertex_count, edges })
    }

    /// Same graph with edge `e` moved to the end of the edge order.
    pub fn with_edge_last(&self, e: usize) -> Result<Graph, GraphError> {
        self.check_edge(e)?;
        let mut order: Vec<usize> = (0..self.edge_count()).filter(|&k| k != e).collect();
        order.push(e);
        self.permute_edges(&order)
    }

    pub fn shortest_cycle_parity(&self) -> CycleStructure {
        if self.has_loop() {
            return CycleStructure::Loop;
        }
        let simple = self.simplify();
        let adjacency = simple.adjacency();
        let Some(girth) = girth(&adjacency) else {
            return CycleStructure::Acyclic;
        };
        let has_odd = !is_bipartite(&adjacency);
        let has_even = blocks(&adjacency).iter().any(|block| {
            let vertices: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
            // a 2-connected block that is not a single cycle contains a theta,
            // and two of its three paths close an even cycle
            vertices.len() >= 3 && (block.len() > vertices.len() || vertices.len().is_multiple_of(2))
        });
        CycleStructure::Cycles { girth, has_odd, has_even }
    }

    /// Whether the simplified graph has a cycle of exactly `len` vertices.
    pub fn contains_cycle_of_length(&self, len: usize) -> bool {
        if len < 3 {
            return false;
        }
        let adjacency = self.simplify().adjacency();
        let n = adjacency.len();
        let mut on_path = vec![false; n];
        fn extend(
            adjacency: &[Vec<usize>],
            start: usize,
            current: usize,
            depth: usize,
            len: usize,
            on_path: &mut [bool],
        ) -> bool {
            if depth == len {
                return adjacency[current].contains(&start);
            }
            for &next in &adjacency[current] {
                if next > start && !on_path[next] {
                    on_path[next] = true;
                    let found = extend(adjacency, start, next, depth + 1, len, on_path);
                    on_path[next] = false;
                    if found {
                        return true;
                    }
                }
            }
            false
        }
        (0..n).any(|start| {
            on_path[start] = true;
            let found = extend(&adjacency, start, start, 1, len, &mut on_path);
            on_path[start] = false;
            found
        })
    }

    /// Neighbour lists, ignoring loops and parallel duplicates.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adjacency = vec![Vec::new(); self.vertex_count];
        for &(u, w) in &self.edges {
            if u != w && !adjacency[u].contains(&w) {
                adjacency[u].push(w);
                adjacency[w].push(u);
            }
        }
        adjacency
    }

    /// Compact lossless description, `V:u-w,u-w,...`.
    pub fn fingerprint(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|(u, w)| format!("{u}-{w}")).collect();
        format!("{}:{}", self.vertex_count, edges.join(","))
    }

    fn check_edge(&self, e: usize) -> Result<(), GraphError> {
        if e >= self.edges.len() {
            return Err(GraphError::EdgeOutOfRange { index: e, edge_count: self.edges.len() });
        }
        Ok(())
    }
}

fn contracted_vertex(v: usize, keep: usize, gone: usize) -> usize {
    use std::cmp::Ordering;
    match v.cmp(&gone) {
        Ordering::Less => v,
        Ordering::Equal => keep,
        Ordering::Greater => v - 1,
    }
}

fn girth(adjacency: &[Vec<usize>]) -> Option<usize> {
    let n = adjacency.len();
    let mut best: Option<usize> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

fn is_bipartite(adjacency: &[Vec<usize>]) -> bool {
    let n = adjacency.len();
    let mut side = vec![u8::MAX; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Biconnected blocks of a simple graph, each as its edge list.
fn blocks(adjacency: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    struct Search<'a> {
        adjacency: &'a [Vec<usize>],
        order: Vec<usize>,
        low: Vec<usize>,
        counter: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }

    impl Search<'_> {
        fn visit(&mut self, v: usize, parent: usize) {
            self.counter += 1;
            self.order[v] = self.counter;
            self.low[v] = self.counter;
            for idx in 0..self.adjacency[v].len() {
                let w = self.adjacency[v][idx];
                if self.order[w] == 0 {
                    self.stack.push((v, w));
                    self.visit(w, v);
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.order[v] {
                        let mut block = Vec::new();
                        while let Some(edge) = self.stack.pop() {
                            block.push(edge);
                            if edge == (v, w) {
                                break;
                            }
                        }
                        self.blocks.push(block);
                    }
                } else if w != parent && self.order[w] < self.order[v] {
                    self.stack.push((v, w));
                    self.low[v] = self.low[v].min(self.order[w]);
                }
            }
        }
    }

    let n = adjacency.len();
    let mut search = Search {
        adjacency,
        order: vec![0; n],
        low: vec![0; n],
        counter: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..n {
        if search.order[v] == 0 {
            search.visit(v, usize::MAX);
        }
    }
    search.blocks
}

// Generators.

impl Graph {
    /// Path on `n` vertices.
    pub fn path(n: usize) -> Graph {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Graph { vertex_count: n, edges }
    }

    /// Polygon with `n` edges: edge `i` joins `v_i` and `v_{i+1 mod n}`.
    /// `cycle(1)` is a single loop and `cycle(2)` a double edge.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 1 {
            return Err(GraphError::InvalidGenerator("a cycle needs at least one vertex".into()));
        }
        if n > MAX_EDGES {
            return Err(GraphError::TooManyEdges(n));
        }
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Ok(Graph { vertex_count: n, edges })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w))).collect();
        Graph::new(n, edges)
    }

    /// Polygon on `v` vertices followed by the listed chords, in order.
    /// Whether the chords can be drawn without crossing is not checked.
    pub fn polygon_with_diagonals(v: usize, diagonals: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = Graph::cycle(v)?.edges;
        edges.extend_from_slice(diagonals);
        Graph::new(v, edges)
    }

    /// One-vertex product: vertex `b` of `other` is glued onto vertex `a` of
    /// `self`. The remaining vertices of `other` follow those of `self` in
    /// their original order, and edges of `self` precede edges of `other`.
    pub fn wedge(&self, a: usize, other: &Graph, b: usize) -> Result<Graph, GraphError> {
        if a >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange { vertex: a, vertex_count: self.vertex_count });
        }
        if b >= other.vertex_count {
            return Err(GraphError::VertexOutOfRange { vertex: b, vertex_count: other.vertex_count });
        }
        let offset = self.vertex_count;
        let relabel = |v: usize| match v.cmp(&b) {
            std::cmp::Ordering::Less => offset + v,
            std::cmp::Ordering::Equal => a,
            std::cmp::Ordering::Greater => offset + v - 1,
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, w)| (relabel(u), relabel(w))));
        Graph::new(self.vertex_count + other.vertex_count - 1, edges)
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let offset = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, w)| (u + offset, w + offset)));
        Graph::new(self.vertex_count + other.vertex_count, edges)
    }

    /// Add an edge at the end of the edge order.
    pub fn with_edge(&self, u: usize, w: usize) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((u, w));
        Graph::new(self.vertex_count, edges)
    }

    /// Add a new vertex joined to `v` by a pendant edge placed last.
    pub fn with_pendant(&self, v: usize) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((v, self.vertex_count));
        Graph::new(self.vertex_count + 1, edges)
    }
}

// Text and JSON formats.

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Parse `vertices N` followed by one `u w` line per edge. Blank lines and
    /// `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Graph, GraphError> {
        let mut vertex_count = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| GraphError::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match vertex_count {
                None => {
                    if fields.len() != 2 || fields[0] != "vertices" {
                        return Err(parse_err(format!("expected `vertices N`, found `{line}`")));
                    }
                    let n = fields[1]
                        .parse::<usize>()
                        .map_err(|_| parse_err(format!("bad vertex count `{}`", fields[1])))?;
                    vertex_count = Some(n);
                }
                Some(n) => {
                    if fields.len() != 2 {
                        return Err(parse_err(format!("expected an edge `u w`, found `{line}`")));
                    }
                    let mut ends = [0usize; 2];
                    for (slot, field) in ends.iter_mut().zip(&fields) {
                        *slot = field
                            .parse()
                            .map_err(|_| parse_err(format!("bad vertex `{field}`")))?;
                        if *slot >= n {
                            return Err(parse_err(format!("vertex {slot} out of range 0..{n}")));
                        }
                    }
                    edges.push((ends[0], ends[1]));
                    if edges.len() > MAX_EDGES {
                        return Err(GraphError::TooManyEdges(edges.len()));
                    }
                }
            }
        }
        let vertex_count = vertex_count.ok_or(GraphError::Parse {
            line: 1,
            message: "missing `vertices N` header".into(),
        })?;
        Graph::new(vertex_count, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for (u, w) in &self.edges {
            out.push_str(&format!("{u} {w}\n"));
        }
        out
    }

    pub fn parse_json(text: &str) -> Result<Graph, GraphError> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::new(raw.vertices, raw.edges.into_iter().map(|[u, w]| (u, w)).collect())
    }

    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, w)| [u, w]).collect(),
        };
        serde_json::to_string(&raw).expect("graph serializes")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fingerprint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::cycle(3).unwrap()
    }

    #[test]
    fn components_of_triangle() {
        let g = triangle();
        assert_eq!(g.components(0).component_count, 3);
        let one = g.components(0b001);
        assert_eq!(one.component_count, 2);
        assert_eq!(one.component_id, vec![0, 0, 1]);
        assert_eq!(g.components(0b111).component_count, 1);
    }

    #[test]
    fn components_numbered_by_minimal_vertex() {
        let g = Graph::new(4, vec![(2, 3), (0, 3)]).unwrap();
        let p = g.components(0b01);
        assert_eq!(p.component_id, vec![0, 1, 2, 2]);
        let p = g.components(0b11);
        assert_eq!(p.component_id, vec![0, 1, 0, 0]);
    }

    #[test]
    fn delete_edges() {
        let p3 = triangle().delete_edge(1).unwrap();
        assert_eq!(p3.vertex_count(), 3);
        assert_eq!(p3.edges(), &[(0, 1), (2, 0)]);
        let looped = Graph::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let gone = looped.delete_edge(1).unwrap();
        assert_eq!(gone.vertex_count(), 2);
        assert!(!gone.has_loop());
        let k4 = Graph::complete(4).unwrap().delete_edge(0).unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 5));
        assert!(triangle().delete_edge(3).is_err());
    }

    #[test]
    fn contractions() {
        let p2 = triangle().contract_edge(0).unwrap();
        assert_eq!(p2.vertex_count(), 2);
        assert_eq!(p2.edges(), &[(0, 1), (1, 0)]);
        let p1 = p2.contract_edge(0).unwrap();
        assert_eq!(p1.vertex_count(), 1);
        assert_eq!(p1.edges(), &[(0, 0)]);
        assert_eq!(p1.contract_edge(0), Err(GraphError::ContractLoop(0)));
        let path = Graph::path(3).contract_edge(0).unwrap();
        assert_eq!(path, Graph::path(2));
    }

    #[test]
    fn simplify_collapses_parallels() {
        let p2 = Graph::cycle(2).unwrap();
        assert_eq!(p2.simplify(), Graph::path(2));
        let wedge = triangle().wedge(0, &triangle(), 0).unwrap();
        assert_eq!(wedge.simplify(), wedge);
        let looped = Graph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(looped.simplify(), looped);
    }

    #[test]
    fn cycle_structure() {
        match Graph::cycle(5).unwrap().shortest_cycle_parity() {
            CycleStructure::Cycles { girth, has_odd, has_even } => {
                assert_eq!(girth, 5);
                assert!(has_odd && !has_even);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            Graph::complete(4).unwrap().shortest_cycle_parity(),
            CycleStructure::Cycles { girth: 3, has_odd: true, has_even: true }
        );
        assert_eq!(
            Graph::cycle(4).unwrap().shortest_cycle_parity(),
            CycleStructure::Cycles { girth: 4, has_odd: false, has_even: true }
        );
        assert_eq!(Graph::path(5).shortest_cycle_parity(), CycleStructure::Acyclic);
        assert_eq!(Graph::cycle(2).unwrap().shortest_cycle_parity(), CycleStructure::Acyclic);
        assert_eq!(Graph::cycle(1).unwrap().shortest_cycle_parity(), CycleStructure::Loop);
        // two triangles sharing a vertex: odd cycles only
        let bowtie = triangle().wedge(0, &triangle(), 0).unwrap();
        assert_eq!(
            bowtie.shortest_cycle_parity(),
            CycleStructure::Cycles { girth: 3, has_odd: true, has_even: false }
        );
    }

    #[test]
    fn cycle_search() {
        let k4 = Graph::complete(4).unwrap();
        assert!(k4.contains_cycle_of_length(3));
        assert!(k4.contains_cycle_of_length(4));
        assert!(!k4.contains_cycle_of_length(5));
        assert!(!Graph::cycle(5).unwrap().contains_cycle_of_length(4));
    }

    #[test]
    fn generators() {
        assert_eq!(Graph::cycle(3).unwrap().edges(), &[(0, 1), (1, 2), (2, 0)]);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        let wedge = triangle().wedge(0, &triangle(), 0).unwrap();
        assert_eq!((wedge.vertex_count(), wedge.edge_count()), (5, 6));
        assert_eq!(wedge.degree(0), 4);
        assert!(Graph::cycle(0).is_err());
        let square = Graph::polygon_with_diagonals(4, &[(0, 2)]).unwrap();
        assert_eq!(square.edge_count(), 5);
    }

    #[test]
    fn text_format() {
        let g = Graph::parse_text("vertices 3\n0 1\n1 2 # second\n\n2 0\n").unwrap();
        assert_eq!(g, triangle());
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
        let err = Graph::parse_text("vertices 3\n0 1\n1 x\n").unwrap_err();
        assert_eq!(err, GraphError::Parse { line: 3, message: "bad vertex `x`".into() });
        assert!(matches!(Graph::parse_text("vertices 2\n0 5\n"), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn json_format() {
        let g = Graph::parse_json(r#"{"vertices": 3, "edges": [[0,1],[1,2],[2,0]]}"#).unwrap();
        assert_eq!(g, triangle());
        assert_eq!(Graph::parse_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn edge_cap() {
        let edges = vec![(0, 1); 64];
        assert_eq!(Graph::new(2, edges), Err(GraphError::TooManyEdges(64)));
    }
}
