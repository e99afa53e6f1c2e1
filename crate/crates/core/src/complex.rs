//! Enhanced-state bases and signed differentials of the cochain complex
//! `C^{i,j}(G; A)`.
//!
//! A basis element of `C^i` is an edge subset `s` with `|s| = i` together
//! with one algebra basis index per component of `[G:s]`, components listed
//! by ascending minimal vertex. Bases are ordered by subset bitmask, then
//! lexicographically by coloring.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{Algebra, BasisIndex};
use crate::graph::{EdgeSet, Graph};
pub use crate::matrix::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("edge {0} is already in the state's subset")]
    EdgePresent(usize),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("degree slices need a graded algebra; use the total slice")]
    UngradedSlice,
    #[error("degree {degree} lies outside the certified window j <= {window}")]
    WindowExceeded { degree: u32, window: u32 },
    #[error("coloring does not match the components of the subset")]
    MalformedState,
}

/// Which part of `C^i` to build: one internal degree, or everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slice {
    Degree(u32),
    /// All states regardless of degree; the only slice for ungraded algebras.
    Total,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub subset: EdgeSet,
    pub coloring: Vec<BasisIndex>,
}

impl EnhancedState {
    pub fn height(&self) -> usize {
        self.subset.count_ones() as usize
    }

    pub fn degree(&self, algebra: &Algebra) -> u32 {
        self.coloring.iter().map(|&b| algebra.degree(b)).sum()
    }
}

#[derive(Clone, Debug)]
pub struct StateBasis {
    height: usize,
    slice: Slice,
    states: Vec<EnhancedState>,
    index: HashMap<EnhancedState, usize>,
}

impl StateBasis {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn slice(&self) -> Slice {
        self.slice
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[EnhancedState] {
        &self.states
    }

    pub fn position(&self, state: &EnhancedState) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// One `state#k: subset=0b..., colors=[...]` line per state.
    pub fn render(&self, algebra: &Algebra, edge_count: usize) -> String {
        let mut out = String::new();
        for (k, state) in self.states.iter().enumerate() {
            let colors: Vec<&str> = state.coloring.iter().map(|&b| algebra.labels()[usize::from(b)].as_str()).collect();
            let width = edge_count.max(1);
            let _ = writeln!(out, "state#{k}: subset=0b{:0width$b}, colors=[{}]", state.subset, colors.join(", "));
        }
        out
    }
}

/// Numbers of colorings of `k` components with a given total degree.
struct ColoringCounts {
    degrees: Vec<u32>,
    /// `table[k][d]`, for `d` up to the slice degree.
    table: Vec<Vec<u128>>,
}

impl ColoringCounts {
    fn new(algebra: &Algebra, max_components: usize, max_degree: u32) -> Self {
        let degrees = algebra.degrees().to_vec();
        let width = max_degree as usize + 1;
        let mut table = vec![vec![0u128; width]; max_components + 1];
        table[0][0] = 1;
        for k in 1..=max_components {
            for d in 0..width {
                table[k][d] = degrees
                    .iter()
                    .filter(|&&deg| deg as usize <= d)
                    .map(|&deg| table[k - 1][d - deg as usize])
                    .sum();
            }
        }
        ColoringCounts { degrees, table }
    }

    fn count(&self, k: usize, d: u32) -> u128 {
        self.table[k].get(d as usize).copied().unwrap_or(0)
    }

    /// All colorings of `k` components with total degree `d`, lexicographically.
    fn enumerate(&self, k: usize, d: u32, out: &mut Vec<Vec<BasisIndex>>) {
        fn walk(counts: &ColoringCounts, prefix: &mut Vec<BasisIndex>, left: usize, d: u32, out: &mut Vec<Vec<BasisIndex>>) {
            if left == 0 {
                out.push(prefix.clone());
                return;
            }
            for (b, &deg) in counts.degrees.iter().enumerate() {
                if deg <= d && counts.count(left - 1, d - deg) > 0 {
                    prefix.push(b as BasisIndex);
                    walk(counts, prefix, left - 1, d - deg, out);
                    prefix.pop();
                }
            }
        }
        walk(self, &mut Vec::with_capacity(k), k, d, out);
    }
}

fn all_colorings(rank: usize, k: usize, out: &mut Vec<Vec<BasisIndex>>) {
    let mut current = vec![0 as BasisIndex; k];
    loop {
        out.push(current.clone());
        // odometer increment, last position fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if usize::from(current[pos]) + 1 < rank {
                current[pos] += 1;
                break;
            }
            current[pos] = 0;
        }
    }
}

/// Subsets of `{0..n}` of size `i` in increasing bitmask order.
pub fn subsets_of_size(n: usize, i: usize) -> impl Iterator<Item = EdgeSet> {
    let limit: u128 = 1u128 << n;
    let first: Option<u64> = if i > n { None } else if i == 0 { Some(0) } else { Some(u64::MAX >> (64 - i)) };
    std::iter::successors(first, move |&x| {
        if x == 0 {
            return None;
        }
        let c = x & x.wrapping_neg();
        let r = x as u128 + c as u128;
        let next = (((r ^ x as u128) >> 2) / c as u128) | r;
        (next < limit).then_some(next as u64)
    })
}

fn check_slice(algebra: &Algebra, slice: Slice) -> Result<(), ComplexError> {
    match slice {
        Slice::Degree(_) if !algebra.is_graded() => Err(ComplexError::UngradedSlice),
        Slice::Degree(degree) => match algebra.window() {
            Some(window) if degree > window => Err(ComplexError::WindowExceeded { degree, window }),
            _ => Ok(()),
        },
        Slice::Total => Ok(()),
    }
}

pub fn enumerate_basis(graph: &Graph, algebra: &Algebra, height: usize, slice: Slice) -> Result<StateBasis, ComplexError> {
    check_slice(algebra, slice)?;
    let counts = match slice {
        Slice::Degree(j) => Some(ColoringCounts::new(algebra, graph.vertex_count(), j)),
        Slice::Total => None,
    };
    let mut states = Vec::new();
    let mut colorings = Vec::new();
    for subset in subsets_of_size(graph.edge_count(), height) {
        let k = graph.components(subset).component_count;
        colorings.clear();
        match (&counts, slice) {
            (Some(counts), Slice::Degree(j)) => counts.enumerate(k, j, &mut colorings),
            _ => all_colorings(algebra.rank(), k, &mut colorings),
        }
        states.extend(colorings.drain(..).map(|coloring| EnhancedState { subset, coloring }));
    }
    let index = states.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
    Ok(StateBasis { height, slice, states, index })
}

/// Image of one state under the per-edge map for `e` (without the sign).
pub fn per_edge_image(
    graph: &Graph,
    algebra: &Algebra,
    state: &EnhancedState,
    e: usize,
) -> Result<Vec<(EnhancedState, i64)>, ComplexError> {
    if e >= graph.edge_count() {
        return Err(ComplexError::EdgeOutOfRange(e));
    }
    if state.subset >> e & 1 == 1 {
        return Err(ComplexError::EdgePresent(e));
    }
    let partition = graph.components(state.subset);
    if partition.component_count != state.coloring.len() {
        return Err(ComplexError::MalformedState);
    }
    Ok(edge_image(graph, algebra, &partition.component_id, state, e))
}

fn edge_image(
    graph: &Graph,
    algebra: &Algebra,
    component_id: &[usize],
    state: &EnhancedState,
    e: usize,
) -> Vec<(EnhancedState, i64)> {
    let subset = state.subset | 1 << e;
    let (u, w) = graph.edge(e);
    let (cu, cw) = (component_id[u], component_id[w]);
    if cu == cw {
        return vec![(EnhancedState { subset, coloring: state.coloring.clone() }, 1)];
    }
    // the merged component keeps the slot of the one with the smaller minimal vertex
    let (c1, c2) = (cu.min(cw), cu.max(cw));
    let product = algebra.product(usize::from(state.coloring[c1]), usize::from(state.coloring[c2]));
    product
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(m, &c)| {
            let mut coloring = state.coloring.clone();
            coloring[c1] = m as BasisIndex;
            coloring.remove(c2);
            (EnhancedState { subset, coloring }, c)
        })
        .collect()
}

/// `(-1)^(number of edges of s below e)`.
pub fn edge_sign(subset: EdgeSet, e: usize) -> i64 {
    let below = subset & ((1u64 << e) - 1);
    if below.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Matrix of `d: span(source) -> span(target)`; one column per source state.
///
/// # Panics
/// If an image leaves the target basis, which means the bases do not belong
/// to consecutive heights of the same slice.
pub fn differential_between(graph: &Graph, algebra: &Algebra, source: &StateBasis, target: &StateBasis) -> IntMatrix {
    let n = graph.edge_count();
    let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut cached: Option<(EdgeSet, Vec<usize>)> = None;
    for (col, state) in source.states().iter().enumerate() {
        if cached.as_ref().is_none_or(|(s, _)| *s != state.subset) {
            cached = Some((state.subset, graph.components(state.subset).component_id));
        }
        let component_id = &cached.as_ref().expect("cached partition").1;
        for e in (0..n).filter(|&e| state.subset >> e & 1 == 0) {
            let sign = edge_sign(state.subset, e);
            for (image, coefficient) in edge_image(graph, algebra, component_id, state, e) {
                let row = target.position(&image).expect("image state lies in the target basis");
                triplets.push((row, col, BigInt::from(sign * coefficient)));
            }
        }
    }
    IntMatrix::from_triplets(target.len(), source.len(), triplets)
}

/// `d^{i}` restricted to one slice, mapping `C^{i}` to `C^{i+1}`.
pub fn differential(graph: &Graph, algebra: &Algebra, height: usize, slice: Slice) -> Result<IntMatrix, ComplexError> {
    let source = enumerate_basis(graph, algebra, height, slice)?;
    let target = enumerate_basis(graph, algebra, height + 1, slice)?;
    Ok(differential_between(graph, algebra, &source, &target))
}

/// All heights of one slice: bases `C^0..=C^n` and differentials `d^0..d^{n-1}`.
#[derive(Clone, Debug)]
pub struct SliceComplex {
    pub slice: Slice,
    pub bases: Vec<StateBasis>,
    pub differentials: Vec<IntMatrix>,
}

impl SliceComplex {
    pub fn build(graph: &Graph, algebra: &Algebra, slice: Slice) -> Result<Self, ComplexError> {
        let bases = (0..=graph.edge_count())
            .map(|i| enumerate_basis(graph, algebra, i, slice))
            .collect::<Result<Vec<_>, _>>()?;
        let differentials = bases
            .windows(2)
            .map(|pair| differential_between(graph, algebra, &pair[0], &pair[1]))
            .collect();
        Ok(SliceComplex { slice, bases, differentials })
    }

    /// Heights `i` where `d^{i+1} d^{i}` is nonzero.
    pub fn d_squared_failures(&self) -> Vec<usize> {
        self.differentials
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| !pair[1].mul(&pair[0]).is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// `histogram[i][c]`: number of edge subsets of size `i` whose spanning
/// subgraph has `c` components.
pub fn component_histogram(graph: &Graph) -> Vec<Vec<u64>> {
    let n = graph.edge_count();
    let mut histogram = vec![vec![0u64; graph.vertex_count() + 1]; n + 1];
    for i in 0..=n {
        for subset in subsets_of_size(n, i) {
            histogram[i][graph.components(subset).component_count] += 1;
        }
    }
    histogram
}

/// Ranks of `C^{i}` restricted to `slice` for every height, from a histogram.
pub fn chain_dimensions(histogram: &[Vec<u64>], algebra: &Algebra, slice: Slice) -> Vec<u128> {
    let max_components = histogram.first().map_or(0, |row| row.len().saturating_sub(1));
    let counts = match slice {
        Slice::Degree(j) => Some(ColoringCounts::new(algebra, max_components, j)),
        Slice::Total => None,
    };
    histogram
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(k, &subsets)| {
                    let per_subset = match (&counts, slice) {
                        (Some(counts), Slice::Degree(j)) => counts.count(k, j),
                        _ => (algebra.rank() as u128).pow(k as u32),
                    };
                    u128::from(subsets) * per_subset
                })
                .sum()
        })
        .collect()
}

/// Debug listing of one slice at height `i`: source basis, target basis and
/// the `(row, col, value)` triplets of `d^{i}`.
pub fn render_debug_dump(graph: &Graph, algebra: &Algebra, height: usize, slice: Slice) -> Result<String, ComplexError> {
    let source = enumerate_basis(graph, algebra, height, slice)?;
    let target = enumerate_basis(graph, algebra, height + 1, slice)?;
    let d = differential_between(graph, algebra, &source, &target);
    let label = match slice {
        Slice::Degree(j) => format!("({height}, {j})"),
        Slice::Total => format!("({height}, *)"),
    };
    let mut out = format!("# C^{label}: {} states\n", source.len());
    out.push_str(&source.render(algebra, graph.edge_count()));
    let _ = writeln!(out, "# C^{{+1}}: {} states", target.len());
    out.push_str(&target.render(algebra, graph.edge_count()));
    let _ = writeln!(out, "# d: {}x{}, {} nonzero", d.rows(), d.cols(), d.nnz());
    out.push_str(&d.to_string());
    Ok(out)
}
