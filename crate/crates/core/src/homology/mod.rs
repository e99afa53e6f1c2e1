//! Cohomology groups `H^{i,j} = ker d^{i,j} / im d^{i-1,j}` from Smith forms.

pub mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::complex::{self, ComplexError, Slice};
use crate::graph::Graph;
use crate::matrix::IntMatrix;
use crate::polynomial::{Polynomial, TwoVarPolynomial};

pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("estimated memory {estimate} bytes exceeds the cap of {cap} bytes")]
    ResourceCap { estimate: u128, cap: u64 },
    #[error("rank {rank_in} + {rank_out} exceeds chain dimension {dim}; the differentials are inconsistent")]
    RankViolation { dim: usize, rank_in: usize, rank_out: usize },
    #[error("d^{} d^{} is nonzero on slice {slice:?}", .height + 1, .height)]
    DSquared { height: usize, slice: Slice },
    #[error("H^0 has torsion at degree {0}")]
    TorsionInHeightZero(u32),
    #[error("a degree range needs a graded algebra")]
    DegreesNeedGrading,
    #[error("Poincaré series needs a graded computation")]
    Ungraded,
    #[error("no generator with leading coefficient +-1; the quotient has infinite rank")]
    NoMonicGenerator,
    #[error("degree bound {bound} is too small; at least {needed} is needed")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error("malformed homology JSON: {0}")]
    Json(String),
}

/// Finitely generated abelian group `Z^r ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_k}` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    /// Direct sum of `Z^free_rank` and the given cyclic groups, brought to
    /// invariant factor form. Orders `1` are dropped and `0` counts as `Z`.
    pub fn new(free_rank: usize, cyclic_orders: impl IntoIterator<Item = BigUint>) -> Self {
        let mut free_rank = free_rank;
        let mut orders = Vec::new();
        for d in cyclic_orders {
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                orders.push(d);
            }
        }
        let torsion = snf::divisibility_chain(orders).into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, [BigUint::from(order)])
    }

    /// Convenience constructor from small orders.
    pub fn from_orders(free_rank: usize, orders: &[u64]) -> Self {
        Self::new(free_rank, orders.iter().map(|&d| BigUint::from(d)))
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        Self::new(self.free_rank + other.free_rank, self.torsion.iter().chain(&other.torsion).cloned())
    }

    /// Direct sum of `copies` copies of this group.
    pub fn repeated(&self, copies: usize) -> AbelianGroup {
        Self::new(
            self.free_rank * copies,
            std::iter::repeat_n(self.torsion.iter().cloned(), copies).flatten(),
        )
    }

    /// Whether the torsion subgroup has an element of order exactly `n`.
    pub fn has_element_of_order(&self, n: u64) -> bool {
        n >= 1
            && self
                .torsion
                .last()
                .is_some_and(|top| (top % BigUint::from(n)).is_zero())
    }

    /// Torsion as prime powers, ascending. Factors too large to factor by
    /// trial division are kept whole.
    pub fn primary_decomposition(&self) -> Vec<BigUint> {
        let mut out = Vec::new();
        for d in &self.torsion {
            match d.to_u64() {
                Some(n) => out.extend(prime_powers(n).into_iter().map(BigUint::from)),
                None => out.push(d.clone()),
            }
        }
        out.sort();
        out
    }

    /// `[k_l]` tokens for the torsion, grouping equal invariant factors.
    fn bracket_tokens(&self) -> Vec<String> {
        let mut tokens = Vec::new();
        let mut k = 0;
        while k < self.torsion.len() {
            let run = self.torsion[k..].iter().take_while(|d| **d == self.torsion[k]).count();
            tokens.push(format!("[{run}_{}]", self.torsion[k]));
            k += run;
        }
        tokens
    }
}

fn prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for AbelianGroup {
    /// `Z^2 ⊕ Z_2 ⊕ Z_6`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut k = 0;
        while k < self.torsion.len() {
            let run = self.torsion[k..].iter().take_while(|d| **d == self.torsion[k]).count();
            parts.push(if run == 1 { format!("Z_{}", self.torsion[k]) } else { format!("Z_{}^{run}", self.torsion[k]) });
            k += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// `H = ker d_out / im d_in` on a chain group of rank `dim`.
pub fn homology_group(dim: usize, d_in: Option<&SnfResult>, d_out_rank: usize) -> Result<AbelianGroup, HomologyError> {
    let rank_in = d_in.map_or(0, |s| s.rank);
    let free = dim
        .checked_sub(rank_in + d_out_rank)
        .ok_or(HomologyError::RankViolation { dim, rank_in, rank_out: d_out_rank })?;
    Ok(AbelianGroup::new(free, d_in.map(SnfResult::torsion).unwrap_or_default()))
}

#[derive(Clone, Debug, Default)]
pub struct ComputeOptions {
    /// Inclusive degree range; defaults to every degree the complex can reach.
    pub degrees: Option<(u32, u32)>,
    /// Multiply consecutive differentials and fail if a product is nonzero.
    pub check_d_squared: bool,
    /// Refuse to start when the estimated peak memory exceeds this many bytes.
    pub memory_cap: Option<u64>,
}

/// All groups `H^{i,j}(G; A)`. Only nontrivial groups are stored. For an
/// ungraded algebra every group sits at `j = 0` and holds the whole height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedHomology {
    pub algebra: String,
    pub graph: String,
    pub graded: bool,
    pub window: Option<u32>,
    /// Degrees covered by the computation (graded case).
    pub degrees: Option<(u32, u32)>,
    groups: BTreeMap<(usize, u32), AbelianGroup>,
}

impl BigradedHomology {
    pub fn new(algebra: &Algebra, graph: &Graph, degrees: Option<(u32, u32)>) -> Self {
        BigradedHomology {
            algebra: algebra.spec().to_string(),
            graph: graph.fingerprint(),
            graded: algebra.is_graded(),
            window: algebra.window(),
            degrees,
            groups: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, i: usize, j: u32, group: AbelianGroup) {
        if group.is_trivial() {
            self.groups.remove(&(i, j));
        } else {
            self.groups.insert((i, j), group);
        }
    }

    pub fn group(&self, i: usize, j: u32) -> AbelianGroup {
        self.groups.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nontrivial groups in ascending `(i, j)` order.
    pub fn groups(&self) -> impl Iterator<Item = ((usize, u32), &AbelianGroup)> {
        self.groups.iter().map(|(k, g)| (*k, g))
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.is_empty()
    }

    /// `H^i` with the internal grading forgotten.
    pub fn height(&self, i: usize) -> AbelianGroup {
        self.groups
            .range((i, 0)..=(i, u32::MAX))
            .fold(AbelianGroup::trivial(), |acc, (_, g)| acc.direct_sum(g))
    }

    pub fn max_height(&self) -> Option<usize> {
        self.groups.keys().map(|&(i, _)| i).max()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.values().any(AbelianGroup::has_torsion)
    }

    pub fn torsion_locations(&self) -> Vec<(usize, u32)> {
        self.groups.iter().filter(|(_, g)| g.has_torsion()).map(|(k, _)| *k).collect()
    }

    /// `H^i` written with degree shifts, e.g. `Z{1} ⊕ Z_2{2}`.
    pub fn render_height(&self, i: usize) -> String {
        let parts: Vec<String> = self
            .groups
            .range((i, 0)..=(i, u32::MAX))
            .map(|(&(_, j), g)| if self.graded { format!("{g}{{{j}}}") } else { g.to_string() })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }

    /// Grid with one column per height and one row per degree. A cell lists
    /// the free rank and `[k_l]` for `k` copies of `Z_l`; empty cells are `.`.
    pub fn render_table(&self) -> String {
        let mut out = format!("# H^{{i,j}}  graph {}  algebra {}\n", self.graph, self.algebra);
        if self.groups.is_empty() {
            out.push_str("all groups trivial\n");
            return out;
        }
        let max_i = self.max_height().unwrap_or(0);
        let mut js: Vec<u32> = self.groups.keys().map(|&(_, j)| j).collect();
        js.sort_unstable();
        js.dedup();
        if self.graded {
            if let Some((lo, hi)) = self.degrees {
                js = (lo..=hi).collect();
            }
        }
        let cell = |i: usize, j: u32| -> String {
            let g = self.group(i, j);
            let mut tokens = Vec::new();
            if g.free_rank() > 0 {
                tokens.push(g.free_rank().to_string());
            }
            tokens.extend(g.bracket_tokens());
            if tokens.is_empty() {
                ".".to_string()
            } else {
                tokens.join(" ")
            }
        };
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec![if self.graded { "j\\i".to_string() } else { "i".to_string() }];
        header.extend((0..=max_i).map(|i| i.to_string()));
        rows.push(header);
        for &j in js.iter().rev() {
            let mut row = vec![if self.graded { j.to_string() } else { "*".to_string() }];
            row.extend((0..=max_i).map(|i| cell(i, j)));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..=max_i + 1)
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(1))
            .collect();
        for row in rows {
            let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = JsonHomology {
            algebra: self.algebra.clone(),
            graph: self.graph.clone(),
            graded: self.graded,
            window: self.window,
            degrees: self.degrees.map(|(a, b)| [a, b]),
            groups: self
                .groups
                .iter()
                .map(|(&(i, j), g)| JsonGroup {
                    i,
                    j: self.graded.then_some(j),
                    free: g.free_rank,
                    torsion: g.torsion.iter().map(JsonInt::from_big).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("homology serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        let doc: JsonHomology = serde_json::from_str(text).map_err(|e| HomologyError::Json(e.to_string()))?;
        let mut h = BigradedHomology {
            algebra: doc.algebra,
            graph: doc.graph,
            graded: doc.graded,
            window: doc.window,
            degrees: doc.degrees.map(|[a, b]| (a, b)),
            groups: BTreeMap::new(),
        };
        for g in doc.groups {
            let torsion = g.torsion.iter().map(JsonInt::to_big).collect::<Result<Vec<_>, _>>()?;
            h.insert(g.i, g.j.unwrap_or(0), AbelianGroup::new(g.free, torsion));
        }
        Ok(h)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonHomology {
    algebra: String,
    graph: String,
    #[serde(default = "default_graded")]
    graded: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degrees: Option<[u32; 2]>,
    groups: Vec<JsonGroup>,
}

fn default_graded() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
struct JsonGroup {
    i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<u32>,
    free: usize,
    torsion: Vec<JsonInt>,
}

/// Torsion order: a JSON number when it fits in `u64`, else a decimal string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(u64),
    Big(String),
}

impl JsonInt {
    fn from_big(d: &BigUint) -> Self {
        d.to_u64().map_or_else(|| JsonInt::Big(d.to_string()), JsonInt::Small)
    }

    fn to_big(&self) -> Result<BigUint, HomologyError> {
        match self {
            JsonInt::Small(n) => Ok(BigUint::from(*n)),
            JsonInt::Big(s) => s.parse().map_err(|_| HomologyError::Json(format!("bad torsion order `{s}`"))),
        }
    }
}

/// Degree range a computation covers by default.
pub fn default_degrees(graph: &Graph, algebra: &Algebra) -> (u32, u32) {
    let top = algebra.max_degree() * graph.vertex_count() as u32;
    (0, algebra.window().map_or(top, |w| w.min(top)))
}

fn slices_for(graph: &Graph, algebra: &Algebra, options: &ComputeOptions) -> Result<(Vec<Slice>, Option<(u32, u32)>), HomologyError> {
    if !algebra.is_graded() {
        if options.degrees.is_some() {
            return Err(HomologyError::DegreesNeedGrading);
        }
        return Ok((vec![Slice::Total], None));
    }
    let (lo, hi) = options.degrees.unwrap_or_else(|| default_degrees(graph, algebra));
    if let Some(window) = algebra.window().filter(|&w| hi > w) {
        return Err(ComplexError::WindowExceeded { degree: hi, window }.into());
    }
    Ok(((lo..=hi).map(Slice::Degree).collect(), Some((lo, hi))))
}

/// Rough peak memory in bytes for building one slice.
fn slice_memory(dims: &[u128], edge_count: usize, rank: usize, vertex_count: usize) -> u128 {
    let state_bytes = 96 + vertex_count as u128;
    dims.iter()
        .enumerate()
        .map(|(i, &dim)| {
            let fan_out = ((edge_count - i) * rank.min(2)) as u128;
            dim * state_bytes + dim * fan_out * 64
        })
        .sum()
}

/// Estimated peak memory for `compute_all` with the given options.
pub fn estimate_memory(graph: &Graph, algebra: &Algebra, options: &ComputeOptions) -> Result<u128, HomologyError> {
    let (slices, _) = slices_for(graph, algebra, options)?;
    let histogram = complex::component_histogram(graph);
    let mut costs: Vec<u128> = slices
        .iter()
        .map(|&s| {
            let dims = complex::chain_dimensions(&histogram, algebra, s);
            slice_memory(&dims, graph.edge_count(), algebra.rank(), graph.vertex_count())
        })
        .collect();
    costs.sort_unstable_by(|a, b| b.cmp(a));
    Ok(costs.iter().take(rayon::current_num_threads().max(1)).sum())
}

fn compute_slice(
    graph: &Graph,
    algebra: &Algebra,
    slice: Slice,
    check_d_squared: bool,
) -> Result<Vec<AbelianGroup>, HomologyError> {
    let n = graph.edge_count();
    let mut dims = Vec::with_capacity(n + 1);
    let mut snfs: Vec<SnfResult> = Vec::with_capacity(n);
    let mut previous: Option<IntMatrix> = None;
    let mut source = complex::enumerate_basis(graph, algebra, 0, slice)?;
    dims.push(source.len());
    for i in 0..n {
        let target = complex::enumerate_basis(graph, algebra, i + 1, slice)?;
        let d = complex::differential_between(graph, algebra, &source, &target);
        if check_d_squared {
            if let Some(prev) = &previous {
                if !d.mul(prev).is_zero() {
                    return Err(HomologyError::DSquared { height: i - 1, slice });
                }
            }
        }
        snfs.push(smith_normal_form(&d));
        dims.push(target.len());
        previous = check_d_squared.then_some(d);
        source = target;
    }
    (0..=n)
        .map(|i| {
            let d_in = i.checked_sub(1).map(|k| &snfs[k]);
            let out_rank = snfs.get(i).map_or(0, |s| s.rank);
            homology_group(dims[i], d_in, out_rank)
        })
        .collect()
}

/// Every group `H^{i,j}` of `graph` over `algebra`, slices processed in
/// parallel, largest first.
pub fn compute_all(graph: &Graph, algebra: &Algebra, options: &ComputeOptions) -> Result<BigradedHomology, HomologyError> {
    let (slices, degrees) = slices_for(graph, algebra, options)?;
    let histogram = complex::component_histogram(graph);
    let mut work: Vec<(Slice, u128)> = slices
        .into_iter()
        .map(|s| (s, complex::chain_dimensions(&histogram, algebra, s).iter().sum()))
        .collect();
    if let Some(cap) = options.memory_cap {
        let estimate = estimate_memory(graph, algebra, options)?;
        if estimate > u128::from(cap) {
            return Err(HomologyError::ResourceCap { estimate, cap });
        }
    }
    work.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let results: Vec<(Slice, Vec<AbelianGroup>)> = work
        .into_par_iter()
        .filter(|(_, size)| *size > 0)
        .map(|(slice, _)| compute_slice(graph, algebra, slice, options.check_d_squared).map(|g| (slice, g)))
        .collect::<Result<_, _>>()?;
    let mut h = BigradedHomology::new(algebra, graph, degrees);
    for (slice, groups) in results {
        let j = match slice {
            Slice::Degree(j) => j,
            Slice::Total => 0,
        };
        if groups.first().is_some_and(AbelianGroup::has_torsion) {
            return Err(HomologyError::TorsionInHeightZero(j));
        }
        for (i, g) in groups.into_iter().enumerate() {
            h.insert(i, j, g);
        }
    }
    Ok(h)
}

/// `Σ t^i q^j rank H^{i,j}`.
pub fn poincare_series(h: &BigradedHomology) -> Result<TwoVarPolynomial, HomologyError> {
    if !h.graded {
        return Err(HomologyError::Ungraded);
    }
    let mut series = TwoVarPolynomial::new();
    for ((i, j), g) in h.groups() {
        if g.free_rank() > 0 {
            series.add_term(i as u32, j, BigInt::from(g.free_rank()));
        }
    }
    Ok(series)
}

/// Smallest degree bound for which [`cokernel_oracle`] is exact.
pub fn cokernel_bound(generators: &[Polynomial]) -> Result<usize, HomologyError> {
    let monic = generators
        .iter()
        .filter(|g| g.leading().is_some_and(|c| c.abs().is_one()))
        .filter_map(Polynomial::degree)
        .min()
        .ok_or(HomologyError::NoMonicGenerator)?;
    let widest = generators.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    Ok(monic + widest)
}

/// The group `Z[x]/(g_1, ..., g_k)`, as `Z^B` modulo the span of all
/// `x^t g_s` of degree below `B`. Needs a generator with leading
/// coefficient `±1`.
pub fn cokernel_oracle(generators: &[Polynomial], bound: usize) -> Result<AbelianGroup, HomologyError> {
    let needed = cokernel_bound(generators)?;
    if bound < needed {
        return Err(HomologyError::BoundTooSmall { bound, needed });
    }
    let mut triplets = Vec::new();
    let mut col = 0;
    for g in generators.iter().filter(|g| !g.is_zero()) {
        let d = g.degree().expect("nonzero generator");
        for t in 0..bound - d {
            for (k, c) in g.coefficients().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                triplets.push((k + t, col, c.clone()));
            }
            col += 1;
        }
    }
    let relations = IntMatrix::from_triplets(bound, col, triplets);
    let snf = smith_normal_form(&relations);
    Ok(AbelianGroup::new(bound - snf.rank, snf.torsion()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(m: usize) -> Algebra {
        Algebra::truncated(m).unwrap()
    }

    #[test]
    fn group_canonical_form() {
        let g = AbelianGroup::from_orders(1, &[2, 3, 1]);
        assert_eq!(g, AbelianGroup::from_orders(1, &[6]));
        assert_eq!(g.to_string(), "Z ⊕ Z_6");
        assert_eq!(g.primary_decomposition(), vec![BigUint::from(2u8), BigUint::from(3u8)]);
        assert!(g.has_element_of_order(2) && g.has_element_of_order(6) && !g.has_element_of_order(4));
        assert_eq!(AbelianGroup::from_orders(2, &[3, 3, 6]).to_string(), "Z^2 ⊕ Z_3^2 ⊕ Z_6");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::cyclic(2).repeated(3), AbelianGroup::from_orders(0, &[2, 2, 2]));
    }

    #[test]
    fn kernel_image_quotient() {
        let d_in = smith_normal_form(&IntMatrix::from_dense(&[vec![2], vec![0]]));
        assert_eq!(homology_group(2, Some(&d_in), 0).unwrap(), AbelianGroup::from_orders(1, &[2]));
        assert!(matches!(homology_group(1, Some(&d_in), 1), Err(HomologyError::RankViolation { .. })));
    }

    #[test]
    fn single_vertex() {
        let h = compute_all(&Graph::null(1), &a(2), &ComputeOptions::default()).unwrap();
        assert_eq!(h.group(0, 0), AbelianGroup::free(1));
        assert_eq!(h.group(0, 1), AbelianGroup::free(1));
        assert_eq!(poincare_series(&h).unwrap().to_string(), "1 + q");
    }

    #[test]
    fn triangle_over_a2() {
        let h = compute_all(&Graph::cycle(3).unwrap(), &a(2), &ComputeOptions { check_d_squared: true, ..Default::default() }).unwrap();
        assert_eq!(h.group(1, 2), AbelianGroup::cyclic(2));
        assert_eq!(h.group(1, 1), AbelianGroup::free(1));
        assert_eq!(h.group(0, 3), AbelianGroup::free(1));
        assert_eq!(h.render_height(1), "Z{1} ⊕ Z_2{2}");
        assert_eq!(h.torsion_locations(), vec![(1, 2)]);
    }

    #[test]
    fn loop_kills_everything() {
        let g = Graph::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let h = compute_all(&g, &a(3), &ComputeOptions::default()).unwrap();
        assert!(h.is_trivial());
        assert!(h.render_table().contains("all groups trivial"));
    }

    #[test]
    fn table_and_json() {
        let h = compute_all(&Graph::cycle(3).unwrap(), &a(3), &ComputeOptions::default()).unwrap();
        let table = h.render_table();
        assert!(table.lines().any(|l| l.trim_start().starts_with("3 ") && l.contains("[1_3]")), "{table}");
        let back = BigradedHomology::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn json_big_torsion() {
        let mut h = BigradedHomology::new(&a(2), &Graph::null(1), Some((0, 1)));
        let big: BigUint = BigUint::from(u64::MAX) * 3u8;
        h.insert(1, 0, AbelianGroup::new(0, [big.clone()]));
        let text = h.to_json();
        assert!(text.contains(&format!("\"{big}\"")));
        assert_eq!(BigradedHomology::from_json(&text).unwrap(), h);
    }

    #[test]
    fn ungraded_height_groups() {
        let deformed = Algebra::deformed(&[0, 0, 1]).unwrap();
        assert!(deformed.is_graded());
        let p = Algebra::deformed(&[-1, 0, 1]).unwrap();
        let h = compute_all(&Graph::cycle(3).unwrap(), &p, &ComputeOptions::default()).unwrap();
        assert!(!h.graded);
        assert_eq!(h.group(1, 0), AbelianGroup::from_orders(0, &[2, 2]));
        assert!(poincare_series(&h).is_err());
        assert_eq!(BigradedHomology::from_json(&h.to_json()).unwrap(), h);
        let bad = ComputeOptions { degrees: Some((0, 1)), ..Default::default() };
        assert_eq!(compute_all(&Graph::cycle(3).unwrap(), &p, &bad).unwrap_err(), HomologyError::DegreesNeedGrading);
    }

    #[test]
    fn window_limits() {
        let w = Algebra::poly_window(4).unwrap();
        let too_far = ComputeOptions { degrees: Some((0, 5)), ..Default::default() };
        assert!(matches!(
            compute_all(&Graph::cycle(3).unwrap(), &w, &too_far),
            Err(HomologyError::Complex(ComplexError::WindowExceeded { degree: 5, window: 4 }))
        ));
        let h = compute_all(&Graph::cycle(3).unwrap(), &w, &ComputeOptions::default()).unwrap();
        assert_eq!(h.degrees, Some((0, 4)));
        assert!(!h.has_torsion());
    }

    #[test]
    fn memory_cap_refuses() {
        let opts = ComputeOptions { memory_cap: Some(1024), ..Default::default() };
        assert!(matches!(
            compute_all(&Graph::complete(4).unwrap(), &a(2), &opts),
            Err(HomologyError::ResourceCap { .. })
        ));
    }

    #[test]
    fn cokernels() {
        let p = |c: &[i64]| Polynomial::from_i64(c);
        let gens = [p(&[0, 0, 0, 1]), p(&[0, 0, 3])];
        let bound = cokernel_bound(&gens).unwrap();
        assert_eq!(cokernel_oracle(&gens, bound).unwrap(), AbelianGroup::from_orders(2, &[3]));
        assert_eq!(
            cokernel_oracle(&gens, 2).unwrap_err(),
            HomologyError::BoundTooSmall { bound: 2, needed: bound }
        );
        assert_eq!(cokernel_oracle(&[p(&[0, 2])], 5).unwrap_err(), HomologyError::NoMonicGenerator);
        // x^2 - bx - a with b = 1, a = 1: Z_5
        let q = p(&[-1, -1, 1]);
        let gens = [q.clone(), q.derivative()];
        assert_eq!(cokernel_oracle(&gens, cokernel_bound(&gens).unwrap()).unwrap(), AbelianGroup::cyclic(5));
    }
}
