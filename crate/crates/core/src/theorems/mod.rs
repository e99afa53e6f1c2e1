//! Executable checks of structural results about chromatic graph
//! cohomology. Every check recomputes what it needs and returns a
//! [`CheckReport`]; failing reports name the offending group or map.

pub mod fixtures;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::chromatic;
use crate::complex::{self, EnhancedState, IntMatrix, Slice, StateBasis};
use crate::graph::{CycleStructure, Graph};
use crate::homology::{self, AbelianGroup, BigradedHomology, ComputeOptions};
use crate::polynomial::{Polynomial, TwoVarPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: String,
    pub passed: bool,
    /// Soft checks evaluate conjectures; they never fail a suite.
    pub soft: bool,
    pub witness: Option<String>,
}

impl CheckReport {
    fn new(name: &str, params: String, failure: Option<String>) -> Self {
        CheckReport { name: name.to_string(), params, passed: failure.is_none(), soft: false, witness: failure }
    }

    fn soft(name: &str, params: String, disagreement: Option<String>) -> Self {
        CheckReport { soft: true, ..Self::new(name, params, disagreement) }
    }

    /// Whether this report fails a suite.
    pub fn is_hard_failure(&self) -> bool {
        !self.passed && !self.soft
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.soft, self.passed) {
            (false, true) => "PASS",
            (false, false) => "FAIL",
            (true, true) => "AGREE",
            (true, false) => "DISAGREE",
        };
        write!(f, "{verdict} {} [{}]", self.name, self.params)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

fn params(graph: &Graph, algebra: &Algebra) -> String {
    format!("graph={} algebra={}", graph.fingerprint(), algebra.spec())
}

/// Full computation with the `d∘d = 0` check switched on.
pub fn compute(graph: &Graph, algebra: &Algebra) -> Result<BigradedHomology, String> {
    let options = ComputeOptions { check_d_squared: true, ..Default::default() };
    homology::compute_all(graph, algebra, &options).map_err(|e| format!("computation failed: {e}"))
}

fn run(name: &str, graph: &Graph, algebra: &Algebra, body: impl FnOnce(&BigradedHomology) -> Option<String>) -> CheckReport {
    let failure = match compute(graph, algebra) {
        Ok(h) => body(&h),
        Err(e) => Some(e),
    };
    CheckReport::new(name, params(graph, algebra), failure)
}

fn first_failure(failures: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    failures.into_iter().flatten().next()
}

fn slot(i: usize, j: u32, graded: bool) -> String {
    if graded {
        format!("H^{{{i},{j}}}")
    } else {
        format!("H^{i}")
    }
}

/// First `(i, j)` where two computations differ, ignoring metadata.
pub fn first_difference(left: &BigradedHomology, right: &BigradedHomology) -> Option<String> {
    let keys: BTreeSet<(usize, u32)> = left.groups().chain(right.groups()).map(|(k, _)| k).collect();
    keys.into_iter().find_map(|(i, j)| {
        let (a, b) = (left.group(i, j), right.group(i, j));
        (a != b).then(|| format!("{} is {a} on one side and {b} on the other", slot(i, j, left.graded)))
    })
}

fn non_tree_size(graph: &Graph) -> (i64, i64) {
    graph
        .component_shapes()
        .iter()
        .filter(|s| !s.is_tree())
        .fold((0, 0), |(v, mu), s| (v + s.vertices as i64, mu + 1))
}

/// Support of `H^i` within `0 <= i <= v_1 - 2 mu_1`, torsion within `1 <= i`,
/// where `v_1`, `mu_1` count vertices and components that are not trees.
pub fn vanishing_witness(graph: &Graph, h: &BigradedHomology) -> Option<String> {
    let (v1, mu1) = non_tree_size(graph);
    let bound = v1 - 2 * mu1;
    h.groups().find_map(|((i, j), g)| {
        let i_signed = i as i64;
        if i_signed > bound {
            Some(format!("{} = {g} lies above height {bound}", slot(i, j, h.graded)))
        } else if g.has_torsion() && i == 0 {
            Some(format!("{} = {g} has torsion at height 0", slot(i, j, h.graded)))
        } else {
            None
        }
    })
}

pub fn check_vanishing(graph: &Graph, algebra: &Algebra) -> CheckReport {
    run("vanishing", graph, algebra, |h| vanishing_witness(graph, h))
}

/// Diagonal bounds for a graded algebra: `i + j >= v - mu` (torsion one
/// higher) when the algebra is pointed, and `D i + j <= D v` where `D` is
/// the top degree of the algebra. Heights obey the vanishing bound.
pub fn thickness_witness(graph: &Graph, algebra: &Algebra, h: &BigradedHomology) -> Option<String> {
    if !algebra.is_graded() {
        return Some(format!("{} is not graded", algebra.spec()));
    }
    let v = graph.vertex_count() as i64;
    let mu = graph.components(graph.full_edge_set()).component_count as i64;
    let top = i64::from(algebra.max_degree());
    let pointed = algebra.is_pointed();
    vanishing_witness(graph, h).or_else(|| {
        h.groups().find_map(|((i, j), g)| {
            let (i, j) = (i as i64, i64::from(j));
            let here = format!("H^{{{i},{j}}} = {g}");
            if pointed && i + j < v - mu {
                Some(format!("{here} lies below the diagonal i + j = {}", v - mu))
            } else if pointed && g.has_torsion() && i + j < v - mu + 1 {
                Some(format!("{here} has torsion below the diagonal i + j = {}", v - mu + 1))
            } else if top * i + j > top * v {
                Some(format!("{here} violates {top}i + j <= {}", top * v))
            } else {
                None
            }
        })
    })
}

pub fn check_thickness(graph: &Graph, algebra: &Algebra) -> CheckReport {
    run("thickness", graph, algebra, |h| thickness_witness(graph, algebra, h))
}

/// `Σ (-1)^i q^j rank H^{i,j}` and the chain-level sum against `P_G(qdim A)`.
pub fn euler_witness(graph: &Graph, algebra: &Algebra, h: &BigradedHomology) -> Option<String> {
    match chromatic::euler_check(graph, algebra, h) {
        Err(e) => Some(e.to_string()),
        Ok(report) => report.mismatches().next().map(|row| {
            let at = row.degree.map_or("q = 1".to_string(), |j| format!("q^{j}"));
            format!(
                "at {at}: homology {} chain {} chromatic {}",
                row.homology, row.chain, row.chromatic
            )
        }),
    }
}

pub fn check_euler(graph: &Graph, algebra: &Algebra) -> CheckReport {
    run("euler characteristic", graph, algebra, |h| euler_witness(graph, algebra, h))
}

/// `H(G/e) ⊗ A'` where `A'` is spanned by the basis elements of positive
/// degree. Graded: ranks convolve over degrees. Ungraded: `rank A - 1` copies.
pub fn tensor_with_reduced(h: &BigradedHomology, algebra: &Algebra) -> BTreeMap<(usize, u32), AbelianGroup> {
    let mut out: BTreeMap<(usize, u32), AbelianGroup> = BTreeMap::new();
    match algebra.qdim() {
        Ok(qdim) if h.graded => {
            for ((i, j), g) in h.groups() {
                for (d, &copies) in qdim.coefficients.iter().enumerate().skip(1).filter(|(_, &c)| c > 0) {
                    let entry = out.entry((i, j + d as u32)).or_default();
                    *entry = entry.direct_sum(&g.repeated(copies as usize));
                }
            }
        }
        _ => {
            for ((i, j), g) in h.groups() {
                out.insert((i, j), g.repeated(algebra.rank() - 1));
            }
        }
    }
    out.retain(|_, g| !g.is_trivial());
    out
}

pub fn check_pendant(graph: &Graph, e: usize, algebra: &Algebra) -> CheckReport {
    let name = "pendant edge";
    let p = format!("{} edge={e}", params(graph, algebra));
    if e >= graph.edge_count() || !graph.is_pendant_edge(e) {
        return CheckReport::new(name, p, Some(format!("edge {e} is not a pendant edge")));
    }
    let contracted = graph.contract_edge(e).expect("pendant edges are not loops");
    let failure = match (compute(graph, algebra), compute(&contracted, algebra)) {
        (Ok(h), Ok(hc)) => {
            let expected = tensor_with_reduced(&hc, algebra);
            let top = h.degrees.map(|(_, hi)| hi);
            let keys: BTreeSet<(usize, u32)> = h
                .groups()
                .map(|(k, _)| k)
                .chain(expected.keys().copied().filter(|&(_, j)| top.is_none_or(|hi| j <= hi)))
                .collect();
            keys.into_iter().find_map(|(i, j)| {
                let want = expected.get(&(i, j)).cloned().unwrap_or_default();
                let got = h.group(i, j);
                (got != want).then(|| format!("{} is {got}, the tensor product gives {want}", slot(i, j, h.graded)))
            })
        }
        (Err(e), _) | (_, Err(e)) => Some(e),
    };
    CheckReport::new(name, p, failure)
}

/// Slices the chain complex of `graph` over `algebra` is made of.
fn all_slices(graph: &Graph, algebra: &Algebra) -> Vec<Slice> {
    if algebra.is_graded() {
        let (lo, hi) = homology::default_degrees(graph, algebra);
        (lo..=hi).map(Slice::Degree).collect()
    } else {
        vec![Slice::Total]
    }
}

struct Tower {
    bases: Vec<StateBasis>,
    differentials: Vec<IntMatrix>,
}

/// Bases for heights `0..=top` and the differentials between them.
fn tower(graph: &Graph, algebra: &Algebra, slice: Slice, top: usize) -> Result<Tower, String> {
    let bases = (0..=top)
        .map(|i| complex::enumerate_basis(graph, algebra, i, slice))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let differentials = bases
        .windows(2)
        .map(|pair| complex::differential_between(graph, algebra, &pair[0], &pair[1]))
        .collect();
    Ok(Tower { bases, differentials })
}

fn slice_label(slice: Slice, i: usize) -> String {
    match slice {
        Slice::Degree(j) => format!("({i}, {j})"),
        Slice::Total => format!("height {i}"),
    }
}

/// Short exact sequence `0 -> C^{i-1}(G/e) -> C^i(G) -> C^i(G-e) -> 0` at the
/// chain level, with `e` moved to the end of the edge order.
pub fn check_del_contract_exactness(graph: &Graph, e: usize, algebra: &Algebra) -> CheckReport {
    let name = "deletion-contraction exactness";
    let p = format!("{} edge={e}", params(graph, algebra));
    if e >= graph.edge_count() {
        return CheckReport::new(name, p, Some(format!("edge {e} out of range")));
    }
    let (u, w) = graph.edge(e);
    if u == w {
        return CheckReport::new(name, p, Some(format!("edge {e} is a loop")));
    }
    CheckReport::new(name, p, exactness_failure(graph, e, algebra))
}

fn exactness_failure(graph: &Graph, e: usize, algebra: &Algebra) -> Option<String> {
    let g = graph.with_edge_last(e).expect("edge in range");
    let n = g.edge_count();
    let last = n - 1;
    let contracted = g.contract_edge(last).expect("not a loop");
    let deleted = g.delete_edge(last).expect("edge in range");
    let vertex_map = g.contraction_vertex_map(last).expect("not a loop");
    for slice in all_slices(&g, algebra) {
        let (tg, tc, td) = match (
            tower(&g, algebra, slice, n + 1),
            tower(&contracted, algebra, slice, n + 1),
            tower(&deleted, algebra, slice, n + 1),
        ) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(err), _, _) | (_, Err(err), _) | (_, _, Err(err)) => return Some(err),
        };
        // alpha[i]: C^{i-1}(G/e) -> C^i(G); alpha[0] has no columns
        let mut alpha = vec![IntMatrix::zeros(tg.bases[0].len(), 0)];
        for i in 1..=n + 1 {
            match inclusion(&g, &contracted, &vertex_map, last, &tc.bases[i - 1], &tg.bases[i]) {
                Ok(m) => alpha.push(m),
                Err(err) => return Some(format!("{}: {err}", slice_label(slice, i))),
            }
        }
        let mut beta = Vec::new();
        for i in 0..=n + 1 {
            match projection(last, &tg.bases[i], &td.bases[i]) {
                Ok(m) => beta.push(m),
                Err(err) => return Some(format!("{}: {err}", slice_label(slice, i))),
            }
        }
        for i in 0..=n {
            let at = slice_label(slice, i);
            let with_e: BTreeSet<usize> = tg.bases[i]
                .states()
                .iter()
                .enumerate()
                .filter(|(_, s)| s.subset >> last & 1 == 1)
                .map(|(k, _)| k)
                .collect();
            let dim_c = if i == 0 { 0 } else { tc.bases[i - 1].len() };
            if tg.bases[i].len() != dim_c + td.bases[i].len() {
                return Some(format!("{at}: dim C(G) = {} but dim C(G/e) + dim C(G-e) = {}", tg.bases[i].len(), dim_c + td.bases[i].len()));
            }
            if !alpha[i].is_signed_injection() {
                return Some(format!("{at}: alpha is not injective"));
            }
            let image: BTreeSet<usize> = alpha[i].triplets().map(|(r, _, _)| r).collect();
            if image != with_e {
                return Some(format!("{at}: image of alpha differs from the kernel of beta"));
            }
            if !beta[i].transpose().is_signed_injection() || beta[i].nnz() != td.bases[i].len() {
                return Some(format!("{at}: beta is not surjective"));
            }
            if !beta[i].mul(&alpha[i]).is_zero() {
                return Some(format!("{at}: beta alpha is nonzero"));
            }
            if i >= 1 && tg.differentials[i].mul(&alpha[i]) != alpha[i + 1].mul(&tc.differentials[i - 1]) {
                return Some(format!("{at}: alpha does not commute with the differentials"));
            }
            if td.differentials[i].mul(&beta[i]) != beta[i + 1].mul(&tg.differentials[i]) {
                return Some(format!("{at}: beta does not commute with the differentials"));
            }
        }
    }
    None
}

/// Insert the last edge into the subset and carry colors across the
/// component bijection.
fn inclusion(
    g: &Graph,
    contracted: &Graph,
    vertex_map: &[usize],
    last: usize,
    source: &StateBasis,
    target: &StateBasis,
) -> Result<IntMatrix, String> {
    let mut triplets = Vec::with_capacity(source.len());
    for (col, state) in source.states().iter().enumerate() {
        let subset = state.subset | 1 << last;
        let big = g.components(subset);
        let small = contracted.components(state.subset);
        let mut coloring = vec![0; big.component_count];
        for v in 0..g.vertex_count() {
            coloring[big.component_id[v]] = state.coloring[small.component_id[vertex_map[v]]];
        }
        let image = EnhancedState { subset, coloring };
        let row = target.position(&image).ok_or_else(|| format!("alpha image {image:?} is not a basis state"))?;
        triplets.push((row, col, 1i64));
    }
    Ok(IntMatrix::from_triplets(target.len(), source.len(), triplets))
}

/// Keep states without the last edge; the rest map to zero.
fn projection(last: usize, source: &StateBasis, target: &StateBasis) -> Result<IntMatrix, String> {
    let mut triplets = Vec::new();
    for (col, state) in source.states().iter().enumerate() {
        if state.subset >> last & 1 == 0 {
            let row = target.position(state).ok_or_else(|| format!("beta image {state:?} is not a basis state"))?;
            triplets.push((row, col, 1i64));
        }
    }
    Ok(IntMatrix::from_triplets(target.len(), source.len(), triplets))
}

/// Over `Z[x]/(x^2)`: torsion exists exactly when the graph is loopless with
/// a cycle of length at least three; an odd cycle puts `Z_2` in
/// `H^{1,v-1}`, an even cycle in a simple graph puts `Z_2` in `H^{2,v-2}`.
pub fn torsion_dichotomy_witness(graph: &Graph, h: &BigradedHomology) -> Option<String> {
    let cycles = graph.shortest_cycle_parity();
    let expected = cycles.has_cycle_of_length_at_least_three();
    if h.has_torsion() != expected {
        return Some(if expected {
            "no torsion although the graph is loopless with a cycle of length >= 3".to_string()
        } else {
            format!("torsion at {:?} although the criterion fails", h.torsion_locations())
        });
    }
    let v = graph.vertex_count() as u32;
    if let CycleStructure::Cycles { has_odd, has_even, .. } = cycles {
        if has_odd && !h.group(1, v - 1).has_element_of_order(2) {
            return Some(format!("odd cycle but H^{{1,{}}} = {}", v - 1, h.group(1, v - 1)));
        }
        if has_even && graph.is_simple() && !h.group(2, v - 2).has_element_of_order(2) {
            return Some(format!("even cycle but H^{{2,{}}} = {}", v - 2, h.group(2, v - 2)));
        }
    }
    None
}

pub fn check_torsion_dichotomy(graph: &Graph) -> CheckReport {
    let a2 = Algebra::truncated(2).expect("A_2");
    run("torsion dichotomy", graph, &a2, |h| torsion_dichotomy_witness(graph, h))
}

/// Closed form of `H^{i,j}(P_n)` over `Z[x]/(x^2)`.
pub fn polygon_a2_expected(n: usize) -> BTreeMap<(usize, u32), AbelianGroup> {
    let mut out = BTreeMap::new();
    if n >= 2 {
        out.insert((0, n as u32), AbelianGroup::free(1));
        if n.is_multiple_of(2) {
            out.insert((0, n as u32 - 1), AbelianGroup::free(1));
        }
    }
    for i in 1..n {
        let k = n - i;
        if k < 2 {
            continue;
        }
        if k.is_multiple_of(2) {
            out.insert((i, k as u32), AbelianGroup::cyclic(2));
            out.insert((i, k as u32 - 1), AbelianGroup::free(1));
        } else {
            out.insert((i, k as u32), AbelianGroup::free(1));
        }
    }
    out
}

fn compare_with(h: &BigradedHomology, expected: &BTreeMap<(usize, u32), AbelianGroup>) -> Option<String> {
    let keys: BTreeSet<(usize, u32)> = h.groups().map(|(k, _)| k).chain(expected.keys().copied()).collect();
    keys.into_iter().find_map(|(i, j)| {
        let want = expected.get(&(i, j)).cloned().unwrap_or_default();
        let got = h.group(i, j);
        (got != want).then(|| format!("{} = {got}, expected {want}", slot(i, j, h.graded)))
    })
}

pub fn check_polygon_formula(n: usize) -> CheckReport {
    let a2 = Algebra::truncated(2).expect("A_2");
    let expected = polygon_a2_expected(n);
    let failure = match fixtures::polygon_checked(n) {
        Ok(g) => match compute(&g, &a2) {
            Ok(h) => compare_with(&h, &expected),
            Err(e) => Some(e),
        },
        Err(e) => Some(e),
    };
    CheckReport::new("polygon formula", format!("n={n} algebra={}", a2.spec()), failure)
}

/// `H^{i+1}(P_{n+1}) = H^i(P_n)` for `i >= 1`, degree by degree.
pub fn check_polygon_recursion(n: usize, algebra: &Algebra) -> CheckReport {
    let name = "polygon recursion";
    let p = format!("n={n} algebra={}", algebra.spec());
    let failure = match (
        fixtures::polygon_checked(n).and_then(|g| compute(&g, algebra)),
        fixtures::polygon_checked(n + 1).and_then(|g| compute(&g, algebra)),
    ) {
        (Ok(small), Ok(big)) => {
            let keys: BTreeSet<(usize, u32)> = small
                .groups()
                .map(|(k, _)| k)
                .chain(big.groups().filter(|((i, _), _)| *i >= 1).map(|((i, j), _)| (i - 1, j)))
                .filter(|&(i, _)| i >= 1)
                .collect();
            keys.into_iter().find_map(|(i, j)| {
                let (a, b) = (small.group(i, j), big.group(i + 1, j));
                (a != b).then(|| format!("H^{{{i},{j}}}(P_{n}) = {a} but H^{{{},{j}}}(P_{}) = {b}", i + 1, n + 1))
            })
        }
        (Err(e), _) | (_, Err(e)) => Some(e),
    };
    CheckReport::new(name, p, failure)
}

/// `q + q^2 + ... + q^{m-1}` placed at height `t`.
fn reduced_qdim_series(m: usize) -> Polynomial {
    Polynomial::new((0..m).map(|k| BigInt::from(u8::from(k >= 1))).collect())
}

fn add_series(target: &mut TwoVarPolynomial, t: u32, p: &Polynomial, max_q: Option<u32>) {
    for (q, c) in p.coefficients().iter().enumerate() {
        if max_q.is_none_or(|top| q as u32 <= top) {
            target.add_term(t, q as u32, c.clone());
        }
    }
}

pub fn check_p3_am(m: usize) -> CheckReport {
    let name = "triangle over truncated algebra";
    let algebra = match Algebra::truncated(m) {
        Ok(a) => a,
        Err(e) => return CheckReport::new(name, format!("m={m}"), Some(e.to_string())),
    };
    let g = fixtures::polygon(3);
    run(name, &g, &algebra, |h| {
        let locations = h.torsion_locations();
        if locations != [(1, m as u32)] {
            return Some(format!("torsion at {locations:?}, expected only (1, {m})"));
        }
        let torsion = h.group(1, m as u32).torsion().to_vec();
        if torsion != [BigUint::from(m)] {
            return Some(format!("H^{{1,{m}}} = {}, expected Z_{m} torsion", h.group(1, m as u32)));
        }
        let s = reduced_qdim_series(m);
        let mut expected = TwoVarPolynomial::new();
        add_series(&mut expected, 0, &s.pow(3), None);
        add_series(&mut expected, 1, &s, None);
        match homology::poincare_series(h) {
            Ok(series) => (series != expected).then(|| format!("Poincaré polynomial {series}, expected {expected}")),
            Err(e) => Some(e.to_string()),
        }
    })
}

/// Triangle over `Z[x]` through the window `j <= J`.
pub fn check_p3_window(window: u32) -> CheckReport {
    let name = "triangle over the polynomial ring";
    let algebra = match Algebra::poly_window(window) {
        Ok(a) => a,
        Err(e) => return CheckReport::new(name, format!("window={window}"), Some(e.to_string())),
    };
    let g = fixtures::polygon(3);
    run(name, &g, &algebra, |h| {
        if h.has_torsion() {
            return Some(format!("torsion at {:?}", h.torsion_locations()));
        }
        if let Some(((i, j), grp)) = h.groups().find(|((i, _), _)| *i >= 2) {
            return Some(format!("H^{{{i},{j}}} = {grp}, expected 0"));
        }
        if !h.group(1, 0).is_trivial() {
            return Some(format!("H^{{1,0}} = {}, expected 0", h.group(1, 0)));
        }
        if let Some(j) = (1..=window).find(|&j| h.group(1, j) != AbelianGroup::free(1)) {
            return Some(format!("H^{{1,{j}}} = {}, expected Z", h.group(1, j)));
        }
        // q + q^2 + ... up to the window, cubed, truncated
        let s = Polynomial::new((0..=window).map(|k| BigInt::from(u8::from(k >= 1))).collect());
        let mut expected = TwoVarPolynomial::new();
        add_series(&mut expected, 0, &s.pow(3), Some(window));
        add_series(&mut expected, 1, &s, Some(window));
        match homology::poincare_series(h) {
            Ok(series) => (series != expected).then(|| format!("Poincaré series {series}, expected {expected}")),
            Err(e) => Some(e.to_string()),
        }
    })
}

/// Known value of `H^1(P_3)` over `Z[x]/(p)` for the families where one
/// is known: `x^m`, `x^m - 1` and monic quadratics.
pub fn deformed_closed_form(p: &Polynomial) -> Option<AbelianGroup> {
    let m = p.degree()?;
    let c: Vec<i64> = p.coefficients().iter().map(|c| i64::try_from(c).ok()).collect::<Option<_>>()?;
    if c[m] != 1 || m == 0 {
        return None;
    }
    let middle_zero = c[1..m].iter().all(|&x| x == 0);
    if middle_zero && c[0] == 0 {
        return Some(AbelianGroup::new(m - 1, [BigUint::from(m)]));
    }
    if middle_zero && c[0] == -1 {
        return Some(AbelianGroup::cyclic(m as u64).repeated(m));
    }
    if m == 2 {
        // x^2 - b x - a
        let (b, a) = (-c[1], -c[0]);
        let disc = b * b + 4 * a;
        let magnitude = disc.unsigned_abs();
        return Some(if disc == 0 {
            AbelianGroup::from_orders(1, &[2])
        } else if b % 2 != 0 {
            AbelianGroup::cyclic(magnitude)
        } else {
            AbelianGroup::from_orders(0, &[2, magnitude / 2])
        });
    }
    None
}

/// Ungraded `H^1(P_3)` over `Z[x]/(p)` against the cokernel of `(p, p')`,
/// the rank of `H^0`, the closed forms where known, and the root-multiplicity
/// count when integer roots are supplied.
pub fn check_deformed_p3(coefficients: &[i64], roots: Option<&[(i64, usize)]>) -> CheckReport {
    let name = "triangle over deformed algebra";
    let p = Polynomial::from_i64(coefficients);
    let label = format!("p={p}");
    let algebra = match Algebra::deformed(coefficients) {
        Ok(a) => a,
        Err(e) => return CheckReport::new(name, label, Some(e.to_string())),
    };
    let g = fixtures::polygon(3);
    let failure = match compute(&g, &algebra) {
        Err(e) => Some(e),
        Ok(h) => {
            let h1 = h.height(1);
            let h0 = h.height(0);
            let generators = [p.clone(), p.derivative()];
            let gcd_degree = p.gcd_over_rationals(&p.derivative()).degree().unwrap_or(0);
            let m = p.degree().unwrap_or(0);
            let oracle = homology::cokernel_bound(&generators)
                .and_then(|b| homology::cokernel_oracle(&generators, b))
                .map_err(|e| e.to_string());
            first_failure([
                match &oracle {
                    Ok(q) if *q != h1 => Some(format!("H^1 = {h1} but Z[x]/(p, p') = {q}")),
                    Ok(_) => None,
                    Err(e) => Some(e.clone()),
                },
                {
                    let want = m * m.saturating_sub(1) * m.saturating_sub(2) + gcd_degree;
                    (h0.free_rank() != want || h0.has_torsion()).then(|| format!("H^0 = {h0}, expected Z^{want}"))
                },
                deformed_closed_form(&p)
                    .filter(|closed| *closed != h1)
                    .map(|closed| format!("H^1 = {h1}, closed form gives {closed}")),
                roots.and_then(|roots| {
                    let product = roots.iter().fold(Polynomial::one(), |acc, &(r, mult)| {
                        &acc * &Polynomial::from_i64(&[-r, 1]).pow(mult as u32)
                    });
                    if product != p {
                        return Some(format!("supplied roots do not multiply out to {p}"));
                    }
                    let want: usize = roots.iter().map(|&(_, mult)| mult - 1).sum();
                    (h1.free_rank() != want).then(|| format!("rank H^1 = {}, root multiplicities give {want}", h1.free_rank()))
                }),
            ])
        }
    };
    CheckReport::new(name, label, failure)
}

/// Recompute known values over `Z[x]/(x^3)`.
pub fn check_reference_values() -> CheckReport {
    let a3 = Algebra::truncated(3).expect("A_3");
    let cases: [(Graph, Box<dyn Fn(&BigradedHomology) -> Option<String>>); 3] = [
        (
            fixtures::polygon(5),
            Box::new(|h| {
                let got = h.group(1, 6);
                (got != AbelianGroup::cyclic(3)).then(|| format!("H^{{1,6}}(P_5) = {got}, expected Z_3"))
            }),
        ),
        (
            fixtures::polygon(4),
            Box::new(|h| {
                let got = h.render_height(1);
                (got != "Z{4} ⊕ Z{5}").then(|| format!("H^1(P_4) = {got}, expected Z{{4}} ⊕ Z{{5}}"))
            }),
        ),
        (
            fixtures::k4(),
            Box::new(|h| {
                let got = h.group(1, 5);
                let want = AbelianGroup::from_orders(2, &[3, 3, 6]);
                (got != want).then(|| format!("H^{{1,5}}(K_4) = {got}, expected {want}"))
            }),
        ),
    ];
    let failure = first_failure(cases.iter().map(|(g, test)| match compute(g, &a3) {
        Ok(h) => test(&h),
        Err(e) => Some(e),
    }));
    CheckReport::new("reference values", format!("algebra={}", a3.spec()), failure)
}

/// `H^{v-2,*}(G) = H^{1,*}(P_3)` for a polygon with non-crossing diagonals.
pub fn check_vgon_diagonals(graph: &Graph, algebra: &Algebra) -> CheckReport {
    let name = "polygon with diagonals";
    let v = graph.vertex_count();
    if v < 3 {
        return CheckReport::new(name, params(graph, algebra), Some("needs at least three vertices".into()));
    }
    let triangle = fixtures::polygon(3);
    let failure = match (compute(graph, algebra), compute(&triangle, algebra)) {
        (Ok(h), Ok(t)) => {
            let js: BTreeSet<u32> = h
                .groups()
                .filter(|((i, _), _)| *i == v - 2)
                .map(|((_, j), _)| j)
                .chain(t.groups().filter(|((i, _), _)| *i == 1).map(|((_, j), _)| j))
                .collect();
            js.into_iter()
                .find_map(|j| {
                    let (a, b) = (h.group(v - 2, j), t.group(1, j));
                    (a != b).then(|| format!("{} = {a} but the triangle has {b}", slot(v - 2, j, h.graded)))
                })
                .or_else(|| {
                    let m = algebra.truncation_order()?;
                    let got = h.group(v - 2, m as u32);
                    (got != AbelianGroup::cyclic(m as u64)).then(|| format!("H^{{{},{m}}} = {got}, expected Z_{m}", v - 2))
                })
        }
        (Err(e), _) | (_, Err(e)) => Some(e),
    };
    CheckReport::new(name, params(graph, algebra), failure)
}

/// Homology is unchanged by reordering edges.
pub fn check_edge_order_invariance(graph: &Graph, algebra: &Algebra, seed: u64, permutations: usize) -> CheckReport {
    let name = "edge order invariance";
    let p = format!("{} permutations={permutations} seed={seed}", params(graph, algebra));
    let base = match compute(graph, algebra) {
        Ok(h) => h,
        Err(e) => return CheckReport::new(name, p, Some(e)),
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failure = None;
    for _ in 0..permutations {
        let mut order: Vec<usize> = (0..graph.edge_count()).collect();
        order.shuffle(&mut rng);
        let permuted = graph.permute_edges(&order).expect("a permutation");
        failure = match compute(&permuted, algebra) {
            Ok(h) => first_difference(&base, &h).map(|d| format!("order {order:?}: {d}")),
            Err(e) => Some(e),
        };
        if failure.is_some() {
            break;
        }
    }
    CheckReport::new(name, p, failure)
}

// Soft checks.

/// Conjectured `H^1(P_v)` over `Z[x]/(x^m)`: for `v = 2g+1` torsion `Z_m` at
/// `j = gm` and free part `t q^{(g-1)m}(q + ... + q^{m-1})`; for `v = 2g+2`
/// no torsion and free part `t q^{gm}(q + ... + q^{m-1})`.
pub fn soft_polygon_h1(m: usize, v: usize) -> CheckReport {
    let name = "conjectured polygon H^1";
    let p = format!("m={m} v={v}");
    if v < 3 || m < 2 {
        return CheckReport::soft(name, p, Some("needs v >= 3 and m >= 2".into()));
    }
    let algebra = Algebra::truncated(m).expect("m >= 2");
    let g = fixtures::polygon(v);
    let disagreement = match compute(&g, &algebra) {
        Err(e) => Some(e),
        Ok(h) => {
            let (shift, torsion_at) = if v % 2 == 1 {
                let genus = (v - 1) / 2;
                ((genus - 1) * m, Some(genus * m))
            } else {
                ((v - 2) / 2 * m, None)
            };
            let mut expected = BTreeMap::new();
            for d in 1..m {
                expected.insert((1, (shift + d) as u32), AbelianGroup::free(1));
            }
            if let Some(j) = torsion_at {
                let entry: &mut AbelianGroup = expected.entry((1, j as u32)).or_default();
                *entry = entry.direct_sum(&AbelianGroup::cyclic(m as u64));
            }
            let got: BTreeMap<(usize, u32), AbelianGroup> =
                h.groups().filter(|((i, _), _)| *i == 1).map(|(k, g)| (k, g.clone())).collect();
            (got != expected).then(|| format!("H^1 = {}, conjecture gives {}", h.render_height(1), render_map(&expected)))
        }
    };
    CheckReport::soft(name, p, disagreement)
}

fn render_map(groups: &BTreeMap<(usize, u32), AbelianGroup>) -> String {
    let parts: Vec<String> = groups.iter().map(|((_, j), g)| format!("{g}{{{j}}}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

/// A loopless graph with a triangle has `Z_m` torsion in `H^1`, and one with
/// a square has `Z_m` torsion in `H^2`, over `Z[x]/(x^m)`.
pub fn soft_triangle_square(graph: &Graph, m: usize) -> CheckReport {
    let name = "triangle and square torsion";
    let algebra = match Algebra::truncated(m) {
        Ok(a) => a,
        Err(e) => return CheckReport::soft(name, format!("m={m}"), Some(e.to_string())),
    };
    let disagreement = match compute(graph, &algebra) {
        Err(e) => Some(e),
        Ok(_) if graph.has_loop() => None,
        Ok(h) => first_failure([
            (graph.contains_cycle_of_length(3) && !h.height(1).has_element_of_order(m as u64))
                .then(|| format!("triangle but H^1 = {}", h.height(1))),
            (graph.contains_cycle_of_length(4) && !h.height(2).has_element_of_order(m as u64))
                .then(|| format!("square but H^2 = {}", h.height(2))),
        ]),
    };
    CheckReport::soft(name, params(graph, &algebra), disagreement)
}

/// `H^1(P_v)` over `Z[x]/(x^m - 1)` is `0` for even `v` and `Z_m^m` for odd `v`.
pub fn soft_roots_of_unity_polygon(m: usize, v: usize) -> CheckReport {
    let name = "polygon over x^m - 1";
    let mut coefficients = vec![0i64; m + 1];
    coefficients[0] = -1;
    coefficients[m] = 1;
    let p = format!("m={m} v={v}");
    let algebra = match Algebra::deformed(&coefficients) {
        Ok(a) => a,
        Err(e) => return CheckReport::soft(name, p, Some(e.to_string())),
    };
    let disagreement = match fixtures::polygon_checked(v).and_then(|g| compute(&g, &algebra)) {
        Err(e) => Some(e),
        Ok(h) => {
            let want = if v.is_multiple_of(2) { AbelianGroup::trivial() } else { AbelianGroup::cyclic(m as u64).repeated(m) };
            let got = h.height(1);
            (got != want).then(|| format!("H^1 = {got}, conjecture gives {want}"))
        }
    };
    CheckReport::soft(name, p, disagreement)
}

/// Torsion over `Z[x]/(x^2)` consists of elements of order two.
pub fn soft_a2_two_torsion(graph: &Graph) -> CheckReport {
    let a2 = Algebra::truncated(2).expect("A_2");
    let disagreement = match compute(graph, &a2) {
        Err(e) => Some(e),
        Ok(h) => h.groups().find_map(|((i, j), g)| {
            g.torsion()
                .iter()
                .any(|d| *d != BigUint::from(2u8))
                .then(|| format!("H^{{{i},{j}}} = {g}"))
        }),
    };
    CheckReport::soft("order-two torsion", params(graph, &a2), disagreement)
}

/// Vanishing, thickness and Euler characteristic on one computation.
pub fn structural_checks(graph: &Graph, algebra: &Algebra) -> Vec<CheckReport> {
    let p = params(graph, algebra);
    match compute(graph, algebra) {
        Err(e) => vec![CheckReport::new("computation", p, Some(e))],
        Ok(h) => {
            let mut out = vec![
                CheckReport::new("vanishing", p.clone(), vanishing_witness(graph, &h)),
                CheckReport::new("euler characteristic", p.clone(), euler_witness(graph, algebra, &h)),
            ];
            if algebra.is_graded() {
                out.push(CheckReport::new("thickness", p, thickness_witness(graph, algebra, &h)));
            }
            out
        }
    }
}

type Job = Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>;

fn job(f: impl Fn() -> Vec<CheckReport> + Send + Sync + 'static) -> Job {
    Box::new(f)
}

/// Deformations with the integer roots used for the multiplicity count.
pub fn deformed_fixtures() -> Vec<(Vec<i64>, Option<Vec<(i64, usize)>>)> {
    vec![
        (vec![0, 0, 1], Some(vec![(0, 2)])),
        (vec![0, 0, 0, 1], Some(vec![(0, 3)])),
        (vec![0, 0, 0, 0, 1], Some(vec![(0, 4)])),
        (vec![0, -1, 1], Some(vec![(0, 1), (1, 1)])),
        (vec![-3, -2, 1], Some(vec![(3, 1), (-1, 1)])),
        (vec![1, -2, 1], Some(vec![(1, 2)])),
        (vec![-1, 0, 0, 1], None),
        (vec![-1, 0, 0, 0, 1], None),
    ]
}

/// Every hard and soft check over the standard fixtures, run in parallel.
/// Reports come back in a fixed order.
pub fn full_suite() -> Vec<CheckReport> {
    let a2 = Algebra::truncated(2).expect("A_2");
    let a3 = Algebra::truncated(3).expect("A_3");
    let mut structural: Vec<Graph> = (1..=8).map(fixtures::polygon).collect();
    structural.extend([fixtures::k4(), fixtures::k4_minus_edge(), fixtures::triangle_wedge()]);
    structural.extend(fixtures::seeded_simple_graphs(11, 10, 6, 8));
    let mut jobs: Vec<Job> = Vec::new();
    for g in structural {
        for a in [a2.clone(), a3.clone()] {
            let g = g.clone();
            jobs.push(job(move || structural_checks(&g, &a)));
        }
    }
    {
        let wedge = fixtures::triangle_wedge();
        let a3 = a3.clone();
        jobs.push(job(move || {
            let failure = compute(&wedge, &a3)
                .map(|h| (!h.height(3).is_trivial()).then(|| format!("H^3 = {}", h.height(3))))
                .unwrap_or_else(Some);
            vec![CheckReport::new("wedge of triangles", params(&wedge, &a3), failure)]
        }));
    }
    for n in 1..=8 {
        jobs.push(job(move || vec![check_polygon_formula(n)]));
    }
    for n in 3..=6 {
        for a in [a2.clone(), a3.clone()] {
            jobs.push(job(move || vec![check_polygon_recursion(n, &a)]));
        }
    }
    for m in 2..=5 {
        jobs.push(job(move || vec![check_p3_am(m)]));
    }
    jobs.push(job(|| vec![check_p3_window(8)]));
    jobs.push(job(|| vec![check_reference_values()]));
    for (g, a) in [
        (fixtures::k4_minus_edge(), a2.clone()),
        (fixtures::k4_minus_edge(), a3.clone()),
        (fixtures::fan_polygon(5, 2), a2.clone()),
        (fixtures::fan_polygon(6, 3), a2.clone()),
    ] {
        jobs.push(job(move || vec![check_vgon_diagonals(&g, &a)]));
    }
    let mut dichotomy = fixtures::connected_graphs_up_to(5);
    dichotomy.extend(fixtures::seeded_multigraphs(5, 20, 5, 8));
    jobs.push(job(move || dichotomy.par_iter().map(check_torsion_dichotomy).collect()));
    for g in [fixtures::polygon(3), Graph::path(4), fixtures::polygon(4), fixtures::k4()] {
        for a in [a2.clone(), a3.clone()] {
            let g = g.clone();
            jobs.push(job(move || (0..g.edge_count()).map(|e| check_del_contract_exactness(&g, e, &a)).collect()));
        }
    }
    for (_, g, e) in fixtures::pendant_fixtures() {
        for a in [a2.clone(), a3.clone()] {
            let g = g.clone();
            jobs.push(job(move || vec![check_pendant(&g, e, &a)]));
        }
    }
    for (coefficients, roots) in deformed_fixtures() {
        jobs.push(job(move || vec![check_deformed_p3(&coefficients, roots.as_deref())]));
    }
    for (g, a) in [(Graph::cycle(5).expect("P_5"), a2.clone()), (fixtures::k4(), a3.clone())] {
        jobs.push(job(move || vec![check_edge_order_invariance(&g, &a, 19, 5)]));
    }
    for m in 2..=3 {
        for v in 4..=6 {
            jobs.push(job(move || vec![soft_polygon_h1(m, v)]));
        }
    }
    for g in soft_fixture_graphs() {
        jobs.push(job(move || vec![soft_triangle_square(&g, 3)]));
    }
    for v in 3..=6 {
        jobs.push(job(move || vec![soft_roots_of_unity_polygon(3, v)]));
    }
    for g in [fixtures::k4(), fixtures::k4_minus_edge(), fixtures::polygon(6), fixtures::triangle_wedge()] {
        jobs.push(job(move || vec![soft_a2_two_torsion(&g)]));
    }
    jobs.par_iter().map(|j| j()).collect::<Vec<_>>().into_iter().flatten().collect()
}

/// Small graphs with triangles or squares for the soft torsion check.
pub fn soft_fixture_graphs() -> Vec<Graph> {
    vec![
        fixtures::polygon(3),
        fixtures::polygon(4),
        fixtures::k4(),
        fixtures::k4_minus_edge(),
        fixtures::triangle_wedge(),
        fixtures::polygon(3).with_pendant(0).expect("pendant"),
        fixtures::polygon(4).with_pendant(0).expect("pendant"),
        fixtures::fan_polygon(5, 1),
        fixtures::polygon(3).disjoint_union(&fixtures::polygon(4)).expect("union"),
        Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 1)]).expect("square with a double edge"),
    ]
}
