//! Chromatic polynomials and the graded Euler characteristic check.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::complex::{self, Slice};
use crate::graph::Graph;
use crate::homology::BigradedHomology;
use crate::polynomial::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChromaticError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("homology was computed for {found}, not {expected}")]
    Mismatch { expected: String, found: String },
}

/// `Σ_{s ⊆ E} (-1)^{|s|} λ^{c(s)}` over all edge subsets.
pub fn chromatic_polynomial(graph: &Graph) -> Polynomial {
    let histogram = complex::component_histogram(graph);
    let mut coefficients = vec![BigInt::zero(); graph.vertex_count() + 1];
    for (i, row) in histogram.iter().enumerate() {
        for (c, &count) in row.iter().enumerate() {
            if i % 2 == 0 {
                coefficients[c] += count;
            } else {
                coefficients[c] -= count;
            }
        }
    }
    Polynomial::new(coefficients)
}

/// Memoised deletion–contraction `P_G = P_{G-e} - P_{G/e}`.
#[derive(Default)]
pub struct DeletionContraction {
    memo: HashMap<(usize, Vec<(usize, usize)>), Polynomial>,
}

impl DeletionContraction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn polynomial(&mut self, graph: &Graph) -> Polynomial {
        if graph.has_loop() {
            return Polynomial::zero();
        }
        let mut edges: Vec<(usize, usize)> = graph.edges().iter().map(|&(u, w)| (u.min(w), u.max(w))).collect();
        edges.sort_unstable();
        edges.dedup();
        self.simple(graph.vertex_count(), edges)
    }

    fn simple(&mut self, v: usize, edges: Vec<(usize, usize)>) -> Polynomial {
        if edges.is_empty() {
            return Polynomial::monomial(v, BigInt::from(1));
        }
        let key = (v, edges);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let (v, edges) = &key;
        let (a, b) = *edges.last().expect("nonempty");
        let deleted = edges[..edges.len() - 1].to_vec();
        // contract b into a, shifting vertices above b down by one
        let relabel = |x: usize| match x.cmp(&b) {
            std::cmp::Ordering::Less => x,
            std::cmp::Ordering::Equal => a,
            std::cmp::Ordering::Greater => x - 1,
        };
        let mut contracted: Vec<(usize, usize)> = deleted
            .iter()
            .map(|&(x, y)| {
                let (x, y) = (relabel(x), relabel(y));
                (x.min(y), x.max(y))
            })
            .collect();
        contracted.sort_unstable();
        contracted.dedup();
        let p = &self.simple(*v, deleted) - &self.simple(v - 1, contracted);
        self.memo.insert(key, p.clone());
        p
    }
}

pub fn chromatic_polynomial_dc(graph: &Graph) -> Polynomial {
    DeletionContraction::new().polynomial(graph)
}

/// `qdim A` as a polynomial in `q`.
pub fn qdim_polynomial(algebra: &Algebra) -> Result<Polynomial, AlgebraError> {
    Ok(Polynomial::new(algebra.qdim()?.coefficients.iter().map(|&c| BigInt::from(c)).collect()))
}

/// `P_G(qdim A)`, by composition.
pub fn evaluate_at_qdim(chromatic: &Polynomial, algebra: &Algebra) -> Result<Polynomial, AlgebraError> {
    Ok(chromatic.compose(&qdim_polynomial(algebra)?))
}

/// One degree of the Euler characteristic comparison. `degree` is `None`
/// when the algebra is ungraded and everything is compared at `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerRow {
    pub degree: Option<u32>,
    pub homology: BigInt,
    pub chain: BigInt,
    pub chromatic: BigInt,
}

impl EulerRow {
    pub fn agrees(&self) -> bool {
        self.homology == self.chromatic && self.chain == self.chromatic
    }

    pub fn residual(&self) -> BigInt {
        &self.homology - &self.chromatic
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub rows: Vec<EulerRow>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(EulerRow::agrees)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &EulerRow> {
        self.rows.iter().filter(|r| !r.agrees())
    }
}

/// Compare `Σ (-1)^i q^j rank H^{i,j}` and `Σ (-1)^i qdim C^i` with
/// `P_G(qdim A)`, degree by degree over the degrees `h` covers.
pub fn euler_check(graph: &Graph, algebra: &Algebra, h: &BigradedHomology) -> Result<EulerReport, ChromaticError> {
    if h.algebra != algebra.spec() || h.graph != graph.fingerprint() {
        return Err(ChromaticError::Mismatch {
            expected: format!("{} over {}", graph.fingerprint(), algebra.spec()),
            found: format!("{} over {}", h.graph, h.algebra),
        });
    }
    let chromatic = chromatic_polynomial(graph);
    let histogram = complex::component_histogram(graph);
    let alternating = |values: &[u128]| -> BigInt {
        values.iter().enumerate().fold(BigInt::zero(), |acc, (i, &v)| if i % 2 == 0 { acc + v } else { acc - v })
    };
    let homology_sum = |j: u32| -> BigInt {
        let ranks: Vec<u128> = (0..=graph.edge_count()).map(|i| h.group(i, j).free_rank() as u128).collect();
        alternating(&ranks)
    };
    let rows = match h.degrees.filter(|_| algebra.is_graded()) {
        Some((lo, hi)) => {
            let series = evaluate_at_qdim(&chromatic, algebra)?;
            (lo..=hi)
                .map(|j| EulerRow {
                    degree: Some(j),
                    homology: homology_sum(j),
                    chain: alternating(&complex::chain_dimensions(&histogram, algebra, Slice::Degree(j))),
                    chromatic: series.coefficient(j as usize),
                })
                .collect()
        }
        None => vec![EulerRow {
            degree: None,
            homology: homology_sum(0),
            chain: alternating(&complex::chain_dimensions(&histogram, algebra, Slice::Total)),
            chromatic: chromatic.evaluate(&BigInt::from(algebra.rank())),
        }],
    };
    Ok(EulerReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{compute_all, ComputeOptions};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn small_graphs() {
        let triangle = Graph::cycle(3).unwrap();
        assert_eq!(chromatic_polynomial(&triangle), p(&[0, 2, -3, 1]));
        assert_eq!(chromatic_polynomial_dc(&triangle), p(&[0, 2, -3, 1]));
        assert_eq!(chromatic_polynomial(&Graph::path(2)), p(&[0, -1, 1]));
        let looped = Graph::new(2, vec![(0, 1), (1, 1)]).unwrap();
        assert!(chromatic_polynomial(&looped).is_zero());
        assert!(chromatic_polynomial_dc(&looped).is_zero());
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(chromatic_polynomial_dc(&k4), p(&[0, -6, 11, -6, 1]));
        assert_eq!(chromatic_polynomial(&k4), chromatic_polynomial_dc(&k4));
    }

    #[test]
    fn qdim_composition() {
        let a2 = Algebra::truncated(2).unwrap();
        // λ(λ-1)(λ-2) at 1+q is (1+q) q (q-1)
        assert_eq!(evaluate_at_qdim(&p(&[0, 2, -3, 1]), &a2).unwrap(), p(&[0, -1, 0, 1]));
    }

    #[test]
    fn euler_characteristic_matches() {
        for (g, a) in [
            (Graph::cycle(4).unwrap(), Algebra::truncated(2).unwrap()),
            (Graph::complete(4).unwrap(), Algebra::truncated(3).unwrap()),
            (Graph::path(4), Algebra::truncated(3).unwrap()),
            (Graph::cycle(3).unwrap(), Algebra::deformed(&[-1, 0, 0, 1]).unwrap()),
            (Graph::cycle(3).unwrap(), Algebra::poly_window(5).unwrap()),
        ] {
            let h = compute_all(&g, &a, &ComputeOptions::default()).unwrap();
            let report = euler_check(&g, &a, &h).unwrap();
            assert!(report.passed(), "{g} {}: {:?}", a.spec(), report.mismatches().collect::<Vec<_>>());
        }
    }

    #[test]
    fn euler_detects_tampering() {
        let g = Graph::cycle(3).unwrap();
        let a = Algebra::truncated(2).unwrap();
        let mut h = compute_all(&g, &a, &ComputeOptions::default()).unwrap();
        h.insert(0, 1, crate::homology::AbelianGroup::free(1));
        let report = euler_check(&g, &a, &h).unwrap();
        assert_eq!(report.mismatches().map(|r| r.degree).collect::<Vec<_>>(), vec![Some(1)]);
    }
}
