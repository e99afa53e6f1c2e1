//! Chromatic graph cohomology over integral algebras.
//!
//! The cochain complex of a graph `G` over a commutative algebra `A` has one
//! basis element per edge subset `s` and coloring of the components of the
//! spanning subgraph `[G:s]` by a basis of `A`. Its cohomology
//! `H^{i,j}(G; A)` categorifies the chromatic polynomial: the graded Euler
//! characteristic equals `P_G(qdim A)`.
//!
//! ```
//! use chromhom::{algebra::Algebra, graph::Graph, homology};
//!
//! let triangle = Graph::cycle(3).unwrap();
//! let a2 = Algebra::truncated(2).unwrap();
//! let h = homology::compute_all(&triangle, &a2, &Default::default()).unwrap();
//! assert_eq!(h.render_height(1), "Z{1} ⊕ Z_2{2}");
//! ```

pub mod algebra;
pub mod chromatic;
pub mod cli;
pub mod complex;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod polynomial;
pub mod theorems;
