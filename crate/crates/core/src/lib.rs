//! Combinatorial construction of the cut cone, the metric cone and their
//! ridge graphs, with exact certification of their symmetry groups.
//!
//! Modules, bottom-up:
//!
//! - [`coords`], [`cut`], [`facet`]: pair coordinates, cut vectors δ(S),
//!   triangle facets and the Sym(n) action.
//! - [`linalg`]: exact rank and kernel computations.
//! - [`cones`]: cut/facet incidence, hypermetric inequalities and the
//!   rank-based adjacency oracle.
//! - [`graph`], [`ridge`]: the ridge graph G_n, its complement, Triangles and
//!   the quotient graph Γ_n.
//! - [`autgrp`]: graph automorphism groups and stabilizer chains.
//! - [`reflect4`]: the reflection group realizing the 4-point symmetries.

pub mod autgrp;
pub mod cones;
pub mod coords;
pub mod cut;
pub mod error;
pub mod facet;
pub mod graph;
pub mod linalg;
pub mod reflect4;
pub mod ridge;

pub use autgrp::{automorphism_group, group_order, Perm, PermGroup};
pub use coords::{
    apply_permutation, switching_reflection, PairIndexer, PointPermutation, PointSet,
};
pub use cut::{cut_vector, enumerate_cuts, CutVector};
pub use error::{Error, Result};
pub use facet::{enumerate_triangle_facets, TriangleFacet};
pub use graph::Graph;
