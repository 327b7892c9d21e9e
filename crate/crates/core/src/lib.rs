//! Exact graded lattice-point monoids of convex lattice polytopes.
//!
//! The crate builds lattice polytopes from vertex lists (edge polytopes of
//! graphs, lattice segmental fibrations, products, dilations), computes the
//! facet description of the cone over `{1} x P`, enumerates its graded lattice
//! points and derives the semigroup data attached to it: holes, gap vectors,
//! Hilbert functions, Hilbert bases, normality of dilations, bounded very
//! ampleness and the `mu` invariants.
//!
//! All arithmetic is exact. Machine integers are used where they are provably
//! sufficient; linear-algebra kernels detect overflow and either fail with
//! [`Error::Overflow`] or rerun with arbitrary precision, depending on
//! [`Arith`].
//!
//! The [`oracle`] module holds closed-form predictions for the families
//! `P_{k,a}` and `Q_{a,b}` so that every engine result can be cross-checked.

pub mod config;
pub mod error;
pub mod exactlin;
pub mod fibration;
pub mod graphs;
pub mod monoid;
pub mod oracle;
pub mod polytope;

pub use config::{Arith, ComputeConfig, Engine};
pub use error::{Error, Result};
pub use exactlin::{HRepCone, IntMatrix, Rational};
pub use graphs::Graph;
pub use polytope::{FacetSlice, GradedPoint, LatticePolytope};
