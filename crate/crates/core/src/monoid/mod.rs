//! The graded semigroup generated by the degree-1 lattice points of a
//! polytope, compared with all lattice points of its cone.

mod ample;
mod closure;
mod codec;
mod hilbert;
mod mu;

pub use ample::{is_very_ample, VeryAmpleVerdict};
pub use closure::{closure, gap_vector, hilbert_function, ClosureLedger, LevelLedger};
pub use hilbert::{hilbert_basis, HilbertBasisReport};
pub use mu::{facet_normality, is_normal_dilation, mu_invariants, mu_invariants_product, FacetNormality, MuReport};
