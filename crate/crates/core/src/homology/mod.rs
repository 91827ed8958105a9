//! Bigraded cohomology over GF(2), its graded Euler characteristic, and
//! checks of the structural theorems (flip chain maps, lollipops, unions).

pub mod complex;
pub mod exterior;
pub mod flip;
pub mod gf2;
pub mod structure;

use thiserror::Error;

use crate::planar::DiagramError;
use crate::states::StateError;

pub use complex::{
    chain_complex, cohomology, cohomology_of, complex_of, graded_euler, verify_d_squared, Bigrading, ChainComplex,
    CohomologyTable, Monomial,
};
pub use exterior::{hodge_star, r_map, s_map, FlipContext, Form};
pub use flip::{verify_flip_chain_map, FlipChainMapReport};
pub use structure::{verify_disjoint_union, verify_lollipop};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("d∘d is nonzero on C^{{{i},{j}}}")]
    DSquaredNonzero { i: i32, j: i32 },
    #[error("monomials from different states")]
    MixedStates,
    #[error("flip context does not fit the monomial's state")]
    ContextMismatch,
    #[error("no circle correspondence across the flip in state {state}")]
    Correspondence { state: String },
}
