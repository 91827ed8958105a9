//! Bigraded GF(2) cohomology and state-sum polynomials of planar trivalent
//! graphs with perfect matchings.
//!
//! A diagram is a [`PlanarDiagram`]: a trivalent rotation system with a
//! marked perfect matching. From it the crate computes the hypercube of
//! states, the 2-factor, four-color and generalized bracket polynomials, the
//! Tait polynomial, and the cohomology `H^{i,j}`. Brute-force [`oracles`]
//! provide independent counts to check the polynomial evaluations against.

pub mod bracket;
pub mod cli;
pub mod families;
pub mod homology;
pub mod laurent;
pub mod oracles;
pub mod parse;
pub mod planar;
pub mod states;
pub mod verify;

pub use bracket::{
    four_color_polynomial, generalized_bracket, tait_polynomial, two_factor_polynomial, BracketParams,
};
pub use families::{generate_family, random_diagram, Family};
pub use laurent::{Coefficient, LaurentPoly, PolyError};
pub use parse::{parse_diagram, to_graph_file};
pub use planar::{FlipSpec, PlanarDiagram};
pub use states::{hypercube, resolve, StateIndex};

/// Laurent polynomial with checked 64-bit coefficients.
pub type Poly = LaurentPoly<i64>;
/// Laurent polynomial with arbitrary-precision coefficients.
pub type BigPoly = LaurentPoly<num_bigint::BigInt>;
