//! State-sum polynomials: the generalized bracket and its specializations.


use crate::laurent::{Coefficient, LaurentPoly, PolyError};
use crate::oracles::{enumerate_perfect_matchings, AbstractGraph, OracleError};
use crate::planar::{DiagramError, EdgeId, PlanarDiagram};
use crate::states::{weight_circle_counts, StateError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// The coefficient triple `(A, B, C)` of a bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketParams<T: Coefficient> {
    pub a: LaurentPoly<T>,
    pub b: LaurentPoly<T>,
    pub c: LaurentPoly<T>,
}

impl<T: Coefficient> BracketParams<T> {
    pub fn new(a: LaurentPoly<T>, b: LaurentPoly<T>, c: LaurentPoly<T>) -> Self {
        Self { a, b, c }
    }

    /// `(1, -z, z^-1 + z)`.
    pub fn two_factor() -> Self {
        let z = LaurentPoly::<T>::z();
        let zinv = LaurentPoly::monomial(T::one(), -1);
        Self::new(LaurentPoly::one(), -z.clone(), zinv + z)
    }

    /// `(1, -z, z^-1 + 1 + z)`.
    pub fn four_color() -> Self {
        let mut p = Self::two_factor();
        p.c = p.c + LaurentPoly::one();
        p
    }
}

/// `Σ_α A^{n-|α|} B^{|α|} C^{k_α}` over all states.
pub fn generalized_bracket<T: Coefficient>(
    d: &PlanarDiagram,
    params: &BracketParams<T>,
) -> Result<LaurentPoly<T>, BracketError> {
    let n = d.matching_edges().len();
    let mut total = LaurentPoly::zero();
    for ((w, k), count) in weight_circle_counts(d)? {
        let term = params
            .a
            .checked_pow((n - w) as u32)?
            .checked_mul(&params.b.checked_pow(w as u32)?)?
            .checked_mul(&params.c.checked_pow(k as u32)?)?;
        let count = T::from_u64(count).ok_or(PolyError::Overflow)?;
        total = total.checked_add(&term.checked_scale(&count)?)?;
    }
    Ok(total)
}

/// Bracket divided by `C`; fails if the division is not exact.
pub fn normalized_bracket<T: Coefficient>(
    d: &PlanarDiagram,
    params: &BracketParams<T>,
) -> Result<LaurentPoly<T>, BracketError> {
    Ok(generalized_bracket(d, params)?.div_exact(&params.c)?)
}

pub fn two_factor_polynomial<T: Coefficient>(d: &PlanarDiagram) -> Result<LaurentPoly<T>, BracketError> {
    generalized_bracket(d, &BracketParams::two_factor())
}

pub fn four_color_polynomial<T: Coefficient>(d: &PlanarDiagram) -> Result<LaurentPoly<T>, BracketError> {
    generalized_bracket(d, &BracketParams::four_color())
}

/// One perfect matching and its 2-factor polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingTerm<T: Coefficient> {
    pub matching: Vec<EdgeId>,
    pub polynomial: LaurentPoly<T>,
}

/// 2-factor polynomials of the underlying map for every perfect matching.
/// The diagram's own matching is ignored.
pub fn tait_terms<T: Coefficient>(d: &PlanarDiagram) -> Result<Vec<MatchingTerm<T>>, BracketError> {
    let matchings = enumerate_perfect_matchings(&AbstractGraph::from_diagram(d))?;
    matchings
        .into_iter()
        .map(|m| {
            let dm = d.with_matching(&m)?;
            dm.check()?;
            Ok(MatchingTerm { polynomial: two_factor_polynomial(&dm)?, matching: m })
        })
        .collect()
}

/// Sum of 2-factor polynomials over all perfect matchings.
pub fn tait_polynomial<T: Coefficient>(d: &PlanarDiagram) -> Result<LaurentPoly<T>, BracketError> {
    let mut total = LaurentPoly::zero();
    for t in tait_terms::<T>(d)? {
        total = total.checked_add(&t.polynomial)?;
    }
    Ok(total)
}

/// Evaluates at `z = 1`.
pub fn at_one<T: Coefficient>(p: &LaurentPoly<T>) -> Result<T, PolyError> {
    p.eval_int(&T::one())
}
