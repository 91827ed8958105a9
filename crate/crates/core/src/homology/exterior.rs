//! The exterior-algebra view `V^{⊗k} = Λ(W)`, `W = <x_1, …, x_k>`, with the
//! complement map `⋆` and the circle-redistribution maps `R` and `S = ⋆R⋆`.
//!
//! Elements are GF(2) sums of monomials; a monomial is a bitmask of the `x_i`
//! it contains (bit `i` for circle `i`, zero-based).

use std::collections::BTreeSet;
use std::fmt;

use crate::homology::complex::{ChainComplex, Monomial};
use crate::homology::HomologyError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    k: usize,
    terms: BTreeSet<u64>,
}

impl Form {
    pub fn zero(k: usize) -> Self {
        Self { k, terms: BTreeSet::new() }
    }

    pub fn monomial(k: usize, subset: u64) -> Self {
        Self { k, terms: BTreeSet::from([subset]) }
    }

    pub fn from_terms<I: IntoIterator<Item = u64>>(k: usize, terms: I) -> Self {
        let mut f = Self::zero(k);
        for t in terms {
            f.add_monomial(t);
        }
        f
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn full(&self) -> u64 {
        if self.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        }
    }

    pub fn add_monomial(&mut self, m: u64) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for t in other.terms() {
            out.add_monomial(t);
        }
        out
    }

    /// Product in `Λ(W)`; `x_i^2 = 0`.
    pub fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.k.max(other.k));
        for a in self.terms() {
            for b in other.terms() {
                if a & b == 0 {
                    out.add_monomial(a | b);
                }
            }
        }
        out
    }

    /// `⋆`: replace every monomial by its complement in `x_1 ⋯ x_k`.
    pub fn star(&self) -> Form {
        let full = self.full();
        Form::from_terms(self.k, self.terms().map(|t| full & !t))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|t| {
                if t == 0 {
                    "1".to_string()
                } else {
                    (0..self.k).filter(|i| t >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `⋆` on a GF(2) sum of chain monomials that all live in one state.
pub fn hodge_star(c: &ChainComplex, terms: &[Monomial]) -> Result<Vec<Monomial>, HomologyError> {
    let Some(first) = terms.first() else { return Ok(Vec::new()) };
    if terms.iter().any(|m| m.state != first.state) {
        return Err(HomologyError::MixedStates);
    }
    let k = c.circle_count(first.state);
    let form = Form::from_terms(k, terms.iter().map(|m| m.subset)).star();
    Ok(form.terms().map(|subset| Monomial { state: first.state, subset }).collect())
}

/// How a state's circles sit relative to a 2-flip.
///
/// `Exchange` is the configuration where two circles `c1`, `c2` each pass
/// through both cut smoothings; `inside` lists circles lying entirely in the
/// flipped region. All indices are circle positions in the source state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlipContext {
    Identity { k: usize },
    Exchange { k: usize, c1: usize, c2: usize, inside: Vec<usize> },
}

impl FlipContext {
    pub fn k(&self) -> usize {
        match self {
            FlipContext::Identity { k } | FlipContext::Exchange { k, .. } => *k,
        }
    }

    fn check(&self, subset: u64) -> Result<(), HomologyError> {
        let k = self.k();
        if k < 64 && subset >> k != 0 {
            return Err(HomologyError::ContextMismatch);
        }
        if let FlipContext::Exchange { c1, c2, inside, .. } = self {
            let ok = *c1 < k && *c2 < k && c1 != c2 && inside.iter().all(|&a| a < k && a != *c1 && a != *c2);
            if !ok {
                return Err(HomologyError::ContextMismatch);
            }
        }
        Ok(())
    }
}

/// `R`: `x_{c1} ↦ x_{c1} + Σ x_a`, `x_{c2} ↦ x_{c2} + Σ x_a` (a over inside
/// circles), other generators fixed; extended multiplicatively.
pub fn r_map(ctx: &FlipContext, subset: u64) -> Result<Form, HomologyError> {
    ctx.check(subset)?;
    let k = ctx.k();
    let FlipContext::Exchange { c1, c2, inside, .. } = ctx else {
        return Ok(Form::monomial(k, subset));
    };
    let mut out = Form::monomial(k, 0);
    for i in (0..k).filter(|i| subset >> i & 1 == 1) {
        let mut image = Form::monomial(k, 1 << i);
        if i == *c1 || i == *c2 {
            for &a in inside {
                image.add_monomial(1 << a);
            }
        }
        out = out.mul(&image);
    }
    Ok(out)
}

/// `S = ⋆R⋆`; the identity outside the exchange configuration.
pub fn s_map(ctx: &FlipContext, subset: u64) -> Result<Form, HomologyError> {
    ctx.check(subset)?;
    let starred = Form::monomial(ctx.k(), subset).star();
    let mut acc = Form::zero(ctx.k());
    for t in starred.terms() {
        acc = acc.add(&r_map(ctx, t)?);
    }
    Ok(acc.star())
}
