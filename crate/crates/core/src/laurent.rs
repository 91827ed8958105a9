//! Exact Laurent polynomials in one variable `z` with integer coefficients.
//!
//! The coefficient ring is any signed integer type implementing [`Coefficient`]
//! (`i64`, `i128`, `BigInt`). Every arithmetic entry point has a `checked_*`
//! form that reports overflow instead of wrapping; the operator impls panic on
//! overflow with the same message.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("cannot evaluate a Laurent polynomial at 0")]
    EvalAtZero,
    #[error("value at {0} is not an integer")]
    NotIntegral(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Integer coefficient ring for [`LaurentPoly`].
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + Ord
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + Send
    + Sync
{
    fn checked_negate(&self) -> Option<Self> {
        Self::zero().checked_sub(self)
    }
}

impl Coefficient for i64 {}
impl Coefficient for i128 {}
impl Coefficient for BigInt {}

/// A Laurent polynomial `Σ c_e z^e`, stored sparsely with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Coefficient> LaurentPoly<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, T)>>(pairs: I) -> Result<Self, PolyError> {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: i32, c: T) -> Result<(), PolyError> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                let sum = existing.checked_add(&c).ok_or(PolyError::Overflow)?;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> T {
        self.terms.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &T)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Machine form: `[(exponent, coefficient)]` ascending by exponent.
    pub fn to_pairs(&self) -> Vec<(i32, T)> {
        self.terms.iter().map(|(e, c)| (*e, c.clone())).collect()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone())?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self, PolyError> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, c.checked_negate().ok_or(PolyError::Overflow)?);
        }
        Ok(Self { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_scale(&self, k: &T) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.checked_mul(k).ok_or(PolyError::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = (*e1).checked_add(*e2).ok_or(PolyError::Overflow)?;
                out.add_term(e, c1.checked_mul(c2).ok_or(PolyError::Overflow)?)?;
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, mut n: u32) -> Result<Self, PolyError> {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i32) -> Result<Self, PolyError> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert((*e).checked_add(k).ok_or(PolyError::Overflow)?, c.clone());
        }
        Ok(Self { terms })
    }

    /// Exact value `Σ c_e t^e` at a nonzero integer `t`.
    ///
    /// Negative exponents are cleared by a common denominator, so the result
    /// is an error unless the value is an integer.
    pub fn eval_int(&self, t: &T) -> Result<T, PolyError> {
        if t.is_zero() {
            return Err(PolyError::EvalAtZero);
        }
        let Some(lo) = self.min_degree() else {
            return Ok(T::zero());
        };
        let shift = lo.min(0);
        let mut num = T::zero();
        for (e, c) in &self.terms {
            let p = checked_int_pow(t, (e - shift) as u32)?;
            let term = c.checked_mul(&p).ok_or(PolyError::Overflow)?;
            num = num.checked_add(&term).ok_or(PolyError::Overflow)?;
        }
        let den = checked_int_pow(t, (-shift) as u32)?;
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(PolyError::NotIntegral(t.to_string()));
        }
        Ok(q)
    }

    /// Exact division; fails unless `divisor` divides `self` in `Z[z, z^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (Some(dlo), Some(dhi)) = (divisor.min_degree(), divisor.max_degree()) else {
            return Err(PolyError::DivisionByZero);
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rhi) = rem.max_degree() {
            let rlo = rem.min_degree().unwrap_or(rhi);
            if rhi - rlo < dhi - dlo {
                return Err(PolyError::InexactDivision);
            }
            let (q, r) = rem.coeff(rhi).div_rem(&lead);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            let step = Self::monomial(q, rhi - dhi);
            rem = rem.checked_sub(&step.checked_mul(divisor)?)?;
            quot = quot.checked_add(&step)?;
        }
        Ok(quot)
    }

    pub fn map_coeffs<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(*e, v);
            }
        }
        LaurentPoly { terms }
    }
}

impl LaurentPoly<i64> {
    pub fn to_big(&self) -> LaurentPoly<BigInt> {
        self.map_coeffs(|c| BigInt::from(*c))
    }
}

fn checked_int_pow<T: Coefficient>(base: &T, exp: u32) -> Result<T, PolyError> {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or(PolyError::Overflow)?;
    }
    Ok(acc)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<T: Coefficient> $trait<&LaurentPoly<T>> for &LaurentPoly<T> {
            type Output = LaurentPoly<T>;
            fn $method(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
                self.$checked(rhs).expect("Laurent polynomial overflow")
            }
        }
        impl<T: Coefficient> $trait for LaurentPoly<T> {
            type Output = LaurentPoly<T>;
            fn $method(self, rhs: LaurentPoly<T>) -> LaurentPoly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<T: Coefficient> Neg for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        self.checked_neg().expect("Laurent polynomial overflow")
    }
}

impl<T: Coefficient> fmt::Display for LaurentPoly<T> {
    /// Ascending exponents, e.g. `z^-3 - z^2 + z^3 - z^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if *e == 1 {
                f.write_str("z")?;
            } else {
                write!(f, "z^{e}")?;
            }
        }
        Ok(())
    }
}

impl<T: Coefficient> fmt::Debug for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<T: Coefficient + FromStr> FromStr for LaurentPoly<T> {
    type Err = PolyError;

    /// Accepts the display format plus `*` between coefficient and `z`,
    /// e.g. `z^-1 + 1 + z`, `-z`, `3*z^-2 + 3`.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let fail = |reason: &str| PolyError::Parse { input: s.to_string(), reason: reason.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }
        // Split into signed terms; a '-' directly after '^' is an exponent sign.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                } else if prev.is_some() {
                    return Err(fail("dangling sign"));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(fail("dangling sign"));
        }
        pieces.push((negative, current));

        let mut out = Self::zero();
        for (neg, body) in pieces {
            let (coef_str, exp) = match body.find('z') {
                None => (body.as_str(), 0),
                Some(pos) => {
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.parse::<i32>().map_err(|_| fail("bad exponent"))?
                    } else {
                        return Err(fail("expected '^' after z"));
                    };
                    let head = &body[..pos];
                    (head.strip_suffix('*').unwrap_or(head), exp)
                }
            };
            let mut c = if coef_str.is_empty() {
                T::one()
            } else {
                coef_str.parse::<T>().map_err(|_| fail("bad coefficient"))?
            };
            if neg {
                c = c.checked_negate().ok_or(PolyError::Overflow)?;
            }
            out.add_term(exp, c)?;
        }
        Ok(out)
    }
}
