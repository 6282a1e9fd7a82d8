//! Power series in `t` truncated at a fixed order, with polynomial
//! coefficients in `x`.

use super::{Polynomial, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T: Scalar + std::fmt::Display> {
    order: usize,
    terms: Vec<Polynomial<T>>,
}

impl<T: Scalar + std::fmt::Display> TruncatedSeries<T> {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            terms: vec![Polynomial::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.terms[0] = Polynomial::one();
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.terms[1] = Polynomial::one();
        }
        s
    }

    /// Build from the leading coefficients; missing ones are zero and extra
    /// ones are dropped.
    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = Polynomial<T>>) -> Self {
        let mut s = Self::zero(order);
        for (slot, term) in s.terms.iter_mut().zip(terms) {
            *slot = term;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &[Polynomial<T>] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> &Polynomial<T> {
        &self.terms[k]
    }

    pub fn set_term(&mut self, k: usize, value: Polynomial<T>) {
        self.terms[k] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::from_terms(order, (0..=order).map(|k| &self.terms[k] + &other.terms[k]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::from_terms(order, (0..=order).map(|k| &self.terms[k] - &other.terms[k]))
    }

    /// Multiply every coefficient by the polynomial `c`.
    pub fn scale(&self, c: &Polynomial<T>) -> Self {
        Self::from_terms(self.order, self.terms.iter().map(|p| p * c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (i, a) in self.terms.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.terms.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                out.terms[i + j] += &prod;
            }
        }
        out
    }

    /// First index at which the two series differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order.min(other.order);
        (0..=order).find(|&k| self.terms[k] != other.terms[k])
    }

    /// `outer(inner(t))` truncated at the common order.
    ///
    /// The inner series must have zero constant term.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.terms[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = outer.order.min(inner.order);
        let inner = Self::from_terms(order, inner.terms.iter().cloned());
        let mut result = Self::zero(order);
        let mut power = Self::one(order);
        for k in 0..=order {
            if k > 0 {
                power = power.mul(&inner);
            }
            let c = &outer.terms[k];
            if c.is_zero() {
                continue;
            }
            for m in 0..=order {
                if !power.terms[m].is_zero() {
                    let prod = &power.terms[m] * c;
                    result.terms[m] += &prod;
                }
            }
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatPolynomial;
    use num_rational::BigRational;

    type Series = TruncatedSeries<BigRational>;

    fn c(v: i64) -> RatPolynomial {
        RatPolynomial::constant(BigRational::from_integer(v.into()))
    }

    #[test]
    fn compose_with_identity() {
        let s = Series::from_terms(4, vec![c(0), c(1), c(3), c(-2), c(5)]);
        assert_eq!(Series::compose(&Series::t(4), &s).unwrap(), s);
        assert_eq!(Series::compose(&s, &Series::t(4)).unwrap(), s);
    }

    #[test]
    fn compose_square() {
        // (t + t^2)^2 = t^2 + 2t^3 + t^4, truncated at order 3.
        let outer = Series::from_terms(3, vec![c(0), c(0), c(1)]);
        let inner = Series::from_terms(3, vec![c(0), c(1), c(1)]);
        let got = Series::compose(&outer, &inner).unwrap();
        assert_eq!(got, Series::from_terms(3, vec![c(0), c(0), c(1), c(2)]));
    }

    #[test]
    fn rejects_constant_inner() {
        let inner = Series::from_terms(3, vec![c(1), c(1)]);
        assert!(matches!(
            Series::compose(&Series::t(3), &inner),
            Err(Error::NonzeroConstantTerm)
        ));
    }
}
