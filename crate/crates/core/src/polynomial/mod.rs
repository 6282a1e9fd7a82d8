//! Dense univariate polynomials over an exact coefficient ring.
//!
//! [`Polynomial`] is generic over any [`Scalar`] (a `num-traits` ring with
//! negation). The crate root exposes the two instantiations used everywhere:
//! `IntPolynomial` over `BigInt` and `RatPolynomial` over `BigRational`.
//! Coefficients are stored in ascending degree with trailing zeros stripped,
//! so the zero polynomial is the empty coefficient list.

mod properties;
mod series;
mod sturm;

pub use properties::{check_properties, gamma_vector, is_real_rooted, PropertyReport};
pub use series::TruncatedSeries;
pub use sturm::{count_real_roots, square_free_part};

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient ring for [`Polynomial`].
pub trait Scalar: Clone + fmt::Debug + fmt::Display + Num + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + fmt::Debug + fmt::Display + Num + Neg<Output = T> {}

/// Textual form of an exact scalar, as used in JSON reports.
pub trait ExactText: Sized {
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> Option<Self>;
}

impl ExactText for BigInt {
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn from_text(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

impl ExactText for BigRational {
    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn from_text(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self { coeffs }
    }

    /// `x - root`.
    pub fn linear_root(root: T) -> Self {
        Self::from_coeffs(vec![-root, T::one()])
    }

    /// `x^lo + x^(lo+1) + ... + x^hi`; zero when `lo > hi`.
    pub fn power_range(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); hi + 1];
        for c in &mut coeffs[lo..] {
            *c = T::one();
        }
        Self { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Drop every term of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    pub fn reversed(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Quotient `self / divisor` when the division is exact in `T[x]`.
    ///
    /// Over the integers this fails both when a leading-coefficient step is
    /// not an integer and when a remainder is left over.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_exact_steps(divisor)?;
        if !r.is_zero() {
            return Err(Error::NonzeroRemainder(format!(
                "({self}) / ({divisor}) leaves remainder {r}"
            )));
        }
        Ok(q)
    }

    fn div_rem_exact_steps(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::NonzeroRemainder("division by the zero polynomial".into()));
        };
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            let q = c.clone() / lead.clone();
            if q.clone() * lead.clone() != c {
                return Err(Error::NonzeroRemainder(format!(
                    "({self}) / ({divisor}): leading coefficient does not divide"
                )));
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].clone() - q.clone() * dc.clone();
            }
            quot[i - dd] = q;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }
}

impl Polynomial<BigInt> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> Polynomial<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Coefficients as `i64`, panicking on overflow. Test and display helper.
    pub fn to_i64s(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| i64::try_from(c).expect("coefficient exceeds i64"))
            .collect()
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self` divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        self.map(|c| c / &g)
    }

    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Polynomial<BigRational> {
    pub fn from_integers(p: &Polynomial<BigInt>) -> Self {
        p.to_rational()
    }

    /// Integer polynomial with the same coefficients, if they are all integral.
    pub fn to_integer(&self) -> Option<Polynomial<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::from_coeffs)
    }
}

impl<T: Scalar> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, T: Scalar> Add<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Scalar> AddAssign<&Polynomial<T>> for Polynomial<T> {
    fn add_assign(&mut self, rhs: &Polynomial<T>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), T::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = std::mem::replace(a, T::zero()) + b.clone();
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl<T: Scalar> SubAssign<&Polynomial<T>> for Polynomial<T> {
    fn sub_assign(&mut self, rhs: &Polynomial<T>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), T::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = std::mem::replace(a, T::zero()) - b.clone();
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl<'a, T: Scalar> Sub<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a, T: Scalar> Mul<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut out[i + j];
                *slot = std::mem::replace(slot, T::zero()) + a.clone() * b.clone();
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr<Polynomial<T>> for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $method(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$method(&rhs)
            }
        }

        impl<'a, T: Scalar> $tr<&'a Polynomial<T>> for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $method(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Scalar> std::iter::Sum for Polynomial<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<T: Scalar> std::iter::Product for Polynomial<T> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = match i {
                0 => format!("{c}"),
                _ if c.is_one() => String::new(),
                _ => format!("{c}"),
            };
            let body = if body.contains(['-', '/']) && i > 0 {
                format!("({body})")
            } else {
                body
            };
            match i {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}x")?,
                _ => write!(f, "{body}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{self}]")
    }
}

impl<T: Scalar + ExactText> Serialize for Polynomial<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let texts: Vec<String> = self.coeffs.iter().map(ExactText::to_text).collect();
        texts.serialize(serializer)
    }
}

impl<'de, T: Scalar + ExactText> Deserialize<'de> for Polynomial<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let texts = Vec::<String>::deserialize(deserializer)?;
        let coeffs = texts
            .iter()
            .map(|s| T::from_text(s).ok_or_else(|| D::Error::custom(format!("bad coefficient {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPolynomial;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[1, 1]) + &p(&[0, 1]), p(&[1, 2]));
        assert_eq!(&p(&[-2, 1]) * &p(&[-3, 1]), p(&[6, -5, 1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), IntPolynomial::zero());
        assert!(IntPolynomial::zero().coeffs().is_empty());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[2, -3, 1]).exact_divide(&p(&[-1, 1])).unwrap(), p(&[-2, 1]));
        let q = p(&[3, 0, 7]);
        assert_eq!(q.exact_divide(&IntPolynomial::one()).unwrap(), q);
        // (x^2 - 1)^2 / (1 - x)^2 = (x + 1)^2
        let num = p(&[-1, 0, 1]).pow(2);
        let den = p(&[1, -1]).pow(2);
        assert_eq!(num.exact_divide(&den).unwrap(), p(&[1, 2, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).exact_divide(&p(&[-1, 1])),
            Err(Error::NonzeroRemainder(_))
        ));
        assert!(p(&[1, 1]).exact_divide(&p(&[1, 2])).is_err());
    }

    #[test]
    fn power_range_and_shift() {
        assert_eq!(IntPolynomial::power_range(1, 3), p(&[0, 1, 1, 1]));
        assert!(IntPolynomial::power_range(1, 0).is_zero());
        assert_eq!(p(&[1, 2]).shift(2), p(&[0, 0, 1, 2]));
    }

    #[test]
    fn json_forms() {
        let poly = p(&[1, 5, 1]);
        assert_eq!(serde_json::to_string(&poly).unwrap(), r#"["1","5","1"]"#);
        let back: IntPolynomial = serde_json::from_str(r#"["1","5","1"]"#).unwrap();
        assert_eq!(back, poly);
        let r = crate::RatPolynomial::from_coeffs(vec![BigRational::new(1.into(), 2.into())]);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"["1/2"]"#);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 5, 1]).to_string(), "1 + 5x + x^2");
        assert_eq!(p(&[6, -5, 1]).to_string(), "6 + (-5)x + x^2");
    }
}
