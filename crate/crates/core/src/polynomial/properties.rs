//! Coefficient-sequence properties of palindromic polynomials:
//! palindromicity, unimodality, log-concavity, gamma-positivity and
//! real-rootedness.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{count_real_roots, square_free_part, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub palindromic: bool,
    pub unimodal: bool,
    pub log_concave: bool,
    /// Coefficients in the basis `x^i (1+x)^(d-2i)`; present iff palindromic.
    #[serde(serialize_with = "serialize_gamma")]
    pub gamma_vector: Option<Vec<BigInt>>,
    pub gamma_positive: bool,
    pub real_rooted: bool,
    /// Least internal index `i` with `a_i^2 < a_(i-1) a_(i+1)`.
    pub first_violation_index: Option<usize>,
}

fn serialize_gamma<S: serde::Serializer>(
    gamma: &Option<Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    gamma
        .as_ref()
        .map(|g| g.iter().map(|c| c.to_string()).collect::<Vec<_>>())
        .serialize(s)
}

pub fn is_palindromic(coeffs: &[BigInt]) -> bool {
    coeffs.iter().eq(coeffs.iter().rev())
}

pub fn is_unimodal(coeffs: &[BigInt]) -> bool {
    let mut descending = false;
    for w in coeffs.windows(2) {
        if w[1] > w[0] {
            if descending {
                return false;
            }
        } else if w[1] < w[0] {
            descending = true;
        }
    }
    true
}

pub fn first_log_concavity_violation(coeffs: &[BigInt]) -> Option<usize> {
    (1..coeffs.len().saturating_sub(1))
        .find(|&i| &coeffs[i] * &coeffs[i] < &coeffs[i - 1] * &coeffs[i + 1])
}

/// Gamma vector of a palindromic polynomial of degree `d`.
pub fn gamma_vector(p: &Polynomial<BigInt>) -> Option<Vec<BigInt>> {
    let d = p.degree()?;
    if !is_palindromic(p.coeffs()) {
        return None;
    }
    let one_plus_x = Polynomial::from_i64s(&[1, 1]);
    let mut residual = p.clone();
    let mut gamma = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let g = residual.coeff(i);
        if !g.is_zero() {
            let basis = one_plus_x.pow((d - 2 * i) as u32).shift(i);
            residual -= &basis.scale(&g);
        }
        gamma.push(g);
    }
    debug_assert!(residual.is_zero());
    Some(gamma)
}

pub fn is_real_rooted(p: &Polynomial<BigInt>) -> Result<bool> {
    let sf = square_free_part(p)?;
    let degree = sf.degree().unwrap_or(0);
    Ok(count_real_roots(&sf)? == degree)
}

/// Property report for a polynomial with nonnegative coefficients.
pub fn check_properties(p: &Polynomial<BigInt>) -> Result<PropertyReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(i) = p.coeffs().iter().position(Signed::is_negative) {
        return Err(Error::NegativeCoefficient { index: i });
    }
    let coeffs = p.coeffs();
    let first_violation_index = first_log_concavity_violation(coeffs);
    let gamma = gamma_vector(p);
    let gamma_positive = gamma
        .as_ref()
        .is_some_and(|g| g.iter().all(|c| !c.is_negative()));
    Ok(PropertyReport {
        palindromic: gamma.is_some(),
        unimodal: is_unimodal(coeffs),
        log_concave: first_violation_index.is_none(),
        gamma_vector: gamma,
        gamma_positive,
        real_rooted: is_real_rooted(p)?,
        first_violation_index,
    })
}
