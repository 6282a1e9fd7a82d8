//! Hilbert series of Chow rings `D(M, G)`.
//!
//! The ring itself is never built. Its Hilbert series is computed by five
//! engines that can check one another:
//!
//! * [`hilbert_fy`]: sum over FY monomials, i.e. over all nested sets.
//! * [`hilbert_recursion`]: the two recursions over flats, as dynamic programs.
//! * [`hilbert_chains`]: alternating sum over chains of flats.
//! * [`hilbert_spanning`]: sum over spanning nested sets.
//! * [`hilbert_convert`]: start from a smaller building set and add members.
//!
//! FY monomials are canonicalized: the support of a monomial is its nested
//! set and every exponent is at least 1, plus the empty monomial `1`.

mod engines;
mod incidence;

use serde::Serialize;

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::lattice::IntervalKey;
use crate::{IntPolynomial, RatPolynomial};

pub use engines::{
    hilbert_auto, hilbert_chains, hilbert_convert, hilbert_convert_from_minimal, hilbert_fy, hilbert_recursion,
    hilbert_spanning, run_engine, DEFAULT_CHAIN_CAP,
};
pub use incidence::{verify_inversion, verify_zeta_alpha, IncidenceElement, INCIDENCE_FLAT_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineTag {
    Fy,
    RecursionRestriction,
    RecursionContraction,
    Chains,
    Spanning,
    Convert,
}

impl EngineTag {
    pub fn name(self) -> &'static str {
        match self {
            EngineTag::Fy => "fy",
            EngineTag::RecursionRestriction => "recursion_restriction",
            EngineTag::RecursionContraction => "recursion_contraction",
            EngineTag::Chains => "chains",
            EngineTag::Spanning => "spanning",
            EngineTag::Convert => "convert",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecursionVariant {
    /// Sum over nonempty flats `F` of `χ̄^G` of `M|F` times `H(M/F)`.
    Restriction,
    /// Sum over proper flats `F` of `H(M|F)` times `χ̄^G` of `M/F`.
    Contraction,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    /// Summands that contributed (nested sets, chains, flats or steps).
    pub terms: u64,
    pub memo_entries: u64,
    pub nested_sets_visited: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fy_monomials: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chains_by_length: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngineResult {
    pub hilbert: IntPolynomial,
    pub engine: EngineTag,
    pub stats: EngineStats,
}

impl EngineResult {
    fn checked(hilbert: IntPolynomial, engine: EngineTag, stats: EngineStats) -> Result<Self> {
        use num_traits::{One, Signed};
        if !hilbert.coeff(0).is_one() || hilbert.coeffs().iter().any(|c| c.is_negative()) {
            return Err(Error::Internal(format!(
                "{} engine produced {hilbert}, which is not a Hilbert series",
                engine.name()
            )));
        }
        Ok(EngineResult { hilbert, engine, stats })
    }
}

fn one_minus_x() -> IntPolynomial {
    IntPolynomial::from_i64s(&[1, -1])
}

/// `χ̄^G` on `[b, t]` over the integers: `−χ / (1 − x)^{|f|}`, or `−1` when
/// `b = t`.
pub fn g_reduced_char_int(b: &BuildingSet, key: IntervalKey) -> Result<IntPolynomial> {
    let l = b.lattice();
    l.key(key.bottom, key.top)?;
    if key.bottom == key.top {
        return Ok(IntPolynomial::from_i64s(&[-1]));
    }
    let k = b.induced_factors(key.bottom, key.top).len();
    let chi = l.chi(key.bottom, key.top)?;
    (-&*chi).exact_divide(&one_minus_x().pow(k as u32))
}

pub fn g_reduced_char(b: &BuildingSet, key: IntervalKey) -> Result<RatPolynomial> {
    Ok(g_reduced_char_int(b, key)?.to_rational())
}

/// `α^G` on `[b, t]`: `(−1)^{|f|−1} Π_{F ∈ f} (x + ⋯ + x^{rk F − 1})`, or
/// `−1` when `b = t`. Ranks are taken in the minor.
pub fn alpha_polynomial(b: &BuildingSet, key: IntervalKey) -> Result<RatPolynomial> {
    let l = b.lattice();
    l.key(key.bottom, key.top)?;
    if key.bottom == key.top {
        return Ok(IntPolynomial::from_i64s(&[-1]).to_rational());
    }
    let rb = l.rank(key.bottom) as usize;
    let factors = b.induced_factors(key.bottom, key.top);
    let prod: IntPolynomial = factors
        .iter()
        .map(|&f| IntPolynomial::power_range(1, l.rank(f) as usize - rb - 1))
        .product();
    let signed = if factors.len() % 2 == 1 { prod } else { -prod };
    Ok(signed.to_rational())
}
