//! Poincaré polynomials of `M̄_{0,n+1}`, which equal the Hilbert series of
//! the Chow ring of the braid matroid `K_n` with its minimal building set.
//!
//! Several formulas are implemented independently so that they can be
//! checked against each other and against the general machinery in
//! [`crate::chow`].

mod bijection;
mod combinatorics;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::building::BuildingSet;
use crate::chow::hilbert_auto;
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::{IntPolynomial, Polymatroid, RatPolynomial, RatSeries};

pub use bijection::{flat_vertices, format_partition, nested_to_partition, PartElem, SetPartition};
pub use combinatorics::{
    count_set_partitions_of_type, verify_partition_lemma, Factorials, PartitionType, StirlingTable,
};

/// Largest `n` accepted by [`poincare_rewriting`].
pub const REWRITING_MAX_N: usize = 12;
/// Largest `n` for which [`poincare_all`] includes the lattice computation.
pub const MATROID_MAX_N: usize = 7;

/// `χ̄_m(x) = (x − 2)(x − 3)⋯(x − m + 1)`, with `χ̄_1 = χ̄_2 = 1`.
pub fn chi_bar_m(m: usize) -> IntPolynomial {
    (2..m).map(|i| IntPolynomial::from_i64s(&[-(i as i64), 1])).product()
}

fn need(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("n must be at least {min}, got {n}")));
    }
    Ok(())
}

/// `[P_1, …, P_n]` from the recursion
/// `P_n = P_{n−1} + x Σ_{j=2}^{n−1} C(n−1, j) P_j P_{n−j}`.
pub fn manin_table(n: usize) -> Result<Vec<IntPolynomial>> {
    need(n, 1)?;
    let f = Factorials::up_to(n);
    let mut h = vec![IntPolynomial::zero(), IntPolynomial::one(), IntPolynomial::one()];
    for k in 3..=n {
        let sum: IntPolynomial = (2..k)
            .map(|j| (&h[j] * &h[k - j]).scale(&f.binomial(k - 1, j)))
            .sum();
        let next = &h[k - 1] + &sum.shift(1);
        h.push(next);
    }
    h.truncate(n + 1);
    h.remove(0);
    Ok(h)
}

/// `[P_1, …, P_n]` from the recursion
/// `P_n = (1 + x) P_{n−1} + (x/2) Σ_{j=2}^{n−2} C(n, j) P_j P_{n−j}`.
pub fn keel_table(n: usize) -> Result<Vec<IntPolynomial>> {
    need(n, 1)?;
    let f = Factorials::up_to(n);
    let two = BigInt::from(2);
    let mut h = vec![IntPolynomial::zero(), IntPolynomial::one(), IntPolynomial::one()];
    for k in 3..=n {
        let sum: IntPolynomial = (2..k - 1)
            .map(|j| (&h[j] * &h[k - j]).scale(&f.binomial(k, j)))
            .sum();
        if sum.coeffs().iter().any(|c| !(c % &two).is_zero()) {
            return Err(Error::NonIntegralKeelTerm(k));
        }
        let half = sum.map(|c| c / &two);
        let next = &(&h[k - 1] * &IntPolynomial::from_i64s(&[1, 1])) + &half.shift(1);
        h.push(next);
    }
    h.truncate(n + 1);
    h.remove(0);
    Ok(h)
}

pub fn poincare_manin(n: usize) -> Result<IntPolynomial> {
    Ok(manin_table(n)?.pop().expect("n ≥ 1"))
}

pub fn poincare_keel(n: usize) -> Result<IntPolynomial> {
    Ok(keel_table(n)?.pop().expect("n ≥ 1"))
}

/// Sum over set partitions `λ` of `[n − 1]`, grouped by type, of
/// `((n − 1 + ℓ(λ))! / (n − 1)!) Π χ̄_{λᵢ+1}(x) / (λᵢ + 1)`.
pub fn poincare_partition(n: usize) -> Result<IntPolynomial> {
    need(n, 2)?;
    let f = Factorials::up_to(2 * n);
    let terms: Vec<RatPolynomial> = PartitionType::all(n - 1)
        .into_par_iter()
        .map(|lambda| {
            let weight = lambda.set_partition_count(&f) * f.get(n - 1 + lambda.len()) / f.get(n - 1);
            let denom: BigInt = lambda.parts().iter().map(|&p| BigInt::from(p + 1)).product();
            let prod: IntPolynomial = lambda.parts().iter().map(|&p| chi_bar_m(p + 1)).product();
            prod.scale(&weight).to_rational().scale(&BigRational::new(BigInt::from(1), denom))
        })
        .collect();
    let total: RatPolynomial = terms.into_iter().sum();
    total
        .to_integer()
        .ok_or_else(|| Error::NonIntegralResult(format!("partition formula at n = {n} gave {total}")))
}

/// `(1 − x)^n Σ_{k, j ≥ 0} s(k+n, k+n−j) S(k+n−j, k+1) x^{k+j}`.
///
/// The double sum is the expansion of `P(x) / (1 − x)^n`. Keeping all terms
/// with `k + j ≤ D` gives that series exactly up to degree `D`, so after
/// multiplying by `(1 − x)^n` the degrees `n − 1, …, D` must cancel; any
/// `D ≥ n − 2` works and `D = 2(n − 2) + n` is used.
pub fn poincare_stirling(n: usize) -> Result<IntPolynomial> {
    need(n, 2)?;
    let d = 2 * (n - 2) + n;
    let st = StirlingTable::new(d + n);
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for k in 0..=d {
        // S(k+n−j, k+1) vanishes once j ≥ n
        for j in 0..=(d - k).min(n - 1) {
            let a = k + n;
            coeffs[k + j] += st.first(a, a - j) * st.second(a - j, k + 1);
        }
    }
    let series = IntPolynomial::from_coeffs(coeffs);
    let full = &series * &IntPolynomial::from_i64s(&[1, -1]).pow(n as u32);
    if let Some(deg) = (n - 1..=d).find(|&i| !full.coeff(i).is_zero()) {
        return Err(Error::TruncationResidue { degree: deg });
    }
    Ok(full.truncate(n - 2))
}

/// Sum over `m ≥ 1` and set partitions `σ` of `[n − 1 + m]` into `m`
/// blocks of size at least two of `Π χ̄_{σᵢ}(x)`.
pub fn poincare_rewriting(n: usize) -> Result<IntPolynomial> {
    need(n, 2)?;
    if n > REWRITING_MAX_N {
        return Err(Error::TooLarge(format!(
            "rewriting formula at n = {n} (limit {REWRITING_MAX_N})"
        )));
    }
    let mut total = IntPolynomial::zero();
    for m in 1..n {
        for sigma in PartitionType::with_parts(n - 1 + m, 2, m, usize::MAX) {
            if sigma.len() != m {
                continue;
            }
            let prod: IntPolynomial = sigma.parts().iter().map(|&p| chi_bar_m(p)).product();
            total += &prod.scale(&count_set_partitions_of_type(sigma.parts()));
        }
    }
    Ok(total)
}

/// The Hilbert series of `(K_n, G_min)` from the general machinery.
pub fn poincare_matroid(n: usize) -> Result<IntPolynomial> {
    need(n, 1)?;
    let l = FlatLattice::build(Polymatroid::complete_graph(n)?)?;
    let g = BuildingSet::minimal(&l)?;
    Ok(hilbert_auto(&g)?.hilbert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PoincareMethod {
    Keel,
    Manin,
    Partition,
    Stirling,
    Rewriting,
    Matroid,
}

impl PoincareMethod {
    pub const ALL: [PoincareMethod; 6] = [
        PoincareMethod::Keel,
        PoincareMethod::Manin,
        PoincareMethod::Partition,
        PoincareMethod::Stirling,
        PoincareMethod::Rewriting,
        PoincareMethod::Matroid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PoincareMethod::Keel => "keel",
            PoincareMethod::Manin => "manin",
            PoincareMethod::Partition => "partition",
            PoincareMethod::Stirling => "stirling",
            PoincareMethod::Rewriting => "rewriting",
            PoincareMethod::Matroid => "matroid",
        }
    }

    /// Whether [`poincare_all`] runs this method at `n`.
    pub fn applies(self, n: usize) -> bool {
        match self {
            PoincareMethod::Keel | PoincareMethod::Manin => n >= 1,
            PoincareMethod::Partition | PoincareMethod::Stirling => n >= 2,
            PoincareMethod::Rewriting => (2..=REWRITING_MAX_N).contains(&n),
            PoincareMethod::Matroid => (1..=MATROID_MAX_N).contains(&n),
        }
    }
}

impl fmt::Display for PoincareMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PoincareMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

pub fn poincare(n: usize, method: PoincareMethod) -> Result<IntPolynomial> {
    match method {
        PoincareMethod::Keel => poincare_keel(n),
        PoincareMethod::Manin => poincare_manin(n),
        PoincareMethod::Partition => poincare_partition(n),
        PoincareMethod::Stirling => poincare_stirling(n),
        PoincareMethod::Rewriting => poincare_rewriting(n),
        PoincareMethod::Matroid => poincare_matroid(n),
    }
}

/// Every applicable method at `n`; fails unless they all agree.
pub fn poincare_all(n: usize) -> Result<(IntPolynomial, Vec<(PoincareMethod, IntPolynomial)>)> {
    need(n, 1)?;
    let results: Vec<(PoincareMethod, IntPolynomial)> = PoincareMethod::ALL
        .into_iter()
        .filter(|m| m.applies(n))
        .map(|m| poincare(n, m).map(|p| (m, p)))
        .collect::<Result<_>>()?;
    let first = results[0].1.clone();
    if let Some((m, p)) = results.iter().find(|(_, p)| *p != first) {
        return Err(Error::EngineDisagreement(format!(
            "at n = {n}: {} gives {first}, {m} gives {p}",
            results[0].0
        )));
    }
    Ok((first, results))
}

/// `C(x, k) = x(x − 1)⋯(x − k + 1) / k!`.
fn binomial_x(k: usize, f: &Factorials) -> RatPolynomial {
    let falling: IntPolynomial = (0..k).map(|i| IntPolynomial::from_i64s(&[-(i as i64), 1])).product();
    falling.to_rational().scale(&BigRational::new(BigInt::from(1), f.get(k).clone()))
}

/// `H(x, t) = Σ_{n ≥ 1} P_n(x) tⁿ / n!` truncated at `t^order`.
pub fn egf(order: usize) -> Result<RatSeries> {
    let f = Factorials::up_to(order);
    let table = if order >= 1 { keel_table(order)? } else { Vec::new() };
    let mut h = RatSeries::zero(order);
    for (i, p) in table.into_iter().enumerate() {
        let n = i + 1;
        h.set_term(n, p.to_rational().scale(&BigRational::new(BigInt::from(1), f.get(n).clone())));
    }
    Ok(h)
}

/// Checks, to order `tᴺ`, that
/// `H(t − ((1+t)^x − 1 − xt) / (x(x−1)), t) = t` and
/// `(1 + H)^x = x²H + 1 − x(x−1)t`, with `H` built from the Keel recursion.
pub fn verify_functional_equations(order: usize) -> Result<bool> {
    let f = Factorials::up_to(order.max(1));
    let h = egf(order)?;
    let x = RatPolynomial::x();
    let x_xm1 = RatPolynomial::from_integers(&IntPolynomial::from_i64s(&[0, -1, 1]));

    // G = t − Σ_{k≥2} C(x, k) / (x(x−1)) t^k
    let mut g = RatSeries::t(order);
    for k in 2..=order {
        let c = binomial_x(k, &f).exact_divide(&x_xm1)?;
        g.set_term(k, -c);
    }
    let lhs = RatSeries::compose(&h, &g)?;
    if let Some(k) = lhs.first_difference(&RatSeries::t(order)) {
        return Err(Error::IdentityViolated(format!(
            "H(G(t)) ≠ t at order t^{k}"
        )));
    }

    // (1 + H)^x = Σ_k C(x, k) H^k, exact to order N since H has no constant term
    let mut lhs = RatSeries::zero(order);
    let mut power = RatSeries::one(order);
    for k in 0..=order {
        if k > 0 {
            power = power.mul(&h);
        }
        lhs = lhs.add(&power.scale(&binomial_x(k, &f)));
    }
    let rhs = h
        .scale(&(&x * &x))
        .add(&RatSeries::one(order))
        .sub(&RatSeries::t(order).scale(&x_xm1));
    if let Some(k) = lhs.first_difference(&rhs) {
        return Err(Error::IdentityViolated(format!(
            "(1 + H)^x ≠ x²H + 1 − x(x−1)t at order t^{k}"
        )));
    }
    Ok(true)
}

/// Absolute values of the coefficients, for printing signed sequences.
pub fn abs_coeffs(p: &IntPolynomial) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| c.abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_values() {
        assert_eq!(poincare_manin(3).unwrap(), p(&[1, 1]));
        assert_eq!(poincare_keel(4).unwrap(), p(&[1, 5, 1]));
        assert_eq!(poincare_manin(5).unwrap(), p(&[1, 16, 16, 1]));
        assert_eq!(poincare_partition(2).unwrap(), p(&[1]));
        assert_eq!(poincare_partition(4).unwrap(), p(&[1, 5, 1]));
        assert_eq!(poincare_stirling(2).unwrap(), p(&[1]));
        assert_eq!(poincare_stirling(4).unwrap(), p(&[1, 5, 1]));
        assert_eq!(poincare_stirling(5).unwrap(), p(&[1, 16, 16, 1]));
        assert_eq!(poincare_rewriting(3).unwrap(), p(&[1, 1]));
        assert_eq!(poincare_keel(1).unwrap(), p(&[1]));
        assert_eq!(poincare_keel(2).unwrap(), p(&[1]));
    }

    #[test]
    fn rewriting_k4_terms() {
        // (x−2)(x−3) + 10(x−2) + 15
        let want = &(&chi_bar_m(4) + &chi_bar_m(3).scale(&BigInt::from(10))) + &p(&[15]);
        assert_eq!(poincare_rewriting(4).unwrap(), want);
    }

    #[test]
    fn all_formulas_agree() {
        for n in 2..=12 {
            let k = poincare_keel(n).unwrap();
            assert_eq!(poincare_manin(n).unwrap(), k, "manin n = {n}");
            assert_eq!(poincare_partition(n).unwrap(), k, "partition n = {n}");
            assert_eq!(poincare_stirling(n).unwrap(), k, "stirling n = {n}");
            assert_eq!(poincare_rewriting(n).unwrap(), k, "rewriting n = {n}");
        }
        assert_eq!(keel_table(60).unwrap(), manin_table(60).unwrap());
    }

    #[test]
    fn matroid_agrees() {
        for n in 1..=6 {
            assert_eq!(poincare_matroid(n).unwrap(), poincare_keel(n).unwrap(), "n = {n}");
        }
        let (agreed, runs) = poincare_all(5).unwrap();
        assert_eq!(agreed, p(&[1, 16, 16, 1]));
        assert_eq!(runs.len(), 6);
    }

    #[test]
    fn functional_equations() {
        for n in [0, 1, 3, 5, 8] {
            assert!(verify_functional_equations(n).unwrap());
        }
    }

    #[test]
    fn functional_equations_catch_a_wrong_series() {
        // perturbing one coefficient of H must break (ii)
        let order = 5;
        let mut h = egf(order).unwrap();
        let bumped = h.term(4) + &RatPolynomial::x();
        h.set_term(4, bumped);
        let f = Factorials::up_to(order);
        let mut lhs = RatSeries::zero(order);
        let mut power = RatSeries::one(order);
        for k in 0..=order {
            if k > 0 {
                power = power.mul(&h);
            }
            lhs = lhs.add(&power.scale(&binomial_x(k, &f)));
        }
        let x = RatPolynomial::x();
        let rhs = h
            .scale(&(&x * &x))
            .add(&RatSeries::one(order))
            .sub(&RatSeries::t(order).scale(&(&x * &(&x - &RatPolynomial::one()))));
        assert_eq!(lhs.first_difference(&rhs), Some(4));
    }

    #[test]
    fn rejects_small_n() {
        assert!(matches!(poincare_partition(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(poincare_keel(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(poincare_rewriting(13), Err(Error::TooLarge(_))));
    }

    #[test]
    fn method_names_round_trip() {
        for m in PoincareMethod::ALL {
            assert_eq!(m.name().parse::<PoincareMethod>().unwrap(), m);
        }
    }
}
