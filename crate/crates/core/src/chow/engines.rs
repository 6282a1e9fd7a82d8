use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::{g_reduced_char_int, EngineResult, EngineStats, EngineTag, RecursionVariant};
use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::lattice::{FlatId, IntervalKey};
use crate::IntPolynomial;

/// Default bound on the number of chains [`hilbert_chains`] will enumerate.
pub const DEFAULT_CHAIN_CAP: usize = 250_000;

/// Auto selection uses the spanning engine below this many spanning
/// nested sets.
const AUTO_SPANNING_LIMIT: u64 = 10_000_000;

fn add_results(a: Result<IntPolynomial>, b: Result<IntPolynomial>) -> Result<IntPolynomial> {
    Ok(a? + b?)
}

/// Sum over all nested sets `S` of `Π_{F ∈ S} (x + ⋯ + x^{d_F − 1})`,
/// `d_F = rk F − rk sup(S, F)`.
pub fn hilbert_fy(b: &BuildingSet) -> Result<EngineResult> {
    let l = b.lattice();
    let (coeffs, visited, terms) = b.fold_nested(
        || (Vec::<BigInt>::new(), 0u64, 0u64),
        |acc, s| {
            acc.1 += 1;
            let mut term = IntPolynomial::one();
            for &f in s {
                let d = l.rank(f) - l.rank(b.sup_below(s, f));
                if d <= 1 {
                    return;
                }
                term = &term * &IntPolynomial::power_range(1, d as usize - 1);
            }
            acc.2 += 1;
            let c = term.into_coeffs();
            if acc.0.len() < c.len() {
                acc.0.resize(c.len(), BigInt::zero());
            }
            for (x, y) in acc.0.iter_mut().zip(c) {
                *x += y;
            }
        },
        |mut a, b| {
            if a.0.len() < b.0.len() {
                a.0.resize(b.0.len(), BigInt::zero());
            }
            for (x, y) in a.0.iter_mut().zip(b.0) {
                *x += y;
            }
            (a.0, a.1 + b.1, a.2 + b.2)
        },
    );
    let hilbert = IntPolynomial::from_coeffs(coeffs);
    let stats = EngineStats {
        terms,
        nested_sets_visited: visited,
        fy_monomials: Some(hilbert.value_at_one().to_string()),
        ..Default::default()
    };
    EngineResult::checked(hilbert, EngineTag::Fy, stats)
}

/// Either recursion over flats, evaluated bottom-up with every
/// intermediate series memoized by its interval.
pub fn hilbert_recursion(b: &BuildingSet, variant: RecursionVariant) -> Result<EngineResult> {
    let l = b.lattice();
    let (bottom, top) = (b.bottom(), b.top());
    let ids = l.interval(bottom, top);
    let mut memo: FxHashMap<IntervalKey, IntPolynomial> = FxHashMap::default();
    let mut terms = 0u64;
    let key = |x, y| IntervalKey { bottom: x, top: y };
    match variant {
        RecursionVariant::Restriction => {
            // H[F, t] = Σ_{G ∈ (F, t]} χ̄^G[F, G] · H[G, t]
            for &f in ids.iter().rev() {
                let value = if f == top {
                    IntPolynomial::one()
                } else {
                    let mut acc = IntPolynomial::zero();
                    for g in l.interval(f, top) {
                        if g == f {
                            continue;
                        }
                        let c = g_reduced_char_int(b, key(f, g))?;
                        acc += &(&c * &memo[&key(g, top)]);
                        terms += 1;
                    }
                    acc
                };
                memo.insert(key(f, top), value);
            }
            debug_assert!(memo.keys().all(|k| k.top == top));
        }
        RecursionVariant::Contraction => {
            // H[b, F] = Σ_{G ∈ [b, F)} H[b, G] · χ̄^G[G, F]
            for &f in ids.iter() {
                let value = if f == bottom {
                    IntPolynomial::one()
                } else {
                    let mut acc = IntPolynomial::zero();
                    for g in l.interval(bottom, f) {
                        if g == f {
                            continue;
                        }
                        let c = g_reduced_char_int(b, key(g, f))?;
                        acc += &(&memo[&key(bottom, g)] * &c);
                        terms += 1;
                    }
                    acc
                };
                memo.insert(key(bottom, f), value);
            }
        }
    }
    let hilbert = memo[&key(bottom, top)].clone();
    let tag = match variant {
        RecursionVariant::Restriction => EngineTag::RecursionRestriction,
        RecursionVariant::Contraction => EngineTag::RecursionContraction,
    };
    let stats = EngineStats {
        terms,
        memo_entries: memo.len() as u64,
        ..Default::default()
    };
    EngineResult::checked(hilbert, tag, stats)
}

/// Sum over chains `b = F_0 ⊊ ⋯ ⊊ F_m = t` of `Π χ̄^G[F_(i−1), F_i]`.
pub fn hilbert_chains(b: &BuildingSet, cap: usize) -> Result<EngineResult> {
    let l = b.lattice();
    let (bottom, top) = (b.bottom(), b.top());
    if bottom == top {
        return EngineResult::checked(IntPolynomial::one(), EngineTag::Chains, EngineStats::default());
    }
    let ids = l.interval(bottom, top);
    // chains[F] = number of chains from F up to the top
    let mut chains: FxHashMap<FlatId, u128> = FxHashMap::default();
    for &f in ids.iter().rev() {
        let n = if f == top {
            1
        } else {
            l.interval(f, top)
                .iter()
                .filter(|&&g| g != f)
                .map(|g| chains[g])
                .fold(0u128, u128::saturating_add)
        };
        chains.insert(f, n);
    }
    if chains[&bottom] > cap as u128 {
        return Err(Error::TooManyChains { cap });
    }
    let mut links: FxHashMap<(FlatId, FlatId), IntPolynomial> = FxHashMap::default();
    for &f in &ids {
        for g in l.interval(f, top) {
            if g != f {
                links.insert((f, g), g_reduced_char_int(b, IntervalKey { bottom: f, top: g })?);
            }
        }
    }
    let mut by_length: Vec<u64> = Vec::new();
    let mut total = IntPolynomial::zero();
    let mut stack: Vec<(FlatId, IntPolynomial, usize)> = vec![(bottom, IntPolynomial::one(), 0)];
    while let Some((f, prod, len)) = stack.pop() {
        if f == top {
            if by_length.len() <= len {
                by_length.resize(len + 1, 0);
            }
            by_length[len] += 1;
            total += &prod;
            continue;
        }
        for g in l.interval(f, top).into_iter().rev() {
            if g != f {
                stack.push((g, &prod * &links[&(f, g)], len + 1));
            }
        }
    }
    let stats = EngineStats {
        terms: by_length.iter().sum(),
        memo_entries: links.len() as u64,
        chains_by_length: by_length,
        ..Default::default()
    };
    EngineResult::checked(total, EngineTag::Chains, stats)
}

/// Sum over spanning nested sets `S` of `Π_{F ∈ S} χ̄` of `M|F / sup(S, F)`.
pub fn hilbert_spanning(b: &BuildingSet) -> Result<EngineResult> {
    let l = b.lattice();
    let (sum, visited) = b.fold_spanning_nested(
        || (Ok(IntPolynomial::zero()), 0u64),
        |acc, s| {
            acc.1 += 1;
            let Ok(total) = &mut acc.0 else { return };
            if s.is_empty() {
                *total += &IntPolynomial::one();
                return;
            }
            let mut term = IntPolynomial::one();
            for &f in s {
                let key = IntervalKey {
                    bottom: b.sup_below(s, f),
                    top: f,
                };
                match l.reduced_characteristic(key) {
                    Ok(c) => term = &term * &*c,
                    Err(e) => {
                        acc.0 = Err(e);
                        return;
                    }
                }
            }
            *total += &term;
        },
        |a, b| (add_results(a.0, b.0), a.1 + b.1),
    );
    let stats = EngineStats {
        terms: visited,
        nested_sets_visited: visited,
        ..Default::default()
    };
    EngineResult::checked(sum?, EngineTag::Spanning, stats)
}

/// The Hilbert series for `large`, starting from `base`, the Hilbert series
/// for `small ⊆ large`.
///
/// Members of `large \ small` are removed one at a time, always a minimal
/// one, and the removals are replayed backwards as additions. Adding `G` to
/// `G'` adds `(x + ⋯ + x^{|f(G'|G)| − 1}) · H(M|G, G'|G) · H(M/G, G'/G)`.
/// Only matroids are accepted.
pub fn hilbert_convert(small: &BuildingSet, large: &BuildingSet, base: &EngineResult) -> Result<EngineResult> {
    let l = large.lattice();
    if small.key() != large.key() || !std::sync::Arc::ptr_eq(small.lattice(), l) {
        return Err(Error::NoValidOrdering("building sets live on different intervals".into()));
    }
    let (bottom, top) = (large.bottom(), large.top());
    let pm = l.polymatroid();
    let rb = l.rank(bottom);
    let base_set = l.set(bottom);
    let is_matroid_minor = l
        .set(top)
        .difference(base_set)
        .iter()
        .all(|e| pm.rank(pm.closure(base_set.with(e))) == rb + 1);
    if !is_matroid_minor {
        return Err(Error::NotAMatroid);
    }
    if let Some(&m) = small.members().iter().find(|&&m| !large.contains(m)) {
        return Err(Error::NoValidOrdering(format!(
            "{:?} is in the smaller building set only",
            l.labels(m)
        )));
    }
    let mut removals = Vec::new();
    let mut current = large.clone();
    loop {
        let extra: Vec<FlatId> = current.members().iter().copied().filter(|&m| !small.contains(m)).collect();
        let Some(&g) = extra.iter().find(|&&g| !extra.iter().any(|&o| o != g && l.leq(o, g))) else {
            break;
        };
        let next = current.without(g);
        next.validate_above(g).map_err(|e| {
            Error::NoValidOrdering(format!("removing {:?} breaks the building set: {e}", l.labels(g)))
        })?;
        removals.push((g, next.clone()));
        current = next;
    }
    let mut hilbert = base.hilbert.clone();
    let mut terms = 0u64;
    for (g, without) in removals.iter().rev() {
        let k = without.factors(*g).factors.len();
        let lower = hilbert_spanning(&without.induced(bottom, *g)?)?;
        let upper = hilbert_spanning(&without.induced(*g, top)?)?;
        let correction = &(&IntPolynomial::power_range(1, k.saturating_sub(1)) * &lower.hilbert) * &upper.hilbert;
        hilbert += &correction;
        terms += 1;
    }
    let stats = EngineStats {
        terms,
        ..Default::default()
    };
    EngineResult::checked(hilbert, EngineTag::Convert, stats)
}

/// [`hilbert_convert`] from the minimal building set, whose series comes
/// from the spanning engine.
pub fn hilbert_convert_from_minimal(large: &BuildingSet) -> Result<EngineResult> {
    let l = large.lattice();
    if large.key() != l.full_key() {
        return Err(Error::NoValidOrdering("conversion from G_min needs the full lattice".into()));
    }
    let min = BuildingSet::minimal(l)?;
    let base = hilbert_spanning(&min)?;
    hilbert_convert(&min, large, &base)
}

/// Spanning engine when `|f(G)| ≤ 3` and there are fewer than 10^7 spanning
/// nested sets; otherwise the restriction recursion.
pub fn hilbert_auto(b: &BuildingSet) -> Result<EngineResult> {
    if b.top_factors().len() <= 3 && b.count_spanning_bounded(AUTO_SPANNING_LIMIT).is_some() {
        hilbert_spanning(b)
    } else {
        hilbert_recursion(b, RecursionVariant::Restriction)
    }
}

/// Run one engine by tag; `Convert` starts from the minimal building set.
pub fn run_engine(b: &BuildingSet, tag: EngineTag) -> Result<EngineResult> {
    match tag {
        EngineTag::Fy => hilbert_fy(b),
        EngineTag::RecursionRestriction => hilbert_recursion(b, RecursionVariant::Restriction),
        EngineTag::RecursionContraction => hilbert_recursion(b, RecursionVariant::Contraction),
        EngineTag::Chains => hilbert_chains(b, DEFAULT_CHAIN_CAP),
        EngineTag::Spanning => hilbert_spanning(b),
        EngineTag::Convert => hilbert_convert_from_minimal(b),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::tests::fig1;
    use crate::lattice::FlatLattice;
    use crate::polymatroid::Polymatroid;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn fig1_g() -> BuildingSet {
        let l = FlatLattice::build(fig1()).unwrap();
        BuildingSet::from_labels(&l, &[vec!["a"], vec!["b"], vec!["c"], vec!["a", "b", "c"]]).unwrap()
    }

    fn all_engines(b: &BuildingSet) -> Vec<IntPolynomial> {
        let mut out = vec![
            hilbert_fy(b).unwrap().hilbert,
            hilbert_recursion(b, RecursionVariant::Restriction).unwrap().hilbert,
            hilbert_recursion(b, RecursionVariant::Contraction).unwrap().hilbert,
            hilbert_chains(b, DEFAULT_CHAIN_CAP).unwrap().hilbert,
            hilbert_spanning(b).unwrap().hilbert,
        ];
        if b.lattice().polymatroid().is_matroid() {
            out.push(hilbert_convert_from_minimal(b).unwrap().hilbert);
        }
        out
    }

    #[test]
    fn fig1_all_engines() {
        let g = fig1_g();
        for h in all_engines(&g) {
            assert_eq!(h, p(&[1, 4, 5, 4, 1]));
        }
        let a = g.lattice().id_of_labels(&["a"]).unwrap();
        let ga = g.contract(a).unwrap();
        for h in all_engines(&ga) {
            assert_eq!(h, p(&[1, 2, 1]));
        }
    }

    #[test]
    fn k4_min_all_engines() {
        let l = FlatLattice::build(Polymatroid::complete_graph(4).unwrap()).unwrap();
        let g = BuildingSet::minimal(&l).unwrap();
        for h in all_engines(&g) {
            assert_eq!(h, p(&[1, 5, 1]));
        }
        let chains = hilbert_chains(&g, DEFAULT_CHAIN_CAP).unwrap();
        assert_eq!(chains.stats.chains_by_length, vec![0, 1, 13, 18]);
        let fy = hilbert_fy(&g).unwrap();
        assert_eq!(fy.stats.fy_monomials.as_deref(), Some("7"));
    }

    #[test]
    fn boolean_two() {
        let l = FlatLattice::build(Polymatroid::boolean(2).unwrap()).unwrap();
        let small = BuildingSet::minimal(&l).unwrap();
        for h in all_engines(&small) {
            assert_eq!(h, p(&[1]));
        }
        let large = BuildingSet::maximal(&l);
        let base = hilbert_fy(&small).unwrap();
        let conv = hilbert_convert(&small, &large, &base).unwrap();
        assert_eq!(conv.hilbert, p(&[1, 1]));
        assert_eq!(hilbert_fy(&large).unwrap().hilbert, p(&[1, 1]));
    }

    #[test]
    fn chain_cap() {
        let l = FlatLattice::build(Polymatroid::complete_graph(5).unwrap()).unwrap();
        let g = BuildingSet::maximal(&l);
        assert_eq!(hilbert_chains(&g, 10).unwrap_err(), Error::TooManyChains { cap: 10 });
    }

    #[test]
    fn rank_one() {
        let l = FlatLattice::build(Polymatroid::uniform(1, 3).unwrap()).unwrap();
        let g = BuildingSet::minimal(&l).unwrap();
        for h in all_engines(&g) {
            assert_eq!(h, p(&[1]));
        }
    }

    #[test]
    fn convert_rejects_polymatroids() {
        let g = fig1_g();
        assert_eq!(hilbert_convert_from_minimal(&g).unwrap_err(), Error::NotAMatroid);
    }

    #[test]
    fn uniform_minimal() {
        for (k, n) in [(2, 3), (3, 5), (4, 6)] {
            let l = FlatLattice::build(Polymatroid::uniform(k, n).unwrap()).unwrap();
            let g = BuildingSet::minimal(&l).unwrap();
            let want = IntPolynomial::power_range(0, k as usize - 1);
            for h in all_engines(&g) {
                assert_eq!(h, want);
            }
        }
    }

    #[test]
    fn auto_picks_an_agreeing_engine() {
        let l = FlatLattice::build(Polymatroid::complete_graph(5).unwrap()).unwrap();
        let g = BuildingSet::minimal(&l).unwrap();
        let auto = hilbert_auto(&g).unwrap();
        assert_eq!(auto.engine, EngineTag::Spanning);
        assert_eq!(auto.hilbert, p(&[1, 16, 16, 1]));
        let _ = Arc::clone(&l);
    }
}
