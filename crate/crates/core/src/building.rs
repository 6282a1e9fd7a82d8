//! Building sets on intervals of a lattice of flats, and their nested sets.
//!
//! A [`BuildingSet`] lives on an interval `[bottom, top]` of an ambient
//! [`FlatLattice`], which stands for the minor `M|top / bottom`. Members are
//! flats in `(bottom, top]`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{FlatId, FlatLattice, IntervalKey};
use crate::polymatroid::ElemSet;

/// Antichains up to this size are also checked by full enumeration in
/// [`BuildingSet::is_nested`].
pub const FULL_NESTED_CHECK_LIMIT: usize = 12;

#[derive(Clone)]
pub struct BuildingSet {
    lattice: Arc<FlatLattice>,
    bottom: FlatId,
    top: FlatId,
    members: Vec<FlatId>,
}

impl std::fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BuildingSet")
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .field("members", &self.members)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorDecomposition {
    pub flat: FlatId,
    pub factors: Vec<FlatId>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildingStats {
    pub members: usize,
    pub factor_count: usize,
    /// Number of nested sets of each cardinality, starting at the empty set.
    pub nested_faces: Vec<u64>,
    pub spanning_nested: u64,
}

impl BuildingSet {
    /// `L(M) \ {∅}`.
    pub fn maximal(lattice: &Arc<FlatLattice>) -> Self {
        Self::unchecked(lattice, 0, lattice.top(), (1..lattice.len()).collect())
    }

    /// The connected flats.
    pub fn minimal(lattice: &Arc<FlatLattice>) -> Result<Self> {
        Ok(Self::unchecked(lattice, 0, lattice.top(), lattice.connected_flats()?))
    }

    /// Validate `members` as a building set of the whole lattice.
    pub fn new(lattice: &Arc<FlatLattice>, members: Vec<FlatId>) -> Result<Self> {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.iter().find(|&&m| m == 0 || m >= lattice.len()) {
            return Err(Error::NotABuildingSet {
                flat: if m == 0 { vec![] } else { vec![format!("#{m}")] },
                clause: "members are nonempty flats".into(),
            });
        }
        let b = Self::unchecked(lattice, 0, lattice.top(), members);
        b.validate()?;
        Ok(b)
    }

    pub fn from_labels<S: AsRef<str>>(lattice: &Arc<FlatLattice>, flats: &[Vec<S>]) -> Result<Self> {
        let ids = flats
            .iter()
            .map(|f| lattice.id_of_labels(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, ids)
    }

    fn unchecked(lattice: &Arc<FlatLattice>, bottom: FlatId, top: FlatId, members: Vec<FlatId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        BuildingSet {
            lattice: Arc::clone(lattice),
            bottom,
            top,
            members,
        }
    }

    pub fn lattice(&self) -> &Arc<FlatLattice> {
        &self.lattice
    }

    pub fn bottom(&self) -> FlatId {
        self.bottom
    }

    pub fn top(&self) -> FlatId {
        self.top
    }

    pub fn key(&self) -> IntervalKey {
        IntervalKey {
            bottom: self.bottom,
            top: self.top,
        }
    }

    pub fn members(&self) -> &[FlatId] {
        &self.members
    }

    pub fn contains(&self, f: FlatId) -> bool {
        self.members.binary_search(&f).is_ok()
    }

    pub fn member_labels(&self) -> Vec<Vec<String>> {
        self.members.iter().map(|&m| self.lattice.labels(m)).collect()
    }

    /// Maximal members below or equal to `flat`.
    pub fn factors(&self, flat: FlatId) -> FactorDecomposition {
        let factors = if self.contains(flat) {
            vec![flat]
        } else {
            let l = &self.lattice;
            let below: Vec<FlatId> = self.members.iter().copied().filter(|&m| l.leq(m, flat)).collect();
            below
                .iter()
                .copied()
                .filter(|&m| !below.iter().any(|&o| o != m && l.leq(m, o)))
                .collect()
        };
        FactorDecomposition { flat, factors }
    }

    /// `f(G)`: the factors of the top of the interval.
    pub fn top_factors(&self) -> Vec<FlatId> {
        self.factors(self.top).factors
    }

    /// Check every flat of the interval factors as a rank-additive product.
    ///
    /// For a flat `F` with factors `G_1..G_k` this checks
    /// `Σ (rk G_i − rk b) = rk F − rk b`, `|[b, F]| = Π |[b, G_i]|`, and
    /// that `Z = ∨ t_i` recovers every `t_i` as `Z ∧ G_i` for every tuple
    /// `t_i ∈ [b, G_i]`. Cardinality plus injectivity gives the lattice
    /// isomorphism.
    pub fn validate(&self) -> Result<()> {
        let l = &self.lattice;
        let b = self.bottom;
        for &m in &self.members {
            if m == b || !l.leq(b, m) || !l.leq(m, self.top) {
                return Err(self.invalid(m, "members lie in the interval above the bottom"));
            }
        }
        let flats: Vec<FlatId> = l.interval(b, self.top).into_iter().filter(|&f| f != b).collect();
        match flats.par_iter().find_map_first(|&f| self.check_flat(f).err()) {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    fn check_flat(&self, f: FlatId) -> Result<()> {
        let l = &self.lattice;
        let b = self.bottom;
        let rb = l.rank(b);
        {
            let factors = self.factors(f).factors;
            if factors.is_empty() {
                return Err(self.invalid(f, "every atom lies in the building set"));
            }
            let sum: u32 = factors.iter().map(|&g| l.rank(g) - rb).sum();
            if sum != l.rank(f) - rb {
                return Err(self.invalid(f, "rank additivity of the factors"));
            }
            if factors == [f] {
                return Ok(());
            }
            let parts: Vec<Vec<FlatId>> = factors.iter().map(|&g| l.interval(b, g)).collect();
            let product = parts
                .iter()
                .try_fold(1usize, |acc, p| acc.checked_mul(p.len()))
                .unwrap_or(usize::MAX);
            if product != l.interval(b, f).len() {
                return Err(self.invalid(f, "interval cardinality is the product over the factors"));
            }
            let mut idx = vec![0usize; parts.len()];
            loop {
                let union = idx
                    .iter()
                    .zip(&parts)
                    .fold(ElemSet::EMPTY, |acc, (&i, p)| acc.union(l.set(p[i])));
                let z = l.closure_id(union);
                for ((&i, p), &g) in idx.iter().zip(&parts).zip(&factors) {
                    if l.meet(z, g) != p[i] {
                        return Err(self.invalid(f, "the join map from the product of intervals is injective"));
                    }
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return Ok(());
                    }
                    idx[k] += 1;
                    if idx[k] < parts[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }

    /// Re-check only the flats above `g`; after removing a single member
    /// `g` from a building set, factor decompositions elsewhere are unchanged.
    pub fn validate_above(&self, g: FlatId) -> Result<()> {
        let flats = self.lattice.interval(g, self.top);
        match flats.par_iter().find_map_first(|&f| self.check_flat(f).err()) {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Copy with `g` removed, unchecked.
    pub fn without(&self, g: FlatId) -> Self {
        let members = self.members.iter().copied().filter(|&m| m != g).collect();
        Self::unchecked(&self.lattice, self.bottom, self.top, members)
    }

    /// Number of spanning nested sets, or `None` once it exceeds `limit`.
    pub fn count_spanning_bounded(&self, limit: u64) -> Option<u64> {
        if self.bottom == self.top {
            return Some(1);
        }
        let base = self.top_factors();
        let candidates: Vec<FlatId> = self.members.iter().copied().filter(|m| !base.contains(m)).collect();
        let mut count = 0u64;
        let mut current = base;
        fn go(b: &BuildingSet, cands: &[FlatId], from: usize, cur: &mut Vec<FlatId>, count: &mut u64, limit: u64) -> bool {
            *count += 1;
            if *count > limit {
                return false;
            }
            for i in from..cands.len() {
                if b.can_extend(cur, cands[i]) {
                    cur.push(cands[i]);
                    let ok = go(b, cands, i + 1, cur, count, limit);
                    cur.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        go(self, &candidates, 0, &mut current, &mut count, limit).then_some(count)
    }

    fn invalid(&self, f: FlatId, clause: &str) -> Error {
        Error::NotABuildingSet {
            flat: self.lattice.labels(f),
            clause: clause.to_string(),
        }
    }

    /// The building set induced on `[b, t] ⊆ [bottom, top]`:
    /// `{H ∨ b : H ∈ G, H ≤ t, H ≰ b}`.
    pub fn induced(&self, b: FlatId, t: FlatId) -> Result<Self> {
        let l = &self.lattice;
        if !(l.leq(self.bottom, b) && l.leq(b, t) && l.leq(t, self.top)) {
            return Err(Error::InvalidInterval { bottom: b, top: t });
        }
        if (b, t) == (self.bottom, self.top) {
            return Ok(self.clone());
        }
        let mut members: Vec<FlatId> = self
            .members
            .iter()
            .filter(|&&h| l.leq(h, t) && !l.leq(h, b))
            .map(|&h| if b == self.bottom { h } else { l.join(h, b) })
            .collect();
        members.sort_unstable();
        members.dedup();
        let out = Self::unchecked(l, b, t, members);
        if cfg!(debug_assertions) && l.interval(b, t).len() <= 64 {
            out.validate()
                .map_err(|e| Error::Internal(format!("induced building set failed validation: {e}")))?;
        }
        Ok(out)
    }

    /// `G|F` on `[bottom, F]`.
    pub fn restrict(&self, f: FlatId) -> Result<Self> {
        self.induced(self.bottom, f)
    }

    /// `G/F` on `[F, top]`.
    pub fn contract(&self, f: FlatId) -> Result<Self> {
        self.induced(f, self.top)
    }

    /// `f` of the building set induced on `[b, t]`, without materializing it.
    ///
    /// Every member of the induced set lies below `G ∨ b` for some factor
    /// `G` of `t`, so its maximal elements are among those joins.
    pub fn induced_factors(&self, b: FlatId, t: FlatId) -> Vec<FlatId> {
        let l = &self.lattice;
        if b == t {
            return Vec::new();
        }
        let mut cands: Vec<FlatId> = self
            .factors(t)
            .factors
            .into_iter()
            .filter(|&g| !l.leq(g, b))
            .map(|g| l.join(g, b))
            .collect();
        cands.sort_unstable();
        cands.dedup();
        let maximal: Vec<FlatId> = cands
            .iter()
            .copied()
            .filter(|&c| !cands.iter().any(|&o| o != c && l.leq(c, o)))
            .collect();
        maximal
    }

    /// Nestedness by enumerating every antichain of `set` of size at least 2.
    pub fn is_nested_full(&self, set: &[FlatId]) -> bool {
        let l = &self.lattice;
        let n = set.len();
        assert!(n <= 24, "full nested check on {n} members");
        for mask in 1u32..(1 << n) {
            if mask.count_ones() < 2 {
                continue;
            }
            let chosen: Vec<FlatId> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| set[i]).collect();
            let antichain = chosen
                .iter()
                .enumerate()
                .all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !l.leq(a, b) && !l.leq(b, a)));
            if antichain && self.contains(l.interval_join_closure(&chosen)) {
                return false;
            }
        }
        true
    }

    /// Whether `nested ∪ {f}` is nested, given that `nested` is.
    ///
    /// Only antichains containing `f` are examined.
    pub fn can_extend(&self, nested: &[FlatId], f: FlatId) -> bool {
        let l = &self.lattice;
        let incomparable: Vec<FlatId> = nested
            .iter()
            .copied()
            .filter(|&s| !l.leq(s, f) && !l.leq(f, s))
            .collect();
        let mut chosen = Vec::with_capacity(incomparable.len());
        self.extend_search(&incomparable, 0, l.set(f), &mut chosen)
    }

    fn extend_search(&self, pool: &[FlatId], from: usize, union: ElemSet, chosen: &mut Vec<FlatId>) -> bool {
        let l = &self.lattice;
        for i in from..pool.len() {
            let s = pool[i];
            if chosen.iter().any(|&c| l.leq(c, s) || l.leq(s, c)) {
                continue;
            }
            let u = union.union(l.set(s));
            if self.contains(l.closure_id(u)) {
                return false;
            }
            chosen.push(s);
            let ok = self.extend_search(pool, i + 1, u, chosen);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// Nestedness, built up one member at a time; also runs the full check
    /// on small sets and requires both to agree.
    pub fn is_nested(&self, set: &[FlatId]) -> bool {
        if set.iter().any(|&f| !self.contains(f)) {
            return false;
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut acc: Vec<FlatId> = Vec::with_capacity(sorted.len());
        let mut incremental = true;
        for &f in &sorted {
            if !self.can_extend(&acc, f) {
                incremental = false;
                break;
            }
            acc.push(f);
        }
        if sorted.len() <= FULL_NESTED_CHECK_LIMIT {
            debug_assert_eq!(incremental, self.is_nested_full(&sorted));
        }
        incremental
    }

    /// Join of the members of `nested` strictly below `f`, or the bottom.
    pub fn sup_below(&self, nested: &[FlatId], f: FlatId) -> FlatId {
        let l = &self.lattice;
        let union = nested
            .iter()
            .filter(|&&s| s != f && l.leq(s, f))
            .fold(l.set(self.bottom), |acc, &s| acc.union(l.set(s)));
        l.closure_id(union)
    }

    /// Fold over all nested sets (including the empty one) in lexicographic
    /// order of sorted id lists; top-level branches run in parallel and are
    /// combined left to right.
    pub fn fold_nested<T, I, V, C>(&self, identity: I, visit: V, combine: C) -> T
    where
        T: Send,
        I: Fn() -> T + Sync,
        V: Fn(&mut T, &[FlatId]) + Sync,
        C: Fn(T, T) -> T + Sync,
    {
        self.fold_from(Vec::new(), identity, visit, combine)
    }

    /// Like [`Self::fold_nested`] over spanning nested sets: those
    /// containing `f(G)`, equivalently with join equal to the top.
    pub fn fold_spanning_nested<T, I, V, C>(&self, identity: I, visit: V, combine: C) -> T
    where
        T: Send,
        I: Fn() -> T + Sync,
        V: Fn(&mut T, &[FlatId]) + Sync,
        C: Fn(T, T) -> T + Sync,
    {
        if self.bottom == self.top {
            let mut acc = identity();
            visit(&mut acc, &[]);
            return acc;
        }
        let base = self.top_factors();
        debug_assert!(self.is_nested(&base));
        let l = &self.lattice;
        let checked = |acc: &mut T, s: &[FlatId]| {
            assert_eq!(l.interval_join_closure(s), self.top, "spanning nested set must join to the top");
            visit(acc, s)
        };
        self.fold_from(base, identity, checked, combine)
    }

    fn fold_from<T, I, V, C>(&self, base: Vec<FlatId>, identity: I, visit: V, combine: C) -> T
    where
        T: Send,
        I: Fn() -> T + Sync,
        V: Fn(&mut T, &[FlatId]) + Sync,
        C: Fn(T, T) -> T + Sync,
    {
        let fixed: Vec<FlatId> = base.clone();
        let candidates: Vec<FlatId> = self
            .members
            .iter()
            .copied()
            .filter(|m| !fixed.contains(m))
            .collect();
        let mut root = identity();
        let mut current = base.clone();
        current.sort_unstable();
        visit(&mut root, &current);
        let branches: Vec<T> = (0..candidates.len())
            .into_par_iter()
            .map(|i| {
                let mut acc = identity();
                let f = candidates[i];
                if self.can_extend(&base, f) {
                    let mut current = base.clone();
                    current.push(f);
                    self.dfs(&candidates, i + 1, &mut current, &mut acc, &visit);
                }
                acc
            })
            .collect();
        branches.into_iter().fold(root, &combine)
    }

    fn dfs<T, V>(&self, candidates: &[FlatId], from: usize, current: &mut Vec<FlatId>, acc: &mut T, visit: &V)
    where
        V: Fn(&mut T, &[FlatId]),
    {
        let mut sorted = current.clone();
        sorted.sort_unstable();
        visit(acc, &sorted);
        for i in from..candidates.len() {
            let f = candidates[i];
            if self.can_extend(current, f) {
                current.push(f);
                self.dfs(candidates, i + 1, current, acc, visit);
                current.pop();
            }
        }
    }

    /// All nested sets, sorted lexicographically.
    pub fn enumerate_nested(&self) -> Vec<Vec<FlatId>> {
        let mut all = self.fold_nested(Vec::new, |acc, s| acc.push(s.to_vec()), concat);
        all.sort();
        all
    }

    pub fn enumerate_spanning_nested(&self) -> Vec<Vec<FlatId>> {
        let mut all = self.fold_spanning_nested(Vec::new, |acc, s| acc.push(s.to_vec()), concat);
        all.sort();
        all
    }

    /// Face counts of the nested set complex, by cardinality.
    pub fn nested_face_counts(&self) -> Vec<u64> {
        self.fold_nested(
            Vec::new,
            |acc: &mut Vec<u64>, s| {
                if acc.len() <= s.len() {
                    acc.resize(s.len() + 1, 0);
                }
                acc[s.len()] += 1;
            },
            add_counts,
        )
    }

    /// Spanning nested sets counted by cardinality.
    pub fn spanning_counts(&self) -> Vec<u64> {
        self.fold_spanning_nested(
            Vec::new,
            |acc: &mut Vec<u64>, s| {
                if acc.len() <= s.len() {
                    acc.resize(s.len() + 1, 0);
                }
                acc[s.len()] += 1;
            },
            add_counts,
        )
    }

    pub fn nested_complex_stats(&self) -> BuildingStats {
        BuildingStats {
            members: self.members.len(),
            factor_count: self.top_factors().len(),
            nested_faces: self.nested_face_counts(),
            spanning_nested: self.spanning_counts().iter().sum(),
        }
    }
}

fn concat<T>(mut a: Vec<T>, b: Vec<T>) -> Vec<T> {
    a.extend(b);
    a
}

pub(crate) fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}
