//! The lattice of flats of a polymatroid.
//!
//! Flats get dense ids sorted by rank, then lexicographically by element
//! indices, so ids form a linear extension of the inclusion order:
//! id 0 is the empty flat and the last id is the ground set.

use std::cell::RefCell;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polymatroid::{ElemSet, Polymatroid};
use crate::IntPolynomial;

pub type FlatId = usize;

pub const DEFAULT_FLAT_CAP: usize = 2_000_000;
/// Non-matroids up to this many flats also run the lattice-product
/// connectivity test and compare it with the bipartition test.
pub const LATTICE_CONNECTIVITY_LIMIT: usize = 4096;

/// The cap from `CHOWCALC_FLAT_CAP`, or [`DEFAULT_FLAT_CAP`].
pub fn flat_cap() -> usize {
    std::env::var("CHOWCALC_FLAT_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_FLAT_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntervalKey {
    pub bottom: FlatId,
    pub top: FlatId,
}

type PolyCache = RwLock<FxHashMap<(FlatId, FlatId), Arc<IntPolynomial>>>;

pub struct FlatLattice {
    pm: Arc<Polymatroid>,
    flats: Vec<ElemSet>,
    ranks: Vec<u32>,
    index: FxHashMap<ElemSet, FlatId>,
    upper: Vec<Vec<FlatId>>,
    lower: Vec<Vec<FlatId>>,
    mobius: RwLock<FxHashMap<(FlatId, FlatId), BigInt>>,
    chi: PolyCache,
    reduced: PolyCache,
    closures: RwLock<FxHashMap<ElemSet, FlatId>>,
    connected: OnceLock<Result<Vec<FlatId>>>,
}

impl std::fmt::Debug for FlatLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlatLattice")
            .field("flats", &self.flats.len())
            .field("rank", &self.ranks.last())
            .finish_non_exhaustive()
    }
}

thread_local! {
    static STAMPS: RefCell<(Vec<u32>, u32)> = const { RefCell::new((Vec::new(), 0)) };
}

fn lex_cmp(a: ElemSet, b: ElemSet) -> std::cmp::Ordering {
    a.iter().cmp(b.iter())
}

impl FlatLattice {
    pub fn build(pm: Arc<Polymatroid>) -> Result<Arc<Self>> {
        Self::build_with_cap(pm, flat_cap())
    }

    pub fn build_with_cap(pm: Arc<Polymatroid>, cap: usize) -> Result<Arc<Self>> {
        let bottom = pm.closure(ElemSet::EMPTY);
        if !bottom.is_empty() {
            let loop_label = pm.ground().labels()[bottom.first().unwrap()].clone();
            return Err(Error::LoopDetected(loop_label));
        }
        let full = pm.full_set();
        let mut covers: FxHashMap<ElemSet, Vec<ElemSet>> = FxHashMap::default();
        let mut seen: FxHashSet<ElemSet> = FxHashSet::default();
        seen.insert(bottom);
        let mut frontier = vec![bottom];
        while !frontier.is_empty() {
            let found: Vec<(ElemSet, Vec<ElemSet>)> = frontier
                .par_iter()
                .map(|&f| (f, upper_cover_sets(&pm, f, full)))
                .collect();
            let mut next = Vec::new();
            for (f, cs) in found {
                for &c in &cs {
                    if seen.insert(c) {
                        next.push(c);
                    }
                }
                covers.insert(f, cs);
            }
            if seen.len() > cap {
                return Err(Error::LatticeTooLarge { cap });
            }
            frontier = next;
        }
        let mut flats: Vec<ElemSet> = seen.into_iter().collect();
        let ranks_of: FxHashMap<ElemSet, u32> = flats.par_iter().map(|&f| (f, pm.rank(f))).collect();
        flats.sort_by(|&a, &b| ranks_of[&a].cmp(&ranks_of[&b]).then_with(|| lex_cmp(a, b)));
        let index: FxHashMap<ElemSet, FlatId> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let ranks: Vec<u32> = flats.iter().map(|f| ranks_of[f]).collect();
        let mut upper: Vec<Vec<FlatId>> = flats
            .iter()
            .map(|f| covers[f].iter().map(|c| index[c]).collect())
            .collect();
        let mut lower = vec![Vec::new(); flats.len()];
        for (i, ups) in upper.iter_mut().enumerate() {
            ups.sort_unstable();
            for &u in ups.iter() {
                lower[u].push(i);
            }
        }
        Ok(Arc::new(FlatLattice {
            pm,
            flats,
            ranks,
            index,
            upper,
            lower,
            mobius: Default::default(),
            chi: Default::default(),
            reduced: Default::default(),
            closures: Default::default(),
            connected: OnceLock::new(),
        }))
    }

    pub fn polymatroid(&self) -> &Arc<Polymatroid> {
        &self.pm
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn bottom(&self) -> FlatId {
        0
    }

    pub fn top(&self) -> FlatId {
        self.flats.len() - 1
    }

    pub fn set(&self, id: FlatId) -> ElemSet {
        self.flats[id]
    }

    pub fn rank(&self, id: FlatId) -> u32 {
        self.ranks[id]
    }

    pub fn labels(&self, id: FlatId) -> Vec<String> {
        self.pm.ground().labels_of(self.flats[id])
    }

    pub fn id_of(&self, set: ElemSet) -> Option<FlatId> {
        self.index.get(&set).copied()
    }

    pub fn id_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<FlatId> {
        let set = self.pm.ground().set_of(labels)?;
        self.id_of(set)
            .ok_or_else(|| Error::NotAFlat(labels.iter().map(|l| l.as_ref().to_string()).collect()))
    }

    /// Id of the closure of an arbitrary subset.
    pub fn closure_id(&self, set: ElemSet) -> FlatId {
        if let Some(&id) = self.index.get(&set) {
            return id;
        }
        if let Some(&id) = self.closures.read().unwrap().get(&set) {
            return id;
        }
        let id = self.index[&self.pm.closure(set)];
        self.closures.write().unwrap().insert(set, id);
        id
    }

    pub fn leq(&self, a: FlatId, b: FlatId) -> bool {
        self.flats[a].is_subset(self.flats[b])
    }

    pub fn upper_covers(&self, id: FlatId) -> &[FlatId] {
        &self.upper[id]
    }

    pub fn lower_covers(&self, id: FlatId) -> &[FlatId] {
        &self.lower[id]
    }

    pub fn atoms(&self) -> &[FlatId] {
        &self.upper[0]
    }

    pub fn join(&self, a: FlatId, b: FlatId) -> FlatId {
        self.closure_id(self.flats[a].union(self.flats[b]))
    }

    pub fn meet(&self, a: FlatId, b: FlatId) -> FlatId {
        self.index[&self.flats[a].intersection(self.flats[b])]
    }

    /// Join of a nonempty family of flats.
    pub fn interval_join_closure(&self, ids: &[FlatId]) -> FlatId {
        assert!(!ids.is_empty(), "join of an empty family");
        let union = ids.iter().fold(ElemSet::EMPTY, |acc, &i| acc.union(self.flats[i]));
        self.closure_id(union)
    }

    pub fn key(&self, bottom: FlatId, top: FlatId) -> Result<IntervalKey> {
        if bottom < self.len() && top < self.len() && self.leq(bottom, top) {
            Ok(IntervalKey { bottom, top })
        } else {
            Err(Error::InvalidInterval { bottom, top })
        }
    }

    pub fn full_key(&self) -> IntervalKey {
        IntervalKey {
            bottom: 0,
            top: self.top(),
        }
    }

    /// Ids of `[bottom, top]` in increasing order; empty if `bottom ≰ top`.
    pub fn interval(&self, bottom: FlatId, top: FlatId) -> Vec<FlatId> {
        if !self.leq(bottom, top) {
            return Vec::new();
        }
        if bottom == 0 && top == self.top() {
            return (0..self.len()).collect();
        }
        let top_set = self.flats[top];
        STAMPS.with(|cell| {
            let mut guard = cell.borrow_mut();
            let (stamps, counter) = &mut *guard;
            if stamps.len() < self.len() {
                stamps.resize(self.len(), 0);
            }
            *counter = counter.wrapping_add(1);
            if *counter == 0 {
                stamps.iter_mut().for_each(|s| *s = 0);
                *counter = 1;
            }
            let stamp = *counter;
            let mut out = vec![bottom];
            stamps[bottom] = stamp;
            let mut i = 0;
            while i < out.len() {
                let f = out[i];
                i += 1;
                for &u in &self.upper[f] {
                    if stamps[u] != stamp && self.flats[u].is_subset(top_set) {
                        stamps[u] = stamp;
                        out.push(u);
                    }
                }
            }
            out.sort_unstable();
            out
        })
    }

    /// `μ(bottom, top)`.
    pub fn mobius(&self, bottom: FlatId, top: FlatId) -> Result<BigInt> {
        self.key(bottom, top)?;
        if let Some(v) = self.mobius.read().unwrap().get(&(bottom, top)) {
            return Ok(v.clone());
        }
        let ids = self.interval(bottom, top);
        let mut vals: FxHashMap<FlatId, BigInt> = FxHashMap::default();
        for &f in &ids {
            let v = if f == bottom {
                BigInt::one()
            } else {
                let mut s = BigInt::zero();
                for &g in &ids {
                    if g == f {
                        break;
                    }
                    if self.leq(g, f) {
                        s -= &vals[&g];
                    }
                }
                s
            };
            vals.insert(f, v);
        }
        let result = vals[&top].clone();
        let mut memo = self.mobius.write().unwrap();
        for (f, v) in vals {
            memo.insert((bottom, f), v);
        }
        Ok(result)
    }

    /// `Σ_{F ∈ [b, t]} μ(b, F) x^{rk t − rk F}`, straight from the Möbius function.
    pub fn characteristic_polynomial(&self, key: IntervalKey) -> Result<IntPolynomial> {
        self.key(key.bottom, key.top)?;
        let rt = self.rank(key.top) as usize;
        let mut coeffs = vec![BigInt::zero(); rt - self.rank(key.bottom) as usize + 1];
        for f in self.interval(key.bottom, key.top) {
            coeffs[rt - self.rank(f) as usize] += self.mobius(key.bottom, f)?;
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }

    /// Characteristic polynomial of `[bottom, top]`, cached.
    ///
    /// Uses `Σ_{F ∈ [A, t]} χ_{[F, t]} = x^{rk t − rk A}`, solved downward
    /// from `t`; this fills the cache for every `[F, t]` on the way. Agrees
    /// with [`Self::characteristic_polynomial`].
    pub fn chi(&self, bottom: FlatId, top: FlatId) -> Result<Arc<IntPolynomial>> {
        self.key(bottom, top)?;
        if let Some(p) = self.chi.read().unwrap().get(&(bottom, top)) {
            return Ok(Arc::clone(p));
        }
        let ids = self.interval(bottom, top);
        let known: Vec<Option<Arc<IntPolynomial>>> = {
            let cache = self.chi.read().unwrap();
            ids.iter().map(|&f| cache.get(&(f, top)).cloned()).collect()
        };
        let rt = self.rank(top) as usize;
        let mut vals = known;
        let mut fresh = Vec::new();
        for pos in (0..ids.len()).rev() {
            if vals[pos].is_some() {
                continue;
            }
            let f = ids[pos];
            let mut p = IntPolynomial::monomial(BigInt::one(), rt - self.rank(f) as usize);
            for g in self.interval(f, top) {
                if g != f {
                    let gp = ids.binary_search(&g).expect("sub-interval");
                    p -= vals[gp].as_deref().expect("filled above");
                }
            }
            let p = Arc::new(p);
            fresh.push((f, Arc::clone(&p)));
            vals[pos] = Some(p);
        }
        let mut cache = self.chi.write().unwrap();
        for (f, p) in fresh {
            cache.insert((f, top), p);
        }
        Ok(Arc::clone(vals[0].as_ref().unwrap()))
    }

    /// `χ / (x − 1)`, or `1` on a singleton interval.
    pub fn reduced_characteristic(&self, key: IntervalKey) -> Result<Arc<IntPolynomial>> {
        let (b, t) = (key.bottom, key.top);
        if let Some(p) = self.reduced.read().unwrap().get(&(b, t)) {
            return Ok(Arc::clone(p));
        }
        let value = if b == t {
            self.key(b, t)?;
            IntPolynomial::one()
        } else {
            let chi = self.chi(b, t)?;
            if !chi.value_at_one().is_zero() {
                return Err(Error::NonzeroRemainder(format!(
                    "characteristic polynomial {chi} of [{b}, {t}] does not vanish at 1"
                )));
            }
            chi.exact_divide(&IntPolynomial::from_i64s(&[-1, 1]))?
        };
        let value = Arc::new(value);
        self.reduced.write().unwrap().insert((b, t), Arc::clone(&value));
        Ok(value)
    }

    /// Nonempty flats `F` with `M|F` connected, in id order.
    pub fn connected_flats(&self) -> Result<Vec<FlatId>> {
        self.connected
            .get_or_init(|| {
                let use_lattice = !self.pm.is_matroid() && self.len() <= LATTICE_CONNECTIVITY_LIMIT;
                let flags: Vec<Result<bool>> = (1..self.len())
                    .into_par_iter()
                    .map(|f| {
                        let by_rank = self.pm.is_connected_on(self.flats[f]);
                        if use_lattice {
                            let by_lattice = self.product_decomposition(f).is_none();
                            if by_lattice != by_rank {
                                return Err(Error::Internal(format!(
                                    "connectivity tests disagree on flat {:?}",
                                    self.labels(f)
                                )));
                            }
                        }
                        Ok(by_rank)
                    })
                    .collect();
                let mut out = Vec::new();
                for (i, flag) in flags.into_iter().enumerate() {
                    if flag? {
                        out.push(i + 1);
                    }
                }
                Ok(out)
            })
            .clone()
    }

    pub fn is_connected_flat(&self, id: FlatId) -> Result<bool> {
        Ok(id != 0 && self.connected_flats()?.binary_search(&id).is_ok())
    }

    /// A nontrivial decomposition of `[∅, F]` as a product `[∅, A] × [∅, B]`
    /// of ranked lattices, if one exists.
    ///
    /// `(X, Y) ↦ X ∨ Y` must be a bijection with inverse `Z ↦ (Z ∧ A, Z ∧ B)`
    /// and ranks must add.
    pub fn product_decomposition(&self, f: FlatId) -> Option<(FlatId, FlatId)> {
        let below = self.interval(0, f);
        let size = below.len();
        let counts: FxHashMap<FlatId, usize> = below.iter().map(|&a| (a, self.interval(0, a).len())).collect();
        for &a in &below[1..] {
            if a == f {
                continue;
            }
            for &b in &below[1..] {
                if b <= a || b == f {
                    continue;
                }
                if self.ranks[a] + self.ranks[b] != self.ranks[f]
                    || self.meet(a, b) != 0
                    || self.join(a, b) != f
                    || counts[&a] * counts[&b] != size
                {
                    continue;
                }
                let ok = below.iter().all(|&z| {
                    let (za, zb) = (self.meet(z, a), self.meet(z, b));
                    self.join(za, zb) == z && self.ranks[za] + self.ranks[zb] == self.ranks[z]
                });
                if ok {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn dump(&self, with_mobius: bool) -> Result<LatticeDump> {
        let connected = self.connected_flats()?;
        let flats = (0..self.len())
            .map(|id| FlatEntry {
                id,
                elements: self.labels(id),
                rank: self.ranks[id],
                connected: connected.binary_search(&id).is_ok(),
            })
            .collect();
        let mobius = if with_mobius {
            let mut out = Vec::new();
            for b in 0..self.len() {
                for t in self.interval(b, self.top()) {
                    out.push(MobiusEntry {
                        bottom: b,
                        top: t,
                        value: self.mobius(b, t)?.to_string(),
                    });
                }
            }
            Some(out)
        } else {
            None
        };
        Ok(LatticeDump {
            flat_count: self.len(),
            rank: self.ranks[self.top()],
            flats,
            mobius,
        })
    }
}

fn upper_cover_sets(pm: &Polymatroid, f: ElemSet, full: ElemSet) -> Vec<ElemSet> {
    let mut cands: Vec<ElemSet> = Vec::new();
    let mut covered = f;
    for e in full.difference(f).iter() {
        // In a matroid every cl(F ∪ e) is a cover, so elements already
        // absorbed by one need no closure of their own.
        if pm.is_matroid() && covered.contains(e) {
            continue;
        }
        let c = pm.closure(f.with(e));
        covered = covered.union(c);
        if !cands.contains(&c) {
            cands.push(c);
        }
    }
    let minimal: Vec<ElemSet> = cands
        .iter()
        .copied()
        .filter(|&c| !cands.iter().any(|&d| d != c && d.is_subset(c)))
        .collect();
    minimal
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatEntry {
    pub id: FlatId,
    pub elements: Vec<String>,
    pub rank: u32,
    pub connected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MobiusEntry {
    pub bottom: FlatId,
    pub top: FlatId,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeDump {
    pub flat_count: usize,
    pub rank: u32,
    pub flats: Vec<FlatEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mobius: Option<Vec<MobiusEntry>>,
}
