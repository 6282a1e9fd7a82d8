//! Loopless polymatroids given by rank oracles.
//!
//! A [`Polymatroid`] owns a labeled ground set and a rank backend. Subsets
//! are [`ElemSet`] bit masks over the canonical element indices, so the
//! ground set is limited to [`MAX_GROUND`] elements.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 128;

/// Subset of a ground set, as a bit mask over element indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(pub u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ElemSet(1u128 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        ElemSet(self.0 | 1u128 << i)
    }

    pub fn without(self, i: usize) -> Self {
        ElemSet(self.0 & !(1u128 << i))
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = ElemSet> {
        let full = self.0;
        let mut cur: Option<u128> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some((c.wrapping_sub(full)) & full) };
            Some(ElemSet(c))
        })
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        Ok(Self { labels, index })
    }

    pub fn numbered(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string()).collect()).expect("distinct labels")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn full(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElemSet> {
        labels.iter().try_fold(ElemSet::EMPTY, |acc, l| {
            self.index_of(l.as_ref())
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::parse("element", format!("unknown element {:?}", l.as_ref())))
        })
    }

    pub fn labels_of(&self, set: ElemSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    fn extended(&self, label: &str) -> Result<Self> {
        if self.index.contains_key(label) {
            return Err(Error::LabelCollision(label.to_string()));
        }
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        Self::new(labels)
    }
}

#[derive(Debug)]
enum Backend {
    Uniform { rank: u32 },
    Boolean,
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    Table(FxHashMap<ElemSet, u32>),
    /// Flats with ranks, sorted by rank; rank of a set is that of the
    /// smallest flat containing it.
    Lattice(Vec<(ElemSet, u32)>),
    DirectSum(Arc<Polymatroid>, Arc<Polymatroid>),
    Minor {
        inner: Arc<Polymatroid>,
        keep: Vec<usize>,
        contracted: ElemSet,
        contracted_rank: u32,
    },
    /// The new element is the last index.
    FreeExtension(Arc<Polymatroid>),
    PrincipalExtension { inner: Arc<Polymatroid>, flat: ElemSet },
}

pub struct Polymatroid {
    ground: GroundSet,
    backend: Backend,
    full_rank: u32,
    is_matroid: bool,
    memo: Option<RwLock<FxHashMap<ElemSet, u32>>>,
}

impl fmt::Debug for Polymatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polymatroid")
            .field("ground", &self.ground.labels)
            .field("rank", &self.full_rank)
            .field("is_matroid", &self.is_matroid)
            .finish_non_exhaustive()
    }
}

impl Polymatroid {
    fn assemble(ground: GroundSet, backend: Backend, memoize: bool) -> Self {
        let mut m = Polymatroid {
            ground,
            backend,
            full_rank: 0,
            is_matroid: false,
            memo: memoize.then(|| RwLock::new(FxHashMap::default())),
        };
        m.full_rank = m.rank(m.ground.full());
        m.is_matroid = (0..m.ground.len()).all(|i| m.rank(ElemSet::singleton(i)) <= 1);
        m
    }

    /// Build and check looplessness. Axioms are checked by [`Self::validate`].
    fn checked(ground: GroundSet, backend: Backend, memoize: bool) -> Result<Arc<Self>> {
        let m = Self::assemble(ground, backend, memoize);
        m.check_loopless()?;
        Ok(Arc::new(m))
    }

    pub fn uniform(rank: u32, size: usize) -> Result<Arc<Self>> {
        Self::uniform_labeled(rank, GroundSet::numbered(size))
    }

    pub fn uniform_labeled(rank: u32, ground: GroundSet) -> Result<Arc<Self>> {
        if rank == 0 && !ground.is_empty() {
            return Err(Error::LoopDetected(ground.labels[0].clone()));
        }
        if rank as usize > ground.len() {
            return Err(Error::RankAxiomViolation {
                axiom: "rank bounded by size for uniform matroids",
                first: ground.labels.clone(),
                second: vec![],
            });
        }
        Self::checked(ground, Backend::Uniform { rank }, false)
    }

    pub fn boolean(size: usize) -> Result<Arc<Self>> {
        Self::boolean_labeled(GroundSet::numbered(size))
    }

    pub fn boolean_labeled(ground: GroundSet) -> Result<Arc<Self>> {
        Self::checked(ground, Backend::Boolean, false)
    }

    /// Graphic matroid on `vertices` vertices (0-based endpoints).
    /// Parallel edges are kept.
    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>, ground: GroundSet) -> Result<Arc<Self>> {
        if edges.len() != ground.len() {
            return Err(Error::parse("edges", "one label per edge required"));
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::parse("edges", format!("edge {i} has an endpoint out of range")));
            }
        }
        Self::checked(ground, Backend::Graphic { vertices, edges }, false)
    }

    /// Braid matroid `K_n`; edge `{i, j}` (1-based, `i < j`) is labeled `"i-j"`.
    pub fn complete_graph(n: usize) -> Result<Arc<Self>> {
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
                labels.push(format!("{}-{}", i + 1, j + 1));
            }
        }
        Self::graphic(n, edges, GroundSet::new(labels)?)
    }

    /// Exhaustive rank table; every subset of the ground set must appear.
    pub fn from_rank_table(ground: GroundSet, table: FxHashMap<ElemSet, u32>) -> Result<Arc<Self>> {
        let n = ground.len();
        if n > 24 {
            return Err(Error::TooLarge(format!("rank table on {n} elements")));
        }
        if table.len() != 1usize << n {
            return Err(Error::parse(
                "polymatroid.ranks",
                format!("expected {} entries, found {}", 1usize << n, table.len()),
            ));
        }
        let m = Self::checked(ground, Backend::Table(table), false)?;
        m.validate()?;
        Ok(m)
    }

    /// Polymatroid described by its flats and their ranks.
    pub fn from_lattice(ground: GroundSet, flats: Vec<(ElemSet, u32)>) -> Result<Arc<Self>> {
        let full = ground.full();
        let mut flats = flats;
        flats.sort_by_key(|&(s, r)| (r, s.len(), s.0));
        flats.dedup();
        let mut seen: FxHashMap<ElemSet, u32> = FxHashMap::default();
        for &(s, r) in &flats {
            if seen.insert(s, r).is_some_and(|old| old != r) {
                return Err(Error::NotALattice(format!(
                    "flat {:?} listed with two ranks",
                    ground.labels_of(s)
                )));
            }
        }
        match seen.get(&ElemSet::EMPTY) {
            Some(0) => {}
            Some(_) => {
                return Err(Error::RankAxiomViolation {
                    axiom: "rank of the empty set is 0",
                    first: vec![],
                    second: vec![],
                })
            }
            None => return Err(Error::NotALattice("the empty set must be a flat".into())),
        }
        if !seen.contains_key(&full) {
            return Err(Error::NotALattice("the ground set must be a flat".into()));
        }
        for (i, &(a, _)) in flats.iter().enumerate() {
            for &(b, _) in &flats[i + 1..] {
                if !seen.contains_key(&a.intersection(b)) {
                    return Err(Error::NotALattice(format!(
                        "intersection of {:?} and {:?} is not listed",
                        ground.labels_of(a),
                        ground.labels_of(b)
                    )));
                }
                if a.is_subset(b) && a != b && seen[&a] >= seen[&b] {
                    return Err(Error::RankAxiomViolation {
                        axiom: "flats strictly increase in rank",
                        first: ground.labels_of(a),
                        second: ground.labels_of(b),
                    });
                }
            }
        }
        let m = Self::checked(ground, Backend::Lattice(flats.clone()), false)?;
        m.validate()?;
        for &(s, _) in &flats {
            if !m.is_flat(s) {
                return Err(Error::NotALattice(format!(
                    "{:?} is not closed under the induced rank function",
                    m.ground.labels_of(s)
                )));
            }
        }
        Ok(m)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full_set(&self) -> ElemSet {
        self.ground.full()
    }

    pub fn full_rank(&self) -> u32 {
        self.full_rank
    }

    pub fn is_matroid(&self) -> bool {
        self.is_matroid
    }

    pub fn rank(&self, set: ElemSet) -> u32 {
        if let Some(memo) = &self.memo {
            if let Some(&r) = memo.read().unwrap().get(&set) {
                return r;
            }
            let r = self.compute_rank(set);
            memo.write().unwrap().insert(set, r);
            r
        } else {
            self.compute_rank(set)
        }
    }

    fn compute_rank(&self, set: ElemSet) -> u32 {
        match &self.backend {
            Backend::Uniform { rank } => (set.len() as u32).min(*rank),
            Backend::Boolean => set.len() as u32,
            Backend::Graphic { vertices, edges } => {
                let mut parent: Vec<usize> = (0..*vertices).collect();
                fn find(p: &mut [usize], mut x: usize) -> usize {
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                let mut r = 0;
                for e in set.iter() {
                    let (u, v) = edges[e];
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a != b {
                        parent[a] = b;
                        r += 1;
                    }
                }
                r
            }
            Backend::Table(t) => t[&set],
            Backend::Lattice(flats) => flats
                .iter()
                .find(|(f, _)| set.is_subset(*f))
                .map(|&(_, r)| r)
                .expect("ground set is a flat"),
            Backend::DirectSum(a, b) => {
                let n = a.len();
                let low = set.intersection(ElemSet::full(n));
                let high = ElemSet(set.0 >> n);
                a.rank(low) + b.rank(high)
            }
            Backend::Minor {
                inner,
                keep,
                contracted,
                contracted_rank,
            } => {
                let lifted = set.iter().fold(*contracted, |acc, i| acc.with(keep[i]));
                inner.rank(lifted) - contracted_rank
            }
            Backend::FreeExtension(inner) => {
                let e = self.ground.len() - 1;
                if set.contains(e) {
                    (inner.rank(set.without(e)) + 1).min(inner.full_rank)
                } else {
                    inner.rank(set)
                }
            }
            Backend::PrincipalExtension { inner, flat } => {
                let e = self.ground.len() - 1;
                if set.contains(e) {
                    let rest = set.without(e);
                    (inner.rank(rest) + 1).min(inner.rank(rest.union(*flat)))
                } else {
                    inner.rank(set)
                }
            }
        }
    }

    /// Smallest flat containing `set`.
    pub fn closure(&self, set: ElemSet) -> ElemSet {
        let r = self.rank(set);
        self.full_set()
            .difference(set)
            .iter()
            .filter(|&e| self.rank(set.with(e)) == r)
            .fold(set, |acc, e| acc.with(e))
    }

    pub fn is_flat(&self, set: ElemSet) -> bool {
        let r = self.rank(set);
        self.full_set()
            .difference(set)
            .iter()
            .all(|e| self.rank(set.with(e)) > r)
    }

    fn check_loopless(&self) -> Result<()> {
        for i in 0..self.len() {
            if self.rank(ElemSet::singleton(i)) == 0 {
                return Err(Error::LoopDetected(self.ground.labels[i].clone()));
            }
        }
        Ok(())
    }

    /// Check the rank axioms.
    ///
    /// Up to 12 elements the local forms of monotonicity and submodularity
    /// are checked on every subset, which is equivalent to the global axioms.
    /// Larger ground sets are spot-checked on a fixed pseudo-random sample.
    pub fn validate(&self) -> Result<()> {
        if self.rank(ElemSet::EMPTY) != 0 {
            return Err(Error::RankAxiomViolation {
                axiom: "rank of the empty set is 0",
                first: vec![],
                second: vec![],
            });
        }
        self.check_loopless()?;
        let n = self.len();
        let full = self.full_set();
        let check = |a: ElemSet, x: usize, y: usize| -> Result<()> {
            let (ax, ay) = (a.with(x), a.with(y));
            let ra = self.rank(a);
            let (rx, ry) = (self.rank(ax), self.rank(ay));
            if rx < ra {
                return Err(self.violation("monotonicity", a, ax));
            }
            if x != y && rx + ry < self.rank(ax.union(ay)) + ra {
                return Err(self.violation("submodularity", ax, ay));
            }
            Ok(())
        };
        if n <= 12 {
            for a in full.subsets() {
                let rest: Vec<usize> = full.difference(a).iter().collect();
                for (i, &x) in rest.iter().enumerate() {
                    for &y in &rest[i..] {
                        check(a, x, y)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
            for _ in 0..4000 {
                let a = ElemSet(rng.gen::<u128>()).intersection(full);
                let rest: Vec<usize> = full.difference(a).iter().collect();
                if rest.is_empty() {
                    continue;
                }
                let x = rest[rng.gen_range(0..rest.len())];
                let y = rest[rng.gen_range(0..rest.len())];
                check(a, x, y)?;
            }
        }
        Ok(())
    }

    fn violation(&self, axiom: &'static str, a: ElemSet, b: ElemSet) -> Error {
        Error::RankAxiomViolation {
            axiom,
            first: self.ground.labels_of(a),
            second: self.ground.labels_of(b),
        }
    }

    fn require_flat(&self, flat: ElemSet) -> Result<()> {
        if flat.is_subset(self.full_set()) && self.is_flat(flat) {
            Ok(())
        } else {
            Err(Error::NotAFlat(self.ground.labels_of(flat)))
        }
    }

    fn minor(self: &Arc<Self>, keep_set: ElemSet, contracted: ElemSet) -> Result<Arc<Self>> {
        let keep: Vec<usize> = keep_set.iter().collect();
        let ground = GroundSet::new(keep.iter().map(|&i| self.ground.labels[i].clone()).collect())?;
        let m = Self::assemble(
            ground,
            Backend::Minor {
                inner: Arc::clone(self),
                keep,
                contracted,
                contracted_rank: self.rank(contracted),
            },
            false,
        );
        Ok(Arc::new(m))
    }

    /// `M|F` on the ground set `F`.
    pub fn restriction(self: &Arc<Self>, flat: ElemSet) -> Result<Arc<Self>> {
        self.require_flat(flat)?;
        if flat == self.full_set() {
            return Ok(Arc::clone(self));
        }
        self.minor(flat, ElemSet::EMPTY)
    }

    /// `M/F` on the ground set `E \ F`.
    pub fn contraction(self: &Arc<Self>, flat: ElemSet) -> Result<Arc<Self>> {
        self.require_flat(flat)?;
        if flat.is_empty() {
            return Ok(Arc::clone(self));
        }
        self.minor(self.full_set().difference(flat), flat)
    }

    /// Minor `M|top / bottom` for flats `bottom ⊆ top`.
    pub fn interval_minor(self: &Arc<Self>, bottom: ElemSet, top: ElemSet) -> Result<Arc<Self>> {
        self.require_flat(bottom)?;
        self.require_flat(top)?;
        if !bottom.is_subset(top) {
            return Err(Error::NotAFlat(self.ground.labels_of(bottom)));
        }
        self.minor(top.difference(bottom), bottom)
    }

    pub fn direct_sum(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>> {
        let mut labels = a.ground.labels.clone();
        for l in &b.ground.labels {
            if a.ground.index.contains_key(l) {
                return Err(Error::LabelCollision(l.clone()));
            }
            labels.push(l.clone());
        }
        let ground = GroundSet::new(labels)?;
        Ok(Arc::new(Self::assemble(
            ground,
            Backend::DirectSum(Arc::clone(a), Arc::clone(b)),
            false,
        )))
    }

    /// `M ⊕ {label}` with `label` a coloop.
    pub fn add_coloop(self: &Arc<Self>, label: &str) -> Result<Arc<Self>> {
        let coloop = Self::boolean_labeled(GroundSet::new(vec![label.to_string()])?)?;
        Self::direct_sum(self, &coloop)
    }

    pub fn free_extension(self: &Arc<Self>, label: &str) -> Result<Arc<Self>> {
        if !self.is_matroid {
            return Err(Error::NotAMatroid);
        }
        let ground = self.ground.extended(label)?;
        Ok(Arc::new(Self::assemble(
            ground,
            Backend::FreeExtension(Arc::clone(self)),
            true,
        )))
    }

    pub fn principal_extension(self: &Arc<Self>, flat: ElemSet, label: &str) -> Result<Arc<Self>> {
        if !self.is_matroid {
            return Err(Error::NotAMatroid);
        }
        self.require_flat(flat)?;
        let ground = self.ground.extended(label)?;
        Ok(Arc::new(Self::assemble(
            ground,
            Backend::PrincipalExtension {
                inner: Arc::clone(self),
                flat,
            },
            true,
        )))
    }

    /// Add `r` elements as freely as possible subject to the `r` new
    /// elements not forming a basis: `r - 1` free extensions followed by the
    /// principal extension on the flat they span.
    pub fn add_u_block<S: AsRef<str>>(self: &Arc<Self>, r: u32, labels: &[S]) -> Result<Arc<Self>> {
        if !self.is_matroid {
            return Err(Error::NotAMatroid);
        }
        if self.full_rank != r {
            return Err(Error::RankMismatch {
                expected: r,
                found: self.full_rank,
            });
        }
        if labels.len() != r as usize || r < 2 {
            return Err(Error::parse("add_u_block.labels", format!("expected {r} labels, r >= 2")));
        }
        let mut m = Arc::clone(self);
        for l in &labels[..labels.len() - 1] {
            m = m.free_extension(l.as_ref())?;
        }
        let block = m.ground.set_of(&labels[..labels.len() - 1])?;
        let flat = m.closure(block);
        m.principal_extension(flat, labels[labels.len() - 1].as_ref())
    }

    /// Connectivity of `M|set` by rank-additive bipartitions.
    ///
    /// Matroids use fundamental circuits of a greedy basis; general
    /// polymatroids fall back to enumerating bipartitions.
    pub fn is_connected_on(&self, set: ElemSet) -> bool {
        if set.len() <= 1 {
            return true;
        }
        if self.is_matroid {
            self.matroid_components(set).len() == 1
        } else {
            self.find_separator(set).is_none()
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.full_set())
    }

    /// A proper nonempty `A ⊂ set` with `rk(A) + rk(set \ A) = rk(set)`.
    pub fn find_separator(&self, set: ElemSet) -> Option<ElemSet> {
        let first = set.first()?;
        let rest = set.without(first);
        let total = self.rank(set);
        rest.subsets()
            .map(|s| s.with(first))
            .filter(|&a| a != set)
            .find(|&a| self.rank(a) + self.rank(set.difference(a)) == total)
    }

    /// Connected components of the matroid `M|set`.
    pub fn matroid_components(&self, set: ElemSet) -> Vec<ElemSet> {
        let mut basis = ElemSet::EMPTY;
        let mut r = 0;
        for e in set.iter() {
            let nr = self.rank(basis.with(e));
            if nr > r {
                basis = basis.with(e);
                r = nr;
            }
        }
        let idx: Vec<usize> = set.iter().collect();
        let pos = |e: usize| idx.binary_search(&e).unwrap();
        let mut parent: Vec<usize> = (0..idx.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in set.difference(basis).iter() {
            for b in basis.iter() {
                if self.rank(basis.without(b).with(e)) == r {
                    let (x, y) = (find(&mut parent, pos(e)), find(&mut parent, pos(b)));
                    parent[x] = y;
                }
            }
        }
        let mut comps: std::collections::BTreeMap<usize, ElemSet> = Default::default();
        for (i, &e) in idx.iter().enumerate() {
            let root = find(&mut parent, i);
            let c = comps.entry(root).or_default();
            *c = c.with(e);
        }
        let mut out: Vec<ElemSet> = comps.into_values().collect();
        out.sort();
        out
    }
}

/// The matroid chain `M_1 ⊂ M_2 ⊂ ... ⊂ M_k` where `M_1` is a single coloop
/// `1` and `M_i = (M_(i-1) ⊕ i) + i'` (coloop `i`, then free extension `i'`).
/// Its connected flats form a complete chain.
pub fn coloop_free_chain(k: usize) -> Result<Arc<Polymatroid>> {
    let mut m = Polymatroid::boolean_labeled(GroundSet::new(vec!["1".into()])?)?;
    for i in 2..=k {
        m = m.add_coloop(&i.to_string())?;
        m = m.free_extension(&format!("{i}'"))?;
    }
    Ok(m)
}
