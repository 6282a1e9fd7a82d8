use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Factorials `0!, …, n!` as exact integers.
#[derive(Clone, Debug)]
pub struct Factorials {
    table: Vec<BigInt>,
}

impl Factorials {
    pub fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(BigInt::one());
        for i in 1..=n {
            let next = &table[i - 1] * BigInt::from(i);
            table.push(next);
        }
        Factorials { table }
    }

    pub fn get(&self, n: usize) -> &BigInt {
        &self.table[n]
    }

    pub fn binomial(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        &self.table[n] / (&self.table[k] * &self.table[n - k])
    }
}

/// An integer partition `λ₁ ≥ λ₂ ≥ ⋯`, standing for the set partitions
/// whose block sizes are its parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionType {
    parts: Vec<usize>,
}

impl PartitionType {
    /// Parts in any order; zeros are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionType { parts })
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        Self::with_parts(n, 1, n, usize::MAX)
    }

    /// Partitions of `total` into at most `max_len` parts, each between
    /// `min_part` and `max_part`.
    pub fn with_parts(total: usize, min_part: usize, max_len: usize, max_part: usize) -> Vec<Self> {
        fn go(rest: usize, cap: usize, min: usize, len_left: usize, cur: &mut Vec<usize>, out: &mut Vec<PartitionType>) {
            if rest == 0 {
                out.push(PartitionType { parts: cur.clone() });
                return;
            }
            if len_left == 0 {
                return;
            }
            for p in (min..=cap.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, min, len_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(total, max_part, min_part.max(1), max_len, &mut Vec::new(), &mut out);
        out
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part size → multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// The type with every part increased by one.
    pub fn shifted(&self) -> Self {
        PartitionType {
            parts: self.parts.iter().map(|p| p + 1).collect(),
        }
    }

    /// Number of set partitions of a `total`-set of this type,
    /// `total! / (Π λᵢ! · Π m_j!)`.
    pub fn set_partition_count(&self, f: &Factorials) -> BigInt {
        let mut denom = BigInt::one();
        for &p in &self.parts {
            denom *= f.get(p);
        }
        for m in self.multiplicities().into_values() {
            denom *= f.get(m);
        }
        f.get(self.total()) / denom
    }
}

/// Number of set partitions of a set with `parts.iter().sum()` elements
/// into blocks of the given sizes, by choosing the block of the smallest
/// element.
pub fn count_set_partitions_of_type(parts: &[usize]) -> BigInt {
    fn go(parts: &mut Vec<usize>, memo: &mut BTreeMap<Vec<usize>, BigInt>, f: &Factorials) -> BigInt {
        if parts.is_empty() {
            return BigInt::one();
        }
        if let Some(v) = memo.get(parts.as_slice()) {
            return v.clone();
        }
        let n: usize = parts.iter().sum();
        let mut sizes = parts.clone();
        sizes.dedup();
        let mut total = BigInt::zero();
        for c in sizes {
            let i = parts.iter().position(|&p| p == c).expect("size present");
            let mut rest = parts.clone();
            rest.remove(i);
            total += f.binomial(n - 1, c - 1) * go(&mut rest, memo, f);
        }
        memo.insert(parts.clone(), total.clone());
        total
    }
    let mut sorted = parts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let f = Factorials::up_to(sorted.iter().sum());
    go(&mut sorted, &mut BTreeMap::new(), &f)
}

/// Signed Stirling numbers of the first kind `s(n, k)` and Stirling numbers
/// of the second kind `S(n, k)` for `0 ≤ k ≤ n ≤ bound`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    bound: usize,
    first: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(bound: usize) -> Self {
        let mut first = vec![vec![BigInt::zero(); bound + 1]; bound + 1];
        let mut second = first.clone();
        first[0][0] = BigInt::one();
        second[0][0] = BigInt::one();
        for n in 1..=bound {
            for k in 1..=n {
                // s(n, k) = s(n−1, k−1) − (n−1) s(n−1, k)
                first[n][k] = &first[n - 1][k - 1] - BigInt::from(n - 1) * &first[n - 1][k];
                // S(n, k) = S(n−1, k−1) + k S(n−1, k)
                second[n][k] = &second[n - 1][k - 1] + BigInt::from(k) * &second[n - 1][k];
            }
        }
        StirlingTable { bound, first, second }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `s(n, k)`; zero outside `0 ≤ k ≤ n`.
    pub fn first(&self, n: usize, k: usize) -> BigInt {
        self.lookup(&self.first, n, k)
    }

    /// `S(n, k)`; zero outside `0 ≤ k ≤ n`.
    pub fn second(&self, n: usize, k: usize) -> BigInt {
        self.lookup(&self.second, n, k)
    }

    pub fn bell(&self, n: usize) -> BigInt {
        (0..=n).map(|k| self.second(n, k)).sum()
    }

    fn lookup(&self, t: &[Vec<BigInt>], n: usize, k: usize) -> BigInt {
        assert!(n <= self.bound, "Stirling table built to {} only, asked for {n}", self.bound);
        if k > n {
            BigInt::zero()
        } else {
            t[n][k].clone()
        }
    }
}

/// Checks `m_σ · n! · Π(σᵢ + 1) = (n + s)! · p_σ` for every type `σ ⊢ n`,
/// `1 ≤ n ≤ max_n`, where `p_σ` counts set partitions of `[n]` of type `σ`
/// and `m_σ` those of `[n + s]` of type `σ + 1`.
///
/// Both counts come from [`count_set_partitions_of_type`]; the closed form
/// is not used.
pub fn verify_partition_lemma(max_n: usize) -> Result<bool> {
    let f = Factorials::up_to(2 * max_n);
    for n in 1..=max_n {
        for sigma in PartitionType::all(n) {
            let s = sigma.len();
            let p = count_set_partitions_of_type(sigma.parts());
            let m = count_set_partitions_of_type(sigma.shifted().parts());
            let prod: BigInt = sigma.parts().iter().map(|&x| BigInt::from(x + 1)).product();
            if &m * f.get(n) * prod != f.get(n + s) * &p {
                return Err(Error::IdentityViolated(format!(
                    "partition lemma fails for type {:?}",
                    sigma.parts()
                )));
            }
        }
    }
    Ok(true)
}
