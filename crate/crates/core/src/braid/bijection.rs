use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{FlatId, FlatLattice};

/// An element of `[n] ∪ {w₁, w₂, …}`. Vertices sort before markers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartElem {
    Vertex(usize),
    Marker(usize),
}

impl fmt::Display for PartElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartElem::Vertex(v) => write!(f, "{v}"),
            PartElem::Marker(i) => write!(f, "w{i}"),
        }
    }
}

impl Serialize for PartElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Blocks in the order they were produced.
pub type SetPartition = Vec<Vec<PartElem>>;

pub fn format_partition(p: &SetPartition) -> String {
    let blocks: Vec<String> = p
        .iter()
        .map(|b| {
            let items: Vec<String> = b.iter().map(|e| e.to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    format!("{{{}}}", blocks.join(","))
}

/// The set partition of `[n + m − 1]` attached to a spanning
/// `G_min`-nested set of `K_n` with `m` members.
///
/// Each member is given by its vertex set (1-based). Members are peeled
/// off in order of size, then smallest element; the `i`-th peeled member
/// becomes a block and is replaced by the marker `wᵢ` in every member
/// containing it. The last member left is the final block.
pub fn nested_to_partition(n: usize, nested: &[Vec<usize>]) -> Result<SetPartition> {
    let bad = |msg: String| Err(Error::NotSpanningNested(msg));
    if n < 2 {
        return bad(format!("K_{n} has no spanning nested sets with members"));
    }
    let mut family: Vec<BTreeSet<PartElem>> = Vec::with_capacity(nested.len());
    for set in nested {
        let s: BTreeSet<PartElem> = set.iter().map(|&v| PartElem::Vertex(v)).collect();
        if s.len() != set.len() {
            return bad(format!("{set:?} repeats a vertex"));
        }
        if set.iter().any(|&v| v == 0 || v > n) {
            return bad(format!("{set:?} is not a subset of [{n}]"));
        }
        if s.len() < 2 {
            return bad(format!("{set:?} is not a connected flat"));
        }
        if family.contains(&s) {
            return bad(format!("{set:?} appears twice"));
        }
        family.push(s);
    }
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if !(a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b)) {
                return bad(format!("{} and {} overlap", show(a), show(b)));
            }
        }
    }
    if !family.iter().any(|s| s.len() == n) {
        return bad(format!("the vertex set [{n}] is missing"));
    }

    let mut parts = Vec::with_capacity(family.len());
    let mut marker = 0;
    while family.len() > 1 {
        let pos = (0..family.len())
            .min_by_key(|&i| (family[i].len(), family[i].first().copied()))
            .expect("family is nonempty");
        let g = family.swap_remove(pos);
        marker += 1;
        for s in family.iter_mut() {
            if g.is_subset(s) {
                s.retain(|e| !g.contains(e));
                s.insert(PartElem::Marker(marker));
            } else {
                debug_assert!(g.is_disjoint(s));
            }
        }
        parts.push(g.into_iter().collect());
    }
    parts.push(family.pop().expect("one member left").into_iter().collect());
    Ok(parts)
}

fn show(s: &BTreeSet<PartElem>) -> String {
    s.iter().map(|e| e.to_string()).collect()
}

/// Vertex set (1-based) of a connected flat of `K_n`, read off the edge
/// labels `"i-j"`.
pub fn flat_vertices(l: &FlatLattice, f: FlatId) -> Result<Vec<usize>> {
    let mut vs = BTreeSet::new();
    for label in l.labels(f) {
        let (a, b) = label
            .split_once('-')
            .ok_or_else(|| Error::InvalidArgument(format!("edge label {label:?} is not of the form i-j")))?;
        for v in [a, b] {
            vs.insert(
                v.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("edge label {label:?} is not of the form i-j")))?,
            );
        }
    }
    Ok(vs.into_iter().collect())
}
