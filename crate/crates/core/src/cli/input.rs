//! Input files and the `--quick` shorthand.
//!
//! An input file is one JSON object:
//!
//! ```json
//! {
//!   "polymatroid": {"type": "lattice", "ground": ["a", "b", "c"],
//!                   "flats": [{"set": [], "rank": 0}, {"set": ["a"], "rank": 2}, …]},
//!   "building_set": [["a"], ["b"], ["c"], ["a", "b", "c"]]
//! }
//! ```
//!
//! `"building_set"` is `"min"` (the default), `"max"`, or a list of flats
//! given by their element labels. Polymatroid types:
//!
//! | type | fields |
//! |------|--------|
//! | `uniform` | `k`, `n`, optional `labels` |
//! | `boolean` | `n`, optional `labels` |
//! | `graphic` | `vertices`, `edges` (pairs of 1-based vertices), optional `labels` |
//! | `complete_graph` | `n`; edges are labelled `"i-j"` |
//! | `rank_table` | `ground`, `ranks`: every subset as `{"set": [...], "rank": r}` |
//! | `lattice` | `ground`, `flats`: `{"set": [...], "rank": r}` for every flat |
//! | `construction` | `base` (any polymatroid), `steps` |
//!
//! Construction steps are objects with an `"op"` field: `coloop` (`label`),
//! `free_extension` (`label`), `principal_extension` (`flat`, `label`),
//! `add_u_block` (`r`, `labels`) and `direct_sum` (`with`, a polymatroid).

use std::path::Path;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Deserialize;

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::{ElemSet, GroundSet, Polymatroid};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub polymatroid: PolymatroidSpec,
    #[serde(default)]
    pub building_set: Option<BuildingSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolymatroidSpec {
    Uniform {
        k: u32,
        n: usize,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    Boolean {
        n: usize,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    CompleteGraph {
        n: usize,
    },
    RankTable {
        ground: Vec<String>,
        ranks: Vec<RankedSet>,
    },
    Lattice {
        ground: Vec<String>,
        flats: Vec<RankedSet>,
    },
    Construction {
        base: Box<PolymatroidSpec>,
        steps: Vec<Step>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankedSet {
    pub set: Vec<String>,
    pub rank: u32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    Coloop { label: String },
    FreeExtension { label: String },
    PrincipalExtension { flat: Vec<String>, label: String },
    AddUBlock { r: u32, labels: Vec<String> },
    DirectSum { with: Box<PolymatroidSpec> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BuildingSpec {
    Named(String),
    Flats(Vec<Vec<String>>),
}

impl BuildingSpec {
    pub fn describe(&self) -> String {
        match self {
            BuildingSpec::Named(n) => n.clone(),
            BuildingSpec::Flats(f) => format!("custom ({} flats)", f.len()),
        }
    }
}

/// A parsed input: the polymatroid, its lattice of flats and a validated
/// building set.
#[derive(Clone, Debug)]
pub struct Job {
    pub name: String,
    pub lattice: Arc<FlatLattice>,
    pub building: BuildingSet,
    pub building_name: String,
}

fn ground(labels: Option<Vec<String>>, n: usize, path: &str) -> Result<GroundSet> {
    match labels {
        None => Ok(GroundSet::numbered(n)),
        Some(l) if l.len() == n => GroundSet::new(l),
        Some(l) => Err(Error::parse(
            format!("{path}.labels"),
            format!("expected {n} labels, found {}", l.len()),
        )),
    }
}

fn labels_to_set(g: &GroundSet, labels: &[String], path: &str) -> Result<ElemSet> {
    g.set_of(labels).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(path, message),
        other => other,
    })
}

impl PolymatroidSpec {
    pub fn build(&self, path: &str) -> Result<Arc<Polymatroid>> {
        match self {
            PolymatroidSpec::Uniform { k, n, labels } => {
                Polymatroid::uniform_labeled(*k, ground(labels.clone(), *n, path)?)
            }
            PolymatroidSpec::Boolean { n, labels } => Polymatroid::boolean_labeled(ground(labels.clone(), *n, path)?),
            PolymatroidSpec::Graphic { vertices, edges, labels } => {
                let mut es = Vec::with_capacity(edges.len());
                for (i, &[a, b]) in edges.iter().enumerate() {
                    if a == 0 || b == 0 || a > *vertices || b > *vertices {
                        return Err(Error::parse(
                            format!("{path}.edges[{i}]"),
                            format!("vertices are numbered 1..={vertices}"),
                        ));
                    }
                    es.push((a - 1, b - 1));
                }
                let g = ground(labels.clone(), es.len(), path)?;
                Polymatroid::graphic(*vertices, es, g)
            }
            PolymatroidSpec::CompleteGraph { n } => Polymatroid::complete_graph(*n),
            PolymatroidSpec::RankTable { ground, ranks } => {
                let g = GroundSet::new(ground.clone())?;
                let mut table = FxHashMap::default();
                for (i, entry) in ranks.iter().enumerate() {
                    let p = format!("{path}.ranks[{i}].set");
                    let s = labels_to_set(&g, &entry.set, &p)?;
                    if table.insert(s, entry.rank).is_some() {
                        return Err(Error::parse(p, "subset listed twice"));
                    }
                }
                Polymatroid::from_rank_table(g, table)
            }
            PolymatroidSpec::Lattice { ground, flats } => {
                let g = GroundSet::new(ground.clone())?;
                let fs = flats
                    .iter()
                    .enumerate()
                    .map(|(i, f)| Ok((labels_to_set(&g, &f.set, &format!("{path}.flats[{i}].set"))?, f.rank)))
                    .collect::<Result<Vec<_>>>()?;
                Polymatroid::from_lattice(g, fs)
            }
            PolymatroidSpec::Construction { base, steps } => {
                let mut m = base.build(&format!("{path}.base"))?;
                for (i, step) in steps.iter().enumerate() {
                    let p = format!("{path}.steps[{i}]");
                    m = match step {
                        Step::Coloop { label } => m.add_coloop(label)?,
                        Step::FreeExtension { label } => m.free_extension(label)?,
                        Step::PrincipalExtension { flat, label } => {
                            let f = labels_to_set(m.ground(), flat, &format!("{p}.flat"))?;
                            m.principal_extension(f, label)?
                        }
                        Step::AddUBlock { r, labels } => m.add_u_block(*r, labels)?,
                        Step::DirectSum { with } => Polymatroid::direct_sum(&m, &with.build(&format!("{p}.with"))?)?,
                    };
                }
                Ok(m)
            }
        }
    }
}

pub fn building_set(l: &Arc<FlatLattice>, spec: &BuildingSpec) -> Result<BuildingSet> {
    match spec {
        BuildingSpec::Named(n) if n == "min" => BuildingSet::minimal(l),
        BuildingSpec::Named(n) if n == "max" => Ok(BuildingSet::maximal(l)),
        BuildingSpec::Named(n) => Err(Error::parse(
            "building_set",
            format!("expected \"min\", \"max\" or a list of flats, found {n:?}"),
        )),
        BuildingSpec::Flats(flats) => {
            let g = l.polymatroid().ground();
            let mut members = Vec::with_capacity(flats.len());
            for (i, f) in flats.iter().enumerate() {
                let path = format!("building_set[{i}]");
                let s = labels_to_set(g, f, &path)?;
                let id = l
                    .id_of(s)
                    .ok_or_else(|| Error::parse(&path, format!("{f:?} is not a flat")))?;
                members.push(id);
            }
            members.sort_unstable();
            members.dedup();
            BuildingSet::new(l, members)
        }
    }
}

impl InputFile {
    pub fn from_json(text: &str, source: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::parse(
                if path == "." { source.to_string() } else { path },
                e.into_inner().to_string(),
            )
        })
    }

    pub fn into_job(self, name: &str, building_override: Option<&BuildingSpec>) -> Result<Job> {
        let pm = self.polymatroid.build("polymatroid")?;
        pm.validate()?;
        let lattice = FlatLattice::build(pm)?;
        let spec = building_override
            .cloned()
            .or(self.building_set)
            .unwrap_or(BuildingSpec::Named("min".into()));
        let building = building_set(&lattice, &spec)?;
        Ok(Job {
            name: name.to_string(),
            lattice,
            building,
            building_name: spec.describe(),
        })
    }
}

/// Read, validate and build an input file.
pub fn parse_input(path: &Path, building_override: Option<&BuildingSpec>) -> Result<Job> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    InputFile::from_json(&text, &path.display().to_string())?
        .into_job(&path.display().to_string(), building_override)
}

/// `"U(k,n)"`, `"K(n)"` or `"B(n)"`.
pub fn parse_quick(spec: &str) -> Result<PolymatroidSpec> {
    let bad = || Error::parse("--quick", format!("expected U(k,n), K(n) or B(n), found {spec:?}"));
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, rest) = s.split_at(s.find('(').ok_or_else(bad)?);
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let nums = inner
        .split(',')
        .map(|x| x.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    match (head, nums.as_slice()) {
        ("U", &[k, n]) => Ok(PolymatroidSpec::Uniform {
            k: k as u32,
            n,
            labels: None,
        }),
        ("K", &[n]) => Ok(PolymatroidSpec::CompleteGraph { n }),
        ("B", &[n]) => Ok(PolymatroidSpec::Boolean { n, labels: None }),
        _ => Err(bad()),
    }
}

pub fn quick_job(spec: &str, building: Option<&BuildingSpec>) -> Result<Job> {
    InputFile {
        polymatroid: parse_quick(spec)?,
        building_set: None,
    }
    .into_job(spec, building)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_specs() {
        assert!(matches!(parse_quick("U(2,3)").unwrap(), PolymatroidSpec::Uniform { k: 2, n: 3, .. }));
        assert!(matches!(parse_quick("K(4)").unwrap(), PolymatroidSpec::CompleteGraph { n: 4 }));
        assert!(matches!(parse_quick(" B( 5 ) ").unwrap(), PolymatroidSpec::Boolean { n: 5, .. }));
        for bad in ["U(2)", "K4", "X(3)", "K(a)"] {
            assert!(matches!(parse_quick(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn errors_name_the_path() {
        let text = r#"{"polymatroid": {"type": "uniform", "k": 2, "n": "three"}}"#;
        match InputFile::from_json(text, "x.json").unwrap_err() {
            // tagged variants are buffered, so the path stops at the tagged object
            Error::Parse { path, message } => {
                assert_eq!(path, "polymatroid");
                assert!(message.contains("three"), "{message}");
            }
            e => panic!("{e}"),
        }
        let text = r#"{"polymatroid": {"type": "uniform", "k": 2, "n": 3}, "building_set": [["1"], ["9"]]}"#;
        match InputFile::from_json(text, "x.json").unwrap().into_job("x", None).unwrap_err() {
            Error::Parse { path, .. } => assert_eq!(path, "building_set[1]"),
            e => panic!("{e}"),
        }
        let text = r#"{"polymatroid": {"type": "uniform", "k": 2, "n": 3, "extra": 1}}"#;
        assert!(InputFile::from_json(text, "x.json").is_err());
    }

    #[test]
    fn non_flat_in_building_set() {
        let text = r#"{"polymatroid": {"type": "complete_graph", "n": 4}, "building_set": [["1-2", "3-4", "1-3"]]}"#;
        let err = InputFile::from_json(text, "x").unwrap().into_job("x", None).unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "building_set[0]"), "{err}");
    }

    #[test]
    fn non_monotone_rank_table() {
        let text = r#"{"polymatroid": {"type": "rank_table", "ground": ["a", "b"], "ranks": [
            {"set": [], "rank": 0}, {"set": ["a"], "rank": 2}, {"set": ["b"], "rank": 1},
            {"set": ["a", "b"], "rank": 1}]}}"#;
        let err = InputFile::from_json(text, "x").unwrap().into_job("x", None).unwrap_err();
        assert!(matches!(err, Error::RankAxiomViolation { .. }), "{err}");
    }

    #[test]
    fn construction_steps() {
        let text = r#"{"polymatroid": {"type": "construction",
            "base": {"type": "boolean", "n": 1, "labels": ["1"]},
            "steps": [{"op": "coloop", "label": "2"}, {"op": "free_extension", "label": "2'"},
                      {"op": "coloop", "label": "3"}, {"op": "free_extension", "label": "3'"},
                      {"op": "add_u_block", "r": 3, "labels": ["p", "q", "s"]}]}}"#;
        let job = InputFile::from_json(text, "x").unwrap().into_job("x", None).unwrap();
        assert_eq!(job.lattice.polymatroid().len(), 8);
        assert_eq!(job.lattice.polymatroid().full_rank(), 3);
    }
}
