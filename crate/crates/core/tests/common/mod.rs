#![allow(dead_code)]

use std::sync::Arc;

use chowcalc::building::BuildingSet;
use chowcalc::chow::{
    hilbert_chains, hilbert_convert_from_minimal, hilbert_fy, hilbert_recursion, hilbert_spanning, RecursionVariant,
    DEFAULT_CHAIN_CAP,
};
use chowcalc::error::Error;
use chowcalc::lattice::FlatLattice;
use chowcalc::polymatroid::{coloop_free_chain, GroundSet};
use chowcalc::{IntPolynomial, Polymatroid};

pub fn fig1() -> Arc<Polymatroid> {
    let g = GroundSet::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
    let f = |l: &[&str]| g.set_of(l).unwrap();
    let flats = vec![
        (f(&[]), 0),
        (f(&["a"]), 2),
        (f(&["b"]), 2),
        (f(&["c"]), 4),
        (f(&["a", "b"]), 4),
        (f(&["a", "b", "c"]), 5),
    ];
    Polymatroid::from_lattice(g, flats).unwrap()
}

pub fn m3_plus_two_blocks() -> Arc<Polymatroid> {
    coloop_free_chain(3)
        .unwrap()
        .add_u_block(3, &["u1", "v1", "w1"])
        .unwrap()
        .add_u_block(3, &["u2", "v2", "w2"])
        .unwrap()
}

/// The polymatroids of the cross-engine corpus.
pub fn corpus() -> Vec<(String, Arc<FlatLattice>)> {
    let mut out: Vec<(String, Arc<Polymatroid>)> = Vec::new();
    for (k, n) in [(1, 3), (2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5), (3, 6)] {
        out.push((format!("U({k},{n})"), Polymatroid::uniform(k, n).unwrap()));
    }
    for n in 1..=6 {
        out.push((format!("B({n})"), Polymatroid::boolean(n).unwrap()));
    }
    out.push(("K4".into(), Polymatroid::complete_graph(4).unwrap()));
    out.push(("K5".into(), Polymatroid::complete_graph(5).unwrap()));
    out.push(("fig1".into(), fig1()));
    out.push(("M3".into(), coloop_free_chain(3).unwrap()));
    out.push(("M4".into(), coloop_free_chain(4).unwrap()));
    out.push(("M3+2U(2,3)".into(), m3_plus_two_blocks()));
    out.into_iter()
        .map(|(name, pm)| (name, FlatLattice::build(pm).unwrap()))
        .collect()
}

fn lattice_named(name: &str) -> Arc<FlatLattice> {
    corpus().into_iter().find(|(n, _)| n == name).unwrap().1
}

/// Five building sets that are neither minimal nor maximal.
pub fn custom_building_sets() -> Vec<(String, BuildingSet)> {
    let b = |lattice: &str, flats: &[&[&str]]| {
        let l = lattice_named(lattice);
        let flats: Vec<Vec<&str>> = flats.iter().map(|f| f.to_vec()).collect();
        let g = BuildingSet::from_labels(&l, &flats).unwrap();
        g.validate().unwrap();
        (format!("{lattice} custom"), g)
    };
    vec![
        b("fig1", &[&["a"], &["b"], &["c"], &["a", "b", "c"]]),
        b("B(4)", &[&["1"], &["2"], &["3"], &["4"], &["1", "2"], &["1", "2", "3"], &["1", "2", "3", "4"]]),
        b(
            "B(5)",
            &[&["1"], &["2"], &["3"], &["4"], &["5"], &["1", "2"], &["3", "4"], &["1", "2", "3", "4"], &["1", "2", "3", "4", "5"]],
        ),
        b("U(3,5)", &[&["1"], &["2"], &["3"], &["4"], &["5"], &["1", "2"], &["1", "2", "3", "4", "5"]]),
        b(
            "K4",
            &[
                &["1-2"],
                &["1-3"],
                &["1-4"],
                &["2-3"],
                &["2-4"],
                &["3-4"],
                &["1-2", "1-3", "2-3"],
                &["1-2", "1-4", "2-4"],
                &["1-3", "1-4", "3-4"],
                &["2-3", "2-4", "3-4"],
                &["1-2", "3-4"],
                &["1-2", "1-3", "1-4", "2-3", "2-4", "3-4"],
            ],
        ),
    ]
}

/// Every building set of the corpus: minimal, maximal and custom.
pub fn corpus_building_sets() -> Vec<(String, BuildingSet)> {
    let mut out = Vec::new();
    for (name, l) in corpus() {
        out.push((format!("{name} min"), BuildingSet::minimal(&l).unwrap()));
        out.push((format!("{name} max"), BuildingSet::maximal(&l)));
    }
    out.extend(custom_building_sets());
    out
}

/// Every engine that applies to `b`, by name.
pub fn all_engines(b: &BuildingSet) -> Vec<(&'static str, IntPolynomial)> {
    let mut out = vec![
        ("fy", hilbert_fy(b).unwrap().hilbert),
        ("recursion_restriction", hilbert_recursion(b, RecursionVariant::Restriction).unwrap().hilbert),
        ("recursion_contraction", hilbert_recursion(b, RecursionVariant::Contraction).unwrap().hilbert),
        ("spanning", hilbert_spanning(b).unwrap().hilbert),
    ];
    match hilbert_chains(b, DEFAULT_CHAIN_CAP) {
        Ok(r) => out.push(("chains", r.hilbert)),
        Err(Error::TooManyChains { .. }) => {}
        Err(e) => panic!("chains: {e}"),
    }
    match hilbert_convert_from_minimal(b) {
        Ok(r) => out.push(("convert", r.hilbert)),
        Err(Error::NotAMatroid) => {}
        Err(e) => panic!("convert: {e}"),
    }
    out
}
