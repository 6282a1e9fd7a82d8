//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact. The runtime budgets below are pinned; a
//! criterion that finishes over budget fails. Criteria listed in
//! `KNOWN_RED` are expected to fail for the stated reason and must keep
//! failing; a known-red criterion that turns green fails the suite too.
//!
//! Runs without the test harness, so the lines always print:
//! `cargo test --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use chowcalc::braid::{
    chi_bar_m, count_set_partitions_of_type, flat_vertices, format_partition, nested_to_partition, poincare_all,
    verify_functional_equations, PartitionType, PoincareMethod,
};
use chowcalc::building::BuildingSet;
use chowcalc::chow::{
    hilbert_chains, hilbert_fy, hilbert_recursion, hilbert_spanning, verify_inversion, verify_zeta_alpha,
    RecursionVariant, DEFAULT_CHAIN_CAP, INCIDENCE_FLAT_LIMIT,
};
use chowcalc::cli::examples::{boolean_members, run_example};
use chowcalc::lattice::FlatLattice;
use chowcalc::polymatroid::coloop_free_chain;
use chowcalc::polynomial::check_properties;
use chowcalc::{IntPolynomial, Polymatroid};
use num_bigint::BigInt;
use num_traits::One;

/// Runtime budget per criterion.
const BUDGETS: [(u32, Duration); 11] = [
    (1, Duration::from_secs(1)),
    (2, Duration::from_secs(1)),
    (3, Duration::from_secs(10)),
    (4, Duration::from_secs(120)),
    (5, Duration::from_secs(120)),
    (6, Duration::from_secs(180)),
    (7, Duration::from_secs(10)),
    (8, Duration::from_secs(60)),
    (9, Duration::from_secs(300)),
    (10, Duration::from_secs(60)),
    (11, Duration::from_secs(60)),
];

/// Criteria that cannot hold as stated, with the reason.
const KNOWN_RED: [(u32, &str); 1] = [(
    3,
    "for k = n the uniform matroid is Boolean, G_min is the set of atoms and H = 1, not 1 + x + ... + x^(k-1)",
)];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn expect(what: &str, want: &IntPolynomial, got: &IntPolynomial) -> Result<(), String> {
    if want == got {
        Ok(())
    } else {
        Err(format!("{what}: expected {want}, got {got}"))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn fig1_engines() -> Outcome {
    let l = FlatLattice::build(common::fig1()).map_err(err)?;
    let g = BuildingSet::from_labels(&l, &[vec!["a"], vec!["b"], vec!["c"], vec!["a", "b", "c"]]).map_err(err)?;
    let want = p(&[1, 4, 5, 4, 1]);
    let runs = [
        ("fy", hilbert_fy(&g)),
        ("recursion_restriction", hilbert_recursion(&g, RecursionVariant::Restriction)),
        ("recursion_contraction", hilbert_recursion(&g, RecursionVariant::Contraction)),
        ("chains", hilbert_chains(&g, DEFAULT_CHAIN_CAP)),
        ("spanning", hilbert_spanning(&g)),
    ];
    for (name, r) in runs {
        expect(name, &want, &r.map_err(err)?.hilbert)?;
    }
    let a = l.id_of_labels(&["a"]).map_err(err)?;
    let ga = g.contract(a).map_err(err)?;
    expect("M/a", &p(&[1, 2, 1]), &hilbert_recursion(&ga, RecursionVariant::Restriction).map_err(err)?.hilbert)?;
    expect("M/a spanning", &p(&[1, 2, 1]), &hilbert_spanning(&ga).map_err(err)?.hilbert)?;
    Ok("5 engines give 1+4x+5x^2+4x^3+x^4; M/a gives 1+2x+x^2".into())
}

fn k4_engines() -> Outcome {
    let l = FlatLattice::build(Polymatroid::complete_graph(4).map_err(err)?).map_err(err)?;
    let g = BuildingSet::minimal(&l).map_err(err)?;
    let want = p(&[1, 5, 1]);
    let runs = common::all_engines(&g);
    for (name, h) in &runs {
        expect(name, &want, h)?;
    }
    // one term per spanning nested set size: [0, 1, 10, 15]
    let counts = g.spanning_counts();
    if counts != [0, 1, 10, 15] {
        return Err(format!("spanning nested sets by size {counts:?}"));
    }
    let assembled: IntPolynomial = counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, &c)| chi_bar_m(5 - m).scale(&BigInt::from(c)))
        .sum();
    let literal = &(&(&p(&[-2, 1]) * &p(&[-3, 1])) + &p(&[-20, 10])) + &p(&[15]);
    expect("(x-2)(x-3) + 10(x-2) + 15", &literal, &assembled)?;
    expect("assembly", &want, &assembled)?;
    Ok(format!("{} engines give 1+5x+x^2; (x-2)(x-3) + 10(x-2) + 15 = {assembled}", runs.len()))
}

fn uniform_minimal() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 2..=5u32 {
        for n in k as usize..=8 {
            let l = FlatLattice::build(Polymatroid::uniform(k, n).map_err(err)?).map_err(err)?;
            let g = BuildingSet::minimal(&l).map_err(err)?;
            let h = hilbert_spanning(&g).map_err(err)?.hilbert;
            let fy = hilbert_fy(&g).map_err(err)?.hilbert;
            expect(&format!("U({k},{n}) fy vs spanning"), &fy, &h)?;
            checked += 1;
            if h != IntPolynomial::power_range(0, k as usize - 1) {
                bad.push(format!("U({k},{n}): {h}"));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{checked} pairs (k, n) give 1 + x + ... + x^(k-1)"))
    } else {
        Err(format!("{} of {checked} pairs differ: {}", bad.len(), bad.join(", ")))
    }
}

fn corpus_agreement() -> Outcome {
    let sets = common::corpus_building_sets();
    let mut runs_total = 0;
    for (name, b) in &sets {
        let runs = common::all_engines(b);
        runs_total += runs.len();
        for (engine, h) in &runs {
            expect(&format!("{name} {engine}"), &runs[0].1, h)?;
        }
        let h = &runs[0].1;
        let r = check_properties(h).map_err(err)?;
        if !r.palindromic || !r.unimodal || !h.coeff(0).is_one() {
            return Err(format!("{name}: {h} fails palindromic/unimodal/constant term"));
        }
        let monomials: BigInt = hilbert_fy(b)
            .map_err(err)?
            .stats
            .fy_monomials
            .ok_or("no monomial count")?
            .parse()
            .map_err(err)?;
        if h.value_at_one() != monomials {
            return Err(format!("{name}: H(1) = {} but {monomials} FY monomials", h.value_at_one()));
        }
    }
    Ok(format!("{} building sets, {runs_total} engine runs agree", sets.len()))
}

fn incidence_identities() -> Outcome {
    let mut n = 0;
    for (name, b) in common::corpus_building_sets() {
        if b.lattice().len() > INCIDENCE_FLAT_LIMIT {
            continue;
        }
        if !verify_zeta_alpha(&b).map_err(err)? {
            return Err(format!("{name}: zeta * chi_bar != alpha"));
        }
        if !verify_inversion(&b).map_err(err)? {
            return Err(format!("{name}: H * chi_bar != -delta"));
        }
        n += 1;
    }
    Ok(format!("{n} building sets with <= {INCIDENCE_FLAT_LIMIT} flats"))
}

fn braid_poincare() -> Outcome {
    for n in 2..=12 {
        let (poly, runs) = poincare_all(n).map_err(err)?;
        let methods: BTreeSet<PoincareMethod> = runs.iter().map(|(m, _)| *m).collect();
        let mut want: BTreeSet<PoincareMethod> = [
            PoincareMethod::Keel,
            PoincareMethod::Manin,
            PoincareMethod::Partition,
            PoincareMethod::Stirling,
            PoincareMethod::Rewriting,
        ]
        .into();
        if n <= 7 {
            want.insert(PoincareMethod::Matroid);
        }
        if methods != want {
            return Err(format!("n = {n}: ran {methods:?}"));
        }
        for (m, q) in &runs {
            expect(&format!("n = {n} {m}"), &poly, q)?;
        }
        if n == 4 {
            expect("P(M_0,5)", &p(&[1, 5, 1]), &poly)?;
        }
        if n == 5 {
            expect("P(M_0,6)", &p(&[1, 16, 16, 1]), &poly)?;
        }
    }
    Ok("five formulas agree for 2 <= n <= 12, (K_n, G_min) agrees for n <= 7".into())
}

fn functional_equations() -> Outcome {
    match verify_functional_equations(8) {
        Ok(true) => Ok("both identities hold to order 8".into()),
        Ok(false) => Err("identity fails".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn bijection() -> Outcome {
    let examples: [(&[&[usize]], &str); 4] = [
        (&[&[1, 2], &[5, 6], &[1, 2, 3, 4], &[1, 2, 3, 4, 5, 6]], "{{1,2},{5,6},{3,4,w1},{w2,w3}}"),
        (&[&[1, 2], &[5, 6], &[1, 2, 5, 6], &[1, 2, 3, 4, 5, 6]], "{{1,2},{5,6},{w1,w2},{3,4,w3}}"),
        (&[&[1, 2], &[5, 6], &[3, 4, 5, 6], &[1, 2, 3, 4, 5, 6]], "{{1,2},{5,6},{3,4,w2},{w1,w3}}"),
        (&[&[1, 2], &[3, 4], &[5, 6], &[1, 2, 3, 4, 5, 6]], "{{1,2},{3,4},{5,6},{w1,w2,w3}}"),
    ];
    for (sets, want) in examples {
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        let got = format_partition(&nested_to_partition(6, &sets).map_err(err)?);
        if got != want {
            return Err(format!("expected {want}, got {got}"));
        }
    }
    let mut total = 0;
    for n in 2..=6 {
        let l = FlatLattice::build(Polymatroid::complete_graph(n).map_err(err)?).map_err(err)?;
        let g = BuildingSet::minimal(&l).map_err(err)?;
        let mut images: BTreeMap<usize, BTreeSet<Vec<Vec<String>>>> = BTreeMap::new();
        let mut found: BTreeMap<usize, usize> = BTreeMap::new();
        for s in g.enumerate_spanning_nested() {
            let sets = s.iter().map(|&f| flat_vertices(&l, f)).collect::<Result<Vec<_>, _>>().map_err(err)?;
            let part = nested_to_partition(n, &sets).map_err(err)?;
            let mut canon: Vec<Vec<String>> = part
                .iter()
                .map(|b| {
                    let mut b: Vec<_> = b.to_vec();
                    b.sort();
                    b.iter().map(|e| e.to_string()).collect()
                })
                .collect();
            canon.sort();
            *found.entry(s.len()).or_default() += 1;
            images.entry(s.len()).or_default().insert(canon);
        }
        for (m, count) in found {
            if images[&m].len() != count {
                return Err(format!("n = {n}, m = {m}: not injective"));
            }
            let want: BigInt = PartitionType::with_parts(n + m - 1, 2, m, usize::MAX)
                .into_iter()
                .filter(|t| t.len() == m)
                .map(|t| count_set_partitions_of_type(t.parts()))
                .sum();
            if BigInt::from(count) != want {
                return Err(format!("n = {n}, m = {m}: {count} nested sets, {want} partitions"));
            }
            total += count;
        }
    }
    Ok(format!("4 examples verbatim; {total} nested sets biject for n <= 6"))
}

fn example_checks(name: &str) -> Result<usize, String> {
    let r = run_example(name).map_err(err)?;
    match r.checks.iter().find(|c| !c.pass) {
        Some(c) => Err(format!("{}: expected {}, got {}", c.check, c.expected, c.got)),
        None => Ok(r.checks.len()),
    }
}

fn uniform_counterexample() -> Outcome {
    let n = example_checks("uniform918")?;
    Ok(format!(
        "{n} checks: convert and spanning give (1,53,73,101,115,101,73,53,1), base (1,8,28,56,70,56,28,8,1), 73^2-53*101 = -24"
    ))
}

fn boolean_counterexample() -> Outcome {
    let n = example_checks("boolean-scaled")?;
    // independent oracle: the FY sum on the final building set equals the
    // flag base plus one x + ... + x^(n-2) per addition
    let size = 10;
    let l = FlatLattice::build(Polymatroid::boolean(size).map_err(err)?).map_err(err)?;
    let additions = size - 6;
    let flag = BuildingSet::new(&l, boolean_members(&l, size, 0).map_err(err)?).map_err(err)?;
    let full = BuildingSet::new(&l, boolean_members(&l, size, additions).map_err(err)?).map_err(err)?;
    full.validate().map_err(err)?;
    let base = hilbert_fy(&flag).map_err(err)?.hilbert;
    let bump = IntPolynomial::power_range(1, size - 2).scale(&BigInt::from(additions));
    expect("FY oracle", &(&base + &bump), &hilbert_fy(&full).map_err(err)?.hilbert)?;
    Ok(format!("{n} checks; FY oracle agrees at n = 10 with {additions} additions; (22+39)^2-(7+39)(42+39) = -5"))
}

fn full_scale() -> Outcome {
    let n = example_checks("eg1-scaled")?;
    // the flag step of the 424-element construction at its real rank
    let l = FlatLattice::build(coloop_free_chain(9).map_err(err)?).map_err(err)?;
    let g = BuildingSet::minimal(&l).map_err(err)?;
    expect(
        "M_9 with G_min",
        &p(&[1, 8, 28, 56, 70, 56, 28, 8, 1]),
        &hilbert_spanning(&g).map_err(err)?.hilbert,
    )?;
    Ok(format!(
        "eg1-scaled ({n} checks) and M_9 ({} flats) reproduce; the 45-step claims are certified by the one-step additions",
        l.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "fig-1 polymatroid, all engines", fig1_engines),
        (2, "K4 with G_min and chain assembly", k4_engines),
        (3, "uniform matroids with G_min", uniform_minimal),
        (4, "cross-engine corpus", corpus_agreement),
        (5, "incidence algebra identities", incidence_identities),
        (6, "Poincare polynomials of M_0,n+1", braid_poincare),
        (7, "functional equations to order 8", functional_equations),
        (8, "nested sets and set partitions", bijection),
        (9, "U(9,18) counterexample", uniform_counterexample),
        (10, "Boolean counterexample at desk scale", boolean_counterexample),
        (11, "full-scale claims", full_scale),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        let budget = BUDGETS.iter().find(|(i, _)| *i == id).unwrap().1;
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > budget {
            outcome = Err(format!("over budget: {elapsed:?} > {budget:?}"));
        }
        let known = KNOWN_RED.iter().find(|(i, _)| *i == id).map(|(_, why)| *why);
        match (&outcome, known) {
            (Ok(detail), None) => println!("PASS {id:>2} {title} [{:.1?}] {detail}", elapsed),
            (Err(why), None) => {
                println!("FAIL {id:>2} {title} [{:.1?}] {why}", elapsed);
                unexpected.push(id);
            }
            (Err(why), Some(reason)) => {
                println!("FAIL {id:>2} {title} [{:.1?}] {why} (known: {reason})", elapsed)
            }
            (Ok(detail), Some(_)) => {
                println!("PASS {id:>2} {title} [{:.1?}] {detail} (listed as known red)", elapsed);
                unexpected.push(id);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected status: {unexpected:?}");
        std::process::exit(1);
    }
}
