//! Named replays of the worked examples and counterexamples, each compared
//! against stored golden values.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use super::input::{InputFile, Job};
use crate::braid::chi_bar_m;
use crate::building::BuildingSet;
use crate::chow::{
    hilbert_chains, hilbert_convert, hilbert_fy, hilbert_recursion, hilbert_spanning, run_engine, EngineTag,
    RecursionVariant, DEFAULT_CHAIN_CAP,
};
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::polynomial::check_properties;
use crate::{IntPolynomial, Polymatroid};

pub const FIG1_JSON: &str = include_str!("../../inputs/fig1.json");
pub const K4MIN_JSON: &str = include_str!("../../inputs/k4min.json");
pub const U918_JSON: &str = include_str!("../../inputs/u918.json");
pub const EG1_SCALED_JSON: &str = include_str!("../../inputs/eg1_scaled.json");

pub const REGISTRY: [(&str, &str); 5] = [
    ("fig1", "Figure 1 polymatroid with G = {a, b, c, abc}"),
    ("k4", "braid matroid K4 with its minimal building set"),
    ("uniform918", "U(9,18): complete flag plus 45 points, not log-concave"),
    ("boolean-scaled", "Boolean U(n,n), n = 10, 11: flag plus corank-1 sets"),
    ("eg1-scaled", "coloop/free-extension chain M4 plus three U(3,4) blocks, G_min"),
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub check: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub name: String,
    pub description: String,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

struct Checks(Vec<CheckLine>);

impl Checks {
    fn eq<T: ToString + PartialEq>(&mut self, what: impl Into<String>, expected: T, got: T) {
        self.0.push(CheckLine {
            check: what.into(),
            pass: expected == got,
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }

    fn poly(&mut self, what: impl Into<String>, expected: &[i64], got: &IntPolynomial) {
        self.eq(what, IntPolynomial::from_i64s(expected).to_string(), got.to_string());
    }
}

fn job(json: &str, name: &str) -> Result<Job> {
    InputFile::from_json(json, name)?.into_job(name, None)
}

pub fn run_example(name: &str) -> Result<ExampleReport> {
    let start = Instant::now();
    let description = REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, d)| d.to_string())
        .ok_or_else(|| Error::InvalidArgument(format!("no example named {name:?}")))?;
    let mut c = Checks(Vec::new());
    match name {
        "fig1" => fig1(&mut c)?,
        "k4" => k4(&mut c)?,
        "uniform918" => uniform918_checks(&mut c)?,
        "boolean-scaled" => boolean_scaled(&mut c)?,
        "eg1-scaled" => eg1_scaled(&mut c)?,
        _ => unreachable!("registry and dispatch agree"),
    }
    Ok(ExampleReport {
        name: name.to_string(),
        description,
        pass: c.0.iter().all(|l| l.pass),
        checks: c.0,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// The first failing check as an error.
pub fn golden_error(report: &ExampleReport) -> Option<Error> {
    report.checks.iter().find(|l| !l.pass).map(|l| Error::GoldenMismatch {
        name: format!("{}: {}", report.name, l.check),
        expected: l.expected.clone(),
        got: l.got.clone(),
    })
}

const FIG1: [i64; 5] = [1, 4, 5, 4, 1];

fn fig1(c: &mut Checks) -> Result<()> {
    let j = job(FIG1_JSON, "fig1")?;
    for tag in [
        EngineTag::Fy,
        EngineTag::RecursionRestriction,
        EngineTag::RecursionContraction,
        EngineTag::Chains,
        EngineTag::Spanning,
    ] {
        c.poly(format!("H via {}", tag.name()), &FIG1, &run_engine(&j.building, tag)?.hilbert);
    }
    let a = j.lattice.id_of_labels(&["a"])?;
    let ga = j.building.contract(a)?;
    c.poly("H of M/a with G/a", &[1, 2, 1], &hilbert_recursion(&ga, RecursionVariant::Restriction)?.hilbert);
    Ok(())
}

fn k4(c: &mut Checks) -> Result<()> {
    let j = job(K4MIN_JSON, "k4")?;
    for tag in [
        EngineTag::Fy,
        EngineTag::RecursionRestriction,
        EngineTag::RecursionContraction,
        EngineTag::Chains,
        EngineTag::Spanning,
        EngineTag::Convert,
    ] {
        c.poly(format!("H via {}", tag.name()), &[1, 5, 1], &run_engine(&j.building, tag)?.hilbert);
    }
    // (x−2)(x−3) + 10(x−2) + 15, one term per spanning nested set size
    let assembled = &(&chi_bar_m(4) + &chi_bar_m(3).scale(&BigInt::from(10))) + &IntPolynomial::from_i64s(&[15]);
    c.poly("(x-2)(x-3) + 10(x-2) + 15", &[1, 5, 1], &assembled);
    c.eq(
        "spanning nested sets by size",
        "[0, 1, 10, 15]".to_string(),
        format!("{:?}", j.building.spanning_counts()),
    );
    let chains = hilbert_chains(&j.building, DEFAULT_CHAIN_CAP)?;
    c.eq(
        "chains by length",
        "[0, 1, 13, 18]".to_string(),
        format!("{:?}", chains.stats.chains_by_length),
    );
    c.eq(
        "FY monomials",
        "7".to_string(),
        hilbert_fy(&j.building)?.stats.fy_monomials.unwrap_or_default(),
    );
    Ok(())
}

/// U(9,18) with the flag building set and with the full building set.
pub fn uniform918() -> Result<(BuildingSet, BuildingSet)> {
    let large = job(U918_JSON, "uniform918")?.building;
    let l = large.lattice();
    let is_bar_block = |f: usize| l.rank(f) == 8 && l.labels(f).iter().all(|x| x.starts_with('b'));
    let small_members: Vec<usize> = large.members().iter().copied().filter(|&f| !is_bar_block(f)).collect();
    let small = BuildingSet::new(l, small_members)?;
    Ok((small, large))
}

fn uniform918_checks(c: &mut Checks) -> Result<()> {
    let (small, large) = uniform918()?;
    c.eq("flats", 106_763usize, large.lattice().len());
    c.eq("members added", 45usize, large.members().len() - small.members().len());
    let base = hilbert_spanning(&small)?;
    c.poly("flag base", &[1, 8, 28, 56, 70, 56, 28, 8, 1], &base.hilbert);
    let want = [1, 53, 73, 101, 115, 101, 73, 53, 1];
    let converted = hilbert_convert(&small, &large, &base)?;
    c.poly("H via convert", &want, &converted.hilbert);
    let direct = hilbert_spanning(&large)?;
    c.poly("H via spanning", &want, &direct.hilbert);
    let report = check_properties(&direct.hilbert)?;
    c.eq("log-concave", false, report.log_concave);
    c.eq("palindromic", true, report.palindromic);
    c.eq("first violation index", "Some(2)".to_string(), format!("{:?}", report.first_violation_index));
    let h = direct.hilbert.coeffs();
    c.eq("a2^2 - a1*a3", BigInt::from(-24), &h[2] * &h[2] - &h[1] * &h[3]);
    Ok(())
}

/// Members of the Boolean building set: atoms, `[n−1], …, [n−6]`, the
/// sets `[n] ∖ {i}` for `i ≤ extra`, and `E`.
pub fn boolean_members(l: &std::sync::Arc<FlatLattice>, n: usize, extra: usize) -> Result<Vec<usize>> {
    let pm = l.polymatroid();
    let set = |idx: &mut dyn Iterator<Item = usize>| crate::ElemSet::from_indices(idx);
    let mut members: Vec<usize> = l.atoms().to_vec();
    for k in (n - 6)..n {
        members.push(l.id_of(set(&mut (0..k))).expect("initial segments are flats"));
    }
    for i in 0..extra {
        members.push(l.id_of(set(&mut (0..n).filter(|&j| j != i))).expect("corank-1 sets are flats"));
    }
    members.push(l.id_of(pm.full_set()).expect("E is a flat"));
    members.sort_unstable();
    members.dedup();
    Ok(members)
}

fn boolean_scaled(c: &mut Checks) -> Result<()> {
    for n in [10usize, 11] {
        let l = FlatLattice::build(Polymatroid::boolean(n)?)?;
        let extra_max = n - 6;
        let base = BuildingSet::new(&l, boolean_members(&l, n, 0)?)?;
        let h0 = hilbert_recursion(&base, RecursionVariant::Restriction)?.hilbert;
        let lead: Vec<BigInt> = h0.coeffs().iter().take(4).cloned().collect();
        c.eq(
            format!("n = {n}: flag base leading coefficients"),
            "[1, 7, 22, 42]".to_string(),
            format!("{lead:?}"),
        );
        let bump = IntPolynomial::power_range(1, n - 2);
        let mut prev = h0.clone();
        for extra in 1..=extra_max {
            let g = BuildingSet::new(&l, boolean_members(&l, n, extra)?)?;
            let h = hilbert_recursion(&g, RecursionVariant::Restriction)?.hilbert;
            c.eq(
                format!("n = {n}: addition {extra} adds 1 to every internal coefficient"),
                bump.to_string(),
                (&h - &prev).to_string(),
            );
            prev = h;
        }
        let full = BuildingSet::new(&l, boolean_members(&l, n, extra_max)?)?;
        let base_result = hilbert_spanning(&base)?;
        let conv = hilbert_convert(&base, &full, &base_result)?;
        c.eq(format!("n = {n}: convert matches recursion"), prev.to_string(), conv.hilbert.to_string());
    }
    // n = 45 with 39 extra points, from the leading coefficients of the flag
    let (a, b, d, k) = (BigInt::from(7), BigInt::from(22), BigInt::from(42), BigInt::from(39));
    let lhs = (&b + &k) * (&b + &k) - (&a + &k) * (&d + &k);
    c.eq("(22+39)^2 - (7+39)(42+39)", BigInt::from(-5), lhs);
    Ok(())
}

fn eg1_scaled(c: &mut Checks) -> Result<()> {
    let j = job(EG1_SCALED_JSON, "eg1-scaled")?;
    let l = &j.lattice;
    c.eq("ground set size", 19usize, l.polymatroid().len());
    c.eq("rank", 4u32, l.polymatroid().full_rank());
    let higher = j.building.members().iter().filter(|&&f| l.rank(f) >= 2).count();
    c.eq("connected flats of rank >= 2", 6usize, higher);
    let want = [1, 6, 6, 1];
    c.poly("H via spanning", &want, &hilbert_spanning(&j.building)?.hilbert);
    c.poly(
        "H via recursion",
        &want,
        &hilbert_recursion(&j.building, RecursionVariant::Restriction)?.hilbert,
    );
    c.poly("H via fy", &want, &hilbert_fy(&j.building)?.hilbert);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples_pass() {
        for name in ["fig1", "k4", "eg1-scaled"] {
            let r = run_example(name).unwrap();
            assert!(r.pass, "{name}: {:?}", r.checks.iter().find(|l| !l.pass));
        }
    }

    #[test]
    fn unknown_example() {
        assert!(matches!(run_example("nope"), Err(Error::InvalidArgument(_))));
    }
}
