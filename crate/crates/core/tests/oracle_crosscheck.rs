mod common;

use std::collections::BTreeSet;

use common::*;
use traintrack::lamination::bfh_language;
use traintrack::nielsen::{detect_inps, InpOptions};
use traintrack::spectral::DEFAULT_TOL;
use traintrack::{GateStructure, GraphSelfMap, PfData, TurnTable};
use traintrack_oracles as oracle;

fn fixtures() -> Vec<(&'static str, GraphSelfMap)> {
    vec![
        ("tribonacci", tribonacci()),
        ("tribonacci-inv", tribonacci_inv()),
        ("fibonacci", fibonacci()),
        ("reducible", reducible()),
    ]
}

/// Fixtures and short products of fixtures on the same rose.
fn maps() -> Vec<(String, GraphSelfMap)> {
    let mut out: Vec<(String, GraphSelfMap)> = fixtures().into_iter().map(|(n, f)| (n.to_string(), f)).collect();
    let rank3 = [("p", tribonacci()), ("m", tribonacci_inv()), ("r", reducible())];
    for (x, f) in &rank3 {
        for (y, g) in &rank3 {
            let h = f.compose(g).unwrap();
            if !h.is_identity() && h.is_expanding().expanding {
                out.push((format!("{x}{y}"), h));
            }
        }
    }
    out
}

fn our_gates(f: &GraphSelfMap) -> Vec<Vec<i32>> {
    let gs = GateStructure::compute(f).unwrap();
    let mut out: Vec<Vec<i32>> = gs
        .gates()
        .iter()
        .map(|g| {
            let mut v: Vec<i32> = g.darts.iter().map(|&d| letter(d)).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

#[test]
fn gates_agree_with_the_definition() {
    for (name, f) in maps() {
        assert_eq!(our_gates(&f), oracle::gates(&to_oracle(&f)), "{name}");
    }
}

#[test]
fn used_turns_agree_with_the_definition() {
    for (name, f) in fixtures() {
        let gs = GateStructure::compute(&f).unwrap();
        let ours: BTreeSet<(i32, i32)> = TurnTable::compute(&f, &gs)
            .used()
            .iter()
            .map(|t| {
                let (a, b) = t.darts();
                let (x, y) = (letter(a), letter(b));
                (x.min(y), x.max(y))
            })
            .collect();
        assert_eq!(ours, oracle::used_turns(&to_oracle(&f)), "{name}");
    }
}

#[test]
fn expansion_factors_are_polynomial_roots() {
    let cases = [
        (tribonacci(), vec![-1.0, -1.0, 0.0, 1.0]),
        (tribonacci_inv(), vec![-1.0, 0.0, -1.0, 1.0]),
        (fibonacci(), vec![-1.0, -1.0, 1.0]),
    ];
    for (f, poly) in cases {
        let pf = PfData::compute(&f, DEFAULT_TOL).unwrap();
        let root = oracle::bisect_root(&poly, 1.0, 2.0);
        assert!((pf.lambda - root).abs() < 1e-9, "{} vs {}", pf.lambda, root);
    }
}

#[test]
fn languages_agree_with_brute_force() {
    for (name, f) in fixtures().into_iter().filter(|(n, _)| *n != "reducible") {
        let o = to_oracle(&f);
        for n in 1..=8 {
            let ours: BTreeSet<Vec<i32>> = bfh_language(&f, n, 1000)
                .unwrap()
                .language
                .words()
                .iter()
                .map(word)
                .collect();
            assert_eq!(ours, oracle::bfh_factors(&o, n, 24), "{name} n={n}");
        }
    }
}

fn unordered(w: Vec<i32>) -> Vec<i32> {
    std::cmp::min(w.clone(), oracle::inverse(&w))
}

#[test]
fn inps_agree_with_exhaustive_search() {
    for (name, f) in [("fibonacci", fibonacci()), ("tribonacci", tribonacci()), ("tribonacci-inv", tribonacci_inv())] {
        let report = detect_inps(&f, &InpOptions::default()).unwrap();
        let ours: BTreeSet<Vec<i32>> = report.inps.iter().map(|i| unordered(word(&i.path))).collect();
        let brute = oracle::brute_force_inps(&to_oracle(&report.subdivision.map), 8, 6);
        assert_eq!(ours, brute, "{name}: minimal subdivision");
        let full: BTreeSet<Vec<i32>> = report.full_inps.iter().map(|i| unordered(word(&i.path))).collect();
        let bound = report.full_inps.iter().map(|i| i.path.len()).max().unwrap_or(0).max(16);
        let brute_full = oracle::brute_force_inps(&to_oracle(&report.full_subdivision.map), bound, 6);
        assert_eq!(full, brute_full, "{name}: full subdivision");
    }
}
