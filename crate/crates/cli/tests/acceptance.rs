//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use traintrack::lamination::{
    check_window, dual_language, eigenray_equivalence, ilt_contraction, illegality_profile, singular_leaves,
    uniform_recurrence_check, Connector,
};
use traintrack::nielsen::{
    detect_inps, eigenray_prefix, is_periodic_nielsen, InpOptions, PeriodicStructures,
};
use traintrack::spectral::DEFAULT_TOL;
use traintrack::{Dart, EdgePath, GateStructure, GraphSelfMap, PfData, TransitionMatrix, Turn, TurnTable};
use traintrack_cli::{parse_map_file, MapFile};
use traintrack_oracles as oracle;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> MapFile {
    let text = std::fs::read_to_string(fixture_dir().join(format!("{name}.tt"))).unwrap();
    parse_map_file(&text).unwrap()
}

fn fixture_names() -> [&'static str; 4] {
    ["tribonacci", "tribonacci-inv", "fibonacci", "reducible"]
}

fn letter(d: Dart) -> i32 {
    let k = d.edge() as i32 + 1;
    if d.is_reversed() {
        -k
    } else {
        k
    }
}

fn word(p: &EdgePath) -> Vec<i32> {
    p.darts().iter().map(|&d| letter(d)).collect()
}

fn to_oracle(f: &GraphSelfMap) -> oracle::Map {
    let g = f.graph();
    oracle::Map {
        origin: g.edges().map(|e| g.origin(e)).collect(),
        terminus: g.edges().map(|e| g.terminus(e)).collect(),
        images: g.edges().map(|e| word(f.image(e))).collect(),
    }
}

fn gate_names(f: &GraphSelfMap) -> BTreeSet<BTreeSet<String>> {
    let g = f.graph();
    GateStructure::compute(f)
        .unwrap()
        .gates()
        .iter()
        .map(|gate| gate.darts.iter().map(|&d| g.dart_name(d)).collect())
        .collect()
}

fn partition(gates: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    gates.iter()
        .map(|gate| gate.iter().map(|s| s.to_string()).collect())
        .collect()
}

fn show(p: &BTreeSet<BTreeSet<String>>) -> String {
    p.iter()
        .map(|g| format!("{{{}}}", g.iter().cloned().collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join("")
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_reduced(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> EdgePath {
    let len = rng.gen_range(0..=max_len);
    let mut darts: Vec<Dart> = Vec::with_capacity(len);
    while darts.len() < len {
        let d = Dart::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if darts.last() != Some(&d.reverse()) {
            darts.push(d);
        }
    }
    EdgePath::from_darts_unchecked(darts)
}

fn criterion_1() -> Outcome {
    let f = fixture("tribonacci").map;
    ensure(f.is_expanding().expanding, || "not expanding".into())?;
    let gs = GateStructure::compute(&f).map_err(|e| e.to_string())?;
    ensure(traintrack::is_train_track(&f, &gs).train_track, || "not a train track map".into())?;
    let expected = partition(&[&["a"], &["b"], &["c"], &["b~"], &["a~", "c~"]]);
    let got = gate_names(&f);
    ensure(got == expected, || format!("gates {} != {}", show(&got), show(&expected)))?;
    ensure(
        oracle::gates(&to_oracle(&f)).len() == got.len(),
        || "oracle gate count differs".into(),
    )?;
    ensure(gs.two_gates_check(f.graph()), || "fewer than 2 gates at a vertex".into())?;
    let m = TransitionMatrix::of(&f);
    ensure(
        m.rows() == [vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]],
        || format!("matrix {:?}", m.rows()),
    )?;
    ensure(m.is_primitive(), || "matrix not primitive".into())?;
    let pf = PfData::compute(&f, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let root = oracle::bisect_root(&[-1.0, -1.0, 0.0, 1.0], 1.0, 2.0);
    ensure((pf.lambda - root).abs() < 1e-9, || format!("lambda {} vs root {}", pf.lambda, root))?;
    Ok(format!("5 gates, primitive, lambda = {:.12}", pf.lambda))
}

fn criterion_2() -> Outcome {
    let plus = fixture("tribonacci").map;
    let minus = fixture("tribonacci-inv").map;
    let gs = GateStructure::compute(&minus).map_err(|e| e.to_string())?;
    ensure(traintrack::is_train_track(&minus, &gs).train_track, || "not a train track map".into())?;
    ensure(
        plus.compose(&minus).map_err(|e| e.to_string())?.is_identity()
            && minus.compose(&plus).map_err(|e| e.to_string())?.is_identity(),
        || "inverse pair does not compose to the identity".into(),
    )?;
    let got = gate_names(&minus);
    let oracle_count = oracle::gates(&to_oracle(&minus)).len();
    let expected = partition(&[&["a"], &["c"], &["b", "a~"], &["b~"], &["c~"]]);
    ensure(got == expected, || {
        format!(
            "gates {} != expected {} (brute-force oracle from the gate definition finds {} gates)",
            show(&got),
            show(&expected),
            oracle_count
        )
    })?;
    Ok("train track, inverse pair composes to the identity".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    for name in fixture_names() {
        let f = fixture(name).map;
        let gs = GateStructure::compute(&f).map_err(|e| e.to_string())?;
        let o = to_oracle(&f);
        let rank = f.graph().edge_count();
        for i in 0..10_000 {
            let w = random_reduced(&mut rng, rank, 200);
            let before = gs.ilt_count(&w);
            let after = gs.ilt_count(&f.apply_reduced(&w));
            ensure(after <= before, || format!("{name}: ILT {before} -> {after} on {}", f.graph().format_path(&w)))?;
            if i < 200 {
                let img = o.apply(&word(&w));
                ensure(
                    oracle::illegal_turns(&o, &img) == after && oracle::illegal_turns(&o, &word(&w)) == before,
                    || format!("{name}: ILT disagrees with the oracle"),
                )?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} words, zero violations"))
}

fn criterion_4() -> Outcome {
    let mut sizes = Vec::new();
    for name in fixture_names() {
        let f = fixture(name).map;
        let g = f.graph();
        let gs = GateStructure::compute(&f).map_err(|e| e.to_string())?;
        let table = TurnTable::compute(&f, &gs);
        let df = f.derivative();
        for t in Turn::all_nondegenerate(g) {
            if table.is_used(t) {
                ensure(gs.is_legal(t), || format!("{name}: used turn {} is illegal", t.display(g)))?;
                ensure(table.is_used(df.turn_image(t)), || {
                    format!("{name}: image of used turn {} is unused", t.display(g))
                })?;
            }
        }
        let ours: BTreeSet<(i32, i32)> = table
            .used()
            .iter()
            .map(|t| {
                let (a, b) = t.darts();
                (letter(a).min(letter(b)), letter(a).max(letter(b)))
            })
            .collect();
        ensure(ours == oracle::used_turns(&to_oracle(&f)), || format!("{name}: used turns differ from the oracle"))?;
        if name == "tribonacci" {
            ensure(table.used().len() == 7, || format!("tribonacci: {} used turns", table.used().len()))?;
        }
        sizes.push(format!("{name}={}", table.used().len()));
    }
    Ok(format!("used turns {}", sizes.join(" ")))
}

fn criterion_5() -> Outcome {
    let mut summary = Vec::new();
    for name in ["tribonacci", "tribonacci-inv", "fibonacci"] {
        let f = fixture(name).map;
        let g = f.graph();
        let gs = GateStructure::compute(&f).map_err(|e| e.to_string())?;
        let ps = PeriodicStructures::compute(&f, &gs);
        let rays = ps.eigenrays();
        for pv in &ps.vertices {
            let gates = gs.gates_at(pv.vertex).count();
            let count = rays.iter().filter(|r| r.base == pv.vertex).count();
            ensure(count == gates, || format!("{name}: {count} eigenrays but {gates} gates"))?;
        }
        for r in &rays {
            let long = eigenray_prefix(&f, r.eigen_dart, 512).map_err(|e| e.to_string())?;
            for n in [1, 2, 3, 5, 8, 13, 64, 200, 511] {
                let short = eigenray_prefix(&f, r.eigen_dart, n).map_err(|e| e.to_string())?;
                ensure(short.is_prefix_of(&long), || format!("{name}: prefix {n} not nested"))?;
            }
            let head = word(&long.prefix(200));
            ensure(oracle::smallest_period(&head, 20).is_none(), || {
                format!("{name}: eigenray {} has a period <= 20", g.dart_name(r.eigen_dart))
            })?;
        }
        summary.push(format!("{name}={}", rays.len()));
    }
    Ok(format!("eigenrays {}", summary.join(" ")))
}

fn criterion_6() -> Outcome {
    let f = fixture("fibonacci").map;
    let report = detect_inps(&f, &InpOptions::default()).map_err(|e| e.to_string())?;
    let h = &report.subdivision.map;
    ensure(!report.inps.is_empty(), || "no INP found".into())?;
    for inp in &report.inps {
        let gs = GateStructure::compute(h).map_err(|e| e.to_string())?;
        ensure(gs.ilt_count(&inp.path) == 1, || "INP without exactly one illegal turn".into())?;
        ensure(h.iterate_reduced(&inp.path, inp.period) == inp.path, || "INP not periodic".into())?;
        ensure(is_periodic_nielsen(h, &inp.path, inp.period), || "INP not periodic".into())?;
        let first = eigenray_prefix(h, inp.path.first().unwrap(), inp.first_branch().len());
        let second = eigenray_prefix(h, inp.second_branch().first().unwrap(), inp.second_branch().len());
        ensure(
            first.ok() == Some(inp.first_branch()) && second.ok() == Some(inp.second_branch()),
            || "INP branches are not eigenray prefixes".into(),
        )?;
    }
    let brute = oracle::brute_force_inps(&to_oracle(h), 8, 6);
    let ours: BTreeSet<Vec<i32>> = report
        .inps
        .iter()
        .map(|i| {
            let w = word(&i.path);
            std::cmp::min(w.clone(), oracle::inverse(&w))
        })
        .collect();
    ensure(ours == brute, || format!("detected {:?}, exhaustive search {:?}", ours, brute))?;
    Ok(format!(
        "{} INP ({}), period {}, oracle agrees",
        report.inps.len(),
        h.graph().format_path(&report.inps[0].path),
        report.inps[0].period
    ))
}

fn tt_binary() -> &'static str {
    env!("CARGO_BIN_EXE_tt")
}

fn run_tt(args: &[&str]) -> (i32, String) {
    let out = Command::new(tt_binary()).args(args).output().expect("run tt");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn fixture_path(name: &str) -> String {
    fixture_dir().join(format!("{name}.tt")).to_string_lossy().into_owned()
}

fn criterion_7() -> Outcome {
    for name in ["tribonacci", "tribonacci-inv"] {
        let eq = eigenray_equivalence(&fixture(name).map).map_err(|e| e.to_string())?;
        ensure(eq.vertices.len() == 1 && eq.class_count == 1, || format!("{name}: {} classes", eq.class_count))?;
    }
    let eq = eigenray_equivalence(&fixture("reducible").map).map_err(|e| e.to_string())?;
    ensure(eq.class_count >= 2, || "reducible fixture has a single class".into())?;
    let (code, out) = run_tt(&["check", &fixture_path("reducible"), "--json"]);
    ensure(code == 1, || format!("check exited with {code}"))?;
    ensure(out.contains("NOT iwip"), || "no NOT-iwip certificate in the report".into())?;
    Ok(format!("single class for the Tribonacci pair, reducible: {} classes, exit 1", eq.class_count))
}

fn criterion_8() -> Outcome {
    let f = fixture("tribonacci").map;
    let report = detect_inps(&f, &InpOptions::default()).map_err(|e| e.to_string())?;
    let set = singular_leaves(&report).map_err(|e| e.to_string())?;
    let g = set.map().graph();
    let turns: BTreeSet<String> = set
        .leaves
        .iter()
        .filter_map(|l| match &l.connector {
            Connector::Turn(t) => Some(t.display(g)),
            _ => None,
        })
        .collect();
    let expected: BTreeSet<String> = ["(a, b)", "(a, c)", "(b, c)", "(b~, c~)"].iter().map(|s| s.to_string()).collect();
    ensure(turns == expected, || format!("turn-type leaves {:?}", turns))?;
    for leaf in set.leaves.iter().filter(|l| l.is_turn_type()) {
        for n in [8, 16, 32] {
            let c = check_window(set.map(), leaf, n).map_err(|e| e.to_string())?;
            ensure(c.reduced && c.ilt <= 1 && c.unused_turns == 1 && c.unused_at_connector, || {
                format!("window n={n} of {:?}: {:?}", leaf.connector, c)
            })?;
        }
    }
    Ok(format!("{} turn-type leaves, windows n = 8, 16, 32 valid", turns.len()))
}

fn criterion_9() -> Outcome {
    let plus = fixture("tribonacci").map;
    let minus = fixture("tribonacci-inv").map;
    let pf = PfData::compute(&plus, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let mut maxes = Vec::new();
    for n in [8, 16, 32] {
        let d = dual_language(&minus, n, &InpOptions::default()).map_err(|e| e.to_string())?;
        let p = illegality_profile(&plus, d.language.words()).map_err(|e| e.to_string())?;
        ensure(p.max_legal as u64 <= pf.c_illegal, || {
            format!("n={n}: legal run {} > c_illegal {}", p.max_legal, pf.c_illegal)
        })?;
        maxes.push(p.max_legal);
    }
    ensure(maxes.iter().all(|&m| m <= maxes[0]), || format!("max legal run grows: {:?}", maxes))?;
    Ok(format!("max legal run {:?} for n = 8, 16, 32, c_illegal = {}", maxes, pf.c_illegal))
}

fn criterion_10() -> Outcome {
    let plus = fixture("tribonacci").map;
    let minus = fixture("tribonacci-inv").map;
    let chop = plus.cancellation_bound();
    let d = dual_language(&minus, 64, &InpOptions::default()).map_err(|e| e.to_string())?;
    let mut worst = 0;
    let mut start = 0;
    let mut erased = 0;
    for w in d.language.words() {
        let s = ilt_contraction(&plus, w, 30, chop).map_err(|e| e.to_string())?;
        ensure(s.is_non_increasing(), || format!("series {:?} increases", s.ilt))?;
        let reached = s.first_at_most(1).ok_or_else(|| format!("series {:?} stays above 1", s.ilt))?;
        if s.exhausted && s.ilt[reached - 1] > 1 && reached + 1 == s.ilt.len() {
            erased += 1;
        }
        worst = worst.max(reached);
        start = start.max(s.ilt[0]);
    }
    let report = detect_inps(&plus, &InpOptions::default()).map_err(|e| e.to_string())?;
    for inp in &report.inps {
        let h = &report.subdivision.map;
        let s = ilt_contraction(h, &inp.path, 30, 0).map_err(|e| e.to_string())?;
        ensure(s.ilt.iter().all(|&x| x == 1), || "INP word leaves ILT 1".into())?;
    }
    Ok(format!(
        "{} windows, initial ILT <= {start}, ILT <= 1 by step {worst} ({erased} only by erasure); {} INP words",
        d.language.len(),
        report.inps.len()
    ))
}

fn criterion_11() -> Outcome {
    let mut witnesses = Vec::new();
    for name in fixture_names() {
        let mf = fixture(name);
        if !mf.assertions.iwip {
            continue;
        }
        for m in [2, 3, 4] {
            let r = uniform_recurrence_check(&mf.map, m, 25).map_err(|e| format!("{name} m={m}: {e}"))?;
            witnesses.push(format!("{name}/{m}:{}", r.witness));
        }
    }
    Ok(format!("T(m) {}", witnesses.join(" ")))
}

fn criterion_12() -> Outcome {
    let mut runs = 0;
    for name in fixture_names() {
        let file = fixture_path(name);
        let against = fixture_path("tribonacci");
        let contract_word = if name == "fibonacci" { "a b a~ b~ a" } else { "a b~ c a~ b c a" };
        let commands: Vec<Vec<&str>> = vec![
            vec!["check"],
            vec!["gates"],
            vec!["turns"],
            vec!["pf"],
            vec!["inps"],
            vec!["eigenrays", "--length", "16"],
            vec!["bfh", "--window", "4"],
            vec!["singular", "--window", "8"],
            vec!["dual", "--window", "8"],
            vec!["illegality", "--against", &against, "--window", "8"],
            vec!["contract", "--word", contract_word, "--steps", "10"],
        ];
        for cmd in commands {
            let mut args: Vec<&str> = vec![cmd[0], &file];
            args.extend_from_slice(&cmd[1..]);
            args.push("--json");
            let first = run_tt(&args);
            let second = run_tt(&args);
            ensure(first == second, || format!("{name} {}: outputs differ", cmd[0]))?;
            ensure(first.1.contains("\"schema\": 1"), || format!("{name} {}: no schema field", cmd[0]))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} command/fixture pairs byte-identical"))
}

struct Criterion {
    number: usize,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { number: 1, title: "structural suite on Tribonacci f+", limit: Some(Duration::from_secs(1)), run: criterion_1 },
        Criterion { number: 2, title: "structural suite on Tribonacci f-", limit: Some(Duration::from_secs(1)), run: criterion_2 },
        Criterion { number: 3, title: "ILT monotonicity on random words", limit: Some(Duration::from_secs(10)), run: criterion_3 },
        Criterion { number: 4, title: "used-turn laws", limit: None, run: criterion_4 },
        Criterion { number: 5, title: "eigenray suite", limit: None, run: criterion_5 },
        Criterion { number: 6, title: "INP suite on Fibonacci", limit: Some(Duration::from_secs(30)), run: criterion_6 },
        Criterion { number: 7, title: "equivalence classes and NOT-iwip certificate", limit: None, run: criterion_7 },
        Criterion { number: 8, title: "singular-leaf suite on Tribonacci f+", limit: None, run: criterion_8 },
        Criterion { number: 9, title: "total illegality of dual-language windows", limit: Some(Duration::from_secs(60)), run: criterion_9 },
        Criterion { number: 10, title: "contraction experiment", limit: None, run: criterion_10 },
        Criterion { number: 11, title: "uniform recurrence on iwip fixtures", limit: None, run: criterion_11 },
        Criterion { number: 12, title: "deterministic JSON output", limit: None, run: criterion_12 },
    ];
    let mut failures = 0;
    println!();
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failures += 1;
                ("FAIL", d.clone())
            }
        };
        println!("criterion {:>2}: {status}  {} ({elapsed:.2?}): {detail}", c.number, c.title);
    }
    println!("\n{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
