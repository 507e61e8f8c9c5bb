//! Command line front end: map files in, JSON or text reports out.
//!
//! Exit codes: 0 produced or passed, 1 property violation, 2 inconclusive
//! within the budget, 3 input error.

pub mod mapfile;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use traintrack::lamination::{
    bfh_language, dual_language, eigenray_equivalence, ilt_contraction, illegality_profile,
    require_shared_graph, singular_leaves, Connector, SingularLeaf,
};
use traintrack::nielsen::{detect_inps, stability_check, InpOptions, PeriodicStructures};
use traintrack::spectral::DEFAULT_TOL;
use traintrack::{is_train_track, Error, GateStructure, Graph, PfData, TransitionMatrix, TurnTable};

pub use mapfile::{parse_map_file, serialize_map_file, MapFile};

pub const SCHEMA: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tt", version, about = "Train track maps, INPs and laminations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Map file
    file: PathBuf,
    /// Emit JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct Budget {
    #[arg(long, default_value_t = 6)]
    max_period: usize,
    #[arg(long)]
    max_pf_len: Option<f64>,
}

impl Budget {
    fn options(&self) -> InpOptions {
        InpOptions {
            max_period: self.max_period,
            max_pf_len: self.max_pf_len,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate, expansion, train track, gates and primitivity
    Check(Common),
    /// Gate partition at each vertex
    Gates(Common),
    /// Legal and used turns
    Turns(Common),
    /// Perron-Frobenius data
    Pf {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Periodic indivisible Nielsen paths
    Inps {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        budget: Budget,
    },
    /// Eigenray prefixes at periodic vertices
    Eigenrays {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        length: usize,
    },
    /// Window language of the attracting lamination
    Bfh {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
    },
    /// Singular-leaf candidates
    Singular {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        window: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Window language of the dual lamination of the map's inverse
    Dual {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        window: usize,
        /// Treat the map as the inverse of the expanding map without an
        /// `assert inverse-of` line
        #[arg(long)]
        assume_inverse: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Longest legal subpaths of dual-language words against another map
    Illegality {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        against: PathBuf,
        #[arg(long)]
        window: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Chopped ILT series of a word under iteration
    Contract {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        chop: Option<usize>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Check(c) | Command::Gates(c) | Command::Turns(c) => c,
            Command::Pf { common, .. }
            | Command::Inps { common, .. }
            | Command::Eigenrays { common, .. }
            | Command::Bfh { common, .. }
            | Command::Singular { common, .. }
            | Command::Dual { common, .. }
            | Command::Illegality { common, .. }
            | Command::Contract { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Gates(_) => "gates",
            Command::Turns(_) => "turns",
            Command::Pf { .. } => "pf",
            Command::Inps { .. } => "inps",
            Command::Eigenrays { .. } => "eigenrays",
            Command::Bfh { .. } => "bfh",
            Command::Singular { .. } => "singular",
            Command::Dual { .. } => "dual",
            Command::Illegality { .. } => "illegality",
            Command::Contract { .. } => "contract",
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `argv` (program name first).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json = cli.command.common().json;
    let name = cli.command.name();
    match execute(&cli.command) {
        Ok((code, body)) => {
            let mut report = header(name);
            if let Value::Object(m) = body {
                report.extend(m);
            }
            Outcome {
                code,
                stdout: render(&Value::Object(report), json),
                stderr: String::new(),
            }
        }
        Err(failure) => {
            let mut report = header(name);
            report.insert("error".into(), json!(failure.message));
            report.insert("exit_code".into(), json!(failure.code));
            if json {
                Outcome {
                    code: failure.code,
                    stdout: render(&Value::Object(report), true),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: failure.code,
                    stdout: String::new(),
                    stderr: format!("error: {}\n", failure.message),
                }
            }
        }
    }
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

fn render(v: &Value, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            let shown = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    }
    out
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Parse { .. }
            | Error::UnknownToken(_)
            | Error::UnknownVertex(_)
            | Error::UnknownDart(_)
            | Error::MalformedPath { .. }
            | Error::EmptyImage { .. }
            | Error::Incoherent { .. }
            | Error::TurnVertex
            | Error::IncompatibleGraphs(_)
            | Error::WordTooShort { .. }
            | Error::NonPeriodicPoint { .. } => EXIT_INPUT,
            Error::Inconclusive(_) | Error::MaxIterExceeded(_) | Error::NoConvergence { .. } => {
                EXIT_INCONCLUSIVE
            }
            _ => EXIT_VIOLATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn load(path: &Path) -> Result<MapFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    parse_map_file(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// Rounds to 12 significant digits so reports do not depend on the last
/// bits of floating point arithmetic.
pub fn num(x: f64) -> Value {
    let s = format!("{x:.11e}");
    json!(s.parse::<f64>().unwrap_or(x))
}

fn assumptions(mf: &MapFile, extra: &[&str]) -> Value {
    let mut v = vec![
        "marking: maps are compared on their common graph, no change of marking".to_string(),
        if mf.assertions.iwip {
            "iwip: asserted in the map file, not machine-checked".to_string()
        } else {
            "iwip: not asserted".to_string()
        },
        if mf.assertions.atoroidal {
            "atoroidal: asserted in the map file, not machine-checked".to_string()
        } else {
            "atoroidal: not asserted".to_string()
        },
    ];
    v.extend(extra.iter().map(|s| s.to_string()));
    json!(v)
}

fn execute(cmd: &Command) -> Result<(i32, Value), Failure> {
    let mf = load(&cmd.common().file)?;
    let f = &mf.map;
    let g = f.graph();
    let mut body = Map::new();
    body.insert("map".into(), json!(mf.name));
    let mut code = EXIT_OK;
    let mut extra: Vec<&str> = Vec::new();
    match cmd {
        Command::Check(_) => {
            let validation = g.validate();
            body.insert(
                "validation".into(),
                json!({
                    "passed": validation.passed(),
                    "violations": validation.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                }),
            );
            let exp = f.is_expanding();
            body.insert("expanding".into(), json!({ "value": exp.expanding, "witness": exp.witness }));
            let mut passed = validation.passed() && exp.expanding;
            if exp.expanding {
                let gs = GateStructure::compute(f)?;
                body.insert("gates".into(), json!(gs.display(g)));
                body.insert("gate_count".into(), json!(gs.gates().len()));
                let tt = is_train_track(f, &gs);
                body.insert(
                    "train_track".into(),
                    json!({
                        "value": tt.train_track,
                        "witness": tt.witness.as_ref().map(|(e, t)| json!({ "edge": e, "turn": t })),
                    }),
                );
                let two = gs.two_gates_check(g);
                body.insert("two_gates".into(), json!(two));
                let m = TransitionMatrix::of(f);
                let primitive = m.is_primitive();
                body.insert("primitive".into(), json!(primitive));
                if primitive {
                    let pf = PfData::compute(f, DEFAULT_TOL)?;
                    body.insert("lambda".into(), num(pf.lambda));
                }
                let eq = eigenray_equivalence(f)?;
                body.insert(
                    "eigenray_classes".into(),
                    json!({
                        "class_count": eq.class_count,
                        "not_iwip": eq.not_iwip,
                    }),
                );
                passed &= tt.train_track && two && primitive && eq.not_iwip.is_none();
            }
            body.insert("passed".into(), json!(passed));
            if !passed {
                code = EXIT_VIOLATION;
            }
        }
        Command::Gates(_) => {
            let gs = GateStructure::compute(f)?;
            let gates: Vec<Value> = gs
                .gates()
                .iter()
                .map(|gate| {
                    json!({
                        "vertex": g.vertex_name(gate.vertex),
                        "darts": gate.darts.iter().map(|&d| g.dart_name(d)).collect::<Vec<_>>(),
                        "eigen_dart": gate.eigen.map(|(d, _)| g.dart_name(d)),
                        "eigen_period": gate.eigen.map(|(_, k)| k),
                    })
                })
                .collect();
            body.insert("gate_count".into(), json!(gates.len()));
            body.insert("gates".into(), json!(gates));
            body.insert("two_gates".into(), json!(gs.two_gates_check(g)));
        }
        Command::Turns(_) => {
            let gs = GateStructure::compute(f)?;
            let table = TurnTable::compute(f, &gs);
            let entries: Vec<Value> = table
                .entries()
                .iter()
                .map(|t| {
                    json!({
                        "turn": t.turn.display(g),
                        "legal": t.legal,
                        "used": t.used,
                        "image": t.image.display(g),
                    })
                })
                .collect();
            body.insert("turns".into(), json!(entries));
            body.insert("used_count".into(), json!(table.used().len()));
            body.insert(
                "used".into(),
                json!(table.used().iter().map(|t| t.display(g)).collect::<Vec<_>>()),
            );
        }
        Command::Pf { tol, .. } => {
            let m = TransitionMatrix::of(f);
            body.insert("matrix".into(), json!(m.rows()));
            body.insert("primitive".into(), json!(m.is_primitive()));
            let pf = PfData::compute(f, *tol)?;
            body.insert("lambda".into(), num(pf.lambda));
            body.insert(
                "pf_lengths".into(),
                json!(g
                    .edges()
                    .map(|e| json!([g.edge_name(e.edge()), num(pf.edge_length(e.edge()))]))
                    .collect::<Vec<_>>()),
            );
            body.insert("vol_pf".into(), num(pf.vol_pf));
            body.insert("bbt_bound".into(), num(pf.bbt_bound));
            body.insert("min_pf_length".into(), num(pf.min_pf_length));
            body.insert("c_illegal".into(), json!(pf.c_illegal));
            body.insert("cancellation_bound".into(), json!(f.cancellation_bound()));
            body.insert("residual_below_tol".into(), json!(pf.residual < *tol));
            if m.size() <= 6 {
                body.insert("charpoly".into(), json!(m.characteristic_polynomial().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
            }
        }
        Command::Inps { budget, .. } => {
            let opts = budget.options();
            let report = detect_inps(f, &opts)?;
            let h = &report.subdivision.map;
            let hg = h.graph();
            let st = stability_check(&report);
            body.insert("budget".into(), json!({ "max_period": opts.max_period, "max_pf_len": num(report.max_pf_len) }));
            body.insert("periodic_points".into(), json!(report.periodic_points.len()));
            body.insert("subdivided".into(), json!(!report.subdivision.is_trivial()));
            body.insert("graph".into(), graph_json(hg));
            body.insert(
                "images".into(),
                json!(hg.edges().map(|e| json!([hg.edge_name(e.edge()), hg.format_path(h.image(e))])).collect::<Vec<_>>()),
            );
            body.insert(
                "inps".into(),
                json!(report
                    .inps
                    .iter()
                    .map(|inp| json!({
                        "path": hg.format_path(&inp.path),
                        "period": inp.period,
                        "tip_index": inp.tip_index,
                        "branch_lengths": [inp.branch_lengths().0, inp.branch_lengths().1],
                        "start": hg.vertex_name(inp.start),
                        "end": hg.vertex_name(inp.end),
                        "closed": inp.is_closed(),
                    }))
                    .collect::<Vec<_>>()),
            );
            body.insert("stability".into(), json!({ "stable": st.stable, "reason": st.reason }));
        }
        Command::Eigenrays { length, .. } => {
            let gs = GateStructure::compute(f)?;
            let ps = PeriodicStructures::compute(f, &gs);
            let mut rays = Vec::new();
            for r in ps.eigenrays() {
                rays.push(json!({
                    "base": g.vertex_name(r.base),
                    "eigen_dart": g.dart_name(r.eigen_dart),
                    "period": r.period,
                    "prefix": g.format_path(&r.prefix(f, *length)?),
                }));
            }
            body.insert(
                "periodic_vertices".into(),
                json!(ps
                    .vertices
                    .iter()
                    .map(|v| json!({
                        "vertex": g.vertex_name(v.vertex),
                        "period": v.period,
                        "gates": gs.gates_at(v.vertex).count(),
                        "eigenrays": v.eigen_darts.len(),
                    }))
                    .collect::<Vec<_>>()),
            );
            body.insert("eigenrays".into(), json!(rays));
        }
        Command::Bfh { window, max_iter, .. } => {
            let b = bfh_language(f, *window, *max_iter)?;
            body.insert("window".into(), json!(window));
            body.insert("iterations".into(), json!(b.iterations));
            body.insert("size".into(), json!(b.language.len()));
            body.insert("words".into(), json!(b.language.display(g)));
        }
        Command::Singular { window, budget, .. } => {
            let report = detect_inps(f, &budget.options())?;
            let set = singular_leaves(&report)?;
            let hg = set.map().graph();
            let mut leaves = Vec::new();
            for leaf in &set.leaves {
                leaves.push(leaf_json(hg, leaf, &set.window(leaf, *window)?));
            }
            body.insert("label".into(), json!("singular-leaf candidates (complete list of possible forms)"));
            body.insert("window".into(), json!(window));
            body.insert("count".into(), json!(leaves.len()));
            body.insert("inp_count".into(), json!(set.inp_count));
            body.insert("leaves".into(), json!(leaves));
        }
        Command::Dual { window, assume_inverse, budget, .. } => {
            if mf.assertions.inverse_of.is_none() && !assume_inverse {
                return Err(input_error(
                    "dual needs `assert inverse-of <name>` in the map file or --assume-inverse".into(),
                ));
            }
            extra.push("inverse: the map represents the inverse automorphism (user assertion)");
            let d = dual_language(f, *window, &budget.options())?;
            body.insert("window".into(), json!(window));
            body.insert("size".into(), json!(d.language.len()));
            body.insert("bfh_size".into(), json!(d.bfh_size));
            body.insert("leaf_count".into(), json!(d.leaf_count));
            body.insert("added".into(), json!(d.added.iter().map(|w| g.format_path(w)).collect::<Vec<_>>()));
            body.insert("words".into(), json!(d.language.display(g)));
        }
        Command::Illegality { against, window, budget, .. } => {
            let plus = load(against)?;
            require_shared_graph(f, &plus.map)?;
            extra.push("inverse: the map represents the inverse of the --against map (user assertion)");
            let d = dual_language(f, *window, &budget.options())?;
            let profile = illegality_profile(&plus.map, d.language.words())?;
            let pf = PfData::compute(&plus.map, DEFAULT_TOL)?;
            let bounded = profile.max_legal as u64 <= pf.c_illegal;
            body.insert("against".into(), json!(plus.name));
            body.insert("window".into(), json!(window));
            body.insert("words".into(), json!(profile.words));
            body.insert("max_legal".into(), json!(profile.max_legal));
            body.insert(
                "histogram".into(),
                json!(profile.histogram.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>()),
            );
            body.insert("c_illegal".into(), json!(pf.c_illegal));
            body.insert("bounded".into(), json!(bounded));
            if !bounded {
                code = EXIT_VIOLATION;
            }
        }
        Command::Contract { word, steps, chop, .. } => {
            let w = g.parse_path(word)?;
            let chop = chop.unwrap_or_else(|| f.cancellation_bound());
            let s = ilt_contraction(f, &w, *steps, chop)?;
            body.insert("chop".into(), json!(chop));
            body.insert("ilt".into(), json!(s.ilt));
            body.insert("lengths".into(), json!(s.lengths));
            body.insert("exhausted".into(), json!(s.exhausted));
            body.insert("non_increasing".into(), json!(s.is_non_increasing()));
        }
    }
    body.insert("assumptions".into(), assumptions(&mf, &extra));
    Ok((code, Value::Object(body)))
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "vertices": g.vertex_names(),
        "edges": g.edges().map(|e| json!([
            g.edge_name(e.edge()),
            g.vertex_name(g.origin(e)),
            g.vertex_name(g.terminus(e)),
        ])).collect::<Vec<_>>(),
    })
}

fn leaf_json(g: &Graph, leaf: &SingularLeaf, window: &traintrack::EdgePath) -> Value {
    let (kind, connector) = match &leaf.connector {
        Connector::Turn(t) => ("turn", json!(t.display(g))),
        Connector::Inp { inp, start_used, end_used } => (
            "inp",
            json!({
                "path": g.format_path(&inp.path),
                "period": inp.period,
                "start_turn_used": start_used,
                "end_turn_used": end_used,
            }),
        ),
    };
    json!({
        "kind": kind,
        "left": { "base": g.vertex_name(leaf.left.base), "eigen_dart": g.dart_name(leaf.left.eigen_dart), "period": leaf.left.period },
        "right": { "base": g.vertex_name(leaf.right.base), "eigen_dart": g.dart_name(leaf.right.eigen_dart), "period": leaf.right.period },
        "connector": connector,
        "window": g.format_path(window),
    })
}
