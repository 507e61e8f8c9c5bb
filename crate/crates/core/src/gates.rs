//! Gates, legality, illegal-turn counts and used turns.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Dart, EdgePath, Graph, Turn};
use crate::map::GraphSelfMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gate {
    pub vertex: usize,
    pub darts: Vec<Dart>,
    /// The unique `Df`-periodic dart of the gate and its `Df`-period.
    pub eigen: Option<(Dart, usize)>,
}

/// Partition of the darts at each vertex into gates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateStructure {
    gates: Vec<Gate>,
    gate_of: Vec<usize>,
}

impl GateStructure {
    /// Gates of an expanding map.
    ///
    /// Two darts at a vertex are merged when `Df^t` agrees on them for some
    /// `t <= 2 * darts`. Every `Df` orbit has preperiod plus period at most
    /// the dart count, so a collision either happens by then or never.
    pub fn compute(f: &GraphSelfMap) -> Result<GateStructure> {
        let exp = f.is_expanding();
        if !exp.expanding {
            return Err(Error::NotExpanding {
                edge: exp.witness.unwrap_or_default(),
            });
        }
        Ok(Self::compute_unchecked(f))
    }

    pub(crate) fn compute_unchecked(f: &GraphSelfMap) -> GateStructure {
        let g = f.graph();
        let df = f.derivative();
        let n = g.dart_count();
        let mut uf = UnionFind::<usize>::new(n);
        let mut current: Vec<Dart> = g.darts().collect();
        for _t in 1..=2 * n {
            for x in current.iter_mut() {
                *x = df.apply(*x);
            }
            let mut first: HashMap<(usize, Dart), usize> = HashMap::new();
            for d in 0..n {
                let key = (g.origin(Dart(d as u32)), current[d]);
                match first.get(&key) {
                    Some(&other) => {
                        uf.union(other, d);
                    }
                    None => {
                        first.insert(key, d);
                    }
                }
            }
        }
        // gates ordered by vertex, then by smallest dart
        let mut classes: BTreeMap<(usize, usize), Vec<Dart>> = BTreeMap::new();
        let mut rep_min: HashMap<usize, usize> = HashMap::new();
        for d in 0..n {
            rep_min.entry(uf.find(d)).or_insert(d);
        }
        for d in 0..n {
            let m = rep_min[&uf.find(d)];
            classes
                .entry((g.origin(Dart(d as u32)), m))
                .or_default()
                .push(Dart(d as u32));
        }
        let mut gates = Vec::with_capacity(classes.len());
        let mut gate_of = vec![0; n];
        for ((vertex, _), darts) in classes {
            for d in &darts {
                gate_of[d.index()] = gates.len();
            }
            let periodic: Vec<(Dart, usize)> = darts
                .iter()
                .filter_map(|&d| df.period(d).map(|k| (d, k)))
                .collect();
            let eigen = if periodic.len() == 1 {
                Some(periodic[0])
            } else {
                None
            };
            gates.push(Gate {
                vertex,
                darts,
                eigen,
            });
        }
        GateStructure { gates, gate_of }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_of(&self, d: Dart) -> usize {
        self.gate_of[d.index()]
    }

    pub fn gates_at(&self, v: usize) -> impl Iterator<Item = &Gate> {
        self.gates.iter().filter(move |g| g.vertex == v)
    }

    pub fn same_gate(&self, a: Dart, b: Dart) -> bool {
        self.gate_of(a) == self.gate_of(b)
    }

    /// Legal iff the darts lie in distinct gates; degenerate turns are illegal.
    pub fn is_legal_turn(&self, g: &Graph, t: Turn) -> Result<bool> {
        let (a, b) = t.darts();
        if a.index() >= g.dart_count() || b.index() >= g.dart_count() || g.origin(a) != g.origin(b)
        {
            return Err(Error::TurnVertex);
        }
        Ok(!self.same_gate(a, b))
    }

    pub fn is_legal(&self, t: Turn) -> bool {
        let (a, b) = t.darts();
        !self.same_gate(a, b)
    }

    /// Number of illegal turns crossed by `p`.
    pub fn ilt_count(&self, p: &EdgePath) -> usize {
        p.turns().filter(|&t| !self.is_legal(t)).count()
    }

    pub fn is_legal_path(&self, p: &EdgePath) -> bool {
        p.turns().all(|t| self.is_legal(t))
    }

    /// Longest legal subpath of `p` (simplicial length).
    pub fn max_legal_run(&self, p: &EdgePath) -> usize {
        if p.is_empty() {
            return 0;
        }
        let mut best = 1;
        let mut run = 1;
        for t in p.turns() {
            if self.is_legal(t) {
                run += 1;
            } else {
                run = 1;
            }
            best = best.max(run);
        }
        best
    }

    /// Every vertex carries at least two gates.
    pub fn two_gates_check(&self, g: &Graph) -> bool {
        (0..g.vertex_count()).all(|v| self.gates_at(v).count() >= 2)
    }

    pub fn display(&self, g: &Graph) -> Vec<Vec<String>> {
        self.gates
            .iter()
            .map(|gate| gate.darts.iter().map(|&d| g.dart_name(d)).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrainTrackCheck {
    pub train_track: bool,
    /// `(edge name, offending turn)`
    pub witness: Option<(String, String)>,
}

/// Every edge image is a legal path.
pub fn is_train_track(f: &GraphSelfMap, gs: &GateStructure) -> TrainTrackCheck {
    let g = f.graph();
    for e in g.edges() {
        if let Some(t) = f.image(e).turns().find(|&t| !gs.is_legal(t)) {
            return TrainTrackCheck {
                train_track: false,
                witness: Some((g.edge_name(e.edge()).to_string(), t.display(g))),
            };
        }
    }
    TrainTrackCheck {
        train_track: true,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TurnEntry {
    pub turn: Turn,
    pub legal: bool,
    pub used: bool,
    pub image: Turn,
}

/// Legality, usedness and `D²f` image of every non-degenerate turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnTable {
    entries: Vec<TurnEntry>,
    used: BTreeSet<Turn>,
}

impl TurnTable {
    /// Used turns: the turns crossed by some edge image, closed under `D²f`.
    /// Any turn crossed by `f^t(e)` either lies inside the image of a single
    /// dart or is the `D²f` image of a turn crossed by `f^(t-1)(e)`.
    pub fn compute(f: &GraphSelfMap, gs: &GateStructure) -> TurnTable {
        let g = f.graph();
        let df = f.derivative();
        let mut used: BTreeSet<Turn> = BTreeSet::new();
        let mut stack: Vec<Turn> = Vec::new();
        for d in g.edges() {
            for t in f.image(d).turns() {
                if used.insert(t) {
                    stack.push(t);
                }
            }
        }
        while let Some(t) = stack.pop() {
            let img = df.turn_image(t);
            if used.insert(img) {
                stack.push(img);
            }
        }
        let entries = Turn::all_nondegenerate(g)
            .into_iter()
            .map(|turn| TurnEntry {
                turn,
                legal: gs.is_legal(turn),
                used: used.contains(&turn),
                image: df.turn_image(turn),
            })
            .collect();
        TurnTable { entries, used }
    }

    pub fn entries(&self) -> &[TurnEntry] {
        &self.entries
    }

    pub fn is_used(&self, t: Turn) -> bool {
        self.used.contains(&t)
    }

    pub fn used(&self) -> &BTreeSet<Turn> {
        &self.used
    }

    /// Number of unused turns crossed by `p`.
    pub fn unused_count(&self, p: &EdgePath) -> usize {
        p.turns().filter(|t| !self.is_used(*t)).count()
    }

    pub fn is_used_legal(&self, p: &EdgePath) -> bool {
        p.turns().all(|t| self.is_used(t))
    }
}
