//! Laminations as finite-window languages: the attracting lamination of a
//! train track map, singular leaves made of two eigenrays, the dual
//! language of the inverse map, and the illegality experiments.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{is_train_track, GateStructure, TurnTable};
use crate::graph::{Dart, EdgePath, Graph, Turn};
use crate::map::GraphSelfMap;
use crate::nielsen::{detect_inps, stability_check, Eigenray, Inp, InpOptions, InpReport, PeriodicStructures, Subdivision};

/// Words of one fixed length, closed under reversal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaminaryLanguage {
    window: usize,
    words: BTreeSet<EdgePath>,
}

impl LaminaryLanguage {
    /// Collects the given words and their reversals.
    pub fn from_words<I: IntoIterator<Item = EdgePath>>(window: usize, words: I) -> LaminaryLanguage {
        let mut set = BTreeSet::new();
        for w in words {
            assert_eq!(w.len(), window, "word length must equal the window");
            set.insert(w.reverse());
            set.insert(w);
        }
        LaminaryLanguage { window, words: set }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn words(&self) -> &BTreeSet<EdgePath> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &EdgePath) -> bool {
        self.words.contains(w)
    }

    pub fn is_subset(&self, other: &LaminaryLanguage) -> bool {
        self.window == other.window && self.words.is_subset(&other.words)
    }

    pub fn is_flip_closed(&self) -> bool {
        self.words.iter().all(|w| self.words.contains(&w.reverse()))
    }

    pub fn display(&self, g: &Graph) -> Vec<String> {
        self.words.iter().map(|w| g.format_path(w)).collect()
    }
}

fn factors(p: &EdgePath, n: usize) -> impl Iterator<Item = EdgePath> + '_ {
    p.darts()
        .windows(n.max(1))
        .filter(move |_| n > 0 && p.len() >= n)
        .map(|w| EdgePath::from_darts_unchecked(w.to_vec()))
}

fn require_train_track(f: &GraphSelfMap) -> Result<GateStructure> {
    let gs = GateStructure::compute(f)?;
    let tt = is_train_track(f, &gs);
    match tt.witness {
        Some((edge, turn)) if !tt.train_track => Err(Error::NotTrainTrack { edge, turn }),
        _ => Ok(gs),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BfhLanguage {
    pub language: LaminaryLanguage,
    /// Rounds of the factor closure until no new word appeared.
    pub iterations: usize,
}

/// Length-`n` factors of all iterated edge images `f^t(e)`.
///
/// Once `f^t(e)` has at least `n` darts, every length-`n` factor of
/// `f^(t+1)(e)` lies in the image of a length-`n` factor of `f^t(e)`, so the
/// language is the closure of the first long-enough images under
/// `u -> factors(f(u))`. The closure is exact.
pub fn bfh_language(f: &GraphSelfMap, n: usize, max_iter: usize) -> Result<BfhLanguage> {
    require_train_track(f)?;
    let mut words: BTreeSet<EdgePath> = BTreeSet::new();
    let mut frontier: Vec<EdgePath> = Vec::new();
    let push = |w: EdgePath, words: &mut BTreeSet<EdgePath>, frontier: &mut Vec<EdgePath>| {
        if words.insert(w.clone()) {
            frontier.push(w);
        }
    };
    for e in f.graph().edges() {
        let mut p = EdgePath::single(e);
        let mut t = 0;
        loop {
            for w in factors(&p, n) {
                push(w, &mut words, &mut frontier);
            }
            if p.len() >= n {
                break;
            }
            t += 1;
            if t > max_iter {
                return Err(Error::MaxIterExceeded(max_iter));
            }
            p = f.apply(&p);
        }
    }
    let mut iterations = 0;
    while !frontier.is_empty() {
        iterations += 1;
        if iterations > max_iter {
            return Err(Error::MaxIterExceeded(max_iter));
        }
        let mut next = Vec::new();
        for u in frontier {
            let img = f.apply(&u);
            for w in factors(&img, n) {
                push(w, &mut words, &mut next);
            }
        }
        frontier = next;
    }
    Ok(BfhLanguage {
        language: LaminaryLanguage::from_words(n, words),
        iterations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    pub window: usize,
    /// First `t` such that every language word, up to reversal, occurs in
    /// `f^t(e)` for every edge `e`. All later iterates then also contain
    /// every word, since `f^(t+s)(e)` contains some `f^t(e')`.
    pub witness: usize,
    pub language_size: usize,
}

pub fn uniform_recurrence_check(f: &GraphSelfMap, m: usize, cap: usize) -> Result<Recurrence> {
    let lang = bfh_language(f, m, 10 * cap.max(100))?.language;
    let mut images: Vec<EdgePath> = f.graph().edges().map(EdgePath::single).collect();
    for t in 1..=cap {
        for p in images.iter_mut() {
            *p = f.apply_reduced(p);
        }
        let all = images.iter().all(|p| {
            let seen: BTreeSet<EdgePath> = factors(p, m).flat_map(|w| [w.reverse(), w]).collect();
            lang.words().iter().all(|w| seen.contains(w))
        });
        if all {
            return Ok(Recurrence {
                window: m,
                witness: t,
                language_size: lang.len(),
            });
        }
    }
    Err(Error::MaxIterExceeded(cap))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClasses {
    pub vertex: usize,
    pub eigen_darts: Vec<Dart>,
    /// Eigen darts grouped by the relation generated by used turns.
    pub classes: Vec<Vec<Dart>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub vertices: Vec<VertexClasses>,
    pub class_count: usize,
    /// Set when some periodic vertex carries more than one class.
    pub not_iwip: Option<String>,
}

/// Eigenrays at a periodic vertex are equivalent when the turn between their
/// eigen darts is used; the relation is closed transitively.
pub fn eigenray_equivalence(f: &GraphSelfMap) -> Result<EquivalenceReport> {
    let g = f.graph();
    let gs = GateStructure::compute(f)?;
    let table = TurnTable::compute(f, &gs);
    let ps = PeriodicStructures::compute(f, &gs);
    let mut vertices = Vec::new();
    let mut not_iwip = None;
    for pv in &ps.vertices {
        let darts: Vec<Dart> = pv.eigen_darts.iter().map(|&(d, _)| d).collect();
        let mut uf = UnionFind::<usize>::new(darts.len());
        for i in 0..darts.len() {
            for j in i + 1..darts.len() {
                if table.is_used(Turn::new(darts[i], darts[j])) {
                    uf.union(i, j);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Dart>> = BTreeMap::new();
        for (i, &d) in darts.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(d);
        }
        let mut classes: Vec<Vec<Dart>> = groups.into_values().collect();
        classes.sort();
        if classes.len() > 1 && not_iwip.is_none() {
            let shown: Vec<String> = classes
                .iter()
                .map(|c| {
                    let names: Vec<String> = c.iter().map(|&d| g.dart_name(d)).collect();
                    format!("{{{}}}", names.join(","))
                })
                .collect();
            not_iwip = Some(format!(
                "NOT iwip: {} eigenray classes at vertex {}: {}",
                classes.len(),
                g.vertex_name(pv.vertex),
                shown.join(" ")
            ));
        }
        vertices.push(VertexClasses {
            vertex: pv.vertex,
            eigen_darts: darts,
            classes,
        });
    }
    let class_count = vertices.iter().map(|v| v.classes.len()).sum();
    Ok(EquivalenceReport {
        vertices,
        class_count,
        not_iwip,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Connector {
    /// A legal unused turn between the two eigen darts.
    Turn(Turn),
    /// An INP running from the base of the left ray to the base of the right
    /// ray; the flags record whether the turns at its ends are used.
    Inp { inp: Inp, start_used: bool, end_used: bool },
}

/// A line `reverse(left) . connector . right` made of two eigenrays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SingularLeaf {
    pub left: Eigenray,
    pub right: Eigenray,
    pub connector: Connector,
}

impl SingularLeaf {
    pub fn is_turn_type(&self) -> bool {
        matches!(self.connector, Connector::Turn(_))
    }
}

/// Candidate singular leaves of a stable train track map, together with the
/// subdivided map they live on.
#[derive(Clone, Debug)]
pub struct LeafSet {
    pub subdivision: Subdivision,
    pub leaves: Vec<SingularLeaf>,
    pub inp_count: usize,
}

impl LeafSet {
    pub fn map(&self) -> &GraphSelfMap {
        &self.subdivision.map
    }

    /// `reverse(left prefix n) . connector . (right prefix n)`.
    pub fn window(&self, leaf: &SingularLeaf, n: usize) -> Result<EdgePath> {
        leaf_window(self.map(), leaf, n)
    }

    /// The window rewritten on the unsubdivided graph.
    pub fn collapsed_window(&self, leaf: &SingularLeaf, n: usize) -> Result<EdgePath> {
        let w = self.window(leaf, n)?;
        Ok(self.subdivision.collapse_path(&w))
    }
}

pub fn leaf_window(h: &GraphSelfMap, leaf: &SingularLeaf, n: usize) -> Result<EdgePath> {
    let left = leaf.left.prefix(h, n)?.reverse();
    let right = leaf.right.prefix(h, n)?;
    Ok(match &leaf.connector {
        Connector::Turn(_) => left.concat(&right),
        Connector::Inp { inp, .. } => left.concat(&inp.path).concat(&right),
    })
}

/// Enumerates singular-leaf candidates: pairs of eigenrays at a periodic
/// vertex meeting in a legal unused turn, and pairs of eigenrays attached
/// legally to the two ends of an INP.
pub fn singular_leaves(report: &InpReport) -> Result<LeafSet> {
    let st = stability_check(report);
    if !st.stable {
        return Err(Error::Unstable(st.reason.unwrap_or_default()));
    }
    let h = &report.subdivision.map;
    let gs = GateStructure::compute(h)?;
    let table = TurnTable::compute(h, &gs);
    let ps = PeriodicStructures::compute(h, &gs);
    let rays = ps.eigenrays();
    let mut leaves = BTreeSet::new();
    for (i, r) in rays.iter().enumerate() {
        for s in &rays[i + 1..] {
            if r.base != s.base {
                continue;
            }
            let t = Turn::new(r.eigen_dart, s.eigen_dart);
            if gs.is_legal(t) && !table.is_used(t) {
                leaves.insert(SingularLeaf {
                    left: *r,
                    right: *s,
                    connector: Connector::Turn(t),
                });
            }
        }
    }
    for inp in &report.inps {
        let first = inp.path.first().unwrap();
        let last = inp.path.last().unwrap().reverse();
        for r in rays.iter().filter(|r| r.base == inp.start && !gs.same_gate(r.eigen_dart, first)) {
            for s in rays.iter().filter(|s| s.base == inp.end && !gs.same_gate(s.eigen_dart, last)) {
                leaves.insert(SingularLeaf {
                    left: *r,
                    right: *s,
                    connector: Connector::Inp {
                        inp: inp.clone(),
                        start_used: table.is_used(Turn::new(r.eigen_dart, first)),
                        end_used: table.is_used(Turn::new(s.eigen_dart, last)),
                    },
                });
            }
        }
    }
    Ok(LeafSet {
        subdivision: report.subdivision.clone(),
        leaves: leaves.into_iter().collect(),
        inp_count: report.inps.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowCheck {
    pub reduced: bool,
    pub ilt: usize,
    pub unused_turns: usize,
    /// The only unused turn, if any, sits at the connector (turn type) or at
    /// an end of the INP (INP type).
    pub unused_at_connector: bool,
}

pub fn check_window(h: &GraphSelfMap, leaf: &SingularLeaf, n: usize) -> Result<WindowCheck> {
    let gs = GateStructure::compute(h)?;
    let table = TurnTable::compute(h, &gs);
    let w = leaf_window(h, leaf, n)?;
    let unused: Vec<usize> = w
        .turns()
        .enumerate()
        .filter(|&(_, t)| !table.is_used(t))
        .map(|(i, _)| i + 1)
        .collect();
    let allowed: Vec<usize> = match &leaf.connector {
        Connector::Turn(_) => vec![n],
        Connector::Inp { inp, .. } => vec![n, n + inp.path.len()],
    };
    Ok(WindowCheck {
        reduced: w.is_reduced(),
        ilt: gs.ilt_count(&w),
        unused_turns: unused.len(),
        unused_at_connector: unused.iter().all(|i| allowed.contains(i)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualLanguage {
    pub language: LaminaryLanguage,
    pub bfh_size: usize,
    /// Words contributed only by singular-leaf windows.
    pub added: BTreeSet<EdgePath>,
    pub leaf_count: usize,
}

/// Window-`n` language of the dual lamination: the attracting language of
/// `f_minus` together with the length-`n` factors of singular-leaf windows,
/// all on the graph of `f_minus`.
pub fn dual_language(f_minus: &GraphSelfMap, n: usize, opts: &InpOptions) -> Result<DualLanguage> {
    let bfh = bfh_language(f_minus, n, 1000)?.language;
    let report = detect_inps(f_minus, opts)?;
    let leaves = singular_leaves(&report)?;
    let pieces = max_pieces(&leaves.subdivision);
    let mut added = BTreeSet::new();
    for leaf in &leaves.leaves {
        let w = leaves.collapsed_window(leaf, n * pieces + 1)?;
        for u in factors(&w, n) {
            if !bfh.contains(&u) {
                added.insert(u.reverse());
                added.insert(u);
            }
        }
    }
    let language = LaminaryLanguage::from_words(n, bfh.words().iter().cloned().chain(added.iter().cloned()));
    Ok(DualLanguage {
        language,
        bfh_size: bfh.len(),
        added,
        leaf_count: leaves.leaves.len(),
    })
}

fn max_pieces(sub: &Subdivision) -> usize {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &sub.pieces {
        *count.entry(p.original).or_insert(0) += 1;
    }
    count.values().copied().max().unwrap_or(1)
}

/// Singular-leaf windows of `f_minus` collapsed to its graph, for every leaf.
pub fn dual_windows(f_minus: &GraphSelfMap, n: usize, opts: &InpOptions) -> Result<Vec<EdgePath>> {
    let report = detect_inps(f_minus, opts)?;
    let leaves = singular_leaves(&report)?;
    let pieces = max_pieces(&leaves.subdivision);
    leaves
        .leaves
        .iter()
        .map(|leaf| leaves.collapsed_window(leaf, n * pieces))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchPointClass {
    /// `(vertex, eigen dart)` for every eigenray in the class.
    pub rays: Vec<(usize, Dart)>,
    pub degree: usize,
    pub inp_merged: bool,
}

/// Eigenray classes at periodic vertices, with the classes at the two ends
/// of each INP merged; folding the INP identifies the two rays that extend
/// its branches, so a merged class loses one from the sum of its degrees.
pub fn branch_point_classes(report: &InpReport) -> Result<Vec<BranchPointClass>> {
    let st = stability_check(report);
    if !st.stable {
        return Err(Error::Unstable(st.reason.unwrap_or_default()));
    }
    let h = &report.subdivision.map;
    let eq = eigenray_equivalence(h)?;
    let mut classes: Vec<BranchPointClass> = eq
        .vertices
        .iter()
        .flat_map(|v| {
            v.classes.iter().map(move |c| BranchPointClass {
                rays: c.iter().map(|&d| (v.vertex, d)).collect(),
                degree: c.len(),
                inp_merged: false,
            })
        })
        .collect();
    let gs = GateStructure::compute(h)?;
    for inp in &report.inps {
        let first = inp.path.first().unwrap();
        let last = inp.path.last().unwrap().reverse();
        let find = |classes: &[BranchPointClass], v: usize, d: Dart| {
            classes
                .iter()
                .position(|c| c.rays.iter().any(|&(w, e)| w == v && gs.same_gate(e, d)))
        };
        let (Some(i), Some(j)) = (find(&classes, inp.start, first), find(&classes, inp.end, last)) else {
            continue;
        };
        if i == j {
            continue;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let b = classes.remove(hi);
        let a = &mut classes[lo];
        a.rays.extend(b.rays);
        a.rays.sort();
        a.degree = a.degree + b.degree - 1;
        a.inp_merged = true;
    }
    classes.retain(|c| c.degree >= 3);
    classes.sort_by(|a, b| a.rays.cmp(&b.rays));
    Ok(classes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IllegalityProfile {
    pub words: usize,
    /// Longest legal subpath over all words, in darts.
    pub max_legal: usize,
    pub histogram: BTreeMap<usize, usize>,
}

/// Longest `f_plus`-legal subpath of each word. The words must live on the
/// graph of `f_plus`.
pub fn illegality_profile<'a, I>(f_plus: &GraphSelfMap, words: I) -> Result<IllegalityProfile>
where
    I: IntoIterator<Item = &'a EdgePath>,
{
    let gs = GateStructure::compute(f_plus)?;
    let g = f_plus.graph();
    let mut histogram = BTreeMap::new();
    let mut max_legal = 0;
    let mut count = 0;
    for w in words {
        if EdgePath::new(g, w.darts().to_vec()).is_err() {
            return Err(Error::IncompatibleGraphs(
                "word is not a path in the graph of the map".into(),
            ));
        }
        let run = gs.max_legal_run(w);
        *histogram.entry(run).or_insert(0) += 1;
        max_legal = max_legal.max(run);
        count += 1;
    }
    Ok(IllegalityProfile {
        words: count,
        max_legal,
        histogram,
    })
}

/// Both maps must be drawn on the same graph with the same names.
pub fn require_shared_graph(a: &GraphSelfMap, b: &GraphSelfMap) -> Result<()> {
    if a.graph().same_shape(b.graph()) {
        Ok(())
    } else {
        Err(Error::IncompatibleGraphs(
            "maps are not defined on a common graph".into(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionSeries {
    pub chop: usize,
    /// ILT of the input followed by the ILT after each step.
    pub ilt: Vec<usize>,
    pub lengths: Vec<usize>,
    /// True if chopping erased the whole word before all steps ran. The
    /// series then ends with the empty path, which has ILT 0.
    pub exhausted: bool,
}

impl ContractionSeries {
    pub fn is_non_increasing(&self) -> bool {
        self.ilt.windows(2).all(|w| w[1] <= w[0])
    }

    /// First step at which the ILT is at most `k`.
    pub fn first_at_most(&self, k: usize) -> Option<usize> {
        self.ilt.iter().position(|&x| x <= k)
    }

    /// `ILT(i + s) / ILT(i)` for consecutive blocks of `s` steps, while the
    /// ILT is positive.
    pub fn block_ratios(&self, s: usize) -> Vec<f64> {
        (0..self.ilt.len())
            .step_by(s.max(1))
            .filter(|&i| i + s < self.ilt.len() && self.ilt[i] > 0)
            .map(|i| self.ilt[i + s] as f64 / self.ilt[i] as f64)
            .collect()
    }
}

/// Applies `f_plus`, reduces, and erases `chop` darts from each end, for
/// `steps` rounds, recording the number of illegal turns.
pub fn ilt_contraction(f_plus: &GraphSelfMap, word: &EdgePath, steps: usize, chop: usize) -> Result<ContractionSeries> {
    let gs = GateStructure::compute(f_plus)?;
    if word.len() <= 2 * chop {
        return Err(Error::WordTooShort {
            len: word.len(),
            chop,
        });
    }
    let mut w = word.reduce();
    let mut ilt = vec![gs.ilt_count(&w)];
    let mut lengths = vec![w.len()];
    let mut exhausted = false;
    for _ in 0..steps {
        let img = f_plus.apply_reduced(&w);
        if img.len() <= 2 * chop {
            // both boundary subpaths overlap: nothing is left
            ilt.push(0);
            lengths.push(0);
            exhausted = true;
            break;
        }
        w = img.subpath(chop, img.len() - chop);
        ilt.push(gs.ilt_count(&w));
        lengths.push(w.len());
    }
    Ok(ContractionSeries {
        chop,
        ilt,
        lengths,
        exhausted,
    })
}

/// Smallest `s` with every `f^s(e)` longer than `c` darts.
pub fn contraction_block(f: &GraphSelfMap, c: u64, cap: usize) -> Option<usize> {
    let mut images: Vec<EdgePath> = f.graph().edges().map(EdgePath::single).collect();
    for s in 1..=cap {
        for p in images.iter_mut() {
            *p = f.apply_reduced(p);
        }
        if images.iter().all(|p| p.len() as u64 > c) {
            return Some(s);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose_map(petals: &[&str], images: &[&str]) -> GraphSelfMap {
        let g = Graph::rose(petals);
        let imgs = images.iter().map(|s| g.parse_path(s).unwrap()).collect();
        GraphSelfMap::new(g, imgs).unwrap()
    }

    fn tribonacci() -> GraphSelfMap {
        rose_map(&["a", "b", "c"], &["b", "c", "a b"])
    }

    fn tribonacci_inv() -> GraphSelfMap {
        rose_map(&["a", "b", "c"], &["c a~", "a", "b"])
    }

    fn fibonacci() -> GraphSelfMap {
        rose_map(&["a", "b"], &["a b", "a"])
    }

    #[test]
    fn fibonacci_window_two() {
        let f = fibonacci();
        let lang = bfh_language(&f, 2, 100).unwrap().language;
        let mut words = lang.display(f.graph());
        words.sort();
        assert_eq!(words, vec!["a a", "a b", "a~ a~", "a~ b~", "b a", "b~ a~"]);
        assert!(lang.is_flip_closed());
    }

    #[test]
    fn window_one_is_every_dart() {
        let f = tribonacci();
        assert_eq!(bfh_language(&f, 1, 100).unwrap().language.len(), 6);
    }

    #[test]
    fn recurrence() {
        let r = uniform_recurrence_check(&fibonacci(), 2, 25).unwrap();
        assert!(r.witness <= 25);
        assert!(uniform_recurrence_check(&tribonacci(), 3, 25).is_ok());
        // m = 1: first t with f^t(e) crossing every edge, i.e. M^t > 0
        assert_eq!(uniform_recurrence_check(&fibonacci(), 1, 25).unwrap().witness, 2);
    }

    #[test]
    fn tribonacci_single_class() {
        let f = tribonacci();
        let eq = eigenray_equivalence(&f).unwrap();
        assert_eq!(eq.vertices.len(), 1);
        assert_eq!(eq.vertices[0].eigen_darts.len(), 5);
        assert_eq!(eq.class_count, 1);
        assert!(eq.not_iwip.is_none());
        assert_eq!(eigenray_equivalence(&tribonacci_inv()).unwrap().class_count, 1);
    }

    #[test]
    fn reducible_map_has_two_classes() {
        let f = rose_map(&["a", "b", "c"], &["b", "a b", "c a"]);
        let eq = eigenray_equivalence(&f).unwrap();
        assert_eq!(eq.class_count, 2);
        assert!(eq.not_iwip.unwrap().starts_with("NOT iwip"));
    }

    #[test]
    fn tribonacci_turn_leaves() {
        let f = tribonacci();
        let report = detect_inps(&f, &InpOptions::default()).unwrap();
        let set = singular_leaves(&report).unwrap();
        let g = f.graph();
        let turns: Vec<String> = set
            .leaves
            .iter()
            .map(|l| match &l.connector {
                Connector::Turn(t) => t.display(g),
                _ => panic!("unexpected INP leaf"),
            })
            .collect();
        assert_eq!(turns.len(), 4);
        for n in [1, 4, 8] {
            for leaf in &set.leaves {
                let c = check_window(set.map(), leaf, n).unwrap();
                assert!(c.reduced && c.ilt <= 1);
                assert_eq!(c.unused_turns, 1);
                assert!(c.unused_at_connector);
            }
        }
        let ab = set
            .leaves
            .iter()
            .find(|l| g.dart_name(l.left.eigen_dart) == "a" && g.dart_name(l.right.eigen_dart) == "b")
            .unwrap();
        let w = set.window(ab, 4).unwrap();
        assert_eq!(g.format_path(&w.prefix(4)), "c~ b~ b~ a~");
        assert_eq!(g.format_path(&set.window(ab, 1).unwrap()), "a~ b");
    }

    #[test]
    fn unstable_maps_are_refused() {
        let report = detect_inps(&fibonacci(), &InpOptions::default()).unwrap();
        assert!(matches!(singular_leaves(&report), Err(Error::Unstable(_))));
    }

    #[test]
    fn dual_contains_bfh() {
        let f = tribonacci_inv();
        for n in [2, 6] {
            let d = dual_language(&f, n, &InpOptions::default()).unwrap();
            let b = bfh_language(&f, n, 100).unwrap().language;
            assert!(b.is_subset(&d.language));
            assert!(d.language.is_flip_closed());
        }
    }

    #[test]
    fn branch_points_of_inverse() {
        let f = tribonacci_inv();
        let report = detect_inps(&f, &InpOptions::default()).unwrap();
        let classes = branch_point_classes(&report).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].degree, 3);
    }

    #[test]
    fn profiles() {
        let f = tribonacci();
        let g = f.graph();
        let legal = g.parse_path("a b b c").unwrap();
        let p = illegality_profile(&f, [&legal]).unwrap();
        assert_eq!(p.max_legal, 4);
        let other = rose_map(&["x", "y"], &["x y", "x"]);
        assert!(require_shared_graph(&f, &other).is_err());
    }

    #[test]
    fn contraction_series() {
        let f = tribonacci();
        let g = f.graph();
        let legal = g.parse_path("a b b c a b").unwrap();
        let s = ilt_contraction(&f, &legal, 5, 2).unwrap();
        assert!(s.ilt.iter().all(|&x| x == 0));
        assert!(matches!(
            ilt_contraction(&f, &g.parse_path("a b").unwrap(), 3, 1),
            Err(Error::WordTooShort { .. })
        ));
        // a closed INP keeps its single illegal turn
        let fib = fibonacci();
        let eta = fib.graph().parse_path("a~ b~ a b").unwrap();
        let s = ilt_contraction(&fib, &eta, 10, 0).unwrap();
        assert!(s.ilt.iter().all(|&x| x == 1));
    }
}
