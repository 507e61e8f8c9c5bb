//! Periodic vertices and darts, eigenrays, periodic interior points,
//! subdivision, and detection of periodic indivisible Nielsen paths (INPs).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{is_train_track, GateStructure};
use crate::graph::{Dart, EdgePath, Graph};
use crate::map::GraphSelfMap;
use crate::spectral::{PfData, DEFAULT_TOL};

/// Relative tolerance for locating points by PF coordinate.
const POINT_TOL: f64 = 1e-9;
/// Upper bound on the darts generated for a single ray.
const RAY_DART_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicVertex {
    pub vertex: usize,
    pub period: usize,
    /// One entry per gate at the vertex: its `Df`-periodic dart and period.
    pub eigen_darts: Vec<(Dart, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicStructures {
    pub vertices: Vec<PeriodicVertex>,
    /// All `Df`-periodic darts with their periods, in dart order.
    pub periodic_darts: Vec<(Dart, usize)>,
}

impl PeriodicStructures {
    pub fn compute(f: &GraphSelfMap, gs: &GateStructure) -> PeriodicStructures {
        let g = f.graph();
        let df = f.derivative();
        let periodic_darts = g
            .darts()
            .filter_map(|d| df.period(d).map(|k| (d, k)))
            .collect();
        let vertices = (0..g.vertex_count())
            .filter_map(|v| {
                vertex_period(f, v).map(|period| PeriodicVertex {
                    vertex: v,
                    period,
                    eigen_darts: gs.gates_at(v).filter_map(|gate| gate.eigen).collect(),
                })
            })
            .collect();
        PeriodicStructures {
            vertices,
            periodic_darts,
        }
    }

    pub fn vertex(&self, v: usize) -> Option<&PeriodicVertex> {
        self.vertices.iter().find(|p| p.vertex == v)
    }

    /// Every eigenray at a periodic vertex, ordered by vertex then dart.
    pub fn eigenrays(&self) -> Vec<Eigenray> {
        let mut rays: Vec<Eigenray> = self
            .vertices
            .iter()
            .flat_map(|pv| {
                pv.eigen_darts.iter().map(move |&(d, k)| Eigenray {
                    base: pv.vertex,
                    eigen_dart: d,
                    period: k,
                })
            })
            .collect();
        rays.sort();
        rays
    }
}

fn vertex_period(f: &GraphSelfMap, v: usize) -> Option<usize> {
    let n = f.graph().vertex_count();
    let mut w = f.vertex_image(v);
    for k in 1..=n {
        if w == v {
            return Some(k);
        }
        w = f.vertex_image(w);
    }
    None
}

/// An eigenray: the legal ray fixed by `f^period` that starts with
/// `eigen_dart` at the periodic vertex `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Eigenray {
    pub base: usize,
    pub eigen_dart: Dart,
    pub period: usize,
}

impl Eigenray {
    pub fn prefix(&self, f: &GraphSelfMap, n: usize) -> Result<EdgePath> {
        eigenray_prefix(f, self.eigen_dart, n)
    }
}

/// First `n` darts of the eigenray starting with the `Df`-periodic dart `d`,
/// built as the nested union of `f^(jk)(d)`.
pub fn eigenray_prefix(f: &GraphSelfMap, d: Dart, n: usize) -> Result<EdgePath> {
    let g = f.graph();
    let k = f
        .derivative()
        .period(d)
        .ok_or_else(|| Error::NotPeriodicDart(g.dart_name(d)))?;
    let mut p = EdgePath::single(d);
    while p.len() < n {
        let mut q = p.clone();
        for _ in 0..k {
            q = f.apply_truncated(&q, n);
        }
        if !p.is_prefix_of(&q) {
            return Err(Error::NotTrainTrack {
                edge: g.dart_name(d),
                turn: "eigenray prefix is not preserved".into(),
            });
        }
        if q.len() == p.len() {
            return Err(Error::NotExpanding {
                edge: g.edge_name(d.edge()).to_string(),
            });
        }
        p = q;
    }
    Ok(p.prefix(n))
}

/// A point in the interior of an edge fixed by `f^period`, found as the
/// `index`-th dart of `f^period(e)` being `e` or its reverse.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicPoint {
    pub edge: usize,
    pub period: usize,
    pub index: usize,
    pub reversed: bool,
    /// Distance from the origin of the edge in PF length.
    pub position: f64,
}

/// Interior periodic points of period at most `max_period`, one per distinct
/// location (the smallest period found is kept), sorted by edge and position.
pub fn detect_periodic_interior_points(
    f: &GraphSelfMap,
    pf: &PfData,
    max_period: usize,
) -> Vec<PeriodicPoint> {
    let g = f.graph();
    let mut found: Vec<PeriodicPoint> = Vec::new();
    for e in g.edges() {
        let len = pf.edge_length(e.edge());
        let tol = POINT_TOL * pf.vol_pf;
        let mut path = EdgePath::single(e);
        for t in 1..=max_period {
            path = f.apply_reduced(&path);
            let stretch = pf.pf_length(&path) / len;
            let mut s = 0.0;
            for (i, &d) in path.darts().iter().enumerate() {
                if d.edge() == e.edge() {
                    let x = if d.is_reversed() {
                        (s + len) / (stretch + 1.0)
                    } else {
                        s / (stretch - 1.0)
                    };
                    let interior = x > tol && x < len - tol;
                    let known = found
                        .iter()
                        .any(|p| p.edge == e.edge() && (p.position - x).abs() < tol);
                    if interior && !known {
                        found.push(PeriodicPoint {
                            edge: e.edge(),
                            period: t,
                            index: i,
                            reversed: d.is_reversed(),
                            position: x,
                        });
                    }
                }
                s += pf.edge_length(d.edge());
            }
        }
    }
    found.sort_by(|a, b| {
        a.edge
            .cmp(&b.edge)
            .then(a.position.partial_cmp(&b.position).unwrap())
    });
    found
}

/// One edge of a subdivided graph: the segment `[start, end]` (PF
/// coordinates) of an original edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Piece {
    pub original: usize,
    pub start: f64,
    pub end: f64,
}

/// A map obtained by promoting finitely many periodic points to vertices.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub map: GraphSelfMap,
    pub original: Graph,
    /// Indexed by new edge.
    pub pieces: Vec<Piece>,
    /// New vertex for each promoted point `(edge, position)`.
    pub points: Vec<((usize, f64), usize)>,
}

impl Subdivision {
    pub fn is_trivial(&self) -> bool {
        self.points.is_empty()
    }

    /// `(edge, position)` of a new vertex, `None` for original vertices.
    pub fn point_of_vertex(&self, v: usize) -> Option<(usize, f64)> {
        self.points.iter().find(|(_, w)| *w == v).map(|(p, _)| *p)
    }

    /// Rewrites a path of the subdivided graph on the original graph,
    /// dropping partially traversed edges at either end.
    pub fn collapse_path(&self, p: &EdgePath) -> EdgePath {
        let mut out = Vec::new();
        let darts = p.darts();
        let mut i = 0;
        while i < darts.len() {
            let orig = self.pieces[darts[i].edge()].original;
            let rev = darts[i].is_reversed();
            let mut j = i;
            while j < darts.len()
                && self.pieces[darts[j].edge()].original == orig
                && darts[j].is_reversed() == rev
            {
                j += 1;
                // a full traversal ends at an original vertex
                if self.ends_at_original_vertex(darts[j - 1]) {
                    break;
                }
            }
            let starts_clean = self.starts_at_original_vertex(darts[i]);
            let ends_clean = self.ends_at_original_vertex(darts[j - 1]);
            if starts_clean && ends_clean {
                out.push(Dart::new(orig, rev));
            }
            i = j;
        }
        EdgePath::from_darts_unchecked(out)
    }

    fn starts_at_original_vertex(&self, d: Dart) -> bool {
        self.map.graph().origin(d) < self.original.vertex_count()
    }

    fn ends_at_original_vertex(&self, d: Dart) -> bool {
        self.map.graph().terminus(d) < self.original.vertex_count()
    }

    /// Writes a path of the original graph in subdivided darts.
    pub fn expand_path(&self, p: &EdgePath) -> EdgePath {
        let mut out = Vec::new();
        for &d in p.darts() {
            let mut pieces: Vec<usize> = (0..self.pieces.len())
                .filter(|&i| self.pieces[i].original == d.edge())
                .collect();
            if d.is_reversed() {
                pieces.reverse();
            }
            out.extend(pieces.into_iter().map(|i| Dart::new(i, d.is_reversed())));
        }
        EdgePath::from_darts_unchecked(out)
    }
}

/// Location of a point of the graph: a vertex or an interior point of an edge.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Location {
    Vertex(usize),
    Interior(usize, f64),
}

/// Image of the interior point at `x` on edge `e` under `f`, with positions
/// measured in PF length.
fn image_location(f: &GraphSelfMap, pf: &PfData, e: usize, x: f64) -> Location {
    let g = f.graph();
    let tol = POINT_TOL * pf.vol_pf;
    let img = f.image(Dart::new(e, false));
    let stretch = pf.pf_length(img) / pf.edge_length(e);
    let target = stretch * x;
    let mut s = 0.0;
    for &d in img.darts() {
        let len = pf.edge_length(d.edge());
        if (target - s).abs() < tol {
            return Location::Vertex(g.origin(d));
        }
        if target < s + len - tol {
            let local = target - s;
            let pos = if d.is_reversed() { len - local } else { local };
            return Location::Interior(d.edge(), pos);
        }
        s += len;
    }
    Location::Vertex(g.terminus(img.last().unwrap()))
}

fn point_name(g: &Graph, e: usize, k: usize) -> String {
    format!("{}:{}", g.edge_name(e), k)
}

/// Promotes the given interior points, together with their forward orbits,
/// to vertices and transports the map.
pub fn subdivide_at(f: &GraphSelfMap, pf: &PfData, points: &[(usize, f64)]) -> Result<Subdivision> {
    let g = f.graph();
    let tol = POINT_TOL * pf.vol_pf;
    let mut per_edge: Vec<Vec<f64>> = vec![Vec::new(); g.edge_count()];
    let insert = |per_edge: &mut Vec<Vec<f64>>, e: usize, x: f64| -> bool {
        if per_edge[e].iter().any(|y| (y - x).abs() < tol) {
            false
        } else {
            per_edge[e].push(x);
            true
        }
    };
    let mut queue: Vec<(usize, f64)> = Vec::new();
    for &(e, x) in points {
        if e >= g.edge_count() || x <= tol || x >= pf.edge_length(e) - tol {
            return Err(Error::NonPeriodicPoint {
                edge: g.edge_name(e.min(g.edge_count() - 1)).to_string(),
                position: x,
            });
        }
        if insert(&mut per_edge, e, x) {
            queue.push((e, x));
        }
    }
    // close under f and check periodicity
    let limit = 64 * (points.len() + 1) * g.edge_count();
    while let Some((e, x)) = queue.pop() {
        let mut cur = Location::Interior(e, x);
        let mut returned = false;
        for _ in 0..=limit {
            cur = match cur {
                Location::Interior(e2, x2) => image_location(f, pf, e2, x2),
                Location::Vertex(_) => break,
            };
            match cur {
                Location::Interior(e2, x2) if e2 == e && (x2 - x).abs() < tol => {
                    returned = true;
                    break;
                }
                Location::Interior(e2, x2) => {
                    if insert(&mut per_edge, e2, x2) {
                        queue.push((e2, x2));
                    }
                }
                Location::Vertex(_) => {}
            }
        }
        if !returned {
            return Err(Error::NonPeriodicPoint {
                edge: g.edge_name(e).to_string(),
                position: x,
            });
        }
    }
    for v in per_edge.iter_mut() {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }

    // new vertices and edges
    let mut vertex_names: Vec<String> = g.vertex_names().to_vec();
    let mut point_vertices: Vec<((usize, f64), usize)> = Vec::new();
    let mut pieces: Vec<Piece> = Vec::new();
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    let mut pieces_of: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for e in 0..g.edge_count() {
        let d = Dart::new(e, false);
        let xs = &per_edge[e];
        let mut prev_vertex = g.origin(d);
        let mut prev_pos = 0.0;
        for (k, &x) in xs.iter().enumerate() {
            let v = vertex_names.len();
            vertex_names.push(point_name(g, e, k + 1));
            point_vertices.push(((e, x), v));
            pieces_of[e].push(edges.len());
            edges.push((format!("{}.{}", g.edge_name(e), k + 1), prev_vertex, v));
            pieces.push(Piece {
                original: e,
                start: prev_pos,
                end: x,
            });
            prev_vertex = v;
            prev_pos = x;
        }
        let name = if xs.is_empty() {
            g.edge_name(e).to_string()
        } else {
            format!("{}.{}", g.edge_name(e), xs.len() + 1)
        };
        pieces_of[e].push(edges.len());
        edges.push((name, prev_vertex, g.terminus(d)));
        pieces.push(Piece {
            original: e,
            start: prev_pos,
            end: pf.edge_length(e),
        });
    }
    let new_graph = Graph::new(vertex_names, edges)?;

    // transport images
    let mut images = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        let e = piece.original;
        let img = f.image(Dart::new(e, false));
        let stretch = pf.pf_length(img) / pf.edge_length(e);
        let (lo, hi) = (stretch * piece.start, stretch * piece.end);
        let mut out = Vec::new();
        let mut s = 0.0;
        for &d in img.darts() {
            let len = pf.edge_length(d.edge());
            let a = lo.max(s);
            let b = hi.min(s + len);
            if b - a > tol {
                let (ea, eb) = if d.is_reversed() {
                    (s + len - b, s + len - a)
                } else {
                    (a - s, b - s)
                };
                let mut covered: Vec<usize> = Vec::new();
                for &pi in &pieces_of[d.edge()] {
                    let p = &pieces[pi];
                    if p.end <= ea + tol || p.start >= eb - tol {
                        continue;
                    }
                    if p.start < ea - tol || p.end > eb + tol {
                        return Err(Error::Subdivision(format!(
                            "image of piece {} of `{}` cuts `{}` at an unmarked point",
                            pieces_of[e].iter().position(|&q| pieces[q].start == piece.start).unwrap_or(0) + 1,
                            g.edge_name(e),
                            g.edge_name(d.edge())
                        )));
                    }
                    covered.push(pi);
                }
                if d.is_reversed() {
                    covered.reverse();
                }
                out.extend(covered.into_iter().map(|pi| Dart::new(pi, d.is_reversed())));
            }
            s += len;
        }
        images.push(EdgePath::new(&new_graph, out)?);
    }
    let map = GraphSelfMap::new(new_graph, images)?;
    Ok(Subdivision {
        map,
        original: g.clone(),
        pieces,
        points: point_vertices,
    })
}

/// A periodic indivisible Nielsen path `eta = gamma' . reverse(gamma)` with
/// its single illegal turn (the tip) between darts `tip_index - 1` and
/// `tip_index`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Inp {
    pub path: EdgePath,
    pub period: usize,
    pub tip_index: usize,
    pub start: usize,
    pub end: usize,
}

impl Inp {
    /// `gamma'`: the maximal legal initial subpath.
    pub fn first_branch(&self) -> EdgePath {
        self.path.prefix(self.tip_index)
    }

    /// `gamma`: the maximal legal initial subpath of the reversed path.
    pub fn second_branch(&self) -> EdgePath {
        self.path.subpath(self.tip_index, self.path.len()).reverse()
    }

    pub fn branch_lengths(&self) -> (usize, usize) {
        (self.tip_index, self.path.len() - self.tip_index)
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }

    fn canonical(self, g: &Graph) -> Inp {
        let rev = self.path.reverse();
        if rev < self.path {
            Inp {
                tip_index: self.path.len() - self.tip_index,
                path: rev,
                period: self.period,
                start: self.end,
                end: self.start,
            }
        } else {
            let _ = g;
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InpOptions {
    pub max_period: usize,
    /// Bound on the PF length of an INP branch; `None` uses
    /// `4 * bbt * lambda / (lambda - 1)`.
    pub max_pf_len: Option<f64>,
}

impl Default for InpOptions {
    fn default() -> Self {
        InpOptions {
            max_period: 6,
            max_pf_len: None,
        }
    }
}

/// Default branch bound: `[f^t(eta)] = eta` forces
/// `lambda L(branch) - L(branch) <= 2 bbt`, doubled for safety.
pub fn default_max_pf_len(pf: &PfData) -> f64 {
    2.0 * (2.0 * pf.bbt_bound * pf.lambda / (pf.lambda - 1.0))
}

#[derive(Clone, Debug)]
pub struct InpReport {
    /// The input map subdivided at the endpoints of its INPs.
    pub subdivision: Subdivision,
    pub inps: Vec<Inp>,
    /// INPs found on the map subdivided at all periodic points of period at
    /// most `max_period`.
    pub full_inps: Vec<Inp>,
    pub full_subdivision: Subdivision,
    pub periodic_points: Vec<PeriodicPoint>,
    pub max_pf_len: f64,
    pub candidates: usize,
}

/// Finds the INPs of a train track map.
///
/// The map is first subdivided at every interior periodic point of period at
/// most `max_period`. INPs are the coincidences of pairs of eigenrays after
/// finite initial segments, each verified exactly. The result is reported on
/// the map subdivided only at the INP endpoints.
pub fn detect_inps(f: &GraphSelfMap, opts: &InpOptions) -> Result<InpReport> {
    let gs = GateStructure::compute(f)?;
    let tt = is_train_track(f, &gs);
    if !tt.train_track {
        let (edge, turn) = tt.witness.unwrap();
        return Err(Error::NotTrainTrack { edge, turn });
    }
    let pf = PfData::compute(f, DEFAULT_TOL)?;
    let max_pf_len = opts.max_pf_len.unwrap_or_else(|| default_max_pf_len(&pf));
    let periodic_points = detect_periodic_interior_points(f, &pf, opts.max_period);
    let pts: Vec<(usize, f64)> = periodic_points.iter().map(|p| (p.edge, p.position)).collect();
    let full = subdivide_at(f, &pf, &pts)?;
    let (full_inps, candidates) = find_inps_on(&full.map, opts.max_period, max_pf_len)?;

    let mut endpoints: Vec<(usize, f64)> = Vec::new();
    for inp in &full_inps {
        for v in [inp.start, inp.end] {
            if let Some(p) = full.point_of_vertex(v) {
                endpoints.push(p);
            }
        }
    }
    let minimal = subdivide_at(f, &pf, &endpoints)?;
    let (inps, _) = if minimal.is_trivial() {
        find_inps_on(f, opts.max_period, max_pf_len)?
    } else {
        find_inps_on(&minimal.map, opts.max_period, max_pf_len)?
    };
    if inps.len() != full_inps.len() {
        return Err(Error::Inconclusive(format!(
            "{} INPs on the fully subdivided map but {} after minimal subdivision",
            full_inps.len(),
            inps.len()
        )));
    }
    Ok(InpReport {
        subdivision: minimal,
        inps,
        full_inps,
        full_subdivision: full,
        periodic_points,
        max_pf_len,
        candidates,
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Eigenray-coincidence INP search on `h` without further subdivision.
/// Returns the INPs in canonical order and the number of candidates tested.
pub fn find_inps_on(h: &GraphSelfMap, max_period: usize, max_pf_len: f64) -> Result<(Vec<Inp>, usize)> {
    let g = h.graph();
    let gs = GateStructure::compute(h)?;
    let pf = PfData::compute(h, DEFAULT_TOL)?;
    let ps = PeriodicStructures::compute(h, &gs);
    // an INP of period t has both endpoint eigenrays fixed by f^t
    let rays: Vec<Eigenray> = ps
        .eigenrays()
        .into_iter()
        .filter(|r| r.period <= max_period)
        .collect();

    // prefixes long enough to hold a branch plus a comparison window
    let mut prefixes: Vec<EdgePath> = Vec::with_capacity(rays.len());
    let mut offsets: Vec<usize> = Vec::with_capacity(rays.len());
    for ray in &rays {
        let mut n = 64;
        let p = loop {
            let p = ray.prefix(h, n)?;
            if pf.pf_length(&p) >= 3.0 * max_pf_len {
                break p;
            }
            n *= 2;
            if n > RAY_DART_CAP {
                return Err(Error::Inconclusive(format!(
                    "eigenray from `{}` needs more than {RAY_DART_CAP} darts",
                    g.dart_name(ray.eigen_dart)
                )));
            }
        };
        let mut acc = 0.0;
        let mut max_i = 0;
        for (i, &d) in p.darts().iter().enumerate() {
            acc += pf.edge_length(d.edge());
            if acc > max_pf_len {
                break;
            }
            max_i = i + 1;
        }
        offsets.push(max_i);
        prefixes.push(p);
    }
    let window = prefixes
        .iter()
        .zip(&offsets)
        .map(|(p, &i)| p.len() - i)
        .min()
        .unwrap_or(0);

    let mut buckets: HashMap<&[Dart], Vec<(usize, usize)>> = HashMap::new();
    for (r, p) in prefixes.iter().enumerate() {
        for i in 0..=offsets[r] {
            buckets
                .entry(&p.darts()[i..i + window])
                .or_default()
                .push((r, i));
        }
    }
    let mut candidates: BTreeSet<(usize, usize, usize, usize)> = BTreeSet::new();
    for entries in buckets.values() {
        for (x, &(r, i)) in entries.iter().enumerate() {
            for &(s, j) in &entries[x + 1..] {
                if r == s {
                    continue;
                }
                let (pr, ps_) = (prefixes[r].darts(), prefixes[s].darts());
                let (mut i, mut j) = (i, j);
                while i > 0 && j > 0 && pr[i - 1] == ps_[j - 1] {
                    i -= 1;
                    j -= 1;
                }
                if i == 0 || j == 0 {
                    continue;
                }
                let key = if r < s { (r, i, s, j) } else { (s, j, r, i) };
                candidates.insert(key);
            }
        }
    }

    let mut inps: BTreeSet<Inp> = BTreeSet::new();
    for &(r, i, s, j) in &candidates {
        let eta = prefixes[r].prefix(i).concat(&prefixes[s].prefix(j).reverse());
        if !eta.is_reduced() || gs.ilt_count(&eta) != 1 {
            continue;
        }
        let step = rays[r].period / gcd(rays[r].period, rays[s].period) * rays[s].period;
        if step > max_period {
            continue;
        }
        let mut t = step;
        while t <= max_period {
            if is_periodic_nielsen(h, &eta, t) {
                inps.insert(
                    Inp {
                        tip_index: i,
                        start: rays[r].base,
                        end: rays[s].base,
                        path: eta.clone(),
                        period: t,
                    }
                    .canonical(g),
                );
                break;
            }
            t += step;
        }
    }
    Ok((inps.into_iter().collect(), candidates.len()))
}

/// `[f^t(eta)] = eta`, giving up once intermediate lengths explode.
pub fn is_periodic_nielsen(f: &GraphSelfMap, eta: &EdgePath, t: usize) -> bool {
    let cap = 16 * eta.len() + 64;
    let mut cur = eta.clone();
    for _ in 0..t {
        cur = f.apply_reduced(&cur);
        if cur.len() > cap {
            return false;
        }
    }
    &cur == eta
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub inp_count: usize,
    pub closed_inp: bool,
    pub reason: Option<String>,
}

/// At most one INP, and if there is one its endpoints are distinct.
pub fn stability_check(report: &InpReport) -> StabilityReport {
    let n = report.inps.len();
    let closed = report.inps.iter().any(Inp::is_closed);
    let reason = if n > 1 {
        Some(format!("{n} INPs: map is not stable"))
    } else if closed {
        Some("closed INP: surface-type automorphism".to_string())
    } else {
        None
    };
    StabilityReport {
        stable: reason.is_none(),
        inp_count: n,
        closed_inp: closed,
        reason,
    }
}

/// Groups the darts of `p` that lie on each original edge (diagnostics).
pub fn edge_occurrences(p: &EdgePath) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for d in p.darts() {
        *m.entry(d.edge()).or_insert(0) += 1;
    }
    m
}
