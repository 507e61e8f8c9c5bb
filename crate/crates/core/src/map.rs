//! Combinatorial self-maps of graphs: vertices go to vertices, darts go to
//! nonempty edge paths.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{reduce_darts, Dart, EdgePath, Graph, Turn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSelfMap {
    graph: Graph,
    vertex_image: Vec<usize>,
    /// Indexed by dart. Only the canonical images are supplied by callers; the
    /// reversed ones are derived at construction.
    images: Vec<EdgePath>,
}

impl GraphSelfMap {
    /// Builds the map from the images of the canonical darts, inferring the
    /// vertex map and checking endpoint coherence.
    pub fn new(graph: Graph, edge_images: Vec<EdgePath>) -> Result<GraphSelfMap> {
        assert_eq!(graph.edge_count(), edge_images.len(), "one image per edge");
        let mut vertex_image: Vec<Option<usize>> = vec![None; graph.vertex_count()];
        let mut images = Vec::with_capacity(graph.dart_count());
        for (e, img) in edge_images.into_iter().enumerate() {
            let name = graph.edge_name(e).to_string();
            if img.is_empty() {
                return Err(Error::EmptyImage { edge: name });
            }
            let img = EdgePath::new(&graph, img.into_darts()).map_err(|err| Error::Incoherent {
                edge: name.clone(),
                reason: err.to_string(),
            })?;
            let d = Dart::new(e, false);
            let ends = [
                (graph.origin(d), graph.origin(img.first().unwrap())),
                (graph.terminus(d), graph.terminus(img.last().unwrap())),
            ];
            for (v, w) in ends {
                match vertex_image[v] {
                    None => vertex_image[v] = Some(w),
                    Some(prev) if prev != w => {
                        return Err(Error::Incoherent {
                            edge: name,
                            reason: format!(
                                "vertex {} is sent to both {} and {}",
                                graph.vertex_name(v),
                                graph.vertex_name(prev),
                                graph.vertex_name(w)
                            ),
                        })
                    }
                    Some(_) => {}
                }
            }
            let rev = img.reverse();
            images.push(img);
            images.push(rev);
        }
        // isolated vertices are excluded by validation; map them to themselves
        let vertex_image = vertex_image
            .into_iter()
            .enumerate()
            .map(|(v, w)| w.unwrap_or(v))
            .collect();
        Ok(GraphSelfMap {
            graph,
            vertex_image,
            images,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.vertex_image[v]
    }

    pub fn image(&self, d: Dart) -> &EdgePath {
        &self.images[d.index()]
    }

    /// Canonical edge images in edge order.
    pub fn edge_images(&self) -> Vec<&EdgePath> {
        self.graph.edges().map(|d| self.image(d)).collect()
    }

    /// Concatenation of dart images, not reduced.
    pub fn apply(&self, p: &EdgePath) -> EdgePath {
        let mut out = Vec::new();
        for &d in p.darts() {
            out.extend_from_slice(self.image(d).darts());
        }
        EdgePath::from_darts_unchecked(out)
    }

    /// `[f(p)]`.
    pub fn apply_reduced(&self, p: &EdgePath) -> EdgePath {
        EdgePath::from_darts_unchecked(reduce_darts(
            p.darts().iter().flat_map(|&d| self.image(d).darts().iter().copied()),
        ))
    }

    /// First `n` darts of `f(p)`, unreduced.
    pub fn apply_truncated(&self, p: &EdgePath, n: usize) -> EdgePath {
        let mut out = Vec::with_capacity(n);
        'outer: for &d in p.darts() {
            for &x in self.image(d).darts() {
                if out.len() == n {
                    break 'outer;
                }
                out.push(x);
            }
        }
        EdgePath::from_darts_unchecked(out)
    }

    /// `[f^t(p)]`, reducing after every application.
    pub fn iterate_reduced(&self, p: &EdgePath, t: usize) -> EdgePath {
        let mut cur = p.reduce();
        for _ in 0..t {
            cur = self.apply_reduced(&cur);
        }
        cur
    }

    pub fn derivative(&self) -> DerivativeMap {
        DerivativeMap {
            table: self
                .graph
                .darts()
                .map(|d| self.image(d).first().expect("images are nonempty"))
                .collect(),
        }
    }

    /// Every edge must reach simplicial length at least 2 under some iterate
    /// `t <= dart count`; past that bound a single-dart orbit has cycled.
    pub fn is_expanding(&self) -> Expansion {
        let bound = self.graph.dart_count();
        for e in self.graph.edges() {
            let mut cur = EdgePath::single(e);
            let mut grew = None;
            for t in 1..=bound {
                cur = self.apply_reduced(&cur);
                if cur.len() >= 2 {
                    grew = Some(t);
                    break;
                }
            }
            if grew.is_none() {
                return Expansion {
                    expanding: false,
                    witness: Some(self.graph.edge_name(e.edge()).to_string()),
                };
            }
        }
        Expansion {
            expanding: true,
            witness: None,
        }
    }

    /// Longest cancellation produced by a single application of the map to
    /// a reduced path: twice the longest common prefix of the images of two
    /// distinct darts with a common origin.
    pub fn cancellation_bound(&self) -> usize {
        Turn::all_nondegenerate(&self.graph)
            .into_iter()
            .map(|t| {
                let (a, b) = t.darts();
                2 * common_prefix(self.image(a).darts(), self.image(b).darts())
            })
            .max()
            .unwrap_or(0)
    }

    /// The map `x -> [self(other(x))]` on the shared graph.
    pub fn compose(&self, other: &GraphSelfMap) -> Result<GraphSelfMap> {
        if !self.graph.same_shape(&other.graph) {
            return Err(Error::IncompatibleGraphs(
                "composition requires a common graph".into(),
            ));
        }
        let images = self
            .graph
            .edges()
            .map(|e| self.apply_reduced(other.image(e)))
            .collect();
        GraphSelfMap::new(self.graph.clone(), images)
    }

    /// True iff every edge is sent to itself.
    pub fn is_identity(&self) -> bool {
        self.graph
            .edges()
            .all(|e| self.image(e).darts() == [e])
    }
}

fn common_prefix(a: &[Dart], b: &[Dart]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub expanding: bool,
    pub witness: Option<String>,
}

/// `Df`: each dart goes to the first dart of its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeMap {
    table: Vec<Dart>,
}

impl DerivativeMap {
    pub fn apply(&self, d: Dart) -> Dart {
        self.table[d.index()]
    }

    pub fn power(&self, mut d: Dart, t: usize) -> Dart {
        for _ in 0..t {
            d = self.apply(d);
        }
        d
    }

    /// `D²f` on turns.
    pub fn turn_image(&self, t: Turn) -> Turn {
        let (a, b) = t.darts();
        Turn::new(self.apply(a), self.apply(b))
    }

    /// Period of `d` if it lies on a cycle of `Df`.
    pub fn period(&self, d: Dart) -> Option<usize> {
        let n = self.table.len();
        let mut x = self.apply(d);
        for k in 1..=n {
            if x == d {
                return Some(k);
            }
            x = self.apply(x);
        }
        None
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}
