#![allow(dead_code)]

use traintrack::{Dart, EdgePath, Graph, GraphSelfMap};
use traintrack_oracles as oracle;

pub fn rose_map(petals: &[&str], images: &[&str]) -> GraphSelfMap {
    let g = Graph::rose(petals);
    let imgs = images.iter().map(|s| g.parse_path(s).unwrap()).collect();
    GraphSelfMap::new(g, imgs).unwrap()
}

pub fn tribonacci() -> GraphSelfMap {
    rose_map(&["a", "b", "c"], &["b", "c", "a b"])
}

pub fn tribonacci_inv() -> GraphSelfMap {
    rose_map(&["a", "b", "c"], &["c a~", "a", "b"])
}

pub fn fibonacci() -> GraphSelfMap {
    rose_map(&["a", "b"], &["a b", "a"])
}

pub fn reducible() -> GraphSelfMap {
    rose_map(&["a", "b", "c"], &["b", "a b", "c a"])
}

pub fn letter(d: Dart) -> i32 {
    let k = d.edge() as i32 + 1;
    if d.is_reversed() {
        -k
    } else {
        k
    }
}

pub fn dart(x: i32) -> Dart {
    Dart::new(x.unsigned_abs() as usize - 1, x < 0)
}

pub fn word(p: &EdgePath) -> oracle::Word {
    p.darts().iter().map(|&d| letter(d)).collect()
}

pub fn path(w: &[i32]) -> EdgePath {
    EdgePath::from_darts_unchecked(w.iter().map(|&x| dart(x)).collect())
}

/// The same map as plain data for the reference implementations.
pub fn to_oracle(f: &GraphSelfMap) -> oracle::Map {
    let g = f.graph();
    oracle::Map {
        origin: g.edges().map(|e| g.origin(e)).collect(),
        terminus: g.edges().map(|e| g.terminus(e)).collect(),
        images: g.edges().map(|e| word(f.image(e))).collect(),
    }
}
