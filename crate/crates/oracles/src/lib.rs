//! Slow, direct reference computations used as test oracles.
//!
//! Words are sequences of nonzero `i32`: `k > 0` is edge `k - 1` traversed
//! forwards and `-k` the same edge backwards. Nothing here depends on the
//! main crate.

use std::collections::{BTreeSet, HashSet};

pub type Word = Vec<i32>;

/// A graph self-map given by edge endpoints and edge images.
#[derive(Clone, Debug)]
pub struct Map {
    pub origin: Vec<usize>,
    pub terminus: Vec<usize>,
    pub images: Vec<Word>,
}

impl Map {
    pub fn rose(images: Vec<Word>) -> Map {
        let n = images.len();
        Map {
            origin: vec![0; n],
            terminus: vec![0; n],
            images,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.images.len()
    }

    pub fn letters(&self) -> Vec<i32> {
        let n = self.edge_count() as i32;
        (1..=n).flat_map(|k| [k, -k]).collect()
    }

    pub fn start(&self, x: i32) -> usize {
        let e = x.unsigned_abs() as usize - 1;
        if x > 0 {
            self.origin[e]
        } else {
            self.terminus[e]
        }
    }

    pub fn end(&self, x: i32) -> usize {
        self.start(-x)
    }

    pub fn image(&self, x: i32) -> Word {
        let e = x.unsigned_abs() as usize - 1;
        if x > 0 {
            self.images[e].clone()
        } else {
            inverse(&self.images[e])
        }
    }

    pub fn apply(&self, w: &[i32]) -> Word {
        free_reduce(&w.iter().flat_map(|&x| self.image(x)).collect::<Word>())
    }

    pub fn iterate(&self, w: &[i32], t: usize) -> Word {
        let mut cur = free_reduce(w);
        for _ in 0..t {
            cur = self.apply(&cur);
        }
        cur
    }
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

/// Repeatedly deletes adjacent inverse pairs until none is left.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut cur: Word = w.to_vec();
    loop {
        let pos = cur.windows(2).position(|p| p[0] == -p[1]);
        match pos {
            Some(i) => {
                cur.drain(i..i + 2);
            }
            None => return cur,
        }
    }
}

pub fn is_reduced(w: &[i32]) -> bool {
    w.windows(2).all(|p| p[0] != -p[1])
}

/// First letter of the image.
pub fn df(f: &Map, x: i32) -> i32 {
    f.image(x)[0]
}

fn df_power(f: &Map, mut x: i32, t: usize) -> i32 {
    for _ in 0..t {
        x = df(f, x);
    }
    x
}

/// Two letters with a common start are in the same gate iff some power of
/// `Df` identifies them. Powers beyond the number of letters add nothing.
pub fn same_gate(f: &Map, x: i32, y: i32) -> bool {
    if f.start(x) != f.start(y) {
        return false;
    }
    let bound = 2 * f.edge_count();
    (0..=bound).any(|t| df_power(f, x, t) == df_power(f, y, t))
}

/// Gates as sorted letter sets, sorted.
pub fn gates(f: &Map) -> Vec<Vec<i32>> {
    let mut out: Vec<Vec<i32>> = Vec::new();
    for x in f.letters() {
        if let Some(g) = out.iter_mut().find(|g| same_gate(f, g[0], x)) {
            g.push(x);
        } else {
            out.push(vec![x]);
        }
    }
    for g in out.iter_mut() {
        g.sort();
    }
    out.sort();
    out
}

/// A path `... x y ...` crosses the turn `{-x, y}`.
pub fn turn_of(x: i32, y: i32) -> (i32, i32) {
    let (a, b) = (-x, y);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn illegal_turns(f: &Map, w: &[i32]) -> usize {
    w.windows(2)
        .filter(|p| {
            let (a, b) = turn_of(p[0], p[1]);
            same_gate(f, a, b)
        })
        .count()
}

/// Longest run of darts without an illegal turn.
pub fn longest_legal_run(f: &Map, w: &[i32]) -> usize {
    if w.is_empty() {
        return 0;
    }
    let mut best = 1;
    let mut cur = 1;
    for p in w.windows(2) {
        let (a, b) = turn_of(p[0], p[1]);
        if same_gate(f, a, b) {
            cur = 1;
        } else {
            cur += 1;
        }
        best = best.max(cur);
    }
    best
}

/// Turns crossed by `f^t(e)` for some edge and `t >= 1`. The union is taken
/// until it has not changed for as many consecutive iterates as there are
/// turns.
pub fn used_turns(f: &Map) -> BTreeSet<(i32, i32)> {
    let letters = f.letters().len();
    let patience = letters * letters;
    let mut used = BTreeSet::new();
    let mut words: Vec<Word> = (1..=f.edge_count() as i32).map(|e| vec![e]).collect();
    let mut quiet = 0;
    while quiet < patience {
        let before = used.len();
        for w in words.iter_mut() {
            *w = f.apply(w);
            for p in w.windows(2) {
                used.insert(turn_of(p[0], p[1]));
            }
            if w.len() > 200_000 {
                // a prefix of f^t(e) maps onto a prefix of f^(t+1)(e)
                w.truncate(200_000);
            }
        }
        if used.len() == before {
            quiet += 1;
        } else {
            quiet = 0;
        }
    }
    used
}

/// Length-`n` factors of `f^t(e)`, `t <= t_max`, all edges, with reversals.
pub fn bfh_factors(f: &Map, n: usize, t_max: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for e in 1..=f.edge_count() as i32 {
        let mut w = vec![e];
        for _ in 0..=t_max {
            for win in w.windows(n) {
                out.insert(win.to_vec());
                out.insert(inverse(win));
            }
            w = f.apply(&w);
        }
    }
    out
}

/// A root of the polynomial (constant term first) in `[lo, hi]`, assuming a
/// sign change.
pub fn bisect_root(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let p = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let sign_lo = p(lo) < 0.0;
    assert_ne!(sign_lo, p(hi) < 0.0, "no sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (p(mid) < 0.0) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All reduced edge paths of length `1..=max_len`.
pub fn reduced_paths(f: &Map, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<Word> = f.letters().into_iter().map(|x| vec![x]).collect();
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            let last = *w.last().unwrap();
            for x in f.letters() {
                if x != -last && f.start(x) == f.end(last) {
                    let mut v = w.clone();
                    v.push(x);
                    stack.push(v);
                }
            }
        }
        out.push(w);
    }
    out
}

/// Exhaustive INP search: reduced paths of length at most `max_len` with one
/// illegal turn and `[f^t(w)] = w` for some `1 <= t <= max_period`. Each INP
/// is reported once, as the smaller of itself and its inverse.
pub fn brute_force_inps(f: &Map, max_len: usize, max_period: usize) -> BTreeSet<Word> {
    let partition = gates(f);
    let gate = |x: i32| partition.iter().position(|g| g.contains(&x)).unwrap();
    let ilt = |w: &[i32]| {
        w.windows(2)
            .filter(|p| gate(-p[0]) == gate(p[1]))
            .count()
    };
    let mut out = BTreeSet::new();
    let mut seen: HashSet<Word> = HashSet::new();
    for w in reduced_paths(f, max_len) {
        if w.len() < 2 || ilt(&w) != 1 {
            continue;
        }
        let key = std::cmp::min(w.clone(), inverse(&w));
        if !seen.insert(key.clone()) {
            continue;
        }
        let mut cur = w.clone();
        for _ in 0..max_period {
            cur = f.apply(&cur);
            if cur == w {
                out.insert(key);
                break;
            }
            if cur.len() > 64 * max_len {
                break;
            }
        }
    }
    out
}

/// Smallest `p <= max_p` such that `w[i] = w[i + p]` on the whole word.
pub fn smallest_period(w: &[i32], max_p: usize) -> Option<usize> {
    (1..=max_p.min(w.len().saturating_sub(1))).find(|&p| (0..w.len() - p).all(|i| w[i] == w[i + p]))
}
