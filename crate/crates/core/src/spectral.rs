//! Transition matrices, primitivity and Perron-Frobenius edge lengths.
//!
//! Entry `(e, e')` of the transition matrix counts how often the image of
//! `e'` crosses `e` in either direction, so column sums are image lengths.
//! The PF lengths are then the positive solution of
//! `sum_e M(e, e') L(e) = lambda L(e')`, i.e. `L(f(e')) = lambda L(e')`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::EdgePath;
use crate::map::GraphSelfMap;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TransitionMatrix(Vec<Vec<u64>>);

impl TransitionMatrix {
    pub fn of(f: &GraphSelfMap) -> TransitionMatrix {
        let n = f.graph().edge_count();
        let mut m = vec![vec![0u64; n]; n];
        for col in f.graph().edges() {
            for d in f.image(col).darts() {
                m[d.edge()][col.edge()] += 1;
            }
        }
        TransitionMatrix(m)
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> TransitionMatrix {
        assert!(rows.iter().all(|r| r.len() == rows.len()), "square matrix");
        TransitionMatrix(rows)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.size())
            .map(|j| self.0.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// Some power `M^k` with `k <= (n-1)^2 + 1` is strictly positive
    /// (Wielandt's bound).
    pub fn is_primitive(&self) -> bool {
        let n = self.size();
        if n == 0 {
            return false;
        }
        let base: Vec<Vec<bool>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|&x| x > 0).collect())
            .collect();
        let bound = (n - 1) * (n - 1) + 1;
        let mut power = base.clone();
        for _k in 1..=bound {
            if power.iter().all(|r| r.iter().all(|&x| x)) {
                return true;
            }
            power = bool_product(&power, &base);
        }
        false
    }

    /// Characteristic polynomial `det(xI - M)`, coefficients from the
    /// constant term up (Faddeev-LeVerrier).
    pub fn characteristic_polynomial(&self) -> Vec<i128> {
        let n = self.size();
        let a: Vec<Vec<i128>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut coeffs = vec![0i128; n + 1];
        coeffs[n] = 1;
        let mut m = vec![vec![0i128; n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = int_product(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += coeffs[n - k + 1];
            }
            m = next;
            let am = int_product(&a, &m);
            let trace: i128 = (0..n).map(|i| am[i][i]).sum();
            coeffs[n - k] = -trace / k as i128;
        }
        coeffs
    }
}

fn bool_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).any(|k| a[i][k] && b[k][j]))
                .collect()
        })
        .collect()
}

fn int_product(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn eval_poly(coeffs: &[i128], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PfData {
    pub lambda: f64,
    /// indexed by edge, normalized to total length 1
    pub pf_lengths: Vec<f64>,
    pub vol_pf: f64,
    pub bbt_bound: f64,
    pub min_pf_length: f64,
    /// Simplicial bound on legal subpaths of totally illegal leaves:
    /// `ceil(4 * bbt_bound / min_pf_length)`.
    pub c_illegal: u64,
    pub residual: f64,
    pub iterations: usize,
    /// `|p(lambda)|` for the characteristic polynomial, when computed.
    pub charpoly_residual: Option<f64>,
}

impl PfData {
    pub fn compute(f: &GraphSelfMap, tol: f64) -> Result<PfData> {
        Self::from_matrix(&TransitionMatrix::of(f), tol)
    }

    pub fn from_matrix(m: &TransitionMatrix, tol: f64) -> Result<PfData> {
        if !m.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let n = m.size();
        let rows = m.rows();
        let mut v = vec![1.0 / n as f64; n];
        let mut lambda = 0.0;
        let mut residual = f64::INFINITY;
        let mut iterations = 0;
        while iterations < MAX_ITERATIONS {
            iterations += 1;
            let w: Vec<f64> = (0..n)
                .map(|j| (0..n).map(|i| rows[i][j] as f64 * v[i]).sum())
                .collect();
            let s: f64 = w.iter().sum();
            lambda = s;
            residual = w
                .iter()
                .zip(&v)
                .map(|(wi, vi)| (wi - lambda * vi).abs())
                .fold(0.0, f64::max);
            v = w.into_iter().map(|x| x / s).collect();
            if residual < tol {
                break;
            }
        }
        if residual >= tol {
            return Err(Error::NoConvergence {
                tol,
                iterations: MAX_ITERATIONS,
            });
        }
        let min_pf_length = v.iter().copied().fold(f64::INFINITY, f64::min);
        let vol_pf: f64 = v.iter().sum();
        let bbt_bound = vol_pf;
        let charpoly_residual = (n <= 6).then(|| {
            let p = m.characteristic_polynomial();
            eval_poly(&p, lambda).abs()
        });
        Ok(PfData {
            lambda,
            c_illegal: (4.0 * bbt_bound / min_pf_length).ceil() as u64,
            pf_lengths: v,
            vol_pf,
            bbt_bound,
            min_pf_length,
            residual,
            iterations,
            charpoly_residual,
        })
    }

    pub fn pf_length(&self, p: &EdgePath) -> f64 {
        p.darts().iter().map(|d| self.pf_lengths[d.edge()]).sum()
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.pf_lengths[e]
    }
}
