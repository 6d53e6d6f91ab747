//! Column-style Hermite normal form with a unimodular transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `h = g · u` with `u` unimodular. The nonzero columns of `h` come first
/// and are in column echelon form: column `t` has its first nonzero entry
/// (positive) in row `pivots[t]`, and entries left of a pivot are reduced
/// into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    /// `dim` rows of `ncols` entries.
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    dim: usize,
    ncols: usize,
}

impl Hnf {
    /// `columns[k]` is the k-th lattice generator, each of length `dim`.
    pub fn new(dim: usize, columns: &[Vec<BigInt>]) -> Self {
        let ncols = columns.len();
        let mut h: Vec<Vec<BigInt>> = (0..dim).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let mut u: Vec<Vec<BigInt>> = (0..ncols)
            .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut k = 0;
        for row in 0..dim {
            if k == ncols {
                break;
            }
            // Fold every column right of k into column k, gcd-style.
            for j in k + 1..ncols {
                if h[row][j].is_zero() {
                    continue;
                }
                let a = h[row][k].clone();
                let b = h[row][j].clone();
                let e = a.extended_gcd(&b);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let (ka, kb) = (&a / &g, &b / &g);
                // [k j] <- [k j] · [[s, -kb], [t, ka]]
                combine(&mut h, k, j, &s, &t, &kb, &ka);
                combine(&mut u, k, j, &s, &t, &kb, &ka);
            }
            if h[row][k].is_zero() {
                continue;
            }
            if h[row][k].is_negative() {
                negate(&mut h, k);
                negate(&mut u, k);
            }
            let p = h[row][k].clone();
            for j in 0..k {
                let q = h[row][j].div_floor(&p);
                if !q.is_zero() {
                    axpy(&mut h, j, k, &q);
                    axpy(&mut u, j, k, &q);
                }
            }
            pivots.push(row);
            k += 1;
        }
        Hnf { h, u, pivots, dim, ncols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Column `t` of the normal form.
    pub fn column(&self, t: usize) -> Vec<BigInt> {
        self.h.iter().map(|r| r[t].clone()).collect()
    }

    /// Integer coefficients `z` with `Σ z_k · columns[k] = v`, if any.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let (rest, y) = self.reduce_with(v, true)?;
        debug_assert!(rest.iter().all(Zero::is_zero));
        let r = self.rank();
        Some((0..self.ncols).map(|k| (0..r).map(|t| &self.u[k][t] * &y[t]).sum()).collect())
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.reduce_with(v, false).expect("reduction never fails").0
    }

    fn reduce_with(&self, v: &[BigInt], exact: bool) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let mut v = v.to_vec();
        let mut y = Vec::with_capacity(self.rank());
        let mut t = 0;
        for row in 0..self.dim {
            if t < self.rank() && self.pivots[t] == row {
                let p = &self.h[row][t];
                let q = if exact {
                    let (q, r) = v[row].div_rem(p);
                    if !r.is_zero() {
                        return None;
                    }
                    q
                } else {
                    v[row].div_floor(p)
                };
                if !q.is_zero() {
                    for (i, vi) in v.iter_mut().enumerate() {
                        if !self.h[i][t].is_zero() {
                            *vi -= &q * &self.h[i][t];
                        }
                    }
                }
                y.push(q);
                t += 1;
            } else if exact && !v[row].is_zero() {
                return None;
            }
        }
        Some((v, y))
    }
}

fn combine(m: &mut [Vec<BigInt>], k: usize, j: usize, s: &BigInt, t: &BigInt, kb: &BigInt, ka: &BigInt) {
    for row in m.iter_mut() {
        let (x, y) = (row[k].clone(), row[j].clone());
        row[k] = &x * s + &y * t;
        row[j] = &y * ka - &x * kb;
    }
}

fn negate(m: &mut [Vec<BigInt>], k: usize) {
    for row in m.iter_mut() {
        row[k] = -&row[k];
    }
}

/// column j -= q · column k
fn axpy(m: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let d = q * &row[k];
        row[j] -= d;
    }
}
