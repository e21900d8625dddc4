//! Floating-point simplex used only to guess an optimal basis.
//!
//! Nothing it returns is trusted: the exact solver factors the proposed
//! basis, checks feasibility and finishes with exact pivots. The right-hand
//! side is perturbed along a positive combination of columns, which keeps
//! the problem feasible and removes the primal degeneracy that makes exact
//! pivoting stall on cut LPs. A basis optimal for a small enough
//! perturbation is optimal for the original problem. Pricing is steepest
//! edge.

use num_traits::ToPrimitive;

use super::{SparseColumn, StandardFormLP};

const REINVERT_EVERY: usize = 64;
const PIVOT_TOL: f64 = 1e-7;
const COST_TOL: f64 = 1e-7;
const FEAS_TOL: f64 = 1e-9;
const PERTURBATION: f64 = 1e-5;

/// Real columns of a basis that looks optimal for `min costs·x`, or `None`
/// when the float solve stops before reaching a feasible basis. `lp` must have an integral right-hand
/// side. `warm` is a feasible basis of the same constraints (artificial `i`
/// written `n + i`), which skips phase one.
pub(crate) fn optimal_basis(
    lp: &StandardFormLP,
    costs: &[f64],
    warm: Option<&[usize]>,
) -> Option<Vec<usize>> {
    let m = lp.rows;
    if m == 0 {
        return Some(Vec::new());
    }
    let mut b = Vec::with_capacity(m);
    for q in &lp.rhs {
        b.push(q.to_integer().to_f64()?);
    }
    if let Some(start) = warm {
        if let Some(found) = warm_start(lp, costs, &b, start) {
            return Some(found);
        }
    }
    cold_start(lp, costs, b)
}

fn iteration_limit(m: usize) -> usize {
    50 * m + 10_000
}

fn perturb(b: &mut [f64], shift: &[f64]) {
    let scale = b.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let peak = shift.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if peak > 0.0 {
        let eps = PERTURBATION * scale / peak;
        b.iter_mut().zip(shift).for_each(|(x, s)| *x += eps * s);
    }
}

fn weight(j: usize) -> f64 {
    1.0 + (j as f64 * 0.618_033_988_749_895).fract()
}

fn cold_start(lp: &StandardFormLP, costs: &[f64], mut b: Vec<f64>) -> Option<Vec<usize>> {
    let (m, n) = (lp.rows, lp.columns.len());
    // Perturb along `M·w` for a positive `w`, which keeps a feasible problem
    // feasible while making degenerate bases unlikely.
    let mut shift = vec![0.0; m];
    for (j, col) in lp.columns.iter().enumerate() {
        for (r, v) in col.iter() {
            shift[r] += weight(j) * v as f64;
        }
    }
    perturb(&mut b, &shift);
    let scale = b.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let row_sign: Vec<f64> = b
        .iter()
        .map(|&x| if x < 0.0 { -1.0 } else { 1.0 })
        .collect();
    b.iter_mut().for_each(|x| *x = x.abs());
    let mut s = FloatSimplex::new(&lp.columns, row_sign, b, (n..n + m).collect());
    s.x = s.b.clone();
    s.init_weights();
    s.costs = (0..n + m).map(|j| if j >= n { 1.0 } else { 0.0 }).collect();
    if !s.run(iteration_limit(m))? {
        return None;
    }
    let infeasibility: f64 = s
        .head
        .iter()
        .zip(&s.x)
        .filter(|(&h, _)| h >= n)
        .map(|(_, &x)| x)
        .sum();
    if infeasibility > 100.0 * PERTURBATION * scale * m as f64 {
        return None;
    }
    s.phase_two(costs)
}

/// Phase two from a given basis, with the right-hand side perturbed along
/// that basis's own columns so that it starts strictly feasible.
fn warm_start(
    lp: &StandardFormLP,
    costs: &[f64],
    b: &[f64],
    start: &[usize],
) -> Option<Vec<usize>> {
    let (m, n) = (lp.rows, lp.columns.len());
    if start.len() != m || start.iter().any(|&h| h >= n + m) {
        return None;
    }
    let row_sign: Vec<f64> = b
        .iter()
        .map(|&x| if x < 0.0 { -1.0 } else { 1.0 })
        .collect();
    let mut flipped: Vec<f64> = b.iter().map(|x| x.abs()).collect();
    let mut shift = vec![0.0; m];
    for &h in start {
        if h >= n {
            shift[h - n] += weight(h);
        } else {
            for (r, v) in lp.columns[h].iter() {
                shift[r] += weight(h) * row_sign[r] * v as f64;
            }
        }
    }
    perturb(&mut flipped, &shift);
    let mut s = FloatSimplex::new(&lp.columns, row_sign, flipped, start.to_vec());
    s.reinvert()?;
    if s.x.iter().any(|&x| x < -FEAS_TOL) {
        return None;
    }
    s.init_weights();
    s.phase_two(costs)
}

fn identity(m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|i| (0..m).map(|k| if i == k { 1.0 } else { 0.0 }).collect())
        .collect()
}

struct FloatSimplex<'a> {
    columns: &'a [SparseColumn],
    row_sign: Vec<f64>,
    m: usize,
    n: usize,
    b: Vec<f64>,
    head: Vec<usize>,
    basic: Vec<bool>,
    inv: Vec<Vec<f64>>,
    x: Vec<f64>,
    costs: Vec<f64>,
    since_reinvert: usize,
    /// Steepest-edge weights `1 + |B⁻¹a_j|²` of the real columns.
    weights: Vec<f64>,
}

impl<'a> FloatSimplex<'a> {
    fn new(columns: &'a [SparseColumn], row_sign: Vec<f64>, b: Vec<f64>, head: Vec<usize>) -> Self {
        let (m, n) = (b.len(), columns.len());
        let mut basic = vec![false; n + m];
        head.iter().for_each(|&h| basic[h] = true);
        FloatSimplex {
            columns,
            row_sign,
            m,
            n,
            b,
            head,
            basic,
            inv: identity(m),
            x: Vec::new(),
            costs: Vec::new(),
            since_reinvert: 0,
            weights: Vec::new(),
        }
    }

    /// Exact weights for the current basis. Cheap for the all-artificial
    /// start, where `B = I`.
    fn init_weights(&mut self) {
        let cold = self.head.iter().all(|&h| h >= self.n);
        let inv_t: Vec<Vec<f64>> = if cold {
            Vec::new()
        } else {
            (0..self.m)
                .map(|k| {
                    (0..self.m)
                        .map(|i| self.inv[i][k] * self.row_sign[k])
                        .collect()
                })
                .collect()
        };
        let mut alpha = vec![0.0; self.m];
        self.weights = self
            .columns
            .iter()
            .map(|col| {
                if cold {
                    return 1.0 + col.iter().map(|(_, v)| (v * v) as f64).sum::<f64>();
                }
                alpha.iter_mut().for_each(|a| *a = 0.0);
                for (k, v) in col.iter() {
                    let v = v as f64;
                    alpha
                        .iter_mut()
                        .zip(&inv_t[k])
                        .for_each(|(a, t)| *a += v * t);
                }
                1.0 + alpha.iter().map(|a| a * a).sum::<f64>()
            })
            .collect();
    }

    /// Goldfarb-Reid update for entering `q` at row `r`, using the basis
    /// before the pivot.
    fn update_weights(&mut self, r: usize, q: usize, alpha: &[f64]) {
        let m = self.m;
        let rho: Vec<f64> = (0..m).map(|k| self.inv[r][k] * self.row_sign[k]).collect();
        let mut tau = vec![0.0; m];
        for (i, a) in alpha.iter().enumerate() {
            if *a != 0.0 {
                tau.iter_mut()
                    .zip(&self.inv[i])
                    .for_each(|(t, v)| *t += a * v);
            }
        }
        tau.iter_mut()
            .zip(&self.row_sign)
            .for_each(|(t, s)| *t *= s);
        let pivot = alpha[r];
        let gamma_q = 1.0 + alpha.iter().map(|a| a * a).sum::<f64>();
        for j in 0..self.n {
            if self.basic[j] || j == q {
                continue;
            }
            let mut row_entry = 0.0;
            let mut kappa = 0.0;
            for (k, v) in self.columns[j].iter() {
                row_entry += rho[k] * v as f64;
                kappa += tau[k] * v as f64;
            }
            if row_entry == 0.0 {
                continue;
            }
            let ratio = row_entry / pivot;
            let w = self.weights[j] - 2.0 * ratio * kappa + ratio * ratio * gamma_q;
            self.weights[j] = w.max(1.0 + ratio * ratio);
        }
        let leaving = self.head[r];
        if leaving < self.n {
            self.weights[leaving] = (gamma_q / (pivot * pivot)).max(1.0);
        }
    }

    /// Real columns of the final basis. A basis from an unfinished phase
    /// two is still a useful warm start for the exact solver.
    fn phase_two(mut self, costs: &[f64]) -> Option<Vec<usize>> {
        self.costs = costs
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(0.0, self.m))
            .collect();
        if self.run(iteration_limit(self.m)) == Some(false) {
            return None;
        }
        let n = self.n;
        Some(self.head.into_iter().filter(|&h| h < n).collect())
    }

    /// `Some(true)` at optimality, `Some(false)` when unbounded, `None` on
    /// numerical failure or iteration limit.
    fn run(&mut self, limit: usize) -> Option<bool> {
        for _ in 0..limit {
            let y = self.duals();
            let Some(q) = self.price(&y) else {
                return Some(true);
            };
            let alpha = self.alpha(q);
            let Some(r) = self.ratio_test(&alpha) else {
                return Some(false);
            };
            self.update_weights(r, q, &alpha);
            self.pivot(r, q, &alpha)?;
        }
        None
    }

    fn duals(&self) -> Vec<f64> {
        let mut y = vec![0.0; self.m];
        for (i, &h) in self.head.iter().enumerate() {
            let c = self.costs[h];
            if c != 0.0 {
                for (yk, a) in y.iter_mut().zip(&self.inv[i]) {
                    *yk += c * a;
                }
            }
        }
        y
    }

    /// Steepest edge: the most negative reduced cost relative to the edge length.
    fn price(&self, y: &[f64]) -> Option<usize> {
        let ys: Vec<f64> = y.iter().zip(&self.row_sign).map(|(a, b)| a * b).collect();
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.n {
            if self.basic[j] {
                continue;
            }
            let mut d = self.costs[j];
            for (r, v) in self.columns[j].iter() {
                d -= ys[r] * v as f64;
            }
            if d < -COST_TOL {
                let score = d * d / self.weights[j];
                if best.is_none_or(|(_, b)| score > b) {
                    best = Some((j, score));
                }
            }
        }
        best.map(|(j, _)| j)
    }

    fn alpha(&self, q: usize) -> Vec<f64> {
        let col = &self.columns[q];
        self.inv
            .iter()
            .map(|row| {
                col.iter()
                    .map(|(k, v)| row[k] * self.row_sign[k] * v as f64)
                    .sum()
            })
            .collect()
    }

    /// Harris two-pass ratio test.
    fn ratio_test(&self, alpha: &[f64]) -> Option<usize> {
        let mut bound = f64::INFINITY;
        for (a, x) in alpha.iter().zip(&self.x) {
            if *a > PIVOT_TOL {
                bound = bound.min((x.max(0.0) + FEAS_TOL) / a);
            }
        }
        if !bound.is_finite() {
            return None;
        }
        let mut best: Option<usize> = None;
        for (i, (a, x)) in alpha.iter().zip(&self.x).enumerate() {
            if *a > PIVOT_TOL && x.max(0.0) / a <= bound && best.is_none_or(|k| *a > alpha[k]) {
                best = Some(i);
            }
        }
        best
    }

    fn pivot(&mut self, r: usize, q: usize, alpha: &[f64]) -> Option<()> {
        let p = alpha[r];
        let pivot_row: Vec<f64> = self.inv[r].iter().map(|v| v / p).collect();
        let xr = self.x[r] / p;
        for i in 0..self.m {
            if i == r || alpha[i] == 0.0 {
                continue;
            }
            let a = alpha[i];
            for (v, pr) in self.inv[i].iter_mut().zip(&pivot_row) {
                *v -= a * pr;
            }
            self.x[i] -= a * xr;
        }
        self.inv[r] = pivot_row;
        self.x[r] = xr;
        self.basic[self.head[r]] = false;
        self.basic[q] = true;
        self.head[r] = q;
        self.since_reinvert += 1;
        if self.since_reinvert >= REINVERT_EVERY {
            self.reinvert()?;
        }
        Some(())
    }

    /// Recomputes the inverse and basic values from scratch by Gauss-Jordan
    /// elimination with partial pivoting.
    fn reinvert(&mut self) -> Option<()> {
        let m = self.m;
        let mut a = vec![vec![0.0; m]; m];
        for (i, &h) in self.head.iter().enumerate() {
            if h >= self.n {
                a[h - self.n][i] = 1.0;
            } else {
                for (k, v) in self.columns[h].iter() {
                    a[k][i] = self.row_sign[k] * v as f64;
                }
            }
        }
        let mut inv = identity(m);
        for c in 0..m {
            let p = (c..m).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
            if a[p][c].abs() < 1e-12 {
                return None;
            }
            a.swap(c, p);
            inv.swap(c, p);
            let d = a[c][c];
            a[c].iter_mut().for_each(|v| *v /= d);
            inv[c].iter_mut().for_each(|v| *v /= d);
            for r in 0..m {
                let f = a[r][c];
                if r == c || f == 0.0 {
                    continue;
                }
                let (ar, ac) = if r < c {
                    let (lo, hi) = a.split_at_mut(c);
                    (&mut lo[r], &hi[0])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&mut hi[0], &lo[c])
                };
                ar.iter_mut().zip(ac).for_each(|(x, y)| *x -= f * y);
                let (ir, ic) = if r < c {
                    let (lo, hi) = inv.split_at_mut(c);
                    (&mut lo[r], &hi[0])
                } else {
                    let (lo, hi) = inv.split_at_mut(r);
                    (&mut hi[0], &lo[c])
                };
                ir.iter_mut().zip(ic).for_each(|(x, y)| *x -= f * y);
            }
        }
        self.x = inv
            .iter()
            .map(|row| row.iter().zip(&self.b).map(|(u, v)| u * v).sum())
            .collect();
        self.inv = inv;
        self.since_reinvert = 0;
        Some(())
    }
}
