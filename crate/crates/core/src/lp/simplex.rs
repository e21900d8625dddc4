//! Two-phase revised simplex in exact arithmetic.
//!
//! The basis inverse is kept fraction-free, as an integer matrix `A` and an
//! integer `D` (the basis determinant up to sign) with `B⁻¹ = A / D`. Pivots
//! update both by exact division, as in Bareiss elimination. Arithmetic runs
//! in checked `i128` first; on overflow the solve restarts with big integers.
//!
//! Leaving rows follow the lexicographic rule, so Dantzig pricing cannot
//! cycle. Driving artificials out of the basis after phase one can break the
//! lexicographic invariant; phase two then falls back to Bland's rule after a
//! long run of degenerate pivots.
//!
//! A floating-point solve first proposes a basis. When it factors to a
//! feasible basis, the exact solve starts there and usually only has to
//! confirm optimality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{float, Rational, SparseColumn, StandardFormLP};
use crate::error::{Error, Result};

const BLAND_FALLBACK_RUN: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    /// `farkas` satisfies `yᵀM <= 0` and `yᵀb > 0` in the caller's row units.
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn optimal(self) -> Option<(Rational, Vec<Rational>)> {
        match self {
            LpOutcome::Optimal { value, point } => Some((value, point)),
            _ => None,
        }
    }
}

pub fn solve_lp(lp: &StandardFormLP, sense: Sense) -> Result<LpOutcome> {
    Ok(solve_lp_warm(lp, sense, None)?.0)
}

/// Final basis of an optimal solve, artificial `i` written `cols + i`.
pub(crate) type Basis = Vec<usize>;

/// [`solve_lp`] starting from a feasible basis of the same constraints, and
/// also returning the optimal basis.
pub(crate) fn solve_lp_warm(
    lp: &StandardFormLP,
    sense: Sense,
    warm: Option<&[usize]>,
) -> Result<(LpOutcome, Option<Basis>)> {
    if lp.rhs.len() != lp.rows || lp.objective.len() != lp.columns.len() {
        return Err(Error::DimensionMismatch("malformed standard form".into()));
    }
    let scaled = lp.with_integral_rhs()?;
    let flip = if sense == Sense::Maximize { -1.0 } else { 1.0 };
    let float_costs: Vec<f64> = scaled
        .objective
        .iter()
        .map(|c| c.to_f64().unwrap_or(0.0) * flip)
        .collect();
    let guess = float::optimal_basis(&scaled, &float_costs, warm);
    match solve_with::<i128>(&scaled, sense, guess.as_deref()) {
        Ok(outcome) => outcome,
        Err(Overflow) => solve_with::<BigInt>(&scaled, sense, guess.as_deref())
            .expect("big integers do not overflow"),
    }
}

/// Exact minimum and maximum (`None` when unbounded above) of one variable
/// over the feasible region.
pub fn variable_range(lp: &StandardFormLP, index: usize) -> Result<(Rational, Option<Rational>)> {
    if index >= lp.cols() {
        return Err(Error::DimensionMismatch(format!(
            "variable {index} out of range for {} columns",
            lp.cols()
        )));
    }
    let mut unit = vec![Rational::zero(); lp.cols()];
    unit[index] = Rational::one();
    let probe = lp.with_objective(unit)?;
    let min = match solve_lp(&probe, Sense::Minimize)? {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Infeasible { .. } => return Err(Error::InfeasibleSystem),
        LpOutcome::Unbounded => {
            return Err(Error::InternalInconsistency(
                "nonnegative variable unbounded below".into(),
            ))
        }
    };
    let max = match solve_lp(&probe, Sense::Maximize)? {
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Unbounded => None,
        LpOutcome::Infeasible { .. } => return Err(Error::InfeasibleSystem),
    };
    Ok((min, max))
}

#[derive(Debug)]
struct Overflow;

type Checked<T> = std::result::Result<T, Overflow>;

/// Integer arithmetic the solver runs on.
trait Int: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Checked<Self>;
    fn to_big(&self) -> BigInt;
    fn mul(&self, o: &Self) -> Checked<Self>;
    fn mul_i64(&self, v: i64) -> Checked<Self>;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn add(&self, o: &Self) -> Checked<Self>;
    /// `self / o` where the division is known to be exact.
    fn div_exact(&self, o: &Self) -> Self;
    fn signum(&self) -> i32;
    fn to_i128(&self) -> Option<i128>;

    fn is_zero(&self) -> bool {
        self.signum() == 0
    }
}

impl Int for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn from_big(v: &BigInt) -> Checked<Self> {
        ToPrimitive::to_i128(v).ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn mul_i64(&self, v: i64) -> Checked<Self> {
        self.checked_mul(v as i128).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn to_i128(&self) -> Option<i128> {
        Some(*self)
    }
}

impl Int for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Checked<Self> {
        Ok(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn mul_i64(&self, v: i64) -> Checked<Self> {
        Ok(self * v)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        Ok(self + o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn to_i128(&self) -> Option<i128> {
        ToPrimitive::to_i128(self)
    }
}

fn solve_with<T: Int>(
    lp: &StandardFormLP,
    sense: Sense,
    guess: Option<&[usize]>,
) -> Checked<Result<(LpOutcome, Option<Basis>)>> {
    let b: Vec<BigInt> = lp.rhs.iter().map(|q| q.to_integer()).collect();
    let costs = phase_two_costs::<T>(lp, sense)?;
    if let Some(basis) = guess {
        let mut s = Solver::<T>::new(&lp.columns, &b)?;
        if s.crash(basis)? {
            s.lex_safe = false;
            return s.phase_two(lp, costs);
        }
    }
    let mut s = Solver::<T>::new(&lp.columns, &b)?;

    // Phase 1: minimise the sum of artificials.
    s.costs = (0..s.n + s.m)
        .map(|j| T::from_i64((j >= s.n) as i64))
        .collect();
    if s.run()?.is_none() {
        return Ok(Err(Error::InternalInconsistency(
            "phase one reported unbounded".into(),
        )));
    }
    let infeasible = s
        .head
        .iter()
        .zip(&s.beta)
        .any(|(&h, beta)| h >= s.n && !beta.is_zero());
    if infeasible {
        let w = s.weighted_rows()?;
        let det = s.det.to_big();
        let farkas = w
            .iter()
            .zip(&lp.row_scale)
            .map(|(wk, scale)| Rational::new(wk.to_big() * scale, det.clone()))
            .collect();
        return Ok(Ok((LpOutcome::Infeasible { farkas }, None)));
    }
    if s.drive_out_artificials()? {
        s.lex_safe = false;
    }
    s.phase_two(lp, costs)
}

/// The caller's objective scaled to integers, negated for maximisation, with
/// zero cost on the artificials.
fn phase_two_costs<T: Int>(lp: &StandardFormLP, sense: Sense) -> Checked<Vec<T>> {
    let denom = lp
        .objective
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let flip: i32 = if sense == Sense::Maximize { -1 } else { 1 };
    let m = lp.rows;
    lp.objective
        .iter()
        .map(|c| T::from_big(&((c * &denom).to_integer() * flip)))
        .chain((0..m).map(|_| Ok(T::from_i64(0))))
        .collect()
}

struct Solver<'a, T> {
    columns: &'a [SparseColumn],
    m: usize,
    n: usize,
    head: Vec<usize>,
    basic: Vec<bool>,
    /// `D·B⁻¹`, row-major.
    adj: Vec<Vec<T>>,
    det: T,
    /// `D·x_B`.
    beta: Vec<T>,
    costs: Vec<T>,
    degenerate_run: usize,
    lex_safe: bool,
}

impl<'a, T: Int> Solver<'a, T> {
    fn new(columns: &'a [SparseColumn], b: &[BigInt]) -> Checked<Self> {
        let m = b.len();
        let n = columns.len();
        // Artificial `i` is the column `±e_i` with the sign of `b_i`, so the
        // starting basis is feasible.
        let art_sign: Vec<i64> = b
            .iter()
            .map(|v| if v.is_negative() { -1 } else { 1 })
            .collect();
        let adj = (0..m)
            .map(|i| {
                (0..m)
                    .map(|k| T::from_i64(if i == k { art_sign[i] } else { 0 }))
                    .collect()
            })
            .collect();
        let beta = b
            .iter()
            .map(|v| T::from_big(&v.abs()))
            .collect::<Checked<_>>()?;
        let mut basic = vec![false; n + m];
        basic[n..].iter_mut().for_each(|x| *x = true);
        Ok(Solver {
            columns,
            m,
            n,
            head: (n..n + m).collect(),
            basic,
            adj,
            det: T::from_i64(1),
            beta,
            costs: Vec::new(),
            degenerate_run: 0,
            lex_safe: true,
        })
    }

    /// Iterates to optimality (`Some(())`) or detects unboundedness (`None`).
    fn run(&mut self) -> Checked<Option<()>> {
        loop {
            let bland = !self.lex_safe && self.degenerate_run >= BLAND_FALLBACK_RUN;
            let w = self.weighted_rows()?;
            let Some(q) = self.price(&w, bland)? else {
                return Ok(Some(()));
            };
            let alpha = self.alpha(q)?;
            let Some(r) = self.ratio_test(&alpha, bland)? else {
                return Ok(None);
            };
            if self.beta[r].is_zero() {
                self.degenerate_run += 1;
            } else {
                self.degenerate_run = 0;
            }
            self.pivot(r, q, &alpha)?;
        }
    }

    fn phase_two(
        mut self,
        lp: &StandardFormLP,
        costs: Vec<T>,
    ) -> Checked<Result<(LpOutcome, Option<Basis>)>> {
        self.costs = costs;
        self.degenerate_run = 0;
        if self.run()?.is_none() {
            return Ok(Ok((LpOutcome::Unbounded, None)));
        }
        let det = self.det.to_big();
        let mut point = vec![Rational::zero(); self.n];
        for (&h, beta) in self.head.iter().zip(&self.beta) {
            if h < self.n {
                point[h] = Rational::new(beta.to_big(), det.clone());
            }
        }
        let value = lp.objective_value(&point);
        Ok(Ok((LpOutcome::Optimal { value, point }, Some(self.head))))
    }

    /// Pivots the given columns into the starting basis in place of
    /// artificials. Returns whether the result is a feasible basis with every
    /// remaining artificial at zero and driven out where possible.
    fn crash(&mut self, basis: &[usize]) -> Checked<bool> {
        for &j in basis {
            if j >= self.n || self.basic[j] {
                continue;
            }
            let alpha = self.alpha(j)?;
            let row = (0..self.m).find(|&r| self.head[r] >= self.n && !alpha[r].is_zero());
            if let Some(r) = row {
                self.pivot(r, j, &alpha)?;
            }
        }
        let sign = self.det.signum();
        let feasible = self.head.iter().zip(&self.beta).all(|(&h, beta)| {
            if h >= self.n {
                beta.is_zero()
            } else {
                beta.signum() * sign >= 0
            }
        });
        if feasible {
            self.drive_out_artificials()?;
        }
        Ok(feasible)
    }

    /// `c_B · A`, so that the duals are `w / D`.
    fn weighted_rows(&self) -> Checked<Vec<T>> {
        let mut w = vec![T::from_i64(0); self.m];
        for (i, &h) in self.head.iter().enumerate() {
            let c = &self.costs[h];
            if c.is_zero() {
                continue;
            }
            for (k, a) in self.adj[i].iter().enumerate() {
                if !a.is_zero() {
                    w[k] = w[k].add(&c.mul(a)?)?;
                }
            }
        }
        Ok(w)
    }

    /// Entering column, or `None` at optimality. Artificials never re-enter.
    ///
    /// `c_j·D - w·a_j` is the reduced cost times `D`; multiplying by the sign
    /// of `D` gives a quantity with the reduced cost's sign. Pricing runs in
    /// machine integers whenever the duals fit, even on the big-integer path.
    fn price(&self, w: &[T], bland: bool) -> Checked<Option<usize>> {
        if let Some(fast) = self.price_i128(w, bland) {
            return Ok(fast);
        }
        self.price_exact(w, bland)
    }

    fn price_i128(&self, w: &[T], bland: bool) -> Option<Option<usize>> {
        const FAST_BOUND: i128 = 1 << 100;
        let fits = |x: &T| x.to_i128().filter(|v| v.abs() < FAST_BOUND);
        let w: Vec<i128> = w.iter().map(fits).collect::<Option<_>>()?;
        let det = fits(&self.det)?;
        let sign = det.signum();
        let mut best: Option<(usize, i128)> = None;
        for j in 0..self.n {
            if self.basic[j] {
                continue;
            }
            let mut d = self.costs[j].to_i128()?.checked_mul(det)?;
            for (r, v) in self.columns[j].iter() {
                d = d.checked_sub(w[r].checked_mul(v as i128)?)?;
            }
            let d = d * sign;
            if d >= 0 {
                continue;
            }
            if bland {
                return Some(Some(j));
            }
            if best.is_none_or(|(_, b)| d < b) {
                best = Some((j, d));
            }
        }
        Some(best.map(|(j, _)| j))
    }

    fn price_exact(&self, w: &[T], bland: bool) -> Checked<Option<usize>> {
        let sign = self.det.signum();
        let mut best: Option<(usize, T)> = None;
        for j in 0..self.n {
            if self.basic[j] {
                continue;
            }
            let mut d = self.costs[j].mul(&self.det)?;
            for (r, v) in self.columns[j].iter() {
                if !w[r].is_zero() {
                    d = d.sub(&w[r].mul_i64(v)?)?;
                }
            }
            if d.signum() * sign >= 0 {
                continue;
            }
            if bland {
                return Ok(Some(j));
            }
            let d = d.mul_i64(sign as i64)?;
            let better = match &best {
                None => true,
                Some((_, b)) => d.sub(b)?.signum() < 0,
            };
            if better {
                best = Some((j, d));
            }
        }
        Ok(best.map(|(j, _)| j))
    }

    /// `A · a_q`, i.e. `D·B⁻¹ a_q`.
    fn alpha(&self, q: usize) -> Checked<Vec<T>> {
        let col = &self.columns[q];
        self.adj
            .iter()
            .map(|row| {
                let mut acc = T::from_i64(0);
                for (k, v) in col.iter() {
                    if !row[k].is_zero() {
                        acc = acc.add(&row[k].mul_i64(v)?)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// Sign of `x/a - y/b` for `a, b` of the same sign as `D`.
    fn compare_ratios(x: &T, a: &T, y: &T, b: &T) -> Checked<i32> {
        Ok(x.mul(b)?.sub(&y.mul(a)?)?.signum() * a.signum() * b.signum())
    }

    /// Leaving row among those with a positive pivot. Lexicographic rule on
    /// `(x_B, B⁻¹)` rows, or smallest basic index among ratio ties for Bland.
    fn ratio_test(&self, alpha: &[T], bland: bool) -> Checked<Option<usize>> {
        let sign = self.det.signum();
        let mut best: Option<usize> = None;
        for (i, a) in alpha.iter().enumerate() {
            if a.signum() != sign {
                continue;
            }
            let Some(k) = best else {
                best = Some(i);
                continue;
            };
            let mut c = Self::compare_ratios(&self.beta[i], a, &self.beta[k], &alpha[k])?;
            if c == 0 {
                if bland {
                    c = if self.head[i] < self.head[k] { -1 } else { 1 };
                } else {
                    for t in 0..self.m {
                        c = Self::compare_ratios(&self.adj[i][t], a, &self.adj[k][t], &alpha[k])?;
                        if c != 0 {
                            break;
                        }
                    }
                }
            }
            if c < 0 {
                best = Some(i);
            }
        }
        Ok(best)
    }

    fn pivot(&mut self, r: usize, q: usize, alpha: &[T]) -> Checked<()> {
        let p = alpha[r].clone();
        let pivot_row = self.adj[r].clone();
        let pivot_beta = self.beta[r].clone();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let a = &alpha[i];
            let row = &mut self.adj[i];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let mut v = x.mul(&p)?;
                if !a.is_zero() && !y.is_zero() {
                    v = v.sub(&a.mul(y)?)?;
                }
                *x = v.div_exact(&self.det);
            }
            let mut v = self.beta[i].mul(&p)?;
            if !a.is_zero() && !pivot_beta.is_zero() {
                v = v.sub(&a.mul(&pivot_beta)?)?;
            }
            self.beta[i] = v.div_exact(&self.det);
        }
        self.det = p;
        self.basic[self.head[r]] = false;
        self.basic[q] = true;
        self.head[r] = q;
        Ok(())
    }

    /// Replaces zero-level artificials by real columns where possible and
    /// reports whether any pivot happened. An artificial that cannot be
    /// exchanged marks a redundant row; its row of `B⁻¹M` is zero, so it
    /// stays basic at zero for the rest of the solve.
    fn drive_out_artificials(&mut self) -> Checked<bool> {
        let mut pivoted = false;
        for r in 0..self.m {
            if self.head[r] < self.n {
                continue;
            }
            let mut candidate = None;
            for j in 0..self.n {
                if self.basic[j] {
                    continue;
                }
                let mut dot = T::from_i64(0);
                for (k, v) in self.columns[j].iter() {
                    dot = dot.add(&self.adj[r][k].mul_i64(v)?)?;
                }
                if !dot.is_zero() {
                    candidate = Some(j);
                    break;
                }
            }
            if let Some(j) = candidate {
                let alpha = self.alpha(j)?;
                self.pivot(r, j, &alpha)?;
                pivoted = true;
            }
        }
        Ok(pivoted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::StandardFormLP;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn dense(m: &[&[i64]], b: &[i64], c: &[i64]) -> StandardFormLP {
        StandardFormLP::from_dense(
            &m.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect::<Vec<_>>(),
            b.iter().map(|&v| q(v)).collect(),
            c.iter().map(|&v| q(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn simple_optimum() {
        let lp = dense(&[&[1, 1]], &[1], &[1, 1]);
        let (value, point) = solve_lp(&lp, Sense::Minimize).unwrap().optimal().unwrap();
        assert_eq!(value, q(1));
        assert!(lp.is_feasible_point(&point));
    }

    #[test]
    fn negative_rhs_is_infeasible() {
        let lp = dense(&[&[1]], &[-1], &[0]);
        match solve_lp(&lp, Sense::Minimize).unwrap() {
            LpOutcome::Infeasible { farkas } => assert!(lp.is_farkas_certificate(&farkas)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_maximum() {
        // x1 - x2 = 0: both can grow together.
        let lp = dense(&[&[1, -1]], &[0], &[1, 1]);
        assert_eq!(
            solve_lp(&lp, Sense::Maximize).unwrap(),
            LpOutcome::Unbounded
        );
        assert_eq!(
            solve_lp(&lp, Sense::Minimize).unwrap().optimal().unwrap().0,
            q(0)
        );
    }

    #[test]
    fn redundant_rows() {
        // Second row is twice the first; third is their sum.
        let lp = dense(
            &[&[1, 1, 0], &[2, 2, 0], &[3, 3, 0]],
            &[2, 4, 6],
            &[1, 2, 0],
        );
        let (value, point) = solve_lp(&lp, Sense::Maximize).unwrap().optimal().unwrap();
        assert_eq!(value, q(4));
        assert_eq!(point, vec![q(0), q(2), q(0)]);
        let lp = dense(&[&[1, 1], &[1, 1]], &[2, 3], &[0, 0]);
        assert!(!solve_lp(&lp, Sense::Minimize).unwrap().is_feasible());
    }

    #[test]
    fn ranges() {
        let lp = dense(&[&[1, 1]], &[1], &[0, 0]);
        assert_eq!(variable_range(&lp, 0).unwrap(), (q(0), Some(q(1))));
        let lp = dense(&[&[1, -1]], &[0], &[0, 0]);
        assert_eq!(variable_range(&lp, 1).unwrap(), (q(0), None));
        let lp = dense(&[&[1]], &[-1], &[0]);
        assert_eq!(variable_range(&lp, 0), Err(Error::InfeasibleSystem));
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 (slacks s1..s3).
        let lp = dense(
            &[&[1, 0, 1, 0, 0], &[0, 2, 0, 1, 0], &[3, 2, 0, 0, 1]],
            &[4, 12, 18],
            &[3, 5, 0, 0, 0],
        );
        let (value, point) = solve_lp(&lp, Sense::Maximize).unwrap().optimal().unwrap();
        assert_eq!(value, q(36));
        assert_eq!(&point[..2], &[q(2), q(6)]);
    }

    #[test]
    fn fractional_optimum() {
        // min x + y s.t. 2x + y = 3, x + 3y = 4 -> x = 1, y = 1 ; then a
        // fractional one: 3x + 3y = 2 -> value 2/3.
        let lp = dense(&[&[2, 1], &[1, 3]], &[3, 4], &[1, 1]);
        let (value, _) = solve_lp(&lp, Sense::Minimize).unwrap().optimal().unwrap();
        assert_eq!(value, q(2));
        let lp = dense(&[&[3, 3]], &[2], &[1, 1]);
        let (value, _) = solve_lp(&lp, Sense::Minimize).unwrap().optimal().unwrap();
        assert_eq!(value, Rational::new(2.into(), 3.into()));
    }

    #[test]
    fn empty_row_set() {
        let lp = dense(&[], &[], &[]);
        assert_eq!(
            solve_lp(&lp, Sense::Minimize).unwrap(),
            LpOutcome::Optimal {
                value: q(0),
                point: vec![]
            }
        );
    }
}
