//! Depth-first branch and bound for nonnegative integer solutions of `Mx = b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::simplex::{solve_lp, LpOutcome, Sense};
use super::{Rational, SparseColumn, StandardFormLP};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000;

#[derive(Clone, Default)]
struct Bounds {
    lower: Vec<(usize, BigInt)>,
    upper: Vec<(usize, BigInt)>,
}

/// A nonnegative integer solution of `Mx = b`, or `None` if there is none.
///
/// Each node solves the LP relaxation (minimising `Σx`) under the branching
/// bounds collected so far, then splits on the lowest-index fractional
/// coordinate, exploring the `x_j >= ceil` side first. Rows are first scaled
/// so the right-hand side is integral. More than `budget` LP solves yields
/// [`Error::NodeBudgetExceeded`], meaning "unknown" rather than "none".
pub fn find_integer_point(lp: &StandardFormLP, budget: u64) -> Result<Option<Vec<BigInt>>> {
    let base = lp.with_integral_rhs()?.into_owned();
    let n = base.cols();
    if !gcd_test(&base) {
        return Ok(None);
    }
    let ones = vec![Rational::one(); n];
    let base = base.with_objective(ones)?;

    let mut stack = vec![Bounds::default()];
    let mut nodes = 0u64;
    while let Some(bounds) = stack.pop() {
        nodes += 1;
        if nodes > budget {
            return Err(Error::NodeBudgetExceeded(budget));
        }
        let node = with_bounds(&base, &bounds);
        let point = match solve_lp(&node, Sense::Minimize)? {
            LpOutcome::Optimal { point, .. } => point,
            LpOutcome::Infeasible { .. } => continue,
            LpOutcome::Unbounded => {
                return Err(Error::InternalInconsistency(
                    "nonnegative sum unbounded below".into(),
                ))
            }
        };
        match (0..n).find(|&j| !point[j].is_integer()) {
            None => return Ok(Some(point[..n].iter().map(|q| q.to_integer()).collect())),
            Some(j) => {
                let floor = point[j].floor().to_integer();
                let ceil = point[j].ceil().to_integer();
                let mut down = bounds.clone();
                down.upper.push((j, floor));
                let mut up = bounds;
                up.lower.push((j, ceil));
                stack.push(down);
                stack.push(up);
            }
        }
    }
    Ok(None)
}

/// Each row's coefficient gcd must divide its right-hand side.
fn gcd_test(lp: &StandardFormLP) -> bool {
    let mut gcd = vec![0i64; lp.rows()];
    for col in &lp.columns {
        for (r, v) in col.iter() {
            gcd[r] = gcd[r].gcd(&v);
        }
    }
    gcd.iter().zip(lp.rhs()).all(|(&g, b)| {
        let b = b.to_integer();
        if g == 0 {
            b.is_zero()
        } else {
            (b % BigInt::from(g)).is_zero()
        }
    })
}

/// Adds `x_j + s = u` for upper bounds and `x_j - s = l` for lower bounds.
fn with_bounds(base: &StandardFormLP, bounds: &Bounds) -> StandardFormLP {
    let mut lp = base.clone();
    for (sign, list) in [(1i64, &bounds.upper), (-1i64, &bounds.lower)] {
        for (j, value) in list {
            let slack = lp.push_column(SparseColumn::default(), Rational::zero());
            lp.push_row(
                &[(*j, 1), (slack, sign)],
                Rational::from_integer(value.clone()),
            );
        }
    }
    lp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn dense(m: &[&[i64]], b: &[i64]) -> StandardFormLP {
        let cols = m.first().map_or(0, |r| r.len());
        StandardFormLP::from_dense(
            &m.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect::<Vec<_>>(),
            b.iter().map(|&v| q(v)).collect(),
            vec![q(0); cols],
        )
        .unwrap()
    }

    #[test]
    fn trivial_point() {
        let lp = dense(&[&[1, 1]], &[2]);
        let x = find_integer_point(&lp, 10).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], BigInt::from(2));
    }

    #[test]
    fn parity_blocks_integer_points() {
        // 2x + 2y = 3 has rational but no integer solutions.
        let lp = dense(&[&[2, 2]], &[3]);
        assert_eq!(find_integer_point(&lp, 10).unwrap(), None);
    }

    #[test]
    fn needs_branching() {
        // x + y = 1, x + z = 1, y + z = 1 has only x = y = z = 1/2.
        let lp = dense(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]], &[1, 1, 1]);
        assert_eq!(find_integer_point(&lp, 100).unwrap(), None);
        // Doubling the right-hand side admits (1, 1, 1).
        let lp = dense(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]], &[2, 2, 2]);
        let x = find_integer_point(&lp, 100).unwrap().unwrap();
        assert_eq!(x, vec![BigInt::from(1); 3]);
    }

    #[test]
    fn budget_is_reported() {
        let lp = dense(&[&[1, 1, 0, 1], &[1, 0, 1, 1], &[0, 1, 1, 1]], &[1, 1, 1]);
        // Solvable (x4 = 1) but a zero budget cannot finish.
        assert_eq!(
            find_integer_point(&lp, 0),
            Err(Error::NodeBudgetExceeded(0))
        );
        assert!(find_integer_point(&lp, 100).unwrap().is_some());
    }

    #[test]
    fn rational_rhs_is_scaled() {
        let lp = StandardFormLP::from_columns(
            1,
            vec![SparseColumn::new([(0, 1)])],
            vec![Rational::new(1.into(), 2.into())],
            vec![q(0)],
        )
        .unwrap();
        assert_eq!(find_integer_point(&lp, 10).unwrap(), None);
    }
}
