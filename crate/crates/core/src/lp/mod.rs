//! Exact linear programming over the rationals.
//!
//! Everything here is exact: constraint coefficients are stored as machine
//! integers after per-row scaling, right-hand sides and objectives as
//! [`Rational`]s. No floating point is involved anywhere.

mod float;
mod integer;
pub mod rational;
mod simplex;

pub use integer::{find_integer_point, DEFAULT_NODE_BUDGET};
pub use rational::{format_rational, parse_rational, Rational};
pub use simplex::{solve_lp, variable_range, LpOutcome, Sense};
pub(crate) use simplex::{solve_lp_warm, Basis};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// One column of the constraint matrix, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseColumn {
    pub rows: Vec<u32>,
    pub values: Vec<i64>,
}

impl SparseColumn {
    pub fn new(entries: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut col = SparseColumn::default();
        for (r, v) in entries {
            if v != 0 {
                col.rows.push(r as u32);
                col.values.push(v);
            }
        }
        col
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.rows
            .iter()
            .zip(&self.values)
            .map(|(&r, &v)| (r as usize, v))
    }
}

/// `min/max c·x  s.t.  M x = b,  x >= 0`.
///
/// Rows may be linearly dependent. Each row of `M` is kept with integer
/// coefficients; [`StandardFormLP::from_dense`] scales rational rows by the
/// lcm of their denominators, which leaves the feasible set unchanged.
#[derive(Clone, Debug)]
pub struct StandardFormLP {
    rows: usize,
    columns: Vec<SparseColumn>,
    rhs: Vec<Rational>,
    objective: Vec<Rational>,
    /// Factor each original row was multiplied by.
    row_scale: Vec<BigInt>,
}

impl StandardFormLP {
    pub fn from_dense(
        matrix: &[Vec<Rational>],
        rhs: Vec<Rational>,
        objective: Vec<Rational>,
    ) -> Result<Self> {
        let rows = matrix.len();
        if rhs.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but {} right-hand side entries",
                rows,
                rhs.len()
            )));
        }
        let cols = objective.len();
        if let Some(bad) = matrix.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, objective has {cols}",
                matrix[bad].len()
            )));
        }
        let mut columns = vec![SparseColumn::default(); cols];
        let mut scaled_rhs = Vec::with_capacity(rows);
        let mut row_scale = Vec::with_capacity(rows);
        for (i, row) in matrix.iter().enumerate() {
            let scale = row
                .iter()
                .chain(std::iter::once(&rhs[i]))
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            for (j, q) in row.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let v = (q * Rational::from_integer(scale.clone())).to_integer();
                let v = v.to_i64().ok_or(Error::CoefficientOverflow)?;
                columns[j].rows.push(i as u32);
                columns[j].values.push(v);
            }
            scaled_rhs.push(&rhs[i] * Rational::from_integer(scale.clone()));
            row_scale.push(scale);
        }
        Ok(StandardFormLP {
            rows,
            columns,
            rhs: scaled_rhs,
            objective,
            row_scale,
        })
    }

    /// Builds directly from integer columns; no row scaling is applied.
    pub fn from_columns(
        rows: usize,
        columns: Vec<SparseColumn>,
        rhs: Vec<Rational>,
        objective: Vec<Rational>,
    ) -> Result<Self> {
        if rhs.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but {} right-hand side entries",
                rows,
                rhs.len()
            )));
        }
        if objective.len() != columns.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns but {} objective entries",
                columns.len(),
                objective.len()
            )));
        }
        if columns
            .iter()
            .flat_map(|c| &c.rows)
            .any(|&r| r as usize >= rows)
        {
            return Err(Error::DimensionMismatch(
                "column entry outside row range".into(),
            ));
        }
        Ok(StandardFormLP {
            rows,
            columns,
            rhs,
            objective,
            row_scale: vec![BigInt::one(); rows],
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseColumn {
        &self.columns[j]
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    /// Same constraints, different objective.
    pub fn with_objective(&self, objective: Vec<Rational>) -> Result<Self> {
        if objective.len() != self.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns but {} objective entries",
                self.cols(),
                objective.len()
            )));
        }
        Ok(StandardFormLP {
            objective,
            ..self.clone()
        })
    }

    /// Keeps only the listed columns, in the given order.
    pub fn restrict_columns(&self, keep: &[usize]) -> Self {
        StandardFormLP {
            rows: self.rows,
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
            rhs: self.rhs.clone(),
            objective: keep.iter().map(|&j| self.objective[j].clone()).collect(),
            row_scale: self.row_scale.clone(),
        }
    }

    /// Multiplies every right-hand side by `factor`.
    pub fn scale_rhs(&mut self, factor: &Rational) {
        for b in &mut self.rhs {
            *b = &*b * factor;
        }
    }

    /// Appends a row `Σ coeffs·x = rhs`, extending existing columns.
    pub(crate) fn push_row(&mut self, coeffs: &[(usize, i64)], rhs: Rational) {
        let r = self.rows as u32;
        for &(j, v) in coeffs {
            if v != 0 {
                self.columns[j].rows.push(r);
                self.columns[j].values.push(v);
            }
        }
        self.rhs.push(rhs);
        self.row_scale.push(BigInt::one());
        self.rows += 1;
    }

    pub(crate) fn push_column(&mut self, column: SparseColumn, cost: Rational) -> usize {
        self.columns.push(column);
        self.objective.push(cost);
        self.columns.len() - 1
    }

    /// Same feasible set with every right-hand side integral: each row is
    /// multiplied by the denominator of its right-hand side.
    pub(crate) fn with_integral_rhs(&self) -> Result<std::borrow::Cow<'_, Self>> {
        if self.rhs.iter().all(|b| b.is_integer()) {
            return Ok(std::borrow::Cow::Borrowed(self));
        }
        let mut scaled = self.clone();
        let factors: Vec<Option<i64>> = self
            .rhs
            .iter()
            .map(|b| (!b.denom().is_one()).then(|| b.denom().to_i64()).flatten())
            .collect();
        if self
            .rhs
            .iter()
            .zip(&factors)
            .any(|(b, f)| !b.denom().is_one() && f.is_none())
        {
            return Err(Error::CoefficientOverflow);
        }
        for col in &mut scaled.columns {
            for (r, v) in col.rows.iter().zip(col.values.iter_mut()) {
                if let Some(f) = factors[*r as usize] {
                    *v = v.checked_mul(f).ok_or(Error::CoefficientOverflow)?;
                }
            }
        }
        for (i, f) in factors.iter().enumerate() {
            if let Some(f) = f {
                scaled.rhs[i] = &self.rhs[i] * Rational::from_integer((*f).into());
                scaled.row_scale[i] *= *f;
            }
        }
        Ok(std::borrow::Cow::Owned(scaled))
    }

    /// `M x` for a rational point, in scaled row units.
    fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (col, xj) in self.columns.iter().zip(x) {
            if xj.is_zero() {
                continue;
            }
            for (r, v) in col.iter() {
                out[r] += xj * Rational::from_integer(BigInt::from(v));
            }
        }
        out
    }

    /// Exact check of `M x = b, x >= 0`.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.cols() && x.iter().all(|q| !q.is_negative()) && self.apply(x) == self.rhs
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(x)
            .map(|(c, v)| c * v)
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Verifies a Farkas certificate `y` (in original row units):
    /// `yᵀM <= 0` column-wise and `yᵀb > 0`, which proves infeasibility.
    pub fn is_farkas_certificate(&self, y: &[Rational]) -> bool {
        if y.len() != self.rows {
            return false;
        }
        // Convert to scaled row units: y' = y / s.
        let ys: Vec<Rational> = y
            .iter()
            .zip(&self.row_scale)
            .map(|(yi, s)| yi / Rational::from_integer(s.clone()))
            .collect();
        let columns_ok = self.columns.iter().all(|col| {
            let dot = col
                .iter()
                .map(|(r, v)| &ys[r] * Rational::from_integer(BigInt::from(v)))
                .fold(Rational::zero(), |a, b| a + b);
            !dot.is_positive()
        });
        let rhs_dot = ys
            .iter()
            .zip(&self.rhs)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |a, b| a + b);
        columns_ok && rhs_dot.is_positive()
    }
}
