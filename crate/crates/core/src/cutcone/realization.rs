//! Binary matrices whose row Hamming distances are a scaled graph metric.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::distance_matrix;

/// `v × n` 0/1 matrix together with its scale `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    rows: usize,
    cols: usize,
    bits: Vec<u8>,
    scale: u64,
}

impl Realization {
    pub fn new(rows: Vec<Vec<u8>>, scale: u64) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "rows have different lengths".into(),
            ));
        }
        if rows.iter().flatten().any(|&b| b > 1) {
            return Err(Error::DimensionMismatch("entries must be 0 or 1".into()));
        }
        if scale == 0 {
            return Err(Error::DimensionMismatch("scale must be positive".into()));
        }
        Ok(Realization {
            rows: rows.len(),
            cols,
            bits: rows.into_iter().flatten().collect(),
            scale,
        })
    }

    /// Builds from columns given as per-vertex bit vectors.
    pub fn from_columns(v: usize, columns: &[Vec<u8>], scale: u64) -> Result<Self> {
        if columns.iter().any(|c| c.len() != v) {
            return Err(Error::DimensionMismatch(
                "column length differs from v".into(),
            ));
        }
        let rows = (0..v)
            .map(|x| columns.iter().map(|c| c[x]).collect())
            .collect();
        Realization::new(rows, scale)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.bits[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.bits[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn hamming(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .filter(|(x, y)| x != y)
            .count()
    }

    pub fn column_sum(&self, col: usize) -> usize {
        (0..self.rows).map(|r| self.get(r, col) as usize).sum()
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.row(row).iter().map(|&b| b as usize).sum()
    }

    pub fn complement_column(&mut self, col: usize) {
        for r in 0..self.rows {
            self.bits[r * self.cols + col] ^= 1;
        }
    }

    /// `n / t`, the size this realization witnesses.
    pub fn size_ratio(&self) -> crate::lp::Rational {
        crate::lp::Rational::new(self.cols.into(), self.scale.into())
    }

    /// Same metric at scale `k·t`, each column repeated `k` times.
    pub fn rescaled(&self, k: u64) -> Result<Realization> {
        if k == 0 {
            return Err(Error::DimensionMismatch(
                "scale factor must be positive".into(),
            ));
        }
        let rows = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .flat_map(|&b| std::iter::repeat_n(b, k as usize))
                    .collect()
            })
            .collect();
        Realization::new(rows, self.scale * k)
    }

    /// Realization of the Cartesian product: row `(a, b)`, numbered
    /// `a·v' + b`, is row `a` of `self` followed by row `b` of `other`, both
    /// first brought to the least common scale.
    pub fn product(&self, other: &Realization) -> Result<Realization> {
        use num_integer::Integer;
        let t = self.scale.lcm(&other.scale);
        let left = self.rescaled(t / self.scale)?;
        let right = other.rescaled(t / other.scale)?;
        let mut rows = Vec::with_capacity(self.rows * other.rows);
        for a in 0..left.rows {
            for b in 0..right.rows {
                rows.push([left.row(a), right.row(b)].concat());
            }
        }
        Realization::new(rows, t)
    }

    /// Graph on the rows joining pairs at Hamming distance exactly `t`.
    pub fn unit_distance_graph(&self) -> Result<Graph> {
        let t = self.scale as usize;
        Graph::from_fn(self.rows, |a, b| self.hamming(a, b) == t)
    }

    /// Header `v n t`, then one `0`/`1` line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.scale);
        for r in 0..self.rows {
            for &b in self.row(r) {
                out.push(if b == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Realization> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let (line, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing header".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(line, e.to_string()))?;
        let [v, n, t] = nums[..] else {
            return Err(parse_err(line, "header must be `v n t`".into()));
        };
        let mut rows = Vec::with_capacity(v as usize);
        for (line, content) in lines {
            let row: Vec<u8> = content
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(parse_err(line, format!("unexpected character `{other}`"))),
                })
                .collect::<Result<_>>()?;
            if row.len() as u64 != n {
                return Err(parse_err(
                    line,
                    format!("expected {n} columns, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() as u64 != v {
            return Err(parse_err(
                0,
                format!("expected {v} rows, found {}", rows.len()),
            ));
        }
        if v == 0 {
            return Err(parse_err(0, "realization has no rows".into()));
        }
        Realization::new(rows, t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub isometric: bool,
    pub equicut_columns: bool,
    pub constant_row_sums: Option<usize>,
    /// Pairs whose Hamming distance differs from `t·d`, up to a small cap.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatched_pairs: Vec<(usize, usize)>,
}

const MISMATCH_REPORT_CAP: usize = 20;

/// Checks `hamming = t·d` for every pair, balanced column sums and constant
/// row weight.
pub fn validate_realization(g: &Graph, r: &Realization) -> Result<RealizationReport> {
    let v = g.vertex_count();
    if r.rows() != v {
        return Err(Error::DimensionMismatch(format!(
            "realization has {} rows for a graph on {v} vertices",
            r.rows()
        )));
    }
    let d = distance_matrix(g)?;
    let t = r.scale() as usize;
    let mut mismatched = Vec::new();
    let mut isometric = true;
    for (a, b) in d.pairs() {
        if r.hamming(a, b) != t * d.get(a, b) as usize {
            isometric = false;
            if mismatched.len() < MISMATCH_REPORT_CAP {
                mismatched.push((a, b));
            }
        }
    }
    let equicut_columns = (0..r.cols()).all(|c| {
        let s = r.column_sum(c);
        s == v / 2 || s == v.div_ceil(2)
    });
    let w0 = r.row_weight(0);
    let constant_row_sums = (1..v).all(|x| r.row_weight(x) == w0).then_some(w0);
    Ok(RealizationReport {
        isometric,
        equicut_columns,
        constant_row_sums,
        mismatched_pairs: mismatched,
    })
}

/// Compact multiset of columns up to complementation, for comparing
/// realizations that differ only by column order and orientation.
pub fn column_signature(r: &Realization) -> Vec<String> {
    let mut cols: Vec<String> = (0..r.cols())
        .map(|c| {
            let col = r.column(c);
            let flip = col.first().copied().unwrap_or(0);
            col.iter().fold(String::new(), |mut s, &b| {
                let _ = write!(s, "{}", b ^ flip);
                s
            })
        })
        .collect();
    cols.sort();
    cols
}
