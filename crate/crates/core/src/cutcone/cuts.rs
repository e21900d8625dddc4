use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count a [`Cut`] bitmask can describe.
pub const MAX_CUT_VERTICES: usize = 63;

/// A bipartition of `0..v`, stored as the side that does not contain vertex 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    mask: u64,
}

impl Cut {
    /// Canonicalises an arbitrary side: complemented if it contains vertex 0.
    pub fn from_side(v: usize, side: impl IntoIterator<Item = usize>) -> Result<Cut> {
        if v > MAX_CUT_VERTICES {
            return Err(Error::SizeLimitExceeded {
                what: "cut vertices",
                found: v,
                limit: MAX_CUT_VERTICES,
            });
        }
        let full = (1u64 << v) - 1;
        let mut mask = 0u64;
        for x in side {
            if x >= v {
                return Err(Error::InvalidGraph(format!(
                    "cut vertex {x} outside 0..{v}"
                )));
            }
            mask |= 1 << x;
        }
        if mask & 1 == 1 {
            mask = full & !mask;
        }
        if mask == 0 {
            return Err(Error::InvalidGraph(
                "cut side must be a nonempty proper subset".into(),
            ));
        }
        Ok(Cut { mask })
    }

    pub(crate) fn from_mask(mask: u64) -> Cut {
        debug_assert!(mask & 1 == 0 && mask != 0);
        Cut { mask }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask >> x & 1 == 1
    }

    /// Whether the cut separates `a` from `b`; this is the cut semimetric.
    pub fn separates(&self, a: usize, b: usize) -> bool {
        self.contains(a) != self.contains(b)
    }

    pub fn side(&self) -> Vec<usize> {
        (0..64).filter(|&x| self.contains(x)).collect()
    }

    pub fn side_len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Both parts have sizes `floor(v/2)` and `ceil(v/2)`.
    pub fn is_equicut(&self, v: usize) -> bool {
        let s = self.side_len();
        s == v / 2 || s == v.div_ceil(2)
    }
}

impl Serialize for Cut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.side().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cut {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let side = Vec::<usize>::deserialize(d)?;
        if side.iter().any(|&x| x == 0 || x >= MAX_CUT_VERTICES) || side.is_empty() {
            return Err(serde::de::Error::custom(
                "cut side must be a nonempty set of ids in 1..63",
            ));
        }
        Ok(Cut {
            mask: side.iter().fold(0, |m, &x| m | 1 << x),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMode {
    All,
    EquicutOnly,
}

/// Canonical cuts of `0..v` in increasing bitmask order.
///
/// `limit` bounds `v`; the caller picks it per mode (see [`crate::Limits`]).
pub fn generate_cuts(v: usize, mode: CutMode, limit: usize) -> Result<Vec<Cut>> {
    if v > limit.min(MAX_CUT_VERTICES) {
        return Err(Error::SizeLimitExceeded {
            what: "cut generation vertices",
            found: v,
            limit: limit.min(MAX_CUT_VERTICES),
        });
    }
    if v < 2 {
        return Ok(Vec::new());
    }
    let count = 1u64 << (v - 1);
    Ok((1..count)
        .map(|m| Cut::from_mask(m << 1))
        .filter(|c| mode == CutMode::All || c.is_equicut(v))
        .collect())
}
