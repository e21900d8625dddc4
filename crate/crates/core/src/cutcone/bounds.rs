use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{rational::serde_string, Rational};
use crate::metric::{distance_matrix, DistanceMatrix};

use super::realization::{validate_realization, Realization};

/// Which inequality produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// `W / (ceil(v/2) floor(v/2))`, attained exactly by equicut graphs.
    WienerOverEquicut,
    /// `D`: a diametral pair needs `t·D` separating coordinates.
    Diameter,
    /// `W / (v - 1)`, attained exactly by stars.
    WienerOverOrder,
    /// `D + v - 3` (for `v >= 4`), attained exactly by stars.
    DiameterPlusOrder,
}

/// Bounds on the size of an l1-embeddable graph, from its metric alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeBounds {
    #[serde(with = "serde_string")]
    pub lower: Rational,
    #[serde(with = "serde_string")]
    pub upper: Rational,
    pub lower_source: BoundSource,
    pub upper_source: BoundSource,
}

impl SizeBounds {
    pub fn contains(&self, size: &Rational) -> bool {
        &self.lower <= size && size <= &self.upper
    }
}

pub fn equicut_denominator(v: usize) -> u64 {
    (v.div_ceil(2) * (v / 2)) as u64
}

/// `W / (ceil(v/2) floor(v/2))`.
pub fn wiener_lower_bound(d: &DistanceMatrix) -> Rational {
    Rational::new(
        d.wiener().into(),
        equicut_denominator(d.vertex_count()).into(),
    )
}

pub fn size_bounds(g: &Graph) -> Result<SizeBounds> {
    let d = distance_matrix(g)?;
    bounds_from_metric(&d)
}

pub(crate) fn bounds_from_metric(d: &DistanceMatrix) -> Result<SizeBounds> {
    let v = d.vertex_count();
    if v < 2 {
        return Err(Error::TooSmall {
            needed: 2,
            found: v,
        });
    }
    let w = d.wiener();
    let diam = Rational::from_integer(d.diameter().into());

    let wiener_low = wiener_lower_bound(d);
    let (lower, lower_source) = if diam > wiener_low {
        (diam.clone(), BoundSource::Diameter)
    } else {
        (wiener_low, BoundSource::WienerOverEquicut)
    };

    let wiener_high = Rational::new(w.into(), ((v - 1) as u64).into());
    let (upper, upper_source) = if v >= 4 {
        let order_high = diam + Rational::from_integer(((v - 3) as u64).into());
        if order_high < wiener_high {
            (order_high, BoundSource::DiameterPlusOrder)
        } else {
            (wiener_high, BoundSource::WienerOverOrder)
        }
    } else {
        (wiener_high, BoundSource::WienerOverOrder)
    };
    Ok(SizeBounds {
        lower,
        upper,
        lower_source,
        upper_source,
    })
}

/// Size evidence from a realization when no LP can be afforded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PinnedSize {
    /// `n / t` of the realization, an upper bound on the size.
    #[serde(with = "serde_string")]
    pub upper: Rational,
    #[serde(with = "serde_string")]
    pub lower: Rational,
    /// Both bounds meet, so the size is exactly `upper`; they also meet
    /// exactly when the graph is equicut.
    pub pinned: bool,
}

/// Pins the size between an isometric realization and the Wiener lower bound.
pub fn pin_size(g: &Graph, r: &Realization) -> Result<PinnedSize> {
    let report = validate_realization(g, r)?;
    if !report.isometric {
        return Err(Error::VerificationFailed(format!(
            "realization is not isometric, e.g. at pairs {:?}",
            report.mismatched_pairs
        )));
    }
    let d = distance_matrix(g)?;
    if d.vertex_count() < 2 {
        return Err(Error::TooSmall {
            needed: 2,
            found: d.vertex_count(),
        });
    }
    let lower = wiener_lower_bound(&d);
    let upper = r.size_ratio();
    if upper < lower {
        return Err(Error::InternalInconsistency(
            "realization beats the Wiener lower bound".into(),
        ));
    }
    Ok(PinnedSize {
        pinned: upper == lower,
        upper,
        lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::families as fam;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn star_upper_bound() {
        let b = size_bounds(&fam::star(5).unwrap()).unwrap();
        assert_eq!(b.upper, q(4, 1));
    }

    #[test]
    fn hexagon_lower_bound() {
        let b = size_bounds(&fam::cycle(6).unwrap()).unwrap();
        assert_eq!(b.lower, q(3, 1));
        assert_eq!(b.lower_source, BoundSource::WienerOverEquicut);
    }

    #[test]
    fn path_bounds() {
        let b = size_bounds(&fam::path(4).unwrap()).unwrap();
        assert_eq!(b.lower, q(3, 1));
        assert_eq!(b.lower_source, BoundSource::Diameter);
        assert!(b.upper <= q(4, 1));
        assert!(b.contains(&q(3, 1)));
    }

    #[test]
    fn small_graphs() {
        let b = size_bounds(&fam::complete(3).unwrap()).unwrap();
        assert_eq!((b.lower, b.upper), (q(3, 2), q(3, 2)));
        assert!(matches!(
            size_bounds(&fam::complete(1).unwrap()),
            Err(Error::TooSmall { .. })
        ));
    }
}
