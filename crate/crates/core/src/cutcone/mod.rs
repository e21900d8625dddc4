//! Cut-cone membership of graph metrics.
//!
//! A connected graph is l1-embeddable exactly when its distance matrix is a
//! nonnegative combination `Σ λ_s δ_s` of cut semimetrics. [`CutSystem`] holds
//! that linear system for one graph (one row per vertex pair, one column per
//! cut) and answers every question about it: membership, size, rigidity,
//! equicut status and scale.

mod bounds;
mod cuts;
mod realization;

pub use bounds::{
    equicut_denominator, pin_size, size_bounds, wiener_lower_bound, BoundSource, PinnedSize,
    SizeBounds,
};
pub use cuts::{generate_cuts, Cut, CutMode, MAX_CUT_VERTICES};
pub use realization::{column_signature, validate_realization, Realization, RealizationReport};

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{
    self, find_integer_point, format_rational, solve_lp, solve_lp_warm, variable_range, Basis,
    LpOutcome, Rational, Sense, SparseColumn, StandardFormLP,
};
use crate::metric::{distance_matrix, DistanceMatrix};
use crate::Limits;

/// Outcome of the minimum-size decomposition LP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `point[j]` is the multiplicity of cut `j` in a minimum-size vertex solution.
    Member {
        size: Rational,
        point: Vec<Rational>,
    },
    /// Farkas vector over vertex pairs: nonpositive on every cut, positive on
    /// the distance matrix.
    NotMember { farkas: Vec<Rational> },
}

/// Row index of the unordered pair `a < b`.
fn pair_index(v: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    a * v - a * (a + 1) / 2 + (b - a - 1)
}

fn cut_column(v: usize, cut: &Cut) -> SparseColumn {
    let mut entries = Vec::with_capacity(cut.side_len() * (v - cut.side_len()));
    for a in 0..v {
        for b in a + 1..v {
            if cut.separates(a, b) {
                entries.push((pair_index(v, a, b), 1));
            }
        }
    }
    SparseColumn::new(entries)
}

fn decomposition_lp(dist: &DistanceMatrix, cuts: &[Cut]) -> Result<StandardFormLP> {
    let v = dist.vertex_count();
    let rows = v * (v - 1) / 2;
    let rhs = dist
        .pairs()
        .map(|(a, b)| Rational::from_integer(dist.get(a, b).into()))
        .collect();
    StandardFormLP::from_columns(
        rows,
        cuts.iter().map(|c| cut_column(v, c)).collect(),
        rhs,
        vec![Rational::one(); cuts.len()],
    )
}

/// Scales to try, in order: 1, then every even number up to `max(2, v - 2)`.
pub fn scale_candidates(v: usize) -> Vec<u64> {
    let top = (v.saturating_sub(2)).max(2) as u64;
    std::iter::once(1).chain((2..=top).step_by(2)).collect()
}

fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// The cut decomposition system of one connected graph.
pub struct CutSystem {
    dist: DistanceMatrix,
    bipartite: bool,
    cuts: Vec<Cut>,
    lp: StandardFormLP,
    limits: Limits,
    membership: OnceLock<Membership>,
    basis: OnceLock<Option<Basis>>,
    rigid: OnceLock<bool>,
    equicut: OnceLock<bool>,
}

fn cached(cell: &OnceLock<bool>, compute: impl FnOnce() -> Result<bool>) -> Result<bool> {
    if let Some(&b) = cell.get() {
        return Ok(b);
    }
    let b = compute()?;
    Ok(*cell.get_or_init(|| b))
}

impl CutSystem {
    pub fn new(g: &Graph, limits: &Limits) -> Result<Self> {
        let dist = distance_matrix(g)?;
        let v = g.vertex_count();
        if v < 2 {
            return Err(Error::TooSmall {
                needed: 2,
                found: v,
            });
        }
        let cuts = generate_cuts(v, CutMode::All, limits.cut_limit)?;
        let lp = decomposition_lp(&dist, &cuts)?;
        Ok(CutSystem {
            dist,
            bipartite: g.is_bipartite(),
            cuts,
            lp,
            limits: limits.clone(),
            membership: OnceLock::new(),
            basis: OnceLock::new(),
            rigid: OnceLock::new(),
            equicut: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.dist.vertex_count()
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn lp(&self) -> &StandardFormLP {
        &self.lp
    }

    /// Minimum of `Σλ` over all decompositions, or an infeasibility certificate.
    pub fn membership(&self) -> Result<&Membership> {
        if let Some(m) = self.membership.get() {
            return Ok(m);
        }
        let (outcome, basis) = solve_lp_warm(&self.lp, Sense::Minimize, None)?;
        self.basis.get_or_init(|| basis);
        let m = match outcome {
            LpOutcome::Optimal { value, point } => Membership::Member { size: value, point },
            LpOutcome::Infeasible { farkas } => Membership::NotMember { farkas },
            LpOutcome::Unbounded => {
                return Err(Error::InternalInconsistency(
                    "decomposition size unbounded below".into(),
                ))
            }
        };
        Ok(self.membership.get_or_init(|| m))
    }

    pub fn is_l1(&self) -> Result<bool> {
        Ok(matches!(self.membership()?, Membership::Member { .. }))
    }

    fn member(&self) -> Result<(&Rational, &[Rational])> {
        match self.membership()? {
            Membership::Member { size, point } => Ok((size, point)),
            Membership::NotMember { .. } => Err(Error::NotL1Graph),
        }
    }

    /// Exact size: the LP minimum of `Σλ`. Every rational decomposition
    /// scales by a common denominator to an integer one, so this equals the
    /// infimum of `n/t` over hypercube embeddings.
    pub fn size(&self) -> Result<Rational> {
        Ok(self.member()?.0.clone())
    }

    /// Support of the minimum-size solution, in cut order.
    pub fn min_size_decomposition(&self) -> Result<Vec<(Cut, Rational)>> {
        let (_, point) = self.member()?;
        Ok(self
            .cuts
            .iter()
            .zip(point)
            .filter(|(_, l)| l.is_positive())
            .map(|(c, l)| (*c, l.clone()))
            .collect())
    }

    /// Whether the decomposition polytope is a single point.
    ///
    /// The minimum-size solution `p` is a basic solution, so its support
    /// columns are independent. Any other feasible point would therefore
    /// have to use a cut outside that support, which one more LP (maximise
    /// the weight outside the support) detects.
    pub fn is_rigid(&self) -> Result<bool> {
        cached(&self.rigid, || self.compute_rigid())
    }

    fn compute_rigid(&self) -> Result<bool> {
        let (_, point) = self.member()?;
        let outside: Vec<Rational> = point
            .iter()
            .map(|x| {
                if x.is_zero() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        if outside.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        let probe = self.lp.with_objective(outside)?;
        let warm = self.basis.get().and_then(|b| b.as_deref());
        match solve_lp_warm(&probe, Sense::Maximize, warm)?.0 {
            LpOutcome::Optimal { value, .. } => Ok(value.is_zero()),
            LpOutcome::Unbounded => Ok(false),
            LpOutcome::Infeasible { .. } => Err(Error::InternalInconsistency(
                "feasible system became infeasible".into(),
            )),
        }
    }

    /// Rigidity by the range of every cut variable; stops at the first
    /// variable whose minimum and maximum differ.
    pub fn is_rigid_by_ranges(&self) -> Result<bool> {
        self.member()?;
        for j in 0..self.cuts.len() {
            let (min, max) = variable_range(&self.lp, j)?;
            if max.as_ref() != Some(&min) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Feasibility with every non-equicut multiplicity forced to zero.
    pub fn equicut_feasible(&self) -> Result<bool> {
        let v = self.vertex_count();
        let keep: Vec<usize> = (0..self.cuts.len())
            .filter(|&j| self.cuts[j].is_equicut(v))
            .collect();
        Ok(solve_lp(&self.lp.restrict_columns(&keep), Sense::Minimize)?.is_feasible())
    }

    /// Whether the size meets the Wiener lower bound `W / (ceil(v/2) floor(v/2))`.
    pub fn wiener_tight(&self) -> Result<bool> {
        Ok(*self.member()?.0 == wiener_lower_bound(&self.dist))
    }

    /// Equicut status, computed both by restricted feasibility and by
    /// tightness of the Wiener bound; the two must agree.
    pub fn is_equicut(&self) -> Result<bool> {
        cached(&self.equicut, || self.compute_equicut())
    }

    fn compute_equicut(&self) -> Result<bool> {
        let tight = self.wiener_tight()?;
        let restricted = self.equicut_feasible()?;
        if tight != restricted {
            return Err(Error::InternalInconsistency(format!(
                "equicut tests disagree: Wiener bound tight = {tight}, \
                 equicut-only system feasible = {restricted}"
            )));
        }
        Ok(tight)
    }

    /// A nonnegative integer `λ` with `t·d = Σ λ_s δ_s`, if one exists.
    pub fn integer_decomposition(&self, t: u64) -> Result<Option<Vec<(Cut, BigInt)>>> {
        let mut lp = self.lp.clone();
        lp.scale_rhs(&Rational::from_integer(t.into()));
        Ok(find_integer_point(&lp, self.limits.node_budget)?.map(|x| {
            self.cuts
                .iter()
                .zip(x)
                .filter(|(_, k)| k.is_positive())
                .map(|(c, k)| (*c, k))
                .collect()
        }))
    }

    /// Smallest admissible `t` such that `t·d` has a nonnegative integer
    /// decomposition.
    ///
    /// Shortcuts: odd `t` is impossible for non-bipartite graphs (Hamming
    /// distance parity), and `t` works outright when it clears the
    /// denominators of the minimum-size solution. For rigid graphs that
    /// solution is the only one, so no search is needed at all.
    pub fn scale(&self) -> Result<u64> {
        let (_, point) = self.member()?;
        let rigid = self.is_rigid()?;
        let denom = lcm_of_denominators(point);
        let mut inconclusive = false;
        for t in scale_candidates(self.vertex_count()) {
            if t % 2 == 1 && !self.bipartite {
                continue;
            }
            if (BigInt::from(t) % &denom).is_zero() {
                return if inconclusive {
                    Err(Error::ScaleSearchInconclusive)
                } else {
                    Ok(t)
                };
            }
            if rigid {
                continue;
            }
            match self.integer_decomposition(t) {
                Ok(Some(_)) if !inconclusive => return Ok(t),
                Ok(Some(_)) => return Err(Error::ScaleSearchInconclusive),
                Ok(None) => {}
                Err(Error::NodeBudgetExceeded(_)) => inconclusive = true,
                Err(e) => return Err(e),
            }
        }
        if inconclusive {
            Err(Error::ScaleSearchInconclusive)
        } else {
            Err(Error::InternalInconsistency(
                "no admissible scale admits an integer decomposition".into(),
            ))
        }
    }

    pub fn certificate(&self) -> Result<Option<EmbeddingCertificate>> {
        if !self.is_l1()? {
            return Ok(None);
        }
        Ok(Some(EmbeddingCertificate {
            size: self.size()?,
            lambda: self.min_size_decomposition()?,
            scale: self.scale()?,
            rigid: self.is_rigid()?,
            equicut: self.is_equicut()?,
        }))
    }
}

/// A minimum-size cut decomposition with the graph's derived invariants.
///
/// `scale` is the scale of the graph. The multiplicities in `lambda` realize
/// the size, and may need a larger common denominator than `scale` (for
/// example `K_5`); [`EmbeddingCertificate::realization_scale`] gives it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub lambda: Vec<(Cut, Rational)>,
    pub size: Rational,
    pub scale: u64,
    pub rigid: bool,
    pub equicut: bool,
}

impl EmbeddingCertificate {
    /// Least `t` with every `t·λ_s` integral.
    pub fn realization_scale(&self) -> u64 {
        lcm_of_denominators(self.lambda.iter().map(|(_, l)| l))
            .to_u64()
            .expect("denominator fits in u64")
    }

    /// `(t, t·λ)` with `gcd(t, t·λ_s) = 1`.
    pub fn integer_form(&self) -> (u64, Vec<(Cut, u64)>) {
        let t = self.realization_scale();
        let tq = Rational::from_integer(t.into());
        let ints: Vec<(Cut, u64)> = self
            .lambda
            .iter()
            .map(|(c, l)| {
                (
                    *c,
                    (l * &tq).to_integer().to_u64().expect("small multiplicity"),
                )
            })
            .collect();
        (t, ints)
    }

    /// Exact check that `Σ λ_s δ_s` is the distance matrix of `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let d = distance_matrix(g)?;
        let v = g.vertex_count();
        if self
            .lambda
            .iter()
            .any(|(c, l)| !l.is_positive() || c.side().iter().any(|&x| x >= v))
        {
            return Err(Error::CertificateMismatch(
                "multiplicities must be positive and cuts inside the vertex set".into(),
            ));
        }
        for (a, b) in d.pairs() {
            let sum = self
                .lambda
                .iter()
                .filter(|(c, _)| c.separates(a, b))
                .fold(Rational::zero(), |acc, (_, l)| acc + l);
            if sum != Rational::from_integer(d.get(a, b).into()) {
                return Err(Error::CertificateMismatch(format!(
                    "pair ({a}, {b}): decomposition gives {}, distance is {}",
                    format_rational(&sum),
                    d.get(a, b)
                )));
            }
        }
        let total = self
            .lambda
            .iter()
            .fold(Rational::zero(), |acc, (_, l)| acc + l);
        if total != self.size {
            return Err(Error::CertificateMismatch(
                "size is not the sum of multiplicities".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

impl Serialize for EmbeddingCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct CutEntry<'a> {
            side: Vec<usize>,
            #[serde(with = "lp::rational::serde_string")]
            lambda: &'a Rational,
        }
        #[derive(Serialize)]
        struct Json<'a> {
            #[serde(with = "lp::rational::serde_string")]
            size: &'a Rational,
            scale: u64,
            rigid: bool,
            equicut: bool,
            cuts: Vec<CutEntry<'a>>,
        }
        Json {
            size: &self.size,
            scale: self.scale,
            rigid: self.rigid,
            equicut: self.equicut,
            cuts: self
                .lambda
                .iter()
                .map(|(c, l)| CutEntry {
                    side: c.side(),
                    lambda: l,
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Full certificate, or `None` when the graph is not l1-embeddable.
pub fn l1_certificate(g: &Graph, limits: &Limits) -> Result<Option<EmbeddingCertificate>> {
    CutSystem::new(g, limits)?.certificate()
}

pub fn size(g: &Graph, limits: &Limits) -> Result<Rational> {
    CutSystem::new(g, limits)?.size()
}

pub fn scale(g: &Graph, limits: &Limits) -> Result<u64> {
    CutSystem::new(g, limits)?.scale()
}

pub fn is_rigid(g: &Graph, limits: &Limits) -> Result<bool> {
    CutSystem::new(g, limits)?.is_rigid()
}

pub fn is_equicut(g: &Graph, limits: &Limits) -> Result<bool> {
    CutSystem::new(g, limits)?.is_equicut()
}

/// Equicut-only decomposition, reachable up to `limits.equicut_limit`
/// vertices. A `None` answer only says that no equicut decomposition exists;
/// it says nothing about l1-embeddability.
pub fn equicut_decomposition(g: &Graph, limits: &Limits) -> Result<Option<Vec<(Cut, Rational)>>> {
    let dist = distance_matrix(g)?;
    let v = g.vertex_count();
    if v < 2 {
        return Err(Error::TooSmall {
            needed: 2,
            found: v,
        });
    }
    let cuts = generate_cuts(v, CutMode::EquicutOnly, limits.equicut_limit)?;
    let lp = decomposition_lp(&dist, &cuts)?;
    Ok(solve_lp(&lp, Sense::Minimize)?.optimal().map(|(_, point)| {
        cuts.iter()
            .zip(point)
            .filter(|(_, l)| l.is_positive())
            .map(|(c, l)| (*c, l))
            .collect()
    }))
}

/// Hypercube realization with `t·λ_s` copies of each support cut's
/// indicator column, at the certificate's realization scale.
pub fn realization_from_certificate(g: &Graph, cert: &EmbeddingCertificate) -> Result<Realization> {
    cert.verify(g)?;
    let (t, ints) = cert.integer_form();
    realization_from_integer(g.vertex_count(), &ints, t)
}

pub(crate) fn realization_from_integer(
    v: usize,
    ints: &[(Cut, u64)],
    t: u64,
) -> Result<Realization> {
    let mut columns = Vec::new();
    for (cut, k) in ints {
        let col: Vec<u8> = (0..v).map(|x| cut.contains(x) as u8).collect();
        for _ in 0..*k {
            columns.push(col.clone());
        }
    }
    if columns.is_empty() {
        return Realization::new(vec![Vec::new(); v], t);
    }
    Realization::from_columns(v, &columns, t)
}

/// Realization at a prescribed scale via integer search, if one exists.
pub fn realization_at_scale(g: &Graph, t: u64, limits: &Limits) -> Result<Option<Realization>> {
    let system = CutSystem::new(g, limits)?;
    if !system.is_l1()? {
        return Err(Error::NotL1Graph);
    }
    let Some(ints) = system.integer_decomposition(t)? else {
        return Ok(None);
    };
    let ints: Vec<(Cut, u64)> = ints
        .into_iter()
        .map(|(c, k)| (c, k.to_u64().expect("small multiplicity")))
        .collect();
    realization_from_integer(g.vertex_count(), &ints, t).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::families as fam;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn pair_index_follows_pair_order() {
        for v in 2..8 {
            let d = distance_matrix(&fam::complete(v).unwrap()).unwrap();
            for (k, (a, b)) in d.pairs().enumerate() {
                assert_eq!(pair_index(v, a, b), k);
            }
        }
    }

    #[test]
    fn scale_candidates_are_one_then_even() {
        assert_eq!(scale_candidates(3), vec![1, 2]);
        assert_eq!(scale_candidates(8), vec![1, 2, 4, 6]);
    }

    #[test]
    fn k23_has_checked_farkas_vector() {
        let system = CutSystem::new(&fam::complete_bipartite(2, 3).unwrap(), &limits()).unwrap();
        match system.membership().unwrap() {
            Membership::NotMember { farkas } => assert!(system.lp().is_farkas_certificate(farkas)),
            Membership::Member { .. } => panic!("K_{{2,3}} is not l1"),
        }
        assert_eq!(system.size(), Err(Error::NotL1Graph));
        assert_eq!(system.certificate().unwrap(), None);
    }

    #[test]
    fn complete_graph_certificate() {
        let g = fam::complete(5).unwrap();
        let cert = l1_certificate(&g, &limits()).unwrap().unwrap();
        assert_eq!(format_rational(&cert.size), "5/3");
        assert_eq!(cert.scale, 2);
        assert!(!cert.rigid);
        assert!(cert.equicut);
        cert.verify(&g).unwrap();
        let r = realization_from_certificate(&g, &cert).unwrap();
        assert!(validate_realization(&g, &r).unwrap().isometric);
        assert_eq!(r.size_ratio(), cert.size);
    }

    #[test]
    fn rigidity_tests_agree() {
        for g in [
            fam::cycle(5).unwrap(),
            fam::complete(4).unwrap(),
            fam::star(4).unwrap(),
            fam::cocktail_party(3).unwrap(),
            fam::wheel(5).unwrap(),
        ] {
            let system = CutSystem::new(&g, &limits()).unwrap();
            assert_eq!(
                system.is_rigid().unwrap(),
                system.is_rigid_by_ranges().unwrap()
            );
        }
    }

    #[test]
    fn integer_search_respects_parity() {
        let k4 = fam::complete(4).unwrap();
        assert!(realization_at_scale(&k4, 1, &limits()).unwrap().is_none());
        let r = realization_at_scale(&k4, 2, &limits()).unwrap().unwrap();
        assert!(validate_realization(&k4, &r).unwrap().isometric);
        assert_eq!(scale(&k4, &limits()).unwrap(), 2);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = l1_certificate(&fam::cycle(4).unwrap(), &limits())
            .unwrap()
            .unwrap();
        let json = cert.to_json();
        assert_eq!(json["size"], "2");
        assert_eq!(json["scale"], 1);
        assert_eq!(json["rigid"], true);
        assert_eq!(json["equicut"], true);
        let cuts = json["cuts"].as_array().unwrap();
        assert_eq!(cuts.len(), 2);
        assert!(cuts
            .iter()
            .all(|c| c["lambda"] == "1" && c["side"].as_array().unwrap().len() == 2));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let g = fam::cycle(6).unwrap();
        let mut cert = l1_certificate(&g, &limits()).unwrap().unwrap();
        cert.lambda[0].1 += Rational::one();
        assert!(matches!(
            cert.verify(&g),
            Err(Error::CertificateMismatch(_))
        ));
    }

    #[test]
    fn equicut_only_decomposition() {
        let c6 = fam::cycle(6).unwrap();
        let dec = equicut_decomposition(&c6, &limits()).unwrap().unwrap();
        assert!(dec.iter().all(|(c, _)| c.is_equicut(6)));
        assert!(equicut_decomposition(&fam::star(5).unwrap(), &limits())
            .unwrap()
            .is_none());
    }
}
