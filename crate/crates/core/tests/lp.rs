//! The exact simplex against brute-force basis enumeration.

use equicut_core::lp::{
    find_integer_point, format_rational, parse_rational, solve_lp, LpOutcome, Sense,
};
use equicut_core::{Rational, StandardFormLP};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Solves `A_S x = b` when the chosen columns are independent and the
/// system is consistent.
fn basic_solution(m: &[Vec<Rational>], b: &[Rational], cols: &[usize]) -> Option<Vec<Rational>> {
    let rows = m.len();
    let k = cols.len();
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            cols.iter()
                .map(|&j| m[i][j].clone())
                .chain([b[i].clone()])
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let p = (pivot_row..rows).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(p, pivot_row);
        let inv = aug[pivot_row][c].recip();
        for x in aug[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pr = aug[pivot_row].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != pivot_row && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if aug[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m[0].len()];
    for (c, &p) in pivots.iter().enumerate() {
        x[cols[c]] = aug[p][k].clone();
    }
    Some(x)
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize <= max)
        .map(|s| (0..n).filter(|&j| s >> j & 1 == 1).collect())
        .collect()
}

fn vertices(m: &[Vec<Rational>], b: &[Rational]) -> Vec<Vec<Rational>> {
    let n = m[0].len();
    subsets(n, m.len())
        .iter()
        .filter_map(|s| basic_solution(m, b, s))
        .filter(|x| x.iter().all(|v| !v.is_negative()))
        .collect()
}

fn dot(c: &[Rational], x: &[Rational]) -> Rational {
    c.iter()
        .zip(x)
        .map(|(a, b)| a * b)
        .fold(Rational::zero(), |s, t| s + t)
}

prop_compose! {
    fn system(bounded: bool)(n in 1usize..=5, m in 1usize..=3)
        (matrix in prop::collection::vec(prop::collection::vec(-3i64..=3, n), m),
         rhs in prop::collection::vec(-4i64..=4, m),
         cost in prop::collection::vec(0i64..=3, n),
         total in 1i64..=5)
        -> (Vec<Vec<Rational>>, Vec<Rational>, Vec<Rational>)
    {
        let mut matrix: Vec<Vec<Rational>> =
            matrix.into_iter().map(|row| row.into_iter().map(r).collect()).collect();
        let mut rhs: Vec<Rational> = rhs.into_iter().map(r).collect();
        if bounded {
            matrix.push(vec![r(1); cost.len()]);
            rhs.push(r(total));
        }
        (matrix, rhs, cost.into_iter().map(r).collect())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn minimum_matches_vertex_enumeration((m, b, c) in system(false)) {
        let lp = StandardFormLP::from_dense(&m, b.clone(), c.clone()).unwrap();
        let verts = vertices(&m, &b);
        match solve_lp(&lp, Sense::Minimize).unwrap() {
            LpOutcome::Optimal { value, point } => {
                prop_assert!(lp.is_feasible_point(&point));
                prop_assert_eq!(&dot(&c, &point), &value);
                let best = verts.iter().map(|x| dot(&c, x)).min().unwrap();
                prop_assert_eq!(value, best);
            }
            LpOutcome::Infeasible { farkas } => {
                prop_assert!(verts.is_empty());
                prop_assert!(lp.is_farkas_certificate(&farkas));
            }
            LpOutcome::Unbounded => prop_assert!(false, "non-negative costs are bounded below"),
        }
    }

    #[test]
    fn maximum_over_a_polytope((m, b, c) in system(true)) {
        let lp = StandardFormLP::from_dense(&m, b.clone(), c.clone()).unwrap();
        let verts = vertices(&m, &b);
        match solve_lp(&lp, Sense::Maximize).unwrap() {
            LpOutcome::Optimal { value, point } => {
                prop_assert!(lp.is_feasible_point(&point));
                let best = verts.iter().map(|x| dot(&c, x)).max().unwrap();
                prop_assert_eq!(value, best);
            }
            LpOutcome::Infeasible { farkas } => {
                prop_assert!(verts.is_empty());
                prop_assert!(lp.is_farkas_certificate(&farkas));
            }
            LpOutcome::Unbounded => prop_assert!(false, "the ones row bounds the region"),
        }
    }

    #[test]
    fn integer_points_match_enumeration((m, b, c) in system(true)) {
        let lp = StandardFormLP::from_dense(&m, b.clone(), c).unwrap();
        let n = m[0].len();
        let total = b.last().unwrap().to_integer();
        let mut exists = false;
        let mut x = vec![0i64; n];
        'search: loop {
            let point: Vec<Rational> = x.iter().map(|&v| r(v)).collect();
            if lp.is_feasible_point(&point) {
                exists = true;
                break;
            }
            for j in 0..n {
                x[j] += 1;
                if BigInt::from(x.iter().sum::<i64>()) <= total {
                    continue 'search;
                }
                x[j] = 0;
            }
            break;
        }
        match find_integer_point(&lp, 10_000).unwrap() {
            Some(p) => {
                let point: Vec<Rational> = p.into_iter().map(Rational::from_integer).collect();
                prop_assert!(lp.is_feasible_point(&point));
            }
            None => prop_assert!(!exists),
        }
    }

    #[test]
    fn rational_text_round_trips(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let q = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }
}

#[test]
fn degenerate_cycling_example() {
    // Beale's example, which cycles under the textbook Dantzig rule.
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let m = vec![
        vec![q(1, 4), r(-8), r(-1), r(9), r(1), r(0), r(0)],
        vec![q(1, 2), r(-12), q(-1, 2), r(3), r(0), r(1), r(0)],
        vec![r(0), r(0), r(1), r(0), r(0), r(0), r(1)],
    ];
    let b = vec![r(0), r(0), r(1)];
    let c = vec![q(-3, 4), r(20), q(-1, 2), r(6), r(0), r(0), r(0)];
    let lp = StandardFormLP::from_dense(&m, b, c).unwrap();
    let (value, point) = solve_lp(&lp, Sense::Minimize).unwrap().optimal().unwrap();
    assert_eq!(value, q(-5, 4));
    assert!(lp.is_feasible_point(&point));
}

#[test]
fn unbounded_ray() {
    let lp =
        StandardFormLP::from_dense(&[vec![r(1), r(-1)]], vec![r(1)], vec![r(0), r(1)]).unwrap();
    assert_eq!(
        solve_lp(&lp, Sense::Maximize).unwrap(),
        LpOutcome::Unbounded
    );
    let (value, _) = solve_lp(&lp, Sense::Minimize).unwrap().optimal().unwrap();
    assert!(value.is_zero());
}
