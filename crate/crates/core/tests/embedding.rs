use std::collections::VecDeque;

use equicut_core::catalog::families as fam;
use equicut_core::cutcone::{
    self, pin_size, realization_from_certificate, size_bounds, validate_realization, Membership,
};
use equicut_core::doubling::{
    detect_antipodal, diametral_doubling, doubling_preconditions, doubling_realization, halvings,
};
use equicut_core::iso::are_isomorphic;
use equicut_core::metric::{
    cartesian_product, cond_geodesic_convexity, cond_geodesic_extension, distance_matrix,
};
use equicut_core::{CutSystem, Graph, Limits, Rational, Realization};
use proptest::prelude::*;

fn bfs_distances(g: &Graph) -> Vec<Vec<u32>> {
    let v = g.vertex_count();
    (0..v)
        .map(|s| {
            let mut d = vec![u32::MAX; v];
            d[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in g.neighbors(x) {
                    if d[y] == u32::MAX {
                        d[y] = d[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            d
        })
        .collect()
}

prop_compose! {
    fn connected(max_v: usize)(v in 2..=max_v)
        (parents in prop::collection::vec(any::<prop::sample::Index>(), v - 1),
         extra in prop::collection::vec(0u8..3, v * (v - 1) / 2),
         v in Just(v)) -> Graph
    {
        let mut edges: Vec<(usize, usize)> =
            parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
        let mut k = 0;
        for a in 0..v {
            for b in a + 1..v {
                if extra[k] == 0 {
                    edges.push((a, b));
                }
                k += 1;
            }
        }
        edges.sort();
        edges.dedup();
        Graph::new(v, edges).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn graph_text_round_trips(g in connected(9)) {
        prop_assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn distances_match_bfs(g in connected(9)) {
        let d = distance_matrix(&g).unwrap();
        let oracle = bfs_distances(&g);
        for (a, row) in oracle.iter().enumerate() {
            prop_assert_eq!(d.row(a), &row[..]);
        }
    }

    #[test]
    fn product_distances_add(g in connected(4), h in connected(4)) {
        let p = cartesian_product(&g, &h).unwrap();
        let (dg, dh, dp) = (bfs_distances(&g), bfs_distances(&h), bfs_distances(&p));
        let n = h.vertex_count();
        for a in 0..p.vertex_count() {
            for b in 0..p.vertex_count() {
                prop_assert_eq!(dp[a][b], dg[a / n][b / n] + dh[a % n][b % n]);
            }
        }
    }

    #[test]
    fn certificates_realize_the_metric(g in connected(7)) {
        let limits = Limits::default();
        let system = CutSystem::new(&g, &limits).unwrap();
        match system.membership().unwrap() {
            Membership::NotMember { farkas } => {
                prop_assert!(system.lp().is_farkas_certificate(farkas));
            }
            Membership::Member { .. } => {
                let cert = system.certificate().unwrap().unwrap();
                cert.verify(&g).unwrap();
                let r = realization_from_certificate(&g, &cert).unwrap();
                prop_assert!(validate_realization(&g, &r).unwrap().isometric);
                prop_assert_eq!(r.size_ratio(), cert.size.clone());
                prop_assert!(size_bounds(&g).unwrap().contains(&cert.size));
                let pinned = pin_size(&g, &r).unwrap();
                prop_assert_eq!(pinned.upper, cert.size.clone());
                prop_assert_eq!(pinned.pinned, cert.equicut);
                prop_assert!(cert.scale == 1 || cert.scale.is_multiple_of(2));
            }
        }
    }

    #[test]
    fn rescaling_keeps_isometry(g in connected(6), k in 1u64..4) {
        let limits = Limits::default();
        if let Some(cert) = cutcone::l1_certificate(&g, &limits).unwrap() {
            let r = realization_from_certificate(&g, &cert).unwrap().rescaled(k).unwrap();
            prop_assert_eq!(r.scale(), cert.realization_scale() * k);
            prop_assert!(validate_realization(&g, &r).unwrap().isometric);
            prop_assert_eq!(Realization::parse_text(&r.to_text()).unwrap(), r);
        }
    }

    #[test]
    fn doubling_raises_the_diameter(g in connected(7)) {
        let dd = diametral_doubling(&g).unwrap();
        prop_assert_eq!(dd.vertex_count(), 2 * g.vertex_count());
        if !(cond_geodesic_convexity(&g).unwrap() && cond_geodesic_extension(&g).unwrap()) {
            return Ok(());
        }
        let d = distance_matrix(&g).unwrap().diameter();
        prop_assert_eq!(distance_matrix(&dd).unwrap().diameter(), d + 1);
        let n = g.vertex_count();
        let map = detect_antipodal(&dd).unwrap().antipode_map.unwrap();
        prop_assert!((0..n).all(|x| map[x] == x + n));
        let found = halvings(&dd).unwrap();
        prop_assert!(found.iter().any(|h| are_isomorphic(h, &g).unwrap().is_some()));
    }

    #[test]
    fn block_realization_when_preconditions_hold(g in connected(7)) {
        let limits = Limits::default();
        let pre = doubling_preconditions(&g, &limits).unwrap();
        if !pre.all_hold() {
            return Ok(());
        }
        let cert = cutcone::l1_certificate(&g, &limits).unwrap().unwrap();
        let r = realization_from_certificate(&g, &cert).unwrap();
        let dd = doubling_realization(&g, &r).unwrap();
        let doubled = diametral_doubling(&g).unwrap();
        prop_assert!(validate_realization(&doubled, dd.assembled()).unwrap().isometric);
        let d = distance_matrix(&g).unwrap().diameter();
        let size = cutcone::size(&doubled, &limits).unwrap();
        prop_assert_eq!(size, Rational::from_integer((d + 1).into()));
    }
}

#[test]
fn realization_products_add_sizes() {
    let limits = Limits::default();
    let c5 = fam::cycle(5).unwrap();
    let k3 = fam::complete(3).unwrap();
    let r1 = realization_from_certificate(
        &c5,
        &cutcone::l1_certificate(&c5, &limits).unwrap().unwrap(),
    )
    .unwrap();
    let r2 = realization_from_certificate(
        &k3,
        &cutcone::l1_certificate(&k3, &limits).unwrap().unwrap(),
    )
    .unwrap();
    let r = r1.product(&r2).unwrap();
    let g = cartesian_product(&c5, &k3).unwrap();
    assert!(validate_realization(&g, &r).unwrap().isometric);
    assert_eq!(r.size_ratio(), r1.size_ratio() + r2.size_ratio());
    assert_eq!(
        cutcone::size(&g, &limits).unwrap(),
        Rational::new(4.into(), 1.into())
    );
}

#[test]
fn unit_distance_graph_recovers_the_cube() {
    let limits = Limits::default();
    let cube = fam::cube();
    let cert = cutcone::l1_certificate(&cube, &limits).unwrap().unwrap();
    let r = realization_from_certificate(&cube, &cert).unwrap();
    assert_eq!((r.cols(), r.scale()), (3, 1));
    let back = r.unit_distance_graph().unwrap();
    assert!(are_isomorphic(&back, &cube).unwrap().is_some());
}
