//! Library constructions checked against independent brute-force searches.

use finmet::harness::{enumerate_mediators, product_mediators, GenConfig, Generator};
use finmet::idempotent::PairFactor;
use finmet::{
    coproduct, kernel_metric, minplus_closure, product, pushout_along_embedding, quotient_leq, CostMatrix,
    ExtValue, FinMap, FinSpace, Matrix,
};
use proptest::prelude::*;

fn generator(seed: u64, max_points: usize) -> Generator {
    Generator::new(GenConfig {
        max_points,
        ..GenConfig::with_seed(seed)
    })
}

/// Cheapest walk from `x` to `y` by depth-first search over simple paths.
fn cheapest_path(costs: &Matrix, x: usize, y: usize) -> ExtValue {
    fn go(costs: &Matrix, at: usize, y: usize, seen: &mut Vec<bool>, acc: ExtValue, best: &mut ExtValue) {
        if at == y {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        for next in 0..costs.size() {
            if !seen[next] {
                seen[next] = true;
                go(costs, next, y, seen, acc.clone() + costs.get(at, next).clone(), best);
                seen[next] = false;
            }
        }
    }
    let mut seen = vec![false; costs.size()];
    seen[x] = true;
    let mut best = ExtValue::inf();
    go(costs, x, y, &mut seen, ExtValue::zero(), &mut best);
    best
}

fn all_maps(source: &FinSpace, target: &FinSpace) -> Vec<FinMap> {
    enumerate_mediators(source, target, |_| true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_cheapest_path(seed in any::<u64>()) {
        let mut g = generator(seed, 5);
        let n = g.point_count();
        let costs = g.cost_matrix(n);
        let closed = minplus_closure(&costs);
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(closed.get(x, y), &cheapest_path(&costs, x, y));
            }
        }
    }

    #[test]
    fn product_has_unique_mediators(seed in any::<u64>()) {
        let mut g = generator(seed, 3);
        let (m1, m2, w) = (g.metric(), g.metric(), g.metric());
        let (p, pi1, pi2) = product(&m1, &m2);
        prop_assert_eq!(p.len(), m1.len() * m2.len());
        for c1 in all_maps(&w, &m1) {
            for c2 in all_maps(&w, &m2) {
                prop_assert_eq!(product_mediators(&pi1, &pi2, &c1, &c2).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn coproduct_cocones_factor_uniquely(seed in any::<u64>()) {
        let mut g = generator(seed, 3);
        let (m1, m2, t) = (g.metric(), g.metric(), g.metric());
        let (c, i1, i2) = coproduct(&m1, &m2);
        for c1 in all_maps(&m1, &t) {
            for c2 in all_maps(&m2, &t) {
                let found = enumerate_mediators(&c, &t, |u| {
                    (0..m1.len()).all(|s| u[i1.apply(s)] == c1.apply(s))
                        && (0..m2.len()).all(|s| u[i2.apply(s)] == c2.apply(s))
                })
                .unwrap();
                prop_assert_eq!(found.len(), 1);
            }
        }
    }

    #[test]
    fn quotient_order_matches_factorization_search(seed in any::<u64>()) {
        let mut g = generator(seed, 4);
        let x = g.metric();
        let (f, h) = (g.surjection(&x), g.surjection(&x));
        let factors = enumerate_mediators(f.target(), h.target(), |u| {
            (0..x.len()).all(|s| u[f.apply(s)] == h.apply(s))
        })
        .unwrap();
        prop_assert_eq!(quotient_leq(&f, &h).unwrap(), !factors.is_empty());
    }

    #[test]
    fn kernel_metric_is_pullback_of_distance(seed in any::<u64>()) {
        let mut g = generator(seed, 4);
        let (x, y) = (g.metric(), g.metric());
        if let Some(f) = g.map(&x, &y) {
            let k = kernel_metric(&f);
            for a in 0..x.len() {
                for b in 0..x.len() {
                    prop_assert_eq!(k.gamma().get(a, b), y.d(f.apply(a), f.apply(b)));
                    prop_assert!(k.gamma().get(a, b) <= x.d(a, b));
                }
            }
        }
    }

    #[test]
    fn pushout_distance_is_cheapest_glued_path(seed in any::<u64>()) {
        let mut g = generator(seed, 4);
        let x = g.metric();
        let i = g.embedding_into(&x);
        let b = g.metric();
        let Some(f) = g.map(i.source(), &b) else { return Ok(()) };
        let result = pushout_along_embedding(&i, &f).unwrap();
        // Disjoint union of B and X with zero-cost links f(a) <-> i(a).
        let (nb, nx) = (b.len(), x.len());
        let mut costs = Matrix::from_fn(nb + nx, |p, q| match (p < nb, q < nb) {
            (true, true) => b.d(p, q).clone(),
            (false, false) => x.d(p - nb, q - nb).clone(),
            _ => ExtValue::inf(),
        });
        for a in 0..i.source().len() {
            costs.set(f.apply(a), nb + i.apply(a), ExtValue::zero());
            costs.set(nb + i.apply(a), f.apply(a), ExtValue::zero());
        }
        let glued = |p: usize| if p < nb { result.into_b.apply(p) } else { result.into_x.apply(p - nb) };
        for p in 0..nb + nx {
            for q in 0..nb + nx {
                prop_assert_eq!(result.apex().d(glued(p), glued(q)), &cheapest_path(&costs, p, q));
            }
        }
    }

    #[test]
    fn idempotent_witnesses_recompute(seed in any::<u64>()) {
        let mut g = generator(seed, 4);
        let n = g.point_count();
        let rho = CostMatrix::unlabelled(g.cost_matrix(n));
        let sq = rho.minplus_square().unwrap();
        prop_assume!(sq.rho() == rho.rho());
        let report = rho.factor_through_zero_diagonal().unwrap();
        prop_assert!(report.full_coverage());
        for x in 0..n {
            for y in 0..n {
                match report.witness(x, y).unwrap() {
                    PairFactor::Witness(a) => {
                        prop_assert!(rho.rho().get(a, a).is_zero());
                        prop_assert_eq!(rho.rho().get(x, a).clone() + rho.rho().get(a, y).clone(), rho.rho().get(x, y).clone());
                    }
                    PairFactor::Vacuous => prop_assert!(rho.rho().get(x, y).is_inf()),
                    PairFactor::Missing => prop_assert!(false),
                }
            }
        }
    }
}
