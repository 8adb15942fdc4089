use proptest::prelude::*;

use fibo_lattice::bijection::{phi, phi_tilde, psi_runs};
use fibo_lattice::lattice::{g_inverse, DEFAULT_MAX_POSET_SIZE};
use fibo_lattice::stats::{
    aux_sums_with, stat_of_runs, stat_value, sum_over_mi_with, wrec_edge_formula,
};
use fibo_lattice::{
    dominance_leq, edge_count, edges, enumerate_compositions, f_map, g_map, is_irreducible,
    lower_covers, meet_join_oracle, pattern_cover_count, psi, psi_tilde, upper_covers, Composition,
    Direction, Edge, Execution, LatticeParams, Poset, StatKind, SumStrategy,
};

fn params(n: u64, p: u64) -> LatticeParams {
    LatticeParams::new(n, p).unwrap()
}

/// A composition with parts in `[1, p]`, its `n` being the sum of the parts.
fn composition() -> impl Strategy<Value = Composition> {
    (2u64..=7).prop_flat_map(|p| {
        prop::collection::vec(1..=p as u8, 1..24).prop_map(move |parts| {
            let n = parts.iter().map(|&v| u64::from(v)).sum();
            Composition::new(parts, params(n, p)).unwrap()
        })
    })
}

/// Parameters with an edge `{a, b}` of the Turán graph.
fn edge() -> impl Strategy<Value = (LatticeParams, Edge)> {
    (2u64..=9, 2u64..=3000)
        .prop_flat_map(|(p, n)| (Just(p), Just(n), 1..n))
        .prop_flat_map(|(p, n, a)| (Just(p), Just(n), Just(a), 1..=n - a))
        .prop_filter("gap must not be a multiple of p", |&(p, _, _, d)| {
            d % p != 0
        })
        .prop_map(|(p, n, a, d)| {
            let prm = params(n, p);
            (prm, Edge::new(a, a + d, prm).unwrap())
        })
}

/// Three elements of a small lattice, as indices into its enumeration.
fn triple() -> impl Strategy<Value = (LatticeParams, usize, usize, usize)> {
    (
        2u64..=4,
        1u64..=9,
        any::<usize>(),
        any::<usize>(),
        any::<usize>(),
    )
        .prop_map(|(p, n, i, j, k)| (params(n, p), i, j, k))
}

proptest! {
    #[test]
    fn text_round_trip(x in composition()) {
        prop_assert_eq!(Composition::parse(&x.to_string(), x.params()).unwrap(), x.clone());
        prop_assert_eq!(Composition::parse(&x.to_spaced(), x.params()).unwrap(), x.clone());
        prop_assert!(!x.to_spaced().contains(','));
    }

    #[test]
    fn covers_follow_patterns(x in composition()) {
        let up = upper_covers(&x);
        let down = lower_covers(&x);
        prop_assert_eq!(up.len(), pattern_cover_count(&x, Direction::Meet));
        prop_assert_eq!(down.len(), pattern_cover_count(&x, Direction::Join));
        for y in &up {
            prop_assert!(dominance_leq(&x, y).unwrap() && y != &x);
            prop_assert!(lower_covers(y).contains(&x));
        }
        for y in &down {
            prop_assert!(dominance_leq(y, &x).unwrap() && y != &x);
        }
    }

    #[test]
    fn dominance_is_an_order((prm, i, j, k) in triple()) {
        let all = enumerate_compositions(prm);
        let (x, y, z) = (&all[i % all.len()], &all[j % all.len()], &all[k % all.len()]);
        let leq = |u: &Composition, v: &Composition| dominance_leq(u, v).unwrap();
        prop_assert!(leq(x, x));
        if leq(x, y) && leq(y, x) {
            prop_assert_eq!(x, y);
        }
        if leq(x, y) && leq(y, z) {
            prop_assert!(leq(x, z));
        }
    }

    #[test]
    fn meet_and_join_are_bounds((prm, i, j, _) in triple()) {
        let all = enumerate_compositions(prm);
        let (x, y) = (&all[i % all.len()], &all[j % all.len()]);
        let meet = meet_join_oracle(x, y, Direction::Meet, DEFAULT_MAX_POSET_SIZE).unwrap();
        let join = meet_join_oracle(x, y, Direction::Join, DEFAULT_MAX_POSET_SIZE).unwrap();
        prop_assert!(dominance_leq(&meet, x).unwrap() && dominance_leq(&meet, y).unwrap());
        prop_assert!(dominance_leq(x, &join).unwrap() && dominance_leq(y, &join).unwrap());
        // absorption
        let back = meet_join_oracle(x, &join, Direction::Meet, DEFAULT_MAX_POSET_SIZE).unwrap();
        prop_assert_eq!(&back, x);
        let poset = Poset::new(prm, DEFAULT_MAX_POSET_SIZE).unwrap();
        let (pi, pj) = (poset.index_of(x).unwrap(), poset.index_of(y).unwrap());
        prop_assert_eq!(&poset.elements()[poset.meet(pi, pj).unwrap()], &meet);
        prop_assert_eq!(&poset.elements()[poset.join(pi, pj).unwrap()], &join);
    }

    #[test]
    fn edges_are_canonical(p in 2u64..=9, n in 1u64..=60, a in 1u64..=60, b in 1u64..=60) {
        let prm = params(n, p);
        match (Edge::new(a, b, prm), Edge::new(b, a, prm)) {
            (Ok(e), Ok(f)) => {
                prop_assert_eq!(e, f);
                prop_assert!(e.a() < e.b() && (e.b() - e.a()) % p != 0 && e.b() <= n);
            }
            (Err(_), Err(_)) => prop_assert!(a == b || a > n || b > n || a % p == b % p),
            _ => prop_assert!(false, "edge validity depends on endpoint order"),
        }
    }

    #[test]
    fn bijections_invert_at_scale((prm, e) in edge()) {
        let x = psi(e, prm).unwrap();
        prop_assert!(is_irreducible(&x, Direction::Meet));
        prop_assert_eq!(phi(&x, prm).unwrap(), e);
        let y = psi_tilde(e, prm).unwrap();
        prop_assert!(is_irreducible(&y, Direction::Join));
        prop_assert_eq!(phi_tilde(&y, prm).unwrap(), e);
        let runs = psi_runs(e.a(), e.b(), prm);
        for stat in StatKind::ALL {
            prop_assert_eq!(stat_of_runs(&runs, stat), stat_value(&x, stat));
        }
        if e.b() - e.a() >= prm.p() {
            prop_assert_eq!(wrec_edge_formula(e, prm).unwrap(), stat_value(&x, StatKind::Wrec));
        }
    }

    #[test]
    fn growth_map_keeps_irreducibility((prm, e) in edge()) {
        let x = psi(e, prm).unwrap();
        let grown = f_map(&x);
        prop_assert_eq!(grown.params().n(), prm.n() + 1);
        prop_assert!(is_irreducible(&grown, Direction::Meet));
        prop_assert!(g_map(&grown).is_err());
    }

    #[test]
    fn new_irreducibles_round_trip(p in 2u64..=9, n in 1u64..=500, a in 1u64..=500) {
        let prm = params(n, p);
        match g_inverse(a, prm) {
            Ok(x) => {
                prop_assert_eq!(g_map(&x).unwrap(), a);
                prop_assert!(is_irreducible(&x, Direction::Meet));
            }
            Err(_) => prop_assert!(a > n || a % p == n % p),
        }
    }

    #[test]
    fn sum_strategies_agree(p in 2u64..=12, n in 1u64..=400) {
        let prm = params(n, p);
        for stat in StatKind::ALL {
            let closed = sum_over_mi_with(prm, stat, SumStrategy::EdgeClosed, Execution::Sequential, 0).unwrap();
            let stream = sum_over_mi_with(prm, stat, SumStrategy::EdgeStream, Execution::Parallel, 0).unwrap();
            prop_assert_eq!(closed, stream);
        }
    }

    #[test]
    fn endpoint_sums_match_edge_list(p in 2u64..=12, n in 1u64..=300) {
        let prm = params(n, p);
        let (mut sum_a, mut sum_b, mut count) = (0u128, 0u128, 0u64);
        for e in edges(prm) {
            sum_a += u128::from(e.a());
            sum_b += u128::from(e.b());
            count += 1;
        }
        prop_assert_eq!(count, edge_count(prm));
        for exec in [Execution::Sequential, Execution::Parallel] {
            let sums = aux_sums_with(prm, exec);
            prop_assert_eq!((sums.sum_a, sums.sum_b), (sum_a, sum_b));
        }
    }
}

#[test]
fn enumeration_strategy_agrees_on_small_lattices() {
    for p in 2..=5 {
        for n in 1..=13 {
            let prm = params(n, p);
            for stat in StatKind::ALL {
                let brute = sum_over_mi_with(
                    prm,
                    stat,
                    SumStrategy::Enumeration,
                    Execution::Sequential,
                    DEFAULT_MAX_POSET_SIZE,
                );
                let closed =
                    sum_over_mi_with(prm, stat, SumStrategy::EdgeClosed, Execution::Sequential, 0);
                assert_eq!(brute.unwrap(), closed.unwrap(), "{stat} at {prm}");
            }
        }
    }
}
