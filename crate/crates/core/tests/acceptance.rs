//! Acceptance criteria. Each test prints one PASS/FAIL line with the
//! observed values; run with `cargo test --test acceptance -- --nocapture`
//! to see them.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use fibo_lattice::bijection::{bijection_table, table_csv};
use fibo_lattice::lattice::{enumerate_irreducibles, DEFAULT_MAX_POSET_SIZE};
use fibo_lattice::stats::{
    aux_sums, build_report, unconstrained_sum_a, unconstrained_sum_b, StatKind,
};
use fibo_lattice::verify::{self, CheckResult, Range};
use fibo_lattice::{Composition, Direction, Execution, LatticeParams, Poset};

fn params(n: u64, p: u64) -> LatticeParams {
    LatticeParams::new(n, p).unwrap()
}

fn gate(
    id: u32,
    name: &str,
    started: Instant,
    budget: Duration,
    result: CheckResult,
    observed: &str,
) {
    let elapsed = started.elapsed();
    let result = result.and_then(|()| {
        if elapsed <= budget {
            Ok(())
        } else {
            Err(format!("took {elapsed:.1?}, budget {budget:?}"))
        }
    });
    match &result {
        Ok(()) => println!("[criterion {id:>2}] PASS {name} ({observed}; {elapsed:.2?})"),
        Err(msg) => println!("[criterion {id:>2}] FAIL {name}: {msg}"),
    }
    assert!(result.is_ok(), "criterion {id} failed: {result:?}");
}

fn each_p(ps: impl IntoIterator<Item = u64>, check: impl Fn(u64) -> CheckResult) -> CheckResult {
    ps.into_iter().try_for_each(check)
}

#[test]
fn criterion_01_irreducible_counts() {
    let t = Instant::now();
    let result = each_p(2..=5, |p| {
        verify::irreducible_counts(Range::for_p(p, p, 18), Execution::default())
    });
    gate(
        1,
        "|MI| = |JI| = a_p(n) = |E|, 2<=p<=5, p<=n<=18",
        t,
        Duration::from_secs(120),
        result,
        "exact",
    );
}

#[test]
fn criterion_02_reference_tables() {
    let t = Instant::now();
    let mut result = verify::reference_tables();
    for (n, p, golden) in [
        (7, 2, include_str!("fixtures/table_7_2.csv")),
        (6, 3, include_str!("fixtures/table_6_3.csv")),
    ] {
        let produced = table_csv(&bijection_table(params(n, p), Direction::Meet));
        if produced != golden {
            result = Err(format!("table (n={n}, p={p}) differs:\n{produced}"));
        }
    }
    gate(
        2,
        "bijection tables (7,2) and (6,3), 24 rows",
        t,
        Duration::MAX,
        result,
        "byte-identical",
    );
}

#[test]
fn criterion_03_lattice_5_3() {
    let t = Instant::now();
    let prm = params(5, 3);
    let poset = Poset::new(prm, DEFAULT_MAX_POSET_SIZE).unwrap();
    let mi: Vec<String> = enumerate_irreducibles(prm, Direction::Meet, DEFAULT_MAX_POSET_SIZE)
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let mut expected_mi = vec![
        "(2,3)",
        "(3,1,1)",
        "(1,3,1)",
        "(2,1,2)",
        "(2,1,1,1)",
        "(1,1,3)",
        "(1,1,1,2)",
        "(1,1,1,1,1)",
    ];
    expected_mi.sort();
    let c = |s: &str| Composition::parse(s, prm).unwrap();
    let checks = [
        (poset.len() == 13, format!("|F| = {}", poset.len())),
        (
            poset.hasse_edge_count() == 16,
            format!("cover pairs = {}", poset.hasse_edge_count()),
        ),
        (mi == expected_mi, format!("MI = {mi:?}")),
        (
            poset.elements()[poset.bottom()] == c("(1,1,1,1,1)"),
            "bottom".to_owned(),
        ),
        (
            poset.elements()[poset.top()] == c("(3,2)"),
            "top".to_owned(),
        ),
    ];
    let result = checks
        .iter()
        .find(|(ok, _)| !ok)
        .map_or(Ok(()), |(_, msg)| Err(msg.clone()));
    gate(
        3,
        "F_5^3: 13 elements, 16 covers, 8 MI, bottom/top",
        t,
        Duration::MAX,
        result,
        "exact",
    );
}

#[test]
fn criterion_04_round_trips() {
    let t = Instant::now();
    let result = each_p(2..=5, |p| {
        verify::round_trips(Range::for_p(p, p, 18), Execution::default())
    });
    gate(
        4,
        "Phi∘Psi, Psi∘Phi and tilde analogues, 2<=p<=5, p<=n<=18",
        t,
        Duration::from_secs(60),
        result,
        "exact",
    );
}

#[test]
fn criterion_05_cover_counts() {
    let t = Instant::now();
    let result = verify::cover_relations(Range::new(4, 1, 12), Execution::default());
    gate(
        5,
        "pattern cover counts = Hasse covers, n<=12, p<=4",
        t,
        Duration::MAX,
        result,
        "exact",
    );
}

#[test]
fn criterion_06_meet_definition() {
    let t = Instant::now();
    let result = verify::meet_definition(Range::new(4, 1, 10), Execution::default());
    gate(
        6,
        "meet-definition = unique upper cover, n<=10, p<=4",
        t,
        Duration::MAX,
        result,
        "exact",
    );
}

#[test]
fn criterion_07_first_part_identity() {
    let t = Instant::now();
    let result = each_p(2..=10, |p| {
        verify::first_part_identity(Range::for_p(p, p - 1, 10_000), Execution::default())
    });
    gate(
        7,
        "edge-side first-part sum = closed form, p<=10, p-1<=n<=10^4",
        t,
        Duration::from_secs(300),
        result,
        "exact",
    );
}

#[test]
fn criterion_08_close_pairs() {
    let t = Instant::now();
    let result = verify::close_pairs(Range::new(12, 1, 200), Execution::default());
    gate(
        8,
        "close-pair closed form = brute force, n<=200, p<=12",
        t,
        Duration::MAX,
        result,
        "exact",
    );
}

fn rel_error_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

#[test]
fn criterion_09_asymptotics() {
    let t = Instant::now();
    let mut observed = Vec::new();
    let mut result: CheckResult = Ok(());
    for p in [2, 3, 5] {
        for stat in [StatKind::Parts, StatKind::Wrec] {
            let errors: Vec<BigRational> = [500, 1000, 2000, 3000]
                .iter()
                .map(|&n| build_report(params(n, p), stat).unwrap().relative_error)
                .collect();
            let last = rel_error_f64(&errors[3]);
            observed.push(format!("{stat} p={p}: {last:.3e}"));
            if last > 0.01 {
                result = result.and(Err(format!(
                    "{stat} p={p}: error {last:.4e} at n=3000 exceeds 1%"
                )));
            }
            if !errors.windows(2).all(|w| w[1] < w[0]) {
                let shown: Vec<String> = errors
                    .iter()
                    .map(|e| format!("{:.4e}", rel_error_f64(e)))
                    .collect();
                result = result.and(Err(format!(
                    "{stat} p={p}: errors not decreasing {shown:?}"
                )));
            }
        }
        for n in [100u64, 300, 1000] {
            let report = build_report(params(n, p), StatKind::First).unwrap();
            // |average / prediction - 1| <= 10 / n^3
            let bound = BigRational::new(10.into(), (n * n * n).into());
            let dev =
                (&report.average / &report.prediction - BigRational::from_integer(1.into())).abs();
            if dev > bound {
                result = result.and(Err(format!(
                    "first p={p} n={n}: deviation {:.3e} > 10/n^3",
                    rel_error_f64(&dev)
                )));
            }
            if n == 1000 {
                observed.push(format!("first p={p} n=1000: {:.3e}", rel_error_f64(&dev)));
            }
        }
    }
    gate(
        9,
        "asymptotic averages (parts, wrec at 1%, first at 10/n^3)",
        t,
        Duration::from_secs(120),
        result,
        &observed.join(", "),
    );
}

#[test]
fn criterion_10_endpoint_sums() {
    let t = Instant::now();
    let mut result: CheckResult = Ok(());
    let mut observed = Vec::new();
    let n = 2000u64;
    for p in [2u64, 3, 5] {
        let sums = aux_sums(params(n, p));
        let n3 = BigRational::from_integer((n * n * n).into());
        let factor = BigRational::new((p - 1).into(), p.into());
        let target_a = &factor * &n3 / BigRational::from_integer(6.into());
        let target_b = &factor * &n3 / BigRational::from_integer(3.into());
        let dev = |sum: u128, target: &BigRational| {
            (BigRational::from_integer(sum.into()) / target - BigRational::from_integer(1.into()))
                .abs()
        };
        let (da, db) = (dev(sums.sum_a, &target_a), dev(sums.sum_b, &target_b));
        observed.push(format!(
            "p={p}: {:.2e}/{:.2e}",
            rel_error_f64(&da),
            rel_error_f64(&db)
        ));
        let one_percent = BigRational::new(1.into(), 100.into());
        if da > one_percent || db > one_percent {
            result = result.and(Err(format!("p={p}: deviations {da} / {db} exceed 1%")));
        }
    }
    for n in 1..=500u64 {
        let (mut s, mut big_s) = (0u128, 0u128);
        for a in 1..=n {
            for b in a + 1..=n {
                s += u128::from(a);
                big_s += u128::from(b);
            }
        }
        if s != unconstrained_sum_a(n) || big_s != unconstrained_sum_b(n) {
            result = result.and(Err(format!("unconstrained closed forms fail at n={n}")));
        }
    }
    gate(
        10,
        "endpoint sums within 1% at n=2000; s(n), S(n) exact n<=500",
        t,
        Duration::MAX,
        result,
        &observed.join(", "),
    );
}

#[test]
fn criterion_11_recurrences() {
    let t = Instant::now();
    let result = verify::recurrences(10, 10_000)
        .and_then(|()| verify::enumeration_count(Range::new(4, 1, 25), Execution::default()));
    gate(
        11,
        "F and a_p recurrences n<=10^4, p<=10; |enumeration| = F, n<=25, p<=4",
        t,
        Duration::MAX,
        result,
        "exact",
    );
}
