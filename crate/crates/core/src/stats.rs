//! Statistics over the meet-irreducible compositions.
//!
//! Sums over `MI_n^p` are evaluated on the edge side through `psi`, either
//! edge by edge or with the inner sum over `b` closed per vertex `a`.
//! Averages, predictions and errors are exact rationals; floating point
//! only appears in rendered output.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::bijection::{psi_runs, Runs};
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{enumerate_irreducibles, Direction, DEFAULT_MAX_POSET_SIZE};
use crate::params::LatticeParams;
use crate::turan::{edge_count, is_edge, Edge};

/// Largest number of edges the per-edge stream will visit.
pub const EDGE_STREAM_LIMIT: u64 = 100_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatKind {
    /// Number of parts.
    Parts,
    /// Value of the first part.
    First,
    /// Number of weak records.
    Wrec,
}

impl StatKind {
    pub const ALL: [StatKind; 3] = [StatKind::Parts, StatKind::First, StatKind::Wrec];

    pub fn name(&self) -> &'static str {
        match self {
            StatKind::Parts => "parts",
            StatKind::First => "first",
            StatKind::Wrec => "wrec",
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parts" => Ok(StatKind::Parts),
            "first" => Ok(StatKind::First),
            "wrec" => Ok(StatKind::Wrec),
            other => Err(Error::Parse(other.to_owned())),
        }
    }
}

pub fn stat_value(x: &Composition, stat: StatKind) -> u64 {
    let parts = x.parts();
    match stat {
        StatKind::Parts => parts.len() as u64,
        StatKind::First => u64::from(parts[0]),
        StatKind::Wrec => {
            let mut max = 0;
            parts
                .iter()
                .filter(|&&v| {
                    let record = v >= max;
                    max = max.max(v);
                    record
                })
                .count() as u64
        }
    }
}

pub fn stat_of_runs(runs: &Runs, stat: StatKind) -> u64 {
    match stat {
        StatKind::Parts => runs.parts_count(),
        StatKind::First => u64::from(runs.first()),
        StatKind::Wrec => runs.weak_records(),
    }
}

/// How a sum over `MI_n^p` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumStrategy {
    /// Filter `F_n^p` for meet-irreducibles and sum directly.
    Enumeration,
    /// Visit every edge and evaluate the statistic on its `psi` image.
    EdgeStream,
    /// Per vertex `a`, sum over `b` in closed form (O(p) per vertex).
    EdgeClosed,
}

/// `sum of stat(x) over MI_n^p` with default execution and poset cap.
pub fn sum_over_mi(params: LatticeParams, stat: StatKind, strategy: SumStrategy) -> Result<u128> {
    sum_over_mi_with(
        params,
        stat,
        strategy,
        Execution::default(),
        DEFAULT_MAX_POSET_SIZE,
    )
}

pub fn sum_over_mi_with(
    params: LatticeParams,
    stat: StatKind,
    strategy: SumStrategy,
    exec: Execution,
    cap: u64,
) -> Result<u128> {
    match strategy {
        SumStrategy::Enumeration => {
            let mi = enumerate_irreducibles(params, Direction::Meet, cap)?;
            Ok(mi.iter().map(|x| u128::from(stat_value(x, stat))).sum())
        }
        SumStrategy::EdgeStream => {
            let count = edge_count(params);
            if count > EDGE_STREAM_LIMIT {
                return Err(Error::ScaleExceeded {
                    size: count.to_string(),
                    cap: EDGE_STREAM_LIMIT,
                });
            }
            Ok(exec.sum(1..params.n(), |a| edge_stream_at(a, params, stat)))
        }
        SumStrategy::EdgeClosed => Ok(exec.sum(1..params.n(), |a| closed_at(a, params, stat))),
    }
}

fn edge_stream_at(a: u64, params: LatticeParams, stat: StatKind) -> u128 {
    let p = params.p();
    (a + 1..=params.n())
        .filter(|b| !(b - a).is_multiple_of(p))
        .map(|b| u128::from(stat_of_runs(&psi_runs(a, b, params), stat)))
        .sum()
}

/// Sum over the edges `{a, b}` with fixed smaller endpoint `a`.
///
/// Write `b - a = qp + r` with `1 <= r <= p-1`. Inside a residue class the
/// image is `(p^q, r, 1^(a-1), p^(C-q), r2)` with `C` and `r2` independent
/// of `q`, so every `q >= 1` term is the same and only `q = 0` is special.
fn closed_at(a: u64, params: LatticeParams, stat: StatKind) -> u128 {
    let (n, p) = (params.n(), params.p());
    let span = n - a;
    let classes = (p - 1).min(span);
    if stat == StatKind::First {
        // q = 0 contributes r, every other edge contributes p.
        let nonzero = span - span / p;
        let small = u128::from(classes) * u128::from(classes + 1) / 2;
        return small + u128::from(p) * u128::from(nonzero - classes);
    }
    let mut total = 0u128;
    for r in 1..=classes {
        let higher = u128::from((span - r) / p);
        let c = (span - r + 1) / p;
        let r2 = (span - r + 1) % p;
        total += match stat {
            StatKind::Parts => (higher + 1) * u128::from(a + c + u64::from(r2 != 0)),
            StatKind::Wrec => {
                let base = psi_runs(a, a + r, params).weak_records();
                higher * u128::from(c) + u128::from(base)
            }
            StatKind::First => unreachable!(),
        };
    }
    total
}

/// `p (a_p(n) - n (p-1)/2 + (p-1)(p+1)/6)`, valid for `n >= p - 1`.
pub fn closed_form_sum_first(params: LatticeParams) -> Result<u128> {
    let (n, p) = (i128::from(params.n()), i128::from(params.p()));
    if n < p - 1 {
        return Err(Error::RangeError(format!(
            "closed first-part sum needs n >= p - 1, got n={n}, p={p}"
        )));
    }
    let edges = i128::from(edge_count(params));
    let six_times = p * (6 * edges - 3 * n * (p - 1) + (p - 1) * (p + 1));
    if six_times % 6 != 0 || six_times < 0 {
        return Err(Error::NonIntegralResult);
    }
    Ok((six_times / 6) as u128)
}

/// Sums of the smaller and larger endpoints over all edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxSums {
    pub sum_a: u128,
    pub sum_b: u128,
}

/// Endpoint sums with the inner sum over `b` closed, O(n).
pub fn aux_sums(params: LatticeParams) -> AuxSums {
    aux_sums_with(params, Execution::default())
}

pub fn aux_sums_with(params: LatticeParams, exec: Execution) -> AuxSums {
    let (n, p) = (params.n(), params.p());
    let count_at = |a: u64| {
        let span = n - a;
        u128::from(span - span / p)
    };
    let sum_a = exec.sum(1..n, |a| u128::from(a) * count_at(a));
    let sum_b = exec.sum(1..n, |a| {
        let span = u128::from(n - a);
        let multiples = span / u128::from(p);
        let gaps = span * (span + 1) / 2 - u128::from(p) * multiples * (multiples + 1) / 2;
        u128::from(a) * count_at(a) + gaps
    });
    AuxSums { sum_a, sum_b }
}

/// `sum_{1 <= a < b <= n} a = n(n-1)(n+1)/6`.
pub fn unconstrained_sum_a(n: u64) -> u128 {
    let n = u128::from(n);
    n * (n.saturating_sub(1)) * (n + 1) / 6
}

/// `sum_{1 <= a < b <= n} b = n(n-1)(n+1)/3`.
pub fn unconstrained_sum_b(n: u64) -> u128 {
    let n = u128::from(n);
    n * (n.saturating_sub(1)) * (n + 1) / 3
}

/// Pairs `a < b` with `1 <= b - a <= p - 1`:
/// `(n - p + 1)(p - 1) + (p - 2)(p - 1)/2`, valid for `n >= p - 1`.
pub fn count_close_pairs(params: LatticeParams) -> Result<u64> {
    let (n, p) = (params.n(), params.p());
    if n + 1 < p {
        return Err(Error::RangeError(format!(
            "close-pair count needs n >= p - 1, got n={n}, p={p}"
        )));
    }
    Ok((n + 1 - p) * (p - 1) + (p - 2) * (p - 1) / 2)
}

fn ratio(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Asymptotic average over `MI_n^p`: `(1 + 2/p) n/3` for parts,
/// `p (1 - p/n + p(p+1)/(3n^2))` for the first part, `2n/(3p)` for weak
/// records.
pub fn predictor(params: LatticeParams, stat: StatKind) -> BigRational {
    let (n, p) = (i128::from(params.n()), i128::from(params.p()));
    match stat {
        StatKind::Parts => ratio((p + 2) * n, 3 * p),
        StatKind::First => ratio(p * (3 * n * n - 3 * p * n + p * (p + 1)), 3 * n * n),
        StatKind::Wrec => ratio(2 * n, 3 * p),
    }
}

/// `floor((b-a)/p) + floor((n-b+1)/p)`, the weak-record count of
/// `psi({a, b})` when `b - a >= p`.
pub fn wrec_edge_formula(e: Edge, params: LatticeParams) -> Result<u64> {
    let (n, p) = (params.n(), params.p());
    if !is_edge(e.a(), e.b(), params) {
        return Err(Error::NotAnEdge { a: e.a(), b: e.b() });
    }
    if e.b() - e.a() < p {
        return Err(Error::RangeError(format!(
            "weak-record formula needs b - a >= p, got {e}"
        )));
    }
    Ok((e.b() - e.a()) / p + (n - e.b() + 1) / p)
}

/// Exact total and average of a statistic over `MI_n^p`, next to its
/// asymptotic prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct StatReport {
    pub n: u64,
    pub p: u64,
    pub stat: StatKind,
    pub total: u128,
    pub count: u64,
    pub average: BigRational,
    pub prediction: BigRational,
    pub relative_error: BigRational,
}

pub fn build_report(params: LatticeParams, stat: StatKind) -> Result<StatReport> {
    build_report_with(params, stat, Execution::default())
}

pub fn build_report_with(
    params: LatticeParams,
    stat: StatKind,
    exec: Execution,
) -> Result<StatReport> {
    let count = edge_count(params);
    if count == 0 {
        return Err(Error::RangeError(format!(
            "MI is empty for {params}; average undefined"
        )));
    }
    let total = sum_over_mi_with(
        params,
        stat,
        SumStrategy::EdgeClosed,
        exec,
        DEFAULT_MAX_POSET_SIZE,
    )?;
    let average = BigRational::new(BigInt::from(total), BigInt::from(count));
    let prediction = predictor(params, stat);
    let relative_error = (&average / &prediction - BigRational::from_integer(1.into())).abs();
    Ok(StatReport {
        n: params.n(),
        p: params.p(),
        stat,
        total,
        count,
        average,
        prediction,
        relative_error,
    })
}

#[derive(Serialize)]
struct ReportJson {
    n: u64,
    p: u64,
    stat: &'static str,
    total: serde_json::Number,
    count: u64,
    average_num: serde_json::Number,
    average_den: serde_json::Number,
    prediction_num: serde_json::Number,
    prediction_den: serde_json::Number,
    rel_error: f64,
}

fn number(value: &BigInt) -> serde_json::Number {
    value
        .to_string()
        .parse()
        .expect("integers are valid JSON numbers")
}

impl StatReport {
    pub const CSV_HEADER: &'static str =
        "n,p,stat,total,count,average_num,average_den,prediction_num,prediction_den,rel_error";

    /// Relative error as a float, for display only.
    pub fn relative_error_f64(&self) -> f64 {
        self.relative_error.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> String {
        let report = ReportJson {
            n: self.n,
            p: self.p,
            stat: self.stat.name(),
            total: number(&BigInt::from(self.total)),
            count: self.count,
            average_num: number(self.average.numer()),
            average_den: number(self.average.denom()),
            prediction_num: number(self.prediction.numer()),
            prediction_den: number(self.prediction.denom()),
            rel_error: self.relative_error_f64(),
        };
        serde_json::to_string(&report).expect("report serializes")
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.6e}",
            self.n,
            self.p,
            self.stat,
            self.total,
            self.count,
            self.average.numer(),
            self.average.denom(),
            self.prediction.numer(),
            self.prediction.denom(),
            self.relative_error_f64()
        )
    }
}

impl fmt::Display for StatReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let approx = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        writeln!(f, "statistic   {} over MI_{}^{}", self.stat, self.n, self.p)?;
        writeln!(f, "total       {}", self.total)?;
        writeln!(f, "count       {}", self.count)?;
        writeln!(
            f,
            "average     {} (~{:.6})",
            self.average,
            approx(&self.average)
        )?;
        writeln!(
            f,
            "prediction  {} (~{:.6})",
            self.prediction,
            approx(&self.prediction)
        )?;
        write!(
            f,
            "rel. error  ~{:.6e} (float rendering)",
            self.relative_error_f64()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turan::edges;

    fn params(n: u64, p: u64) -> LatticeParams {
        LatticeParams::new(n, p).unwrap()
    }

    fn c(text: &str, n: u64, p: u64) -> Composition {
        Composition::parse(text, params(n, p)).unwrap()
    }

    #[test]
    fn stat_values() {
        assert_eq!(stat_value(&c("(1,1,1,1,1,1,1)", 7, 2), StatKind::Wrec), 7);
        assert_eq!(stat_value(&c("(3,1,1,1)", 6, 3), StatKind::Wrec), 1);
        assert_eq!(stat_value(&c("(2,1,3)", 6, 3), StatKind::First), 2);
        assert_eq!(stat_value(&c("(2,1,3)", 6, 3), StatKind::Parts), 3);
        assert_eq!(stat_value(&c("(2,2,1,2)", 7, 2), StatKind::Wrec), 3);
    }

    #[test]
    fn sums_on_small_lattices() {
        for strategy in [
            SumStrategy::Enumeration,
            SumStrategy::EdgeStream,
            SumStrategy::EdgeClosed,
        ] {
            assert_eq!(
                sum_over_mi(params(7, 2), StatKind::First, strategy).unwrap(),
                18
            );
            assert_eq!(
                sum_over_mi(params(6, 3), StatKind::First, strategy).unwrap(),
                22
            );
            assert_eq!(
                sum_over_mi(params(5, 3), StatKind::Parts, strategy).unwrap(),
                27
            );
        }
        let err = sum_over_mi_with(
            params(40, 4),
            StatKind::Parts,
            SumStrategy::Enumeration,
            Execution::Sequential,
            100,
        );
        assert!(matches!(err, Err(Error::ScaleExceeded { .. })));
    }

    #[test]
    fn first_part_closed_form() {
        assert_eq!(closed_form_sum_first(params(7, 2)).unwrap(), 18);
        assert_eq!(closed_form_sum_first(params(6, 3)).unwrap(), 22);
        assert_eq!(closed_form_sum_first(params(5, 3)).unwrap(), 13);
        assert_eq!(closed_form_sum_first(params(2, 3)).unwrap(), 1);
        assert!(matches!(
            closed_form_sum_first(params(2, 4)),
            Err(Error::RangeError(_))
        ));
    }

    #[test]
    fn endpoint_sums() {
        assert_eq!(aux_sums(params(3, 2)), AuxSums { sum_a: 3, sum_b: 5 });
        assert_eq!(unconstrained_sum_a(5), 20);
        assert_eq!(unconstrained_sum_b(5), 40);
        assert_eq!(unconstrained_sum_a(1), 0);
    }

    #[test]
    fn close_pairs() {
        assert_eq!(count_close_pairs(params(7, 2)).unwrap(), 6);
        assert_eq!(count_close_pairs(params(6, 3)).unwrap(), 9);
        assert_eq!(count_close_pairs(params(2, 3)).unwrap(), 1);
        assert!(count_close_pairs(params(2, 4)).is_err());
    }

    #[test]
    fn predictor_values() {
        assert_eq!(predictor(params(9, 3), StatKind::Parts), ratio(5, 1));
        assert_eq!(predictor(params(9, 3), StatKind::Wrec), ratio(2, 1));
        assert_eq!(predictor(params(6, 3), StatKind::First), ratio(11, 6));
    }

    #[test]
    fn weak_record_formula() {
        let e = Edge::new(2, 6, params(6, 3)).unwrap();
        assert_eq!(wrec_edge_formula(e, params(6, 3)).unwrap(), 1);
        let e = Edge::new(1, 6, params(7, 2)).unwrap();
        assert_eq!(wrec_edge_formula(e, params(7, 2)).unwrap(), 3);
        for p in 2..=6 {
            // {1, p+1} is not an edge; the nearest admissible pair is {1, p+2}.
            assert!(Edge::new(1, p + 1, params(p + 1, p)).is_err());
            let prm = params(p + 2, p);
            let e = Edge::new(1, p + 2, prm).unwrap();
            assert_eq!(crate::bijection::psi(e, prm).unwrap().len(), 3);
            assert_eq!(wrec_edge_formula(e, prm).unwrap(), 1);
        }
        let close = Edge::new(1, 2, params(6, 3)).unwrap();
        assert!(matches!(
            wrec_edge_formula(close, params(6, 3)),
            Err(Error::RangeError(_))
        ));
        let prm = params(40, 4);
        for e in edges(prm).filter(|e| e.b() - e.a() >= 4) {
            assert_eq!(
                wrec_edge_formula(e, prm).unwrap(),
                psi_runs(e.a(), e.b(), prm).weak_records()
            );
        }
    }

    #[test]
    fn reports() {
        let r = build_report(params(7, 2), StatKind::First).unwrap();
        assert_eq!((r.total, r.count), (18, 12));
        assert_eq!(r.average, ratio(3, 2));
        let r = build_report(params(5, 3), StatKind::Parts).unwrap();
        assert_eq!((r.total, r.count), (27, 8));
        assert_eq!(r.average, ratio(27, 8));
        assert!(build_report(params(1, 3), StatKind::Parts).is_err());

        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["total"], 27);
        assert_eq!(json["average_num"], 27);
        assert_eq!(json["average_den"], 8);
        assert_eq!(json["stat"], "parts");
        let row = r.to_csv_row();
        assert!(row.starts_with("5,3,parts,27,8,27,8,"));
        assert_eq!(
            row.split(',').count(),
            StatReport::CSV_HEADER.split(',').count()
        );
    }

    #[test]
    fn parse_stat_kind() {
        assert_eq!("wrec".parse::<StatKind>().unwrap(), StatKind::Wrec);
        assert!("mean".parse::<StatKind>().is_err());
    }
}
