//! The `(n, p)`-Turán graph: vertices `1..=n`, with `{a, b}` an edge iff
//! `a != b (mod p)`.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::params::LatticeParams;

/// An edge `{a, b}` stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: u64,
    b: u64,
}

impl Edge {
    /// Accepts either endpoint order.
    pub fn new(a: u64, b: u64, params: LatticeParams) -> Result<Self> {
        if !is_edge(a, b, params) {
            return Err(Error::NotAnEdge { a, b });
        }
        Ok(Self {
            a: a.min(b),
            b: a.max(b),
        })
    }

    /// Caller guarantees `a < b` and `a != b (mod p)`.
    #[inline]
    pub(crate) fn from_ordered(a: u64, b: u64) -> Self {
        debug_assert!(a < b);
        Self { a, b }
    }

    #[inline]
    pub fn a(&self) -> u64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> u64 {
        self.b
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

pub fn is_edge(a: u64, b: u64, params: LatticeParams) -> bool {
    let (n, p) = (params.n(), params.p());
    (1..=n).contains(&a) && (1..=n).contains(&b) && a % p != b % p
}

/// Streams the edges in lexicographic `(a, b)` order without storing them.
pub fn edges(params: LatticeParams) -> impl Iterator<Item = Edge> {
    let (n, p) = (params.n(), params.p());
    (1..=n).flat_map(move |a| edges_from(a, n, p))
}

/// Edges `{a, b}` with the given smaller endpoint `a`.
pub fn edges_from(a: u64, n: u64, p: u64) -> impl Iterator<Item = Edge> {
    (a + 1..=n)
        .filter(move |b| !(b - a).is_multiple_of(p))
        .map(move |b| Edge::from_ordered(a, b))
}

/// `a_p(n) = ((p-1) n^2 - r (p - r)) / (2p)` with `r = n mod p`, in exact
/// integer arithmetic.
pub fn edge_count(params: LatticeParams) -> u64 {
    edge_count_raw(params.n(), params.p())
}

pub(crate) fn edge_count_raw(n: u64, p: u64) -> u64 {
    let (n, p) = (u128::from(n), u128::from(p));
    let r = n % p;
    let numerator = (p - 1) * n * n - r * (p - r);
    assert_eq!(
        numerator % (2 * p),
        0,
        "a_p(n) numerator must be divisible by 2p"
    );
    u64::try_from(numerator / (2 * p)).expect("a_p(n) fits u64 for n < 2^32")
}

/// Number of `a` in `[1, n]` with `a != n (mod p)`, i.e. `floor((1 - 1/p) n)`.
pub fn new_edges_at(params: LatticeParams) -> u64 {
    (params.p() - 1) * params.n() / params.p()
}

/// Graphviz description with vertices `1..=n` then edges in `(a, b)` order.
pub fn export_dot(params: LatticeParams) -> String {
    let mut out = String::new();
    writeln!(out, "graph turan_{}_{} {{", params.n(), params.p()).unwrap();
    for v in 1..=params.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in edges(params) {
        writeln!(out, "  {} -- {};", e.a, e.b).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Edge list as CSV with header `a,b`.
pub fn export_edge_csv(params: LatticeParams) -> String {
    let mut out = String::from("a,b\n");
    for e in edges(params) {
        writeln!(out, "{},{}", e.a, e.b).unwrap();
    }
    out
}
