//! Explicit bijections between the edges of the Turán graph and the
//! meet-irreducible (`psi`/`phi`) or join-irreducible (`psi_tilde`/
//! `phi_tilde`) compositions.
//!
//! For an edge `{a, b}` with `a < b`, `psi` builds
//! `(p^((b-a) div p), (b-a) mod p, 1^(a-1), p^((n-b+1) div p), (n-b+1) mod p)`
//! and `psi_tilde` builds `(1^(a-1), (b-a) mod p + 1, p^((b-a) div p), 1^(n-b))`.
//! Zero-valued residues and empty runs are dropped.

use std::fmt::Write as _;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::lattice::{is_irreducible, Direction};
use crate::params::LatticeParams;
use crate::turan::{edges, is_edge, Edge};

/// A composition stored as at most five runs `(value, length)`.
///
/// Adjacent runs may share a value. This is the shape `psi` produces, and
/// lets statistics be read in O(1) without building the part sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Runs {
    runs: [(u8, u64); 5],
    len: usize,
}

impl Runs {
    fn empty() -> Self {
        Self {
            runs: [(0, 0); 5],
            len: 0,
        }
    }

    fn push(&mut self, value: u64, count: u64) {
        if value > 0 && count > 0 {
            self.runs[self.len] = (value as u8, count);
            self.len += 1;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, u64)> + '_ {
        self.runs[..self.len].iter().copied()
    }

    pub fn parts_count(&self) -> u64 {
        self.iter().map(|(_, count)| count).sum()
    }

    pub fn first(&self) -> u8 {
        self.runs[0].0
    }

    /// Positions `j` with `x_i <= x_j` for all `i <= j`.
    pub fn weak_records(&self) -> u64 {
        let mut max = 0;
        let mut records = 0;
        for (value, count) in self.iter() {
            if value >= max {
                records += count;
                max = value;
            }
        }
        records
    }

    pub fn to_composition(&self, params: LatticeParams) -> Composition {
        let mut parts = Vec::with_capacity(self.parts_count() as usize);
        for (value, count) in self.iter() {
            parts.extend(std::iter::repeat_n(value, count as usize));
        }
        Composition::from_raw(parts, params)
    }
}

/// Run shape of `psi({a, b})`. Assumes `1 <= a < b <= n`, `a != b (mod p)`.
pub fn psi_runs(a: u64, b: u64, params: LatticeParams) -> Runs {
    let (n, p) = (params.n(), params.p());
    let gap = b - a;
    let tail = n - b + 1;
    let mut runs = Runs::empty();
    runs.push(p, gap / p);
    runs.push(gap % p, 1);
    runs.push(1, a - 1);
    runs.push(p, tail / p);
    runs.push(tail % p, 1);
    runs
}

fn check_edge(e: Edge, params: LatticeParams) -> Result<()> {
    if is_edge(e.a(), e.b(), params) {
        Ok(())
    } else {
        Err(Error::NotAnEdge { a: e.a(), b: e.b() })
    }
}

/// The meet-irreducible composition assigned to an edge.
pub fn psi(e: Edge, params: LatticeParams) -> Result<Composition> {
    check_edge(e, params)?;
    Ok(psi_runs(e.a(), e.b(), params).to_composition(params))
}

/// Prefix decomposition `(p^k, i, 1^m, ...)` of a meet-irreducible, with
/// `k`, `i`, `m` maximal, plus the end indicator `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MiProfile {
    pub k: u64,
    pub i: u64,
    pub m: u64,
    /// 1 unless the composition ends by 1 without ending by `(p, 1)`.
    pub delta: u64,
}

pub fn mi_profile(x: &Composition) -> Result<MiProfile> {
    let p = x.params().p() as u8;
    let parts = x.parts();
    let k = parts.iter().take_while(|&&v| v == p).count();
    let i = *parts.get(k).ok_or(Error::NoProfile)?;
    let m = parts[k + 1..].iter().take_while(|&&v| v == 1).count();
    let delta = if x.last() != 1 || x.ends_with_pair(p, 1) {
        1
    } else {
        0
    };
    Ok(MiProfile {
        k: k as u64,
        i: u64::from(i),
        m: m as u64,
        delta,
    })
}

/// Inverse of [`psi`]: `{m + delta, p k + i + m + delta}`. Rejects inputs
/// that are not meet-irreducible.
pub fn phi(x: &Composition, params: LatticeParams) -> Result<Edge> {
    if x.params() != params {
        return Err(Error::ParamMismatch);
    }
    if !is_irreducible(x, Direction::Meet) {
        return Err(Error::NotMeetIrreducible);
    }
    phi_trusted(x, params)
}

/// [`phi`] without the irreducibility check, for inputs known to be
/// `psi` images.
pub fn phi_trusted(x: &Composition, params: LatticeParams) -> Result<Edge> {
    let profile = mi_profile(x)?;
    let low = profile.m + profile.delta;
    let high = params.p() * profile.k + profile.i + low;
    Edge::new(low, high, params)
}

/// The join-irreducible composition assigned to an edge.
pub fn psi_tilde(e: Edge, params: LatticeParams) -> Result<Composition> {
    check_edge(e, params)?;
    Ok(psi_tilde_runs(e.a(), e.b(), params).to_composition(params))
}

pub fn psi_tilde_runs(a: u64, b: u64, params: LatticeParams) -> Runs {
    let (n, p) = (params.n(), params.p());
    let gap = b - a;
    let mut runs = Runs::empty();
    runs.push(1, a - 1);
    runs.push(gap % p + 1, 1);
    runs.push(p, gap / p);
    runs.push(1, n - b);
    runs
}

/// Maximal runs of 1s at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunProfile {
    pub leading_ones: u64,
    pub trailing_ones: u64,
}

/// For the all-ones composition `(1^m)` the runs would overlap; it is split
/// as `leading = m - 1`, `trailing = 1`.
pub fn run_profile(x: &Composition) -> RunProfile {
    let parts = x.parts();
    let leading = parts.iter().take_while(|&&v| v == 1).count() as u64;
    if leading == parts.len() as u64 {
        return RunProfile {
            leading_ones: leading - 1,
            trailing_ones: 1,
        };
    }
    let trailing = parts.iter().rev().take_while(|&&v| v == 1).count() as u64;
    RunProfile {
        leading_ones: leading,
        trailing_ones: trailing,
    }
}

/// Inverse of [`psi_tilde`]: `{leading + 1, n - trailing}`. Rejects inputs
/// that are not join-irreducible.
pub fn phi_tilde(x: &Composition, params: LatticeParams) -> Result<Edge> {
    if x.params() != params {
        return Err(Error::ParamMismatch);
    }
    if !is_irreducible(x, Direction::Join) {
        return Err(Error::NotJoinIrreducible);
    }
    phi_tilde_trusted(x, params)
}

/// [`phi_tilde`] without the lower-cover count. The all-ones bottom element
/// is still rejected.
pub fn phi_tilde_trusted(x: &Composition, params: LatticeParams) -> Result<Edge> {
    if x.parts().iter().all(|&v| v == 1) {
        return Err(Error::NotJoinIrreducible);
    }
    let profile = run_profile(x);
    Edge::new(
        profile.leading_ones + 1,
        params.n() - profile.trailing_ones,
        params,
    )
}

/// `(edge, image)` rows for every edge, sorted by `(a, b)`.
pub fn bijection_table(params: LatticeParams, side: Direction) -> Vec<(Edge, Composition)> {
    edges(params)
        .map(|e| {
            let runs = match side {
                Direction::Meet => psi_runs(e.a(), e.b(), params),
                Direction::Join => psi_tilde_runs(e.a(), e.b(), params),
            };
            (e, runs.to_composition(params))
        })
        .collect()
}

/// CSV with header `a,b,composition`; compositions use the spaced form
/// `(2 1 3)` so no field contains a comma.
pub fn table_csv(rows: &[(Edge, Composition)]) -> String {
    let mut out = String::from("a,b,composition\n");
    for (e, x) in rows {
        writeln!(out, "{},{},{}", e.a(), e.b(), x.to_spaced()).unwrap();
    }
    out
}

/// JSON array of `{"a", "b", "composition"}` objects.
pub fn table_json(rows: &[(Edge, Composition)]) -> String {
    let value: Vec<serde_json::Value> = rows
        .iter()
        .map(|(e, x)| serde_json::json!({ "a": e.a(), "b": e.b(), "composition": x.to_string() }))
        .collect();
    serde_json::to_string_pretty(&value).expect("plain JSON values serialize") + "\n"
}
