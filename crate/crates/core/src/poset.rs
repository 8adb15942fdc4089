//! Brute-force lattice operations over a materialized `F_n^p`.
//!
//! These are oracles: they only use the raw dominance order, never the
//! pattern characterization of covers, so they can check it.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::composition::{dominance_leq_parts, enumerate_compositions, Composition, Compositions};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{check_scale, Direction};
use crate::params::LatticeParams;

/// Largest `|F_n^p|` for which [`Poset`] stores the full order relation
/// (two `N x N` bit matrices).
pub const ORDER_MATRIX_LIMIT: u64 = 20_000;

/// `F_n^p` with its dominance order memoized as down-set and up-set bit rows.
pub struct Poset {
    params: LatticeParams,
    elements: Vec<Composition>,
    index: HashMap<Composition, usize>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    down_len: Vec<usize>,
    up_len: Vec<usize>,
}

impl Poset {
    /// Materializes the lattice. The cap is clamped to [`ORDER_MATRIX_LIMIT`].
    pub fn new(params: LatticeParams, cap: u64) -> Result<Self> {
        Self::with_execution(params, cap, Execution::default())
    }

    pub fn with_execution(params: LatticeParams, cap: u64, exec: Execution) -> Result<Self> {
        check_scale(params, cap.min(ORDER_MATRIX_LIMIT))?;
        let elements = enumerate_compositions(params);
        let size = elements.len();
        let down: Vec<FixedBitSet> = exec.map(0..size, |i| {
            let mut row = FixedBitSet::with_capacity(size);
            for (j, z) in elements.iter().enumerate() {
                if dominance_leq_parts(z.parts(), elements[i].parts()) {
                    row.insert(j);
                }
            }
            row
        });
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for (i, row) in down.iter().enumerate() {
            for j in row.ones() {
                up[j].insert(i);
            }
        }
        let down_len = down.iter().map(|r| r.count_ones(..)).collect();
        let up_len = up.iter().map(|r| r.count_ones(..)).collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        Ok(Self {
            params,
            elements,
            index,
            down,
            up,
            down_len,
            up_len,
        })
    }

    pub fn params(&self) -> LatticeParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Composition] {
        &self.elements
    }

    pub fn index_of(&self, x: &Composition) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Indices of the elements below `i`, including `i`.
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    /// Indices of the elements above `i`, including `i`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    /// Greatest lower bound (`Meet`) or least upper bound (`Join`) of two
    /// element indices.
    pub fn bound(&self, i: usize, j: usize, direction: Direction) -> Result<usize> {
        let (rows, lens) = match direction {
            Direction::Meet => (&self.down, &self.down_len),
            Direction::Join => (&self.up, &self.up_len),
        };
        let mut common = rows[i].clone();
        common.intersect_with(&rows[j]);
        let size = common.count_ones(..);
        // The extremum w of the common bounds is the one whose own down-set
        // (resp. up-set) is the whole common set.
        let mut found = None;
        for w in common.ones() {
            if lens[w] == size {
                if found.is_some() {
                    return Err(Error::NonUniqueExtremum);
                }
                found = Some(w);
            }
        }
        found.ok_or(Error::NonUniqueExtremum)
    }

    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        self.bound(i, j, Direction::Meet)
    }

    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        self.bound(i, j, Direction::Join)
    }

    /// Covers of element `i` read off the order relation: minimal elements
    /// of the strict up-set (`Up`) or maximal elements of the strict down-set.
    pub fn hasse_covers(&self, i: usize, direction: Direction) -> Vec<usize> {
        let (strict, other) = match direction {
            Direction::Meet => (&self.up, &self.down),
            Direction::Join => (&self.down, &self.up),
        };
        let mut above = strict[i].clone();
        above.set(i, false);
        above
            .ones()
            .filter(|&y| {
                let mut between = above.clone();
                between.intersect_with(&other[y]);
                between.count_ones(..) == 1
            })
            .collect()
    }

    /// Number of cover pairs in the Hasse diagram.
    pub fn hasse_edge_count(&self) -> usize {
        (0..self.len())
            .map(|i| self.hasse_covers(i, Direction::Meet).len())
            .sum()
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&i| self.down_len[i] == 1)
            .expect("finite lattice has a bottom")
    }

    pub fn top(&self) -> usize {
        (0..self.len())
            .find(|&i| self.up_len[i] == 1)
            .expect("finite lattice has a top")
    }

    /// Irreducibility from the lattice operation alone: `x` is
    /// meet-irreducible when it is not the top and never arises as `y ∧ z`
    /// with `y, z` both different from `x` (dually for joins).
    pub fn irreducible_by_definition(
        &self,
        direction: Direction,
        exec: Execution,
    ) -> Result<Vec<bool>> {
        let size = self.len();
        let reducible_from: Vec<Result<Vec<usize>>> = exec.map(0..size, |i| {
            let mut hits = Vec::new();
            for j in i + 1..size {
                let w = self.bound(i, j, direction)?;
                if w != i && w != j {
                    hits.push(w);
                }
            }
            Ok(hits)
        });
        let mut irreducible = vec![true; size];
        for hits in reducible_from {
            for w in hits? {
                irreducible[w] = false;
            }
        }
        let extreme = match direction {
            Direction::Meet => self.top(),
            Direction::Join => self.bottom(),
        };
        irreducible[extreme] = false;
        Ok(irreducible)
    }
}

/// Meet or join of two compositions by a streaming scan of `F_n^p`.
///
/// Keeps a running candidate among the common bounds and then checks that
/// it dominates (resp. is dominated by) every common bound. Fails with
/// `ScaleExceeded` when `|F_n^p| > cap`.
pub fn meet_join_oracle(
    x: &Composition,
    y: &Composition,
    direction: Direction,
    cap: u64,
) -> Result<Composition> {
    if x.params() != y.params() {
        return Err(Error::ParamMismatch);
    }
    let params = x.params();
    check_scale(params, cap)?;
    let below = |a: &[u8], b: &[u8]| match direction {
        Direction::Meet => dominance_leq_parts(a, b),
        Direction::Join => dominance_leq_parts(b, a),
    };
    let is_bound = |z: &[u8]| below(z, x.parts()) && below(z, y.parts());

    let mut candidate: Option<Vec<u8>> = None;
    Compositions::new(params).for_each_slice(|z| {
        if is_bound(z) {
            match &candidate {
                Some(c) if !below(c, z) => {}
                _ => candidate = Some(z.to_vec()),
            }
        }
    });
    let candidate = candidate.ok_or(Error::NonUniqueExtremum)?;
    let mut extremal = true;
    Compositions::new(params).for_each_slice(|z| {
        if extremal && is_bound(z) && !below(z, &candidate) {
            extremal = false;
        }
    });
    if !extremal {
        return Err(Error::NonUniqueExtremum);
    }
    Ok(Composition::from_raw(candidate, params))
}
