use std::fmt;

use crate::error::{Error, Result};

/// Largest supported maximal part; parts are stored as `u8`.
pub const MAX_P: u64 = u8::MAX as u64;

/// Largest supported composition total. Keeps `n^3` sums inside `u128`
/// and `a_p(n)` inside `u64`.
pub const MAX_N: u64 = u32::MAX as u64;

/// The pair `(n, p)` selecting the lattice of compositions of `n` with
/// parts in `[1, p]`, and the matching Turán graph on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeParams {
    n: u64,
    p: u64,
}

impl LatticeParams {
    pub fn new(n: u64, p: u64) -> Result<Self> {
        let reason = if n == 0 {
            "n must be at least 1"
        } else if n > MAX_N {
            "n exceeds the supported maximum (2^32 - 1)"
        } else if p < 2 {
            "p must be at least 2"
        } else if p > MAX_P {
            "p exceeds the supported maximum (255)"
        } else {
            return Ok(Self { n, p });
        };
        Err(Error::InvalidParams { n, p, reason })
    }

    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Same `p`, total `n - 1`. `None` when `n == 1`.
    pub fn predecessor(&self) -> Option<Self> {
        (self.n > 1).then(|| Self {
            n: self.n - 1,
            p: self.p,
        })
    }
}

impl fmt::Display for LatticeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, p={})", self.n, self.p)
    }
}
