//! Compositions of `n` with parts in `[1, p]` and the dominance order.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::LatticeParams;

/// An element of `F_n^p`.
///
/// Equality, ordering and hashing look at the part sequence only. Ordering
/// is lexicographic on the parts, which is the enumeration order.
#[derive(Clone)]
pub struct Composition {
    parts: Vec<u8>,
    params: LatticeParams,
}

impl Composition {
    /// Checks every part against `[1, p]` and the total against `n`.
    pub fn new<I>(parts: I, params: LatticeParams) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        let mut stored = Vec::new();
        let mut total: u64 = 0;
        for (index, part) in parts.into_iter().enumerate() {
            let part = part.into();
            if part == 0 || part > params.p() {
                return Err(Error::PartOutOfRange(index));
            }
            total = total
                .checked_add(part)
                .ok_or(Error::Overflow("composition total"))?;
            stored.push(part as u8);
        }
        if stored.is_empty() {
            return Err(Error::EmptySequence);
        }
        if total != params.n() {
            return Err(Error::WrongTotal(total));
        }
        Ok(Self {
            parts: stored,
            params,
        })
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_raw(parts: Vec<u8>, params: LatticeParams) -> Self {
        debug_assert!(!parts.is_empty());
        debug_assert!(parts.iter().all(|&x| x >= 1 && u64::from(x) <= params.p()));
        debug_assert_eq!(parts.iter().map(|&x| u64::from(x)).sum::<u64>(), params.n());
        Self { parts, params }
    }

    /// Parses the text form `"(2,1,3)"`. Whitespace around parts is
    /// accepted, so the CSV form `"(2 1 3)"` also parses.
    pub fn parse(text: &str, params: LatticeParams) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(text.to_owned()))?;
        let sep = if inner.contains(',') { ',' } else { ' ' };
        let parts = inner
            .split(sep)
            .filter(|s| sep == ',' || !s.is_empty())
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(text.to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts, params)
    }

    #[inline]
    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    #[inline]
    pub fn params(&self) -> LatticeParams {
        self.params
    }

    #[inline]
    pub fn first(&self) -> u8 {
        self.parts[0]
    }

    #[inline]
    pub fn last(&self) -> u8 {
        self.parts[self.parts.len() - 1]
    }

    /// True when the composition ends by the two parts `(a, b)`.
    pub fn ends_with_pair(&self, a: u8, b: u8) -> bool {
        self.parts.len() >= 2 && self.parts[self.parts.len() - 2..] == [a, b]
    }

    pub fn prefix_sums(&self) -> impl Iterator<Item = u64> + '_ {
        self.parts.iter().scan(0u64, |acc, &x| {
            *acc += u64::from(x);
            Some(*acc)
        })
    }

    /// Text form with spaces instead of commas, used in CSV output.
    pub fn to_spaced(&self) -> String {
        let mut out = String::with_capacity(2 * self.parts.len() + 1);
        out.push('(');
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&x.to_string());
        }
        out.push(')');
        out
    }
}

impl PartialEq for Composition {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl Eq for Composition {}

impl Hash for Composition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parts.hash(state);
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Lexicographic walk over `F_n^p` reusing a single buffer.
///
/// The successor of `x` increments the last part `x_j < p` that is not the
/// final part, truncates after `j` and refills the freed total with ones.
pub struct Compositions {
    params: LatticeParams,
    buf: Vec<u8>,
    started: bool,
    done: bool,
}

impl Compositions {
    pub fn new(params: LatticeParams) -> Self {
        Self {
            params,
            buf: vec![1; params.n() as usize],
            started: false,
            done: false,
        }
    }

    /// Advances and returns the next composition as a borrowed slice.
    pub fn next_slice(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.buf);
        }
        let p = self.params.p() as u8;
        let mut suffix: u64 = u64::from(*self.buf.last()?);
        let mut j = self.buf.len() - 1;
        loop {
            if j == 0 {
                self.done = true;
                return None;
            }
            j -= 1;
            if self.buf[j] < p {
                break;
            }
            suffix += u64::from(self.buf[j]);
        }
        self.buf[j] += 1;
        self.buf.truncate(j + 1);
        self.buf
            .extend(std::iter::repeat_n(1, (suffix - 1) as usize));
        Some(&self.buf)
    }

    /// Visits every composition without allocating per element.
    pub fn for_each_slice(mut self, mut visit: impl FnMut(&[u8])) {
        while let Some(parts) = self.next_slice() {
            visit(parts);
        }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let params = self.params;
        self.next_slice()
            .map(|parts| Composition::from_raw(parts.to_vec(), params))
    }
}

/// Every element of `F_n^p`, in lexicographic order.
pub fn enumerate_compositions(params: LatticeParams) -> Vec<Composition> {
    Compositions::new(params).collect()
}

/// `F_0^p, ..., F_{n_max}^p` from `F_k = F_{k-1} + ... + F_{k-p}`, `F_0 = 1`,
/// `F_k = 0` for negative `k`.
pub fn generalized_fibonacci_sequence(n_max: u64, p: u64) -> Result<Vec<BigUint>> {
    if p < 2 {
        return Err(Error::InvalidParams {
            n: n_max,
            p,
            reason: "p must be at least 2",
        });
    }
    let mut seq = Vec::with_capacity(n_max as usize + 1);
    let mut window: VecDeque<BigUint> = VecDeque::with_capacity(p as usize);
    let mut window_sum = BigUint::zero();
    seq.push(BigUint::one());
    window.push_back(BigUint::one());
    window_sum += 1u32;
    for _ in 1..=n_max {
        let next = window_sum.clone();
        window_sum += &next;
        window.push_back(next.clone());
        if window.len() > p as usize {
            let dropped = window.pop_front().expect("window is nonempty");
            window_sum -= dropped;
        }
        seq.push(next);
    }
    Ok(seq)
}

/// `F_n^p`. Unlike [`LatticeParams`], `n = 0` is accepted.
pub fn generalized_fibonacci(n: u64, p: u64) -> Result<BigUint> {
    let mut seq = generalized_fibonacci_sequence(n, p)?;
    Ok(seq.pop().expect("sequence has n + 1 terms"))
}

pub fn count_compositions(params: LatticeParams) -> BigUint {
    generalized_fibonacci(params.n(), params.p()).expect("params are validated")
}

/// `x <= y` in the dominance order: the first `min(m, l)` prefix sums of
/// `x` are bounded by those of `y`.
pub fn dominance_leq(x: &Composition, y: &Composition) -> Result<bool> {
    if x.params != y.params {
        return Err(Error::ParamMismatch);
    }
    Ok(dominance_leq_parts(&x.parts, &y.parts))
}

pub(crate) fn dominance_leq_parts(x: &[u8], y: &[u8]) -> bool {
    let (mut sx, mut sy) = (0u64, 0u64);
    for (&a, &b) in x.iter().zip(y) {
        sx += u64::from(a);
        sy += u64::from(b);
        if sx > sy {
            return false;
        }
    }
    true
}
