//! Covering relations, irreducible elements and the recursive description
//! of the meet-irreducibles.
//!
//! Upper covers come from two local moves. The *transfer* move (★) turns a
//! consecutive pattern `ab` with `a <= p-1`, `b >= 2` into `(a+1, b-1)`. The
//! *absorb* move (★★) turns a suffix `(i, 1)` with `i <= p-1` into `(i+1)`.
//! Lower covers are the reverse moves.

use crate::composition::{Composition, Compositions};
use crate::error::{Error, Result};
use crate::params::LatticeParams;

/// Selects the meet-flavoured (upper covers, meet-irreducibles) or the
/// join-flavoured (lower covers, join-irreducibles) side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Meet,
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Transfer between positions `index` and `index + 1`.
    Star { index: usize },
    /// Absorb (up) or split off (down) the trailing 1.
    StarStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverDirection {
    Up,
    Down,
}

/// A move witnessing a covering relation from a given composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverMove {
    pub kind: MoveKind,
    pub direction: CoverDirection,
}

impl CoverMove {
    /// Applies the move. Returns `None` when the move's pattern is absent.
    pub fn apply(&self, x: &Composition) -> Option<Composition> {
        let p = x.params().p() as u8;
        let parts = x.parts();
        let m = parts.len();
        let mut out = parts.to_vec();
        match (self.kind, self.direction) {
            (MoveKind::Star { index }, CoverDirection::Up) => {
                let (a, b) = (*parts.get(index)?, *parts.get(index + 1)?);
                if !(a < p && b >= 2) {
                    return None;
                }
                out[index] += 1;
                out[index + 1] -= 1;
            }
            (MoveKind::Star { index }, CoverDirection::Down) => {
                let (a, b) = (*parts.get(index)?, *parts.get(index + 1)?);
                if !(a >= 2 && b < p) {
                    return None;
                }
                out[index] -= 1;
                out[index + 1] += 1;
            }
            (MoveKind::StarStar, CoverDirection::Up) => {
                if !(m >= 2 && parts[m - 1] == 1 && parts[m - 2] < p) {
                    return None;
                }
                out.pop();
                out[m - 2] += 1;
            }
            (MoveKind::StarStar, CoverDirection::Down) => {
                if parts[m - 1] < 2 {
                    return None;
                }
                out[m - 1] -= 1;
                out.push(1);
            }
        }
        Some(Composition::from_raw(out, x.params()))
    }
}

/// All cover moves available from `x` in the given direction, in order of
/// position with the suffix move last.
pub fn cover_moves(x: &Composition, direction: CoverDirection) -> Vec<CoverMove> {
    let p = x.params().p() as u8;
    let parts = x.parts();
    let mut moves: Vec<CoverMove> = parts
        .windows(2)
        .enumerate()
        .filter(|(_, w)| match direction {
            CoverDirection::Up => w[0] < p && w[1] >= 2,
            CoverDirection::Down => w[0] >= 2 && w[1] < p,
        })
        .map(|(index, _)| CoverMove {
            kind: MoveKind::Star { index },
            direction,
        })
        .collect();
    if has_suffix_move(parts, p, direction) {
        moves.push(CoverMove {
            kind: MoveKind::StarStar,
            direction,
        });
    }
    moves
}

fn has_suffix_move(parts: &[u8], p: u8, direction: CoverDirection) -> bool {
    let m = parts.len();
    match direction {
        CoverDirection::Up => m >= 2 && parts[m - 1] == 1 && parts[m - 2] < p,
        CoverDirection::Down => parts[m - 1] != 1,
    }
}

fn covers(x: &Composition, direction: CoverDirection) -> Vec<Composition> {
    let mut out: Vec<Composition> = cover_moves(x, direction)
        .iter()
        .map(|mv| mv.apply(x).expect("move was generated from x"))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Upper covers of `x`, sorted lexicographically.
pub fn upper_covers(x: &Composition) -> Vec<Composition> {
    covers(x, CoverDirection::Up)
}

/// Lower covers of `x`, sorted lexicographically.
pub fn lower_covers(x: &Composition) -> Vec<Composition> {
    covers(x, CoverDirection::Down)
}

/// Number of upper (`Meet`) or lower (`Join`) covers, counted from the
/// patterns in `x` without building them.
pub fn pattern_cover_count(x: &Composition, direction: Direction) -> usize {
    pattern_cover_count_parts(x.parts(), x.params().p() as u8, direction)
}

pub(crate) fn pattern_cover_count_parts(parts: &[u8], p: u8, direction: Direction) -> usize {
    let dir = match direction {
        Direction::Meet => CoverDirection::Up,
        Direction::Join => CoverDirection::Down,
    };
    let patterns = parts
        .windows(2)
        .filter(|w| match dir {
            CoverDirection::Up => w[0] < p && w[1] >= 2,
            CoverDirection::Down => w[0] >= 2 && w[1] < p,
        })
        .count();
    patterns + usize::from(has_suffix_move(parts, p, dir))
}

/// Exactly one upper cover (`Meet`) or exactly one lower cover (`Join`).
pub fn is_irreducible(x: &Composition, direction: Direction) -> bool {
    pattern_cover_count(x, direction) == 1
}

/// Default cap on `|F_n^p|` for operations that walk the whole lattice.
pub const DEFAULT_MAX_POSET_SIZE: u64 = 2_000_000;

/// Fails with `ScaleExceeded` when `|F_n^p| > cap`.
pub fn check_scale(params: LatticeParams, cap: u64) -> Result<()> {
    let size = crate::composition::count_compositions(params);
    if size > num_bigint::BigUint::from(cap) {
        return Err(Error::ScaleExceeded {
            size: size.to_string(),
            cap,
        });
    }
    Ok(())
}

/// `MI_n^p` or `JI_n^p` by filtering the enumeration, in lexicographic
/// order. Fails when `|F_n^p|` exceeds `cap`.
pub fn enumerate_irreducibles(
    params: LatticeParams,
    direction: Direction,
    cap: u64,
) -> Result<Vec<Composition>> {
    check_scale(params, cap)?;
    let p = params.p() as u8;
    let mut out = Vec::new();
    Compositions::new(params).for_each_slice(|parts| {
        if pattern_cover_count_parts(parts, p, direction) == 1 {
            out.push(Composition::from_raw(parts.to_vec(), params));
        }
    });
    Ok(out)
}

/// The map sending `MI_{n-1}^p` into `MI_n^p`: increment a last part below
/// `p`, otherwise append a 1. Defined on all of `F_{n-1}^p`; membership of
/// the image in `MI_n^p` only holds for meet-irreducible inputs.
pub fn f_map(x: &Composition) -> Composition {
    let params = x.params();
    let p = params.p() as u8;
    let next = LatticeParams::new(params.n() + 1, params.p()).expect("n + 1 stays in range");
    let mut parts = x.parts().to_vec();
    let last = parts.len() - 1;
    if parts[last] < p {
        parts[last] += 1;
    } else {
        parts.push(1);
    }
    Composition::from_raw(parts, next)
}

/// `(p^{(n-a) div p}, (n-a) mod p, 1^a)`, the preimage of `a` under
/// [`g_map`]. Requires `1 <= a <= n` and `a != n (mod p)`.
pub fn g_inverse(a: u64, params: LatticeParams) -> Result<Composition> {
    let (n, p) = (params.n(), params.p());
    if a == 0 || a > n || a % p == n % p {
        return Err(Error::RangeError(format!(
            "g^-1 needs 1 <= a <= n, a != n mod p; got a={a}"
        )));
    }
    let mut parts = vec![p as u8; ((n - a) / p) as usize];
    parts.push(((n - a) % p) as u8);
    parts.extend(std::iter::repeat_n(1, a as usize));
    Ok(Composition::from_raw(parts, params))
}

/// `A_n^p`: compositions `(p^k, i, 1^m)` with `1 <= i <= p-1`, `m >= 1`.
/// Sorted lexicographically; the size is `floor((1 - 1/p) n)`.
pub fn enumerate_a(params: LatticeParams) -> Vec<Composition> {
    let mut out: Vec<Composition> = (1..=params.n())
        .filter(|a| a % params.p() != params.n() % params.p())
        .map(|a| g_inverse(a, params).expect("a is admissible"))
        .collect();
    out.sort();
    out
}

/// Trailing-ones count `m` of `x = (p^k, i, 1^m)`.
pub fn g_map(x: &Composition) -> Result<u64> {
    let p = x.params().p() as u8;
    let parts = x.parts();
    let k = parts.iter().take_while(|&&v| v == p).count();
    let rest = &parts[k..];
    match rest.split_first() {
        Some((&i, ones)) if i < p && !ones.is_empty() && ones.iter().all(|&v| v == 1) => {
            Ok(ones.len() as u64)
        }
        _ => Err(Error::NotInA),
    }
}

/// `MI_n^p` built as `f(MI_{n-1}^p) ∪ A_n^p`, bottoming out at `n <= p`
/// where the filter is used. Sorted lexicographically.
pub fn enumerate_mi_recursive(params: LatticeParams) -> Vec<Composition> {
    let p = params.p();
    let base_n = params.n().min(p);
    let base = LatticeParams::new(base_n, p).expect("base params valid");
    let mut level =
        enumerate_irreducibles(base, Direction::Meet, u64::MAX).expect("no cap on the base level");
    for n in base_n + 1..=params.n() {
        let here = LatticeParams::new(n, p).expect("params valid");
        let mut next: Vec<Composition> = level.iter().map(f_map).collect();
        next.extend(enumerate_a(here));
        next.sort();
        level = next;
    }
    level
}
