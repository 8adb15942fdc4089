//! The lattice `F_n^p` of compositions of `n` with parts in `[1, p]` under
//! the dominance order, the `(n, p)`-Turán graph, and explicit bijections
//! between the graph's edges and the lattice's meet- and join-irreducible
//! elements, with exact and asymptotic statistics over the
//! meet-irreducibles.
//!
//! Exhaustive sweeps run on rayon when the `parallel` feature (default) is
//! enabled; see [`Execution`].

pub mod bijection;
pub mod composition;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod params;
pub mod poset;
pub mod stats;
pub mod turan;
pub mod verify;

pub use bijection::{
    bijection_table, mi_profile, phi, phi_tilde, psi, psi_tilde, run_profile, MiProfile, RunProfile,
};
pub use composition::{
    count_compositions, dominance_leq, enumerate_compositions, generalized_fibonacci, Composition,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use lattice::{
    enumerate_a, enumerate_irreducibles, enumerate_mi_recursive, f_map, g_map, is_irreducible,
    lower_covers, pattern_cover_count, upper_covers, CoverMove, Direction,
};
pub use params::LatticeParams;
pub use poset::{meet_join_oracle, Poset};
pub use stats::{build_report, StatKind, StatReport, SumStrategy};
pub use turan::{edge_count, edges, is_edge, Edge};
