//! Reachability for vector addition systems through the ideal
//! decomposition of their run sets.
//!
//! The library is organised bottom-up:
//!
//! * [`vas`], [`embed`], [`oracle`], [`local`]: the VAS model, run
//!   semantics, the embedding order on preruns, amalgamation, a
//!   breadth-first testing oracle and a bounded explorer for local run sets.
//! * [`omega`], [`ideals`]: effective representations of the ideals used
//!   by the algorithm (ω-vectors, partial transitions, products).
//! * [`ordinal`]: Cantor-normal-form ordinals below ω^(ω³) used as ranks.
//! * [`coverability`]: Karp–Miller covers over witness graphs and the
//!   pumpability tests.
//! * [`diophantine`]: Hilbert bases of linear systems over the naturals and
//!   exact integer programming for boundedness queries.
//! * [`klmst`]: marked witness graph sequences, the perfectness test, the
//!   refinement step and the main decomposition loop.

pub mod coverability;
pub mod diophantine;
pub mod embed;
pub mod error;
pub mod ideals;
pub mod klmst;
pub mod local;
pub mod omega;
pub mod oracle;
pub mod ordinal;
pub mod vas;

pub use error::{Error, Result};
pub use omega::{Nat, OmegaVec};
pub use vas::{Action, ActionId, Config, Instance, Prerun, Step, Vas};
