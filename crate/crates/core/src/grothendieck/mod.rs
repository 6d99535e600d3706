//! Grothendieck completion and the ring `K0`.

pub mod engine;
pub mod k0;
pub mod lifting;
pub mod oracle;

pub use engine::{
    groth_ring, universal_extend, CommMonoid, CommRing, CommSemiring, Completion, FiniteSemiring,
    Integers, Mode, Naturals, Pair,
};
pub use k0::{k0_of_ring, K0Element, K0Ring, K0Shape};
pub use lifting::{k0_surjectivity_check, lifts_idempotents};
