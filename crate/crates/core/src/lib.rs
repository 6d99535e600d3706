//! Exact computations with projective modules, Picard and class groups, and
//! the Grothendieck ring `K0` over finite commutative rings and imaginary
//! quadratic orders.

pub mod abelian;
pub mod arith;
pub mod boolean;
pub mod error;
pub mod grothendieck;
pub mod hnf;
pub mod ideals;
pub mod modules;
pub mod quadratic;
pub mod report;
pub mod ring;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{parse_morphism, parse_ring, ConcreteRing, LocalFactor, RingElement, RingMorphism};
