//! Exact computations in finite commutative rings: constructions, ideals,
//! modules, localization, amalgamated algebras and ring-theoretic predicates.

pub mod amalgam;
pub mod elemset;
pub mod error;
pub mod ideal;
pub mod module;
pub mod predicates;
pub mod ring;
pub mod symbolic;
pub mod verifier;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use ideal::Ideal;
pub use module::FiniteModule;
pub use ring::{Elem, FiniteRing, Polynomial, RingHom};
