//! The Lie algebra sl_{n+1}, its automorphisms, group actions and irreducible modules.

pub mod automorphism;
pub mod chevalley;
pub mod group;
pub mod irreducible;

pub use automorphism::{build_automorphism, GAutomorphism};
pub use chevalley::{BasisKind, ChevalleyAlgebra};
pub use group::{GammaGroup, GeneratorSpec, GroupElement};
pub use irreducible::{irreducible_module, IrrepData};
