//! The coordinate algebra of the torus: Laurent polynomials, points, jets,
//! quotients A/I_η, the Γ-action and interpolation.

pub mod interpolate;
pub mod jets;
pub mod laurent;
pub mod point;

pub use interpolate::interpolate;
pub use jets::{jet_expand, JetAlgebra, QuotientAlgebra};
pub use laurent::LaurentFunction;
pub use point::{orbit_saturate, require_xstar, validate_free_and_xstar, EtaFunction, FreenessReport, Point};
