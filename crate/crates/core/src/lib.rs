//! Exact symbolic kernel for presented commutative rings: polynomial
//! arithmetic over QQ and GF(p), Groebner bases, ideal operations, graded
//! free resolutions, ring invariants, and the ball calculus that assembles
//! upper bounds for singularity-category dimensions.

pub mod bounds;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use field::{Coef, FieldSpec};
pub use groebner::{reduced_groebner, Caps, GroebnerBasis};
pub use ideal::{Dimension, IdealData};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::{parse_polynomial, PolyRing, Polynomial};
pub use ring::{Ring, RingPresentation};
