pub mod any;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod gb;
pub mod groebner;
pub mod harness;
pub mod ideal_ops;
pub mod linkage;
pub mod monomial;
pub mod par;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod rng;
pub mod stanley_reisner;
pub mod vector;

pub use any::AnyIdeal;
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use groebner::Ideal;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::Polynomial;
pub use ring::{PolyRing, RingDescriptor};
