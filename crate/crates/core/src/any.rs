//! Runtime dispatch over the coefficient field chosen in an ideal file.

use crate::field::{PrimeField, Rationals};
use crate::groebner::Ideal;

#[derive(Clone, Debug)]
pub enum AnyIdeal {
    Prime(Ideal<PrimeField>),
    Rational(Ideal<Rationals>),
}

/// Evaluates `$body` with `$i` bound to the concrete ideal.
#[macro_export]
macro_rules! with_ideal {
    ($any:expr, $i:ident => $body:expr) => {
        match $any {
            $crate::AnyIdeal::Prime($i) => $body,
            $crate::AnyIdeal::Rational($i) => $body,
        }
    };
}

impl AnyIdeal {
    pub fn num_vars(&self) -> usize {
        with_ideal!(self, i => i.num_vars())
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            AnyIdeal::Prime(i) => i.ring().field().modulus(),
            AnyIdeal::Rational(_) => 0,
        }
    }
}
