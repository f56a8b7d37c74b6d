use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exponents = SmallVec<[u16; 16]>;

/// A power product `x0^e0 * ... * x{n-1}^e{n-1}`; total degree is cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, num_vars),
            degree: 0,
        }
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut m = Self::one(num_vars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let exps: Exponents = exps
            .iter()
            .map(|&e| u16::try_from(e).expect("exponent exceeds u16"))
            .collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Self { exps, degree }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps.iter().map(|&e| e as u32)
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, q: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&e| u16::try_from(e as u32 * q).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree * q,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Support as a bit mask (requires at most 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Inserts `extra` zero exponents in front (used for auxiliary variables).
    pub(crate) fn prepend_zeros(&self, extra: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, extra);
        exps.extend_from_slice(&self.exps);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Drops the first `count` variables, which must have exponent zero.
    pub(crate) fn drop_leading(&self, count: usize) -> Monomial {
        debug_assert!(self.exps[..count].iter().all(|&e| e == 0));
        Monomial {
            exps: SmallVec::from_slice(&self.exps[count..]),
            degree: self.degree,
        }
    }

    pub(crate) fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.degree = m.degree - m.exps[i] as u32 + e;
        m.exps[i] = e as u16;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Grevlex,
    Lex,
    #[serde(rename = "glex")]
    GradedLex,
}

/// A monomial order. With `eliminate = k > 0` the first `k` variables form a
/// block compared by grevlex before the remaining variables are compared by
/// `kind`; such a product order eliminates the first block.
///
/// Module elements are ordered term over position, except that components
/// below `module_block` all rank above the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    eliminate: usize,
    module_block: usize,
}

impl MonomialOrder {
    pub const GREVLEX: Self = Self::new(OrderKind::Grevlex);
    pub const LEX: Self = Self::new(OrderKind::Lex);
    pub const GRADED_LEX: Self = Self::new(OrderKind::GradedLex);

    pub const fn new(kind: OrderKind) -> Self {
        Self {
            kind,
            eliminate: 0,
            module_block: 0,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn eliminated_block(&self) -> usize {
        self.eliminate
    }

    /// The same order on the remaining variables with a new leading block of
    /// `count` variables to eliminate.
    pub fn eliminating(self, count: usize) -> Self {
        Self {
            eliminate: count,
            ..self
        }
    }

    pub fn module_block(&self) -> usize {
        self.module_block
    }

    /// Components `< count` dominate all others, which makes module Gröbner
    /// bases eliminate them.
    pub fn with_module_block(self, count: usize) -> Self {
        Self {
            module_block: count,
            ..self
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrderKind::Grevlex => "grevlex",
            OrderKind::Lex => "lex",
            OrderKind::GradedLex => "glex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(Self::GREVLEX),
            "lex" => Some(Self::LEX),
            "glex" | "graded-lex" | "deglex" => Some(Self::GRADED_LEX),
            _ => None,
        }
    }

    /// Compares two monomials of equal length.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exps.len(), b.exps.len());
        if self.eliminate == 0 {
            return cmp_slices(self.kind, &a.exps, &b.exps, a.degree, b.degree);
        }
        let k = self.eliminate;
        let (ah, at) = a.exps.split_at(k);
        let (bh, bt) = b.exps.split_at(k);
        let adh: u32 = ah.iter().map(|&e| e as u32).sum();
        let bdh: u32 = bh.iter().map(|&e| e as u32).sum();
        cmp_slices(OrderKind::Grevlex, ah, bh, adh, bdh)
            .then_with(|| cmp_slices(self.kind, at, bt, a.degree - adh, b.degree - bdh))
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::GREVLEX
    }
}

#[inline]
fn cmp_slices(kind: OrderKind, a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    match kind {
        OrderKind::Lex => a.cmp(b),
        OrderKind::GradedLex => da.cmp(&db).then_with(|| a.cmp(b)),
        OrderKind::Grevlex => da.cmp(&db).then_with(|| {
            for (x, y) in a.iter().zip(b).rev() {
                if x != y {
                    // smaller exponent in the last differing variable wins
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }),
    }
}

/// Checked comparison for callers holding monomials of unknown provenance.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.num_vars() != b.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: a.num_vars(),
            found: b.num_vars(),
        });
    }
    Ok(order.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Brute-force order oracle written straight from the definitions, on
    /// plain exponent vectors.
    fn oracle(kind: OrderKind, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        match kind {
            OrderKind::Lex => {
                for i in 0..a.len() {
                    if a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
            OrderKind::GradedLex => {
                if da != db {
                    return da.cmp(&db);
                }
                oracle(OrderKind::Lex, a, b)
            }
            OrderKind::Grevlex => {
                if da != db {
                    return da.cmp(&db);
                }
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return if a[i] < b[i] {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                }
                Ordering::Equal
            }
        }
    }

    #[test]
    fn grevlex_degree_two_chain() {
        let o = MonomialOrder::GREVLEX;
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn reflexive() {
        for o in [
            MonomialOrder::GREVLEX,
            MonomialOrder::LEX,
            MonomialOrder::GRADED_LEX,
        ] {
            let a = m(&[1, 2, 0, 3]);
            assert_eq!(o.cmp(&a, &a), Ordering::Equal);
        }
    }

    #[test]
    fn lex_and_grevlex_disagree() {
        let a = m(&[1, 0, 0, 2]);
        let b = m(&[0, 3, 0, 0]);
        assert_eq!(
            oracle(OrderKind::Lex, &[1, 0, 0, 2], &[0, 3, 0, 0]),
            Ordering::Greater
        );
        assert_eq!(
            oracle(OrderKind::Grevlex, &[1, 0, 0, 2], &[0, 3, 0, 0]),
            Ordering::Less
        );
        assert_eq!(MonomialOrder::LEX.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::GREVLEX.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let r = compare_monomials(&m(&[1, 0]), &m(&[1, 0, 0]), MonomialOrder::GREVLEX);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn elimination_order_puts_block_first() {
        let o = MonomialOrder::GREVLEX.eliminating(1);
        // t beats any power of the other variables
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    fn exps(n: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..4, n)
    }

    fn kinds() -> impl Strategy<Value = OrderKind> {
        prop_oneof![
            Just(OrderKind::Grevlex),
            Just(OrderKind::Lex),
            Just(OrderKind::GradedLex)
        ]
    }

    proptest! {
        #[test]
        fn matches_oracle(kind in kinds(), a in exps(4), b in exps(4)) {
            let o = MonomialOrder::new(kind);
            prop_assert_eq!(o.cmp(&m(&a), &m(&b)), oracle(kind, &a, &b));
        }

        #[test]
        fn multiplicative(kind in kinds(), a in exps(4), b in exps(4), c in exps(4)) {
            let o = MonomialOrder::new(kind);
            let (a, b, c) = (m(&a), m(&b), m(&c));
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
        }

        #[test]
        fn antisymmetric(kind in kinds(), a in exps(3), b in exps(3)) {
            let o = MonomialOrder::new(kind);
            prop_assert_eq!(o.cmp(&m(&a), &m(&b)), o.cmp(&m(&b), &m(&a)).reverse());
        }
    }
}
