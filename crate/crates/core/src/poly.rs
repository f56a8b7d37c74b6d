use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::PolyRing;

/// A polynomial with terms sorted strictly descending by the ring's order and
/// no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        Self::term(ring, c, Monomial::one(ring.num_vars()))
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        Self::term(ring, ring.field().one(), Monomial::var(ring.num_vars(), i))
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, m: Monomial) -> Self {
        Self::term(ring, ring.field().one(), m)
    }

    pub fn term(ring: &Arc<PolyRing<F>>, c: F::Elem, m: Monomial) -> Self {
        assert_eq!(m.num_vars(), ring.num_vars(), "monomial length");
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(c, m)]
        };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a normalized polynomial from arbitrary terms (duplicates are
    /// combined, zeros dropped).
    pub fn from_terms<I>(ring: &Arc<PolyRing<F>>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (F::Elem, Monomial)>,
    {
        let mut v: Vec<(F::Elem, Monomial)> = terms.into_iter().collect();
        for (_, m) in &v {
            if m.num_vars() != ring.num_vars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.num_vars(),
                    found: m.num_vars(),
                });
            }
        }
        Ok(Self::normalize(ring, &mut v))
    }

    /// Small-integer convenience constructor: `(coefficient, exponents)`.
    pub fn from_int_terms(ring: &Arc<PolyRing<F>>, terms: &[(i64, &[u32])]) -> Self {
        let k = ring.field();
        Self::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, e)| (k.from_i64(*c), Monomial::from_exponents(e))),
        )
        .expect("exponent vectors match the ring")
    }

    fn normalize(ring: &Arc<PolyRing<F>>, v: &mut Vec<(F::Elem, Monomial)>) -> Self {
        let order = ring.order();
        let k = ring.field();
        v.sort_by(|a, b| order.cmp(&b.1, &a.1));
        let mut terms: Vec<(F::Elem, Monomial)> = Vec::with_capacity(v.len());
        for (c, m) in v.drain(..) {
            match terms.last_mut() {
                Some((lc, lm)) if *lm == m => *lc = k.add(lc, &c),
                _ => terms.push((c, m)),
            }
        }
        terms.retain(|(c, _)| !k.is_zero(c));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(
        ring: &Arc<PolyRing<F>>,
        terms: Vec<(F::Elem, Monomial)>,
    ) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].1, &w[1].1) == Ordering::Greater));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending order.
    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Result<(&F::Elem, &Monomial)> {
        self.terms
            .first()
            .map(|(c, m)| (c, m))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    /// Maximal total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m)) => self.terms.iter().all(|(_, t)| t.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    /// A single nonzero term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let k = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &F::Elem| if subtract { k.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].1, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((sign(&b[j].0), b[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        k.sub(&a[i].0, &b[j].0)
                    } else {
                        k.add(&a[i].0, &b[j].0)
                    };
                    if !k.is_zero(&c) {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(c, m)| (sign(c), m.clone())));
        Self {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let k = self.ring.field();
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c, m) in &self.terms {
            for (d, n) in &other.terms {
                v.push((k.mul(c, d), m.mul(n)));
            }
        }
        Ok(Self::normalize(&self.ring, &mut v))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let k = self.ring.field();
        if k.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(d, m)| (k.mul(c, d), m.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let k = self.ring.field();
        if k.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(d, n)| (k.mul(c, d), n.mul(m)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `c*m -> c^q * m^q` to every term. In characteristic `p` with
    /// `q` a power of `p` this is the `q`-th power of the polynomial.
    pub fn frobenius(&self, q: u32) -> Self {
        let k = self.ring.field();
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (k.pow(c, q as u64), m.pow(q)))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((c, _)) => {
                let inv = self
                    .ring
                    .field()
                    .inv(c)
                    .expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact division; `None` unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let k = self.ring.field();
        let (dc, dm) = divisor.leading_term().ok()?;
        let dinv = k.inv(dc)?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((c, m)) = rest.terms.first() {
            let qm = dm.quotient_of(m)?;
            let qc = k.mul(c, &dinv);
            rest = rest.combine(&divisor.mul_term(&qc, &qm), true);
            quotient.push((qc, qm));
        }
        Some(Self {
            ring: self.ring.clone(),
            terms: quotient,
        })
    }

    /// Re-embeds into a ring with `extra` new variables placed in front.
    pub(crate) fn embed_front(&self, target: &Arc<PolyRing<F>>, extra: usize) -> Self {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(c, m)| (c.clone(), m.prepend_zeros(extra)))
            .collect();
        Self::normalize(target, &mut v)
    }

    /// Inverse of `embed_front`; the first `count` variables must not occur.
    pub(crate) fn drop_front(&self, target: &Arc<PolyRing<F>>, count: usize) -> Self {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(c, m)| (c.clone(), m.drop_leading(count)))
            .collect();
        Self::normalize(target, &mut v)
    }

    /// Same terms viewed in another ring with the same number of variables
    /// (used to change the monomial order).
    pub fn reinterpret(&self, target: &Arc<PolyRing<F>>) -> Result<Self> {
        if target.num_vars() != self.ring.num_vars() || target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        let mut v = self.terms.clone();
        Ok(Self::normalize(target, &mut v))
    }

    pub fn uses_variable(&self, i: usize) -> bool {
        self.terms.iter().any(|(_, m)| m.exponent(i) > 0)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let k = self.ring.field();
        for (idx, (c, m)) in self.terms.iter().enumerate() {
            let neg = k.is_negative_repr(c);
            let abs = if neg { k.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", k.format_elem(&abs))?;
            } else if k.is_one(&abs) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", k.format_elem(&abs))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// The operator forms panic on ring mismatch; use the `try_` methods when
// operands come from different sources.
impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let c = self.ring.field().neg(&self.ring.field().one());
        self.scale(&c)
    }
}
