use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gb::{self, InputRole};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::vector::Vector;

/// An ideal given by generators. The reduced Gröbner basis is computed on
/// first use and cached.
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
    homogeneous: bool,
    gb: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Self {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            homogeneous: self.homogeneous,
            gb,
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        let homogeneous = generators.iter().all(Polynomial::is_homogeneous);
        Ok(Self {
            ring: ring.clone(),
            generators,
            homogeneous,
            gb: OnceLock::new(),
        })
    }

    pub(crate) fn with_basis(ring: &Arc<PolyRing<F>>, basis: Vec<Polynomial<F>>) -> Self {
        let ideal = Self::new(ring, basis.clone()).expect("same ring");
        let _ = ideal.gb.set(basis);
        ideal
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    /// The ideal generated by variables with the given indices.
    pub fn of_variables(ring: &Arc<PolyRing<F>>, vars: &[usize]) -> Self {
        Self::new(
            ring,
            vars.iter().map(|&i| Polynomial::var(ring, i)).collect(),
        )
        .expect("same ring")
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars()
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    fn check_ring(&self, other: &Arc<PolyRing<F>>) -> Result<()> {
        if Arc::ptr_eq(&self.ring, other) || *self.ring == **other {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The unique reduced Gröbner basis for the ring's order: monic, fully
    /// reduced, sorted ascending by leading monomial.
    pub fn groebner_basis(&self) -> Result<&[Polynomial<F>]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let inputs: Vec<_> = self
            .generators
            .iter()
            .map(|g| (Vector::from_poly_at(g, 0), InputRole::Candidate))
            .collect();
        let out = gb::buchberger(&self.ring, &[0], &inputs)?;
        let basis = out
            .basis
            .iter()
            .map(|v| v.component(&self.ring, 0))
            .collect();
        let _ = self.gb.set(basis);
        Ok(self.gb.get().expect("just set"))
    }

    /// Remainder of `f` modulo the Gröbner basis.
    pub fn reduce(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.check_ring(f.ring())?;
        normal_form(f, self.groebner_basis()?)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        self.check_ring(&other.ring)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        self.check_ring(&other.ring)?;
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(Polynomial::is_zero)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(matches!(self.groebner_basis()?, [g] if g.is_constant()))
    }

    pub fn is_proper(&self) -> Result<bool> {
        Ok(!self.is_unit()?)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(&other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(&other.ring)?;
        let mut gens = Vec::new();
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f * g);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// A minimal homogeneous generating set chosen from the given generators
    /// (graded Nakayama): a generator is kept unless it lies in the ideal of
    /// those processed before it in degree order.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial<F>>> {
        if !self.homogeneous {
            return Err(Error::NotHomogeneous(
                "minimal generators need a homogeneous ideal".into(),
            ));
        }
        let inputs: Vec<_> = self
            .generators
            .iter()
            .map(|g| (Vector::from_poly_at(g, 0), InputRole::Candidate))
            .collect();
        let out = gb::buchberger(&self.ring, &[0], &inputs)?;
        let mut chosen: Vec<(u32, usize)> = out
            .survived
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| (self.generators[i].degree().unwrap_or(0), i))
            .collect();
        chosen.sort();
        if self.gb.get().is_none() {
            let basis = out
                .basis
                .iter()
                .map(|v| v.component(&self.ring, 0))
                .collect();
            let _ = self.gb.set(basis);
        }
        Ok(chosen
            .into_iter()
            .map(|(_, i)| self.generators[i].clone())
            .collect())
    }

    /// The same ideal generated by its minimal generators.
    pub fn minimalized(&self) -> Result<Ideal<F>> {
        let gens = self.minimal_generators()?;
        let out = Ideal::new(&self.ring, gens)?;
        if let Some(g) = self.gb.get() {
            let _ = out.gb.set(g.clone());
        }
        Ok(out)
    }

    /// Every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.num_terms() <= 1)
    }

    pub fn is_squarefree_monomial(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.num_terms() <= 1 && g.lead_monomial().is_none_or(|m| m.is_squarefree()))
    }

    /// `I^[q]`, generated by the `q`-th Frobenius powers of the given
    /// generators.
    pub fn frobenius_bracket(&self, q: u32) -> Ideal<F> {
        Ideal::new(
            &self.ring,
            self.generators.iter().map(|g| g.frobenius(q)).collect(),
        )
        .expect("same ring")
    }

    /// Leading monomials of the Gröbner basis (generators of the initial
    /// ideal).
    pub fn initial_monomials(&self) -> Result<Vec<crate::monomial::Monomial>> {
        Ok(self
            .groebner_basis()?
            .iter()
            .filter_map(|g| g.lead_monomial().cloned())
            .collect())
    }
}

/// Multivariate division of `f` by the list `divisors`, tried in list order at
/// every step. The remainder has no term divisible by a leading monomial of
/// the divisors.
pub fn normal_form<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
) -> Result<Polynomial<F>> {
    let ring = f.ring();
    let mut vs = Vec::with_capacity(divisors.len());
    for g in divisors {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        vs.push(Vector::from_poly_at(g, 0));
    }
    let r = gb::divide(ring, &Vector::from_poly_at(f, 0), &vs);
    Ok(r.component(ring, 0))
}

pub fn reduced_groebner_basis<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Polynomial<F>>> {
    Ok(ideal.groebner_basis()?.to_vec())
}

pub fn contains<F: Field>(ideal: &Ideal<F>, f: &Polynomial<F>) -> Result<bool> {
    ideal.contains(f)
}

pub fn ideals_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    a.equals(b)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = f.ring();
    let s = gb::s_vector(
        ring,
        &Vector::from_poly_at(f, 0),
        &Vector::from_poly_at(g, 0),
    )
    .ok_or(Error::ZeroPolynomial)?;
    Ok(s.component(ring, 0))
}
