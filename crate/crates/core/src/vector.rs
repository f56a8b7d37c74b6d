//! Elements of free modules `R^s` and matrices between graded free modules.
//!
//! Vector terms are ordered term over position: the monomial decides, ties
//! go to the smaller component index. When the order has a module block,
//! membership in the block is compared first. Terms are stored in ascending
//! order so the leading term sits at the end of the buffer.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::sync::Arc;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Clone, Debug, PartialEq)]
pub struct VTerm<F: Field> {
    pub coeff: F::Elem,
    pub mono: Monomial,
    pub comp: usize,
}

#[inline]
pub(crate) fn cmp_pos(
    order: MonomialOrder,
    a: (&Monomial, usize),
    b: (&Monomial, usize),
) -> Ordering {
    let k = order.module_block();
    (a.1 < k)
        .cmp(&(b.1 < k))
        .then_with(|| order.cmp(a.0, b.0))
        .then_with(|| b.1.cmp(&a.1))
}

struct HeapKey {
    order: MonomialOrder,
    mono: Monomial,
    comp: usize,
}

impl PartialEq for HeapKey {
    fn eq(&self, other: &Self) -> bool {
        self.comp == other.comp && self.mono == other.mono
    }
}

impl Eq for HeapKey {}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_pos(
            self.order,
            (&self.mono, self.comp),
            (&other.mono, other.comp),
        )
    }
}

/// A vector under repeated `p - c*m*g` updates, handing out its terms from
/// the top. Each update costs the length of `g` rather than of `p`, which
/// keeps long reductions linear.
pub(crate) struct Accumulator<'a, F: Field> {
    ring: &'a PolyRing<F>,
    coeffs: HashMap<(Monomial, usize), F::Elem>,
    /// Every key of `coeffs`, exactly once; zero coefficients are skipped
    /// when popped.
    heap: BinaryHeap<HeapKey>,
}

impl<'a, F: Field> Accumulator<'a, F> {
    pub(crate) fn new(ring: &'a PolyRing<F>, v: Vector<F>) -> Self {
        let order = ring.order();
        let mut coeffs = HashMap::with_capacity(v.terms.len() * 2);
        let mut keys = Vec::with_capacity(v.terms.len());
        for t in v.terms {
            keys.push(HeapKey {
                order,
                mono: t.mono.clone(),
                comp: t.comp,
            });
            coeffs.insert((t.mono, t.comp), t.coeff);
        }
        Self {
            ring,
            coeffs,
            heap: BinaryHeap::from(keys),
        }
    }

    pub(crate) fn pop_lead(&mut self) -> Option<VTerm<F>> {
        let k = self.ring.field();
        while let Some(key) = self.heap.pop() {
            let coeff = self
                .coeffs
                .remove(&(key.mono.clone(), key.comp))
                .expect("heap key present");
            if !k.is_zero(&coeff) {
                return Some(VTerm {
                    coeff,
                    mono: key.mono,
                    comp: key.comp,
                });
            }
        }
        None
    }

    /// Subtracts `c * m * g` without its leading term, which the caller has
    /// already cancelled.
    pub(crate) fn sub_mul_tail(&mut self, c: &F::Elem, m: &Monomial, g: &Vector<F>) {
        let k = self.ring.field();
        let order = self.ring.order();
        let n = g.terms.len();
        for t in &g.terms[..n.saturating_sub(1)] {
            let delta = k.mul(c, &t.coeff);
            let mono = t.mono.mul(m);
            match self.coeffs.entry((mono, t.comp)) {
                Entry::Occupied(mut e) => {
                    let v = k.sub(e.get(), &delta);
                    *e.get_mut() = v;
                }
                Entry::Vacant(e) => {
                    self.heap.push(HeapKey {
                        order,
                        mono: e.key().0.clone(),
                        comp: t.comp,
                    });
                    e.insert(k.neg(&delta));
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vector<F: Field> {
    terms: Vec<VTerm<F>>,
}

impl<F: Field> Default for Vector<F> {
    fn default() -> Self {
        Self { terms: Vec::new() }
    }
}

impl<F: Field> Vector<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(ring: &PolyRing<F>, mut terms: Vec<VTerm<F>>) -> Self {
        let order = ring.order();
        let k = ring.field();
        terms.sort_by(|a, b| cmp_pos(order, (&a.mono, a.comp), (&b.mono, b.comp)));
        let mut out: Vec<VTerm<F>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mono == t.mono => {
                    l.coeff = k.add(&l.coeff, &t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !k.is_zero(&t.coeff));
        Self { terms: out }
    }

    /// The same element with its terms sorted for `ring`'s order.
    pub fn reordered(&self, ring: &PolyRing<F>) -> Self {
        Self::from_terms(ring, self.terms.clone())
    }

    /// The unit vector `e_i`.
    pub fn unit(ring: &PolyRing<F>, i: usize) -> Self {
        Self {
            terms: vec![VTerm {
                coeff: ring.field().one(),
                mono: Monomial::one(ring.num_vars()),
                comp: i,
            }],
        }
    }

    /// `(f_0, ..., f_{s-1})`.
    pub fn from_polys(ring: &PolyRing<F>, polys: &[Polynomial<F>]) -> Self {
        let mut terms = Vec::new();
        for (i, f) in polys.iter().enumerate() {
            for (c, m) in f.terms() {
                terms.push(VTerm {
                    coeff: c.clone(),
                    mono: m.clone(),
                    comp: i,
                });
            }
        }
        Self::from_terms(ring, terms)
    }

    pub fn from_poly_at(f: &Polynomial<F>, comp: usize) -> Self {
        Self {
            terms: f
                .terms()
                .iter()
                .rev()
                .map(|(c, m)| VTerm {
                    coeff: c.clone(),
                    mono: m.clone(),
                    comp,
                })
                .collect(),
        }
    }

    pub fn to_polys(&self, ring: &Arc<PolyRing<F>>, rank: usize) -> Vec<Polynomial<F>> {
        let mut buckets: Vec<Vec<(F::Elem, Monomial)>> = vec![Vec::new(); rank];
        for t in self.terms.iter().rev() {
            buckets[t.comp].push((t.coeff.clone(), t.mono.clone()));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_sorted_terms(ring, b))
            .collect()
    }

    pub fn component(&self, ring: &Arc<PolyRing<F>>, i: usize) -> Polynomial<F> {
        let terms = self
            .terms
            .iter()
            .rev()
            .filter(|t| t.comp == i)
            .map(|t| (t.coeff.clone(), t.mono.clone()))
            .collect();
        Polynomial::from_sorted_terms(ring, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm<F>> {
        self.terms.last()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> &[VTerm<F>] {
        &self.terms
    }

    pub(crate) fn from_ascending(terms: Vec<VTerm<F>>) -> Self {
        Self { terms }
    }

    pub fn max_component(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.comp).max()
    }

    pub fn scale(&self, ring: &PolyRing<F>, c: &F::Elem) -> Self {
        let k = ring.field();
        if k.is_zero(c) {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    coeff: k.mul(&t.coeff, c),
                    mono: t.mono.clone(),
                    comp: t.comp,
                })
                .collect(),
        }
    }

    pub fn monic(&self, ring: &PolyRing<F>) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(t) => {
                let inv = ring.field().inv(&t.coeff).expect("nonzero lead");
                self.scale(ring, &inv)
            }
        }
    }

    /// `self - c * m * other`.
    pub fn sub_mul(&self, ring: &PolyRing<F>, c: &F::Elem, m: &Monomial, other: &Self) -> Self {
        let k = ring.field();
        let order = ring.order();
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Monomial> = b.first().map(|t| t.mono.mul(m));
        while i < a.len() && j < b.len() {
            let bm = bj.as_ref().unwrap();
            match cmp_pos(order, (&a[i].mono, a[i].comp), (bm, b[j].comp)) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(VTerm {
                        coeff: k.neg(&k.mul(c, &b[j].coeff)),
                        mono: bj.take().unwrap(),
                        comp: b[j].comp,
                    });
                    j += 1;
                    bj = b.get(j).map(|t| t.mono.mul(m));
                }
                Ordering::Equal => {
                    let v = k.sub(&a[i].coeff, &k.mul(c, &b[j].coeff));
                    if !k.is_zero(&v) {
                        out.push(VTerm {
                            coeff: v,
                            mono: a[i].mono.clone(),
                            comp: a[i].comp,
                        });
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| t.mono.mul(m));
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push(VTerm {
                coeff: k.neg(&k.mul(c, &t.coeff)),
                mono: t.mono.mul(m),
                comp: t.comp,
            });
        }
        Self { terms: out }
    }

    pub fn add(&self, ring: &PolyRing<F>, other: &Self) -> Self {
        let minus_one = ring.field().neg(&ring.field().one());
        self.sub_mul(ring, &minus_one, &Monomial::one(ring.num_vars()), other)
    }

    pub fn sub(&self, ring: &PolyRing<F>, other: &Self) -> Self {
        self.sub_mul(
            ring,
            &ring.field().one(),
            &Monomial::one(ring.num_vars()),
            other,
        )
    }

    /// `f * self` for a polynomial scalar `f`.
    pub fn mul_poly(&self, ring: &PolyRing<F>, f: &Polynomial<F>) -> Self {
        let k = ring.field();
        let mut acc = Self::zero();
        for (c, m) in f.terms() {
            acc = acc.sub_mul(ring, &k.neg(c), m, self);
        }
        acc
    }

    /// Renumbers components through `map`.
    pub fn map_components(&self, ring: &PolyRing<F>, map: impl Fn(usize) -> usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| VTerm {
                coeff: t.coeff.clone(),
                mono: t.mono.clone(),
                comp: map(t.comp),
            })
            .collect();
        Self::from_terms(ring, terms)
    }

    /// Keeps only components in `lo..hi`, renumbered to start at zero.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < hi)
                .map(|t| VTerm {
                    coeff: t.coeff.clone(),
                    mono: t.mono.clone(),
                    comp: t.comp - lo,
                })
                .collect(),
        }
    }

    /// Degree of a homogeneous vector (term degree plus component shift);
    /// `None` for zero or inhomogeneous vectors.
    pub fn homogeneous_degree(&self, shifts: &[i64]) -> Option<i64> {
        let mut it = self
            .terms
            .iter()
            .map(|t| t.mono.degree() as i64 + shifts[t.comp]);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, shifts: &[i64]) -> bool {
        self.is_zero() || self.homogeneous_degree(shifts).is_some()
    }

    /// Largest term degree including shifts (the sugar of an input).
    pub fn max_degree(&self, shifts: &[i64]) -> Option<i64> {
        self.terms
            .iter()
            .map(|t| t.mono.degree() as i64 + shifts[t.comp])
            .max()
    }

    pub fn frobenius(&self, ring: &PolyRing<F>, q: u32) -> Self {
        let k = ring.field();
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    coeff: k.pow(&t.coeff, q as u64),
                    mono: t.mono.pow(q),
                    comp: t.comp,
                })
                .collect(),
        }
    }

    /// True if some term is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.terms.iter().any(|t| t.mono.is_one())
    }
}

/// A homogeneous map of graded free modules `R^cols -> R^rows`, stored by
/// columns. Column `j` has degree `col_shifts[j]`, measured with the target
/// basis degrees `row_shifts`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub row_shifts: Vec<i64>,
    pub col_shifts: Vec<i64>,
    pub columns: Vec<Vector<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn new(row_shifts: Vec<i64>, col_shifts: Vec<i64>, columns: Vec<Vector<F>>) -> Self {
        debug_assert_eq!(col_shifts.len(), columns.len());
        Self {
            row_shifts,
            col_shifts,
            columns,
        }
    }

    pub fn identity(ring: &PolyRing<F>, shifts: &[i64]) -> Self {
        Self {
            row_shifts: shifts.to_vec(),
            col_shifts: shifts.to_vec(),
            columns: (0..shifts.len()).map(|i| Vector::unit(ring, i)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.row_shifts.len()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, ring: &Arc<PolyRing<F>>, r: usize, c: usize) -> Polynomial<F> {
        self.columns[c].component(ring, r)
    }

    /// Image of `v in R^cols`.
    pub fn apply(&self, ring: &PolyRing<F>, v: &Vector<F>) -> Vector<F> {
        let k = ring.field();
        let mut acc = Vector::zero();
        for t in v.terms() {
            acc = acc.sub_mul(ring, &k.neg(&t.coeff), &t.mono, &self.columns[t.comp]);
        }
        acc
    }

    /// `self * other`.
    pub fn compose(&self, ring: &PolyRing<F>, other: &Matrix<F>) -> Matrix<F> {
        Matrix {
            row_shifts: self.row_shifts.clone(),
            col_shifts: other.col_shifts.clone(),
            columns: other.columns.iter().map(|c| self.apply(ring, c)).collect(),
        }
    }

    /// The dual map `Hom(R^rows, R) -> Hom(R^cols, R)`; degrees are negated.
    pub fn transpose(&self, ring: &PolyRing<F>) -> Matrix<F> {
        let mut cols: Vec<Vec<VTerm<F>>> = vec![Vec::new(); self.rows()];
        for (j, col) in self.columns.iter().enumerate() {
            for t in col.terms() {
                cols[t.comp].push(VTerm {
                    coeff: t.coeff.clone(),
                    mono: t.mono.clone(),
                    comp: j,
                });
            }
        }
        Matrix {
            row_shifts: self.col_shifts.iter().map(|d| -d).collect(),
            col_shifts: self.row_shifts.iter().map(|d| -d).collect(),
            columns: cols
                .into_iter()
                .map(|c| Vector::from_terms(ring, c))
                .collect(),
        }
    }

    pub fn frobenius(&self, ring: &PolyRing<F>, q: u32) -> Matrix<F> {
        Matrix {
            row_shifts: self.row_shifts.iter().map(|d| d * q as i64).collect(),
            col_shifts: self.col_shifts.iter().map(|d| d * q as i64).collect(),
            columns: self.columns.iter().map(|c| c.frobenius(ring, q)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    /// Every column is homogeneous of its declared degree.
    pub fn is_homogeneous(&self) -> bool {
        self.columns.iter().zip(&self.col_shifts).all(|(c, &d)| {
            c.terms()
                .iter()
                .all(|t| t.mono.degree() as i64 + self.row_shifts[t.comp] == d)
        })
    }

    pub fn has_unit_entry(&self) -> bool {
        self.columns.iter().any(Vector::has_unit_entry)
    }
}
