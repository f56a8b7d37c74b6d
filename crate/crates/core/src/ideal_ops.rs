//! Intersection, colon, Krull dimension, height, regular sequences and
//! complete-intersection detection.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    /// `dim R/I`, or -1 for the unit ideal.
    pub krull_dim: i64,
    /// `n - dim R/I`; `None` for the unit ideal.
    pub height: Option<usize>,
    pub is_unit: bool,
}

/// `I ∩ J`, computed as `(t·I + (1 - t)·J) ∩ k[x]` with `t` eliminated first.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    if i.ring() != j.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = i.ring();
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    let ext = ring.with_elimination_block(1);
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::new();
    for f in i.generators().iter().filter(|f| !f.is_zero()) {
        gens.push(&t * &f.embed_front(&ext, 1));
    }
    for g in j.generators().iter().filter(|g| !g.is_zero()) {
        gens.push(&one_minus_t * &g.embed_front(&ext, 1));
    }
    let big = Ideal::new(&ext, gens)?;
    let basis: Vec<Polynomial<F>> = big
        .groebner_basis()?
        .iter()
        .filter(|g| !g.uses_variable(0))
        .map(|g| g.drop_front(ring, 1))
        .collect();
    Ok(Ideal::with_basis(ring, basis))
}

/// `I : J = { f : f·J ⊆ I }`, intersecting `(I ∩ (g)) / g` over the
/// generators `g` of `J`.
pub fn colon<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    if i.ring() != j.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = i.ring();
    let divisors: Vec<&Polynomial<F>> = j.generators().iter().filter(|g| !g.is_zero()).collect();
    if divisors.is_empty() {
        return Err(Error::ColonByZero);
    }
    let mut acc: Option<Ideal<F>> = None;
    for g in divisors {
        let principal = Ideal::new(ring, vec![g.clone()])?;
        let meet = intersect(i, &principal)?;
        let quotients = meet
            .generators()
            .iter()
            .map(|h| {
                h.exact_div(g).ok_or_else(|| {
                    Error::NotContained("intersection with (g) not divisible by g".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let part = Ideal::new(ring, quotients)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part)?,
        });
    }
    let out = acc.expect("at least one divisor");
    // canonical generators: the reduced basis
    let basis = out.groebner_basis()?.to_vec();
    Ok(Ideal::with_basis(ring, basis))
}

/// Largest set of variables containing the support of no mask.
fn max_independent_set(n: usize, masks: &[u64]) -> Option<usize> {
    if masks.contains(&0) {
        return None;
    }
    fn go(i: usize, n: usize, set: u64, size: usize, masks: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = set | (1 << i);
        if masks.iter().all(|&m| m & with != m) {
            go(i + 1, n, with, size + 1, masks, best);
        }
        go(i + 1, n, set, size, masks, best);
    }
    let mut best = 0;
    go(0, n, 0, 0, masks, &mut best);
    Some(best)
}

/// Dimension of `R/I` read off the initial ideal: the largest set of
/// variables supporting no leading monomial of the Gröbner basis.
pub fn krull_dimension<F: Field>(i: &Ideal<F>) -> Result<DimensionReport> {
    let n = i.num_vars();
    if n > 64 {
        return Err(Error::Unsupported("more than 64 variables".into()));
    }
    let masks: Vec<u64> = i
        .initial_monomials()?
        .iter()
        .map(Monomial::support_mask)
        .collect();
    Ok(match max_independent_set(n, &masks) {
        None => DimensionReport {
            krull_dim: -1,
            height: None,
            is_unit: true,
        },
        Some(d) => DimensionReport {
            krull_dim: d as i64,
            height: Some(n - d),
            is_unit: false,
        },
    })
}

pub fn height<F: Field>(i: &Ideal<F>) -> Result<usize> {
    krull_dimension(i)?.height.ok_or(Error::UnitIdeal)
}

/// Dimension of `R/I` for a proper ideal.
pub fn dimension<F: Field>(i: &Ideal<F>) -> Result<usize> {
    let r = krull_dimension(i)?;
    if r.is_unit {
        return Err(Error::UnitIdeal);
    }
    Ok(r.krull_dim as usize)
}

fn check_sequence<F: Field>(fs: &[Polynomial<F>]) -> Result<()> {
    for f in fs {
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("{f}")));
        }
        if f.is_constant() {
            return Err(Error::InvalidArgument(format!(
                "regular sequence elements must be nonconstant, found {f}"
            )));
        }
    }
    Ok(())
}

/// Homogeneous `f1, ..., fs` of positive degree form a regular sequence iff
/// `ht(f1, ..., fi) = i` for every `i`.
pub fn is_regular_sequence<F: Field>(fs: &[Polynomial<F>]) -> Result<bool> {
    check_sequence(fs)?;
    let Some(first) = fs.first() else {
        return Ok(true);
    };
    let ring = first.ring();
    for k in 1..=fs.len() {
        if fs[k - 1].ring() != ring {
            return Err(Error::RingMismatch);
        }
        if height(&Ideal::new(ring, fs[..k].to_vec())?)? != k {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStrategy {
    /// Greedily take minimal generators first, then fall back to random
    /// combinations.
    GeneratorsFirst,
    /// Only seeded random combinations.
    RandomOnly,
}

#[derive(Clone, Copy, Debug)]
pub struct RegularSequenceSearch {
    pub strategy: SearchStrategy,
    pub max_attempts: usize,
    /// Lowest degree for random combinations; defaults to the largest
    /// minimal generator degree.
    pub min_degree: Option<u32>,
}

impl Default for RegularSequenceSearch {
    fn default() -> Self {
        Self {
            strategy: SearchStrategy::GeneratorsFirst,
            max_attempts: 32,
            min_degree: None,
        }
    }
}

/// `Σ c_j · x_{r_j}^{D - deg g_j} · g_j` with random `c_j` and `r_j`.
fn random_combination<F: Field, R: Rng>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
    degree: u32,
    rng: &mut R,
) -> Polynomial<F> {
    let k = ring.field();
    let n = ring.num_vars();
    let mut acc = Polynomial::zero(ring);
    for g in gens {
        let d = g.degree().expect("nonzero generator");
        if d > degree {
            continue;
        }
        let var = rng.gen_range(0..n);
        let mult = Monomial::one(n).with_exponent(var, degree - d);
        let c = k.random_elem(rng);
        acc = &acc + &g.mul_term(&c, &mult);
    }
    acc
}

/// Finds `s` homogeneous elements of `I` forming a regular sequence.
pub fn find_regular_sequence_in<F: Field>(
    i: &Ideal<F>,
    s: usize,
    seed: u64,
    search: RegularSequenceSearch,
) -> Result<Vec<Polynomial<F>>> {
    if !i.is_homogeneous() {
        return Err(Error::NotHomogeneous("regular sequence search".into()));
    }
    let ring = i.ring();
    if s == 0 {
        return Ok(Vec::new());
    }
    let h = height(i)?;
    if s > h {
        return Err(Error::InvalidArgument(format!(
            "requested length {s} exceeds the height {h}"
        )));
    }
    let gens: Vec<Polynomial<F>> = i
        .minimal_generators()?
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    let extends = |prefix: &[Polynomial<F>], f: &Polynomial<F>| -> Result<bool> {
        if f.is_zero() || f.is_constant() {
            return Ok(false);
        }
        let mut all = prefix.to_vec();
        all.push(f.clone());
        let len = all.len();
        Ok(height(&Ideal::new(ring, all)?)? == len)
    };

    if search.strategy == SearchStrategy::GeneratorsFirst {
        let mut seq = Vec::new();
        for g in &gens {
            if extends(&seq, g)? {
                seq.push(g.clone());
                if seq.len() == s {
                    return Ok(seq);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = gens
        .iter()
        .filter_map(Polynomial::degree)
        .max()
        .unwrap_or(1);
    let base_degree = search.min_degree.map_or(top, |d| d.max(top));
    for attempt in 0..search.max_attempts {
        // raise the working degree every eight failed attempts
        let degree = base_degree + (attempt / 8) as u32;
        let mut seq: Vec<Polynomial<F>> = Vec::new();
        'build: while seq.len() < s {
            for _ in 0..4 {
                let f = random_combination(ring, &gens, degree, &mut rng);
                if extends(&seq, &f)? {
                    seq.push(f);
                    continue 'build;
                }
            }
            break;
        }
        if seq.len() == s {
            return Ok(seq);
        }
    }
    Err(Error::RegularSequenceNotFound {
        length: s,
        attempts: search.max_attempts,
    })
}

/// Number of minimal generators equals the height.
pub fn is_complete_intersection<F: Field>(c: &Ideal<F>) -> Result<bool> {
    if !c.is_homogeneous() {
        return Err(Error::NotHomogeneous("complete intersection test".into()));
    }
    let dims = krull_dimension(c)?;
    let Some(h) = dims.height else {
        return Ok(false);
    };
    Ok(c.minimal_generators()?.len() == h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::parse::{ideal_from_strs, parse_polynomial};
    use proptest::prelude::*;

    fn q(n: usize) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, n, MonomialOrder::GREVLEX).unwrap()
    }

    fn ideal<F: Field>(r: &Arc<PolyRing<F>>, g: &[&str]) -> Ideal<F> {
        ideal_from_strs(r, g).unwrap()
    }

    fn skew<F: Field>(r: &Arc<PolyRing<F>>) -> Ideal<F> {
        ideal(r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"])
    }

    fn quartic<F: Field>(r: &Arc<PolyRing<F>>) -> Ideal<F> {
        ideal(
            r,
            &[
                "x0*x3 - x1*x2",
                "x1^3 - x0^2*x2",
                "x2^3 - x1*x3^2",
                "x0*x2^2 - x1^2*x3",
            ],
        )
    }

    fn link_ci<F: Field>(r: &Arc<PolyRing<F>>) -> Ideal<F> {
        ideal(r, &["x0*x3 - x1*x2", "x0*x2^2 - x1^2*x3"])
    }

    /// Intersection of monomial ideals from pairwise lcms of generators.
    fn monomial_intersection_oracle<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Ideal<F> {
        let r = i.ring();
        let mut gens = Vec::new();
        for f in i.generators() {
            for g in j.generators() {
                let m = f.lead_monomial().unwrap().lcm(g.lead_monomial().unwrap());
                gens.push(Polynomial::monomial(r, m));
            }
        }
        Ideal::new(r, gens).unwrap()
    }

    #[test]
    fn principal_intersection() {
        let r = q(2);
        let got = intersect(&ideal(&r, &["x0"]), &ideal(&r, &["x1"])).unwrap();
        assert!(got.equals(&ideal(&r, &["x0*x1"])).unwrap());
    }

    #[test]
    fn skew_lines_from_primes() {
        let r = q(4);
        let got = intersect(&ideal(&r, &["x0", "x1"]), &ideal(&r, &["x2", "x3"])).unwrap();
        assert!(got.equals(&skew(&r)).unwrap());
    }

    #[test]
    fn skew_lines_meet_quartic_in_ci() {
        let r = q(4);
        let got = intersect(&skew(&r), &quartic(&r)).unwrap();
        assert!(got.equals(&link_ci(&r)).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = q(2);
        let got = colon(&ideal(&r, &["x0*x1"]), &ideal(&r, &["x0"])).unwrap();
        assert!(got.equals(&ideal(&r, &["x1"])).unwrap());

        let r = q(4);
        let c = link_ci(&r);
        assert!(colon(&c, &skew(&r)).unwrap().equals(&quartic(&r)).unwrap());
        assert!(colon(&c, &quartic(&r)).unwrap().equals(&skew(&r)).unwrap());
    }

    #[test]
    fn colon_by_zero_rejected() {
        let r = q(2);
        assert_eq!(
            colon(&ideal(&r, &["x0"]), &Ideal::zero(&r)).unwrap_err(),
            Error::ColonByZero
        );
    }

    #[test]
    fn dimensions() {
        let r = q(2);
        let d = krull_dimension(&ideal(&r, &["x0*x1"])).unwrap();
        assert_eq!((d.krull_dim, d.height), (1, Some(1)));

        let r = q(4);
        let d = krull_dimension(&skew(&r)).unwrap();
        assert_eq!((d.krull_dim, d.height), (2, Some(2)));
        let d = krull_dimension(&quartic(&r)).unwrap();
        assert_eq!((d.krull_dim, d.height), (2, Some(2)));

        let d = krull_dimension(&Ideal::unit(&r)).unwrap();
        assert_eq!((d.krull_dim, d.height, d.is_unit), (-1, None, true));
        let d = krull_dimension(&Ideal::zero(&r)).unwrap();
        assert_eq!((d.krull_dim, d.height), (4, Some(0)));
    }

    #[test]
    fn regular_sequences() {
        let r = q(4);
        let p = |s: &str| parse_polynomial(&r, s, 1).unwrap();
        assert!(is_regular_sequence(&[p("x0*x3 - x1*x2"), p("x0*x2^2 - x1^2*x3")]).unwrap());
        assert!(!is_regular_sequence(&[p("x0"), p("x0*x1")]).unwrap());
        assert!(is_regular_sequence(&[p("x0*x2"), p("x1*x3")]).unwrap());
        assert!(matches!(
            is_regular_sequence(&[p("x0 + x1^2")]),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn find_in_skew_lines_uses_generators() {
        let r = q(4);
        let a = skew(&r);
        let seq = find_regular_sequence_in(&a, 2, 0, RegularSequenceSearch::default()).unwrap();
        assert_eq!(seq.len(), 2);
        assert!(is_regular_sequence(&seq).unwrap());
        for f in &seq {
            assert!(a.contains(f).unwrap());
        }
        let p = |s: &str| parse_polynomial(&r, s, 1).unwrap();
        assert_eq!(seq, vec![p("x0*x2"), p("x1*x3")]);
    }

    #[test]
    fn find_in_principal() {
        let r = q(3);
        let seq =
            find_regular_sequence_in(&ideal(&r, &["x0"]), 1, 5, RegularSequenceSearch::default())
                .unwrap();
        assert_eq!(seq, vec![parse_polynomial(&r, "x0", 1).unwrap()]);
    }

    #[test]
    fn random_search_in_quartic() {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), 4, MonomialOrder::GREVLEX).unwrap();
        let b = quartic(&r);
        let search = RegularSequenceSearch {
            strategy: SearchStrategy::RandomOnly,
            ..Default::default()
        };
        let seq = find_regular_sequence_in(&b, 2, 11, search).unwrap();
        assert!(is_regular_sequence(&seq).unwrap());
        for f in &seq {
            assert!(b.contains(f).unwrap());
        }
        // same seed, same answer
        assert_eq!(seq, find_regular_sequence_in(&b, 2, 11, search).unwrap());
    }

    #[test]
    fn complete_intersections() {
        let r = q(4);
        assert!(is_complete_intersection(&link_ci(&r)).unwrap());
        assert!(!is_complete_intersection(&skew(&r)).unwrap());
        assert!(is_complete_intersection(&ideal(&r, &["x0", "x1", "x2"])).unwrap());
        assert!(!is_complete_intersection(&quartic(&r)).unwrap());
    }

    fn monomial_ideal() -> impl Strategy<Value = Vec<Vec<u32>>> {
        proptest::collection::vec(proptest::collection::vec(0u32..3, 3), 1..4)
    }

    fn build(r: &Arc<PolyRing<PrimeField>>, gens: &[Vec<u32>]) -> Ideal<PrimeField> {
        let polys = gens
            .iter()
            .map(|e| Polynomial::monomial(r, Monomial::from_exponents(e)))
            .collect();
        Ideal::new(r, polys).unwrap()
    }

    fn ring3() -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(PrimeField::new(32003).unwrap(), 3, MonomialOrder::GREVLEX).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn elimination_matches_lcm_oracle(a in monomial_ideal(), b in monomial_ideal()) {
            let r = ring3();
            let (i, j) = (build(&r, &a), build(&r, &b));
            let got = intersect(&i, &j).unwrap();
            prop_assert!(got.equals(&monomial_intersection_oracle(&i, &j)).unwrap());
        }

        #[test]
        fn colon_contains_ideal(a in monomial_ideal(), b in monomial_ideal()) {
            let r = ring3();
            let (i, j) = (build(&r, &a), build(&r, &b));
            let c = colon(&i, &j).unwrap();
            prop_assert!(c.contains_ideal(&i).unwrap());
            if i.contains_ideal(&j).unwrap() {
                prop_assert!(c.is_unit().unwrap());
            }
        }

        #[test]
        fn iterated_colon(a in monomial_ideal(), b in monomial_ideal(), c in monomial_ideal()) {
            let r = ring3();
            let (i, j, k) = (build(&r, &a), build(&r, &b), build(&r, &c));
            let lhs = colon(&colon(&i, &j).unwrap(), &k).unwrap();
            let rhs = colon(&i, &j.product(&k).unwrap()).unwrap();
            prop_assert!(lhs.equals(&rhs).unwrap());
        }

        #[test]
        fn height_plus_dimension(a in monomial_ideal()) {
            let r = ring3();
            let i = build(&r, &a);
            let d = krull_dimension(&i).unwrap();
            if !d.is_unit {
                prop_assert_eq!(d.krull_dim as usize + d.height.unwrap(), 3);
            }
        }
    }

    #[test]
    fn iterated_colon_on_binomials() {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), 3, MonomialOrder::GREVLEX).unwrap();
        let i = ideal(&r, &["x0^2*x1 - x2^3", "x1^2 - x0*x2"]);
        let j = ideal(&r, &["x0", "x1 + x2"]);
        let k = ideal(&r, &["x2"]);
        let lhs = colon(&colon(&i, &j).unwrap(), &k).unwrap();
        let rhs = colon(&i, &j.product(&k).unwrap()).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }
}
