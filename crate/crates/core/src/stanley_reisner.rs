//! Squarefree monomial ideals as simplicial complexes: reduced homology,
//! Hochster's formula, and the invariants that are exact on this class
//! (`cd = pd = n - depth`, `fgrade = depth`).

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::par::{self, Execution};
use crate::poly::Polynomial;
use crate::resolution::BettiTable;
use crate::ring::PolyRing;

pub const MAX_VERTICES: usize = 24;

/// A simplicial complex on vertices `0..n`, stored by its facets as bit
/// masks. The void complex (no faces at all) is not representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    num_vertices: usize,
    facets: Vec<u32>,
}

fn is_subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

impl SimplicialComplex {
    /// The complex generated by `facets`; non-maximal entries are dropped.
    pub fn from_facets(num_vertices: usize, facets: &[u32]) -> Result<Self> {
        if num_vertices > MAX_VERTICES {
            return Err(Error::Unsupported(format!(
                "simplicial complexes on more than {MAX_VERTICES} vertices"
            )));
        }
        let all = if num_vertices == 32 {
            u32::MAX
        } else {
            (1u32 << num_vertices) - 1
        };
        if let Some(f) = facets.iter().find(|&&f| !is_subset(f, all)) {
            return Err(Error::InvalidArgument(format!(
                "facet {f:#b} uses a missing vertex"
            )));
        }
        let mut fs: Vec<u32> = facets.to_vec();
        fs.sort_unstable();
        fs.dedup();
        let maximal: Vec<u32> = fs
            .iter()
            .copied()
            .filter(|&f| !fs.iter().any(|&g| g != f && is_subset(f, g)))
            .collect();
        let mut facets = if maximal.is_empty() { vec![0] } else { maximal };
        facets.sort_by_key(|&f| (std::cmp::Reverse(f.count_ones()), f));
        Ok(Self {
            num_vertices,
            facets,
        })
    }

    pub fn simplex(num_vertices: usize) -> Result<Self> {
        Self::from_facets(num_vertices, &[(1u32 << num_vertices) - 1])
    }

    /// The boundary of the simplex on all vertices.
    pub fn simplex_boundary(num_vertices: usize) -> Result<Self> {
        let all = (1u32 << num_vertices) - 1;
        let facets: Vec<u32> = (0..num_vertices).map(|v| all & !(1 << v)).collect();
        Self::from_facets(num_vertices, &facets)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Facets, largest first.
    pub fn facets(&self) -> &[u32] {
        &self.facets
    }

    pub fn is_face(&self, s: u32) -> bool {
        self.facets.iter().any(|&f| is_subset(s, f))
    }

    /// Largest face dimension; `-1` for `{∅}`.
    pub fn dimension(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| f.count_ones() as i64)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn is_pure(&self) -> bool {
        let sizes: BTreeSet<u32> = self.facets.iter().map(|f| f.count_ones()).collect();
        sizes.len() <= 1
    }

    /// All faces, including the empty face, sorted.
    pub fn faces(&self) -> Vec<u32> {
        let mut out = BTreeSet::new();
        for &f in &self.facets {
            // every submask of f
            let mut s = f;
            loop {
                out.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        out.into_iter().collect()
    }

    /// Minimal non-faces, the supports of the Stanley–Reisner generators.
    pub fn minimal_nonfaces(&self) -> Vec<u32> {
        let faces = self.faces();
        let mut out = BTreeSet::new();
        for &f in &faces {
            for v in 0..self.num_vertices {
                let s = f | 1 << v;
                if s == f || self.is_face(s) {
                    continue;
                }
                if bits(s).all(|u| self.is_face(s & !(1 << u))) {
                    out.insert(s);
                }
            }
        }
        let mut v: Vec<u32> = out.into_iter().collect();
        v.sort_by_key(|&s| (s.count_ones(), s));
        v
    }

    /// Faces contained in `sigma`.
    pub fn restrict(&self, sigma: u32) -> Self {
        let facets: Vec<u32> = self.facets.iter().map(|&f| f & sigma).collect();
        Self::from_facets(self.num_vertices, &facets).expect("subcomplex")
    }
}

/// Support masks of the generators of a squarefree monomial ideal.
fn generator_masks<F: Field>(ideal: &Ideal<F>) -> Result<Vec<u32>> {
    let n = ideal.num_vars();
    if n > MAX_VERTICES {
        return Err(Error::Unsupported(format!(
            "more than {MAX_VERTICES} variables"
        )));
    }
    let mut out = Vec::new();
    for g in ideal.generators() {
        if g.is_zero() {
            continue;
        }
        let m = match g.terms() {
            [(_, m)] if m.is_squarefree() => m,
            _ => return Err(Error::NotSquarefree(format!("{g}"))),
        };
        if m.is_one() {
            return Err(Error::UnitIdeal);
        }
        out.push(m.support_mask() as u32);
    }
    Ok(out)
}

/// The Stanley–Reisner complex: subsets of variables whose product is not
/// in `I`.
pub fn complex_of_ideal<F: Field>(ideal: &Ideal<F>) -> Result<SimplicialComplex> {
    let n = ideal.num_vars();
    let gens = generator_masks(ideal)?;
    let mut facets = Vec::new();
    // depth-first over faces, adding vertices in increasing order
    let mut stack = vec![(0u32, 0usize)];
    while let Some((face, next)) = stack.pop() {
        let mut extended = false;
        for v in 0..n {
            let s = face | 1 << v;
            if s == face || gens.iter().any(|&g| is_subset(g, s)) {
                continue;
            }
            extended = true;
            if v >= next {
                stack.push((s, v + 1));
            }
        }
        if !extended {
            facets.push(face);
        }
    }
    SimplicialComplex::from_facets(n, &facets)
}

/// The Stanley–Reisner ideal, generated by the minimal non-faces.
pub fn ideal_of_complex<F: Field>(
    ring: &Arc<PolyRing<F>>,
    complex: &SimplicialComplex,
) -> Result<Ideal<F>> {
    let n = ring.num_vars();
    if n != complex.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: complex.num_vertices(),
        });
    }
    let gens = complex
        .minimal_nonfaces()
        .into_iter()
        .map(|s| {
            let exps: Vec<u32> = (0..n).map(|i| s >> i & 1).collect();
            Polynomial::monomial(ring, Monomial::from_exponents(&exps))
        })
        .collect();
    Ideal::new(ring, gens)
}

fn rank<F: Field>(k: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !k.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c]).expect("nonzero pivot");
        for i in r + 1..rows.len() {
            if k.is_zero(&rows[i][c]) {
                continue;
            }
            let f = k.mul(&rows[i][c], &inv);
            let (top, rest) = rows.split_at_mut(i);
            for (x, y) in rest[0][c..cols].iter_mut().zip(&top[r][c..cols]) {
                let d = k.mul(&f, y);
                *x = k.sub(x, &d);
            }
        }
        r += 1;
    }
    r
}

/// `dim H̃_d(Δ; k)` for `d = -1, 0, ..., dim Δ`, indexed from `-1`.
pub fn reduced_homology_dims<F: Field>(complex: &SimplicialComplex, field: &F) -> Vec<usize> {
    let faces = complex.faces();
    let top = (complex.dimension() + 1) as usize;
    // by_size[s] = faces with s vertices, i.e. of dimension s - 1
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<HashMap<u32, usize>> = by_size
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // ranks[s] = rank of the boundary from faces of size s to size s - 1
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        let rows: Vec<Vec<F::Elem>> = by_size[s]
            .iter()
            .map(|&f| {
                let mut row = vec![field.zero(); by_size[s - 1].len()];
                for (j, v) in bits(f).enumerate() {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    row[index[s - 1][&(f & !(1 << v))]] = field.from_i64(sign);
                }
                row
            })
            .collect();
        ranks[s] = rank(field, rows);
    }
    (0..=top)
        .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

/// Multigraded Betti numbers from Hochster's formula:
/// `β_{i,σ} = dim H̃_{|σ|-i-1}(Δ_σ)`, as `(i, σ, value)` with nonzero values.
pub fn hochster_multigraded<F: Field>(
    complex: &SimplicialComplex,
    field: &F,
    exec: Execution,
) -> Vec<(usize, u32, usize)> {
    let n = complex.num_vertices();
    let subsets: Vec<u32> = (0..1u32 << n).collect();
    let per_subset = par::map_ordered(exec, subsets, |sigma| {
        let sub = complex.restrict(sigma);
        let size = sigma.count_ones() as i64;
        reduced_homology_dims(&sub, field)
            .into_iter()
            .enumerate()
            .filter(|&(_, h)| h > 0)
            .map(|(idx, h)| {
                let d = idx as i64 - 1;
                ((size - d - 1) as usize, sigma, h)
            })
            .collect::<Vec<_>>()
    });
    let mut out: Vec<_> = per_subset.into_iter().flatten().collect();
    out.sort_unstable();
    out
}

/// Graded Betti table of `R/I` via Hochster's formula over `field`.
pub fn hochster_betti_of_complex<F: Field>(
    complex: &SimplicialComplex,
    field: &F,
    exec: Execution,
) -> BettiTable {
    let mut t = BettiTable::default();
    for (i, sigma, h) in hochster_multigraded(complex, field, exec) {
        *t.0.entry(i)
            .or_default()
            .entry(sigma.count_ones() as i64)
            .or_default() += h;
    }
    t
}

pub fn hochster_betti<F: Field>(ideal: &Ideal<F>, field: &F) -> Result<BettiTable> {
    let complex = complex_of_ideal(ideal)?;
    Ok(hochster_betti_of_complex(&complex, field, Execution::Auto))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqfInvariants {
    pub depth: usize,
    pub pd: usize,
    pub cd: usize,
    pub fgrade: usize,
    pub dim: usize,
    pub height: usize,
    /// All facets have the same size (unmixedness).
    pub pure: bool,
    /// The homology coefficient field.
    pub field: String,
}

impl SqfInvariants {
    pub fn is_cohen_macaulay(&self) -> bool {
        self.depth == self.dim
    }
}

pub fn sqf_invariants_of_complex<F: Field>(
    complex: &SimplicialComplex,
    field: &F,
) -> SqfInvariants {
    let n = complex.num_vertices();
    let betti = hochster_betti_of_complex(complex, field, Execution::Auto);
    let pd = betti.projective_dimension().unwrap_or(0);
    let dim = (complex.dimension() + 1) as usize;
    let out = SqfInvariants {
        depth: n - pd,
        pd,
        cd: pd,
        fgrade: n - pd,
        dim,
        height: n - dim,
        pure: complex.is_pure(),
        field: field.name(),
    };
    debug_assert!(out.height <= out.cd && out.depth <= out.dim);
    out
}

/// Exact depth, pd, cd and fgrade of a squarefree monomial ideal. The zero
/// ideal has `cd = 0`; the unit ideal is rejected.
pub fn sqf_invariants<F: Field>(ideal: &Ideal<F>, field: &F) -> Result<SqfInvariants> {
    let complex = complex_of_ideal(ideal)?;
    Ok(sqf_invariants_of_complex(&complex, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::parse::ideal_from_strs;
    use crate::resolution::resolve_quotient;
    use proptest::prelude::*;

    fn q(n: usize) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, n, MonomialOrder::GREVLEX).unwrap()
    }

    fn fp(n: usize, p: u64) -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(PrimeField::new(p).unwrap(), n, MonomialOrder::GREVLEX).unwrap()
    }

    fn mask(vs: &[usize]) -> u32 {
        vs.iter().fold(0, |m, &v| m | 1 << v)
    }

    fn skew<F: Field>(r: &Arc<PolyRing<F>>) -> Ideal<F> {
        ideal_from_strs(r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]).unwrap()
    }

    /// Faces by checking every subset against the generators.
    fn brute_faces(n: usize, gens: &[u32]) -> Vec<u32> {
        (0..1u32 << n)
            .filter(|&s| !gens.iter().any(|&g| g & !s == 0))
            .collect()
    }

    #[test]
    fn complexes_of_examples() {
        let r = q(2);
        let c = complex_of_ideal(&ideal_from_strs(&r, &["x0*x1"]).unwrap()).unwrap();
        assert_eq!(c.faces(), vec![0, 1, 2]);

        let r = q(4);
        let c = complex_of_ideal(&skew(&r)).unwrap();
        assert_eq!(c.facets(), &[mask(&[0, 1]), mask(&[2, 3])]);
        let gens = [mask(&[0, 2]), mask(&[0, 3]), mask(&[1, 2]), mask(&[1, 3])];
        assert_eq!(c.faces(), brute_faces(4, &gens));

        let c = complex_of_ideal(&Ideal::zero(&r)).unwrap();
        assert_eq!(c, SimplicialComplex::simplex(4).unwrap());
    }

    #[test]
    fn rejected_inputs() {
        let r = q(3);
        let bad = ideal_from_strs(&r, &["x0^2"]).unwrap();
        assert!(matches!(
            complex_of_ideal(&bad),
            Err(Error::NotSquarefree(_))
        ));
        let bad = ideal_from_strs(&r, &["x0*x1 - x2^2"]).unwrap();
        assert!(matches!(
            complex_of_ideal(&bad),
            Err(Error::NotSquarefree(_))
        ));
        assert_eq!(
            complex_of_ideal(&Ideal::unit(&r)).unwrap_err(),
            Error::UnitIdeal
        );
        assert_eq!(
            sqf_invariants(&Ideal::unit(&r), &Rationals).unwrap_err(),
            Error::UnitIdeal
        );
    }

    #[test]
    fn homology_examples() {
        let two_edges = SimplicialComplex::from_facets(4, &[mask(&[0, 1]), mask(&[2, 3])]).unwrap();
        assert_eq!(reduced_homology_dims(&two_edges, &Rationals), vec![0, 1, 0]);
        let circle = SimplicialComplex::simplex_boundary(3).unwrap();
        assert_eq!(reduced_homology_dims(&circle, &Rationals), vec![0, 0, 1]);
        let empty = SimplicialComplex::from_facets(3, &[]).unwrap();
        assert_eq!(reduced_homology_dims(&empty, &Rationals), vec![1]);
        let ball = SimplicialComplex::simplex(3).unwrap();
        assert_eq!(reduced_homology_dims(&ball, &Rationals), vec![0, 0, 0, 0]);
    }

    /// The six-vertex real projective plane has 2-torsion in H_1.
    #[test]
    fn projective_plane_depends_on_the_field() {
        let tri = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let facets: Vec<u32> = tri.iter().map(|t| mask(t)).collect();
        let rp2 = SimplicialComplex::from_facets(6, &facets).unwrap();
        assert_eq!(reduced_homology_dims(&rp2, &Rationals), vec![0, 0, 0, 0]);
        assert_eq!(
            reduced_homology_dims(&rp2, &PrimeField::new(2).unwrap()),
            vec![0, 0, 1, 1]
        );
        let over_q = sqf_invariants_of_complex(&rp2, &Rationals);
        let over_f2 = sqf_invariants_of_complex(&rp2, &PrimeField::new(2).unwrap());
        assert!(over_q.is_cohen_macaulay());
        assert!(!over_f2.is_cohen_macaulay());
    }

    #[test]
    fn hochster_examples() {
        let r = q(2);
        let b = hochster_betti(&ideal_from_strs(&r, &["x0*x1"]).unwrap(), &Rationals).unwrap();
        assert_eq!(b.get(1, 2), 1);
        assert_eq!(b.totals(), vec![1, 1]);

        let r = q(4);
        let via_q = hochster_betti(&skew(&r), &Rationals).unwrap();
        assert_eq!(via_q.totals(), vec![1, 4, 4, 1]);
        assert_eq!(via_q, resolve_quotient(&skew(&r)).unwrap().betti());
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(via_q, hochster_betti(&skew(&fp(4, 2)), &f2).unwrap());
    }

    #[test]
    fn invariants_examples() {
        let r = q(4);
        let a = sqf_invariants(&skew(&r), &Rationals).unwrap();
        assert_eq!((a.cd, a.depth, a.fgrade, a.dim, a.pure), (3, 1, 1, 2, true));

        let ci = ideal_from_strs(&r, &["x0*x2", "x1*x3"]).unwrap();
        let c = sqf_invariants(&ci, &Rationals).unwrap();
        assert_eq!((c.cd, c.depth), (2, 2));
        assert!(c.is_cohen_macaulay());

        let z = sqf_invariants(&Ideal::zero(&r), &Rationals).unwrap();
        assert_eq!((z.depth, z.cd), (4, 0));
    }

    #[test]
    fn simplices_and_boundaries_are_cm() {
        for n in 1..=6 {
            let b = sqf_invariants_of_complex(
                &SimplicialComplex::simplex_boundary(n).unwrap(),
                &Rationals,
            );
            assert!(b.is_cohen_macaulay(), "boundary of the {n}-vertex simplex");
            let s = sqf_invariants_of_complex(&SimplicialComplex::simplex(n).unwrap(), &Rationals);
            assert!(s.is_cohen_macaulay());
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let c = SimplicialComplex::from_facets(
            6,
            &[mask(&[0, 1, 2]), mask(&[2, 3, 4]), mask(&[4, 5, 0])],
        )
        .unwrap();
        assert_eq!(
            hochster_multigraded(&c, &Rationals, Execution::Auto),
            hochster_multigraded(&c, &Rationals, Execution::Sequential)
        );
    }

    fn antichain(n: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(1u32..(1 << n), 1..5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn round_trip(facets in antichain(5)) {
            let c = SimplicialComplex::from_facets(5, &facets).unwrap();
            let r = q(5);
            let i = ideal_of_complex(&r, &c).unwrap();
            prop_assert_eq!(complex_of_ideal(&i).unwrap(), c.clone());
            prop_assert_eq!(c.faces(), brute_faces(5, &c.minimal_nonfaces()));
        }

        #[test]
        fn hochster_matches_resolution(facets in antichain(5)) {
            let c = SimplicialComplex::from_facets(5, &facets).unwrap();
            let r = fp(5, 32003);
            let i = ideal_of_complex(&r, &c).unwrap();
            let k = *r.field();
            let h = hochster_betti_of_complex(&c, &k, Execution::Auto);
            prop_assert_eq!(&h, &resolve_quotient(&i).unwrap().betti());
            let inv = sqf_invariants_of_complex(&c, &k);
            prop_assert_eq!(inv.depth + inv.pd, 5);
            prop_assert!(inv.height <= inv.cd);
            // cd <= n - t exactly when depth >= t
            for t in 0..=5 {
                prop_assert_eq!(inv.cd <= 5 - t, inv.depth >= t);
            }
        }
    }
}
