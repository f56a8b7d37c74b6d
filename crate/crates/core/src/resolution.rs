//! Syzygies, minimal graded free resolutions, Betti tables, depth and Ext.
//!
//! Kernels come from a position-over-term Gröbner basis of the columns
//! augmented by unit vectors: basis elements whose leading term sits in the
//! appended block are syzygies, the others give a Gröbner basis of the image
//! together with a record of how each element was produced. Every step keeps
//! only a minimal generating set, so the resolution is minimal by
//! construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gb::{self, GbOptions, InputRole};
use crate::groebner::Ideal;
use crate::ideal_ops;
use crate::monomial::Monomial;
use crate::ring::PolyRing;
use crate::vector::{Matrix, VTerm, Vector};

fn augmented_inputs<F: Field>(ring: &PolyRing<F>, m: &Matrix<F>) -> Vec<(Vector<F>, InputRole)> {
    let s = m.rows();
    let n = ring.num_vars();
    m.columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut terms = col.terms().to_vec();
            terms.push(VTerm {
                coeff: ring.field().one(),
                mono: Monomial::one(n),
                comp: s + j,
            });
            (Vector::from_terms(ring, terms), InputRole::Candidate)
        })
        .collect()
}

fn augmented_shifts<F: Field>(m: &Matrix<F>) -> Vec<i64> {
    m.row_shifts.iter().chain(&m.col_shifts).copied().collect()
}

/// Column degrees for a possibly inhomogeneous matrix: the declared shifts
/// when they are consistent, otherwise the largest term degree.
fn effective_col_shifts<F: Field>(m: &Matrix<F>) -> Vec<i64> {
    m.columns
        .iter()
        .zip(&m.col_shifts)
        .map(|(c, &d)| c.max_degree(&m.row_shifts).unwrap_or(d))
        .collect()
}

/// Keeps a minimal generating set of the submodule spanned by `vecs`
/// (homogeneous with respect to `shifts`), in input order.
pub fn minimal_generators_of<F: Field>(
    ring: &PolyRing<F>,
    shifts: &[i64],
    vecs: &[Vector<F>],
) -> Result<Vec<Vector<F>>> {
    if let Some(v) = vecs.iter().find(|v| !v.is_homogeneous(shifts)) {
        return Err(Error::NotHomogeneous(format!(
            "module element with {} terms",
            v.len()
        )));
    }
    let inputs: Vec<_> = vecs
        .iter()
        .map(|v| (v.clone(), InputRole::Candidate))
        .collect();
    // a basis up to the top input degree decides every input
    let opts = GbOptions {
        max_degree: vecs.iter().filter_map(|v| v.max_degree(shifts)).max(),
        ..Default::default()
    };
    let out = gb::buchberger_with(ring, shifts, &inputs, opts)?;
    Ok(vecs
        .iter()
        .zip(out.survived)
        .filter(|(_, s)| *s)
        .map(|(v, _)| v.clone())
        .collect())
}

/// Reduced Gröbner basis of the submodule of `R^s` spanned by `vecs`.
pub fn module_groebner_basis<F: Field>(
    ring: &PolyRing<F>,
    shifts: &[i64],
    vecs: &[Vector<F>],
) -> Result<Vec<Vector<F>>> {
    let inputs: Vec<_> = vecs.iter().map(|v| (v.clone(), InputRole::Base)).collect();
    Ok(gb::buchberger(ring, shifts, &inputs)?.basis)
}

/// Remainder of `v` modulo a Gröbner basis; zero iff `v` lies in the span.
pub fn reduce_by<F: Field>(ring: &PolyRing<F>, v: &Vector<F>, basis: &[Vector<F>]) -> Vector<F> {
    gb::divide(ring, v, basis)
}

/// Solves `d(x) = v` for a fixed matrix `d`.
pub struct LiftContext<F: Field> {
    ring: Arc<PolyRing<F>>,
    /// The ring whose module order ranks the rows of `d` above the
    /// bookkeeping components.
    tracking: Arc<PolyRing<F>>,
    rows: usize,
    cols: usize,
    /// Augmented basis elements, all with leading term among the rows.
    image: Vec<Vector<F>>,
    syzygies: Vec<Vector<F>>,
}

impl<F: Field> LiftContext<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, d: &Matrix<F>) -> Result<Self> {
        let s = d.rows();
        let tracking = ring.with_module_block(s);
        let mut shifts = augmented_shifts(d);
        let eff = effective_col_shifts(d);
        shifts[s..].copy_from_slice(&eff);
        // Schreyer: the remainders that vanish on the rows generate the
        // kernel, so no basis of the kernel itself is needed
        let opts = GbOptions {
            set_aside_from: Some(s),
            ..Default::default()
        };
        let out = gb::buchberger_with(&tracking, &shifts, &augmented_inputs(&tracking, d), opts)?;
        let syzygies = out
            .set_aside
            .iter()
            .map(|v| v.restrict(s, s + d.cols()).reordered(ring))
            .collect();
        Ok(Self {
            ring: ring.clone(),
            tracking,
            rows: s,
            cols: d.cols(),
            image: out.basis,
            syzygies,
        })
    }

    /// A Gröbner basis of the image.
    pub fn image_basis(&self) -> Vec<Vector<F>> {
        self.image
            .iter()
            .map(|v| v.restrict(0, self.rows).reordered(&self.ring))
            .collect()
    }

    /// Generators of the kernel, not minimal in general.
    pub fn kernel_generators(&self) -> &[Vector<F>] {
        &self.syzygies
    }

    /// Some `x` with `d(x) = v`, or `None` when `v` is not in the image.
    pub fn lift(&self, v: &Vector<F>) -> Option<Vector<F>> {
        let r = gb::divide(&self.tracking, &v.reordered(&self.tracking), &self.image);
        if r.terms().iter().any(|t| t.comp < self.rows) {
            return None;
        }
        let k = self.ring.field();
        let x = r
            .restrict(self.rows, self.rows + self.cols)
            .reordered(&self.ring);
        Some(x.scale(&self.ring, &k.neg(&k.one())))
    }

    pub fn contains(&self, v: &Vector<F>) -> bool {
        gb::divide(&self.tracking, &v.reordered(&self.tracking), &self.image).is_zero()
    }
}

/// Generators of the kernel of `m: R^k -> R^s`, as the columns of a matrix
/// `R^l -> R^k`. For homogeneous input the generators are minimal.
pub fn syzygy_module<F: Field>(ring: &Arc<PolyRing<F>>, m: &Matrix<F>) -> Result<Matrix<F>> {
    let col_shifts = effective_col_shifts(m);
    let kernel = LiftContext::new(ring, m)?.syzygies;
    let gens = if m.is_homogeneous() {
        minimal_generators_of(ring, &col_shifts, &kernel)?
    } else {
        kernel
    };
    let degrees = gens
        .iter()
        .map(|v| v.max_degree(&col_shifts).expect("nonzero syzygy"))
        .collect();
    Ok(Matrix::new(col_shifts, degrees, gens))
}

/// Removes redundant generators of a presentation by cancelling unit
/// entries, sweeping columns left to right and rows top to bottom.
pub fn prune_presentation<F: Field>(ring: &Arc<PolyRing<F>>, m: &Matrix<F>) -> Matrix<F> {
    let k = ring.field();
    let mut rows = m.row_shifts.clone();
    let mut cols: Vec<(i64, Vector<F>)> = m
        .col_shifts
        .iter()
        .copied()
        .zip(m.columns.iter().cloned())
        .filter(|(_, c)| !c.is_zero())
        .collect();
    'sweep: loop {
        for j in 0..cols.len() {
            let unit = cols[j]
                .1
                .terms()
                .iter()
                .filter(|t| t.mono.is_one())
                .map(|t| (t.comp, t.coeff.clone()))
                .min_by_key(|(r, _)| *r);
            let Some((r, c)) = unit else { continue };
            let (_, pivot) = cols.remove(j);
            let inv = k.inv(&c).expect("nonzero unit");
            for (_, col) in cols.iter_mut() {
                let entry = col.component(ring, r);
                if !entry.is_zero() {
                    let factor = entry.scale(&inv);
                    *col = col.sub(ring, &pivot.mul_poly(ring, &factor));
                }
            }
            rows.remove(r);
            for (_, col) in cols.iter_mut() {
                *col = col.map_components(ring, |i| if i > r { i - 1 } else { i });
            }
            cols.retain(|(_, c)| !c.is_zero());
            continue 'sweep;
        }
        break;
    }
    let (shifts, columns) = cols.into_iter().unzip();
    Matrix::new(rows, shifts, columns)
}

/// A finitely presented graded module `R^s / (relations)`.
#[derive(Clone, Debug)]
pub struct PresentedModule<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    /// Relations as columns in `R^s`; `row_shifts` are the generator degrees.
    pub relations: Matrix<F>,
}

impl<F: Field> PresentedModule<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, relations: Matrix<F>) -> Self {
        Self {
            ring: ring.clone(),
            relations,
        }
    }

    /// `R/I`.
    pub fn quotient(ideal: &Ideal<F>) -> Self {
        let gens: Vec<_> = ideal.generators().iter().filter(|g| !g.is_zero()).collect();
        let shifts = gens.iter().map(|g| g.degree().unwrap() as i64).collect();
        let cols = gens.iter().map(|g| Vector::from_poly_at(g, 0)).collect();
        Self::new(ideal.ring(), Matrix::new(vec![0], shifts, cols))
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, Matrix::new(Vec::new(), Vec::new(), Vec::new()))
    }

    pub fn rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn is_graded(&self) -> bool {
        self.relations.is_homogeneous()
    }

    /// True when pruning leaves no generators.
    pub fn is_zero(&self) -> bool {
        prune_presentation(&self.ring, &self.relations).rows() == 0
    }

    pub fn pruned(&self) -> Self {
        Self::new(&self.ring, prune_presentation(&self.ring, &self.relations))
    }
}

/// `b/c` for `c ⊆ b`, generated by the minimal generators of `b` outside `c`.
pub fn quotient_presentation<F: Field>(b: &Ideal<F>, c: &Ideal<F>) -> Result<PresentedModule<F>> {
    if b.ring() != c.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = b.ring();
    if !b.contains_ideal(c)? {
        return Err(Error::NotContained("c is not contained in b".into()));
    }
    let mut gens = Vec::new();
    for g in b.minimal_generators()? {
        if !c.contains(&g)? {
            gens.push(g);
        }
    }
    if gens.is_empty() {
        return Ok(PresentedModule::zero(ring));
    }
    let m = gens.len();
    let cgens: Vec<_> = c
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    if let Some(g) = cgens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(format!("{g}")));
    }
    let all: Vec<_> = gens.iter().chain(&cgens).collect();
    let shifts: Vec<i64> = all.iter().map(|g| g.degree().unwrap() as i64).collect();
    let row = Matrix::new(
        vec![0],
        shifts.clone(),
        all.iter().map(|g| Vector::from_poly_at(g, 0)).collect(),
    );
    let syz = syzygy_module(ring, &row)?;
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for (v, d) in syz.columns.iter().zip(&syz.col_shifts) {
        let r = v.restrict(0, m);
        if !r.is_zero() {
            cols.push(r);
            degs.push(*d);
        }
    }
    let pres = Matrix::new(shifts[..m].to_vec(), degs, cols);
    Ok(PresentedModule::new(ring, prune_presentation(ring, &pres)))
}

/// Graded Betti numbers `β_{i,j}`: homological degree to internal degree to
/// count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable(pub BTreeMap<usize, BTreeMap<i64, usize>>);

impl BettiTable {
    pub fn from_shifts(modules: &[Vec<i64>]) -> Self {
        let mut t = BTreeMap::new();
        for (i, shifts) in modules.iter().enumerate() {
            let row: &mut BTreeMap<i64, usize> = t.entry(i).or_default();
            for &d in shifts {
                *row.entry(d).or_default() += 1;
            }
        }
        t.retain(|_, row: &mut BTreeMap<i64, usize>| !row.is_empty());
        Self(t)
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.0.get(&i).and_then(|r| r.get(&j)).copied().unwrap_or(0)
    }

    /// Total Betti numbers `β_0, β_1, ...` up to the last nonzero one.
    pub fn totals(&self) -> Vec<usize> {
        let len = self.0.keys().next_back().map_or(0, |&i| i + 1);
        (0..len)
            .map(|i| self.0.get(&i).map_or(0, |r| r.values().sum()))
            .collect()
    }

    /// The largest homological index with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }
}

/// `0 <- F_0 <- F_1 <- ... <- F_p <- 0`, with `maps[i] = d_{i+1}: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    /// Degree shifts of the basis of each `F_i`.
    pub modules: Vec<Vec<i64>>,
    pub maps: Vec<Matrix<F>>,
    pub minimal: bool,
}

impl<F: Field> FreeResolution<F> {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_shifts(&self.modules)
    }

    /// `d_i ∘ d_{i+1} = 0` everywhere.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(&self.ring, &w[1]).is_zero())
    }

    /// No differential has a nonzero constant entry.
    pub fn has_no_unit_entries(&self) -> bool {
        !self.maps.iter().any(Matrix::has_unit_entry)
    }

    /// `d_i`, or `None` outside `1..=length`.
    pub fn differential(&self, i: usize) -> Option<&Matrix<F>> {
        i.checked_sub(1).and_then(|j| self.maps.get(j))
    }
}

/// Minimal graded free resolution of a graded module.
pub fn minimal_free_resolution<F: Field>(m: &PresentedModule<F>) -> Result<FreeResolution<F>> {
    if !m.is_graded() {
        return Err(Error::NotHomogeneous("presentation is not graded".into()));
    }
    let ring = &m.ring;
    let pres = prune_presentation(ring, &m.relations);
    let mut modules = vec![pres.row_shifts.clone()];
    let mut maps = Vec::new();
    if pres.rows() > 0 {
        let gens = minimal_generators_of(ring, &pres.row_shifts, &pres.columns)?;
        let degs: Vec<i64> = gens
            .iter()
            .map(|v| v.homogeneous_degree(&pres.row_shifts).unwrap())
            .collect();
        let mut d = Matrix::new(pres.row_shifts.clone(), degs, gens);
        while d.cols() > 0 {
            assert!(
                maps.len() < ring.num_vars() + 1,
                "resolution longer than the number of variables"
            );
            modules.push(d.col_shifts.clone());
            let next = syzygy_module(ring, &d)?;
            maps.push(d);
            d = next;
        }
    }
    let res = FreeResolution {
        ring: ring.clone(),
        modules,
        maps,
        minimal: true,
    };
    debug_assert!(res.has_no_unit_entries());
    Ok(res)
}

/// Minimal free resolution of `R/I`.
pub fn resolve_quotient<F: Field>(ideal: &Ideal<F>) -> Result<FreeResolution<F>> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{ideal}")));
    }
    let ring = ideal.ring();
    if ideal.is_unit()? {
        return Ok(FreeResolution {
            ring: ring.clone(),
            modules: vec![Vec::new()],
            maps: Vec::new(),
            minimal: true,
        });
    }
    let gens = ideal.minimal_generators()?;
    let degs: Vec<i64> = gens.iter().map(|g| g.degree().unwrap() as i64).collect();
    let cols = gens.iter().map(|g| Vector::from_poly_at(g, 0)).collect();
    let mut d = Matrix::new(vec![0], degs, cols);
    let mut modules = vec![vec![0]];
    let mut maps = Vec::new();
    while d.cols() > 0 {
        assert!(
            maps.len() < ring.num_vars(),
            "resolution longer than the number of variables"
        );
        modules.push(d.col_shifts.clone());
        let next = syzygy_module(ring, &d)?;
        maps.push(d);
        d = next;
    }
    Ok(FreeResolution {
        ring: ring.clone(),
        modules,
        maps,
        minimal: true,
    })
}

pub fn graded_betti<F: Field>(m: &PresentedModule<F>) -> Result<BettiTable> {
    Ok(minimal_free_resolution(m)?.betti())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthPd {
    pub pd: usize,
    pub depth: usize,
}

/// Projective dimension and depth (Auslander–Buchsbaum) of a nonzero module.
pub fn depth_and_pd<F: Field>(m: &PresentedModule<F>) -> Result<DepthPd> {
    let res = minimal_free_resolution(m)?;
    if res.modules[0].is_empty() {
        return Err(Error::ZeroModule);
    }
    let n = m.ring.num_vars();
    let pd = res.length();
    Ok(DepthPd { pd, depth: n - pd })
}

/// Depth and projective dimension of `R/I`, checked against `dim R/I`.
pub fn depth_and_pd_quotient<F: Field>(ideal: &Ideal<F>) -> Result<DepthPd> {
    let res = resolve_quotient(ideal)?;
    if res.modules[0].is_empty() {
        return Err(Error::ZeroModule);
    }
    let n = ideal.num_vars();
    let pd = res.length();
    let out = DepthPd { pd, depth: n - pd };
    let dim = ideal_ops::dimension(ideal)?;
    assert!(
        out.depth <= dim,
        "depth {} exceeds dimension {dim}",
        out.depth
    );
    Ok(out)
}

/// Data for the cohomology of the dual complex at `F_i^*`.
pub(crate) struct DualSpot<F: Field> {
    /// Generators of `ker (d_{i+1})^T`.
    pub kernel: Vec<Vector<F>>,
    /// Gröbner basis of `im (d_i)^T`.
    pub image: Vec<Vector<F>>,
}

pub(crate) fn dual_spot<F: Field>(
    res: &FreeResolution<F>,
    i: usize,
) -> Result<Option<DualSpot<F>>> {
    let ring = &res.ring;
    let Some(fi) = res.modules.get(i) else {
        return Ok(None);
    };
    if fi.is_empty() {
        return Ok(None);
    }
    let kernel = match res.differential(i + 1) {
        Some(d) => syzygy_module(ring, &d.transpose(ring))?.columns,
        None => (0..fi.len()).map(|r| Vector::unit(ring, r)).collect(),
    };
    let image = match res.differential(i) {
        Some(d) => {
            let dt = d.transpose(ring);
            module_groebner_basis(ring, &dt.row_shifts, &dt.columns)?
        }
        None => Vec::new(),
    };
    Ok(Some(DualSpot { kernel, image }))
}

/// Whether `Ext^i(R/I, R)` is nonzero, from the dual of the minimal
/// resolution.
pub fn ext_nonvanishing<F: Field>(ideal: &Ideal<F>, i: i64) -> Result<bool> {
    if i < 0 {
        return Err(Error::InvalidArgument(format!("negative Ext index {i}")));
    }
    let res = resolve_quotient(ideal)?;
    ext_nonvanishing_from(&res, i as usize)
}

pub fn ext_nonvanishing_from<F: Field>(res: &FreeResolution<F>, i: usize) -> Result<bool> {
    let Some(spot) = dual_spot(res, i)? else {
        return Ok(false);
    };
    let ring = &res.ring;
    Ok(spot
        .kernel
        .iter()
        .any(|z| !reduce_by(ring, z, &spot.image).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::parse::ideal_from_strs;
    use crate::poly::Polynomial;
    use proptest::prelude::*;

    fn q(n: usize) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, n, MonomialOrder::GREVLEX).unwrap()
    }

    fn fp(n: usize) -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(PrimeField::new(32003).unwrap(), n, MonomialOrder::GREVLEX).unwrap()
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

    fn row<F: Field>(gens: &[Polynomial<F>]) -> Matrix<F> {
        Matrix::new(
            vec![0],
            gens.iter().map(|g| g.degree().unwrap() as i64).collect(),
            gens.iter().map(|g| Vector::from_poly_at(g, 0)).collect(),
        )
    }

    #[test]
    fn koszul_relation() {
        let r = q(2);
        let i = ideal(&r, &["x0", "x1"]);
        let syz = syzygy_module(&r, &row(i.generators())).unwrap();
        assert_eq!(syz.cols(), 1);
        let v = &syz.columns[0];
        let x0 = Polynomial::var(&r, 0);
        let x1 = Polynomial::var(&r, 1);
        let expected = Vector::from_polys(&r, &[x1.clone(), -&x0]);
        let neg = Vector::from_polys(&r, &[-&x1, x0]);
        assert!(*v == expected || *v == neg);
        assert_eq!(syz.col_shifts, vec![2]);
    }

    #[test]
    fn syzygies_of_a_basis_vanish() {
        let r = q(4);
        let b = quartic(&r);
        let m = row(b.groebner_basis().unwrap());
        let syz = syzygy_module(&r, &m).unwrap();
        assert!(syz.cols() > 0);
        assert!(m.compose(&r, &syz).is_zero());
    }

    /// Dimension of the space of linear syzygies, by linear algebra over the
    /// coefficients of `Σ l_j g_j` with `l_j` linear forms.
    #[allow(clippy::needless_range_loop)]
    fn linear_syzygy_count(r: &Arc<PolyRing<Rationals>>, gens: &[Polynomial<Rationals>]) -> usize {
        use num_rational::BigRational;
        use num_traits::{One, Zero};
        let n = r.num_vars();
        let mut columns: Vec<BTreeMap<Vec<u32>, BigRational>> = Vec::new();
        for g in gens {
            for v in 0..n {
                let prod = g * &Polynomial::var(r, v);
                columns.push(
                    prod.terms()
                        .iter()
                        .map(|(c, m)| (m.exponents().collect(), c.clone()))
                        .collect(),
                );
            }
        }
        let mut keys: Vec<Vec<u32>> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let mut mat: Vec<Vec<BigRational>> = keys
            .iter()
            .map(|k| {
                columns
                    .iter()
                    .map(|c| c.get(k).cloned().unwrap_or_else(BigRational::zero))
                    .collect()
            })
            .collect();
        let cols = columns.len();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
                continue;
            };
            mat.swap(rank, p);
            let inv = BigRational::one() / mat[rank][c].clone();
            for i in 0..mat.len() {
                if i != rank && !mat[i][c].is_zero() {
                    let f = mat[i][c].clone() * inv.clone();
                    for cc in 0..cols {
                        let delta = f.clone() * mat[rank][cc].clone();
                        mat[i][cc] = mat[i][cc].clone() - delta;
                    }
                }
            }
            rank += 1;
        }
        cols - rank
    }

    #[test]
    fn skew_lines_have_four_linear_syzygies() {
        let r = q(4);
        let a = skew(&r);
        let syz = syzygy_module(&r, &row(a.generators())).unwrap();
        assert_eq!(syz.cols(), 4);
        assert!(syz.col_shifts.iter().all(|&d| d == 3));
        assert_eq!(linear_syzygy_count(&r, a.generators()), 4);
    }

    #[test]
    fn principal_resolution() {
        let r = q(4);
        let res = resolve_quotient(&ideal(&r, &["x0"])).unwrap();
        assert_eq!(res.modules, vec![vec![0], vec![1]]);
        assert_eq!(res.length(), 1);
    }

    #[test]
    fn skew_lines_resolution() {
        let r = q(4);
        let res = resolve_quotient(&skew(&r)).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 4, 4, 1]);
        assert!(res.is_complex());
        assert!(res.has_no_unit_entries());
        let dp = depth_and_pd_quotient(&skew(&r)).unwrap();
        assert_eq!((dp.pd, dp.depth), (3, 1));
    }

    /// Graded mapping cone for `0 -> R/(p ∩ q) -> R/p ⊕ R/q -> R/m -> 0`
    /// with `p = (x0, x1)`, `q = (x2, x3)`: homological degree `i` carries
    /// `F_i(R/p ⊕ R/q) ⊕ F_{i+1}(R/m)`, after cancelling the unit in
    /// `R^2 -> R`. The minimal table must arise from it by cancelling equal
    /// internal degrees in adjacent homological degrees.
    #[test]
    #[allow(clippy::needless_range_loop)]
    fn skew_lines_betti_by_mapping_cone() {
        let binom =
            |n: usize, k: usize| -> usize { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
        let mut cone = vec![BTreeMap::<i64, usize>::new(); 4];
        for i in 0..4usize {
            if i <= 2 {
                *cone[i].entry(i as i64).or_default() += 2 * binom(2, i);
            }
            *cone[i].entry(i as i64 + 1).or_default() += binom(4, i + 1);
        }
        *cone[0].get_mut(&0).unwrap() -= 1;

        let r = q(4);
        let betti = resolve_quotient(&skew(&r)).unwrap().betti();
        assert_eq!(betti.totals(), vec![1, 4, 4, 1]);
        for j in 0..=5i64 {
            let mut carry = 0usize;
            for (i, row) in cone.iter().enumerate() {
                let have = row.get(&j).copied().unwrap_or(0);
                let got = betti.get(i, j);
                assert!(got <= have, "β_{i},{j} exceeds the cone");
                let cancelled = have - got;
                assert!(cancelled >= carry, "unpaired cancellation at ({i}, {j})");
                carry = cancelled - carry;
            }
            assert_eq!(carry, 0, "unpaired cancellation in degree {j}");
        }
    }

    #[test]
    fn quartic_resolution() {
        let r = fp(4);
        let res = resolve_quotient(&quartic(&r)).unwrap();
        assert!(res.is_complex());
        let dp = depth_and_pd_quotient(&quartic(&r)).unwrap();
        assert_eq!((dp.pd, dp.depth), (3, 1));
        assert_eq!(res.betti().totals(), vec![1, 4, 4, 1]);
    }

    #[test]
    fn complete_intersection_is_koszul() {
        let r = q(4);
        let c = link_ci(&r);
        let res = resolve_quotient(&c).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 2, 1]);
        assert_eq!(res.modules[2], vec![5]);
        let dp = depth_and_pd_quotient(&c).unwrap();
        assert_eq!((dp.pd, dp.depth), (2, 2));
    }

    #[test]
    fn betti_of_principal_monomial() {
        let r = q(2);
        let b = resolve_quotient(&ideal(&r, &["x0*x1"])).unwrap().betti();
        assert_eq!(b.get(0, 0), 1);
        assert_eq!(b.get(1, 2), 1);
        assert_eq!(b.totals(), vec![1, 1]);
    }

    #[test]
    fn betti_invariant_under_permutation() {
        let r = fp(4);
        let b1 = resolve_quotient(&quartic(&r)).unwrap().betti();
        let rev = ideal(
            &r,
            &[
                "x0*x2^2 - x1^2*x3",
                "x2^3 - x1*x3^2",
                "x1^3 - x0^2*x2",
                "x0*x3 - x1*x2",
            ],
        );
        assert_eq!(b1, resolve_quotient(&rev).unwrap().betti());
    }

    #[test]
    fn quotient_presentations() {
        let r = q(4);
        let m = quotient_presentation(&ideal(&r, &["x0", "x1"]), &ideal(&r, &["x0"])).unwrap();
        let res = minimal_free_resolution(&m).unwrap();
        assert_eq!(res.modules, vec![vec![1], vec![2]]);

        let (a, b) = (skew(&r), quartic(&r));
        let c = ideal_ops::intersect(&a, &b).unwrap();
        let k = quotient_presentation(&b, &c).unwrap();
        assert_eq!(k.rank(), 2);
        let dp = depth_and_pd(&k).unwrap();
        assert_eq!(dp.depth, 2);

        assert!(matches!(
            quotient_presentation(&ideal(&r, &["x0"]), &ideal(&r, &["x1"])),
            Err(Error::NotContained(_))
        ));
        let z = quotient_presentation(&ideal(&r, &["x0"]), &ideal(&r, &["x0"])).unwrap();
        assert!(z.is_zero());
        assert_eq!(depth_and_pd(&z).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn pruning_cancels_units() {
        let r = q(2);
        let x0 = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        // R^2 / ((1, -x0), (0, x1)) ≅ R/(x0 x1)... after substituting e0 = x0 e1
        let m = Matrix::new(
            vec![1, 0],
            vec![1, 1],
            vec![
                Vector::from_polys(&r, &[one.clone(), -&x0]),
                Vector::from_polys(&r, &[Polynomial::zero(&r), Polynomial::var(&r, 1)]),
            ],
        );
        let p = prune_presentation(&r, &m);
        assert_eq!(p.rows(), 1);
        assert_eq!(p.row_shifts, vec![0]);
        assert_eq!(p.cols(), 1);
        assert!(!p.has_unit_entry());
    }

    #[test]
    fn ext_examples() {
        let r = q(4);
        let ci = ideal(&r, &["x0", "x1"]);
        let nz: Vec<bool> = (0..=4).map(|i| ext_nonvanishing(&ci, i).unwrap()).collect();
        assert_eq!(nz, vec![false, false, true, false, false]);

        let nz: Vec<bool> = (0..=4)
            .map(|i| ext_nonvanishing(&skew(&r), i).unwrap())
            .collect();
        assert_eq!(nz, vec![false, false, true, true, false]);

        let nz: Vec<bool> = (0..=4)
            .map(|i| ext_nonvanishing(&quartic(&r), i).unwrap())
            .collect();
        assert_eq!(nz, vec![false, false, true, true, false]);

        assert!(matches!(
            ext_nonvanishing(&ci, -1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn lifting_inverts_the_map() {
        let r = q(4);
        let b = quartic(&r);
        let m = row(b.generators());
        let ctx = LiftContext::new(&r, &m).unwrap();
        let target = Vector::from_poly_at(&(&Polynomial::var(&r, 2) * &b.generators()[1]), 0);
        let x = ctx.lift(&target).unwrap();
        assert_eq!(m.apply(&r, &x), target);
        assert!(ctx.lift(&Vector::unit(&r, 0)).is_none());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = q(3);
        assert!(matches!(
            resolve_quotient(&ideal(&r, &["x0 + x1^2"])),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn trivial_modules() {
        let r = q(3);
        let dp = depth_and_pd_quotient(&Ideal::zero(&r)).unwrap();
        assert_eq!((dp.pd, dp.depth), (0, 3));
        assert_eq!(
            depth_and_pd_quotient(&Ideal::unit(&r)).unwrap_err(),
            Error::ZeroModule
        );
    }

    fn random_homogeneous_ideal() -> impl Strategy<Value = Vec<Vec<(i64, Vec<u32>)>>> {
        // generators of degree 2 in 3 variables
        let mono = prop_oneof![
            Just(vec![2u32, 0, 0]),
            Just(vec![1, 1, 0]),
            Just(vec![1, 0, 1]),
            Just(vec![0, 2, 0]),
            Just(vec![0, 1, 1]),
            Just(vec![0, 0, 2]),
        ];
        let term = (-3i64..=3, mono);
        proptest::collection::vec(proptest::collection::vec(term, 1..3), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn resolution_invariants(gens in random_homogeneous_ideal()) {
            let r = fp(3);
            let polys: Vec<_> = gens
                .iter()
                .map(|g| {
                    let terms: Vec<(i64, &[u32])> = g.iter().map(|(c, e)| (*c, e.as_slice())).collect();
                    Polynomial::from_int_terms(&r, &terms)
                })
                .filter(|p| !p.is_zero())
                .collect();
            prop_assume!(!polys.is_empty());
            let i = Ideal::new(&r, polys).unwrap();
            let res = resolve_quotient(&i).unwrap();
            prop_assert!(res.is_complex());
            prop_assert!(res.has_no_unit_entries());
            prop_assert!(res.length() <= 3);
            let totals = res.betti().totals();
            let euler: i64 = totals.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            prop_assert_eq!(euler, 0);
            let dp = depth_and_pd_quotient(&i).unwrap();
            prop_assert_eq!(dp.depth + dp.pd, 3);
            let h = ideal_ops::height(&i).unwrap();
            for k in 0..=4usize {
                let nz = ext_nonvanishing_from(&res, k).unwrap();
                if k == dp.pd { prop_assert!(nz); }
                if k > dp.pd || k < h { prop_assert!(!nz); }
            }
        }
    }
}
