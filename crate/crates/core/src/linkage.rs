//! Linkage by complete intersections: `b = c : a`, verification of the
//! double colon, the depth of the canonical module `b/c`, and even chains.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::ideal_ops::{self, RegularSequenceSearch, SearchStrategy};
use crate::resolution;
use crate::rng;
use crate::stanley_reisner;

/// How the unmixedness of the linked ideal is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unmixedness {
    /// Squarefree monomial with a pure complex.
    VerifiedPure,
    /// Obtained as `c : a'` for a complete intersection `c`.
    ByLinkage,
    /// Taken on trust from the caller.
    Asserted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSnapshot {
    pub depth: usize,
    pub pd: usize,
    pub dim: usize,
    pub height: usize,
}

impl DepthSnapshot {
    pub fn of<F: Field>(ideal: &Ideal<F>) -> Result<Self> {
        let dims = ideal_ops::krull_dimension(ideal)?;
        let height = dims.height.ok_or(Error::UnitIdeal)?;
        let dp = resolution::depth_and_pd_quotient(ideal)?;
        Ok(Self {
            depth: dp.depth,
            pd: dp.pd,
            dim: dims.krull_dim as usize,
            height,
        })
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.depth == self.dim
    }
}

#[derive(Clone, Debug)]
pub struct LinkageRecord<F: Field> {
    pub a: Ideal<F>,
    pub c: Ideal<F>,
    pub b: Ideal<F>,
    pub verified: bool,
    pub unmixed: Unmixedness,
    pub invariants_a: DepthSnapshot,
    pub invariants_b: DepthSnapshot,
}

fn same_ring<F: Field>(x: &Ideal<F>, y: &Ideal<F>) -> Result<()> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Unmixedness of `a`: checked for squarefree monomial ideals, otherwise
/// `fallback`.
fn unmixedness<F: Field>(a: &Ideal<F>, fallback: Unmixedness) -> Result<Unmixedness> {
    if a.is_squarefree_monomial() {
        let complex = stanley_reisner::complex_of_ideal(a)?;
        if !complex.is_pure() {
            return Err(Error::LinkHypothesis(
                "a is not unmixed: its Stanley-Reisner complex is not pure".into(),
            ));
        }
        return Ok(Unmixedness::VerifiedPure);
    }
    Ok(fallback)
}

/// Links `a` by the complete intersection `c`. Unmixedness of a general `a`
/// is taken as asserted by the caller.
pub fn link<F: Field>(a: &Ideal<F>, c: &Ideal<F>) -> Result<LinkageRecord<F>> {
    link_with(a, c, Unmixedness::Asserted)
}

pub(crate) fn link_with<F: Field>(
    a: &Ideal<F>,
    c: &Ideal<F>,
    assumed: Unmixedness,
) -> Result<LinkageRecord<F>> {
    same_ring(a, c)?;
    for (name, i) in [("a", a), ("c", c)] {
        if !i.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("{name} = {i}")));
        }
    }
    if !a.is_proper()? {
        return Err(Error::LinkHypothesis("a is the unit ideal".into()));
    }
    if !a.contains_ideal(c)? {
        return Err(Error::LinkHypothesis("c is not contained in a".into()));
    }
    if !ideal_ops::is_complete_intersection(c)? {
        return Err(Error::LinkHypothesis(
            "c is not a complete intersection".into(),
        ));
    }
    let (hc, ha) = (ideal_ops::height(c)?, ideal_ops::height(a)?);
    if hc != ha {
        return Err(Error::LinkHypothesis(format!(
            "height of c is {hc} but height of a is {ha}"
        )));
    }
    let unmixed = unmixedness(a, assumed)?;
    let b = ideal_ops::colon(c, a)?;
    if b.is_unit()? {
        return Err(Error::DegenerateLink(
            "c : a is the unit ideal (c = a)".into(),
        ));
    }
    let back = ideal_ops::colon(c, &b)?;
    let verified = back.equals(a)?;
    let b = b.minimalized()?;
    Ok(LinkageRecord {
        invariants_a: DepthSnapshot::of(a)?,
        invariants_b: DepthSnapshot::of(&b)?,
        a: a.clone(),
        c: c.clone(),
        b,
        verified,
        unmixed,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkCheck {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Checks that `a` and `b` are linked by `c`: `c ⊆ a ∩ b`, `c` a complete
/// intersection of the common height, `b = c : a` and `a = c : b`.
pub fn verify_link<F: Field>(a: &Ideal<F>, b: &Ideal<F>, c: &Ideal<F>) -> LinkCheck {
    let mut reasons = Vec::new();
    let mut check = |label: &str, r: Result<bool>| match r {
        Ok(true) => {}
        Ok(false) => reasons.push(label.to_string()),
        Err(e) => reasons.push(format!("{label}: {e}")),
    };
    if a.ring() != b.ring() || a.ring() != c.ring() {
        return LinkCheck {
            ok: false,
            reasons: vec!["ideals live in different rings".into()],
        };
    }
    check("c is not contained in a", a.contains_ideal(c));
    check("c is not contained in b", b.contains_ideal(c));
    check(
        "c is not a complete intersection",
        ideal_ops::is_complete_intersection(c),
    );
    let heights = (|| -> Result<bool> {
        let h = ideal_ops::height(c)?;
        Ok(ideal_ops::height(a)? == h && ideal_ops::height(b)? == h)
    })();
    check("heights of a, b, c differ", heights);
    check(
        "c : a differs from b",
        ideal_ops::colon(c, a).and_then(|x| x.equals(b)),
    );
    check(
        "c : b differs from a",
        ideal_ops::colon(c, b).and_then(|x| x.equals(a)),
    );
    LinkCheck {
        ok: reasons.is_empty(),
        reasons,
    }
}

/// Links `a` by a complete intersection built from a regular sequence of
/// length `ht a` inside `a`. When `a` is itself a complete intersection the
/// first choice links it to the unit ideal; the search is then repeated in
/// higher degree.
pub fn find_ci_link<F: Field>(a: &Ideal<F>, seed: u64) -> Result<LinkageRecord<F>> {
    find_ci_link_with(a, seed, Unmixedness::Asserted)
}

fn find_ci_link_with<F: Field>(
    a: &Ideal<F>,
    seed: u64,
    assumed: Unmixedness,
) -> Result<LinkageRecord<F>> {
    if !a.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{a}")));
    }
    if !a.is_proper()? {
        return Err(Error::LinkHypothesis("a is the unit ideal".into()));
    }
    let h = ideal_ops::height(a)?;
    if h == 0 {
        return Err(Error::LinkHypothesis("a has height 0".into()));
    }
    let ring = a.ring();
    let seq = ideal_ops::find_regular_sequence_in(a, h, seed, RegularSequenceSearch::default())?;
    match link_with(a, &Ideal::new(ring, seq)?, assumed) {
        Err(Error::DegenerateLink(_)) => {}
        other => return other,
    }
    let top = a
        .minimal_generators()?
        .iter()
        .filter_map(|g| g.degree())
        .max()
        .unwrap_or(1);
    let search = RegularSequenceSearch {
        strategy: SearchStrategy::RandomOnly,
        min_degree: Some(top + 1),
        ..Default::default()
    };
    let seq = ideal_ops::find_regular_sequence_in(a, h, rng::child_seed(seed, 1), search)?;
    match link_with(a, &Ideal::new(ring, seq)?, assumed) {
        Err(Error::DegenerateLink(_)) => Err(Error::DegenerateLink(
            "a is a complete intersection and no proper link was found".into(),
        )),
        other => other,
    }
}

/// `depth K_{R/a}`, computed as the depth of `b/c`.
pub fn canonical_depth<F: Field>(record: &LinkageRecord<F>) -> Result<usize> {
    if !record.verified {
        return Err(Error::LinkHypothesis("the link is not verified".into()));
    }
    let m = resolution::quotient_presentation(&record.b, &record.c)?;
    Ok(resolution::depth_and_pd(&m)?.depth)
}

#[derive(Clone, Debug)]
pub struct LinkChain<F: Field> {
    /// `a = a_0, a_1, ...`, one more than the number of links built.
    pub ideals: Vec<Ideal<F>>,
    pub records: Vec<LinkageRecord<F>>,
    /// `depth R/a_k` along the chain.
    pub depths: Vec<usize>,
    /// Why the chain stopped early.
    pub failure: Option<Error>,
}

impl<F: Field> LinkChain<F> {
    pub fn is_complete(&self, steps: usize) -> bool {
        self.failure.is_none() && self.records.len() == steps
    }
}

/// A chain of `steps` links starting at `a`, with a fresh complete
/// intersection at every step drawn from stream `k` of `seed`.
pub fn even_link_chain<F: Field>(a: &Ideal<F>, steps: usize, seed: u64) -> Result<LinkChain<F>> {
    if steps % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "chain length {steps} is odd"
        )));
    }
    let mut chain = LinkChain {
        ideals: vec![a.clone()],
        records: Vec::new(),
        depths: vec![DepthSnapshot::of(a)?.depth],
        failure: None,
    };
    let mut current = a.clone();
    let mut assumed = Unmixedness::Asserted;
    for k in 0..steps {
        match find_ci_link_with(&current, rng::child_seed(seed, k as u64), assumed) {
            Ok(rec) if rec.verified => {
                current = rec.b.clone();
                chain.depths.push(rec.invariants_b.depth);
                chain.ideals.push(rec.b.clone());
                chain.records.push(rec);
                assumed = Unmixedness::ByLinkage;
            }
            Ok(_) => {
                chain.failure = Some(Error::LinkHypothesis(format!("link {k} did not verify")));
                break;
            }
            Err(e) => {
                chain.failure = Some(e);
                break;
            }
        }
    }
    Ok(chain)
}
