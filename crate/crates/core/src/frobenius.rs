//! A one-sided test for vanishing of local cohomology in positive
//! characteristic, and the cohomological-dimension bounds built on it.
//!
//! Over `F_p`, `H^i_I(R)` is the direct limit of `Ext^i(R/I^[q], R)` along the
//! maps induced by `R/I^[pq] -> R/I^[q]`. The resolution of `R/I^[q]` is the
//! Frobenius power `F^[q]` of a resolution `F` of `R/I`, and the transition
//! maps are Frobenius twists of one another, so if
//! `Ext^i(R/I, R) -> Ext^i(R/I^[q], R)` is zero then every element of the
//! system dies after `e` further steps and the limit vanishes.
//!
//! The map is computed from a comparison map `φ: F^[q] -> F` lifting the
//! identity on `R`; the lifting data depends only on `F`. Membership in the
//! image of the dual of `F^[q]` uses the Frobenius power of a Gröbner basis
//! for the dual of `F`, which is again a Gröbner basis because Frobenius is
//! flat and raises leading terms to the `q`-th power.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::ideal_ops;
use crate::resolution::{self, dual_spot, FreeResolution, LiftContext};
use crate::vector::{Matrix, Vector};

pub const DEFAULT_E_MAX: u32 = 3;
pub const DEFAULT_PROBE_PRIME: u64 = 2;
/// A stage is not attempted once `q` times the largest degree shift in the
/// resolution passes this bound.
pub const MAX_FROBENIUS_DEGREE: i64 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ProbeOutcome {
    /// `H^i_I(R) = 0`, witnessed at Frobenius stage `stage`.
    ConfirmedVanishing { stage: u32 },
    /// No stage up to the limit killed the map. Says nothing about
    /// nonvanishing.
    NotConfirmed {
        stages_tried: u32,
        budget_exceeded: bool,
    },
}

impl ProbeOutcome {
    pub fn confirmed(&self) -> bool {
        matches!(self, Self::ConfirmedVanishing { .. })
    }
}

fn budget_to_outcome(e: Error, stages_tried: u32) -> Result<ProbeOutcome> {
    match e {
        Error::BudgetExceeded { .. } => Ok(ProbeOutcome::NotConfirmed {
            stages_tried,
            budget_exceeded: true,
        }),
        other => Err(other),
    }
}

/// Tries to show `H^i_I(R) = 0` for `I` over `F_p`, looking at stages
/// `e = 0..=e_max`.
pub fn frobenius_vanishing_probe<F: Field>(
    ideal: &Ideal<F>,
    i: usize,
    e_max: u32,
) -> Result<ProbeOutcome> {
    let p = ideal.ring().field().characteristic();
    if p == 0 {
        return Err(Error::Unsupported(
            "the Frobenius probe needs a prime field".into(),
        ));
    }
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{ideal}")));
    }
    let h = match ideal_ops::height(ideal) {
        Ok(h) => h,
        Err(e) => return budget_to_outcome(e, 0),
    };
    if i <= h {
        return Err(Error::InvalidArgument(format!(
            "probe index {i} must exceed the height {h}"
        )));
    }
    resolution::resolve_quotient(ideal)
        .and_then(|res| probe_resolution(&res, i, e_max))
        .or_else(|e| budget_to_outcome(e, 0))
}

/// The probe on a given minimal resolution of `R/I`.
pub fn probe_resolution<F: Field>(
    res: &FreeResolution<F>,
    i: usize,
    e_max: u32,
) -> Result<ProbeOutcome> {
    let ring = &res.ring;
    let p = ring.field().characteristic();
    let Some(spot) = dual_spot(res, i)? else {
        return Ok(ProbeOutcome::ConfirmedVanishing { stage: 0 });
    };
    if spot
        .kernel
        .iter()
        .all(|z| resolution::reduce_by(ring, z, &spot.image).is_zero())
    {
        return Ok(ProbeOutcome::ConfirmedVanishing { stage: 0 });
    }

    let lifts = (1..=i)
        .map(|k| LiftContext::new(ring, res.differential(k).expect("within length")))
        .collect::<Result<Vec<_>>>()?;
    let max_shift = res.modules[..=i]
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(0)
        .max(1);

    let mut tried = 1;
    for e in 1..=e_max {
        let Some(q) = p.checked_pow(e).and_then(|q| u32::try_from(q).ok()) else {
            return Ok(ProbeOutcome::NotConfirmed {
                stages_tried: tried,
                budget_exceeded: true,
            });
        };
        if (q as i64).saturating_mul(max_shift) > MAX_FROBENIUS_DEGREE {
            return Ok(ProbeOutcome::NotConfirmed {
                stages_tried: tried,
                budget_exceeded: true,
            });
        }
        tried += 1;
        let phi = comparison_map(res, &lifts, i, q);
        let phi_t = phi.transpose(ring);
        let image: Vec<Vector<F>> = spot.image.iter().map(|v| v.frobenius(ring, q)).collect();
        let dies = spot.kernel.iter().all(|z| {
            let w = phi_t.apply(ring, z);
            resolution::reduce_by(ring, &w, &image).is_zero()
        });
        if dies {
            return Ok(ProbeOutcome::ConfirmedVanishing { stage: e });
        }
    }
    Ok(ProbeOutcome::NotConfirmed {
        stages_tried: tried,
        budget_exceeded: false,
    })
}

/// `φ_i: F^[q]_i -> F_i` with `d^F ∘ φ = φ ∘ d^[q]` and `φ_0 = id`.
pub(crate) fn comparison_map<F: Field>(
    res: &FreeResolution<F>,
    lifts: &[LiftContext<F>],
    i: usize,
    q: u32,
) -> Matrix<F> {
    let ring = &res.ring;
    let mut phi = Matrix::identity(ring, &res.modules[0]);
    for k in 1..=i {
        let dg = res
            .differential(k)
            .expect("within length")
            .frobenius(ring, q);
        let cols = dg
            .columns
            .iter()
            .map(|c| {
                let v = phi.apply(ring, c);
                lifts[k - 1]
                    .lift(&v)
                    .expect("the image of a cycle lifts through an exact complex")
            })
            .collect();
        phi = Matrix::new(res.modules[k].clone(), dg.col_shifts.clone(), cols);
    }
    phi
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub index: usize,
    pub outcome: ProbeOutcome,
}

/// Bounds on `cd(I, R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdBounds {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub notes: Vec<String>,
    pub probes: Vec<ProbeRecord>,
}

impl CdBounds {
    pub fn is_consistent(&self, height: usize, n: usize) -> bool {
        height <= self.lower
            && self.lower <= self.upper
            && self.upper <= n
            && self
                .exact
                .is_none_or(|c| c == self.lower && c == self.upper)
    }
}

/// `ht I <= cd <= n - depth R/I`, then lowers the upper bound while the
/// probe confirms vanishing at it.
pub fn cd_bounds_char_p<F: Field>(ideal: &Ideal<F>, e_max: u32) -> Result<CdBounds> {
    if ideal.ring().field().characteristic() == 0 {
        return Err(Error::Unsupported("cd bounds need a prime field".into()));
    }
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{ideal}")));
    }
    let n = ideal.num_vars();
    let lower = ideal_ops::height(ideal)?;
    let res = resolution::resolve_quotient(ideal)?;
    let depth = n - res.length();
    let mut upper = n - depth;
    let mut notes = vec![
        "lower bound: height".to_string(),
        format!("upper bound: n - depth = {n} - {depth}"),
    ];
    let mut probes = Vec::new();
    while upper > lower {
        let outcome = match probe_resolution(&res, upper, e_max) {
            Ok(o) => o,
            Err(e) => budget_to_outcome(e, 0)?,
        };
        probes.push(ProbeRecord {
            index: upper,
            outcome,
        });
        match outcome {
            ProbeOutcome::ConfirmedVanishing { stage } => {
                notes.push(format!("H^{upper} vanishes (Frobenius stage {stage})"));
                upper -= 1;
            }
            ProbeOutcome::NotConfirmed {
                budget_exceeded, ..
            } => {
                notes.push(if budget_exceeded {
                    format!("H^{upper} not confirmed: budget exceeded")
                } else {
                    format!("H^{upper} not confirmed up to stage {e_max}")
                });
                break;
            }
        }
    }
    let exact = (lower == upper).then_some(lower);
    Ok(CdBounds {
        lower,
        upper,
        exact,
        notes,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::parse::ideal_from_strs;
    use crate::ring::PolyRing;
    use std::sync::Arc;

    fn f2(n: usize) -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(PrimeField::new(2).unwrap(), n, MonomialOrder::GREVLEX).unwrap()
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

    #[test]
    fn ci_vanishes_at_stage_zero() {
        let r = f2(4);
        let out = frobenius_vanishing_probe(&ideal(&r, &["x0", "x1"]), 3, 3).unwrap();
        assert_eq!(out, ProbeOutcome::ConfirmedVanishing { stage: 0 });
    }

    #[test]
    fn skew_lines_never_confirm() {
        let r = f2(4);
        let out = frobenius_vanishing_probe(&skew(&r), 3, 3).unwrap();
        assert_eq!(
            out,
            ProbeOutcome::NotConfirmed {
                stages_tried: 4,
                budget_exceeded: false
            }
        );
    }

    #[test]
    fn quartic_confirms() {
        let r = f2(4);
        let out = frobenius_vanishing_probe(&quartic(&r), 3, 3).unwrap();
        assert!(out.confirmed(), "{out:?}");
    }

    #[test]
    fn comparison_map_is_a_chain_map() {
        let r = f2(4);
        let res = resolution::resolve_quotient(&quartic(&r)).unwrap();
        let lifts: Vec<_> = (1..=res.length())
            .map(|k| LiftContext::new(&r, res.differential(k).unwrap()).unwrap())
            .collect();
        for q in [2, 4] {
            for i in 1..=res.length() {
                let phi_i = comparison_map(&res, &lifts, i, q);
                let phi_prev = comparison_map(&res, &lifts, i - 1, q);
                let d = res.differential(i).unwrap();
                let dq = d.frobenius(&r, q);
                assert_eq!(d.compose(&r, &phi_i), phi_prev.compose(&r, &dq));
            }
        }
    }

    /// The Frobenius power of a reduced module basis decides membership the
    /// same way as a basis computed from scratch.
    #[test]
    fn frobenius_of_a_basis_is_a_basis() {
        let r = f2(4);
        let res = resolution::resolve_quotient(&quartic(&r)).unwrap();
        for i in 1..=res.length() {
            let dt = res.differential(i).unwrap().transpose(&r);
            let base = resolution::module_groebner_basis(&r, &dt.row_shifts, &dt.columns).unwrap();
            let dq = dt.frobenius(&r, 2);
            let direct =
                resolution::module_groebner_basis(&r, &dq.row_shifts, &dq.columns).unwrap();
            let twisted: Vec<_> = base.iter().map(|v| v.frobenius(&r, 2)).collect();
            let mut a: Vec<_> = twisted.iter().map(|v| v.monic(&r)).collect();
            let mut b = direct.clone();
            let key = |v: &Vector<PrimeField>| format!("{v:?}");
            a.sort_by_key(key);
            b.sort_by_key(key);
            assert_eq!(a.len(), b.len());
            for v in &direct {
                assert!(resolution::reduce_by(&r, v, &twisted).is_zero());
            }
        }
    }

    #[test]
    fn bounds() {
        let r = f2(4);
        let ci = cd_bounds_char_p(&ideal(&r, &["x0*x3 - x1*x2", "x0*x2^2 - x1^2*x3"]), 3).unwrap();
        assert_eq!((ci.lower, ci.upper, ci.exact), (2, 2, Some(2)));
        assert!(ci.probes.is_empty());

        let b = cd_bounds_char_p(&quartic(&r), 3).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (2, 2, Some(2)));
        assert_eq!(b.probes.len(), 1);
        assert!(b.is_consistent(2, 4));

        let a = cd_bounds_char_p(&skew(&r), 3).unwrap();
        assert_eq!((a.lower, a.upper, a.exact), (2, 3, None));

        let m = cd_bounds_char_p(&ideal(&r, &["x0", "x1", "x2", "x3"]), 3).unwrap();
        assert_eq!(m.exact, Some(4));

        let z = cd_bounds_char_p(&Ideal::zero(&r), 3).unwrap();
        assert_eq!(z.exact, Some(0));
        assert_eq!(
            cd_bounds_char_p(&Ideal::unit(&r), 3).unwrap_err(),
            Error::UnitIdeal
        );
    }

    #[test]
    fn preconditions() {
        let q = PolyRing::new(Rationals, 4, MonomialOrder::GREVLEX).unwrap();
        assert!(matches!(
            frobenius_vanishing_probe(&skew(&q), 3, 1),
            Err(Error::Unsupported(_))
        ));
        let r = f2(4);
        assert!(matches!(
            frobenius_vanishing_probe(&skew(&r), 2, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let r = f2(4);
        let out = crate::gb::with_pair_budget(1, || frobenius_vanishing_probe(&quartic(&r), 3, 3))
            .unwrap();
        assert_eq!(
            out,
            ProbeOutcome::NotConfirmed {
                stages_tried: 0,
                budget_exceeded: true
            }
        );
    }
}
