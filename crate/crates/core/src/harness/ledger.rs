//! Deterministic regression ledger for the two worked examples: the skew
//! lines linked to the twisted quartic, and the determinantal pair in twelve
//! variables (heavy, off by default).

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{PrimeField, Rationals};
use crate::frobenius::{self, ProbeOutcome};
use crate::gb;
use crate::groebner::Ideal;
use crate::harness::corpus;
use crate::ideal_ops;
use crate::linkage::{self, DepthSnapshot};
use crate::monomial::MonomialOrder;
use crate::parse;
use crate::ring::PolyRing;
use crate::stanley_reisner;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// A published value that the available methods cannot reach.
    NotReproduced,
    /// Recorded for reference; never fails.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub id: String,
    pub claim: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
}

impl Ledger {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIPPED",
                Status::NotReproduced => "NOT-REPRODUCED",
                Status::Info => "INFO",
            };
            s.push_str(&format!(
                "{tag:<15}{:<28}{}  (expected {}, got {})\n",
                e.id, e.claim, e.expected, e.actual
            ));
        }
        s
    }

    fn push(
        &mut self,
        id: &str,
        claim: &str,
        expected: impl Display,
        actual: impl Display,
        status: Status,
    ) {
        self.entries.push(LedgerEntry {
            id: id.into(),
            claim: claim.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            status,
        });
    }

    /// Passes when the computation succeeds with the expected value.
    fn check<T: PartialEq + Display>(
        &mut self,
        id: &str,
        claim: &str,
        expected: T,
        actual: Result<T>,
    ) {
        match actual {
            Ok(v) => {
                let status = if v == expected {
                    Status::Pass
                } else {
                    Status::Fail
                };
                self.push(id, claim, expected, v, status);
            }
            Err(e) => self.push(id, claim, expected, format!("error: {e}"), Status::Fail),
        }
    }
}

/// Options for the heavy part.
#[derive(Clone, Copy, Debug)]
pub struct HeavyOptions {
    pub pair_budget: u64,
}

impl Default for HeavyOptions {
    fn default() -> Self {
        Self {
            pair_budget: gb::pair_budget(),
        }
    }
}

pub fn verify_paper_suite(heavy: bool) -> Ledger {
    let mut ledger = Ledger::default();
    skew_lines_example(&mut ledger);
    if heavy {
        determinantal_example(&mut ledger, HeavyOptions::default());
    }
    ledger
}

pub fn verify_paper_suite_with(heavy: Option<HeavyOptions>) -> Ledger {
    let mut ledger = Ledger::default();
    skew_lines_example(&mut ledger);
    if let Some(opts) = heavy {
        determinantal_example(&mut ledger, opts);
    }
    ledger
}

fn skew_lines_example(ledger: &mut Ledger) {
    let ring = PolyRing::new(Rationals, 4, MonomialOrder::GREVLEX).expect("ring");
    let (a, b, c) = match (
        corpus::load_in(&ring, corpus::SKEW_LINES),
        corpus::load_in(&ring, corpus::TWISTED_QUARTIC),
        corpus::load_in(&ring, corpus::LINK_CI),
    ) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => {
            ledger.push(
                "corpus",
                "golden files parse",
                "ok",
                "parse error",
                Status::Fail,
            );
            return;
        }
    };

    ledger.check(
        "intersection",
        "a ∩ b = (x0x3 - x1x2, x0x2^2 - x1^2x3)",
        true,
        ideal_ops::intersect(&a, &b).and_then(|i| i.equals(&c)),
    );
    ledger.check(
        "intersection_is_ci",
        "a ∩ b is a complete intersection",
        true,
        ideal_ops::is_complete_intersection(&c),
    );
    ledger.check(
        "colon_a",
        "(a ∩ b) : a = b",
        true,
        ideal_ops::colon(&c, &a).and_then(|i| i.equals(&b)),
    );
    ledger.check(
        "colon_b",
        "(a ∩ b) : b = a",
        true,
        ideal_ops::colon(&c, &b).and_then(|i| i.equals(&a)),
    );
    let snap_a = DepthSnapshot::of(&a);
    let snap_b = DepthSnapshot::of(&b);
    ledger.check(
        "depth_a",
        "depth R/a = 1",
        1,
        snap_a.clone().map(|s| s.depth),
    );
    ledger.check(
        "depth_b",
        "depth R/b = 1",
        1,
        snap_b.clone().map(|s| s.depth),
    );
    ledger.check(
        "cd_a",
        "cd(a) = 3 (squarefree route)",
        3,
        stanley_reisner::sqf_invariants(&a, &Rationals).map(|s| s.cd),
    );

    cd_of_quartic_over_f2(ledger);

    match linkage::link(&a, &c) {
        Ok(rec) => {
            ledger.check(
                "link_verified",
                "a and b are linked by a ∩ b",
                true,
                Ok(rec.verified && rec.b.equals(&b).unwrap_or(false)),
            );
            ledger.check(
                "canonical_depth",
                "depth K_{R/a} = 2 = depth R/b + 1",
                2,
                linkage::canonical_depth(&rec),
            );
        }
        Err(e) => ledger.push(
            "link_verified",
            "a and b are linked by a ∩ b",
            true,
            format!("error: {e}"),
            Status::Fail,
        ),
    }

    let dim_two = (|| -> Result<bool> {
        let (sa, sb) = (snap_a?, snap_b?);
        Ok(sa.dim == 2 && !sa.is_cohen_macaulay() && sa.depth == 1 && sb.depth == 1)
    })();
    ledger.check(
        "dim_two_instance",
        "dim R/a = 2, R/a not CM ⇒ depth R/a = depth R/b = 1",
        true,
        dim_two,
    );

    let forward = linkage::verify_link(&a, &b, &c);
    ledger.check("verify_link", "verify_link(a, b, c)", true, Ok(forward.ok));
    let swapped = linkage::verify_link(&b, &a, &c);
    ledger.check(
        "verify_link_swapped",
        "verify_link(b, a, c)",
        true,
        Ok(swapped.ok),
    );

    // The three-generator list sometimes quoted for b is not the link.
    let listed = parse::ideal_from_strs(
        &ring,
        &["x0*x3 - x1*x2", "x1^3 - x0^2*x3", "x2^3 - x1*x3^2"],
    );
    let equal = listed.and_then(|l| ideal_ops::colon(&c, &a).and_then(|x| x.equals(&l)));
    let actual = match equal {
        Ok(true) => "equal".to_string(),
        Ok(false) => "different".to_string(),
        Err(e) => format!("error: {e}"),
    };
    ledger.push(
        "three_generator_list",
        "(x0x3 - x1x2, x1^3 - x0^2x3, x2^3 - x1x3^2) vs (a ∩ b) : a",
        "different",
        actual,
        Status::Info,
    );
}

fn cd_of_quartic_over_f2(ledger: &mut Ledger) {
    let b = match corpus::load(corpus::TWISTED_QUARTIC_F2) {
        Ok(crate::AnyIdeal::Prime(b)) => b,
        _ => {
            ledger.push("cd_b", "cd(b) = 2 over F_2", 2, "parse error", Status::Fail);
            return;
        }
    };
    let initial = ideal_ops::height(&b).and_then(|h| {
        let d = crate::resolution::depth_and_pd_quotient(&b)?.depth;
        Ok((h, b.num_vars() - d))
    });
    ledger.check(
        "cd_b_initial_bounds",
        "before probing, 2 <= cd(b) <= 3",
        "[2, 3]".to_string(),
        initial.map(|(l, u)| format!("[{l}, {u}]")),
    );
    match frobenius::cd_bounds_char_p(&b, frobenius::DEFAULT_E_MAX) {
        Ok(bounds) => {
            let confirmed = bounds.probes.iter().any(|p| {
                p.index == 3 && matches!(p.outcome, ProbeOutcome::ConfirmedVanishing { .. })
            });
            match bounds.exact {
                Some(c) => {
                    let status = if c == 2 && confirmed {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    ledger.push(
                        "cd_b",
                        "cd(b) = 2 over F_2 (H^3 vanishing confirmed)",
                        2,
                        c,
                        status,
                    );
                }
                None if bounds.upper >= 3 => {
                    // the probe gave up: the bounds stand, never cd = 3
                    ledger.push(
                        "cd_b",
                        "cd(b) = 2 over F_2 (H^3 vanishing confirmed)",
                        2,
                        format!("not confirmed, bounds [{}, {}]", bounds.lower, bounds.upper),
                        Status::Skipped,
                    );
                }
                None => ledger.push(
                    "cd_b",
                    "cd(b) = 2 over F_2",
                    2,
                    format!("{bounds:?}"),
                    Status::Fail,
                ),
            }
        }
        Err(e) => ledger.push(
            "cd_b",
            "cd(b) = 2 over F_2",
            2,
            format!("error: {e}"),
            Status::Fail,
        ),
    }
}

/// `a` = maximal minors of a generic 4x3 matrix, `b` = 2-minors of its last
/// two rows, linked by the two maximal minors containing those rows.
fn determinantal_example(ledger: &mut Ledger, opts: HeavyOptions) {
    let result = gb::with_pair_budget(opts.pair_budget, || determinantal_entries(ledger));
    match result {
        Ok(()) => {}
        Err(e @ Error::BudgetExceeded { .. }) => ledger.push(
            "heavy",
            "determinantal example",
            "within budget",
            format!("{e}"),
            Status::Skipped,
        ),
        Err(e) => ledger.push(
            "heavy",
            "determinantal example",
            "ok",
            format!("error: {e}"),
            Status::Fail,
        ),
    }
    for (id, side, value) in [("cd_a_char0", "a", 4), ("cd_b_char0", "b", 3)] {
        ledger.push(
            id,
            &format!("cd({side}) = {value} in characteristic 0"),
            value,
            "needs methods outside this crate",
            Status::NotReproduced,
        );
    }
}

fn determinantal_entries(ledger: &mut Ledger) -> Result<()> {
    let ring = PolyRing::new(PrimeField::new(32003)?, 12, MonomialOrder::GREVLEX)?;
    let a = corpus::generic_minors(&ring, 3, &[0, 1, 2, 3], 3)?;
    let b = corpus::generic_minors(&ring, 3, &[2, 3], 2)?;
    let m023 = corpus::generic_minors(&ring, 3, &[0, 2, 3], 3)?;
    let m123 = corpus::generic_minors(&ring, 3, &[1, 2, 3], 3)?;
    let c = Ideal::new(&ring, [m023.generators(), m123.generators()].concat())?;

    for (side, ideal) in [("a", &a), ("b", &b)] {
        let snap = DepthSnapshot::of(ideal)?;
        ledger.check(
            &format!("heavy_height_{side}"),
            &format!("height {side} = 2"),
            2,
            Ok(snap.height),
        );
        ledger.check(
            &format!("heavy_cm_{side}"),
            &format!("R/{side} is Cohen-Macaulay"),
            true,
            Ok(snap.is_cohen_macaulay()),
        );
        let bounds = frobenius::cd_bounds_char_p(ideal, frobenius::DEFAULT_E_MAX)?;
        ledger.check(
            &format!("heavy_cd_{side}"),
            &format!("cd({side}) = 2 over F_32003"),
            "2".to_string(),
            Ok(bounds.exact.map_or_else(
                || format!("bounds [{}, {}]", bounds.lower, bounds.upper),
                |c| c.to_string(),
            )),
        );
    }
    let linked = a.contains_ideal(&c)?
        && b.contains_ideal(&c)?
        && ideal_ops::is_complete_intersection(&c)?
        && ideal_ops::colon(&c, &a)?.equals(&b)?
        && ideal_ops::colon(&c, &b)?.equals(&a)?;
    ledger.check(
        "heavy_link",
        "a and b are linked by two maximal minors",
        true,
        Ok(linked),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_passes_and_is_deterministic() {
        let first = verify_paper_suite(false);
        for e in &first.entries {
            assert!(
                matches!(e.status, Status::Pass | Status::Info),
                "{}: expected {}, got {}",
                e.id,
                e.expected,
                e.actual
            );
        }
        assert!(first.all_passed());
        assert_eq!(
            first.get("three_generator_list").unwrap().actual,
            "different"
        );
        assert_eq!(first, verify_paper_suite(false));
    }

    #[test]
    fn tiny_budget_skips_heavy_part() {
        let ledger = verify_paper_suite_with(Some(HeavyOptions { pair_budget: 10 }));
        assert!(ledger.all_passed());
        assert_eq!(ledger.get("heavy").unwrap().status, Status::Skipped);
        assert_eq!(
            ledger.get("cd_a_char0").unwrap().status,
            Status::NotReproduced
        );
    }

    #[test]
    fn determinantal_example_passes() {
        let ledger = verify_paper_suite(true);
        print!("{}", ledger.to_text());
        assert!(ledger.all_passed());
        assert_eq!(ledger.get("heavy_link").unwrap().status, Status::Pass);
    }
}
