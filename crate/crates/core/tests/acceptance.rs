//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use linklab_core::harness::ledger::{self, Ledger, Status};
use linklab_core::harness::report::{invariant_report, ReportOptions};
use linklab_core::harness::suites;
use linklab_core::par::Execution;
use linklab_core::{Ideal, MonomialOrder, PolyRing, PrimeField, Rationals};

struct Outcome {
    pass: bool,
    detail: String,
}

fn entries_pass(ledger: &Ledger, ids: &[&str]) -> Outcome {
    let bad: Vec<String> = ids
        .iter()
        .filter_map(|id| match ledger.get(id) {
            Some(e) if e.status == Status::Pass => None,
            Some(e) => Some(format!("{id}: expected {}, got {}", e.expected, e.actual)),
            None => Some(format!("{id}: missing")),
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} ledger entries pass", ids.len())
        } else {
            bad.join("; ")
        },
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.pass = false;
    }
    o.detail = format!("{} [{:.1}s]", o.detail, took.as_secs_f64());
    o
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut light = None;

    results.push((
        1,
        timed(Duration::from_secs(60), || {
            let l = ledger::verify_paper_suite(false);
            let o = entries_pass(
                &l,
                &[
                    "intersection",
                    "intersection_is_ci",
                    "colon_a",
                    "colon_b",
                    "depth_a",
                    "depth_b",
                    "cd_a",
                    "link_verified",
                    "verify_link",
                    "verify_link_swapped",
                    "dim_two_instance",
                ],
            );
            light = Some(l);
            o
        }),
    ));
    let light = light.expect("ledger ran");

    // a skipped probe is tolerated, a claim of cd = 3 is not
    results.push((2, {
        let mut o = entries_pass(&light, &["cd_b_initial_bounds", "cd_b"]);
        if let Some(e) = light.get("cd_b") {
            if e.status == Status::Skipped {
                o.pass = !e.actual.contains("= 3");
                o.detail = format!("probe not confirmed: {}", e.actual);
            }
        }
        o
    }));

    results.push((3, entries_pass(&light, &["canonical_depth", "depth_b"])));

    results.push((
        4,
        timed(
            Duration::from_secs(600),
            || match suites::squarefree_oracle_suite(240, 2024, 6, Execution::Auto) {
                Ok(r) => Outcome {
                    pass: r.passed() && r.agreements >= 200,
                    detail: format!(
                        "{} of {} ideals agree, {} violations",
                        r.agreements,
                        r.ideals,
                        r.violations.len()
                    ),
                },
                Err(e) => Outcome {
                    pass: false,
                    detail: e.to_string(),
                },
            },
        ),
    ));

    let suite = suites::random_property_suite(120, 7, 5, 32003);
    results.push((
        5,
        match &suite {
            Ok(r) => {
                let count = |p: &str| r.properties[p].checked;
                Outcome {
                    pass: r.passed()
                        && r.verified_links >= 50
                        && count("double_colon") >= 50
                        && count("cm_preserved") > 0
                        && count("even_chain_depth") > 0,
                    detail: format!(
                        "{} verified links, {} chains, {} dim-2 non-CM, {} violations, stage failures {:?}",
                        r.verified_links,
                        r.chains_completed,
                        r.dim_two_non_cm,
                        r.violations.len(),
                        r.stage_failures
                    ),
                }
            }
            Err(e) => Outcome {
                pass: false,
                detail: e.to_string(),
            },
        },
    ));
    results.push((
        6,
        match &suite {
            Ok(r) => {
                let c = &r.properties["cm_link_cd"];
                Outcome {
                    pass: c.checked > 0 && c.checked == r.cm_links && c.violated == 0,
                    detail: format!(
                        "{} CM-CM links, exact equal cd on {}",
                        r.cm_links,
                        c.checked - c.violated
                    ),
                }
            }
            Err(e) => Outcome {
                pass: false,
                detail: e.to_string(),
            },
        },
    ));

    results.push((
        7,
        timed(Duration::from_secs(1800), || {
            let l = ledger::verify_paper_suite(true);
            if let Some(e) = l.get("heavy").filter(|e| e.status == Status::Skipped) {
                return Outcome {
                    pass: true,
                    detail: format!("SKIPPED: {}", e.actual),
                };
            }
            let mut o = entries_pass(
                &l,
                &[
                    "heavy_height_a",
                    "heavy_height_b",
                    "heavy_cm_a",
                    "heavy_cm_b",
                    "heavy_cd_a",
                    "heavy_cd_b",
                    "heavy_link",
                ],
            );
            let noted = ["cd_a_char0", "cd_b_char0"]
                .iter()
                .all(|id| l.get(id).is_some_and(|e| e.status == Status::NotReproduced));
            o.pass &= noted;
            o.detail
                .push_str(", characteristic 0 values reported as not reproduced");
            o
        }),
    ));

    results.push((8, {
        let mut bad = Vec::new();
        for n in 2..=5 {
            let q = PolyRing::new(Rationals, n, MonomialOrder::GREVLEX).unwrap();
            let p =
                PolyRing::new(PrimeField::new(32003).unwrap(), n, MonomialOrder::GREVLEX).unwrap();
            let vars: Vec<usize> = (0..n).collect();
            let cds = [
                invariant_report(&Ideal::of_variables(&q, &vars), &ReportOptions::default())
                    .cd
                    .value,
                invariant_report(&Ideal::of_variables(&p, &vars), &ReportOptions::default())
                    .cd
                    .value,
            ];
            if cds != [Some(n), Some(n)] {
                bad.push(format!("n={n}: {cds:?}"));
            }
        }
        Outcome {
            pass: bad.is_empty(),
            detail: if bad.is_empty() {
                "cd = n for n = 2..5 over Q and F_32003".into()
            } else {
                bad.join("; ")
            },
        }
    }));

    let mut all = true;
    for (k, o) in &results {
        all &= o.pass;
        println!(
            "criterion {k}: {} - {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
