//! Seeded randomized suites. Trials are independent and may run
//! concurrently; results are aggregated in trial order, so a report depends
//! only on its parameters.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::frobenius;
use crate::groebner::Ideal;
use crate::linkage::{self, LinkageRecord};
use crate::monomial::{Monomial, MonomialOrder};
use crate::par::{self, Execution};
use crate::resolution;
use crate::ring::PolyRing;
use crate::rng;
use crate::stanley_reisner::{self, SimplicialComplex};

/// Largest number of variables the suites accept.
pub const MAX_SUITE_VARS: usize = 6;

pub const PROPERTIES: [&str; 8] = [
    "double_colon",
    "cm_preserved",
    "canonical_module_depth",
    "dim_two_depth_one",
    "even_chain_depth",
    "cm_link_cd",
    "squarefree_chain_cd",
    "hochster_matches_resolution",
];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCount {
    /// Trials where the hypothesis of the property held.
    pub checked: usize,
    pub violated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub schema: u32,
    pub trials: usize,
    pub seed: u64,
    pub num_vars: usize,
    pub characteristic: u64,
    pub verified_links: usize,
    /// Links with both sides Cohen-Macaulay.
    pub cm_links: usize,
    /// Links where `R/a` is not Cohen-Macaulay and has dimension 2.
    pub dim_two_non_cm: usize,
    pub chains_completed: usize,
    pub properties: BTreeMap<String, PropertyCount>,
    /// Stage failures (not violations) by error kind.
    pub stage_failures: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} trials, seed {}, n={}, char={}\nverified links {}, CM-CM links {}, dim-2 non-CM {}, chains {}\n",
            self.trials,
            self.seed,
            self.num_vars,
            self.characteristic,
            self.verified_links,
            self.cm_links,
            self.dim_two_non_cm,
            self.chains_completed
        );
        for (name, c) in &self.properties {
            s.push_str(&format!(
                "{name:<30}checked {:>5}  violated {}\n",
                c.checked, c.violated
            ));
        }
        for (kind, count) in &self.stage_failures {
            s.push_str(&format!("stage failure {kind}: {count}\n"));
        }
        for v in &self.violations {
            s.push_str(&format!(
                "VIOLATION trial {} {}: {}\n",
                v.trial, v.property, v.detail
            ));
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub exec: Execution,
    /// Probe depth for the cd checks over `F_p`.
    pub e_max: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            exec: Execution::Auto,
            e_max: frobenius::DEFAULT_E_MAX,
        }
    }
}

#[derive(Default)]
struct TrialOutcome {
    verified: bool,
    cm_link: bool,
    dim_two_non_cm: bool,
    chain_completed: bool,
    checked: Vec<&'static str>,
    violations: Vec<(&'static str, String)>,
    failures: Vec<&'static str>,
}

impl TrialOutcome {
    fn property(&mut self, name: &'static str, holds: bool, detail: impl FnOnce() -> String) {
        self.checked.push(name);
        if !holds {
            self.violations.push((name, detail()));
        }
    }

    /// Runs a stage; an error is counted as a stage failure.
    fn stage<T>(&mut self, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(e.kind());
                None
            }
        }
    }
}

fn check_vars(n: usize) -> Result<()> {
    if !(2..=MAX_SUITE_VARS).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "the suites need 2 <= n <= {MAX_SUITE_VARS}, got {n}"
        )));
    }
    Ok(())
}

/// A random pure complex on `n` vertices with one to four facets of a common
/// size between 1 and `n - 1`.
pub fn random_pure_complex<R: Rng>(rng: &mut R, n: usize) -> SimplicialComplex {
    let size = rng.gen_range(1..n);
    let count = rng.gen_range(1..=4);
    let facets: Vec<u32> = (0..count)
        .map(|_| sample(rng, n, size).iter().fold(0u32, |m, v| m | 1 << v))
        .collect();
    SimplicialComplex::from_facets(n, &facets).expect("facets fit")
}

pub fn random_property_suite(trials: usize, seed: u64, n: usize, p: u64) -> Result<PropertyReport> {
    random_property_suite_with(trials, seed, n, p, SuiteOptions::default())
}

pub fn random_property_suite_with(
    trials: usize,
    seed: u64,
    n: usize,
    p: u64,
    opts: SuiteOptions,
) -> Result<PropertyReport> {
    check_vars(n)?;
    let outcomes = if p == 0 {
        let ring = PolyRing::new(Rationals, n, MonomialOrder::GREVLEX)?;
        run_trials(&ring, trials, seed, opts)
    } else {
        let ring = PolyRing::new(PrimeField::new(p)?, n, MonomialOrder::GREVLEX)?;
        run_trials(&ring, trials, seed, opts)
    };
    let mut report = PropertyReport {
        schema: super::report::SCHEMA_VERSION,
        trials,
        seed,
        num_vars: n,
        characteristic: p,
        verified_links: 0,
        cm_links: 0,
        dim_two_non_cm: 0,
        chains_completed: 0,
        properties: PROPERTIES
            .iter()
            .map(|p| (p.to_string(), PropertyCount::default()))
            .collect(),
        stage_failures: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (t, o) in outcomes.into_iter().enumerate() {
        report.verified_links += o.verified as usize;
        report.cm_links += o.cm_link as usize;
        report.dim_two_non_cm += o.dim_two_non_cm as usize;
        report.chains_completed += o.chain_completed as usize;
        for name in o.checked {
            report
                .properties
                .get_mut(name)
                .expect("known property")
                .checked += 1;
        }
        for (name, detail) in o.violations {
            report
                .properties
                .get_mut(name)
                .expect("known property")
                .violated += 1;
            report.violations.push(Violation {
                trial: t,
                property: name.into(),
                detail,
            });
        }
        for kind in o.failures {
            *report.stage_failures.entry(kind.into()).or_default() += 1;
        }
    }
    Ok(report)
}

fn run_trials<F: Field>(
    ring: &Arc<PolyRing<F>>,
    trials: usize,
    seed: u64,
    opts: SuiteOptions,
) -> Vec<TrialOutcome> {
    par::map_ordered(opts.exec, (0..trials).collect(), |t| {
        trial(ring, seed, t as u64, opts.e_max)
    })
}

fn trial<F: Field>(ring: &Arc<PolyRing<F>>, seed: u64, t: u64, e_max: u32) -> TrialOutcome {
    let mut o = TrialOutcome::default();
    let n = ring.num_vars();
    let trial_seed = rng::child_seed(seed, t);
    let mut rng = rng::stream_rng(trial_seed, 0);
    let complex = random_pure_complex(&mut rng, n);
    let Some(a) = o.stage(stanley_reisner::ideal_of_complex(ring, &complex)) else {
        return o;
    };

    // the combinatorial and algebraic routes agree on the squarefree input
    if let Some((hochster, res)) = o.stage(
        stanley_reisner::hochster_betti(&a, ring.field())
            .and_then(|h| Ok((h, resolution::resolve_quotient(&a)?))),
    ) {
        let betti = res.betti();
        let pd = res.length();
        let sqf = stanley_reisner::sqf_invariants_of_complex(&complex, ring.field());
        o.property(
            "hochster_matches_resolution",
            hochster == betti && sqf.depth + pd == n && sqf.pd == pd,
            || format!("Hochster {hochster:?} vs resolution {betti:?}, pd {pd}"),
        );
    }

    let Some(rec) = o.stage(linkage::find_ci_link(&a, rng::child_seed(trial_seed, 1))) else {
        return o;
    };
    link_properties(&mut o, &rec, e_max);

    if let Some(chain) = o.stage(linkage::even_link_chain(
        &a,
        2,
        rng::child_seed(trial_seed, 2),
    )) {
        match &chain.failure {
            Some(e) => o.failures.push(e.kind()),
            None => {
                o.chain_completed = true;
                let (first, last) = (chain.depths[0], chain.depths[2]);
                o.property("even_chain_depth", first == last, || {
                    format!("depths along the chain: {:?}", chain.depths)
                });
                let end = &chain.ideals[2];
                if end.is_squarefree_monomial() {
                    let cds = stanley_reisner::sqf_invariants(&a, ring.field()).and_then(|x| {
                        Ok((x.cd, stanley_reisner::sqf_invariants(end, ring.field())?.cd))
                    });
                    if let Some((ca, ce)) = o.stage(cds) {
                        o.property("squarefree_chain_cd", ca == ce, || {
                            format!("cd {ca} vs {ce} at {end}")
                        });
                    }
                }
            }
        }
    }
    o
}

fn link_properties<F: Field>(o: &mut TrialOutcome, rec: &LinkageRecord<F>, e_max: u32) {
    let (sa, sb) = (rec.invariants_a, rec.invariants_b);
    o.property("double_colon", rec.verified, || {
        format!("c : (c : a) != a for a = {}", rec.a)
    });
    if !rec.verified {
        return;
    }
    o.verified = true;
    if sa.is_cohen_macaulay() {
        o.property("cm_preserved", sb.is_cohen_macaulay(), || {
            format!("R/a CM but R/b has depth {} and dim {}", sb.depth, sb.dim)
        });
    } else {
        if let Some(k) = o.stage(linkage::canonical_depth(rec)) {
            o.property("canonical_module_depth", sb.depth + 1 == k, || {
                format!("depth R/b = {} but depth K = {k}", sb.depth)
            });
        }
        if sa.dim == 2 {
            o.dim_two_non_cm = true;
            o.property("dim_two_depth_one", sa.depth == 1 && sb.depth == 1, || {
                format!("depths {} and {}", sa.depth, sb.depth)
            });
        }
    }
    if sa.is_cohen_macaulay() && sb.is_cohen_macaulay() {
        o.cm_link = true;
        if rec.a.ring().field().characteristic() != 0 {
            let cds = frobenius::cd_bounds_char_p(&rec.a, e_max)
                .and_then(|x| Ok((x.exact, frobenius::cd_bounds_char_p(&rec.b, e_max)?.exact)));
            if let Some((ca, cb)) = o.stage(cds) {
                let h = sa.height;
                o.property("cm_link_cd", ca == Some(h) && cb == Some(h), || {
                    format!("cd {ca:?} and {cb:?}, height {h}")
                });
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: u32,
    pub ideals: usize,
    pub seed: u64,
    pub agreements: usize,
    pub stage_failures: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.stage_failures.is_empty()
    }
}

/// Random squarefree monomial ideals in 2 to `max_vars` variables: Hochster's
/// formula against the minimal free resolution, and `depth + pd = n`.
pub fn squarefree_oracle_suite(
    count: usize,
    seed: u64,
    max_vars: usize,
    exec: Execution,
) -> Result<OracleReport> {
    check_vars(max_vars)?;
    let field = PrimeField::new(32003)?;
    let rings: Vec<_> = (2..=max_vars)
        .map(|n| PolyRing::new(field, n, MonomialOrder::GREVLEX))
        .collect::<Result<_>>()?;
    let results = par::map_ordered(
        exec,
        (0..count).collect(),
        |t: usize| -> Result<Option<String>> {
            let mut rng = rng::stream_rng(seed, t as u64);
            let ring = &rings[rng.gen_range(0..rings.len())];
            let n = ring.num_vars();
            let gens = (0..rng.gen_range(1..=5))
                .map(|_| {
                    let mask: u32 = rng.gen_range(1..1u32 << n);
                    let exps: Vec<u32> = (0..n).map(|v| mask >> v & 1).collect();
                    crate::poly::Polynomial::monomial(ring, Monomial::from_exponents(&exps))
                })
                .collect();
            let ideal = Ideal::new(ring, gens)?;
            let hochster = stanley_reisner::hochster_betti(&ideal, ring.field())?;
            let res = resolution::resolve_quotient(&ideal)?;
            let dp = resolution::depth_and_pd_quotient(&ideal)?;
            let mut problems = Vec::new();
            if hochster != res.betti() {
                problems.push(format!(
                    "Betti tables differ: {hochster:?} vs {:?}",
                    res.betti()
                ));
            }
            if dp.depth + dp.pd != n {
                problems.push(format!("depth {} + pd {} != {n}", dp.depth, dp.pd));
            }
            Ok((!problems.is_empty()).then(|| format!("{ideal}: {}", problems.join("; "))))
        },
    );
    let mut report = OracleReport {
        schema: super::report::SCHEMA_VERSION,
        ideals: count,
        seed,
        agreements: 0,
        stage_failures: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (t, r) in results.into_iter().enumerate() {
        match r {
            Ok(None) => report.agreements += 1,
            Ok(Some(detail)) => report.violations.push(Violation {
                trial: t,
                property: "hochster_matches_resolution".into(),
                detail,
            }),
            Err(e) => *report.stage_failures.entry(e.kind().into()).or_default() += 1,
        }
    }
    Ok(report)
}
