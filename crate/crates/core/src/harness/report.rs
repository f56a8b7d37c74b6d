//! Invariant reports: every quantity with the route that produced it, or a
//! null value with the reason it is unavailable.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::Field;
use crate::frobenius::{self, CdBounds};
use crate::groebner::Ideal;
use crate::ideal_ops;
use crate::resolution::{self, BettiTable};
use crate::ring::RingDescriptor;
use crate::stanley_reisner;
use crate::{with_ideal, AnyIdeal};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry<T> {
    pub value: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl<T> Entry<T> {
    pub fn known(value: T, route: &str) -> Self {
        Self {
            value: Some(value),
            route: Some(route.to_string()),
            reason: None,
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Self {
            value: None,
            route: None,
            reason: Some(reason.into()),
        }
    }

    fn from_error(e: &Error) -> Self {
        Self::unknown(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub schema: u32,
    pub ring: RingDescriptor,
    pub field: String,
    pub generators: Vec<String>,
    pub homogeneous: bool,
    pub squarefree: bool,
    pub dim: Entry<i64>,
    pub height: Entry<usize>,
    pub depth: Entry<usize>,
    pub pd: Entry<usize>,
    pub betti: Entry<BettiTable>,
    pub cd: Entry<usize>,
    pub cd_bounds: Entry<CdBounds>,
    pub fgrade: Entry<usize>,
    pub cohen_macaulay: Entry<bool>,
    pub unmixed: Entry<bool>,
    /// Failed internal consistency checks; empty for a sound report.
    pub violations: Vec<String>,
}

impl InvariantReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain `key: value` lines.
    pub fn to_text(&self) -> String {
        fn line<T: std::fmt::Debug>(out: &mut String, key: &str, e: &Entry<T>) {
            let v = match (&e.value, &e.reason) {
                (Some(v), _) => format!("{v:?}"),
                (None, Some(r)) => format!("unknown ({r})"),
                (None, None) => "unknown".into(),
            };
            let route = e
                .route
                .as_deref()
                .map(|r| format!("  [{r}]"))
                .unwrap_or_default();
            out.push_str(&format!("{key:<15}{v}{route}\n"));
        }
        let mut s = format!(
            "ring           n={} char={} order={:?}\n",
            self.ring.num_vars, self.ring.characteristic, self.ring.order
        );
        line(&mut s, "dim", &self.dim);
        line(&mut s, "height", &self.height);
        line(&mut s, "depth", &self.depth);
        line(&mut s, "pd", &self.pd);
        if let Some(b) = &self.betti.value {
            s.push_str(&format!("{:<15}{:?}\n", "betti (totals)", b.totals()));
        }
        line(&mut s, "cd", &self.cd);
        if let Some(b) = &self.cd_bounds.value {
            s.push_str(&format!("{:<15}[{}, {}]\n", "cd bounds", b.lower, b.upper));
        }
        line(&mut s, "fgrade", &self.fgrade);
        line(&mut s, "cohen-macaulay", &self.cohen_macaulay);
        line(&mut s, "unmixed", &self.unmixed);
        for v in &self.violations {
            s.push_str(&format!("VIOLATION      {v}\n"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    /// Largest Frobenius stage tried by the cd probe.
    pub e_max: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            e_max: frobenius::DEFAULT_E_MAX,
        }
    }
}

pub fn invariant_report_any(ideal: &AnyIdeal, opts: &ReportOptions) -> InvariantReport {
    with_ideal!(ideal, i => invariant_report(i, opts))
}

/// Routes: squarefree monomial ideals get exact values from Hochster's
/// formula, cross-checked against the resolution; other ideals over `F_p`
/// get cd bounds from the Frobenius probe; over `Q` cd is only known in the
/// trivial cases.
pub fn invariant_report<F: Field>(ideal: &Ideal<F>, opts: &ReportOptions) -> InvariantReport {
    let ring = ideal.ring();
    let n = ring.num_vars();
    let field = ring.field();
    let homogeneous = ideal.is_homogeneous();
    let squarefree = ideal.is_squarefree_monomial();
    let mut r = InvariantReport {
        schema: SCHEMA_VERSION,
        ring: ring.descriptor(),
        field: field.name(),
        generators: ideal.generators().iter().map(|g| g.to_string()).collect(),
        homogeneous,
        squarefree,
        dim: Entry::unknown("not computed"),
        height: Entry::unknown("not computed"),
        depth: Entry::unknown("not computed"),
        pd: Entry::unknown("not computed"),
        betti: Entry::unknown("not computed"),
        cd: Entry::unknown("not computed"),
        cd_bounds: Entry::unknown("not computed"),
        fgrade: Entry::unknown("not computed"),
        cohen_macaulay: Entry::unknown("not computed"),
        unmixed: Entry::unknown("not computed"),
        violations: Vec::new(),
    };

    let dims = match ideal_ops::krull_dimension(ideal) {
        Ok(d) => d,
        Err(e) => {
            r.dim = Entry::from_error(&e);
            r.height = Entry::from_error(&e);
            return r;
        }
    };
    r.dim = Entry::known(dims.krull_dim, "initial ideal");
    if dims.is_unit {
        let why = "the unit ideal: R/I is the zero module";
        r.height = Entry::unknown(why);
        r.depth = Entry::unknown(why);
        r.pd = Entry::unknown(why);
        r.betti = Entry::unknown(why);
        r.cd = Entry::unknown(why);
        r.cd_bounds = Entry::unknown(why);
        r.fgrade = Entry::unknown(why);
        r.cohen_macaulay = Entry::unknown(why);
        r.unmixed = Entry::unknown(why);
        return r;
    }
    let height = dims.height.expect("proper ideal");
    let dim = dims.krull_dim as usize;
    r.height = Entry::known(height, "n - dim");

    if !homogeneous {
        let why = "the ideal is not homogeneous";
        for e in [&mut r.depth, &mut r.pd, &mut r.cd, &mut r.fgrade] {
            *e = Entry::unknown(why);
        }
        r.betti = Entry::unknown(why);
        r.cd_bounds = Entry::unknown(why);
        r.cohen_macaulay = Entry::unknown(why);
        r.unmixed = Entry::unknown(why);
        return r;
    }

    match resolution::resolve_quotient(ideal) {
        Ok(res) => {
            let pd = res.length();
            r.pd = Entry::known(pd, "minimal free resolution");
            r.depth = Entry::known(n - pd, "Auslander-Buchsbaum");
            r.betti = Entry::known(res.betti(), "minimal free resolution");
            r.cohen_macaulay = Entry::known(n - pd == dim, "depth = dim");
        }
        Err(e) => {
            r.pd = Entry::from_error(&e);
            r.depth = Entry::from_error(&e);
            r.betti = Entry::from_error(&e);
            r.cohen_macaulay = Entry::from_error(&e);
        }
    }

    if squarefree {
        match stanley_reisner::sqf_invariants(ideal, field) {
            Ok(s) => {
                r.cd = Entry::known(s.cd, "squarefree: cd = pd");
                r.fgrade = Entry::known(s.fgrade, "squarefree: fgrade = depth");
                r.unmixed = Entry::known(s.pure, "purity of the Stanley-Reisner complex");
                r.cd_bounds = Entry::known(
                    CdBounds {
                        lower: s.cd,
                        upper: s.cd,
                        exact: Some(s.cd),
                        notes: vec![format!("Hochster's formula over {}", s.field)],
                        probes: Vec::new(),
                    },
                    "squarefree",
                );
                if let Some(d) = r.depth.value {
                    if d != s.depth {
                        r.violations.push(format!(
                            "squarefree depth {} differs from resolution depth {d}",
                            s.depth
                        ));
                    }
                }
                let hochster = stanley_reisner::hochster_betti(ideal, field);
                if let (Some(b), Ok(h)) = (&r.betti.value, hochster) {
                    if *b != h {
                        r.violations
                            .push("Hochster Betti table differs from the resolution".into());
                    }
                }
            }
            Err(e) => {
                r.cd = Entry::from_error(&e);
                r.fgrade = Entry::from_error(&e);
            }
        }
    } else if field.characteristic() != 0 {
        match frobenius::cd_bounds_char_p(ideal, opts.e_max) {
            Ok(b) => {
                match b.exact {
                    Some(c) => {
                        r.cd = Entry::known(c, "char p: height and Frobenius probe");
                        r.fgrade = Entry::known(n - c, "n - cd");
                    }
                    None => {
                        let why = format!("only bounds known: {} <= cd <= {}", b.lower, b.upper);
                        r.cd = Entry::unknown(why.clone());
                        r.fgrade = Entry::unknown(why);
                    }
                }
                r.cd_bounds = Entry::known(b, "char p");
            }
            Err(e) => {
                r.cd = Entry::from_error(&e);
                r.cd_bounds = Entry::from_error(&e);
                r.fgrade = Entry::from_error(&e);
            }
        }
    } else if height == n || height == 0 {
        // m-primary ideals have cd = n; the zero ideal has cd = 0
        r.cd = Entry::known(height, "cd = height (m-primary or zero)");
        r.fgrade = Entry::known(n - height, "n - cd");
        r.cd_bounds = Entry::unknown("exact value known");
    } else {
        let why = "cohomological dimension in characteristic 0 is not computed";
        r.cd = Entry::unknown(why);
        r.fgrade = Entry::unknown(why);
        r.cd_bounds = Entry::unknown(why);
    }

    if r.unmixed.value.is_none() {
        r.unmixed = match r.cohen_macaulay.value {
            Some(true) => Entry::known(true, "Cohen-Macaulay"),
            _ => Entry::unknown("no primary decomposition available"),
        };
    }
    r.violations.extend(consistency_violations(&r, n));
    r
}

/// The internal checks every report must pass.
pub fn consistency_violations(r: &InvariantReport, n: usize) -> Vec<String> {
    let mut v = Vec::new();
    if let (Some(d), Some(p)) = (r.depth.value, r.pd.value) {
        if d + p != n {
            v.push(format!("depth {d} + pd {p} != n {n}"));
        }
    }
    if let (Some(d), Some(dim)) = (r.depth.value, r.dim.value) {
        if d as i64 > dim {
            v.push(format!("depth {d} exceeds dim {dim}"));
        }
    }
    if let Some(c) = r.cd.value {
        if let Some(b) = &r.cd_bounds.value {
            if c < b.lower || c > b.upper {
                v.push(format!("cd {c} outside bounds [{}, {}]", b.lower, b.upper));
            }
        }
        if let Some(f) = r.fgrade.value {
            if f + c != n {
                v.push(format!("fgrade {f} != n - cd = {}", n - c));
            }
        }
        if let Some(h) = r.height.value {
            if c < h {
                v.push(format!("cd {c} below height {h}"));
            }
        }
    }
    if let (Some(b), Some(h)) = (&r.cd_bounds.value, r.height.value) {
        if !b.is_consistent(h, n) {
            v.push(format!("cd bounds [{}, {}] inconsistent", b.lower, b.upper));
        }
    }
    v
}
