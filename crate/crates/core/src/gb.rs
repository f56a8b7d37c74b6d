//! Buchberger's algorithm on submodules of a graded free module `R^s`.
//!
//! Ideals use the same engine with `s = 1`. Inputs are queued alongside
//! S-pairs and processed in degree order (normal strategy on sugar), which
//! for homogeneous input makes the set of inputs that survive reduction a
//! minimal generating set. Pairs are pruned with the Gebauer–Möller
//! criteria; the product criterion only applies in rank one.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::PolyRing;
use crate::vector::{cmp_pos, Accumulator, Vector};

pub const DEFAULT_PAIR_BUDGET: u64 = 1_000_000;
pub const PAIR_BUDGET_ENV: &str = "LINKLAB_PAIR_BUDGET";

thread_local! {
    static BUDGET_OVERRIDE: Cell<Option<u64>> = const { Cell::new(None) };
}

/// Maximum number of S-pairs a single basis computation may process.
///
/// Read from `LINKLAB_PAIR_BUDGET` once; `with_pair_budget` overrides it for
/// the current thread.
pub fn pair_budget() -> u64 {
    static FROM_ENV: OnceLock<u64> = OnceLock::new();
    BUDGET_OVERRIDE.with(|o| o.get()).unwrap_or_else(|| {
        *FROM_ENV.get_or_init(|| {
            std::env::var(PAIR_BUDGET_ENV)
                .ok()
                .and_then(|s| s.trim().parse().ok())
                .unwrap_or(DEFAULT_PAIR_BUDGET)
        })
    })
}

/// Runs `f` with a thread-local pair budget.
pub fn with_pair_budget<T>(budget: u64, f: impl FnOnce() -> T) -> T {
    let prev = BUDGET_OVERRIDE.with(|o| o.replace(Some(budget)));
    let out = f();
    BUDGET_OVERRIDE.with(|o| o.set(prev));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum InputRole {
    /// Part of the submodule but not counted as a generator.
    Base,
    /// A generator whose survival is recorded.
    Candidate,
}

pub(crate) struct GbOutput<F: Field> {
    /// Reduced, monic, sorted ascending by leading term.
    pub basis: Vec<Vector<F>>,
    /// Per input: reduced to something nonzero when it was processed.
    pub survived: Vec<bool>,
    /// Remainders set aside by `GbOptions::set_aside_from`.
    pub set_aside: Vec<Vector<F>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct GbOptions {
    /// Remainders whose leading term lies in a component `>= k` are
    /// collected instead of joining the basis. With inputs `(f_j, e_j)`
    /// these are exactly Schreyer's generators of the syzygies of the `f_j`.
    pub set_aside_from: Option<usize>,
    /// Stop before the first item of higher degree. Only meaningful for
    /// homogeneous input, where the result is a basis up to that degree.
    pub max_degree: Option<i64>,
}

enum Item {
    Pair {
        i: usize,
        j: usize,
        lcm: Monomial,
        comp: usize,
    },
    Input(usize),
}

struct Engine<'a, F: Field> {
    ring: &'a PolyRing<F>,
    product_criterion: bool,
    elems: Vec<Vector<F>>,
    leads: Vec<(Monomial, usize)>,
    sugar: Vec<i64>,
    active: Vec<usize>,
    queue: BTreeMap<(i64, u8, u64), Item>,
    seq: u64,
}

impl<'a, F: Field> Engine<'a, F> {
    fn push(&mut self, sugar: i64, rank: u8, item: Item) {
        self.queue.insert((sugar, rank, self.seq), item);
        self.seq += 1;
    }

    fn find_divisor(&self, m: &Monomial, comp: usize, skip: Option<usize>) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .find(|&g| Some(g) != skip && self.leads[g].1 == comp && self.leads[g].0.divides(m))
    }

    /// Full reduction by the active elements; tracks sugar.
    fn reduce(&self, v: Vector<F>, mut sugar: i64, skip: Option<usize>) -> (Vector<F>, i64) {
        let k = self.ring.field();
        let mut acc = Accumulator::new(self.ring, v);
        let mut rem = Vec::new();
        while let Some(lt) = acc.pop_lead() {
            match self.find_divisor(&lt.mono, lt.comp, skip) {
                Some(g) => {
                    let glead = self.elems[g].lead().expect("basis elements are nonzero");
                    let m = glead.mono.quotient_of(&lt.mono).expect("divisor");
                    let c = k.div(&lt.coeff, &glead.coeff).expect("nonzero lead");
                    sugar = sugar.max(m.degree() as i64 + self.sugar[g]);
                    acc.sub_mul_tail(&c, &m, &self.elems[g]);
                }
                None => rem.push(lt),
            }
        }
        rem.reverse();
        (Vector::from_ascending(rem), sugar)
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> (Vector<F>, i64) {
        let k = self.ring.field();
        let mi = self.leads[i].0.quotient_of(lcm).expect("lcm");
        let mj = self.leads[j].0.quotient_of(lcm).expect("lcm");
        let sugar = (self.sugar[i] + mi.degree() as i64).max(self.sugar[j] + mj.degree() as i64);
        let minus_one = k.neg(&k.one());
        let left = Vector::zero().sub_mul(self.ring, &minus_one, &mi, &self.elems[i]);
        (
            left.sub_mul(self.ring, &k.one(), &mj, &self.elems[j]),
            sugar,
        )
    }

    fn add(&mut self, h: Vector<F>, sugar: i64) {
        let h = h.monic(self.ring);
        let lead = h.lead().expect("nonzero");
        let (lk, ck) = (lead.mono.clone(), lead.comp);
        let k = self.elems.len();

        // Gebauer–Möller criterion B on the queued pairs.
        let leads = &self.leads;
        self.queue.retain(|_, item| match item {
            Item::Pair { i, j, lcm, comp } if *comp == ck && lk.divides(lcm) => {
                leads[*i].0.lcm(&lk) == *lcm || leads[*j].0.lcm(&lk) == *lcm
            }
            _ => true,
        });

        let cands: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .copied()
            .filter(|&i| self.leads[i].1 == ck)
            .map(|i| (i, self.leads[i].0.lcm(&lk)))
            .collect();
        // criterion M: drop pairs whose lcm is a proper multiple of another
        let mut keep: Vec<bool> = cands
            .iter()
            .map(|(_, l)| {
                !cands
                    .iter()
                    .any(|(_, o)| o.degree() < l.degree() && o.divides(l))
            })
            .collect();
        // criterion F plus the product criterion, per class of equal lcm
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            let class: Vec<usize> = (a..cands.len())
                .filter(|&b| keep[b] && cands[b].1 == cands[a].1)
                .collect();
            let coprime = self.product_criterion
                && class
                    .iter()
                    .any(|&b| self.leads[cands[b].0].0.is_coprime(&lk));
            for &b in &class {
                keep[b] = false;
            }
            if !coprime {
                let (i, lcm) = cands[a].clone();
                let si = self.sugar[i] + (lcm.degree() - self.leads[i].0.degree()) as i64;
                let sk = sugar + (lcm.degree() - lk.degree()) as i64;
                self.push(
                    si.max(sk),
                    0,
                    Item::Pair {
                        i,
                        j: k,
                        lcm,
                        comp: ck,
                    },
                );
            }
        }

        let leads = &self.leads;
        self.active
            .retain(|&i| !(leads[i].1 == ck && lk.divides(&leads[i].0)));
        self.active.push(k);
        self.elems.push(h);
        self.leads.push((lk, ck));
        self.sugar.push(sugar);
    }

    fn finish(self) -> Vec<Vector<F>> {
        let order = self.ring.order();
        let mut out: Vec<Vector<F>> = self
            .active
            .iter()
            .map(|&g| {
                let (r, _) = self.reduce(self.elems[g].clone(), self.sugar[g], Some(g));
                r.monic(self.ring)
            })
            .collect();
        out.sort_by(|a, b| {
            let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
            cmp_pos(order, (&la.mono, la.comp), (&lb.mono, lb.comp))
        });
        out
    }
}

/// Computes the reduced Gröbner basis of the submodule generated by the
/// inputs. `shifts` are the degrees of the ambient basis vectors.
pub(crate) fn buchberger<F: Field>(
    ring: &PolyRing<F>,
    shifts: &[i64],
    inputs: &[(Vector<F>, InputRole)],
) -> Result<GbOutput<F>> {
    buchberger_with(ring, shifts, inputs, GbOptions::default())
}

pub(crate) fn buchberger_with<F: Field>(
    ring: &PolyRing<F>,
    shifts: &[i64],
    inputs: &[(Vector<F>, InputRole)],
    opts: GbOptions,
) -> Result<GbOutput<F>> {
    let budget = pair_budget();
    let mut engine = Engine {
        ring,
        product_criterion: shifts.len() == 1,
        elems: Vec::new(),
        leads: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        queue: BTreeMap::new(),
        seq: 0,
    };
    let mut survived = vec![false; inputs.len()];
    for (idx, (v, role)) in inputs.iter().enumerate() {
        if let Some(d) = v.max_degree(shifts) {
            let rank = match role {
                InputRole::Base => 1,
                InputRole::Candidate => 2,
            };
            engine.push(d, rank, Item::Input(idx));
        }
    }
    let mut pairs_done = 0u64;
    let mut set_aside = Vec::new();
    while let Some((key, item)) = engine.queue.pop_first() {
        if opts.max_degree.is_some_and(|d| key.0 > d) {
            break;
        }
        let (h, sugar) = match item {
            Item::Input(idx) => {
                let (h, s) = engine.reduce(inputs[idx].0.clone(), key.0, None);
                if !h.is_zero() {
                    survived[idx] = true;
                }
                (h, s)
            }
            Item::Pair { i, j, lcm, .. } => {
                pairs_done += 1;
                if pairs_done > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                let (s, sugar) = engine.spoly(i, j, &lcm);
                engine.reduce(s, sugar, None)
            }
        };
        if h.is_zero() {
            continue;
        }
        match opts.set_aside_from {
            Some(k) if h.lead().expect("nonzero").comp >= k => set_aside.push(h),
            _ => engine.add(h, sugar),
        }
    }
    Ok(GbOutput {
        basis: engine.finish(),
        survived,
        set_aside,
    })
}

/// Division of `v` by `divisors` in list order: every step uses the first
/// divisor whose leading term divides the current leading term. Returns the
/// remainder.
pub(crate) fn divide<F: Field>(
    ring: &PolyRing<F>,
    v: &Vector<F>,
    divisors: &[Vector<F>],
) -> Vector<F> {
    let k = ring.field();
    let mut acc = Accumulator::new(ring, v.clone());
    let mut rem = Vec::new();
    while let Some(lt) = acc.pop_lead() {
        let hit = divisors.iter().find_map(|g| {
            let gl = g.lead()?;
            if gl.comp == lt.comp && gl.mono.divides(&lt.mono) {
                Some((g, gl))
            } else {
                None
            }
        });
        match hit {
            Some((g, gl)) => {
                let m = gl.mono.quotient_of(&lt.mono).expect("divides");
                let c = k.div(&lt.coeff, &gl.coeff).expect("nonzero lead");
                acc.sub_mul_tail(&c, &m, g);
            }
            None => rem.push(lt),
        }
    }
    rem.reverse();
    Vector::from_ascending(rem)
}

/// S-vector of two monic-or-not elements with leading terms in the same
/// component; `None` otherwise.
pub(crate) fn s_vector<F: Field>(
    ring: &PolyRing<F>,
    f: &Vector<F>,
    g: &Vector<F>,
) -> Option<Vector<F>> {
    let k = ring.field();
    let (lf, lg) = (f.lead()?, g.lead()?);
    if lf.comp != lg.comp {
        return None;
    }
    let lcm = lf.mono.lcm(&lg.mono);
    let mf = lf.mono.quotient_of(&lcm)?;
    let mg = lg.mono.quotient_of(&lcm)?;
    let cf = k.inv(&lf.coeff)?;
    let cg = k.inv(&lg.coeff)?;
    let left = Vector::zero().sub_mul(ring, &k.neg(&cf), &mf, f);
    Some(left.sub_mul(ring, &cg, &mg, g))
}
