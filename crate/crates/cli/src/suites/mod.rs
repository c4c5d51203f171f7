//! Named property suites. Each one builds its own seeded instances and
//! reports one check per property, with instance counts in the detail.

mod canonical;
mod congruence;
mod deduction;
mod homs;
mod structures;

use std::thread;

use rand::Rng;

use quantalg::logic::for_each_map;
use quantalg::{Algebra, Assignment, Hom, Homomorphism, Name, Signature};

use crate::generators::{self, AlgebraSampler};
use crate::report::{digest, Report};

type SuiteFn = fn(u64, &mut Report);

const SUITES: [(&str, SuiteFn); 9] = [
    ("deduction-soundness", deduction::soundness),
    ("derivation-tightness", deduction::tightness),
    ("homomorphism-witnesses", homs::witnesses),
    ("closure-lemmas", homs::closure),
    ("canonical-model", canonical::suite),
    ("functor-roundtrip", structures::functor),
    ("reduced-products", structures::reduced_products),
    ("horn-transfer", structures::horn_transfer),
    ("congruence-embedding", congruence::suite),
];

/// Suite names in run order; `all` runs every one of them.
pub fn names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

fn fresh(name: &str, seed: u64) -> Report {
    let mut r = Report::new(
        format!("suite {name}"),
        digest(&[name.as_bytes(), &seed.to_le_bytes()]),
    );
    r.budget("seed", seed);
    r
}

pub fn run(name: &str, seed: u64) -> Option<Report> {
    if name == "all" {
        return Some(run_all(seed));
    }
    let (_, f) = SUITES.iter().find(|(n, _)| *n == name)?;
    let mut r = fresh(name, seed);
    f(seed, &mut r);
    Some(r)
}

/// Runs the suites on separate threads and merges their reports in the
/// fixed suite order, prefixing every key with the suite name.
pub fn run_all(seed: u64) -> Report {
    let parts: Vec<Report> = thread::scope(|s| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|&(name, f)| {
                s.spawn(move || {
                    let mut r = fresh(name, seed);
                    f(seed, &mut r);
                    r
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite panicked"))
            .collect()
    });
    let mut all = fresh("all", seed);
    for ((name, _), part) in SUITES.iter().zip(parts) {
        all.result(
            &format!("{name}.verdict"),
            if part.passed() { "pass" } else { "fail" },
        );
        for (k, v) in part.results {
            all.result(&format!("{name}.{k}"), v);
        }
        for c in part.checks {
            let label = format!("{name}.{}", c.name);
            if c.counts {
                all.check(label, c.passed, c.detail);
            } else {
                all.note(label, c.passed, c.detail);
            }
        }
        for w in part.witnesses {
            all.witness(format!("{name}: {w}"));
        }
    }
    all
}

pub(crate) fn assignment(vars: &[Name], env: &[usize]) -> Assignment {
    vars.iter().cloned().zip(env.iter().copied()).collect()
}

/// Calls `visit` for every assignment of `vars` into a carrier of `n`.
pub(crate) fn for_each_assignment(vars: &[Name], n: usize, mut visit: impl FnMut(&Assignment)) {
    for_each_map(vars.len(), n, |env| {
        visit(&assignment(vars, env));
        true
    });
}

pub(crate) fn xy() -> Vec<Name> {
    vec!["x".into(), "y".into()]
}

/// Result of a counted check: how many instances were examined and the
/// first failure, if any.
#[derive(Default)]
pub(crate) struct Tally {
    pub examined: usize,
    pub failures: usize,
    pub first: Option<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.examined += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    /// Adds a check that needs zero failures and at least `minimum` instances.
    pub fn report(self, r: &mut Report, name: &str, minimum: usize) {
        let detail = format!(
            "instances={} failures={} minimum={minimum}",
            self.examined, self.failures
        );
        r.check(name, self.failures == 0 && self.examined >= minimum, detail);
        if let Some(w) = self.first {
            r.witness(format!("{name}: {w}"));
        }
    }

    pub fn note(self, r: &mut Report, name: &str) {
        let detail = format!("instances={} failures={}", self.examined, self.failures);
        r.note(name, self.failures == 0, detail);
        if let Some(w) = self.first {
            r.witness(format!("{name}: {w}"));
        }
    }
}

/// Surjective homomorphisms between random algebras of carrier at most 3,
/// cycling through `sigs`. Each instance is one map picked among all the
/// surjective homomorphisms between a random pair.
pub(crate) fn surjective_homs(
    rng: &mut impl Rng,
    sigs: &[Signature],
    count: usize,
) -> Vec<(usize, Hom)> {
    let grid = generators::grid();
    let mut samplers: Vec<Vec<AlgebraSampler>> = sigs
        .iter()
        .map(|s| (1..=3).map(|n| AlgebraSampler::new(s, n, &grid)).collect())
        .collect();
    let mut out = Vec::with_capacity(count);
    let mut k = 0;
    while out.len() < count {
        let si = k % sigs.len();
        k += 1;
        let nb = rng.gen_range(1..=3);
        let nc = rng.gen_range(1..=nb);
        let b = samplers[si][nb - 1].sample(rng);
        let c = samplers[si][nc - 1].sample(rng);
        let found = surjections(&b, &c);
        if !found.is_empty() {
            let map = found[rng.gen_range(0..found.len())].clone();
            out.push((si, Homomorphism::new(b, c, map).expect("shapes agree")));
        }
    }
    out
}

fn surjections(b: &Algebra, c: &Algebra) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    for_each_map(b.size(), c.size(), |map| {
        let mut hit = vec![false; c.size()];
        for &v in map {
            hit[v] = true;
        }
        if hit.iter().all(|&h| h) {
            let h = Homomorphism::new(b.clone(), c.clone(), map.to_vec()).expect("shapes agree");
            if h.is_homomorphism() {
                found.push(map.to_vec());
            }
        }
        true
    });
    found
}
