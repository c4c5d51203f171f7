//! The canonical model of a small class against the class itself.
//!
//! Hypotheses range over equations between the two variables `x` and `y`,
//! so whether an assignment satisfies a hypothesis set depends only on the
//! distance between the values of `x` and `y`. Both sides are therefore
//! tabulated once per distance: the pointwise supremum, over assignments at
//! that distance, of the distance between the values of each pair of terms.
//! A conditional equation holds iff the supremum over the admissible
//! distances stays within its bound.

use std::collections::BTreeMap;

use rand::Rng;

use quantalg::constructions::{canonical_model, r_of_k, CanonicalOptions};
use quantalg::{Algebra, Conditional, ConditionalEquation, Distance, Equation, Signature, Term};

use super::{for_each_assignment, xy, Tally};
use crate::generators::{self, bounds, rng_for, AlgebraSampler};
use crate::report::Report;

const CLASSES: usize = 40;
const CS: [usize; 3] = [1, 2, 3];

/// For each distance between `x` and `y`, the supremum of each term pair.
type Profile = BTreeMap<Distance, Vec<Distance>>;

fn profile(a: &Algebra, terms: &[Term], into: &mut Profile) {
    let vars = xy();
    let n = terms.len();
    for_each_assignment(&vars, a.size(), |env| {
        let values: Vec<usize> = terms
            .iter()
            .map(|t| a.evaluate(env, t).expect("terms fit"))
            .collect();
        let delta = *a.distance(env[&vars[0]], env[&vars[1]]);
        let row = into
            .entry(delta)
            .or_insert_with(|| vec![Distance::zero(); n * n]);
        for i in 0..n {
            for j in 0..n {
                let d = a.distance(values[i], values[j]);
                if *d > row[i * n + j] {
                    row[i * n + j] = *d;
                }
            }
        }
    });
}

/// Hypotheses between `x` and `y`, and trivially between a variable and
/// itself, at every bound.
fn atoms() -> Vec<Equation> {
    let (x, y) = (Term::var("x"), Term::var("y"));
    let mut out = Vec::new();
    for b in bounds() {
        for (l, r) in [(&x, &y), (&y, &x), (&x, &x), (&y, &y)] {
            out.push(Equation {
                left: l.clone(),
                right: r.clone(),
                bound: b,
            });
        }
    }
    out
}

/// Hypothesis sets with fewer than `c` members, as sorted index lists.
fn hypothesis_sets(atoms: usize, c: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 1..c {
        let mut next = Vec::new();
        for set in &frontier {
            let start = set.last().copied().unwrap_or(0);
            for a in start..atoms {
                let mut s: Vec<usize> = set.clone();
                s.push(a);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn admits(hyps: &[&Equation], delta: &Distance) -> bool {
    hyps.iter()
        .all(|h| h.left == h.right || delta.within(&h.bound))
}

fn supremum(p: &Profile, hyps: &[&Equation], n: usize) -> Vec<Distance> {
    let mut out = vec![Distance::zero(); n * n];
    for (delta, row) in p {
        if admits(hyps, delta) {
            for (o, v) in out.iter_mut().zip(row) {
                if *v > *o {
                    *o = *v;
                }
            }
        }
    }
    out
}

fn classes(rng: &mut impl Rng) -> Vec<(Signature, Vec<Algebra>)> {
    let grid = generators::grid();
    let sigs = [
        generators::signature(&[], &[]),
        generators::signature(&[("f", 1)], &[]),
    ];
    let mut samplers: Vec<Vec<AlgebraSampler>> = sigs
        .iter()
        .map(|s| (1..=2).map(|n| AlgebraSampler::new(s, n, &grid)).collect())
        .collect();
    (0..CLASSES)
        .map(|i| {
            let si = i % 2;
            let count = 1 + (i / 2) % 2;
            let members = (0..count)
                .map(|_| {
                    let n = if rng.gen_bool(0.8) { 2 } else { 1 };
                    samplers[si][n - 1].sample(rng)
                })
                .collect();
            (sigs[si].clone(), members)
        })
        .collect()
}

pub fn suite(seed: u64, r: &mut Report) {
    let mut rng = rng_for(seed, "canonical-model");
    let vars = xy();
    let atoms = atoms();
    let (mut equivalence, mut corollary, mut spot) =
        (Tally::default(), Tally::default(), Tally::default());
    let (mut homomorphism, mut variables, mut reflexive) =
        (Tally::default(), Tally::default(), Tally::default());
    let mut depth = Tally::default();
    let mut largest = 0;
    for (k, (sig, members)) in classes(&mut rng).into_iter().enumerate() {
        let options = CanonicalOptions {
            depth: 2,
            ..CanonicalOptions::default()
        };
        let model = match canonical_model(&sig, &members, &vars, options) {
            Ok(m) => m,
            Err(e) => {
                equivalence.record(false, || format!("class {k}: {e}"));
                continue;
            }
        };
        largest = largest.max(model.product().size());
        let terms = model.terms().to_vec();
        let n = terms.len();

        // One level deeper, the terms already present keep their distances.
        let deeper = CanonicalOptions {
            depth: 3,
            ..CanonicalOptions::default()
        };
        match canonical_model(&sig, &members, &vars, deeper) {
            Ok(m) => {
                for s in &terms {
                    for t in &terms {
                        depth.record(m.distance(s, t) == model.distance(s, t), || {
                            format!("class {k}: {s}, {t}")
                        });
                    }
                }
            }
            Err(e) => depth.record(false, || format!("class {k} at depth 3: {e}")),
        }
        let mut on_class = Profile::new();
        for a in &members {
            profile(a, &terms, &mut on_class);
        }
        let mut on_model = Profile::new();
        profile(model.product(), &terms, &mut on_model);

        for &c in &CS {
            for set in hypothesis_sets(atoms.len(), c) {
                let hyps: Vec<&Equation> = set.iter().map(|&i| &atoms[i]).collect();
                let (sup_class, sup_model) =
                    (supremum(&on_class, &hyps, n), supremum(&on_model, &hyps, n));
                for i in 0..n {
                    for j in 0..n {
                        for b in bounds() {
                            let in_class = sup_class[i * n + j].within(&b);
                            let in_model = sup_model[i * n + j].within(&b);
                            equivalence.record(in_class == in_model, || {
                                format!(
                                    "class {k}, c={c}: {:?} |- {} =[{b}] {}",
                                    set, terms[i], terms[j]
                                )
                            });
                        }
                    }
                }
            }
        }

        // Without hypotheses the class satisfies s =_e t exactly when the
        // generic elements are within e.
        let unconditional = supremum(&on_class, &[], n);
        for i in 0..n {
            for j in 0..n {
                let d = model
                    .distance(&terms[i], &terms[j])
                    .expect("tabulated terms");
                for b in bounds() {
                    corollary.record(unconditional[i * n + j].within(&b) == d.within(&b), || {
                        format!(
                            "class {k}: {} =[{b}] {} against distance {d}",
                            terms[i], terms[j]
                        )
                    });
                }
            }
        }

        // A sample through the library's own satisfaction check.
        for _ in 0..20 {
            let count = rng.gen_range(0..=2);
            let hyps: Vec<Equation> = (0..count)
                .map(|_| atoms[rng.gen_range(0..atoms.len())].clone())
                .collect();
            let goal = Equation {
                left: terms[rng.gen_range(0..n)].clone(),
                right: terms[rng.gen_range(0..n)].clone(),
                bound: generators::bound(&mut rng),
            };
            let ce: Conditional = ConditionalEquation::new(hyps, goal);
            let direct = members.iter().all(|a| a.satisfies(&ce).unwrap());
            let via_model = model.product().satisfies(&ce).unwrap();
            spot.record(direct == via_model, || format!("class {k}: {ce}"));
        }

        let r_k = r_of_k(&members);
        for (mi, a) in members.iter().enumerate() {
            for_each_assignment(&vars, a.size(), |env| {
                let alpha: Vec<usize> = vars.iter().map(|v| env[v]).collect();
                let beta = model
                    .beta(mi, &alpha)
                    .expect("every assignment has a component");
                homomorphism.record(beta.is_homomorphism(), || {
                    format!("class {k}, member {mi}, {alpha:?}")
                });
                let generic = vars
                    .iter()
                    .map(|v| model.gamma(&Term::Var(v.clone())).map(|u| beta.apply(u)))
                    .collect::<Option<Vec<usize>>>();
                variables.record(generic.as_deref() == Some(&alpha[..]), || {
                    format!("class {k}, member {mi}, {alpha:?} gives {generic:?}")
                });
                reflexive.record(beta.is_c_reflexive(r_k), || {
                    format!("class {k}, member {mi}, {alpha:?}, c={r_k}")
                });
            });
        }
    }
    r.result("classes", CLASSES)
        .result("largest_product", largest);
    r.budget("depth", 2).budget("variables", 2);
    equivalence.report(r, "class-and-model-agree", 1);
    corollary.report(r, "distance-characterizes-validity", 1);
    spot.report(r, "satisfaction-spot-check", 1);
    homomorphism.report(r, "beta-is-homomorphism", 1);
    variables.report(r, "beta-sends-generics-to-assignment", 1);
    reflexive.report(r, "beta-is-reflexive", 1);
    depth.report(r, "distances-stable-one-level-deeper", 1);
}
