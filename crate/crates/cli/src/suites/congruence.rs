//! Classical congruences seen as 0/1 pseudometrics.
//!
//! The quotient by the pseudometric is compared with the classical quotient
//! computed here from scratch: an equation `s = t` holds there iff every
//! assignment into the original algebra sends `s` and `t` into one class.

use rand::seq::SliceRandom;
use rand::Rng;

use quantalg::algebra::congruence_to_pseudometric;
use quantalg::constructions::quotient_algebra;
use quantalg::{
    Algebra, Distance, DistanceMatrix, Equation, Name, OpTable, Operations, QuantAlgebra, Rational,
    Signature,
};

use super::{for_each_assignment, Tally};
use crate::generators::{self, q, rng_for};
use crate::report::Report;

const INSTANCES: usize = 64;
const EQUATIONS: usize = 24;

fn signatures() -> Vec<Signature> {
    vec![
        generators::signature(&[("f", 1), ("g", 2)], &[]),
        generators::signature(&[("f", 1), ("c", 0)], &[]),
        generators::signature(&[("g", 2), ("c", 0)], &[]),
    ]
}

fn discrete_metric(n: usize) -> DistanceMatrix<Rational> {
    DistanceMatrix::from_fn(n, |i, j| {
        if i == j {
            Distance::zero()
        } else {
            Distance::one()
        }
    })
}

/// Arbitrary tables over the discrete metric, where every map is
/// non-expansive.
fn discrete_algebra(rng: &mut impl Rng, sig: &Signature, n: usize) -> Algebra {
    let tables = sig
        .symbols()
        .map(|(f, k)| (f.clone(), OpTable::from_fn(k, n, |_| rng.gen_range(0..n))))
        .collect();
    let ops = Operations::new(quantalg::algebra::element_names(n), tables).unwrap();
    QuantAlgebra::new(ops, discrete_metric(n)).unwrap()
}

/// Tables built around a random partition so that it is a congruence:
/// each entry lands in the class a random quotient table prescribes.
fn algebra_with_congruence(rng: &mut impl Rng, sig: &Signature, n: usize) -> (Algebra, Vec<usize>) {
    let k = rng.gen_range(1..=n);
    let mut classes: Vec<usize> = (0..n)
        .map(|i| if i < k { i } else { rng.gen_range(0..k) })
        .collect();
    classes.shuffle(rng);
    let members: Vec<Vec<usize>> = (0..k)
        .map(|c| (0..n).filter(|&i| classes[i] == c).collect())
        .collect();
    let tables = sig
        .symbols()
        .map(|(f, arity)| {
            let quotient = OpTable::from_fn(arity, k, |_| rng.gen_range(0..k));
            let table = OpTable::from_fn(arity, n, |args| {
                let key: Vec<usize> = args.iter().map(|&a| classes[a]).collect();
                let target = &members[quotient.apply(&key)];
                target[rng.gen_range(0..target.len())]
            });
            (f.clone(), table)
        })
        .collect();
    let ops = Operations::new(quantalg::algebra::element_names(n), tables).unwrap();
    (QuantAlgebra::new(ops, discrete_metric(n)).unwrap(), classes)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// The least congruence containing a random partition, as class labels
/// numbered in order of first element.
fn random_congruence(rng: &mut impl Rng, ops: &Operations) -> Vec<usize> {
    let n = ops.size();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 1..n {
        if rng.gen_bool(0.35) {
            let j = rng.gen_range(0..i);
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    loop {
        let mut changed = false;
        for (k, (_, table)) in ops.tables().iter().enumerate() {
            let entries: Vec<(Vec<usize>, usize)> = ops.entries(k).collect();
            for (args, v) in &entries {
                for (brgs, w) in &entries {
                    let related = (0..table.arity())
                        .all(|p| find(&mut parent, args[p]) == find(&mut parent, brgs[p]));
                    if related {
                        let (a, b) = (find(&mut parent, *v), find(&mut parent, *w));
                        if a != b {
                            parent[a] = b;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    (0..n)
        .map(|i| {
            let root = find(&mut parent, i);
            if label[root] == usize::MAX {
                label[root] = next;
                next += 1;
            }
            label[root]
        })
        .collect()
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

pub fn suite(seed: u64, r: &mut Report) {
    let mut rng = rng_for(seed, "congruence-embedding");
    let sigs = signatures();
    let vars: Vec<Name> = vec!["x".into(), "y".into(), "z".into()];
    let (mut valid, mut kernel, mut equations) =
        (Tally::default(), Tally::default(), Tally::default());
    let (mut nontrivial, mut held) = (0usize, 0usize);
    for i in 0..INSTANCES {
        let sig = &sigs[i % sigs.len()];
        let n = rng.gen_range(2..=4);
        let (a, classes) = if i % 2 == 0 {
            algebra_with_congruence(&mut rng, sig, n)
        } else {
            let a = discrete_algebra(&mut rng, sig, n);
            let classes = random_congruence(&mut rng, a.ops());
            (a, classes)
        };
        let count = classes.iter().max().map_or(0, |m| m + 1);
        if count > 1 && count < n {
            nontrivial += 1;
        }
        let p: DistanceMatrix<Rational> =
            congruence_to_pseudometric(a.ops(), &classes).expect("closed under operations");
        let (quotient, labels) = match quotient_algebra(a.ops(), &p) {
            Ok(x) => x,
            Err(e) => {
                valid.record(false, || format!("instance {i}: {e}"));
                continue;
            }
        };
        valid.record(quotient.is_valid(), || {
            format!("instance {i}: invalid quotient")
        });
        kernel.record(same_partition(&classes, &labels), || {
            format!("instance {i}: {classes:?} vs {labels:?}")
        });
        for _ in 0..EQUATIONS {
            let e = Equation {
                left: generators::term(&mut rng, sig, &vars, 2),
                right: generators::term(&mut rng, sig, &vars, 2),
                bound: q(0, 1),
            };
            let mut classical = true;
            for_each_assignment(&vars, a.size(), |env| {
                let (s, t) = (
                    a.evaluate(env, &e.left).unwrap(),
                    a.evaluate(env, &e.right).unwrap(),
                );
                classical &= classes[s] == classes[t];
            });
            held += usize::from(classical);
            let quantitative = quotient
                .satisfies(&quantalg::ConditionalEquation::unconditional(e.clone()))
                .unwrap();
            equations.record(classical == quantitative, || format!("instance {i}: {e}"));
        }
    }
    r.result("instances", INSTANCES)
        .result("proper_nontrivial_congruences", nontrivial)
        .result("equations_holding", held);
    valid.report(r, "quotient-is-valid", 50);
    kernel.report(r, "kernel-is-the-congruence", 50);
    equations.report(r, "zero-equations-match-classical-quotient", 50 * EQUATIONS);
}
