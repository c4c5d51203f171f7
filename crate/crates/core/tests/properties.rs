use proptest::prelude::*;
use proptest::sample::Index;

use quantalg::algebra::{distance_grid, element_names, metrics_on, nonexpansive_tables};
use quantalg::constructions::direct_product;
use quantalg::dsl::{print_algebra, print_structure, Workspace};
use quantalg::logic::for_each_map;
use quantalg::qfo::{reduced_product, subobject, AxiomCheck};
use quantalg::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn sig() -> Signature {
    Signature::from_strs(&[("f", 1), ("g", 2), ("c", 0)], &["x", "y", "z"])
}

fn unary_sig() -> Signature {
    Signature::from_strs(&[("f", 1)], &["x", "y", "z"])
}

fn bound() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![q(0, 1), q(1, 2), q(1, 1), q(2, 1)])
}

fn term(sig: Signature, depth: u32) -> impl Strategy<Value = Term> {
    let vars: Vec<Term> = sig
        .variables()
        .iter()
        .map(|v| Term::Var(v.clone()))
        .collect();
    let consts: Vec<Term> = sig
        .symbols()
        .filter(|(_, k)| *k == 0)
        .map(|(n, _)| Term::App(n.clone(), vec![]))
        .collect();
    let leaf = prop::sample::select([vars, consts].concat());
    let ops: Vec<(Name, usize)> = sig
        .symbols()
        .filter(|(_, k)| *k > 0)
        .map(|(n, k)| (n.clone(), k))
        .collect();
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        prop::sample::select(ops.clone()).prop_flat_map(move |(f, k)| {
            prop::collection::vec(inner.clone(), k).prop_map(move |args| Term::App(f.clone(), args))
        })
    })
}

fn equation(sig: Signature) -> impl Strategy<Value = Equation> {
    (term(sig.clone(), 2), term(sig, 2), bound()).prop_map(|(left, right, bound)| Equation {
        left,
        right,
        bound,
    })
}

fn var_equation() -> impl Strategy<Value = Equation> {
    (
        term(Signature::from_strs(&[], &["x", "y", "z"]), 0),
        term(Signature::from_strs(&[], &["x", "y", "z"]), 0),
        bound(),
    )
        .prop_map(|(left, right, bound)| Equation { left, right, bound })
}

fn substitution(sig: Signature) -> impl Strategy<Value = Substitution> {
    let vars: Vec<Name> = sig.variables().to_vec();
    prop::collection::vec(prop::option::of(term(sig, 2)), vars.len()).prop_map(move |images| {
        Substitution::from_pairs(
            vars.iter()
                .cloned()
                .zip(images)
                .filter_map(|(v, t)| Some((v, t?))),
        )
    })
}

/// A valid algebra over `sig` with at most `max` elements, picked from the
/// exhaustive enumeration over a small distance grid.
fn algebra(sig: Signature, max: usize) -> impl Strategy<Value = Algebra> {
    (
        1..=max,
        any::<Index>(),
        prop::collection::vec(any::<Index>(), 3),
    )
        .prop_map(move |(n, m, picks)| {
            let grid = distance_grid(&[q(1, 2), q(1, 1), q(2, 1)], 2);
            let metrics = metrics_on(n, &grid);
            let dist = metrics[m.index(metrics.len())].clone();
            let tables = sig
                .symbols()
                .zip(&picks)
                .map(|((f, k), pick)| {
                    let all = nonexpansive_tables(k, &dist);
                    (f.clone(), all[pick.index(all.len())].clone())
                })
                .collect();
            let ops = Operations::new(element_names(n), tables).unwrap();
            QuantAlgebra::new(ops, dist).unwrap()
        })
}

fn assignments(vars: &[Name], n: usize, mut visit: impl FnMut(&Assignment)) {
    for_each_map(vars.len(), n, |env| {
        visit(&vars.iter().cloned().zip(env.iter().copied()).collect());
        true
    });
}

fn variables(sig: &Signature) -> Vec<Name> {
    sig.variables().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn substitution_composes(s in substitution(sig()), t in substitution(sig()), u in term(sig(), 3)) {
        prop_assert_eq!(s.compose(&t).apply(&u), s.apply(&t.apply(&u)));
    }

    #[test]
    fn term_print_parse(t in term(sig(), 3)) {
        let ws = Workspace { signature: sig(), ..Workspace::default() };
        prop_assert_eq!(ws.parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn conditional_print_parse(hyps in prop::collection::vec(equation(sig()), 0..3), goal in equation(sig())) {
        let ws = Workspace { signature: sig(), ..Workspace::default() };
        let ce = ConditionalEquation::new(hyps, goal);
        prop_assert_eq!(ws.parse_conditional(&ce.to_string()).unwrap(), ce.clone());
        let phi = horn_of_conditional(&ce);
        let back = ws.parse_formula(&phi.to_string()).unwrap();
        prop_assert_eq!(conditional_of_horn(&back).unwrap(), ce);
    }

    #[test]
    fn algebra_and_structure_print_parse(a in algebra(sig(), 3)) {
        let header = "signature { f/1; g/2; c/0 }\n";
        let ws = Workspace::parse(&format!("{header}{}", print_algebra("A", &a))).unwrap();
        prop_assert_eq!(&ws.algebras["A"], &a);
        let m = to_qfo(&a);
        let ws = Workspace::parse(&format!("{header}{}", print_structure("M", &m))).unwrap();
        prop_assert_eq!(&ws.structures["M"], &m);
    }

    #[test]
    fn saturated_tables_are_nonexpansive_pseudometrics(
        hyps in prop::collection::vec(equation(unary_sig()), 0..3),
        goal in equation(unary_sig()),
    ) {
        let u = build_universe(&hyps, &goal, &[], UniverseBudget::default()).unwrap();
        let table = least_derivable_distance(&hyps, &[], &u).unwrap();
        prop_assert!(table.is_pseudometric());
        prop_assert!(table.is_nonexpansive());
        for h in &hyps {
            prop_assert!(table.derives(h));
        }
    }

    #[test]
    fn emitted_proofs_check(
        hyps in prop::collection::vec(equation(unary_sig()), 0..3),
        goal in equation(unary_sig()),
    ) {
        let axioms = vec![ConditionalEquation::unconditional(Equation {
            left: Term::app("f", vec![Term::app("f", vec![Term::var("x")])]),
            right: Term::var("x"),
            bound: q(1, 1),
        })];
        let u = build_universe(&hyps, &goal, &axioms, UniverseBudget::default()).unwrap();
        let table = least_derivable_distance(&hyps, &axioms, &u).unwrap();
        for s in u.terms() {
            for t in u.terms() {
                if let Some(p) = table.proof(s, t) {
                    prop_assert_eq!(check_proof(&p, &axioms), Ok(()), "{} vs {}\n{}", s, t, p);
                    prop_assert_eq!(
                        Some(&Distance::Finite(p.steps.last().unwrap().conclusion.bound)),
                        table.bound(s, t)
                    );
                } else {
                    prop_assert_eq!(table.bound(s, t), Some(&Distance::Infinite));
                }
            }
        }
    }

    #[test]
    fn more_hypotheses_never_raise_bounds(
        hyps in prop::collection::vec(equation(unary_sig()), 0..3),
        extra in equation(unary_sig()),
        goal in equation(unary_sig()),
    ) {
        let mut more = hyps.clone();
        more.push(extra);
        let u = build_universe(&more, &goal, &[], UniverseBudget::default()).unwrap();
        let small = least_derivable_distance(&hyps, &[], &u).unwrap();
        let large = least_derivable_distance(&more, &[], &u).unwrap();
        for i in 0..u.len() {
            for j in 0..u.len() {
                prop_assert!(large.bound_at(i, j) <= small.bound_at(i, j));
            }
        }
    }

    #[test]
    fn derived_bounds_are_sound(
        hyps in prop::collection::vec(equation(unary_sig()), 0..3),
        goal in equation(unary_sig()),
        a in algebra(unary_sig(), 3),
    ) {
        let u = build_universe(&hyps, &goal, &[], UniverseBudget::default()).unwrap();
        let table = least_derivable_distance(&hyps, &[], &u).unwrap();
        let vars = variables(&unary_sig());
        assignments(&vars, a.size(), |env| {
            let value = |t: &Term| a.evaluate(env, t).unwrap();
            let holds = hyps.iter().all(|h| a.distance(value(&h.left), value(&h.right)).within(&h.bound));
            if holds {
                for (i, s) in u.terms().iter().enumerate() {
                    for (j, t) in u.terms().iter().enumerate() {
                        assert!(a.distance(value(s), value(t)) <= table.bound_at(i, j), "{s} vs {t}");
                    }
                }
            }
        });
    }

    #[test]
    fn functor_round_trips(a in algebra(sig(), 3)) {
        let m = to_qfo(&a);
        prop_assert!(check_qfo_axioms(&m).iter().all(AxiomCheck::passed));
        let back = to_algebra(&m).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(to_qfo(&back), m);
    }

    #[test]
    fn forgetting_commutes_with_products_and_subobjects(a in algebra(unary_sig(), 3), b in algebra(unary_sig(), 2)) {
        let (ma, mb) = (to_qfo(&a), to_qfo(&b));
        let full = FilterSpec::full(2).unwrap();
        let rp = reduced_product(&[&ma, &mb], &full).unwrap();
        prop_assert_eq!(to_algebra(&rp).unwrap(), direct_product(&unary_sig(), &[&a, &b]).unwrap());
        for carrier in quantalg::constructions::subalgebra_carriers(a.ops()) {
            if carrier.is_empty() {
                continue;
            }
            let sub = subobject(&ma, &carrier).unwrap();
            prop_assert_eq!(to_algebra(&sub).unwrap(), a.restrict(&carrier).unwrap());
        }
    }

    #[test]
    fn reduced_products_keep_every_axiom(
        algebras in prop::collection::vec(algebra(unary_sig(), 2), 1..=3),
        picks in prop::collection::vec(any::<bool>(), 3),
        first in any::<Index>(),
    ) {
        let count = algebras.len();
        let mut generator: Vec<usize> = (1..=count).filter(|i| picks[i - 1]).collect();
        if generator.is_empty() {
            generator.push(first.index(count) + 1);
        }
        let structures: Vec<_> = algebras.iter().map(to_qfo).collect();
        let refs: Vec<_> = structures.iter().collect();
        let rp = reduced_product(&refs, &FilterSpec::new(count, &generator).unwrap()).unwrap();
        for check in check_qfo_axioms(&rp) {
            prop_assert!(check.passed(), "{:?}", check);
        }
    }

    #[test]
    fn horn_translation_transfers_satisfaction(
        hyps in prop::collection::vec(prop_oneof![var_equation(), equation(unary_sig())], 0..3),
        goal in equation(unary_sig()),
        a in algebra(unary_sig(), 3),
    ) {
        let ce = ConditionalEquation::new(hyps, goal);
        let direct = a.satisfies(&ce).unwrap();
        let via_horn = eval_horn(&to_qfo(&a), &horn_of_conditional(&ce)).unwrap().is_none();
        prop_assert_eq!(direct, via_horn);
    }
}

#[test]
fn enumeration_is_sorted_and_subterm_closed() {
    let s = sig();
    let vars = variables(&s);
    let terms = enumerate_terms(&s, &vars[..2], 2, 100_000).unwrap();
    assert!(terms.windows(2).all(|w| w[0] < w[1]));
    for t in &terms {
        for sub in t.subterms() {
            assert!(terms.binary_search(&sub).is_ok(), "{sub} missing");
        }
    }
    let ws = Workspace {
        signature: s,
        ..Workspace::default()
    };
    for t in &terms {
        assert_eq!(&ws.parse_term(&t.to_string()).unwrap(), t);
    }
}
