//! Homomorphism constructions and the closure properties of model classes.

use rand::seq::SliceRandom;
use rand::Rng;

use quantalg::constructions::{
    direct_product, embed_product_of_subalgebras, generated_subalgebra, product_of_homomorphisms,
    pullback_restriction, subalgebra_carriers,
};
use quantalg::{
    Conditional, ConditionalEquation, DistanceMatrix, Equation, Hom, Homomorphism, Name,
    Operations, QuantAlgebra, Signature, Term,
};

use super::{surjective_homs, xy, Tally};
use crate::generators::{self, q, rng_for, AlgebraSampler};
use crate::report::Report;

const HOMS: usize = 120;
const CS: [usize; 3] = [1, 2, 3];

fn hom_signatures() -> Vec<Signature> {
    vec![
        generators::signature(&[], &[]),
        generators::signature(&[("f", 1)], &[]),
        generators::signature(&[("f", 1), ("c", 0)], &[]),
    ]
}

fn describe(h: &Hom) -> String {
    format!(
        "map {:?} from carrier {} onto carrier {}",
        h.map(),
        h.source().size(),
        h.target().size()
    )
}

pub fn witnesses(seed: u64, r: &mut Report) {
    let mut rng = rng_for(seed, "homomorphism-witnesses");
    let sigs = hom_signatures();
    let homs = surjective_homs(&mut rng, &sigs, HOMS);
    let (mut pullback, mut product, mut embedding) =
        (Tally::default(), Tally::default(), Tally::default());
    let mut reflexive_inputs = [0usize; 3];
    for (k, (si, f)) in homs.iter().enumerate() {
        // A partner with the same signature, for the product constructions.
        let partners: Vec<&Hom> = homs
            .iter()
            .filter(|(s, _)| s == si)
            .map(|(_, h)| h)
            .collect();
        let g = *partners.choose(&mut rng).expect("the hom itself qualifies");
        for (ci, &c) in CS.iter().enumerate() {
            if !f.is_c_reflexive(c) {
                continue;
            }
            reflexive_inputs[ci] += 1;
            for sub in subalgebra_carriers(f.target().ops()) {
                if sub.is_empty() {
                    continue;
                }
                let res = pullback_restriction(f, &sub);
                let ok = matches!(&res, Ok(h) if h.is_homomorphism() && h.is_surjective() && h.is_c_reflexive(c));
                pullback.record(ok, || {
                    format!("instance {k}, c={c}, subalgebra {sub:?}: {}", describe(f))
                });
            }
            if g.is_c_reflexive(c) {
                let res = product_of_homomorphisms(&sigs[*si], &[f, g]);
                let ok = matches!(&res, Ok(h) if h.is_homomorphism() && h.is_surjective() && h.is_c_reflexive(c));
                product.record(ok, || {
                    format!("instance {k}, c={c}: {} times {}", describe(f), describe(g))
                });
            }
        }
        let seeds: Vec<Vec<usize>> = [f.source(), g.source()]
            .iter()
            .map(|a| {
                let mut s: Vec<usize> = (0..a.size()).filter(|_| rng.gen_bool(0.5)).collect();
                if s.is_empty() {
                    s.push(rng.gen_range(0..a.size()));
                }
                s
            })
            .collect();
        let ea = generated_subalgebra(f.source(), &seeds[0]).expect("seed in range");
        let eb = generated_subalgebra(g.source(), &seeds[1]).expect("seed in range");
        let res = embed_product_of_subalgebras(&sigs[*si], &[&ea, &eb]);
        let ok = ea.verify().is_ok()
            && eb.verify().is_ok()
            && matches!(&res, Ok(e) if e.verify().is_ok());
        embedding.record(ok, || format!("instance {k}: seeds {seeds:?}"));
    }
    r.result("homomorphisms", homs.len());
    for (ci, c) in CS.iter().enumerate() {
        r.result(&format!("reflexive_inputs.c{c}"), reflexive_inputs[ci]);
    }
    pullback.report(r, "pullback-keeps-reflexivity", 100);
    product.report(r, "product-keeps-reflexivity", 100);
    embedding.report(r, "product-of-subalgebras-embeds", 100);
}

fn closure_signatures() -> Vec<Signature> {
    vec![
        generators::signature(&[("f", 1)], &[]),
        generators::signature(&[("f", 1), ("c", 0)], &[]),
        generators::signature(&[("g", 2)], &[]),
    ]
}

/// Draws conditional equations until `accept` holds, up to `tries`.
fn draw_until(
    rng: &mut impl Rng,
    tries: usize,
    mut draw: impl FnMut(&mut dyn rand::RngCore) -> Conditional,
    mut accept: impl FnMut(&Conditional) -> bool,
) -> Option<Conditional> {
    (0..tries).map(|_| draw(rng)).find(|ce| accept(ce))
}

fn random_ce(
    mut rng: &mut dyn rand::RngCore,
    sig: &Signature,
    max_hyps: usize,
    basic: bool,
) -> Conditional {
    generators::conditional(&mut rng, sig, &xy(), max_hyps, basic, 2)
}

fn distinct_hypothesis_variables(ce: &Conditional) -> usize {
    let mut vars: Vec<Name> = ce
        .hypotheses
        .iter()
        .flat_map(|h| h.left.variables().into_iter().chain(h.right.variables()))
        .collect();
    vars.sort();
    vars.dedup();
    vars.len()
}

/// The identity from the two-point space at distance 2 onto the one at
/// distance 1, with `{x =_1 y} |- x =_0 y`. The map is 2-reflexive since
/// single points always pull back, the source satisfies the equation
/// vacuously, and the image does not.
fn collapsing_instance() -> (Hom, Conditional, usize) {
    let space = |d: i64| {
        let ops = Operations::new(["a".into(), "b".into()], vec![]).unwrap();
        let mut m = DistanceMatrix::new(2);
        m.set(0, 1, quantalg::Distance::Finite(q(d, 1)));
        m.set(1, 0, quantalg::Distance::Finite(q(d, 1)));
        QuantAlgebra::new(ops, m).unwrap()
    };
    let h = Homomorphism::new(space(2), space(1), vec![0, 1]).unwrap();
    let (x, y) = (Term::var("x"), Term::var("y"));
    let ce = ConditionalEquation::new(
        vec![Equation {
            left: x.clone(),
            right: y.clone(),
            bound: q(1, 1),
        }],
        Equation {
            left: x,
            right: y,
            bound: q(0, 1),
        },
    );
    (h, ce, 2)
}

pub fn closure(seed: u64, r: &mut Report) {
    let mut rng = rng_for(seed, "closure-lemmas");
    let grid = generators::grid();
    let sigs = closure_signatures();
    let mut samplers: Vec<Vec<AlgebraSampler>> = sigs
        .iter()
        .map(|s| (1..=3).map(|n| AlgebraSampler::new(s, n, &grid)).collect())
        .collect();

    let mut subalgebras = Tally::default();
    let mut skipped = 0;
    for i in 0..150 {
        let si = i % sigs.len();
        let n = rng.gen_range(1..=3);
        let a = samplers[si][n - 1].sample(&mut rng);
        let basic = rng.gen_bool(0.5);
        let Some(ce) = draw_until(
            &mut rng,
            40,
            |g| random_ce(g, &sigs[si], 2, basic),
            |ce| a.satisfies(ce).unwrap(),
        ) else {
            skipped += 1;
            continue;
        };
        for carrier in subalgebra_carriers(a.ops()) {
            if carrier.is_empty() {
                continue;
            }
            let sub = a.restrict(&carrier).unwrap();
            subalgebras.record(sub.satisfies(&ce).unwrap(), || {
                format!("instance {i}: {ce} on {carrier:?}")
            });
        }
    }
    r.result("subalgebra_draws_without_model", skipped);
    subalgebras.report(r, "subalgebras", 100);

    let mut products = Tally::default();
    for i in 0..150 {
        let si = i % sigs.len();
        let basic = rng.gen_bool(0.5);
        let ce = random_ce(&mut rng, &sigs[si], 2, basic);
        let mut models = Vec::new();
        for _ in 0..40 {
            let n = rng.gen_range(1..=3);
            let a = samplers[si][n - 1].sample(&mut rng);
            if a.satisfies(&ce).unwrap() {
                models.push(a);
                if models.len() == 2 {
                    break;
                }
            }
        }
        if models.len() < 2 {
            continue;
        }
        let p = direct_product(&sigs[si], &[&models[0], &models[1]]).unwrap();
        products.record(p.satisfies(&ce).unwrap(), || format!("instance {i}: {ce}"));
    }
    products.report(r, "products", 100);

    // Homomorphic images, restricted to c-basic equations exactly as stated,
    // and a variant that bounds the distinct hypothesis variables instead.
    let hom_sigs = hom_signatures();
    let homs = surjective_homs(&mut rng, &hom_sigs, HOMS);
    let mut stated = Tally::default();
    let mut by_variables = Tally::default();
    let mut check = |h: &Hom, ce: &Conditional, c: usize, label: String| {
        if !h.source().satisfies(ce).unwrap() {
            return;
        }
        let holds = h.image_algebra().satisfies(ce).unwrap();
        if ce.is_c_basic(c) {
            stated.record(holds, || {
                format!("{label}, c={c}: {ce} fails on the image of {}", describe(h))
            });
        }
        if ce.is_basic() && distinct_hypothesis_variables(ce) < c {
            by_variables.record(holds, || format!("{label}, c={c}: {ce}"));
        }
    };
    let (h, ce, c) = collapsing_instance();
    check(&h, &ce, c, "fixed instance".into());
    for (k, (si, h)) in homs.iter().enumerate() {
        for &c in &CS {
            if !h.is_c_reflexive(c) {
                continue;
            }
            let source = h.source();
            let found = draw_until(
                &mut rng,
                40,
                |g| random_ce(g, &hom_sigs[*si], c - 1, true),
                |ce| source.satisfies(ce).unwrap(),
            );
            if let Some(ce) = found {
                check(h, &ce, c, format!("instance {k}"));
            }
        }
    }
    stated.report(r, "homomorphic-images", 100);
    by_variables.note(r, "homomorphic-images-few-variables");
}
