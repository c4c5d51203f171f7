//! Seeded random instances for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use quantalg::algebra::{element_names, metrics_on, nonexpansive_tables};
use quantalg::{
    Algebra, Conditional, ConditionalEquation, Distance, DistanceMatrix, Equation, Name, OpTable,
    Operations, QuantAlgebra, Rational, Signature, Term,
};

pub const DEFAULT_SEED: u64 = 20_240_229;

/// An independent stream per label, so suites do not perturb each other.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let h = Sha256::digest(label.as_bytes());
    let mut salt = [0u8; 8];
    salt.copy_from_slice(&h[..8]);
    ChaCha8Rng::seed_from_u64(seed ^ u64::from_le_bytes(salt))
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// The bounds equations are drawn from.
pub fn bounds() -> Vec<Rational> {
    vec![q(0, 1), q(1, 2), q(1, 1), q(2, 1)]
}

/// Off-diagonal distances for generated algebras.
pub fn grid() -> Vec<Distance> {
    vec![
        Distance::Finite(q(1, 2)),
        Distance::Finite(q(1, 1)),
        Distance::Finite(q(2, 1)),
        Distance::Infinite,
    ]
}

pub fn signature(symbols: &[(&str, usize)], vars: &[&str]) -> Signature {
    Signature::from_strs(symbols, vars)
}

/// Draws algebras of one carrier size, caching the non-expansive tables
/// per metric since enumerating binary tables dominates the cost.
pub struct AlgebraSampler {
    symbols: Vec<(Name, usize)>,
    names: Vec<Name>,
    metrics: Vec<DistanceMatrix<Rational>>,
    tables: Vec<Option<Vec<Vec<OpTable>>>>,
}

impl AlgebraSampler {
    pub fn new(sig: &Signature, n: usize, grid: &[Distance]) -> Self {
        let metrics = metrics_on(n, grid);
        AlgebraSampler {
            symbols: sig.symbols().map(|(f, k)| (f.clone(), k)).collect(),
            names: element_names(n),
            tables: vec![None; metrics.len()],
            metrics,
        }
    }

    /// A uniformly chosen metric, then a uniformly chosen non-expansive
    /// table for each symbol.
    pub fn sample(&mut self, rng: &mut impl Rng) -> Algebra {
        let m = rng.gen_range(0..self.metrics.len());
        let dist = &self.metrics[m];
        let symbols = &self.symbols;
        let choices = self.tables[m].get_or_insert_with(|| {
            symbols
                .iter()
                .map(|(_, k)| nonexpansive_tables(*k, dist))
                .collect()
        });
        let tables = symbols
            .iter()
            .zip(choices.iter())
            .map(|((f, _), all)| {
                (
                    f.clone(),
                    all.choose(rng)
                        .expect("constant maps are non-expansive")
                        .clone(),
                )
            })
            .collect();
        let ops =
            Operations::new(self.names.iter().cloned(), tables).expect("generated shapes agree");
        QuantAlgebra::new(ops, dist.clone()).expect("generated shapes agree")
    }
}

pub fn algebra(rng: &mut impl Rng, sig: &Signature, n: usize, grid: &[Distance]) -> Algebra {
    AlgebraSampler::new(sig, n, grid).sample(rng)
}

pub fn term(rng: &mut impl Rng, sig: &Signature, vars: &[Name], depth: usize) -> Term {
    let leaves: Vec<Term> = vars
        .iter()
        .map(|v| Term::Var(v.clone()))
        .chain(
            sig.symbols()
                .filter(|(_, k)| *k == 0)
                .map(|(f, _)| Term::App(f.clone(), vec![])),
        )
        .collect();
    let ops: Vec<(Name, usize)> = sig
        .symbols()
        .filter(|(_, k)| *k > 0)
        .map(|(f, k)| (f.clone(), k))
        .collect();
    if depth == 0 || ops.is_empty() || rng.gen_bool(0.4) {
        return leaves
            .choose(rng)
            .expect("at least one variable or constant")
            .clone();
    }
    let (f, k) = ops.choose(rng).unwrap().clone();
    Term::App(f, (0..k).map(|_| term(rng, sig, vars, depth - 1)).collect())
}

pub fn bound(rng: &mut impl Rng) -> Rational {
    *bounds().choose(rng).unwrap()
}

pub fn equation(rng: &mut impl Rng, sig: &Signature, vars: &[Name], depth: usize) -> Equation {
    Equation {
        left: term(rng, sig, vars, depth),
        right: term(rng, sig, vars, depth),
        bound: bound(rng),
    }
}

pub fn variable_equation(rng: &mut impl Rng, vars: &[Name]) -> Equation {
    Equation {
        left: Term::Var(vars.choose(rng).unwrap().clone()),
        right: Term::Var(vars.choose(rng).unwrap().clone()),
        bound: bound(rng),
    }
}

/// Up to `max_hyps` hypotheses, between variables when `basic`.
pub fn conditional(
    rng: &mut impl Rng,
    sig: &Signature,
    vars: &[Name],
    max_hyps: usize,
    basic: bool,
    depth: usize,
) -> Conditional {
    let count = rng.gen_range(0..=max_hyps);
    let hyps = (0..count)
        .map(|_| {
            if basic {
                variable_equation(rng, vars)
            } else {
                equation(rng, sig, vars, 1)
            }
        })
        .collect();
    ConditionalEquation::new(hyps, equation(rng, sig, vars, depth))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = (0..4).map(|_| rng_for(1, "x").gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| rng_for(1, "x").gen()).collect();
        assert_eq!(a, b);
        assert_ne!(rng_for(1, "x").gen::<u64>(), rng_for(1, "y").gen::<u64>());
    }

    #[test]
    fn generated_algebras_are_valid() {
        let mut rng = rng_for(7, "valid");
        let sig = signature(&[("f", 1), ("g", 2)], &[]);
        for n in 1..=3 {
            for _ in 0..20 {
                assert!(algebra(&mut rng, &sig, n, &grid()).is_valid());
            }
        }
    }

    #[test]
    fn basic_conditionals_are_basic() {
        let mut rng = rng_for(3, "basic");
        let sig = signature(&[("f", 1)], &["x", "y"]);
        let vars = sig.variables().to_vec();
        for _ in 0..50 {
            assert!(conditional(&mut rng, &sig, &vars, 2, true, 2).is_basic());
        }
    }
}
