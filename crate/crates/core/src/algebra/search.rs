//! Enumeration of small quantitative algebras and model search over them.

use std::collections::{BTreeMap, BTreeSet};

use super::{AlgebraError, DistanceMatrix, OpTable, Operations, QuantAlgebra, TermProgram};
use crate::logic::{for_each_map, QuantEquation};
use crate::scalar::{Extended, Scalar};
use crate::term::{Name, Term};

/// Element names `a`, `b`, ... used for generated carriers.
pub fn element_names(n: usize) -> Vec<Name> {
    (0..n)
        .map(|i| {
            if i < 26 {
                Name::from(((b'a' + i as u8) as char).to_string())
            } else {
                Name::from(format!("e{i}"))
            }
        })
        .collect()
}

/// Positive distances for a search grid: every sum of between one and
/// `max_terms` of the positive `bounds` (repetition allowed), then `∞`.
pub fn distance_grid<S: Scalar>(bounds: &[S], max_terms: usize) -> Vec<Extended<S>> {
    let base: BTreeSet<S> = bounds.iter().filter(|b| **b > S::zero()).cloned().collect();
    let mut all: BTreeSet<S> = BTreeSet::new();
    let mut frontier: BTreeSet<S> = base.clone();
    for _ in 0..max_terms {
        all.extend(frontier.iter().cloned());
        frontier = frontier
            .iter()
            .flat_map(|a| base.iter().map(move |b| a.clone() + b.clone()))
            .collect();
    }
    all.into_iter()
        .map(Extended::Finite)
        .chain(std::iter::once(Extended::Infinite))
        .collect()
}

/// Every metric on `n` points whose off-diagonal entries come from `grid`.
pub fn metrics_on<S: Scalar>(n: usize, grid: &[Extended<S>]) -> Vec<DistanceMatrix<S>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for_each_map(pairs.len(), grid.len(), |choice| {
        let mut d = DistanceMatrix::new(n);
        for (&(i, j), &g) in pairs.iter().zip(choice) {
            d.set(i, j, grid[g].clone());
        }
        if d.pseudometric_violation().is_none() {
            out.push(d);
        }
        true
    });
    out
}

/// Every non-expansive table of the given arity over the metric `dist`.
pub fn nonexpansive_tables<S: Scalar>(arity: usize, dist: &DistanceMatrix<S>) -> Vec<OpTable> {
    let n = dist.size();
    let mut tuples = Vec::new();
    for_each_map(arity, n, |t| {
        tuples.push(t.to_vec());
        true
    });
    let spread: Vec<Vec<Extended<S>>> = tuples
        .iter()
        .map(|xs| {
            tuples
                .iter()
                .map(|ys| {
                    xs.iter()
                        .zip(ys)
                        .map(|(&a, &b)| dist.get(a, b).clone())
                        .max()
                        .unwrap_or_else(Extended::zero)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(tuples.len());
    fill(n, &spread, dist, &mut values, &mut |v| {
        out.push(OpTable {
            arity,
            size: n,
            values: v.to_vec(),
        })
    });
    out
}

fn fill<S: Scalar>(
    n: usize,
    spread: &[Vec<Extended<S>>],
    dist: &DistanceMatrix<S>,
    values: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let i = values.len();
    if i == spread.len() {
        emit(values);
        return;
    }
    for v in 0..n {
        if (0..i).all(|j| *dist.get(values[j], v) <= spread[i][j]) {
            values.push(v);
            fill(n, spread, dist, values, emit);
            values.pop();
        }
    }
}

/// Calls `visit` on every quantitative algebra with carrier `a, b, ...` of
/// size `n`, the given operation symbols, and off-diagonal distances from
/// `grid`. Stops early and returns `false` when `visit` does.
pub fn for_each_algebra<S: Scalar>(
    symbols: &[(Name, usize)],
    n: usize,
    grid: &[Extended<S>],
    mut visit: impl FnMut(QuantAlgebra<S>) -> bool,
) -> bool {
    let names = element_names(n);
    for dist in metrics_on(n, grid) {
        let choices: Vec<Vec<OpTable>> = symbols
            .iter()
            .map(|(_, k)| nonexpansive_tables(*k, &dist))
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = vec![0usize; choices.len()];
        loop {
            let tables = symbols
                .iter()
                .zip(&choices)
                .zip(&pick)
                .map(|(((name, _), c), &p)| (name.clone(), c[p].clone()))
                .collect();
            let ops =
                Operations::new(names.iter().cloned(), tables).expect("generated shapes agree");
            if !visit(QuantAlgebra {
                ops,
                dist: dist.clone(),
            }) {
                return false;
            }
            let mut pos = pick.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                pick[pos] += 1;
                if pick[pos] < choices[pos].len() {
                    break;
                }
                pick[pos] = 0;
            }
            if pick.iter().all(|&p| p == 0) {
                break;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_carrier: usize,
    /// Candidate algebras examined before giving up.
    pub max_algebras: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_carrier: 3,
            max_algebras: 2_000_000,
        }
    }
}

/// A model together with an assignment, and the distance it reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel<S> {
    pub algebra: QuantAlgebra<S>,
    pub assignment: Vec<(Name, usize)>,
    pub distance: Extended<S>,
}

impl<S: Scalar> Countermodel<S> {
    pub fn assignment_names(&self) -> Vec<(Name, Name)> {
        self.assignment
            .iter()
            .map(|(v, e)| (v.clone(), self.algebra.element(*e).clone()))
            .collect()
    }
}

fn symbols_of<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Vec<(Name, usize)> {
    fn walk(t: &Term, out: &mut BTreeMap<Name, usize>) {
        if let Term::App(f, args) = t {
            out.entry(f.clone()).or_insert(args.len());
            for a in args {
                walk(a, out);
            }
        }
    }
    let mut out = BTreeMap::new();
    for t in terms {
        walk(t, &mut out);
    }
    out.into_iter().collect()
}

/// A model satisfying every hypothesis under some assignment while the goal
/// fails, or `None` when the grid is exhausted.
///
/// Only the symbols occurring in the input get tables. A model found this
/// way extends to any larger signature (first projections, constants sent to
/// `a`), so the reduced search loses nothing.
pub fn search_countermodel<S: Scalar>(
    hypotheses: &[QuantEquation<S>],
    goal: &QuantEquation<S>,
    budget: SearchBudget,
) -> Result<Option<Countermodel<S>>, AlgebraError> {
    let bound = goal.bound.clone();
    search(
        hypotheses,
        &goal.left,
        &goal.right,
        &goal.bound,
        budget,
        |d| !d.within(&bound),
    )
}

/// A model satisfying every hypothesis under some assignment with
/// `d(left, right) ≥ at_least`. Used to show a derived bound is attained.
pub fn search_distant_model<S: Scalar>(
    hypotheses: &[QuantEquation<S>],
    left: &Term,
    right: &Term,
    at_least: &S,
    budget: SearchBudget,
) -> Result<Option<Countermodel<S>>, AlgebraError> {
    let target = Extended::Finite(at_least.clone());
    search(hypotheses, left, right, at_least, budget, |d| *d >= target)
}

fn search<S: Scalar>(
    hypotheses: &[QuantEquation<S>],
    left: &Term,
    right: &Term,
    extra_bound: &S,
    budget: SearchBudget,
    accept: impl Fn(&Extended<S>) -> bool,
) -> Result<Option<Countermodel<S>>, AlgebraError> {
    let terms: Vec<&Term> = hypotheses
        .iter()
        .flat_map(|h| [&h.left, &h.right])
        .chain([left, right])
        .collect();
    let symbols = symbols_of(terms.iter().copied());
    let mut vars: Vec<Name> = Vec::new();
    for t in &terms {
        for v in t.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    let bounds: Vec<S> = hypotheses
        .iter()
        .map(|h| h.bound.clone())
        .chain(std::iter::once(extra_bound.clone()))
        .collect();

    let shape = Operations::new(
        element_names(1),
        symbols
            .iter()
            .map(|(n, k)| (n.clone(), OpTable::from_fn(*k, 1, |_| 0)))
            .collect(),
    )?;
    let compile = |t: &Term| TermProgram::compile(&shape, &vars, t);
    let hyp_code = hypotheses
        .iter()
        .map(|h| Ok((compile(&h.left)?, compile(&h.right)?, h.bound.clone())))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    let (left_code, right_code) = (compile(left)?, compile(right)?);

    let mut examined = 0usize;
    let mut found = None;
    let mut over_budget = false;
    for n in 1..=budget.max_carrier {
        let grid = distance_grid(&bounds, n);
        let mut stack = Vec::new();
        let completed = for_each_algebra(&symbols, n, &grid, |a| {
            examined += 1;
            if examined > budget.max_algebras {
                over_budget = true;
                return false;
            }
            let ops = a.ops();
            let mut hit = None;
            for_each_map(vars.len(), n, |env| {
                let holds = hyp_code.iter().all(|(l, r, b)| {
                    let (u, v) = (l.run(ops, env, &mut stack), r.run(ops, env, &mut stack));
                    a.distance(u, v).within(b)
                });
                if holds {
                    let (u, v) = (
                        left_code.run(ops, env, &mut stack),
                        right_code.run(ops, env, &mut stack),
                    );
                    if accept(a.distance(u, v)) {
                        hit = Some((env.to_vec(), a.distance(u, v).clone()));
                        return false;
                    }
                }
                true
            });
            match hit {
                Some((env, distance)) => {
                    found = Some(Countermodel {
                        assignment: vars.iter().cloned().zip(env).collect(),
                        algebra: a,
                        distance,
                    });
                    false
                }
                None => true,
            }
        });
        if over_budget {
            return Err(AlgebraError::Budget {
                what: "candidate algebras",
                cap: budget.max_algebras,
            });
        }
        if !completed {
            break;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }
    fn eq(l: &str, r: &str, b: Rational) -> QuantEquation<Rational> {
        QuantEquation::new(Term::var(l), Term::var(r), b).unwrap()
    }

    #[test]
    fn grid_of_sums() {
        let g = distance_grid(&[q(1, 1), q(1, 2)], 2);
        let want: Vec<Extended<Rational>> = [q(1, 2), q(1, 1), q(3, 2), q(2, 1)]
            .into_iter()
            .map(Extended::Finite)
            .chain([Extended::Infinite])
            .collect();
        assert_eq!(g, want);
    }

    #[test]
    fn two_point_countermodel() {
        let m = search_countermodel(
            &[eq("x", "y", q(1, 1))],
            &eq("x", "y", q(1, 2)),
            SearchBudget::default(),
        )
        .unwrap()
        .unwrap();
        assert_eq!(m.algebra.size(), 2);
        assert_eq!(m.distance, Extended::Finite(q(1, 1)));
    }

    #[test]
    fn valid_goal_has_no_countermodel() {
        let refl = QuantEquation::new(Term::var("t"), Term::var("t"), q(0, 1)).unwrap();
        assert_eq!(
            search_countermodel(&[], &refl, SearchBudget::default()).unwrap(),
            None
        );
    }

    #[test]
    fn path_countermodel_needs_three_points() {
        let hyps = [eq("x", "y", q(1, 1)), eq("y", "z", q(1, 1))];
        let m = search_countermodel(&hyps, &eq("x", "z", q(1, 1)), SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(m.algebra.size(), 3);
        assert_eq!(m.distance, Extended::Finite(q(2, 1)));
    }

    #[test]
    fn generated_algebras_are_valid() {
        let grid = distance_grid(&[q(1, 2), q(1, 1)], 1);
        let symbols = vec![(Name::from("f"), 1), (Name::from("g"), 2)];
        let mut count = 0;
        for_each_algebra::<Rational>(&symbols, 2, &grid, |a| {
            assert!(a.is_valid(), "{:?}", a.validate());
            count += 1;
            true
        });
        assert!(count > 0);
    }

    #[test]
    fn budget_is_enforced() {
        let budget = SearchBudget {
            max_carrier: 3,
            max_algebras: 3,
        };
        let refl = QuantEquation::new(Term::var("t"), Term::var("t"), q(0, 1)).unwrap();
        assert!(matches!(
            search_countermodel(&[eq("x", "y", q(1, 1))], &refl, budget),
            Err(AlgebraError::Budget { .. })
        ));
    }
}
