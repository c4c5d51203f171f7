//! Least-bound saturation of a finite term universe.

use std::collections::HashMap;

use super::proof::{Proof, ProofStep, Rule};
use super::{for_each_map, ConditionalEquation, LogicError, QuantEquation, TermUniverse};
use crate::scalar::{Extended, Scalar};
use crate::term::{Substitution, Term};

/// Upper bound on saturation rounds. Every round strictly lowers at least one
/// entry, and entries range over finite sums of input bounds, so the guard
/// only trips on a bug.
pub const DEFAULT_STEP_GUARD: usize = 100_000;

#[derive(Debug, Clone)]
enum Why {
    Infinite,
    Refl,
    /// The other orientation carries the justification.
    Mirror,
    Hypothesis(usize),
    Triang(usize),
    NExp,
    Axiom(usize),
}

#[derive(Debug, Clone)]
struct AxiomInstance<S> {
    axiom: usize,
    sigma: Substitution,
    hypotheses: Vec<(usize, usize, S)>,
    left: usize,
    right: usize,
    bound: S,
}

/// The least derivable bound for every pair of terms in a universe, under a
/// fixed hypothesis set and theory.
#[derive(Debug, Clone)]
pub struct DerivedDistanceTable<S> {
    universe: TermUniverse,
    bounds: Vec<Vec<Extended<S>>>,
    why: Vec<Vec<Why>>,
    hypotheses: Vec<QuantEquation<S>>,
    instances: Vec<AxiomInstance<S>>,
    rounds: usize,
}

/// Saturates `universe` under Refl, Symm, Triang, NExp, Assumpt, and axiom
/// application through Subst and Cut.
///
/// A derivation of `s =_δ t` exists in the bounded arena iff
/// `bound(s, t) ≤ δ`; Max and Arch are absorbed into that reading.
pub fn least_derivable_distance<S: Scalar>(
    hypotheses: &[QuantEquation<S>],
    axioms: &[ConditionalEquation<S>],
    universe: &TermUniverse,
) -> Result<DerivedDistanceTable<S>, LogicError> {
    saturate(hypotheses, axioms, universe, DEFAULT_STEP_GUARD)
}

fn saturate<S: Scalar>(
    hypotheses: &[QuantEquation<S>],
    axioms: &[ConditionalEquation<S>],
    universe: &TermUniverse,
    guard: usize,
) -> Result<DerivedDistanceTable<S>, LogicError> {
    let n = universe.len();
    let locate = |t: &Term| {
        universe
            .index_of(t)
            .ok_or_else(|| LogicError::OutsideUniverse(t.clone()))
    };
    if let Some(t) = universe
        .terms()
        .iter()
        .flat_map(|t| t.args())
        .find(|a| !universe.contains(a))
    {
        return Err(LogicError::OutsideUniverse(t.clone()));
    }

    let mut bounds = vec![vec![Extended::Infinite; n]; n];
    let mut why = vec![vec![Why::Infinite; n]; n];
    for i in 0..n {
        bounds[i][i] = Extended::zero();
        why[i][i] = Why::Refl;
    }

    let mut hyp_edges = Vec::with_capacity(hypotheses.len());
    for h in hypotheses {
        hyp_edges.push((locate(&h.left)?, locate(&h.right)?, h.bound.clone()));
    }

    // Pairs of applications of the same symbol, with their argument indices.
    let mut congruent = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (&universe.terms()[i], &universe.terms()[j]);
            if let (Term::App(f, xs), Term::App(g, ys)) = (a, b) {
                if f == g && xs.len() == ys.len() && !xs.is_empty() {
                    let args: Vec<(usize, usize)> = xs
                        .iter()
                        .zip(ys)
                        .map(|(x, y)| {
                            (universe.index_of(x).unwrap(), universe.index_of(y).unwrap())
                        })
                        .collect();
                    congruent.push((i, j, args));
                }
            }
        }
    }

    let mut instances = Vec::new();
    for (k, ax) in axioms.iter().enumerate() {
        let vars = ax.variables();
        for_each_map(vars.len(), n, |choice| {
            let sigma = Substitution::from_pairs(
                vars.iter()
                    .cloned()
                    .zip(choice.iter().map(|&i| universe.terms()[i].clone())),
            );
            let inst = ax.substitute(&sigma);
            let mut hyps = Vec::with_capacity(inst.hypotheses.len());
            for h in &inst.hypotheses {
                match (universe.index_of(&h.left), universe.index_of(&h.right)) {
                    (Some(l), Some(r)) => hyps.push((l, r, h.bound.clone())),
                    _ => return true,
                }
            }
            if let (Some(l), Some(r)) = (
                universe.index_of(&inst.conclusion.left),
                universe.index_of(&inst.conclusion.right),
            ) {
                instances.push(AxiomInstance {
                    axiom: k,
                    sigma,
                    hypotheses: hyps,
                    left: l,
                    right: r,
                    bound: inst.conclusion.bound.clone(),
                });
            }
            true
        });
    }

    let mut table = DerivedDistanceTable {
        universe: universe.clone(),
        bounds,
        why,
        hypotheses: hypotheses.to_vec(),
        instances,
        rounds: 0,
    };

    for (h, (l, r, b)) in hyp_edges.iter().enumerate() {
        table.lower(*l, *r, Extended::Finite(b.clone()), Why::Hypothesis(h));
    }

    loop {
        if table.rounds >= guard {
            return Err(LogicError::StepGuard(guard));
        }
        table.rounds += 1;
        let mut changed = table.close_triangles();
        for (i, j, args) in &congruent {
            let m = args
                .iter()
                .map(|&(a, b)| table.bounds[a][b].clone())
                .max()
                .unwrap_or_else(Extended::zero);
            changed |= table.lower(*i, *j, m, Why::NExp);
        }
        for k in 0..table.instances.len() {
            let inst = &table.instances[k];
            let fires = inst
                .hypotheses
                .iter()
                .all(|(l, r, b)| table.bounds[*l][*r].within(b));
            if fires {
                let (l, r, b) = (inst.left, inst.right, Extended::Finite(inst.bound.clone()));
                changed |= table.lower(l, r, b, Why::Axiom(k));
            }
        }
        if !changed {
            break;
        }
    }
    Ok(table)
}

impl<S: Scalar> DerivedDistanceTable<S> {
    fn lower(&mut self, i: usize, j: usize, value: Extended<S>, why: Why) -> bool {
        if i == j || value >= self.bounds[i][j] {
            return false;
        }
        self.bounds[i][j] = value.clone();
        self.bounds[j][i] = value;
        self.why[i][j] = why;
        self.why[j][i] = Why::Mirror;
        true
    }

    fn close_triangles(&mut self) -> bool {
        let n = self.universe.len();
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                if !self.bounds[i][k].is_finite() {
                    continue;
                }
                for j in (i + 1)..n {
                    let via = &self.bounds[i][k] + &self.bounds[k][j];
                    changed |= self.lower(i, j, via, Why::Triang(k));
                }
            }
        }
        changed
    }

    pub fn universe(&self) -> &TermUniverse {
        &self.universe
    }

    pub fn hypotheses(&self) -> &[QuantEquation<S>] {
        &self.hypotheses
    }

    /// Number of saturation rounds until the fixpoint.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// `None` when either term lies outside the universe.
    pub fn bound(&self, s: &Term, t: &Term) -> Option<&Extended<S>> {
        let i = self.universe.index_of(s)?;
        let j = self.universe.index_of(t)?;
        Some(&self.bounds[i][j])
    }

    pub fn bound_at(&self, i: usize, j: usize) -> &Extended<S> {
        &self.bounds[i][j]
    }

    /// Whether `eq` is derivable in the bounded arena.
    pub fn derives(&self, eq: &QuantEquation<S>) -> bool {
        self.bound(&eq.left, &eq.right)
            .map(|b| b.within(&eq.bound))
            .unwrap_or(false)
    }

    /// Reflexive-zero, symmetric and triangle-closed.
    pub fn is_pseudometric(&self) -> bool {
        let n = self.universe.len();
        (0..n).all(|i| self.bounds[i][i].is_zero())
            && (0..n).all(|i| (0..n).all(|j| self.bounds[i][j] == self.bounds[j][i]))
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    (0..n).all(|k| self.bounds[i][j] <= &self.bounds[i][k] + &self.bounds[k][j])
                })
            })
    }

    /// Every operation is non-expansive on pairs of applications inside the
    /// universe.
    pub fn is_nonexpansive(&self) -> bool {
        let terms = self.universe.terms();
        terms.iter().enumerate().all(|(i, a)| {
            terms.iter().enumerate().all(|(j, b)| match (a, b) {
                (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                    let m = xs
                        .iter()
                        .zip(ys)
                        .map(|(x, y)| self.bound(x, y).cloned().unwrap_or(Extended::Infinite))
                        .max()
                        .unwrap_or_else(Extended::zero);
                    self.bounds[i][j] <= m
                }
                _ => true,
            })
        })
    }

    /// A proof of `s =_b t` under the hypotheses, where `b` is the table's
    /// bound. `None` when the bound is infinite or a term is outside the
    /// universe.
    pub fn proof(&self, s: &Term, t: &Term) -> Option<Proof<S>> {
        let i = self.universe.index_of(s)?;
        let j = self.universe.index_of(t)?;
        if !self.bounds[i][j].is_finite() {
            return None;
        }
        let mut builder = ProofBuilder {
            table: self,
            steps: Vec::new(),
            memo: HashMap::new(),
            context: {
                let mut ctx = self.hypotheses.clone();
                ctx.sort();
                ctx.dedup();
                ctx
            },
        };
        builder.derive(i, j, 0);
        Some(Proof {
            steps: builder.steps,
        })
    }

    /// A proof of `eq` itself, lifting the tight bound with Max when needed.
    pub fn proof_of(&self, eq: &QuantEquation<S>) -> Option<Proof<S>> {
        if !self.derives(eq) {
            return None;
        }
        let mut proof = self.proof(&eq.left, &eq.right)?;
        let last = proof.steps.len() - 1;
        let reached = proof.steps[last].conclusion.bound.clone();
        if reached < eq.bound {
            let context = proof.steps[last].context.clone();
            proof
                .steps
                .push(ProofStep::new(Rule::Max, vec![last], context, eq.clone()));
        }
        Some(proof)
    }
}

struct ProofBuilder<'a, S> {
    table: &'a DerivedDistanceTable<S>,
    steps: Vec<ProofStep<S>>,
    memo: HashMap<(usize, usize), usize>,
    context: Vec<QuantEquation<S>>,
}

impl<S: Scalar> ProofBuilder<'_, S> {
    fn term(&self, i: usize) -> Term {
        self.table.universe.terms()[i].clone()
    }

    fn push(&mut self, rule: Rule, premises: Vec<usize>, conclusion: QuantEquation<S>) -> usize {
        self.steps.push(ProofStep::new(
            rule,
            premises,
            self.context.clone(),
            conclusion,
        ));
        self.steps.len() - 1
    }

    fn finite(&self, i: usize, j: usize) -> S {
        self.table.bounds[i][j]
            .finite()
            .cloned()
            .expect("only finite bounds are proved")
    }

    /// Step index proving `t_i =_b t_j` with `b` the current table bound.
    fn derive(&mut self, i: usize, j: usize, depth: usize) -> usize {
        if let Some(&s) = self.memo.get(&(i, j)) {
            return s;
        }
        assert!(
            depth <= 4 * self.table.universe.len() * self.table.universe.len() + 8,
            "cyclic justification"
        );
        let bound = self.finite(i, j);
        let concl = QuantEquation {
            left: self.term(i),
            right: self.term(j),
            bound: bound.clone(),
        };
        let step = match self.table.why[i][j].clone() {
            Why::Infinite => unreachable!("infinite bounds have no proof"),
            Why::Refl => self.push(Rule::Refl, vec![], concl),
            Why::Mirror => {
                let p = self.derive(j, i, depth + 1);
                self.push(Rule::Symm, vec![p], concl)
            }
            Why::Hypothesis(h) => {
                let hyp = self.table.hypotheses[h].clone();
                let idx = self.push(Rule::Assumpt, vec![], hyp.clone());
                self.lift(idx, hyp, &bound)
            }
            Why::Triang(k) => {
                let a = self.derive(i, k, depth + 1);
                let b = self.derive(k, j, depth + 1);
                let sum = self.finite(i, k) + self.finite(k, j);
                let mid = QuantEquation {
                    left: self.term(i),
                    right: self.term(j),
                    bound: sum,
                };
                let idx = self.push(Rule::Triang, vec![a, b], mid.clone());
                self.lift(idx, mid, &bound)
            }
            Why::NExp => {
                let (xs, ys) = (self.term(i).args().to_vec(), self.term(j).args().to_vec());
                let mut premises = Vec::with_capacity(xs.len());
                for (x, y) in xs.iter().zip(&ys) {
                    let a = self.table.universe.index_of(x).unwrap();
                    let b = self.table.universe.index_of(y).unwrap();
                    let p = self.derive(a, b, depth + 1);
                    let have = self.steps[p].conclusion.clone();
                    premises.push(self.lift(p, have, &bound));
                }
                self.push(Rule::NExp, premises, concl)
            }
            Why::Axiom(k) => {
                let inst = self.table.instances[k].clone();
                let ax = inst.axiom;
                let mut cut_premises = Vec::with_capacity(inst.hypotheses.len() + 1);
                let instantiated: Vec<QuantEquation<S>> = inst
                    .hypotheses
                    .iter()
                    .map(|(l, r, b)| QuantEquation {
                        left: self.term(*l),
                        right: self.term(*r),
                        bound: b.clone(),
                    })
                    .collect();
                let mut sub_ctx = instantiated.clone();
                sub_ctx.sort();
                sub_ctx.dedup();
                let axiom_concl = QuantEquation {
                    left: self.term(inst.left),
                    right: self.term(inst.right),
                    bound: inst.bound.clone(),
                };
                self.steps.push(
                    ProofStep::new(Rule::Subst, vec![], sub_ctx, axiom_concl.clone())
                        .with_axiom(ax, inst.sigma.clone()),
                );
                cut_premises.push(self.steps.len() - 1);
                for (eq, (l, r, _)) in instantiated.into_iter().zip(&inst.hypotheses) {
                    let p = self.derive(*l, *r, depth + 1);
                    let have = self.steps[p].conclusion.clone();
                    let lifted = self.lift(p, have, &eq.bound);
                    cut_premises.push(lifted);
                }
                let idx = self.push(Rule::Cut, cut_premises, axiom_concl.clone());
                if (inst.left, inst.right) == (i, j) {
                    self.lift(idx, axiom_concl, &bound)
                } else {
                    // The instance concluded the mirrored pair.
                    let sym = self.push(Rule::Symm, vec![idx], axiom_concl.flipped());
                    self.lift(sym, axiom_concl.flipped(), &bound)
                }
            }
        };
        self.memo.insert((i, j), step);
        step
    }

    /// Applies Max when `have` is strictly below `target`.
    fn lift(&mut self, step: usize, have: QuantEquation<S>, target: &S) -> usize {
        if have.bound < *target {
            let concl = QuantEquation {
                bound: target.clone(),
                ..have
            };
            self.push(Rule::Max, vec![step], concl)
        } else {
            step
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::check_proof;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }
    fn v(s: &str) -> Term {
        Term::var(s)
    }
    fn f(t: Term) -> Term {
        Term::app("f", vec![t])
    }
    fn eq(l: Term, r: Term, b: Rational) -> QuantEquation<Rational> {
        QuantEquation::new(l, r, b).unwrap()
    }

    #[test]
    fn reflexivity_gives_zero() {
        let u = TermUniverse::closure([&f(v("x"))]);
        let t = least_derivable_distance::<Rational>(&[], &[], &u).unwrap();
        assert_eq!(t.bound(&f(v("x")), &f(v("x"))), Some(&Extended::zero()));
        assert_eq!(t.bound(&f(v("x")), &v("x")), Some(&Extended::Infinite));
    }

    #[test]
    fn triangle_adds_bounds() {
        let hyps = [eq(v("x"), v("y"), q(1)), eq(v("y"), v("z"), q(2))];
        let u = TermUniverse::closure([&v("x"), &v("y"), &v("z")]);
        let t = least_derivable_distance(&hyps, &[], &u).unwrap();
        assert_eq!(t.bound(&v("x"), &v("z")), Some(&Extended::Finite(q(3))));
        assert_eq!(t.bound(&v("z"), &v("x")), Some(&Extended::Finite(q(3))));
    }

    #[test]
    fn nonexpansiveness_lifts_through_operations() {
        let hyps = [eq(v("x"), v("y"), q(1))];
        let u = TermUniverse::closure([&f(v("x")), &f(v("y"))]);
        let t = least_derivable_distance(&hyps, &[], &u).unwrap();
        assert_eq!(
            t.bound(&f(v("x")), &f(v("y"))),
            Some(&Extended::Finite(q(1)))
        );
    }

    #[test]
    fn axioms_fire_when_hypotheses_are_derivable() {
        // {x =1 y} |- f(x) =0 f(y), with x =1/2 y assumed.
        let ax = ConditionalEquation::new(
            vec![eq(v("x"), v("y"), q(1))],
            eq(f(v("x")), f(v("y")), q(0)),
        );
        let hyps = [eq(v("a"), v("b"), Rational::new(1, 2))];
        let u = TermUniverse::closure([&f(v("a")), &f(v("b"))]);
        let t = least_derivable_distance(&hyps, std::slice::from_ref(&ax), &u).unwrap();
        assert_eq!(t.bound(&f(v("a")), &f(v("b"))), Some(&Extended::zero()));
        let p = t.proof(&f(v("a")), &f(v("b"))).unwrap();
        check_proof(&p, &[ax]).unwrap();
    }

    #[test]
    fn idempotent_axiom_collapses_iterates() {
        let ax = ConditionalEquation::unconditional(eq(f(v("x")), v("x"), q(0)));
        let u = TermUniverse::closure([&f(f(v("x")))]);
        let t = least_derivable_distance(&[], std::slice::from_ref(&ax), &u).unwrap();
        assert_eq!(t.bound(&f(f(v("x"))), &v("x")), Some(&Extended::zero()));
        check_proof(&t.proof(&f(f(v("x"))), &v("x")).unwrap(), &[ax]).unwrap();
    }

    #[test]
    fn table_is_a_nonexpansive_pseudometric() {
        let hyps = [eq(v("x"), v("y"), q(1)), eq(f(v("y")), v("z"), q(1))];
        let u = TermUniverse::closure([&f(v("x")), &f(v("y")), &v("z"), &f(f(v("x")))]);
        let t = least_derivable_distance(&hyps, &[], &u).unwrap();
        assert!(t.is_pseudometric());
        assert!(t.is_nonexpansive());
        assert_eq!(t.bound(&f(v("x")), &v("z")), Some(&Extended::Finite(q(2))));
    }

    #[test]
    fn terms_outside_the_universe_are_rejected() {
        let hyps = [eq(v("x"), v("y"), q(1))];
        let u = TermUniverse::closure([&v("x")]);
        assert_eq!(
            least_derivable_distance(&hyps, &[], &u).unwrap_err(),
            LogicError::OutsideUniverse(v("y"))
        );
    }

    #[test]
    fn proofs_of_every_finite_entry_check() {
        let hyps = [
            eq(v("x"), v("y"), q(1)),
            eq(v("y"), v("z"), Rational::new(1, 2)),
        ];
        let u = TermUniverse::closure([&f(v("x")), &f(v("z")), &f(f(v("y")))]);
        let t = least_derivable_distance(&hyps, &[], &u).unwrap();
        for a in u.terms() {
            for b in u.terms() {
                if let Some(p) = t.proof(a, b) {
                    check_proof(&p, &[]).unwrap();
                    let last = &p.steps.last().unwrap().conclusion;
                    assert_eq!((&last.left, &last.right), (a, b));
                    assert_eq!(Extended::Finite(last.bound), *t.bound(a, b).unwrap());
                }
            }
        }
    }
}
