//! Quantitative and conditional quantitative equations, and the deduction
//! system over them.
//!
//! Derivability is computed by [`least_derivable_distance`], which saturates a
//! finite term universe under the inference rules and returns the least
//! derivable bound for every pair of terms. The same table can emit explicit
//! proof objects that [`check_proof`] verifies step by step.

mod proof;
mod saturate;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::term::{Name, Signature, Substitution, Term, TermError};

pub use proof::{check_proof, Proof, ProofError, ProofErrorKind, ProofStep, Rule};
pub use saturate::{least_derivable_distance, DerivedDistanceTable, DEFAULT_STEP_GUARD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("bound {0} is negative")]
    NegativeBound(String),
    #[error("term `{0}` is not in the universe")]
    OutsideUniverse(Term),
    #[error("universe exceeded the cap of {cap} terms")]
    UniverseCap { cap: usize },
    #[error("axiom instantiation exceeded the cap of {cap} substitutions")]
    InstanceCap { cap: usize },
    #[error("saturation did not reach a fixpoint within {0} rounds")]
    StepGuard(usize),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// `left =_bound right`: the distance between the two terms is at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantEquation<S> {
    pub left: Term,
    pub right: Term,
    pub bound: S,
}

impl<S: Scalar> QuantEquation<S> {
    pub fn new(left: Term, right: Term, bound: S) -> Result<Self, LogicError> {
        if bound < S::zero() {
            return Err(LogicError::NegativeBound(bound.to_string()));
        }
        Ok(QuantEquation { left, right, bound })
    }

    pub fn flipped(&self) -> Self {
        QuantEquation {
            left: self.right.clone(),
            right: self.left.clone(),
            bound: self.bound.clone(),
        }
    }

    pub fn substitute(&self, sigma: &Substitution) -> Self {
        QuantEquation {
            left: sigma.apply(&self.left),
            right: sigma.apply(&self.right),
            bound: self.bound.clone(),
        }
    }

    pub fn is_between_variables(&self) -> bool {
        self.left.is_var() && self.right.is_var()
    }
}

impl<S: fmt::Display> fmt::Display for QuantEquation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =[{}] {}", self.left, self.bound, self.right)
    }
}

/// `hypotheses ⊢ conclusion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionalEquation<S> {
    pub hypotheses: Vec<QuantEquation<S>>,
    pub conclusion: QuantEquation<S>,
}

/// How restricted a conditional equation is, most specific first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicClass {
    /// No hypotheses.
    Unconditional,
    /// Finitely many hypotheses, all between variables.
    FinitaryBasic,
    /// Hypotheses all between variables. Only reachable with infinite
    /// hypothesis sets, which this library does not represent.
    Basic,
    General,
}

impl<S: Scalar> ConditionalEquation<S> {
    pub fn new(hypotheses: Vec<QuantEquation<S>>, conclusion: QuantEquation<S>) -> Self {
        ConditionalEquation {
            hypotheses,
            conclusion,
        }
    }

    pub fn unconditional(conclusion: QuantEquation<S>) -> Self {
        Self::new(Vec::new(), conclusion)
    }

    /// Variables in order of first occurrence: hypotheses, then conclusion.
    pub fn variables(&self) -> Vec<Name> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut visit = |t: &Term| {
            for v in t.variables() {
                if seen.insert(v.clone()) {
                    out.push(v);
                }
            }
        };
        for h in &self.hypotheses {
            visit(&h.left);
            visit(&h.right);
        }
        visit(&self.conclusion.left);
        visit(&self.conclusion.right);
        out
    }

    pub fn classify(&self) -> BasicClass {
        if self.hypotheses.is_empty() {
            BasicClass::Unconditional
        } else if self
            .hypotheses
            .iter()
            .all(QuantEquation::is_between_variables)
        {
            BasicClass::FinitaryBasic
        } else {
            BasicClass::General
        }
    }

    pub fn is_basic(&self) -> bool {
        self.classify() != BasicClass::General
    }

    /// Basic with fewer than `c` hypotheses.
    pub fn is_c_basic(&self, c: usize) -> bool {
        self.is_basic() && self.hypotheses.len() < c
    }

    pub fn substitute(&self, sigma: &Substitution) -> Self {
        ConditionalEquation {
            hypotheses: self
                .hypotheses
                .iter()
                .map(|h| h.substitute(sigma))
                .collect(),
            conclusion: self.conclusion.substitute(sigma),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.hypotheses
            .iter()
            .chain(std::iter::once(&self.conclusion))
            .flat_map(|e| [&e.left, &e.right])
    }

    pub fn check(&self, sig: &Signature) -> Result<(), TermError> {
        self.terms().try_for_each(|t| sig.check_term(t))
    }
}

impl<S: fmt::Display> fmt::Display for ConditionalEquation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hypotheses.is_empty() {
            f.write_str("[")?;
            for (i, h) in self.hypotheses.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ; ")?;
                }
                write!(f, "{h}")?;
            }
            f.write_str("] ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

/// A finite, sorted, subterm-closed set of terms with an index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermUniverse {
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
}

impl TermUniverse {
    /// Subterm closure of the given terms.
    pub fn closure<'a, I: IntoIterator<Item = &'a Term>>(terms: I) -> Self {
        let mut set = BTreeSet::new();
        for t in terms {
            t.collect_subterms(&mut set);
        }
        Self::from_sorted(set)
    }

    fn from_sorted(set: BTreeSet<Term>) -> Self {
        let terms: Vec<Term> = set.into_iter().collect();
        let index = terms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        TermUniverse { terms, index }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.index.contains_key(t)
    }

    /// Every argument of every term is itself in the universe.
    pub fn is_subterm_closed(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.args().iter().all(|a| self.contains(a)))
    }
}

/// Calls `visit` with every map from `vars` into `0..n` in odometer order.
pub fn for_each_map(vars: usize, n: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if vars > 0 && n == 0 {
        return;
    }
    let mut idx = vec![0usize; vars];
    loop {
        if !visit(&idx) {
            return;
        }
        let mut pos = vars;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Budgets for [`build_universe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniverseBudget {
    /// Instantiated axiom terms deeper than this are not added.
    pub depth: usize,
    pub term_cap: usize,
    pub instance_cap: usize,
}

impl Default for UniverseBudget {
    fn default() -> Self {
        UniverseBudget {
            depth: 2,
            term_cap: 2_000,
            instance_cap: 2_000_000,
        }
    }
}

/// The finite arena in which derivations are searched: the subterm closure of
/// the hypotheses and goal, grown by every axiom instance whose substitution
/// ranges over terms already present, as long as the instantiated terms stay
/// within the depth budget.
pub fn build_universe<S: Scalar>(
    hypotheses: &[QuantEquation<S>],
    goal: &QuantEquation<S>,
    axioms: &[ConditionalEquation<S>],
    budget: UniverseBudget,
) -> Result<TermUniverse, LogicError> {
    let mut set = BTreeSet::new();
    for e in hypotheses.iter().chain(std::iter::once(goal)) {
        e.left.collect_subterms(&mut set);
        e.right.collect_subterms(&mut set);
    }
    if set.len() > budget.term_cap {
        return Err(LogicError::UniverseCap {
            cap: budget.term_cap,
        });
    }
    let mut instances = 0usize;
    loop {
        let current: Vec<Term> = set.iter().cloned().collect();
        let before = set.len();
        for ax in axioms {
            let vars = ax.variables();
            let mut err = None;
            for_each_map(vars.len(), current.len(), |choice| {
                instances += 1;
                if instances > budget.instance_cap {
                    err = Some(LogicError::InstanceCap {
                        cap: budget.instance_cap,
                    });
                    return false;
                }
                let sigma = Substitution::from_pairs(
                    vars.iter()
                        .cloned()
                        .zip(choice.iter().map(|&i| current[i].clone())),
                );
                let image: Vec<Term> = ax.terms().map(|t| sigma.apply(t)).collect();
                if image
                    .iter()
                    .all(|t| t.depth() <= budget.depth || set.contains(t))
                {
                    for t in &image {
                        t.collect_subterms(&mut set);
                    }
                    if set.len() > budget.term_cap {
                        err = Some(LogicError::UniverseCap {
                            cap: budget.term_cap,
                        });
                        return false;
                    }
                }
                true
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        if set.len() == before {
            break;
        }
    }
    Ok(TermUniverse::from_sorted(set))
}

/// `false` when the empty hypothesis set derives `x =_0 y` within the budget.
/// `true` only means no inconsistency was found at this budget.
pub fn is_consistent_probe<S: Scalar>(
    axioms: &[ConditionalEquation<S>],
    x: &Name,
    y: &Name,
    budget: UniverseBudget,
) -> Result<bool, LogicError> {
    let goal = QuantEquation {
        left: Term::Var(x.clone()),
        right: Term::Var(y.clone()),
        bound: S::zero(),
    };
    let universe = build_universe(&[], &goal, axioms, budget)?;
    let table = least_derivable_distance(&[], axioms, &universe)?;
    Ok(!table
        .bound(&goal.left, &goal.right)
        .map(|b| b.is_zero())
        .unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }
    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }
    fn f(t: Term) -> Term {
        Term::app("f", vec![t])
    }
    fn eq(l: Term, r: Term, b: Rational) -> QuantEquation<Rational> {
        QuantEquation::new(l, r, b).unwrap()
    }

    #[test]
    fn classification() {
        let ce = ConditionalEquation::unconditional(eq(f(x()), f(y()), q(1)));
        assert_eq!(ce.classify(), BasicClass::Unconditional);
        let ce = ConditionalEquation::new(vec![eq(x(), y(), q(1))], eq(f(x()), f(y()), q(1)));
        assert_eq!(ce.classify(), BasicClass::FinitaryBasic);
        let ce = ConditionalEquation::new(vec![eq(f(x()), y(), q(1))], eq(x(), y(), q(2)));
        assert_eq!(ce.classify(), BasicClass::General);
    }

    #[test]
    fn c_basic_counts_hypotheses() {
        let ce = ConditionalEquation::new(vec![eq(x(), y(), q(1))], eq(f(x()), f(y()), q(1)));
        assert!(!ce.is_c_basic(1));
        assert!(ce.is_c_basic(2));
    }

    #[test]
    fn negative_bounds_are_rejected() {
        assert!(QuantEquation::new(x(), y(), q(-1)).is_err());
    }

    #[test]
    fn universe_of_a_bare_hypothesis() {
        let h = eq(x(), y(), q(1));
        let u =
            build_universe(std::slice::from_ref(&h), &h, &[], UniverseBudget::default()).unwrap();
        assert_eq!(u.terms(), &[x(), y()]);
    }

    #[test]
    fn universe_contains_goal_subterms() {
        let h = eq(x(), y(), q(1));
        let goal = eq(f(x()), f(y()), q(1));
        let u = build_universe(&[h], &goal, &[], UniverseBudget::default()).unwrap();
        for t in [x(), y(), f(x()), f(y())] {
            assert!(u.contains(&t));
        }
    }

    #[test]
    fn universe_grows_by_axiom_instances_within_depth() {
        let ax = ConditionalEquation::unconditional(eq(f(x()), x(), q(0)));
        let goal = eq(f(f(x())), x(), q(0));
        let budget = UniverseBudget {
            depth: 2,
            ..UniverseBudget::default()
        };
        let u = build_universe(&[], &goal, &[ax], budget).unwrap();
        assert_eq!(u.terms(), &[x(), f(x()), f(f(x()))]);
    }

    #[test]
    fn consistency_probe() {
        let (nx, ny) = (Name::from("x"), Name::from("y"));
        let collapse = ConditionalEquation::unconditional(eq(x(), y(), q(0)));
        assert!(!is_consistent_probe(&[collapse], &nx, &ny, UniverseBudget::default()).unwrap());
        assert!(is_consistent_probe::<Rational>(&[], &nx, &ny, UniverseBudget::default()).unwrap());
        let fx_fy = ConditionalEquation::unconditional(eq(f(x()), f(y()), q(0)));
        assert!(is_consistent_probe(&[fx_fy], &nx, &ny, UniverseBudget::default()).unwrap());
    }

    #[test]
    fn display_uses_bracketed_bounds() {
        let ce = ConditionalEquation::new(
            vec![eq(x(), y(), Rational::new(1, 2))],
            eq(f(x()), f(y()), Rational::new(1, 2)),
        );
        assert_eq!(ce.to_string(), "[x =[1/2] y] |- f(x) =[1/2] f(y)");
    }
}
