//! Proof objects over the inference rules and their checker.

use std::fmt;

use thiserror::Error;

use super::{ConditionalEquation, QuantEquation};
use crate::scalar::Scalar;
use crate::term::{Substitution, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Refl,
    Symm,
    Triang,
    Max,
    Arch,
    NExp,
    Subst,
    Cut,
    Assumpt,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Refl,
        Rule::Symm,
        Rule::Triang,
        Rule::Max,
        Rule::Arch,
        Rule::NExp,
        Rule::Subst,
        Rule::Cut,
        Rule::Assumpt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Refl => "Refl",
            Rule::Symm => "Symm",
            Rule::Triang => "Triang",
            Rule::Max => "Max",
            Rule::Arch => "Arch",
            Rule::NExp => "NExp",
            Rule::Subst => "Subst",
            Rule::Cut => "Cut",
            Rule::Assumpt => "Assumpt",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One judgement `context ⊢ conclusion`, justified by `rule` from earlier
/// steps. Subst steps may instead cite an axiom together with a substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep<S> {
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub axiom: Option<usize>,
    pub substitution: Option<Substitution>,
    pub context: Vec<QuantEquation<S>>,
    pub conclusion: QuantEquation<S>,
}

impl<S> ProofStep<S> {
    pub fn new(
        rule: Rule,
        premises: Vec<usize>,
        context: Vec<QuantEquation<S>>,
        conclusion: QuantEquation<S>,
    ) -> Self {
        ProofStep {
            rule,
            premises,
            axiom: None,
            substitution: None,
            context,
            conclusion,
        }
    }

    pub fn with_axiom(mut self, axiom: usize, sigma: Substitution) -> Self {
        self.axiom = Some(axiom);
        self.substitution = Some(sigma);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proof<S> {
    pub steps: Vec<ProofStep<S>>,
}

impl<S> Proof<S> {
    pub fn conclusion(&self) -> Option<&QuantEquation<S>> {
        self.steps.last().map(|s| &s.conclusion)
    }
}

/// `<i>: <Rule> [p, q] ax=<k> {x := t} :: h1 ; h2 |- s =[e] t`
impl<S: fmt::Display> fmt::Display for Proof<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            write!(f, "{i}: {}", step.rule)?;
            write!(f, " [")?;
            for (k, p) in step.premises.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
            if let Some(ax) = step.axiom {
                write!(f, " ax={ax}")?;
            }
            if let Some(sigma) = &step.substitution {
                write!(f, " {sigma}")?;
            }
            f.write_str(" ::")?;
            for (k, h) in step.context.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ;")?;
                }
                write!(f, " {h}")?;
            }
            writeln!(f, " |- {}", step.conclusion)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofErrorKind {
    #[error("premise {0} does not refer to an earlier step")]
    DanglingPremise(usize),
    #[error("axiom {0} does not exist")]
    UnknownAxiom(usize),
    #[error("rule shape mismatch: {0}")]
    RuleMismatch(String),
    #[error("side condition failed: {0}")]
    SideCondition(String),
    /// Arch applied to premises that are all strictly above the conclusion;
    /// only an infinite descending family could justify it.
    #[error("Arch needs a cited bound at or below the conclusion")]
    ArchInfinitary,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {kind}")]
pub struct ProofError {
    pub step: usize,
    pub kind: ProofErrorKind,
}

fn normalized<S: Scalar>(ctx: &[QuantEquation<S>]) -> Vec<QuantEquation<S>> {
    let mut v = ctx.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Accepts iff every step instantiates its rule; reports the first failing step.
pub fn check_proof<S: Scalar>(
    proof: &Proof<S>,
    axioms: &[ConditionalEquation<S>],
) -> Result<(), ProofError> {
    let contexts: Vec<Vec<QuantEquation<S>>> =
        proof.steps.iter().map(|s| normalized(&s.context)).collect();
    for (i, step) in proof.steps.iter().enumerate() {
        let fail = |kind| Err(ProofError { step: i, kind });
        if let Some(&p) = step.premises.iter().find(|&&p| p >= i) {
            return fail(ProofErrorKind::DanglingPremise(p));
        }
        if let Err(kind) = check_step(step, &contexts[i], &proof.steps, &contexts, axioms) {
            return fail(kind);
        }
    }
    Ok(())
}

fn mismatch<T>(msg: impl Into<String>) -> Result<T, ProofErrorKind> {
    Err(ProofErrorKind::RuleMismatch(msg.into()))
}

fn side<T>(msg: impl Into<String>) -> Result<T, ProofErrorKind> {
    Err(ProofErrorKind::SideCondition(msg.into()))
}

fn check_step<S: Scalar>(
    step: &ProofStep<S>,
    ctx: &[QuantEquation<S>],
    steps: &[ProofStep<S>],
    contexts: &[Vec<QuantEquation<S>>],
    axioms: &[ConditionalEquation<S>],
) -> Result<(), ProofErrorKind> {
    let c = &step.conclusion;
    let premise = |k: usize| &steps[step.premises[k]].conclusion;
    let arity = |n: usize| {
        if step.premises.len() == n {
            Ok(())
        } else {
            mismatch(format!(
                "{} takes {n} premises, got {}",
                step.rule,
                step.premises.len()
            ))
        }
    };
    let same_context = || match step.premises.iter().find(|&&p| contexts[p] != ctx) {
        Some(p) => side(format!("premise {p} is under a different hypothesis set")),
        None => Ok(()),
    };
    match step.rule {
        Rule::Assumpt => {
            arity(0)?;
            if !ctx.contains(c) {
                return side(format!("{c} is not a hypothesis"));
            }
        }
        Rule::Refl => {
            arity(0)?;
            if c.left != c.right || !c.bound.is_zero() {
                return mismatch("Refl concludes t =[0] t");
            }
        }
        Rule::Symm => {
            arity(1)?;
            same_context()?;
            if *premise(0) != c.flipped() {
                return mismatch("Symm swaps the sides of its premise");
            }
        }
        Rule::Triang => {
            arity(2)?;
            same_context()?;
            let (a, b) = (premise(0), premise(1));
            if a.right != b.left || a.left != c.left || b.right != c.right {
                return mismatch("Triang chains t = u and u = s into t = s");
            }
            if a.bound.clone() + b.bound.clone() != c.bound {
                return side(format!(
                    "Triang concludes {} but premises sum to {}",
                    c.bound,
                    a.bound.clone() + b.bound.clone()
                ));
            }
        }
        Rule::Max => {
            arity(1)?;
            same_context()?;
            let a = premise(0);
            if a.left != c.left || a.right != c.right {
                return mismatch("Max keeps both terms");
            }
            if c.bound <= a.bound {
                return side("Max must strictly raise the bound");
            }
        }
        Rule::Arch => {
            if step.premises.is_empty() {
                return mismatch("Arch cites at least one derived bound");
            }
            same_context()?;
            for k in 0..step.premises.len() {
                let a = premise(k);
                if a.left != c.left || a.right != c.right {
                    return mismatch("Arch premises relate the same terms");
                }
            }
            if !(0..step.premises.len()).any(|k| premise(k).bound <= c.bound) {
                return Err(ProofErrorKind::ArchInfinitary);
            }
        }
        Rule::NExp => {
            same_context()?;
            let (f, xs, g, ys) = match (&c.left, &c.right) {
                (Term::App(f, xs), Term::App(g, ys)) => (f, xs, g, ys),
                _ => return mismatch("NExp concludes an equation between applications"),
            };
            if f != g || xs.len() != ys.len() {
                return mismatch("NExp applies one symbol on both sides");
            }
            arity(xs.len())?;
            for (k, (x, y)) in xs.iter().zip(ys).enumerate() {
                let a = premise(k);
                if &a.left != x || &a.right != y {
                    return mismatch(format!("NExp premise {k} must relate argument {k}"));
                }
                if a.bound != c.bound {
                    return side(format!(
                        "NExp premise {k} has bound {} not {}",
                        a.bound, c.bound
                    ));
                }
            }
        }
        Rule::Subst => {
            let sigma = step.substitution.clone().unwrap_or_default();
            let (src_ctx, src_concl) = match (step.axiom, step.premises.as_slice()) {
                (Some(k), []) => {
                    let ax = axioms.get(k).ok_or(ProofErrorKind::UnknownAxiom(k))?;
                    (ax.hypotheses.clone(), ax.conclusion.clone())
                }
                (None, [p]) => (steps[*p].context.clone(), steps[*p].conclusion.clone()),
                _ => return mismatch("Subst cites exactly one axiom or one premise"),
            };
            let want: Vec<_> = src_ctx.iter().map(|h| h.substitute(&sigma)).collect();
            if normalized(&want) != ctx {
                return side("Subst context is not the substituted hypotheses");
            }
            if src_concl.substitute(&sigma) != *c {
                return side("Subst conclusion is not the substituted conclusion");
            }
        }
        Rule::Cut => {
            let Some((&first, rest)) = step.premises.split_first() else {
                return mismatch("Cut needs a judgement to discharge");
            };
            if steps[first].conclusion != *c {
                return mismatch("Cut keeps the conclusion of its first premise");
            }
            if let Some(&p) = rest.iter().find(|&&p| contexts[p] != ctx) {
                return side(format!("premise {p} is under a different hypothesis set"));
            }
            for psi in &contexts[first] {
                if !rest.iter().any(|&p| steps[p].conclusion == *psi) {
                    return side(format!("hypothesis {psi} is not discharged"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }
    fn eq(l: &str, r: &str, b: Rational) -> QuantEquation<Rational> {
        QuantEquation::new(Term::var(l), Term::var(r), b).unwrap()
    }

    #[test]
    fn single_reflexivity_step() {
        let p = Proof {
            steps: vec![ProofStep::new(
                Rule::Refl,
                vec![],
                vec![],
                eq("t", "t", q(0)),
            )],
        };
        assert_eq!(check_proof(&p, &[]), Ok(()));
    }

    #[test]
    fn assumption_then_symmetry() {
        let ctx = vec![eq("x", "y", q(1))];
        let p = Proof {
            steps: vec![
                ProofStep::new(Rule::Assumpt, vec![], ctx.clone(), eq("x", "y", q(1))),
                ProofStep::new(Rule::Symm, vec![0], ctx, eq("y", "x", q(1))),
            ],
        };
        assert_eq!(check_proof(&p, &[]), Ok(()));
    }

    #[test]
    fn triangle_with_wrong_sum_is_rejected() {
        let ctx = vec![eq("x", "y", q(1)), eq("y", "z", q(2))];
        let p = Proof {
            steps: vec![
                ProofStep::new(Rule::Assumpt, vec![], ctx.clone(), eq("x", "y", q(1))),
                ProofStep::new(Rule::Assumpt, vec![], ctx.clone(), eq("y", "z", q(2))),
                ProofStep::new(Rule::Triang, vec![0, 1], ctx, eq("x", "z", q(2))),
            ],
        };
        let err = check_proof(&p, &[]).unwrap_err();
        assert_eq!(err.step, 2);
        assert!(matches!(err.kind, ProofErrorKind::SideCondition(_)));
    }

    #[test]
    fn dangling_premises_are_rejected() {
        let p = Proof {
            steps: vec![ProofStep::new(
                Rule::Symm,
                vec![0],
                vec![],
                eq("y", "x", q(1)),
            )],
        };
        assert_eq!(
            check_proof(&p, &[]).unwrap_err().kind,
            ProofErrorKind::DanglingPremise(0)
        );
    }

    #[test]
    fn arch_needs_a_bound_at_or_below() {
        let ctx = vec![eq("x", "y", q(1))];
        let ok = Proof {
            steps: vec![
                ProofStep::new(Rule::Assumpt, vec![], ctx.clone(), eq("x", "y", q(1))),
                ProofStep::new(Rule::Arch, vec![0], ctx.clone(), eq("x", "y", q(1))),
            ],
        };
        assert_eq!(check_proof(&ok, &[]), Ok(()));
        let bad = Proof {
            steps: vec![
                ProofStep::new(Rule::Assumpt, vec![], ctx.clone(), eq("x", "y", q(1))),
                ProofStep::new(Rule::Arch, vec![0], ctx, eq("x", "y", Rational::new(1, 2))),
            ],
        };
        assert_eq!(
            check_proof(&bad, &[]).unwrap_err().kind,
            ProofErrorKind::ArchInfinitary
        );
    }

    #[test]
    fn subst_and_cut_discharge_axiom_hypotheses() {
        // axiom: {x =1 y} |- y =1 x, instantiated at x := a, y := b.
        let ax = ConditionalEquation::new(vec![eq("x", "y", q(1))], eq("y", "x", q(1)));
        let sigma =
            Substitution::from_pairs([("x".into(), Term::var("a")), ("y".into(), Term::var("b"))]);
        let ctx = vec![eq("a", "b", q(1))];
        let p = Proof {
            steps: vec![
                ProofStep::new(
                    Rule::Subst,
                    vec![],
                    vec![eq("a", "b", q(1))],
                    eq("b", "a", q(1)),
                )
                .with_axiom(0, sigma),
                ProofStep::new(Rule::Assumpt, vec![], ctx.clone(), eq("a", "b", q(1))),
                ProofStep::new(Rule::Cut, vec![0, 1], ctx.clone(), eq("b", "a", q(1))),
            ],
        };
        assert_eq!(check_proof(&p, std::slice::from_ref(&ax)), Ok(()));
        let mut undischarged = p.clone();
        undischarged.steps[2].premises = vec![0];
        assert!(check_proof(&undischarged, &[ax]).is_err());
    }

    #[test]
    fn rule_names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(Rule::from_name(r.name()), Some(r));
        }
    }
}
