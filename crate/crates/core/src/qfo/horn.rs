use std::fmt;

use super::{QfoError, ThresholdStructure};
use crate::algebra::{AlgebraError, TermProgram};
use crate::logic::{for_each_map, ConditionalEquation, QuantEquation};
use crate::scalar::Scalar;
use crate::term::{Name, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom<S> {
    /// `s = t`: both sides denote the same element.
    Equal(Term, Term),
    /// `s =_ε t`.
    Within(QuantEquation<S>),
}

impl<S: fmt::Display> fmt::Display for Atom<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Equal(s, t) => write!(f, "{s} = {t}"),
            Atom::Within(e) => write!(f, "{e}"),
        }
    }
}

/// `∀ vars. body_1 ∧ ... ∧ body_k → head`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HornFormula<S> {
    pub vars: Vec<Name>,
    pub body: Vec<Atom<S>>,
    pub head: Atom<S>,
}

/// `forall x y . (a) & (b) -> (c)`, or `forall x . (c)` with an empty body.
impl<S: fmt::Display> fmt::Display for HornFormula<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("forall")?;
        for v in &self.vars {
            write!(f, " {v}")?;
        }
        f.write_str(" .")?;
        for (i, a) in self.body.iter().enumerate() {
            let sep = if i == 0 { " " } else { " & " };
            write!(f, "{sep}({a})")?;
        }
        if !self.body.is_empty() {
            f.write_str(" ->")?;
        }
        write!(f, " ({})", self.head)
    }
}

/// The first valuation, in odometer order, under which the body holds and
/// the head fails. Variables map to element names.
pub fn eval_horn<S: Scalar>(
    m: &ThresholdStructure<S>,
    phi: &HornFormula<S>,
) -> Result<Option<Vec<(Name, Name)>>, AlgebraError> {
    enum Compiled<S> {
        Equal(TermProgram, TermProgram),
        Within(TermProgram, TermProgram, S),
    }
    let compile = |a: &Atom<S>| -> Result<Compiled<S>, AlgebraError> {
        Ok(match a {
            Atom::Equal(s, t) => Compiled::Equal(
                TermProgram::compile(m.ops(), &phi.vars, s)?,
                TermProgram::compile(m.ops(), &phi.vars, t)?,
            ),
            Atom::Within(e) => Compiled::Within(
                TermProgram::compile(m.ops(), &phi.vars, &e.left)?,
                TermProgram::compile(m.ops(), &phi.vars, &e.right)?,
                e.bound.clone(),
            ),
        })
    };
    let body = phi
        .body
        .iter()
        .map(compile)
        .collect::<Result<Vec<_>, _>>()?;
    let head = compile(&phi.head)?;
    let mut stack = Vec::new();
    let mut holds = |a: &Compiled<S>, env: &[usize]| match a {
        Compiled::Equal(s, t) => s.run(m.ops(), env, &mut stack) == t.run(m.ops(), env, &mut stack),
        Compiled::Within(s, t, eps) => {
            let (u, v) = (
                s.run(m.ops(), env, &mut stack),
                t.run(m.ops(), env, &mut stack),
            );
            m.related(u, v, eps)
        }
    };
    let mut witness = None;
    for_each_map(phi.vars.len(), m.size(), |env| {
        if body.iter().all(|a| holds(a, env)) && !holds(&head, env) {
            witness = Some(
                phi.vars
                    .iter()
                    .zip(env)
                    .map(|(v, &e)| (v.clone(), m.element(e).clone()))
                    .collect(),
            );
            return false;
        }
        true
    });
    Ok(witness)
}

/// Hypotheses become the body and the conclusion the head, quantified over
/// the equation's variables in order of occurrence.
pub fn horn_of_conditional<S: Scalar>(ce: &ConditionalEquation<S>) -> HornFormula<S> {
    HornFormula {
        vars: ce.variables(),
        body: ce.hypotheses.iter().cloned().map(Atom::Within).collect(),
        head: Atom::Within(ce.conclusion.clone()),
    }
}

/// Inverse of [`horn_of_conditional`]. Term equalities become `=_0`, which
/// the identity axiom makes equivalent.
pub fn conditional_of_horn<S: Scalar>(
    phi: &HornFormula<S>,
) -> Result<ConditionalEquation<S>, QfoError> {
    let convert = |a: &Atom<S>| match a {
        Atom::Equal(s, t) => QuantEquation {
            left: s.clone(),
            right: t.clone(),
            bound: S::zero(),
        },
        Atom::Within(e) => e.clone(),
    };
    let ce = ConditionalEquation::new(phi.body.iter().map(convert).collect(), convert(&phi.head));
    if let Some(v) = ce.variables().into_iter().find(|v| !phi.vars.contains(v)) {
        return Err(QfoError::Untranslatable(format!(
            "a formula with free variable `{v}`"
        )));
    }
    Ok(ce)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::two_point;
    use crate::qfo::to_qfo;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }
    fn eq(l: Term, r: Term, b: Rational) -> QuantEquation<Rational> {
        QuantEquation::new(l, r, b).unwrap()
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

    #[test]
    fn reflexivity_holds_everywhere() {
        let phi = HornFormula {
            vars: vec!["x".into()],
            body: vec![],
            head: Atom::Within(eq(x(), x(), q(0, 1))),
        };
        assert_eq!(
            eval_horn(&to_qfo(&two_point(1, [1, 0])), &phi).unwrap(),
            None
        );
    }

    #[test]
    fn half_distance_fails_with_a_witness() {
        let phi = HornFormula {
            vars: vec!["x".into(), "y".into()],
            body: vec![],
            head: Atom::Within(eq(x(), y(), q(1, 2))),
        };
        let w = eval_horn(&to_qfo(&two_point(1, [1, 0])), &phi)
            .unwrap()
            .unwrap();
        assert_eq!(w, vec![("x".into(), "a".into()), ("y".into(), "b".into())]);
    }

    #[test]
    fn up_closure() {
        let phi = HornFormula {
            vars: vec!["x".into(), "y".into()],
            body: vec![Atom::Within(eq(x(), y(), q(1, 1)))],
            head: Atom::Within(eq(x(), y(), q(2, 1))),
        };
        assert_eq!(
            eval_horn(&to_qfo(&two_point(1, [1, 0])), &phi).unwrap(),
            None
        );
    }

    #[test]
    fn translation_shape_and_round_trip() {
        let ce = ConditionalEquation::new(vec![eq(x(), y(), q(1, 1))], eq(f(x()), f(y()), q(1, 1)));
        let phi = horn_of_conditional(&ce);
        assert_eq!(
            phi.to_string(),
            "forall x y . (x =[1] y) -> (f(x) =[1] f(y))"
        );
        assert_eq!(conditional_of_horn(&phi).unwrap(), ce);
        let bare = ConditionalEquation::unconditional(eq(f(x()), x(), q(0, 1)));
        assert_eq!(
            horn_of_conditional(&bare).to_string(),
            "forall x . (f(x) =[0] x)"
        );
    }

    #[test]
    fn equalities_translate_to_zero_bounds() {
        let phi = HornFormula {
            vars: vec!["x".into(), "y".into()],
            body: vec![Atom::Equal(x(), y())],
            head: Atom::Equal(f(x()), f(y())),
        };
        let ce = conditional_of_horn(&phi).unwrap();
        assert_eq!(ce.hypotheses, vec![eq(x(), y(), q(0, 1))]);
        let m = to_qfo(&two_point(1, [1, 0]));
        assert_eq!(eval_horn(&m, &phi).unwrap(), None);
    }

    #[test]
    fn unbound_variables_are_errors() {
        let phi = HornFormula {
            vars: vec!["x".into()],
            body: vec![],
            head: Atom::Within(eq(x(), y(), q(1, 1))),
        };
        let m = to_qfo(&two_point(1, [1, 0]));
        assert_eq!(
            eval_horn(&m, &phi),
            Err(AlgebraError::UnboundVariable("y".into()))
        );
        assert!(conditional_of_horn(&phi).is_err());
    }
}
