//! Signatures, terms over a variable set, substitutions and bounded term
//! enumeration.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Interned identifier for operation symbols, variables and carrier elements.
pub type Name = Arc<str>;

/// Default cap on the number of terms a single enumeration may produce.
pub const DEFAULT_TERM_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(Name),
    #[error("unknown variable `{0}`")]
    UnknownVariable(Name),
    #[error("symbol `{symbol}` has arity {expected} but was applied to {found} arguments")]
    ArityMismatch {
        symbol: Name,
        expected: usize,
        found: usize,
    },
    #[error("name `{0}` is declared twice")]
    DuplicateName(Name),
    #[error("name `{0}` is used both as a symbol and as a variable")]
    NameClash(Name),
    #[error("term enumeration exceeded the cap of {cap} terms")]
    CapExceeded { cap: usize },
}

/// An operation signature together with the ordered variable set `X`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    symbols: BTreeMap<Name, usize>,
    variables: Vec<Name>,
}

impl Signature {
    pub fn new<S, V>(symbols: S, variables: V) -> Result<Self, TermError>
    where
        S: IntoIterator<Item = (Name, usize)>,
        V: IntoIterator<Item = Name>,
    {
        let mut table = BTreeMap::new();
        for (name, arity) in symbols {
            if table.insert(name.clone(), arity).is_some() {
                return Err(TermError::DuplicateName(name));
            }
        }
        let mut seen = BTreeSet::new();
        let mut vars = Vec::new();
        for v in variables {
            if table.contains_key(&v) {
                return Err(TermError::NameClash(v));
            }
            if !seen.insert(v.clone()) {
                return Err(TermError::DuplicateName(v));
            }
            vars.push(v);
        }
        Ok(Signature {
            symbols: table,
            variables: vars,
        })
    }

    /// Convenience constructor from string slices; panics on malformed input.
    pub fn from_strs(symbols: &[(&str, usize)], variables: &[&str]) -> Self {
        Self::new(
            symbols.iter().map(|(s, a)| (Name::from(*s), *a)),
            variables.iter().map(|v| Name::from(*v)),
        )
        .expect("well-formed signature")
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&Name, usize)> + '_ {
        self.symbols.iter().map(|(n, a)| (n, *a))
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.symbols.get(symbol).copied()
    }

    pub fn variables(&self) -> &[Name] {
        &self.variables
    }

    pub fn is_variable(&self, name: &str) -> bool {
        self.variables.iter().any(|v| &**v == name)
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Same symbols with a different variable set.
    pub fn with_variables<V>(&self, variables: V) -> Result<Self, TermError>
    where
        V: IntoIterator<Item = Name>,
    {
        Self::new(self.symbols.clone(), variables)
    }

    /// Checks arity agreement and that every leaf is a declared variable or
    /// a constant.
    pub fn check_term(&self, t: &Term) -> Result<(), TermError> {
        match t {
            Term::Var(v) => {
                if self.is_variable(v) {
                    Ok(())
                } else if self.symbols.contains_key(v) {
                    Err(TermError::NameClash(v.clone()))
                } else {
                    Err(TermError::UnknownVariable(v.clone()))
                }
            }
            Term::App(op, args) => {
                let expected = self
                    .arity(op)
                    .ok_or_else(|| TermError::UnknownSymbol(op.clone()))?;
                if expected != args.len() {
                    return Err(TermError::ArityMismatch {
                        symbol: op.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }
}

/// A finite term: a variable or an operation symbol applied to arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    App(Name, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Name::from(name))
    }

    pub fn app(op: &str, args: Vec<Term>) -> Term {
        Term::App(Name::from(op), args)
    }

    pub fn constant(op: &str) -> Term {
        Term::App(Name::from(op), Vec::new())
    }

    /// Variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn head(&self) -> &Name {
        match self {
            Term::Var(v) => v,
            Term::App(op, _) => op,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// All subterms, including `self`.
    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.collect_subterms(&mut out);
        out
    }

    pub(crate) fn collect_subterms(&self, out: &mut BTreeSet<Term>) {
        if out.insert(self.clone()) {
            for a in self.args() {
                a.collect_subterms(out);
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn collect_variables(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_variables(out)),
        }
    }
}

/// Depth first, then head symbol, then arguments lexicographically.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.depth()
            .cmp(&other.depth())
            .then_with(|| self.head().cmp(other.head()))
            .then_with(|| match (self, other) {
                (Term::Var(_), Term::App(..)) => Ordering::Less,
                (Term::App(..), Term::Var(_)) => Ordering::Greater,
                _ => self.args().cmp(other.args()),
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(op, args) if args.is_empty() => f.write_str(op),
            Term::App(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A map from finitely many variables to terms; the identity elsewhere.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Name, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Name, Term)>>(pairs: I) -> Self {
        Substitution {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, var: Name, t: Term) {
        self.map.insert(var, t);
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Term)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Homomorphic extension to all terms.
    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(op, args) => {
                Term::App(op.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn compose(&self, inner: &Substitution) -> Substitution {
        let mut map: BTreeMap<Name, Term> = inner
            .map
            .iter()
            .map(|(v, t)| (v.clone(), self.apply(t)))
            .collect();
        for (v, t) in &self.map {
            map.entry(v.clone()).or_insert_with(|| t.clone());
        }
        Substitution { map }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} := {t}")?;
        }
        f.write_str("}")
    }
}

/// Applies `sigma` to `t` after checking both against the signature.
pub fn apply_substitution(
    sig: &Signature,
    sigma: &Substitution,
    t: &Term,
) -> Result<Term, TermError> {
    sig.check_term(t)?;
    for (_, image) in sigma.iter() {
        sig.check_term(image)?;
    }
    Ok(sigma.apply(t))
}

/// Every term of depth at most `depth` over `vars`, sorted and deduplicated.
pub fn enumerate_terms(
    sig: &Signature,
    vars: &[Name],
    depth: usize,
    cap: usize,
) -> Result<Vec<Term>, TermError> {
    for v in vars {
        if !sig.is_variable(v) {
            return Err(TermError::UnknownVariable(v.clone()));
        }
    }
    let mut all: BTreeSet<Term> = vars.iter().map(|v| Term::Var(v.clone())).collect();
    for (op, arity) in sig.symbols() {
        if arity == 0 {
            all.insert(Term::App(op.clone(), Vec::new()));
        }
    }
    if all.len() > cap {
        return Err(TermError::CapExceeded { cap });
    }
    for _ in 0..depth {
        let level: Vec<Term> = all.iter().cloned().collect();
        let mut next = all.clone();
        for (op, arity) in sig.symbols() {
            if arity == 0 {
                continue;
            }
            let mut idx = vec![0usize; arity];
            'tuples: loop {
                let args = idx.iter().map(|&i| level[i].clone()).collect();
                next.insert(Term::App(op.clone(), args));
                if next.len() > cap {
                    return Err(TermError::CapExceeded { cap });
                }
                for slot in idx.iter_mut().rev() {
                    *slot += 1;
                    if *slot < level.len() {
                        continue 'tuples;
                    }
                    *slot = 0;
                }
                break;
            }
        }
        if next.len() == all.len() {
            break;
        }
        all = next;
    }
    Ok(all.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }
    fn f(a: Term, b: Term) -> Term {
        Term::app("f", vec![a, b])
    }
    fn g(a: Term) -> Term {
        Term::app("g", vec![a])
    }

    #[test]
    fn empty_substitution_is_identity() {
        let t = f(x(), y());
        assert_eq!(Substitution::new().apply(&t), t);
    }

    #[test]
    fn substitution_extends_homomorphically() {
        let s = Substitution::from_pairs([(Name::from("x"), g(y()))]);
        assert_eq!(s.apply(&f(x(), x())), f(g(y()), g(y())));
    }

    #[test]
    fn swap_substitution_is_simultaneous() {
        let s = Substitution::from_pairs([(Name::from("x"), y()), (Name::from("y"), x())]);
        assert_eq!(s.apply(&f(x(), g(y()))), f(y(), g(x())));
    }

    #[test]
    fn checked_substitution_rejects_unknown_symbols() {
        let sig = Signature::from_strs(&[("f", 2)], &["x", "y"]);
        let err = apply_substitution(&sig, &Substitution::new(), &g(x())).unwrap_err();
        assert_eq!(err, TermError::UnknownSymbol(Name::from("g")));
    }

    #[test]
    fn subterms_are_deduplicated() {
        assert_eq!(x().subterms().into_iter().collect::<Vec<_>>(), vec![x()]);
        let t = f(x(), y());
        assert_eq!(t.subterms(), BTreeSet::from([t.clone(), x(), y()]));
        let t = f(g(x()), g(x()));
        assert_eq!(t.subterms(), BTreeSet::from([t.clone(), g(x()), x()]));
    }

    #[test]
    fn variables_of_terms() {
        assert_eq!(x().variables(), BTreeSet::from([Name::from("x")]));
        assert_eq!(
            f(x(), g(y())).variables(),
            BTreeSet::from([Name::from("x"), Name::from("y")])
        );
        assert!(Term::constant("c").variables().is_empty());
    }

    #[test]
    fn enumeration_without_operations_is_the_variables() {
        let sig = Signature::from_strs(&[], &["x", "y"]);
        let vars = sig.variables().to_vec();
        assert_eq!(
            enumerate_terms(&sig, &vars, 3, 100).unwrap(),
            vec![x(), y()]
        );
    }

    #[test]
    fn enumeration_with_one_unary_symbol() {
        let sig = Signature::from_strs(&[("f", 1)], &["x"]);
        let vars = sig.variables().to_vec();
        let fx = Term::app("f", vec![x()]);
        let ffx = Term::app("f", vec![fx.clone()]);
        assert_eq!(
            enumerate_terms(&sig, &vars, 2, 100).unwrap(),
            vec![x(), fx, ffx]
        );
    }

    #[test]
    fn enumeration_of_a_lone_constant() {
        let sig = Signature::from_strs(&[("c", 0)], &[]);
        assert_eq!(
            enumerate_terms(&sig, &[], 0, 100).unwrap(),
            vec![Term::constant("c")]
        );
    }

    #[test]
    fn enumeration_cap_is_an_error() {
        let sig = Signature::from_strs(&[("f", 2)], &["x", "y"]);
        let vars = sig.variables().to_vec();
        assert_eq!(
            enumerate_terms(&sig, &vars, 3, 50),
            Err(TermError::CapExceeded { cap: 50 })
        );
    }

    #[test]
    fn ordering_is_depth_then_head() {
        let c = Term::constant("c");
        let mut ts = vec![g(x()), y(), c.clone(), x()];
        ts.sort();
        assert_eq!(ts, vec![c, x(), y(), g(x())]);
    }

    #[test]
    fn signature_rejects_clashes() {
        let err = Signature::new([(Name::from("x"), 1)], [Name::from("x")]).unwrap_err();
        assert_eq!(err, TermError::NameClash(Name::from("x")));
        let err = Signature::new([], [Name::from("x"), Name::from("x")]).unwrap_err();
        assert_eq!(err, TermError::DuplicateName(Name::from("x")));
    }
}
