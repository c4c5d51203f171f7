//! Finite quantitative algebras: a carrier, total operation tables and an
//! extended distance matrix under which every operation is non-expansive.

mod eval;
mod hom;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexSet;
use thiserror::Error;

use crate::logic::{ConditionalEquation, QuantEquation};
use crate::scalar::{Extended, Scalar};
use crate::term::{Name, Signature, Term, TermError};

pub use eval::{SatisfactionChecker, TermProgram, DEFAULT_ASSIGNMENT_CAP};
pub use hom::{HomViolation, Homomorphism};
pub use search::{
    distance_grid, element_names, for_each_algebra, metrics_on, nonexpansive_tables,
    search_countermodel, search_distant_model, Countermodel, SearchBudget,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element `{0}` is listed twice")]
    DuplicateElement(Name),
    #[error("unknown element `{0}`")]
    UnknownElement(Name),
    #[error("operation `{0}` is defined twice")]
    DuplicateSymbol(Name),
    #[error("operation `{0}` has no table")]
    MissingTable(Name),
    #[error("operation `{0}` is not in the signature")]
    UnknownSymbol(Name),
    #[error("operation `{symbol}` has arity {expected}, table has arity {found}")]
    ArityMismatch {
        symbol: Name,
        expected: usize,
        found: usize,
    },
    #[error("operation `{symbol}` table has {found} entries, expected {expected}")]
    TableSize {
        symbol: Name,
        expected: usize,
        found: usize,
    },
    #[error("operation `{symbol}` has no value at ({args})")]
    MissingEntry { symbol: Name, args: String },
    #[error("table refers to element index {0} outside the carrier")]
    OutOfRange(usize),
    #[error("distance matrix has size {found}, carrier has {expected} elements")]
    SizeMismatch { expected: usize, found: usize },
    #[error("variable `{0}` is not assigned")]
    UnboundVariable(Name),
    #[error("{count} assignments exceed the cap of {cap}")]
    AssignmentCap { count: u128, cap: usize },
    #[error("algebras have different signatures")]
    SignatureMismatch,
    #[error("not a congruence: `{symbol}` separates related arguments ({left}) and ({right})")]
    NotCongruence {
        symbol: Name,
        left: String,
        right: String,
    },
    #[error("subset is not closed: `{symbol}` sends ({args}) to `{escape}`")]
    NotClosed {
        symbol: Name,
        args: String,
        escape: Name,
    },
    #[error("not a pseudometric: {0}")]
    NotPseudometric(String),
    #[error("invalid quantitative algebra: {0}")]
    Invalid(String),
    #[error("search budget of {cap} {what} exceeded")]
    Budget { what: &'static str, cap: usize },
    #[error("the class of algebras is empty")]
    EmptyClass,
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A total table for one operation on a carrier of `size` elements, indexed
/// with the first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    arity: usize,
    size: usize,
    values: Vec<usize>,
}

impl OpTable {
    pub fn new(arity: usize, size: usize, values: Vec<usize>) -> Result<Self, AlgebraError> {
        let expected = size.pow(arity as u32);
        if values.len() != expected {
            return Err(AlgebraError::TableSize {
                symbol: "?".into(),
                expected,
                found: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= size) {
            return Err(AlgebraError::OutOfRange(v));
        }
        Ok(OpTable {
            arity,
            size,
            values,
        })
    }

    pub fn from_fn(arity: usize, size: usize, mut f: impl FnMut(&[usize]) -> usize) -> Self {
        let mut values = Vec::with_capacity(size.pow(arity as u32));
        crate::logic::for_each_map(arity, size, |args| {
            values.push(f(args));
            true
        });
        OpTable {
            arity,
            size,
            values,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn index(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.size + a)
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        self.values[self.index(args)]
    }
}

/// A carrier with operation tables: a plain finite algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operations {
    carrier: IndexSet<Name>,
    /// Sorted by symbol name.
    tables: Vec<(Name, OpTable)>,
}

fn join(names: impl IntoIterator<Item = impl fmt::Display>) -> String {
    names
        .into_iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl Operations {
    pub fn new<I>(carrier: I, tables: Vec<(Name, OpTable)>) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = Name>,
    {
        let mut set = IndexSet::new();
        for e in carrier {
            if !set.insert(e.clone()) {
                return Err(AlgebraError::DuplicateElement(e));
            }
        }
        let mut tables = tables;
        tables.sort_by(|a, b| a.0.cmp(&b.0));
        for w in tables.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(AlgebraError::DuplicateSymbol(w[0].0.clone()));
            }
        }
        for (name, t) in &tables {
            let expected = set.len().pow(t.arity as u32);
            if t.size != set.len() || t.values.len() != expected {
                return Err(AlgebraError::TableSize {
                    symbol: name.clone(),
                    expected,
                    found: t.values.len(),
                });
            }
        }
        Ok(Operations {
            carrier: set,
            tables,
        })
    }

    /// Checks that the tables cover exactly the symbols of `sig`.
    pub fn check_signature(&self, sig: &Signature) -> Result<(), AlgebraError> {
        for (name, arity) in sig.symbols() {
            match self.table(name) {
                None => return Err(AlgebraError::MissingTable(name.clone())),
                Some(t) if t.arity != arity => {
                    return Err(AlgebraError::ArityMismatch {
                        symbol: name.clone(),
                        expected: arity,
                        found: t.arity,
                    })
                }
                Some(_) => {}
            }
        }
        match self.tables.iter().find(|(n, _)| sig.arity(n).is_none()) {
            Some((n, _)) => Err(AlgebraError::UnknownSymbol(n.clone())),
            None => Ok(()),
        }
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> impl ExactSizeIterator<Item = &Name> {
        self.carrier.iter()
    }

    pub fn element(&self, i: usize) -> &Name {
        &self.carrier[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.carrier.get_index_of(name)
    }

    pub fn tables(&self) -> &[(Name, OpTable)] {
        &self.tables
    }

    pub fn table(&self, symbol: &str) -> Option<&OpTable> {
        self.symbol_index(symbol).map(|i| &self.tables[i].1)
    }

    pub fn symbol_index(&self, symbol: &str) -> Option<usize> {
        self.tables
            .binary_search_by(|(n, _)| (**n).cmp(symbol))
            .ok()
    }

    pub fn apply(&self, symbol: usize, args: &[usize]) -> usize {
        self.tables[symbol].1.apply(args)
    }

    pub fn arities(&self) -> Vec<(Name, usize)> {
        self.tables
            .iter()
            .map(|(n, t)| (n.clone(), t.arity))
            .collect()
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.arities(), Vec::<Name>::new()).expect("symbol names are unique")
    }

    pub fn same_signature(&self, other: &Operations) -> bool {
        self.arities() == other.arities()
    }

    /// Every tuple of arguments for `symbol`, with its result.
    pub fn entries(&self, symbol: usize) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        let t = &self.tables[symbol].1;
        let mut tuples = Vec::with_capacity(t.values.len());
        crate::logic::for_each_map(t.arity, self.size(), |args| {
            tuples.push(args.to_vec());
            true
        });
        tuples.into_iter().map(move |args| {
            let v = t.apply(&args);
            (args, v)
        })
    }

    /// The least operation-closed superset of `seed`, as a membership mask.
    pub fn closure(&self, seed: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut mask = vec![false; self.size()];
        for s in seed {
            mask[s] = true;
        }
        loop {
            let members: Vec<usize> = (0..self.size()).filter(|&i| mask[i]).collect();
            let mut changed = false;
            for (_, t) in &self.tables {
                crate::logic::for_each_map(t.arity, members.len(), |pick| {
                    let args: Vec<usize> = pick.iter().map(|&p| members[p]).collect();
                    let v = t.apply(&args);
                    if !mask[v] {
                        mask[v] = true;
                        changed = true;
                    }
                    true
                });
            }
            if !changed {
                return mask;
            }
        }
    }

    /// The first operation application that leaves `subset`.
    pub fn escape(&self, subset: &[usize]) -> Option<AlgebraError> {
        let mask: BTreeSet<usize> = subset.iter().copied().collect();
        for (name, t) in &self.tables {
            let mut found = None;
            crate::logic::for_each_map(t.arity, subset.len(), |pick| {
                let args: Vec<usize> = pick.iter().map(|&p| subset[p]).collect();
                let v = t.apply(&args);
                if !mask.contains(&v) {
                    found = Some(AlgebraError::NotClosed {
                        symbol: name.clone(),
                        args: join(args.iter().map(|&a| self.element(a))),
                        escape: self.element(v).clone(),
                    });
                    return false;
                }
                true
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// The operations induced on `subset`, whose elements keep their order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Operations, AlgebraError> {
        if let Some(e) = self.escape(subset) {
            return Err(e);
        }
        let position: BTreeMap<usize, usize> =
            subset.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let tables = self
            .tables
            .iter()
            .map(|(name, t)| {
                let table = OpTable::from_fn(t.arity, subset.len(), |pick| {
                    let args: Vec<usize> = pick.iter().map(|&p| subset[p]).collect();
                    position[&t.apply(&args)]
                });
                (name.clone(), table)
            })
            .collect();
        Operations::new(subset.iter().map(|&i| self.element(i).clone()), tables)
    }

    /// A pair of argument tuples related by `classes` whose images are not.
    pub fn congruence_violation(&self, classes: &[usize]) -> Option<AlgebraError> {
        for (k, (name, _)) in self.tables.iter().enumerate() {
            let entries: Vec<(Vec<usize>, usize)> = self.entries(k).collect();
            for (i, (xs, u)) in entries.iter().enumerate() {
                for (ys, v) in &entries[i + 1..] {
                    let related = xs.iter().zip(ys).all(|(&a, &b)| classes[a] == classes[b]);
                    if related && classes[*u] != classes[*v] {
                        return Some(AlgebraError::NotCongruence {
                            symbol: name.clone(),
                            left: join(xs.iter().map(|&a| self.element(a))),
                            right: join(ys.iter().map(|&a| self.element(a))),
                        });
                    }
                }
            }
        }
        None
    }

    /// Operations on the classes of a congruence, represented by class
    /// labels `0..k` where `classes` maps each element to its label and the
    /// labels are dense. Class names are the names of the least members.
    pub fn quotient(&self, classes: &[usize]) -> Result<(Operations, Vec<usize>), AlgebraError> {
        if let Some(e) = self.congruence_violation(classes) {
            return Err(e);
        }
        let k = classes.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut rep = vec![usize::MAX; k];
        for (i, &c) in classes.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = i;
            }
        }
        let tables = self
            .tables
            .iter()
            .map(|(name, t)| {
                let table = OpTable::from_fn(t.arity, k, |pick| {
                    let args: Vec<usize> = pick.iter().map(|&p| rep[p]).collect();
                    classes[t.apply(&args)]
                });
                (name.clone(), table)
            })
            .collect();
        let ops = Operations::new(rep.iter().map(|&r| self.element(r).clone()), tables)?;
        Ok((ops, rep))
    }

    /// Evaluates `t` with variables bound by name.
    pub fn evaluate(&self, assignment: &Assignment, t: &Term) -> Result<usize, AlgebraError> {
        match t {
            Term::Var(v) => assignment
                .get(v)
                .copied()
                .ok_or_else(|| AlgebraError::UnboundVariable(v.clone())),
            Term::App(f, args) => {
                let k = self
                    .symbol_index(f)
                    .ok_or_else(|| AlgebraError::UnknownSymbol(f.clone()))?;
                let table = &self.tables[k].1;
                if table.arity != args.len() {
                    return Err(AlgebraError::ArityMismatch {
                        symbol: f.clone(),
                        expected: table.arity,
                        found: args.len(),
                    });
                }
                let vals = args
                    .iter()
                    .map(|a| self.evaluate(assignment, a))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(table.apply(&vals))
            }
        }
    }
}

/// Variables bound to carrier indices.
pub type Assignment = BTreeMap<Name, usize>;

/// A symmetric `size × size` matrix of extended distances.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistanceMatrix<S> {
    size: usize,
    values: Vec<Extended<S>>,
}

impl<S: Scalar> DistanceMatrix<S> {
    /// Zero on the diagonal, `∞` elsewhere.
    pub fn new(size: usize) -> Self {
        let mut values = vec![Extended::Infinite; size * size];
        for i in 0..size {
            values[i * size + i] = Extended::zero();
        }
        DistanceMatrix { size, values }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Extended<S>) -> Self {
        let mut values = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                values.push(f(i, j));
            }
        }
        DistanceMatrix { size, values }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Extended<S> {
        &self.values[i * self.size + j]
    }

    /// Sets both orientations.
    pub fn set(&mut self, i: usize, j: usize, v: Extended<S>) {
        self.values[i * self.size + j] = v.clone();
        self.values[j * self.size + i] = v;
    }

    pub fn restrict(&self, subset: &[usize]) -> Self {
        Self::from_fn(subset.len(), |i, j| self.get(subset[i], subset[j]).clone())
    }

    /// Zero diagonal, symmetric, and triangle inequality.
    pub fn pseudometric_violation(&self) -> Option<String> {
        let n = self.size;
        for i in 0..n {
            if !self.get(i, i).is_zero() {
                return Some(format!("d({i},{i}) = {}", self.get(i, i)));
            }
            for j in 0..n {
                if self.get(i, j) != self.get(j, i) {
                    return Some(format!("d({i},{j}) != d({j},{i})"));
                }
                for k in 0..n {
                    if *self.get(i, j) > self.get(i, k) + self.get(k, j) {
                        return Some(format!("d({i},{j}) > d({i},{k}) + d({k},{j})"));
                    }
                }
            }
        }
        None
    }
}

/// One way a candidate algebra fails to be a quantitative algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation<S> {
    NonzeroSelfDistance {
        element: Name,
        distance: Extended<S>,
    },
    ZeroDistance {
        left: Name,
        right: Name,
    },
    Asymmetric {
        left: Name,
        right: Name,
    },
    Triangle {
        left: Name,
        middle: Name,
        right: Name,
    },
    Expansive {
        symbol: Name,
        left: Vec<Name>,
        right: Vec<Name>,
    },
}

impl<S: fmt::Display> fmt::Display for Violation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonzeroSelfDistance { element, distance } => {
                write!(f, "d({element}, {element}) = {distance}")
            }
            Violation::ZeroDistance { left, right } => {
                write!(f, "d({left}, {right}) = 0 for distinct elements")
            }
            Violation::Asymmetric { left, right } => {
                write!(f, "d({left}, {right}) != d({right}, {left})")
            }
            Violation::Triangle {
                left,
                middle,
                right,
            } => {
                write!(
                    f,
                    "d({left}, {right}) > d({left}, {middle}) + d({middle}, {right})"
                )
            }
            Violation::Expansive {
                symbol,
                left,
                right,
            } => write!(
                f,
                "{symbol}({}) and {symbol}({}) are further apart than their arguments",
                join(left),
                join(right)
            ),
        }
    }
}

/// A finite quantitative algebra. Construction only checks shapes; call
/// [`QuantAlgebra::validate`] for the metric and non-expansiveness axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantAlgebra<S> {
    ops: Operations,
    dist: DistanceMatrix<S>,
}

impl<S: Scalar> QuantAlgebra<S> {
    pub fn new(ops: Operations, dist: DistanceMatrix<S>) -> Result<Self, AlgebraError> {
        if ops.size() != dist.size() {
            return Err(AlgebraError::SizeMismatch {
                expected: ops.size(),
                found: dist.size(),
            });
        }
        Ok(QuantAlgebra { ops, dist })
    }

    /// [`QuantAlgebra::new`] followed by validation.
    pub fn validated(ops: Operations, dist: DistanceMatrix<S>) -> Result<Self, AlgebraError> {
        let a = Self::new(ops, dist)?;
        match a.validate().first() {
            Some(v) => Err(AlgebraError::Invalid(v.to_string())),
            None => Ok(a),
        }
    }

    /// The one-point algebra over the given signature.
    pub fn degenerate(sig: &Signature, element: &str) -> Self {
        let tables = sig
            .symbols()
            .map(|(n, k)| (n.clone(), OpTable::from_fn(k, 1, |_| 0)))
            .collect();
        let ops = Operations::new([Name::from(element)], tables).expect("one element");
        QuantAlgebra {
            ops,
            dist: DistanceMatrix::new(1),
        }
    }

    pub fn ops(&self) -> &Operations {
        &self.ops
    }

    pub fn distances(&self) -> &DistanceMatrix<S> {
        &self.dist
    }

    pub fn into_parts(self) -> (Operations, DistanceMatrix<S>) {
        (self.ops, self.dist)
    }

    pub fn size(&self) -> usize {
        self.ops.size()
    }

    pub fn element(&self, i: usize) -> &Name {
        self.ops.element(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.index_of(name)
    }

    pub fn distance(&self, i: usize, j: usize) -> &Extended<S> {
        self.dist.get(i, j)
    }

    /// Every violated axiom, in a fixed order: metric axioms first, then
    /// non-expansiveness per operation.
    pub fn validate(&self) -> Vec<Violation<S>> {
        let n = self.size();
        let name = |i: usize| self.element(i).clone();
        let mut out = Vec::new();
        for i in 0..n {
            if !self.distance(i, i).is_zero() {
                out.push(Violation::NonzeroSelfDistance {
                    element: name(i),
                    distance: self.distance(i, i).clone(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.distance(i, j).is_zero() || self.distance(j, i).is_zero() {
                    out.push(Violation::ZeroDistance {
                        left: name(i),
                        right: name(j),
                    });
                }
                if self.distance(i, j) != self.distance(j, i) {
                    out.push(Violation::Asymmetric {
                        left: name(i),
                        right: name(j),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if *self.distance(i, j) > self.distance(i, k) + self.distance(k, j) {
                        out.push(Violation::Triangle {
                            left: name(i),
                            middle: name(k),
                            right: name(j),
                        });
                    }
                }
            }
        }
        for k in 0..self.ops.tables.len() {
            if let Some((xs, ys)) = self.expansive_pair(k) {
                out.push(Violation::Expansive {
                    symbol: self.ops.tables[k].0.clone(),
                    left: xs.into_iter().map(name).collect(),
                    right: ys.into_iter().map(name).collect(),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The first pair of argument tuples whose images are further apart
    /// than the arguments.
    fn expansive_pair(&self, symbol: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let entries: Vec<(Vec<usize>, usize)> = self.ops.entries(symbol).collect();
        for (i, (xs, u)) in entries.iter().enumerate() {
            for (ys, v) in &entries[i + 1..] {
                let spread = xs
                    .iter()
                    .zip(ys)
                    .map(|(&a, &b)| self.distance(a, b))
                    .max()
                    .cloned()
                    .unwrap_or_else(Extended::zero);
                if *self.distance(*u, *v) > spread {
                    return Some((xs.clone(), ys.clone()));
                }
            }
        }
        None
    }

    pub fn evaluate(&self, assignment: &Assignment, t: &Term) -> Result<usize, AlgebraError> {
        self.ops.evaluate(assignment, t)
    }

    /// The first assignment, in odometer order over the equation's
    /// variables, under which the hypotheses hold and the conclusion fails.
    pub fn find_violation(
        &self,
        ce: &ConditionalEquation<S>,
    ) -> Result<Option<Counterexample<S>>, AlgebraError> {
        let vars = ce.variables();
        let mut checker = SatisfactionChecker::new(self, vars, DEFAULT_ASSIGNMENT_CAP)?;
        checker.find_violation(ce)
    }

    pub fn satisfies(&self, ce: &ConditionalEquation<S>) -> Result<bool, AlgebraError> {
        Ok(self.find_violation(ce)?.is_none())
    }

    pub fn satisfies_theory(
        &self,
        axioms: &[ConditionalEquation<S>],
    ) -> Result<bool, AlgebraError> {
        for ax in axioms {
            if !self.satisfies(ax)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subalgebra induced on a closed subset, keeping the subset's order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self, AlgebraError> {
        Ok(QuantAlgebra {
            ops: self.ops.restrict(subset)?,
            dist: self.dist.restrict(subset),
        })
    }

    /// The same algebra with elements listed in the order `perm`, so that
    /// new element `i` is old element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.restrict(perm).expect("a permutation is closed")
    }
}

/// Assignment under which a conditional equation fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample<S> {
    /// Variable to element name, in the equation's variable order.
    pub assignment: Vec<(Name, Name)>,
    pub violated: QuantEquation<S>,
    pub distance: Extended<S>,
}

impl<S: fmt::Display> fmt::Display for Counterexample<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.assignment.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} := {e}")?;
        }
        write!(
            f,
            "; d({}, {}) = {} > {}",
            self.violated.left, self.violated.right, self.distance, self.violated.bound
        )
    }
}

/// The 0/1 pseudometric whose kernel is the congruence with class labels
/// `classes`.
pub fn congruence_to_pseudometric<S: Scalar>(
    ops: &Operations,
    classes: &[usize],
) -> Result<DistanceMatrix<S>, AlgebraError> {
    if classes.len() != ops.size() {
        return Err(AlgebraError::SizeMismatch {
            expected: ops.size(),
            found: classes.len(),
        });
    }
    if let Some(e) = ops.congruence_violation(classes) {
        return Err(e);
    }
    Ok(DistanceMatrix::from_fn(ops.size(), |i, j| {
        if classes[i] == classes[j] {
            Extended::zero()
        } else {
            Extended::one()
        }
    }))
}
