use std::collections::BTreeMap;

use crate::algebra::{AlgebraError, Assignment, DistanceMatrix, OpTable, Operations, QuantAlgebra};
use crate::logic::TermUniverse;
use crate::scalar::{Extended, Scalar};
use crate::term::{Name, Signature, Term};

/// A pseudometric candidate on a finite term set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudometricTable<S> {
    universe: TermUniverse,
    values: DistanceMatrix<S>,
}

impl<S: Scalar> PseudometricTable<S> {
    pub fn new(universe: TermUniverse, values: DistanceMatrix<S>) -> Result<Self, AlgebraError> {
        if universe.len() != values.size() {
            return Err(AlgebraError::SizeMismatch {
                expected: universe.len(),
                found: values.size(),
            });
        }
        Ok(PseudometricTable { universe, values })
    }

    pub fn universe(&self) -> &TermUniverse {
        &self.universe
    }

    pub fn values(&self) -> &DistanceMatrix<S> {
        &self.values
    }

    pub fn get(&self, s: &Term, t: &Term) -> Option<&Extended<S>> {
        Some(
            self.values
                .get(self.universe.index_of(s)?, self.universe.index_of(t)?),
        )
    }

    /// Metric axioms without separation, plus non-expansiveness on every
    /// pair of applications inside the universe.
    pub fn violation(&self) -> Option<String> {
        if let Some(v) = self.values.pseudometric_violation() {
            return Some(v);
        }
        let terms = self.universe.terms();
        for (i, a) in terms.iter().enumerate() {
            for (j, b) in terms.iter().enumerate() {
                if let (Term::App(f, xs), Term::App(g, ys)) = (a, b) {
                    if f != g || xs.len() != ys.len() {
                        continue;
                    }
                    let spread = xs
                        .iter()
                        .zip(ys)
                        .map(|(x, y)| self.get(x, y).cloned().unwrap_or(Extended::Infinite))
                        .max()
                        .unwrap_or_else(Extended::zero);
                    if *self.values.get(i, j) > spread {
                        return Some(format!("`{f}` expands the distance between {a} and {b}"));
                    }
                }
            }
        }
        None
    }

    /// Kernel class of every term, numbered by first occurrence.
    pub fn kernel_classes(&self) -> Vec<usize> {
        kernel(&self.values)
    }
}

fn kernel<S: Scalar>(d: &DistanceMatrix<S>) -> Vec<usize> {
    let n = d.size();
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if class[i] != usize::MAX {
            continue;
        }
        for (j, c) in class.iter_mut().enumerate().skip(i) {
            if *c == usize::MAX && d.get(i, j).is_zero() {
                *c = next;
            }
        }
        next += 1;
    }
    class
}

/// `p(s, t) = d(α s, α t)` on the universe.
pub fn pseudometric_from_assignment<S: Scalar>(
    algebra: &QuantAlgebra<S>,
    assignment: &Assignment,
    universe: &TermUniverse,
) -> Result<PseudometricTable<S>, AlgebraError> {
    let values = universe
        .terms()
        .iter()
        .map(|t| algebra.evaluate(assignment, t))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = DistanceMatrix::from_fn(values.len(), |i, j| {
        algebra.distance(values[i], values[j]).clone()
    });
    PseudometricTable::new(universe.clone(), matrix)
}

/// The quotient of a term set by the kernel of a pseudometric, with each
/// term's class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermQuotient<S> {
    pub algebra: QuantAlgebra<S>,
    pub universe: TermUniverse,
    pub class_of: Vec<usize>,
}

impl<S: Scalar> TermQuotient<S> {
    pub fn class(&self, t: &Term) -> Option<usize> {
        self.universe.index_of(t).map(|i| self.class_of[i])
    }
}

/// Classes of `ker p` become elements, named after their least term. Each
/// operation entry must be witnessed by an application lying in the
/// universe; a missing witness is reported as an error.
pub fn quotient_by_pseudometric<S: Scalar>(
    sig: &Signature,
    p: &PseudometricTable<S>,
) -> Result<TermQuotient<S>, AlgebraError> {
    if let Some(v) = p.violation() {
        return Err(AlgebraError::NotPseudometric(v));
    }
    let universe = p.universe();
    let class_of = p.kernel_classes();
    let k = class_of.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut rep = vec![usize::MAX; k];
    for (i, &c) in class_of.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = i;
        }
    }
    let mut tables = Vec::new();
    for (name, arity) in sig.symbols() {
        let mut entries: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (i, t) in universe.terms().iter().enumerate() {
            if let Term::App(f, args) = t {
                if f != name {
                    continue;
                }
                let key: Vec<usize> = args
                    .iter()
                    .map(|a| class_of[universe.index_of(a).expect("universe is subterm-closed")])
                    .collect();
                entries.entry(key).or_insert(class_of[i]);
            }
        }
        let mut missing = None;
        let table = OpTable::from_fn(arity, k, |args| match entries.get(args) {
            Some(&v) => v,
            None => {
                missing.get_or_insert_with(|| args.to_vec());
                0
            }
        });
        if let Some(args) = missing {
            let shown: Vec<String> = args
                .iter()
                .map(|&c| universe.terms()[rep[c]].to_string())
                .collect();
            return Err(AlgebraError::MissingEntry {
                symbol: name.clone(),
                args: shown.join(", "),
            });
        }
        tables.push((name.clone(), table));
    }
    let names = rep
        .iter()
        .map(|&r| Name::from(universe.terms()[r].to_string()));
    let ops = Operations::new(names, tables)?;
    let dist = p.values().restrict(&rep);
    Ok(TermQuotient {
        algebra: QuantAlgebra::new(ops, dist)?,
        universe: universe.clone(),
        class_of,
    })
}

/// Quotient of a finite algebra by a pseudometric on its carrier. Returns
/// the quotient and each element's class.
pub fn quotient_algebra<S: Scalar>(
    ops: &Operations,
    p: &DistanceMatrix<S>,
) -> Result<(QuantAlgebra<S>, Vec<usize>), AlgebraError> {
    if p.size() != ops.size() {
        return Err(AlgebraError::SizeMismatch {
            expected: ops.size(),
            found: p.size(),
        });
    }
    if let Some(v) = p.pseudometric_violation() {
        return Err(AlgebraError::NotPseudometric(v));
    }
    let classes = kernel(p);
    let (qops, rep) = ops.quotient(&classes)?;
    let q = QuantAlgebra::new(qops, p.restrict(&rep))?;
    if let Some(v) = q.validate().first() {
        return Err(AlgebraError::Invalid(v.to_string()));
    }
    Ok((q, classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::congruence_to_pseudometric;
    use crate::algebra::tests::two_point;
    use crate::constructions::generated_subalgebra;
    use crate::term::enumerate_terms;
    use crate::Rational;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }

    fn alpha(pairs: &[(&str, usize)]) -> Assignment {
        pairs.iter().map(|(v, e)| (Name::from(*v), *e)).collect()
    }

    #[test]
    fn assignment_pseudometrics() {
        let a = two_point(1, [1, 0]);
        let u = TermUniverse::closure([&x(), &y()]);
        let p = pseudometric_from_assignment(&a, &alpha(&[("x", 0), ("y", 1)]), &u).unwrap();
        assert_eq!(
            p.get(&x(), &y()),
            Some(&Extended::Finite(Rational::from_integer(1)))
        );
        assert!(p.get(&x(), &x()).unwrap().is_zero());
        let p = pseudometric_from_assignment(&a, &alpha(&[("x", 0), ("y", 0)]), &u).unwrap();
        assert!(p.get(&x(), &y()).unwrap().is_zero());
    }

    #[test]
    fn quotient_by_an_assignment_matches_the_image() {
        let a = two_point(1, [1, 0]);
        let sig = Signature::from_strs(&[("f", 1)], &["x"]);
        let terms = enumerate_terms(&sig, &["x".into()], 3, 100).unwrap();
        let u = TermUniverse::closure(&terms);
        let p = pseudometric_from_assignment(&a, &alpha(&[("x", 0)]), &u).unwrap();
        let q = quotient_by_pseudometric(&sig, &p).unwrap();
        let image = generated_subalgebra(&a, &[0]).unwrap().sub;
        assert_eq!(q.algebra.size(), image.size());
        assert!(q.algebra.is_valid());
        // the class of s goes to α(s)
        for t in &terms {
            let c = q.class(t).unwrap();
            let back = a.evaluate(
                &alpha(&[("x", 0)]),
                &u.terms()[p.kernel_classes().iter().position(|&k| k == c).unwrap()],
            );
            assert_eq!(back, a.evaluate(&alpha(&[("x", 0)]), t));
        }
    }

    #[test]
    fn missing_witnesses_are_reported() {
        let a = two_point(1, [1, 0]);
        let sig = Signature::from_strs(&[("f", 1)], &["x"]);
        let u = TermUniverse::closure([&Term::app("f", vec![x()])]);
        let p = pseudometric_from_assignment(&a, &alpha(&[("x", 0)]), &u).unwrap();
        assert!(matches!(
            quotient_by_pseudometric(&sig, &p),
            Err(AlgebraError::MissingEntry { .. })
        ));
    }

    #[test]
    fn discrete_pseudometric_gives_singletons() {
        let a = two_point(1, [1, 0]);
        let d: DistanceMatrix<Rational> = congruence_to_pseudometric(a.ops(), &[0, 1]).unwrap();
        let (q, classes) = quotient_algebra(a.ops(), &d).unwrap();
        assert_eq!(classes, vec![0, 1]);
        assert_eq!(q.size(), 2);
        let d: DistanceMatrix<Rational> = congruence_to_pseudometric(a.ops(), &[0, 0]).unwrap();
        assert_eq!(quotient_algebra(a.ops(), &d).unwrap().0.size(), 1);
    }
}
