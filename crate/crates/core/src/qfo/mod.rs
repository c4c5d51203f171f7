//! Quantitative first-order structures: carriers with operations and a
//! family of relations `=_ε`, one per non-negative rational `ε`.
//!
//! Each relation family is up-closed in `ε`, so per pair it is either empty,
//! a closed ray `[b, ∞)` or an open ray `(b, ∞)`. [`Threshold`] stores that
//! shape.

mod horn;
mod product;

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, DistanceMatrix, Operations, QuantAlgebra};
use crate::scalar::{Extended, Scalar};
use crate::term::Name;

pub use horn::{conditional_of_horn, eval_horn, horn_of_conditional, Atom, HornFormula};
pub use product::{find_embedding, is_subreduced_product, reduced_product, subobject, FilterSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QfoError {
    #[error("axiom ({axiom}) fails: {witness}")]
    Axiom { axiom: u8, witness: String },
    #[error("the filter generator is empty, so the filter is improper")]
    ImproperFilter,
    #[error("filter index {index} is outside 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("expected {expected} structures, got {found}")]
    FamilySize { expected: usize, found: usize },
    #[error("no conditional equation expresses {0}")]
    Untranslatable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The set `{ε | m =_ε n}` for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Threshold<S> {
    /// Related at no `ε`.
    Never,
    /// Related at every `ε > bound`, and at `bound` itself when closed.
    From { bound: S, closed: bool },
}

impl<S: Scalar> Threshold<S> {
    pub fn closed(bound: S) -> Self {
        Threshold::From {
            bound,
            closed: true,
        }
    }

    pub fn open(bound: S) -> Self {
        Threshold::From {
            bound,
            closed: false,
        }
    }

    pub fn from_distance(d: &Extended<S>) -> Self {
        match d {
            Extended::Finite(b) => Threshold::closed(b.clone()),
            Extended::Infinite => Threshold::Never,
        }
    }

    /// The infimum of the set, `∞` when empty.
    pub fn infimum(&self) -> Extended<S> {
        match self {
            Threshold::Never => Extended::Infinite,
            Threshold::From { bound, .. } => Extended::Finite(bound.clone()),
        }
    }

    pub fn is_closed(&self) -> bool {
        !matches!(self, Threshold::From { closed: false, .. })
    }

    pub fn contains(&self, eps: &S) -> bool {
        match self {
            Threshold::Never => false,
            Threshold::From { bound, closed } => bound < eps || (bound == eps && *closed),
        }
    }

    /// Set intersection.
    pub fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (
                Threshold::From {
                    bound: a,
                    closed: p,
                },
                Threshold::From {
                    bound: b,
                    closed: q,
                },
            ) => {
                if a == b {
                    Threshold::From {
                        bound: a.clone(),
                        closed: *p && *q,
                    }
                } else if a > b {
                    self.clone()
                } else {
                    other.clone()
                }
            }
            _ => Threshold::Never,
        }
    }

    /// `{ε + δ | ε ∈ self, δ ∈ other}`, the relation composite.
    pub fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (
                Threshold::From {
                    bound: a,
                    closed: p,
                },
                Threshold::From {
                    bound: b,
                    closed: q,
                },
            ) => Threshold::From {
                bound: a.clone() + b.clone(),
                closed: *p && *q,
            },
            _ => Threshold::Never,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        match (self, other) {
            (Threshold::Never, _) => true,
            (_, Threshold::Never) => false,
            (
                Threshold::From {
                    bound: a,
                    closed: p,
                },
                Threshold::From {
                    bound: b,
                    closed: q,
                },
            ) => a > b || (a == b && (*q || !*p)),
        }
    }
}

impl<S: fmt::Display> fmt::Display for Threshold<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Never => f.write_str("infinite"),
            Threshold::From { bound, closed } => {
                write!(
                    f,
                    "bound {bound} {}",
                    if *closed { "closed" } else { "open" }
                )
            }
        }
    }
}

/// A finite carrier with operations and a threshold per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdStructure<S> {
    ops: Operations,
    relation: Vec<Threshold<S>>,
}

impl<S: Scalar> ThresholdStructure<S> {
    /// `relation` is row-major over the carrier.
    pub fn new(ops: Operations, relation: Vec<Threshold<S>>) -> Result<Self, QfoError> {
        let n = ops.size();
        if relation.len() != n * n {
            return Err(AlgebraError::SizeMismatch {
                expected: n * n,
                found: relation.len(),
            }
            .into());
        }
        Ok(ThresholdStructure { ops, relation })
    }

    pub fn from_fn(ops: Operations, mut f: impl FnMut(usize, usize) -> Threshold<S>) -> Self {
        let n = ops.size();
        let relation = (0..n * n).map(|k| f(k / n, k % n)).collect();
        ThresholdStructure { ops, relation }
    }

    pub fn ops(&self) -> &Operations {
        &self.ops
    }

    pub fn size(&self) -> usize {
        self.ops.size()
    }

    pub fn element(&self, i: usize) -> &Name {
        self.ops.element(i)
    }

    pub fn get(&self, i: usize, j: usize) -> &Threshold<S> {
        &self.relation[i * self.size() + j]
    }

    pub fn related(&self, i: usize, j: usize, eps: &S) -> bool {
        self.get(i, j).contains(eps)
    }
}

/// Outcome of checking one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: u8,
    /// `None` when the axiom holds.
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks the six axioms in order:
/// (1) `=_0` is the identity; (2) symmetry; (3) `=_ε ∘ =_δ ⊆ =_{ε+δ}`;
/// (4) up-closure, which the encoding guarantees; (5) every operation maps
/// argumentwise `=_ε`-related tuples to `=_ε`-related results;
/// (6) `⋂_{ε>δ} =_ε ⊆ =_δ`, i.e. every threshold is closed.
pub fn check_qfo_axioms<S: Scalar>(m: &ThresholdStructure<S>) -> [AxiomCheck; 6] {
    let n = m.size();
    let name = |i: usize| m.element(i);
    let zero = S::zero();
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));

    let identity = pairs().find_map(|(i, j)| {
        let at_zero = m.related(i, j, &zero);
        if i == j && !at_zero {
            Some(format!("{} =_0 {} fails", name(i), name(i)))
        } else if i != j && at_zero {
            Some(format!(
                "{} =_0 {} holds for distinct elements",
                name(i),
                name(j)
            ))
        } else {
            None
        }
    });
    let symmetry = pairs().find_map(|(i, j)| {
        (m.get(i, j) != m.get(j, i)).then(|| {
            format!(
                "({}, {}) is {} but ({}, {}) is {}",
                name(i),
                name(j),
                m.get(i, j),
                name(j),
                name(i),
                m.get(j, i)
            )
        })
    });
    let triangle = pairs()
        .flat_map(|(i, k)| (0..n).map(move |j| (i, k, j)))
        .find_map(|(i, k, j)| {
            let via = m.get(i, k).compose(m.get(k, j));
            (!via.is_subset(m.get(i, j))).then(|| {
                format!(
                    "({}, {}) and ({}, {}) compose to {} but ({}, {}) is {}",
                    name(i),
                    name(k),
                    name(k),
                    name(j),
                    via,
                    name(i),
                    name(j),
                    m.get(i, j)
                )
            })
        });
    let nonexpansive = {
        let mut witness = None;
        'ops: for (k, (symbol, _)) in m.ops().tables().iter().enumerate() {
            let entries: Vec<(Vec<usize>, usize)> = m.ops().entries(k).collect();
            for (xs, u) in &entries {
                for (ys, v) in &entries {
                    let joint = xs
                        .iter()
                        .zip(ys)
                        .fold(Threshold::closed(S::zero()), |acc, (&a, &b)| {
                            acc.meet(m.get(a, b))
                        });
                    if !joint.is_subset(m.get(*u, *v)) {
                        let show = |t: &[usize]| {
                            t.iter()
                                .map(|&a| name(a).to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        };
                        witness = Some(format!(
                            "arguments ({}) and ({}) are related at {} but {symbol} maps them to {}",
                            show(xs),
                            show(ys),
                            joint,
                            m.get(*u, *v)
                        ));
                        break 'ops;
                    }
                }
            }
        }
        witness
    };
    let archimedean = pairs().find_map(|(i, j)| {
        (!m.get(i, j).is_closed()).then(|| format!("({}, {}) is {}", name(i), name(j), m.get(i, j)))
    });
    [
        AxiomCheck {
            axiom: 1,
            witness: identity,
        },
        AxiomCheck {
            axiom: 2,
            witness: symmetry,
        },
        AxiomCheck {
            axiom: 3,
            witness: triangle,
        },
        AxiomCheck {
            axiom: 4,
            witness: None,
        },
        AxiomCheck {
            axiom: 5,
            witness: nonexpansive,
        },
        AxiomCheck {
            axiom: 6,
            witness: archimedean,
        },
    ]
}

/// `a =_ε b` iff `d(a, b) ≤ ε`.
pub fn to_qfo<S: Scalar>(a: &QuantAlgebra<S>) -> ThresholdStructure<S> {
    ThresholdStructure::from_fn(a.ops().clone(), |i, j| {
        Threshold::from_distance(a.distance(i, j))
    })
}

/// `d(m, n) = inf {ε | m =_ε n}`. Fails on the first violated axiom.
pub fn to_algebra<S: Scalar>(m: &ThresholdStructure<S>) -> Result<QuantAlgebra<S>, QfoError> {
    if let Some(fail) = check_qfo_axioms(m).into_iter().find(|c| !c.passed()) {
        return Err(QfoError::Axiom {
            axiom: fail.axiom,
            witness: fail.witness.unwrap(),
        });
    }
    let dist = DistanceMatrix::from_fn(m.size(), |i, j| m.get(i, j).infimum());
    Ok(QuantAlgebra::new(m.ops().clone(), dist)?)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::OpTable;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    pub(crate) fn two_point_structure(cross: Threshold<Rational>) -> ThresholdStructure<Rational> {
        let ops = Operations::new(["a".into(), "b".into()], vec![]).unwrap();
        ThresholdStructure::from_fn(ops, |i, j| {
            if i == j {
                Threshold::closed(q(0))
            } else {
                cross.clone()
            }
        })
    }

    #[test]
    fn threshold_algebra() {
        assert_eq!(
            Threshold::closed(q(1)).meet(&Threshold::open(q(1))),
            Threshold::open(q(1))
        );
        assert_eq!(
            Threshold::closed(q(1)).meet(&Threshold::closed(q(2))),
            Threshold::closed(q(2))
        );
        assert_eq!(
            Threshold::closed(q(1)).compose(&Threshold::open(q(2))),
            Threshold::open(q(3))
        );
        assert!(Threshold::open(q(1)).is_subset(&Threshold::closed(q(1))));
        assert!(!Threshold::closed(q(1)).is_subset(&Threshold::open(q(1))));
        assert!(Threshold::<Rational>::Never.is_subset(&Threshold::open(q(0))));
        assert!(Threshold::open(q(1)).contains(&Rational::new(3, 2)));
        assert!(!Threshold::open(q(1)).contains(&q(1)));
    }

    #[test]
    fn functor_images_pass_every_axiom() {
        let a = crate::algebra::tests::two_point(1, [1, 0]);
        let m = to_qfo(&a);
        assert!(check_qfo_axioms(&m).iter().all(AxiomCheck::passed));
        assert_eq!(*m.get(0, 1), Threshold::closed(q(1)));
        assert_eq!(to_algebra(&m).unwrap(), a);
    }

    #[test]
    fn open_flag_fails_only_the_last_axiom() {
        let m = two_point_structure(Threshold::open(q(1)));
        let failed: Vec<u8> = check_qfo_axioms(&m)
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.axiom)
            .collect();
        assert_eq!(failed, vec![6]);
        assert!(matches!(
            to_algebra(&m),
            Err(QfoError::Axiom { axiom: 6, .. })
        ));
    }

    #[test]
    fn zero_bound_between_distinct_elements_fails_identity() {
        let m = two_point_structure(Threshold::closed(q(0)));
        assert!(matches!(
            to_algebra(&m),
            Err(QfoError::Axiom { axiom: 1, .. })
        ));
    }

    #[test]
    fn expanding_operation_fails_nonexpansiveness() {
        // f swaps a pair at distance 1 onto a pair at distance 2.
        let ops = Operations::new(
            ["a".into(), "b".into(), "c".into()],
            vec![("f".into(), OpTable::new(1, 3, vec![0, 2, 2]).unwrap())],
        )
        .unwrap();
        let d = |i: usize, j: usize| match (i.min(j), i.max(j)) {
            (x, y) if x == y => Threshold::closed(q(0)),
            (0, 1) => Threshold::closed(q(1)),
            (0, 2) => Threshold::closed(q(2)),
            _ => Threshold::closed(q(1)),
        };
        let m = ThresholdStructure::from_fn(ops, d);
        let failed: Vec<u8> = check_qfo_axioms(&m)
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.axiom)
            .collect();
        assert_eq!(failed, vec![5]);
    }

    #[test]
    fn infinite_distance_is_never_related() {
        let ops = Operations::new(["a".into(), "b".into()], vec![]).unwrap();
        let a = QuantAlgebra::new(ops, DistanceMatrix::<Rational>::new(2)).unwrap();
        assert_eq!(*to_qfo(&a).get(0, 1), Threshold::Never);
    }
}
