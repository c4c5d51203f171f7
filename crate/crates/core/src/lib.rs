//! Quantitative equational logic over finite algebras.
//!
//! The crate is generic over the distance scalar (see [`Scalar`]); the
//! aliases at the root fix it to exact rationals, which is what the command
//! line tool and the test suites use.

pub mod algebra;
pub mod constructions;
pub mod dsl;
pub mod logic;
pub mod qfo;
pub mod scalar;
pub mod term;

pub use algebra::{
    congruence_to_pseudometric, AlgebraError, Assignment, Counterexample, DistanceMatrix,
    HomViolation, Homomorphism, OpTable, Operations, QuantAlgebra, SatisfactionChecker, Violation,
};
pub use logic::{
    build_universe, check_proof, is_consistent_probe, least_derivable_distance, BasicClass,
    ConditionalEquation, DerivedDistanceTable, LogicError, Proof, ProofError, ProofStep,
    QuantEquation, Rule, TermUniverse, UniverseBudget,
};
pub use qfo::{
    check_qfo_axioms, conditional_of_horn, eval_horn, horn_of_conditional, reduced_product,
    to_algebra, to_qfo, Atom, FilterSpec, HornFormula, QfoError, Threshold, ThresholdStructure,
};
pub use scalar::{Extended, Scalar};
pub use term::{
    apply_substitution, enumerate_terms, Name, Signature, Substitution, Term, TermError,
};

/// Exact rational distances.
pub type Rational = num_rational::Ratio<i64>;
/// A rational distance or `∞`.
pub type Distance = Extended<Rational>;
pub type Equation = QuantEquation<Rational>;
pub type Conditional = ConditionalEquation<Rational>;
pub type Algebra = QuantAlgebra<Rational>;
pub type Hom = Homomorphism<Rational>;
pub type DistanceTable = DerivedDistanceTable<Rational>;
