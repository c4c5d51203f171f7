use std::collections::{BTreeSet, HashMap};

use super::{direct_product, product_coordinates, product_index};
use crate::algebra::{AlgebraError, Assignment, Homomorphism, QuantAlgebra};
use crate::logic::for_each_map;
use crate::scalar::{Extended, Scalar};
use crate::term::{enumerate_terms, Name, Signature, Term, DEFAULT_TERM_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalOptions {
    /// Depth of the term set on which `⟨t⟩` is tabulated.
    pub depth: usize,
    pub term_cap: usize,
    /// Keep one component per distinct assignment-induced pseudometric.
    /// Distances between terms do not change; the carrier shrinks.
    pub deduplicate: bool,
    /// Largest product carrier that will be built.
    pub max_product: usize,
}

impl Default for CanonicalOptions {
    fn default() -> Self {
        CanonicalOptions {
            depth: 2,
            term_cap: DEFAULT_TERM_CAP,
            deduplicate: false,
            max_product: 4096,
        }
    }
}

/// The image `α(TX)` inside one member of the class. It is isomorphic to
/// the term algebra quotiented by the pseudometric that `α` induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component<S> {
    pub member: usize,
    /// `α(x_i)` for each variable.
    pub assignment: Vec<usize>,
    pub algebra: QuantAlgebra<S>,
    /// Position of each component element in the member's carrier.
    pub embedding: Vec<usize>,
    /// A term denoting each component element.
    pub representatives: Vec<Term>,
    /// Further `(member, assignment)` pairs inducing the same pseudometric,
    /// merged into this component.
    pub merged: Vec<(usize, Vec<usize>)>,
}

/// Product over assignment-induced components, with `⟨t⟩` tabulated on a
/// depth-bounded term set.
#[derive(Debug, Clone)]
pub struct CanonicalModel<S> {
    signature: Signature,
    members: Vec<QuantAlgebra<S>>,
    components: Vec<Component<S>>,
    product: QuantAlgebra<S>,
    terms: Vec<Term>,
    gamma: HashMap<Term, usize>,
}

/// `sup |A|⁺` over the class, as a finite successor; `1` for the empty class.
pub fn r_of_k<S: Scalar>(members: &[QuantAlgebra<S>]) -> usize {
    members.iter().map(|a| a.size()).max().unwrap_or(0) + 1
}

fn assignment_map(vars: &[Name], values: &[usize]) -> Assignment {
    vars.iter().cloned().zip(values.iter().copied()).collect()
}

fn representatives<S: Scalar>(
    member: &QuantAlgebra<S>,
    vars: &[Name],
    values: &[usize],
) -> Vec<Option<Term>> {
    let ops = member.ops();
    let mut rep: Vec<Option<Term>> = vec![None; member.size()];
    for (v, &a) in vars.iter().zip(values) {
        if rep[a].is_none() {
            rep[a] = Some(Term::Var(v.clone()));
        }
    }
    loop {
        let mut changed = false;
        for (k, (name, table)) in ops.tables().iter().enumerate() {
            let known: Vec<usize> = (0..rep.len()).filter(|&i| rep[i].is_some()).collect();
            for_each_map(table.arity(), known.len(), |pick| {
                let args: Vec<usize> = pick.iter().map(|&p| known[p]).collect();
                let v = ops.apply(k, &args);
                if rep[v].is_none() {
                    let sub = args.iter().map(|&a| rep[a].clone().unwrap()).collect();
                    rep[v] = Some(Term::App(name.clone(), sub));
                    changed = true;
                }
                true
            });
        }
        if !changed {
            return rep;
        }
    }
}

/// Whether two assignments induce the same pseudometric on all terms: the
/// relation `{(α t, α' t)}` is generated from the variables and must be
/// isometric.
fn same_pseudometric<S: Scalar>(
    a: &QuantAlgebra<S>,
    alpha: &[usize],
    b: &QuantAlgebra<S>,
    beta: &[usize],
) -> bool {
    let mut rel: BTreeSet<(usize, usize)> =
        alpha.iter().copied().zip(beta.iter().copied()).collect();
    loop {
        let pairs: Vec<(usize, usize)> = rel.iter().copied().collect();
        let before = rel.len();
        for (k, (_, table)) in a.ops().tables().iter().enumerate() {
            for_each_map(table.arity(), pairs.len(), |pick| {
                let xs: Vec<usize> = pick.iter().map(|&p| pairs[p].0).collect();
                let ys: Vec<usize> = pick.iter().map(|&p| pairs[p].1).collect();
                rel.insert((a.ops().apply(k, &xs), b.ops().apply(k, &ys)));
                true
            });
        }
        if rel.len() == before {
            break;
        }
    }
    let pairs: Vec<(usize, usize)> = rel.into_iter().collect();
    pairs.iter().all(|&(x, y)| {
        pairs
            .iter()
            .all(|&(u, v)| a.distance(x, u) == b.distance(y, v))
    })
}

/// Builds the canonical model of the finite class `members` over `vars`.
pub fn canonical_model<S: Scalar>(
    sig: &Signature,
    members: &[QuantAlgebra<S>],
    vars: &[Name],
    options: CanonicalOptions,
) -> Result<CanonicalModel<S>, AlgebraError> {
    if members.is_empty() {
        return Err(AlgebraError::EmptyClass);
    }
    for m in members {
        m.ops().check_signature(sig)?;
    }
    let mut components: Vec<Component<S>> = Vec::new();
    for (mi, member) in members.iter().enumerate() {
        let mut values_list = Vec::new();
        for_each_map(vars.len(), member.size(), |values| {
            values_list.push(values.to_vec());
            true
        });
        for values in values_list {
            if options.deduplicate {
                if let Some(c) = components
                    .iter_mut()
                    .find(|c| same_pseudometric(member, &values, &members[c.member], &c.assignment))
                {
                    c.merged.push((mi, values));
                    continue;
                }
            }
            let reps = representatives(member, vars, &values);
            let embedding: Vec<usize> = (0..member.size()).filter(|&i| reps[i].is_some()).collect();
            let algebra = member.restrict(&embedding)?;
            components.push(Component {
                member: mi,
                representatives: embedding
                    .iter()
                    .map(|&i| reps[i].clone().unwrap())
                    .collect(),
                assignment: values,
                algebra,
                embedding,
                merged: Vec::new(),
            });
        }
    }
    let total = components
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.algebra.size()))
        .unwrap_or(usize::MAX);
    if total > options.max_product {
        return Err(AlgebraError::Budget {
            what: "product elements",
            cap: options.max_product,
        });
    }
    let factors: Vec<&QuantAlgebra<S>> = components.iter().map(|c| &c.algebra).collect();
    let product = direct_product(sig, &factors)?;

    let term_sig = sig.with_variables(vars.iter().cloned())?;
    let terms = enumerate_terms(&term_sig, vars, options.depth, options.term_cap)?;
    let sizes: Vec<usize> = components.iter().map(|c| c.algebra.size()).collect();
    let mut gamma = HashMap::with_capacity(terms.len());
    for t in &terms {
        let coords = components
            .iter()
            .map(|c| {
                let v = members[c.member].evaluate(&assignment_map(vars, &c.assignment), t)?;
                Ok(c.embedding
                    .binary_search(&v)
                    .expect("values of terms lie in the image"))
            })
            .collect::<Result<Vec<usize>, AlgebraError>>()?;
        gamma.insert(t.clone(), product_index(&sizes, &coords));
    }
    Ok(CanonicalModel {
        signature: term_sig,
        members: members.to_vec(),
        components,
        product,
        terms,
        gamma,
    })
}

impl<S: Scalar> CanonicalModel<S> {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn variables(&self) -> &[Name] {
        self.signature.variables()
    }

    pub fn members(&self) -> &[QuantAlgebra<S>] {
        &self.members
    }

    pub fn components(&self) -> &[Component<S>] {
        &self.components
    }

    pub fn product(&self) -> &QuantAlgebra<S> {
        &self.product
    }

    /// The depth-bounded terms on which `⟨·⟩` is defined.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `⟨t⟩` as a product element.
    pub fn gamma(&self, t: &Term) -> Option<usize> {
        self.gamma.get(t).copied()
    }

    /// `d^K(⟨s⟩, ⟨t⟩)`.
    pub fn distance(&self, s: &Term, t: &Term) -> Option<&Extended<S>> {
        Some(self.product.distance(self.gamma(s)?, self.gamma(t)?))
    }

    /// The component induced by `assignment` into `member`.
    pub fn component_of(&self, member: usize, assignment: &[usize]) -> Option<usize> {
        self.components.iter().position(|c| {
            (c.member == member && c.assignment == assignment)
                || c.merged
                    .iter()
                    .any(|(m, a)| *m == member && a == assignment)
        })
    }

    fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.algebra.size()).collect()
    }

    /// `β = ᾱ ∘ π`: project onto the component of `α`, then send each class
    /// to the value of its representative under `α`. Satisfies
    /// `β(⟨x⟩) = α(x)`.
    pub fn beta(
        &self,
        member: usize,
        assignment: &[usize],
    ) -> Result<Homomorphism<S>, AlgebraError> {
        let p = self
            .component_of(member, assignment)
            .ok_or(AlgebraError::OutOfRange(member))?;
        let a = &self.members[member];
        let alpha = assignment_map(self.variables(), assignment);
        let comp = &self.components[p];
        let on_component = comp
            .representatives
            .iter()
            .map(|t| a.evaluate(&alpha, t))
            .collect::<Result<Vec<usize>, _>>()?;
        let sizes = self.sizes();
        let map = (0..self.product.size())
            .map(|u| on_component[product_coordinates(&sizes, u)[p]])
            .collect();
        Homomorphism::new(self.product.clone(), a.clone(), map)
    }

    /// Product elements over the given member elements that agree off the
    /// `α` component, so that their mutual distances are those in the
    /// member. `None` if some target is outside `α(TX)`.
    pub fn reflexive_preimage(
        &self,
        member: usize,
        assignment: &[usize],
        targets: &[usize],
    ) -> Option<Vec<usize>> {
        let p = self.component_of(member, assignment)?;
        let a = &self.members[member];
        let alpha = assignment_map(self.variables(), assignment);
        let comp = &self.components[p];
        let sizes = self.sizes();
        targets
            .iter()
            .map(|&b| {
                let e = comp
                    .representatives
                    .iter()
                    .position(|t| a.evaluate(&alpha, t).ok() == Some(b))?;
                let mut coords = vec![0; sizes.len()];
                coords[p] = e;
                Some(product_index(&sizes, &coords))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DistanceMatrix, Operations};
    use crate::Rational;

    fn discrete_pair() -> QuantAlgebra<Rational> {
        let ops = Operations::new(["a".into(), "b".into()], vec![]).unwrap();
        let mut d = DistanceMatrix::new(2);
        d.set(0, 1, Extended::Finite(Rational::from_integer(1)));
        QuantAlgebra::new(ops, d).unwrap()
    }

    fn xy() -> Vec<Name> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn two_point_model_over_two_variables() {
        let sig = Signature::from_strs(&[], &[]);
        let m =
            canonical_model(&sig, &[discrete_pair()], &xy(), CanonicalOptions::default()).unwrap();
        let sizes: Vec<usize> = m.components().iter().map(|c| c.algebra.size()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        assert_eq!(m.product().size(), 4);
        let (x, y) = (Term::var("x"), Term::var("y"));
        assert_eq!(
            m.distance(&x, &y),
            Some(&Extended::Finite(Rational::from_integer(1)))
        );
        assert!(m.distance(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn deduplication_keeps_distances() {
        let sig = Signature::from_strs(&[], &[]);
        let opts = CanonicalOptions {
            deduplicate: true,
            ..CanonicalOptions::default()
        };
        let m = canonical_model(&sig, &[discrete_pair()], &xy(), opts).unwrap();
        assert_eq!(m.components().len(), 2);
        let (x, y) = (Term::var("x"), Term::var("y"));
        assert_eq!(
            m.distance(&x, &y),
            Some(&Extended::Finite(Rational::from_integer(1)))
        );
    }

    #[test]
    fn degenerate_class_gives_degenerate_model() {
        let sig = Signature::from_strs(&[("f", 1)], &[]);
        let point = QuantAlgebra::<Rational>::degenerate(&sig, "o");
        let m = canonical_model(&sig, &[point], &xy(), CanonicalOptions::default()).unwrap();
        assert_eq!(m.product().size(), 1);
    }

    #[test]
    fn beta_sends_variables_to_their_values() {
        let sig = Signature::from_strs(&[], &[]);
        let m =
            canonical_model(&sig, &[discrete_pair()], &xy(), CanonicalOptions::default()).unwrap();
        let beta = m.beta(0, &[0, 1]).unwrap();
        assert!(beta.is_homomorphism());
        assert!(beta.is_surjective());
        assert_eq!(beta.apply(m.gamma(&Term::var("x")).unwrap()), 0);
        assert_eq!(beta.apply(m.gamma(&Term::var("y")).unwrap()), 1);
        let pre = m.reflexive_preimage(0, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(
            m.product().distance(pre[0], pre[1]),
            m.members()[0].distance(0, 1)
        );
        assert!(beta.is_c_reflexive(r_of_k(m.members())));
    }

    #[test]
    fn successor_of_the_largest_carrier() {
        let sig = Signature::from_strs(&[], &[]);
        assert_eq!(
            r_of_k(&[QuantAlgebra::<Rational>::degenerate(&sig, "o")]),
            2
        );
        assert_eq!(r_of_k::<Rational>(&[]), 1);
    }
}
