use super::{check_qfo_axioms, AxiomCheck, QfoError, Threshold, ThresholdStructure};
use crate::algebra::{AlgebraError, OpTable, Operations};
use crate::constructions::{product_coordinates, product_operations};
use crate::scalar::Scalar;

/// The principal filter `{S ⊆ I | J ⊆ S}` over `I = {1, ..., count}`.
/// Over a finite index set every proper filter has this form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilterSpec {
    count: usize,
    generator: Vec<usize>,
}

impl FilterSpec {
    /// `generator` holds 1-based indices.
    pub fn new(count: usize, generator: &[usize]) -> Result<Self, QfoError> {
        if generator.is_empty() {
            return Err(QfoError::ImproperFilter);
        }
        let mut g: Vec<usize> = Vec::with_capacity(generator.len());
        for &i in generator {
            if i == 0 || i > count {
                return Err(QfoError::IndexOutOfRange { index: i, count });
            }
            g.push(i - 1);
        }
        g.sort_unstable();
        g.dedup();
        Ok(FilterSpec {
            count,
            generator: g,
        })
    }

    /// The filter generated by the whole index set.
    pub fn full(count: usize) -> Result<Self, QfoError> {
        Self::new(count, &(1..=count).collect::<Vec<_>>())
    }

    pub fn index_count(&self) -> usize {
        self.count
    }

    /// 0-based members of the generator, ascending.
    pub fn generator(&self) -> &[usize] {
        &self.generator
    }

    /// Whether `set` (0-based) belongs to the filter.
    pub fn contains(&self, set: &[usize]) -> bool {
        self.generator.iter().all(|g| set.contains(g))
    }
}

/// `∏ M_i / F`. For a principal filter two tuples are identified exactly
/// when they agree on the generator, so classes are named by their
/// generator coordinates. `m =_ε n` holds on classes when it holds in every
/// generator coordinate: the threshold is the meet over the generator.
pub fn reduced_product<S: Scalar>(
    structures: &[&ThresholdStructure<S>],
    filter: &FilterSpec,
) -> Result<ThresholdStructure<S>, QfoError> {
    if structures.len() != filter.index_count() {
        return Err(QfoError::FamilySize {
            expected: filter.index_count(),
            found: structures.len(),
        });
    }
    let sig = structures[0].ops().signature();
    for m in structures {
        if !m.ops().same_signature(structures[0].ops()) {
            return Err(AlgebraError::SignatureMismatch.into());
        }
    }
    if structures.iter().any(|m| m.size() == 0) {
        // A void factor has no constants, so every table over the empty
        // carrier is empty.
        let tables = sig
            .symbols()
            .map(|(n, k)| (n.clone(), OpTable::from_fn(k, 0, |_| 0)))
            .collect();
        let ops = Operations::new(Vec::new(), tables)?;
        return Ok(ThresholdStructure::from_fn(ops, |_, _| Threshold::Never));
    }
    let kept: Vec<&ThresholdStructure<S>> =
        filter.generator().iter().map(|&i| structures[i]).collect();
    let ops: Vec<_> = kept.iter().map(|m| m.ops()).collect();
    let ops = product_operations(&sig, &ops)?;
    let sizes: Vec<usize> = kept.iter().map(|m| m.size()).collect();
    Ok(ThresholdStructure::from_fn(ops, |i, j| {
        let (ci, cj) = (
            product_coordinates(&sizes, i),
            product_coordinates(&sizes, j),
        );
        kept.iter()
            .enumerate()
            .map(|(k, m)| m.get(ci[k], cj[k]).clone())
            .reduce(|a, b| a.meet(&b))
            .expect("the generator is nonempty")
    }))
}

/// The structure induced on an operation-closed subset, in subset order.
pub fn subobject<S: Scalar>(
    m: &ThresholdStructure<S>,
    subset: &[usize],
) -> Result<ThresholdStructure<S>, QfoError> {
    let ops = m.ops().restrict(subset)?;
    Ok(ThresholdStructure::from_fn(ops, |i, j| {
        m.get(subset[i], subset[j]).clone()
    }))
}

/// An injective map `small → large` commuting with the operations and
/// preserving every threshold exactly, found by exhaustive search.
pub fn find_embedding<S: Scalar>(
    small: &ThresholdStructure<S>,
    large: &ThresholdStructure<S>,
) -> Option<Vec<usize>> {
    if small.size() > large.size() || !small.ops().same_signature(large.ops()) {
        return None;
    }
    let mut map = Vec::with_capacity(small.size());
    let mut used = vec![false; large.size()];
    extend(small, large, &mut map, &mut used).then_some(map)
}

fn extend<S: Scalar>(
    small: &ThresholdStructure<S>,
    large: &ThresholdStructure<S>,
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = map.len();
    if i == small.size() {
        return commutes(small, large, map);
    }
    for v in 0..large.size() {
        if used[v] || small.get(i, i) != large.get(v, v) {
            continue;
        }
        let fits = (0..i).all(|j| {
            small.get(i, j) == large.get(v, map[j]) && small.get(j, i) == large.get(map[j], v)
        });
        if fits {
            map.push(v);
            used[v] = true;
            if extend(small, large, map, used) {
                return true;
            }
            used[v] = false;
            map.pop();
        }
    }
    false
}

fn commutes<S: Scalar>(
    small: &ThresholdStructure<S>,
    large: &ThresholdStructure<S>,
    map: &[usize],
) -> bool {
    (0..small.ops().tables().len()).all(|k| {
        small.ops().entries(k).all(|(args, v)| {
            let image: Vec<usize> = args.iter().map(|&a| map[a]).collect();
            large.ops().apply(k, &image) == map[v]
        })
    })
}

/// Whether `candidate` satisfies all six axioms and embeds into the reduced
/// product. Returns the embedding when it does.
pub fn is_subreduced_product<S: Scalar>(
    candidate: &ThresholdStructure<S>,
    structures: &[&ThresholdStructure<S>],
    filter: &FilterSpec,
) -> Result<Option<Vec<usize>>, QfoError> {
    if !check_qfo_axioms(candidate).iter().all(AxiomCheck::passed) {
        return Ok(None);
    }
    let host = reduced_product(structures, filter)?;
    Ok(find_embedding(candidate, &host))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::two_point;
    use crate::constructions::{direct_product, generated_subalgebra};
    use crate::qfo::tests::two_point_structure;
    use crate::qfo::to_qfo;
    use crate::term::Signature;
    use crate::Rational;

    fn sig_f() -> Signature {
        Signature::from_strs(&[("f", 1)], &[])
    }

    #[test]
    fn full_generator_gives_the_direct_product() {
        let (a, b) = (two_point(1, [1, 0]), two_point(2, [0, 0]));
        let rp =
            reduced_product(&[&to_qfo(&a), &to_qfo(&b)], &FilterSpec::full(2).unwrap()).unwrap();
        assert_eq!(rp, to_qfo(&direct_product(&sig_f(), &[&a, &b]).unwrap()));
    }

    #[test]
    fn singleton_generator_gives_the_factor() {
        let (a, b) = (two_point(1, [1, 0]), two_point(2, [0, 0]));
        let (ma, mb) = (to_qfo(&a), to_qfo(&b));
        let rp = reduced_product(&[&ma, &mb], &FilterSpec::new(2, &[2]).unwrap()).unwrap();
        assert_eq!(rp.size(), mb.size());
        assert!(find_embedding(&mb, &rp).is_some());
    }

    #[test]
    fn empty_generator_is_improper() {
        assert_eq!(FilterSpec::new(2, &[]), Err(QfoError::ImproperFilter));
        assert!(matches!(
            FilterSpec::new(2, &[3]),
            Err(QfoError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn subobjects() {
        let m = to_qfo(&two_point(1, [0, 0]));
        assert_eq!(subobject(&m, &[0, 1]).unwrap(), m);
        assert_eq!(subobject(&m, &[0]).unwrap().size(), 1);
        assert!(matches!(
            subobject(&m, &[1]),
            Err(QfoError::Algebra(AlgebraError::NotClosed { .. }))
        ));
    }

    #[test]
    fn subreduced_products() {
        let (a, b) = (two_point(1, [1, 0]), two_point(2, [1, 0]));
        let (ma, mb) = (to_qfo(&a), to_qfo(&b));
        let full = FilterSpec::full(2).unwrap();
        let p = direct_product(&sig_f(), &[&a, &b]).unwrap();
        let sub = generated_subalgebra(&p, &[0]).unwrap().sub;
        assert!(is_subreduced_product(&to_qfo(&sub), &[&ma, &mb], &full)
            .unwrap()
            .is_some());

        let open = two_point_structure(Threshold::open(Rational::from_integer(1)));
        let trivial = FilterSpec::full(1).unwrap();
        assert_eq!(
            is_subreduced_product(&open, &[&open], &trivial).unwrap(),
            None
        );

        let three = to_qfo(&crate::algebra::tests::two_point(3, [1, 0]));
        assert_eq!(
            is_subreduced_product(&three, &[&ma, &mb], &full).unwrap(),
            None
        );
    }
}
