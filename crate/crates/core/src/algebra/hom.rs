use std::fmt;

use super::{join, AlgebraError, QuantAlgebra};
use crate::scalar::{Extended, Scalar};
use crate::term::Name;

/// A carrier map between two algebras of one signature. Whether it is a
/// homomorphism is checked separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism<S> {
    source: QuantAlgebra<S>,
    target: QuantAlgebra<S>,
    map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomViolation<S> {
    Commutation {
        symbol: Name,
        args: Vec<Name>,
    },
    Expansive {
        left: Name,
        right: Name,
        before: Extended<S>,
        after: Extended<S>,
    },
}

impl<S: fmt::Display> fmt::Display for HomViolation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Commutation { symbol, args } => {
                write!(f, "map does not commute with {symbol} at ({})", join(args))
            }
            HomViolation::Expansive {
                left,
                right,
                before,
                after,
            } => write!(
                f,
                "d({left}, {right}) = {before} grows to {after} under the map"
            ),
        }
    }
}

impl<S: Scalar> Homomorphism<S> {
    pub fn new(
        source: QuantAlgebra<S>,
        target: QuantAlgebra<S>,
        map: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        if !source.ops().same_signature(target.ops()) {
            return Err(AlgebraError::SignatureMismatch);
        }
        if map.len() != source.size() {
            return Err(AlgebraError::SizeMismatch {
                expected: source.size(),
                found: map.len(),
            });
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(AlgebraError::OutOfRange(v));
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    /// Builds the map from `(source element, target element)` name pairs,
    /// which must cover the source carrier exactly once.
    pub fn from_names(
        source: QuantAlgebra<S>,
        target: QuantAlgebra<S>,
        pairs: &[(Name, Name)],
    ) -> Result<Self, AlgebraError> {
        let mut map = vec![usize::MAX; source.size()];
        for (a, b) in pairs {
            let i = source
                .index_of(a)
                .ok_or_else(|| AlgebraError::UnknownElement(a.clone()))?;
            let j = target
                .index_of(b)
                .ok_or_else(|| AlgebraError::UnknownElement(b.clone()))?;
            if map[i] != usize::MAX {
                return Err(AlgebraError::DuplicateElement(a.clone()));
            }
            map[i] = j;
        }
        if let Some(i) = map.iter().position(|&v| v == usize::MAX) {
            return Err(AlgebraError::UnknownElement(source.element(i).clone()));
        }
        Self::new(source, target, map)
    }

    pub fn identity(algebra: QuantAlgebra<S>) -> Self {
        let map = (0..algebra.size()).collect();
        Homomorphism {
            source: algebra.clone(),
            target: algebra,
            map,
        }
    }

    pub fn source(&self) -> &QuantAlgebra<S> {
        &self.source
    }

    pub fn target(&self) -> &QuantAlgebra<S> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// The first failure of commutation or non-expansiveness.
    pub fn violation(&self) -> Option<HomViolation<S>> {
        let (src, tgt) = (self.source.ops(), self.target.ops());
        for (k, (name, _)) in src.tables().iter().enumerate() {
            for (args, v) in src.entries(k) {
                let image: Vec<usize> = args.iter().map(|&a| self.map[a]).collect();
                if tgt.apply(k, &image) != self.map[v] {
                    return Some(HomViolation::Commutation {
                        symbol: name.clone(),
                        args: args.iter().map(|&a| src.element(a).clone()).collect(),
                    });
                }
            }
        }
        let n = self.source.size();
        for i in 0..n {
            for j in (i + 1)..n {
                let before = self.source.distance(i, j);
                let after = self.target.distance(self.map[i], self.map[j]);
                if after > before {
                    return Some(HomViolation::Expansive {
                        left: src.element(i).clone(),
                        right: src.element(j).clone(),
                        before: before.clone(),
                        after: after.clone(),
                    });
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.violation().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }

    /// Target indices hit by the map, ascending.
    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target.size()];
        for &v in &self.map {
            hit[v] = true;
        }
        (0..hit.len()).filter(|&i| hit[i]).collect()
    }

    /// The subalgebra of the target induced on the image.
    pub fn image_algebra(&self) -> QuantAlgebra<S> {
        self.target
            .restrict(&self.image())
            .expect("the image of a homomorphism is closed")
    }

    /// The same map with its target cut down to the image.
    pub fn onto_image(&self) -> Self {
        let image = self.image();
        let mut position = vec![usize::MAX; self.target.size()];
        for (i, &v) in image.iter().enumerate() {
            position[v] = i;
        }
        Homomorphism {
            source: self.source.clone(),
            target: self.image_algebra(),
            map: self.map.iter().map(|&v| position[v]).collect(),
        }
    }

    /// A set of fewer than `c` image elements with no isometric preimage, or
    /// `None` when the map is `c`-reflexive.
    ///
    /// Isometric preimages pass to subsets, so only sets of the largest
    /// admissible size are searched. A preimage never uses two elements of
    /// one fibre: those would need distance zero.
    pub fn reflexivity_witness(&self, c: usize) -> Option<Vec<usize>> {
        let image = self.image();
        let k = c.saturating_sub(1).min(image.len());
        if k <= 1 {
            return None;
        }
        let fibres: Vec<Vec<usize>> = {
            let mut f = vec![Vec::new(); self.target.size()];
            for (a, &b) in self.map.iter().enumerate() {
                f[b].push(a);
            }
            f
        };
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let chosen: Vec<usize> = subset.iter().map(|&i| image[i]).collect();
            let mut picks = Vec::with_capacity(k);
            if !self.isometric_pick(&chosen, &fibres, &mut picks) {
                return Some(chosen);
            }
            // next k-combination of 0..image.len()
            let m = image.len();
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if subset[i] < m - k + i {
                    break;
                }
            }
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    fn isometric_pick(
        &self,
        chosen: &[usize],
        fibres: &[Vec<usize>],
        picks: &mut Vec<usize>,
    ) -> bool {
        let depth = picks.len();
        if depth == chosen.len() {
            return true;
        }
        let b = chosen[depth];
        for &a in &fibres[b] {
            let fits = picks
                .iter()
                .zip(chosen)
                .all(|(&p, &q)| self.source.distance(p, a) == self.target.distance(q, b));
            if fits {
                picks.push(a);
                if self.isometric_pick(chosen, fibres, picks) {
                    return true;
                }
                picks.pop();
            }
        }
        false
    }

    /// Every image subset of size below `c` has an isometric preimage.
    pub fn is_c_reflexive(&self, c: usize) -> bool {
        self.reflexivity_witness(c).is_none()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Homomorphism<S>) -> Result<Self, AlgebraError> {
        if self.target != next.source {
            return Err(AlgebraError::SignatureMismatch);
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&v| next.map[v]).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::two_point;
    use crate::algebra::{DistanceMatrix, OpTable, Operations};
    use crate::term::Signature;
    use crate::Rational;

    #[test]
    fn identity_is_a_homomorphism() {
        let h = Homomorphism::identity(two_point(1, [1, 0]));
        assert!(h.is_homomorphism());
        assert!(h.is_c_reflexive(5));
    }

    #[test]
    fn collapse_to_a_point() {
        let sig = Signature::from_strs(&[("f", 1)], &[]);
        let h = Homomorphism::new(
            two_point(1, [1, 0]),
            QuantAlgebra::degenerate(&sig, "o"),
            vec![0, 0],
        )
        .unwrap();
        assert!(h.is_homomorphism());
        assert_eq!(h.image_algebra().size(), 1);
    }

    #[test]
    fn expanding_map_is_rejected() {
        let h = Homomorphism::new(two_point(1, [0, 1]), two_point(2, [0, 1]), vec![0, 1]).unwrap();
        assert!(matches!(
            h.violation(),
            Some(HomViolation::Expansive { .. })
        ));
    }

    #[test]
    fn shrinking_identity_is_not_three_reflexive() {
        let h = Homomorphism::new(two_point(2, [0, 1]), two_point(1, [0, 1]), vec![0, 1]).unwrap();
        assert!(h.is_homomorphism());
        assert!(h.is_c_reflexive(1));
        assert!(h.is_c_reflexive(2));
        assert_eq!(h.reflexivity_witness(3), Some(vec![0, 1]));
    }

    #[test]
    fn any_homomorphism_is_one_reflexive() {
        let h = Homomorphism::new(two_point(2, [0, 1]), two_point(1, [0, 1]), vec![1, 0]).unwrap();
        assert!(h.is_c_reflexive(1));
    }

    #[test]
    fn image_of_a_folding_map() {
        // f(a) = f(b) = a on three points; the map sends c onto the pair.
        let ops = Operations::new(
            ["a".into(), "b".into(), "c".into()],
            vec![("f".into(), OpTable::new(1, 3, vec![0, 0, 0]).unwrap())],
        )
        .unwrap();
        let one = Extended::Finite(Rational::from_integer(1));
        let mut d = DistanceMatrix::new(3);
        d.set(0, 1, one);
        d.set(0, 2, one);
        d.set(1, 2, one);
        let a = QuantAlgebra::new(ops, d).unwrap();
        let h = Homomorphism::new(a.clone(), a, vec![0, 1, 1]).unwrap();
        assert!(h.is_homomorphism());
        let img = h.image_algebra();
        assert_eq!(img.size(), 2);
        assert!(img.is_valid());
    }
}
