//! Building algebras from algebras: products, subalgebras, quotients, the
//! canonical model over a finite class, and the constructive steps behind the
//! closure properties of (quasi)varieties.

mod canonical;
mod quotient;

use std::fmt;

use crate::algebra::{
    AlgebraError, DistanceMatrix, Homomorphism, OpTable, Operations, QuantAlgebra,
};
use crate::logic::for_each_map;
use crate::scalar::{Extended, Scalar};
use crate::term::{Name, Signature};

pub use canonical::{canonical_model, r_of_k, CanonicalModel, CanonicalOptions, Component};
pub use quotient::{
    pseudometric_from_assignment, quotient_algebra, quotient_by_pseudometric, PseudometricTable,
    TermQuotient,
};

/// Mixed-radix coordinates of a product element, first factor most
/// significant.
pub fn product_coordinates(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &n) in out.iter_mut().zip(sizes).rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

pub fn product_index(sizes: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&c, &n)| acc * n + c)
}

fn check_family<S: Scalar>(
    sig: &Signature,
    factors: &[&QuantAlgebra<S>],
) -> Result<(), AlgebraError> {
    factors.iter().try_for_each(|a| {
        a.ops()
            .check_signature(sig)
            .map_err(|_| AlgebraError::SignatureMismatch)
    })
}

/// Element names `(a,b,...)` and componentwise tables on the cartesian
/// product of the carriers, in odometer order.
pub fn product_operations(
    sig: &Signature,
    factors: &[&Operations],
) -> Result<Operations, AlgebraError> {
    let sizes: Vec<usize> = factors.iter().map(|a| a.size()).collect();
    let total: usize = sizes.iter().product();
    let names: Vec<Name> = (0..total)
        .map(|i| {
            let coords = product_coordinates(&sizes, i);
            let parts: Vec<&str> = coords
                .iter()
                .zip(factors)
                .map(|(&c, a)| &**a.element(c))
                .collect();
            Name::from(format!("({})", parts.join(",")))
        })
        .collect();
    let tables = sig
        .symbols()
        .map(|(name, arity)| {
            let ks = factors
                .iter()
                .map(|a| a.symbol_index(name).ok_or(AlgebraError::SignatureMismatch))
                .collect::<Result<Vec<usize>, _>>()?;
            let table = OpTable::from_fn(arity, total, |args| {
                let coords: Vec<Vec<usize>> = args
                    .iter()
                    .map(|&a| product_coordinates(&sizes, a))
                    .collect();
                let out: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(f, a)| {
                        let xs: Vec<usize> = coords.iter().map(|c| c[f]).collect();
                        a.apply(ks[f], &xs)
                    })
                    .collect();
                product_index(&sizes, &out)
            });
            Ok((name.clone(), table))
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    Operations::new(names, tables)
}

/// Cartesian product with componentwise operations and the supremum
/// distance. The empty family gives the one-point algebra `unit`.
pub fn direct_product<S: Scalar>(
    sig: &Signature,
    factors: &[&QuantAlgebra<S>],
) -> Result<QuantAlgebra<S>, AlgebraError> {
    check_family(sig, factors)?;
    if factors.is_empty() {
        return Ok(QuantAlgebra::degenerate(sig, "unit"));
    }
    let ops: Vec<&Operations> = factors.iter().map(|a| a.ops()).collect();
    let ops = product_operations(sig, &ops)?;
    let sizes: Vec<usize> = factors.iter().map(|a| a.size()).collect();
    let dist = DistanceMatrix::from_fn(ops.size(), |i, j| {
        let (ci, cj) = (
            product_coordinates(&sizes, i),
            product_coordinates(&sizes, j),
        );
        factors
            .iter()
            .enumerate()
            .map(|(f, a)| a.distance(ci[f], cj[f]).clone())
            .max()
            .unwrap_or_else(Extended::zero)
    });
    QuantAlgebra::new(ops, dist)
}

/// An injective map `sub → sup` claimed to exhibit `sub` as a subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding<S> {
    pub sub: QuantAlgebra<S>,
    pub sup: QuantAlgebra<S>,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingFailure {
    NotInjective { element: Name },
    NotClosed { symbol: Name },
    DistanceChanged { left: Name, right: Name },
    Shape,
}

impl fmt::Display for EmbeddingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingFailure::NotInjective { element } => write!(f, "`{element}` is hit twice"),
            EmbeddingFailure::NotClosed { symbol } => {
                write!(f, "map does not commute with `{symbol}`")
            }
            EmbeddingFailure::DistanceChanged { left, right } => {
                write!(
                    f,
                    "distance between `{left}` and `{right}` is not preserved"
                )
            }
            EmbeddingFailure::Shape => {
                f.write_str("map and carriers disagree in size or signature")
            }
        }
    }
}

impl<S: Scalar> Embedding<S> {
    /// Injective, commutes with every operation, preserves every distance.
    pub fn verify(&self) -> Result<(), EmbeddingFailure> {
        let (sub, sup) = (self.sub.ops(), self.sup.ops());
        if self.map.len() != sub.size()
            || self.map.iter().any(|&v| v >= sup.size())
            || !sub.same_signature(sup)
        {
            return Err(EmbeddingFailure::Shape);
        }
        let mut hit = vec![false; sup.size()];
        for &v in &self.map {
            if std::mem::replace(&mut hit[v], true) {
                return Err(EmbeddingFailure::NotInjective {
                    element: sup.element(v).clone(),
                });
            }
        }
        for (k, (name, _)) in sub.tables().iter().enumerate() {
            for (args, v) in sub.entries(k) {
                let image: Vec<usize> = args.iter().map(|&a| self.map[a]).collect();
                if sup.apply(k, &image) != self.map[v] {
                    return Err(EmbeddingFailure::NotClosed {
                        symbol: name.clone(),
                    });
                }
            }
        }
        for i in 0..sub.size() {
            for j in (i + 1)..sub.size() {
                if self.sub.distance(i, j) != self.sup.distance(self.map[i], self.map[j]) {
                    return Err(EmbeddingFailure::DistanceChanged {
                        left: sub.element(i).clone(),
                        right: sub.element(j).clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The least subalgebra containing `seed`, with its inclusion map. With no
/// seed and no constants the result is the void algebra.
pub fn generated_subalgebra<S: Scalar>(
    algebra: &QuantAlgebra<S>,
    seed: &[usize],
) -> Result<Embedding<S>, AlgebraError> {
    if let Some(&s) = seed.iter().find(|&&s| s >= algebra.size()) {
        return Err(AlgebraError::OutOfRange(s));
    }
    let mask = algebra.ops().closure(seed.iter().copied());
    let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
    Ok(Embedding {
        sub: algebra.restrict(&members)?,
        sup: algebra.clone(),
        map: members,
    })
}

/// Restriction of a surjective `f: B → C` to `f⁻¹(A) → A`, for a subalgebra
/// `A` of `C` given by its elements.
pub fn pullback_restriction<S: Scalar>(
    f: &Homomorphism<S>,
    subalgebra: &[usize],
) -> Result<Homomorphism<S>, AlgebraError> {
    let target = f.target();
    let mut in_a = vec![false; target.size()];
    for &a in subalgebra {
        if a >= target.size() {
            return Err(AlgebraError::OutOfRange(a));
        }
        in_a[a] = true;
    }
    let a_elems: Vec<usize> = (0..target.size()).filter(|&i| in_a[i]).collect();
    let a_alg = target.restrict(&a_elems)?;
    let preimage: Vec<usize> = (0..f.source().size())
        .filter(|&b| in_a[f.apply(b)])
        .collect();
    let b_alg = f.source().restrict(&preimage)?;
    let position = |v: usize| {
        a_elems
            .binary_search(&v)
            .expect("image lies in the subalgebra")
    };
    let map = preimage.iter().map(|&b| position(f.apply(b))).collect();
    Homomorphism::new(b_alg, a_alg, map)
}

/// Componentwise map `∏ B_i → ∏ C_i`.
pub fn product_of_homomorphisms<S: Scalar>(
    sig: &Signature,
    fs: &[&Homomorphism<S>],
) -> Result<Homomorphism<S>, AlgebraError> {
    let sources: Vec<&QuantAlgebra<S>> = fs.iter().map(|f| f.source()).collect();
    let targets: Vec<&QuantAlgebra<S>> = fs.iter().map(|f| f.target()).collect();
    let source = direct_product(sig, &sources)?;
    let target = direct_product(sig, &targets)?;
    let ssizes: Vec<usize> = sources.iter().map(|a| a.size()).collect();
    let tsizes: Vec<usize> = targets.iter().map(|a| a.size()).collect();
    let map = (0..source.size())
        .map(|i| {
            let c = product_coordinates(&ssizes, i);
            let image: Vec<usize> = c.iter().zip(fs).map(|(&x, f)| f.apply(x)).collect();
            product_index(&tsizes, &image)
        })
        .collect();
    Homomorphism::new(source, target, map)
}

/// `∏ A_i ≤ ∏ B_i` from embeddings `A_i ≤ B_i`.
pub fn embed_product_of_subalgebras<S: Scalar>(
    sig: &Signature,
    parts: &[&Embedding<S>],
) -> Result<Embedding<S>, AlgebraError> {
    let subs: Vec<&QuantAlgebra<S>> = parts.iter().map(|e| &e.sub).collect();
    let sups: Vec<&QuantAlgebra<S>> = parts.iter().map(|e| &e.sup).collect();
    let sub = direct_product(sig, &subs)?;
    let sup = direct_product(sig, &sups)?;
    let asizes: Vec<usize> = subs.iter().map(|a| a.size()).collect();
    let bsizes: Vec<usize> = sups.iter().map(|a| a.size()).collect();
    let map = (0..sub.size())
        .map(|i| {
            let c = product_coordinates(&asizes, i);
            let image: Vec<usize> = c.iter().zip(parts).map(|(&x, e)| e.map[x]).collect();
            product_index(&bsizes, &image)
        })
        .collect();
    Ok(Embedding { sub, sup, map })
}

/// Every subset closed under the operations, as sorted element lists,
/// including the empty one when there are no constants.
pub fn subalgebra_carriers(ops: &Operations) -> Vec<Vec<usize>> {
    let n = ops.size();
    let mut out = Vec::new();
    for_each_map(n, 2, |bits| {
        let subset: Vec<usize> = (0..n).filter(|&i| bits[i] == 1).collect();
        if ops.escape(&subset).is_none() {
            out.push(subset);
        }
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::two_point;
    use crate::Rational;

    fn sig_f() -> Signature {
        Signature::from_strs(&[("f", 1)], &[])
    }

    #[test]
    fn empty_product_is_a_point() {
        let p = direct_product::<Rational>(&sig_f(), &[]).unwrap();
        assert_eq!(p.size(), 1);
        assert_eq!(&**p.element(0), "unit");
    }

    #[test]
    fn product_distance_is_the_maximum() {
        let (a, b) = (two_point(1, [0, 1]), two_point(2, [0, 1]));
        let p = direct_product(&sig_f(), &[&a, &b]).unwrap();
        assert_eq!(p.size(), 4);
        let (aa, bb) = (p.index_of("(a,a)").unwrap(), p.index_of("(b,b)").unwrap());
        assert_eq!(
            *p.distance(aa, bb),
            Extended::Finite(Rational::from_integer(2))
        );
        assert!(p.is_valid());
    }

    #[test]
    fn product_with_a_point_is_isomorphic_to_the_factor() {
        let a = two_point(1, [1, 0]);
        let unit = QuantAlgebra::degenerate(&sig_f(), "o");
        let p = direct_product(&sig_f(), &[&a, &unit]).unwrap();
        let e = Embedding {
            sub: a.clone(),
            sup: p,
            map: vec![0, 1],
        };
        assert_eq!(e.verify(), Ok(()));
    }

    #[test]
    fn generated_subalgebras() {
        let a = two_point(1, [1, 1]);
        assert_eq!(generated_subalgebra(&a, &[0, 1]).unwrap().sub, a);
        assert_eq!(generated_subalgebra(&a, &[0]).unwrap().map, vec![0, 1]);
        let void = generated_subalgebra(&a, &[]).unwrap();
        assert_eq!(void.sub.size(), 0);
        assert_eq!(void.verify(), Ok(()));
    }

    #[test]
    fn pullback_along_a_collapse() {
        let a = two_point(1, [1, 0]);
        let unit = QuantAlgebra::degenerate(&sig_f(), "o");
        let f = Homomorphism::new(a.clone(), unit, vec![0, 0]).unwrap();
        let g = pullback_restriction(&f, &[0]).unwrap();
        assert_eq!(g.source().size(), 2);
        assert!(g.is_homomorphism());
        let same = pullback_restriction(&Homomorphism::identity(a.clone()), &[0, 1]).unwrap();
        assert_eq!(same, Homomorphism::identity(a));
    }

    #[test]
    fn products_of_homomorphisms() {
        let a = two_point(1, [1, 0]);
        let unit = QuantAlgebra::degenerate(&sig_f(), "o");
        let id = Homomorphism::identity(a.clone());
        let collapse = Homomorphism::new(a, unit, vec![0, 0]).unwrap();
        let p = product_of_homomorphisms(&sig_f(), &[&id, &collapse]).unwrap();
        assert!(p.is_homomorphism());
        assert_eq!(p.target().size(), 2);
        let empty = product_of_homomorphisms::<Rational>(&sig_f(), &[]).unwrap();
        assert_eq!(empty.map(), &[0]);
    }

    #[test]
    fn product_of_subalgebras_embeds() {
        let a = two_point(1, [0, 0]);
        let b = two_point(2, [1, 1]);
        let ea = generated_subalgebra(&a, &[0]).unwrap();
        let eb = generated_subalgebra(&b, &[1]).unwrap();
        let e = embed_product_of_subalgebras(&sig_f(), &[&ea, &eb]).unwrap();
        assert_eq!(e.sub.size(), 1);
        assert_eq!(e.verify(), Ok(()));
        let full = generated_subalgebra(&b, &[0]).unwrap();
        let e = embed_product_of_subalgebras(&sig_f(), &[&ea, &full]).unwrap();
        assert_eq!(e.sub.size(), ea.sub.size() * full.sub.size());
        assert_eq!(e.verify(), Ok(()));
    }
}
