//! Presented rings R = k[X_1..X_n]/J with positive weights and a cached
//! reduced Groebner basis of the relation ideal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{reduced_groebner, Caps, GroebnerBasis};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

/// A presented quotient ring. Immutable after construction; the relation
/// basis is computed exactly once here.
#[derive(Debug, Clone)]
pub struct RingPresentation {
    pub ambient: PolyRing,
    pub relations: Vec<Polynomial>,
    /// Reduced Groebner basis of the relation ideal J.
    pub gb: GroebnerBasis,
    /// Krull dimension of R.
    pub dim: u32,
    /// h = n - dim R, the height of J.
    pub h: u32,
    /// Every relation is weighted-homogeneous.
    pub homogeneous: bool,
}

pub type Ring = Arc<RingPresentation>;

impl RingPresentation {
    pub fn new(ambient: PolyRing, relations: Vec<Polynomial>, caps: Caps) -> Result<Ring> {
        let relations: Vec<Polynomial> =
            relations.into_iter().filter(|f| !f.is_zero()).collect();
        let gb = reduced_groebner(&ambient, &relations, caps)?;
        if gb.is_unit_ideal() {
            return Err(Error::InvalidArgument(
                "relations generate the unit ideal; the quotient is the zero ring".into(),
            ));
        }
        let dim = dimension_from_leading_terms(ambient.nvars(), &gb.leading_monomials())?;
        let homogeneous = relations
            .iter()
            .all(|f| f.is_weighted_homogeneous(&ambient));
        let h = ambient.nvars() as u32 - dim;
        Ok(Arc::new(RingPresentation {
            ambient,
            relations,
            gb,
            dim,
            h,
            homogeneous,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    /// Canonical representative of `f` in R.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(&self.ambient, f)
    }

    pub fn is_zero_in_quotient(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// The relation ideal is zero, i.e. R is the ambient polynomial ring.
    pub fn is_free_presentation(&self) -> bool {
        self.gb.is_zero_ideal()
    }
}

/// Krull dimension of P/I from the leading-term ideal of a Groebner basis:
/// the maximum size of a variable subset that is independent modulo the
/// leading terms (no leading monomial supported inside the subset).
pub fn dimension_from_leading_terms(nvars: usize, lts: &[Monomial]) -> Result<u32> {
    if nvars > 20 {
        return Err(Error::Unsupported(
            "dimension computation limited to 20 variables".into(),
        ));
    }
    let supports: Vec<u32> = lts
        .iter()
        .map(|m| {
            m.support()
                .into_iter()
                .fold(0u32, |acc, i| acc | (1 << i))
        })
        .collect();
    if supports.contains(&0) {
        // A constant leading term means the unit ideal.
        return Err(Error::InvalidArgument(
            "unit ideal has no dimension".into(),
        ));
    }
    let mut best = 0u32;
    for subset in 0u32..(1 << nvars) {
        let size = subset.count_ones();
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !subset != 0) {
            best = size;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::parse_polynomial;

    fn present(vars: &[&str], weights: Vec<u64>, rels: &[&str]) -> Ring {
        let ambient = PolyRing::new(
            FieldSpec::Rational,
            vars.iter().map(|s| s.to_string()).collect(),
            weights,
        )
        .unwrap();
        let rels: Vec<Polynomial> = rels
            .iter()
            .map(|s| parse_polynomial(&ambient, s).unwrap())
            .collect();
        RingPresentation::new(ambient, rels, Caps::default()).unwrap()
    }

    #[test]
    fn polynomial_ring_dimension() {
        let r = present(&["X", "Y", "Z"], vec![1, 1, 1], &[]);
        assert_eq!(r.dim, 3);
        assert_eq!(r.h, 0);
        assert!(r.homogeneous);
    }

    #[test]
    fn monomial_example_dimensions() {
        // (XY, YZ, ZX) in four variables has dimension two.
        let r = present(&["X", "Y", "Z", "W"], vec![1, 1, 1, 1], &["X*Y", "Y*Z", "Z*X"]);
        assert_eq!(r.dim, 2);
        assert_eq!(r.h, 2);

        let r41 = present(
            &["X", "Y", "Z", "W"],
            vec![1, 1, 1, 1],
            &["X^2*Z", "X^2*W", "Y*Z", "Y*W"],
        );
        assert_eq!(r41.dim, 2);
        assert_eq!(r41.h, 2);
    }

    #[test]
    fn weighted_hypersurface() {
        let r = present(&["X", "Y", "Z"], vec![4, 3, 1], &["X^3 - Y^4"]);
        assert_eq!(r.dim, 2);
        assert_eq!(r.h, 1);
        assert!(r.homogeneous);
    }

    #[test]
    fn zero_ring_rejected() {
        let ambient = PolyRing::standard(FieldSpec::Rational, &["X"]);
        let one = parse_polynomial(&ambient, "1").unwrap();
        assert!(RingPresentation::new(ambient, vec![one], Caps::default()).is_err());
    }
}
